#include "dpgrad/suites.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "dpgrad/errors.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/relations.hpp"
#include "dpgrad/schur.hpp"
#include "dpgrad/small_groups.hpp"

namespace dpgrad {

namespace {

// Runs body(i) for i < n, rethrowing the first exception by index.
void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Json big_list(const std::vector<BigInt>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(big_json(x));
  return out;
}

Json elem_list(const std::vector<Elem>& xs) {
  Json out = Json::array();
  for (Elem x : xs) out.push_back(x);
  return out;
}

void finish(SuiteReport& rep) {
  for (const auto& r : rep.rows)
    if (!r.at("ok").get<bool>()) ++rep.failures;
  rep.summary["suite"] = rep.suite;
  rep.summary["checks"] = rep.rows.size();
  rep.summary["failures"] = rep.failures;
  rep.summary["ok"] = rep.failures == 0;
}

std::size_t max_order_for(const std::string& suite, const SuiteOptions& o) {
  return o.max_order ? o.max_order : default_max_order(suite);
}

SuiteReport product_bounds_suite(const SuiteOptions& o) {
  SuiteReport rep{"product-bounds", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const UniverseReport u = run_product_universe(load_small_groups(max_order), o.parallel, o.limits);
  for (const auto& in : u.instances) rep.rows.push_back(instance_row(in));
  finish(rep);
  rep.summary["max_order"] = max_order;
  rep.summary["enumeration"] = u.enumeration;
  return rep;
}

SuiteReport normality_suite(const SuiteOptions& o) {
  SuiteReport rep{"normality", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const UniverseReport u = run_product_universe(load_small_groups(max_order), o.parallel, o.limits);
  std::size_t with_hypothesis = 0;
  for (const auto& in : u.instances) {
    Json row;
    row["A"] = in.A;
    row["B"] = in.B;
    row["H"] = in.subgroup;
    row["hypothesis"] = in.normality.hypothesis;
    row["conclusion"] = in.normality.conclusion;
    row["ok"] = in.normality.pass();
    with_hypothesis += in.normality.hypothesis;
    rep.rows.push_back(std::move(row));
  }
  finish(rep);
  rep.summary["max_order"] = max_order;
  rep.summary["hypothesis_holds"] = with_hypothesis;
  rep.summary["enumeration"] = u.enumeration;
  return rep;
}

SuiteReport schur_suite(const SuiteOptions& o) {
  SuiteReport rep{"schur", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const auto groups = load_small_groups(max_order);
  SchurOptions so;
  so.homology_cap = o.homology_cap;
  so.parallel = false;
  rep.rows.resize(groups.size());
  parallel_for(groups.size(), o.parallel, [&](std::size_t i) {
    const FiniteGroup& e = groups[i];
    const SchurResult m = schur_multiplier(e, so);
    BigInt product = 1, rest = m.multiplier_order;
    Json parts = Json::object();
    for (const auto& [p, part] : m.per_prime) {
      product *= part;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) rest /= p;
      parts[std::to_string(p)] = big_json(part);
    }
    const bool decomposition_ok = product == m.multiplier_order && rest == 1;
    const SylowReport sy = verify_sylow_bound(e, so);
    Json sylow = Json::array();
    for (const auto& r : sy.rows)
      sylow.push_back({{"p", r.p},
                       {"part", big_json(r.multiplier_part)},
                       {"sylow_order", r.sylow_order},
                       {"sylow_multiplier", big_json(r.sylow_multiplier)},
                       {"ok", r.pass}});
    const BoundCheck green = verify_green_bound(e, so);
    Json row;
    row["group"] = e.name();
    row["order"] = e.order();
    row["multiplier"] = big_list(m.multiplier_factors);
    row["multiplier_order"] = big_json(m.multiplier_order);
    row["p_parts"] = parts;
    row["decomposition_ok"] = decomposition_ok;
    row["sylow"] = sylow;
    row["order_bound"] = green.bound_value;
    row["order_bound_ok"] = green.pass;
    row["ok"] = decomposition_ok && sy.pass && green.pass;
    rep.rows[i] = std::move(row);
  });
  finish(rep);
  rep.summary["max_order"] = max_order;
  return rep;
}

SuiteReport multiplier_index_suite(const SuiteOptions& o) {
  SuiteReport rep{"multiplier-index", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const auto groups = load_small_groups(max_order);
  std::vector<std::vector<Json>> per_group(groups.size());
  parallel_for(groups.size(), o.parallel, [&](std::size_t i) {
    for (const Subgroup& n : normal_subgroups(groups[i])) {
      const MultiplierCheck c = verify_multiplier_index_bound(groups[i], n);
      Json row;
      row["group"] = groups[i].name();
      row["N_order"] = n.order();
      row["N"] = elem_list(n.elements());
      row["index"] = c.index;
      row["derived_order"] = c.derived_order;
      row["commutator_index"] = c.commutator_index;
      row["bound"] = c.bound_value;
      row["ok"] = c.pass;
      per_group[i].push_back(std::move(row));
    }
  });
  for (auto& rows : per_group)
    for (auto& r : rows) rep.rows.push_back(std::move(r));
  finish(rep);
  rep.summary["max_order"] = max_order;
  return rep;
}

SuiteReport torsion_bound_suite(const SuiteOptions& o) {
  SuiteReport rep{"torsion-bound", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const UniverseReport u = run_product_universe(load_small_groups(max_order), o.parallel, o.limits);
  for (const auto& in : u.instances) {
    const TorsionCheck& t = in.torsion;
    Json row;
    row["kind"] = "finite";
    row["A"] = in.A;
    row["B"] = in.B;
    row["H"] = in.subgroup;
    row["H_index"] = in.index_G_H;
    row["t_H"] = big_json(t.t_H);
    row["t_A"] = big_json(t.t_A);
    row["t_B"] = big_json(t.t_B);
    row["bound"] = t.bound_value;
    row["sandwich"] = {t.sandwich_lower, t.sandwich_upper};
    row["ok"] = t.pass();
    rep.rows.push_back(std::move(row));
  }
  std::size_t fp = 0;
  if (o.fp_instances > 0) {
    const auto inst = random_fp_instances(o.fp_instances, o.fp_max_index, o.seed);
    const auto recs = run_sequence(fp_instance_sequence(inst), o.parallel);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const GradientRecord& r = recs[i];
      Json row;
      row["kind"] = "finitely-presented";
      row["instance"] = inst[i].description;
      row["H_index"] = r.index;
      row["indexA"] = r.indexA;
      row["indexB"] = r.indexB;
      row["t_H"] = big_json(r.torsion_order);
      row["t_A"] = big_json(r.proj_torsion_a);
      row["t_B"] = big_json(r.proj_torsion_b);
      row["bound"] = r.torsion_bound;
      row["ok"] = r.torsion_bound_ok;
      rep.rows.push_back(std::move(row));
      ++fp;
    }
  }
  finish(rep);
  rep.summary["max_order"] = max_order;
  rep.summary["enumeration"] = u.enumeration;
  rep.summary["fp_instances"] = fp;
  rep.summary["seed"] = o.seed;
  return rep;
}

SuiteReport relation_count_suite(const SuiteOptions& o) {
  SuiteReport rep{"relation-count", {}, 0, Json::object()};
  const std::size_t max_order = max_order_for(rep.suite, o);
  const auto groups = load_small_groups(max_order);

  // r(K, T) for every minimal generating multiset T.
  struct Item {
    std::size_t group;
    std::vector<Elem> T;
  };
  std::vector<Item> items;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (auto& t : generating_multisets(groups[g], d_min(groups[g], o.limits), false))
      items.push_back({g, std::move(t)});
  std::vector<Json> rows(items.size());
  parallel_for(items.size(), o.parallel, [&](std::size_t i) {
    const FiniteGroup& k = groups[items[i].group];
    const auto& T = items[i].T;
    const ExactRelations ex = exact_relations(k, T);
    const std::size_t upper = relations_upper(k, T);
    const BigInt bound = presentation_bound(BigInt(static_cast<unsigned long>(k.order())),
                                            BigInt(static_cast<unsigned long>(T.size())));
    Json row;
    row["kind"] = "relations";
    row["group"] = k.name();
    row["T"] = elem_list(T);
    row["lower"] = ex.lower_bound;
    row["exact"] = ex.value;
    row["certified"] = ex.certified;
    row["upper"] = upper;
    row["bound"] = big_json(bound);
    row["ok"] = ex.lower_bound <= ex.value && ex.value <= upper && BigInt(static_cast<unsigned long>(ex.value)) <= bound;
    rows[i] = std::move(row);
  });

  // Relators of G/N on the image of a generating set of G, read in G,
  // normally generate N; so d_G(N) is at most their number.
  std::vector<std::vector<Json>> normal_rows(groups.size());
  parallel_for(groups.size(), o.parallel, [&](std::size_t gi) {
    const FiniteGroup& g = groups[gi];
    const std::vector<Elem> T = min_generating_set(whole_group(g), o.limits);
    for (const Subgroup& n : normal_subgroups(g)) {
      auto [q, hom] = quotient(n);
      std::vector<Elem> Tbar;
      for (Elem x : T) Tbar.push_back(hom(x));
      const UpperPresentation up = upper_presentation(q, Tbar);
      std::vector<Elem> values;
      for (const Word& w : up.presentation.relators()) {
        Elem v = g.identity();
        for (Letter x : w) {
          const Elem t = T[static_cast<std::size_t>(std::abs(x)) - 1];
          v = g.mul(v, x > 0 ? t : g.inv(t));
        }
        values.push_back(v);
      }
      const bool in_n = std::all_of(values.begin(), values.end(), [&](Elem v) { return n.contains(v); });
      const bool generates = in_n && normal_closure(g, whole_group(g), values) == n;
      const std::size_t dn = d_normal_min(g, n, o.limits);
      Json row;
      row["kind"] = "normal-generation";
      row["group"] = g.name();
      row["N_order"] = n.order();
      row["T"] = elem_list(T);
      row["d_normal"] = dn;
      row["relators"] = up.presentation.relators().size();
      row["relators_normally_generate"] = generates;
      row["ok"] = generates && dn <= up.presentation.relators().size();
      normal_rows[gi].push_back(std::move(row));
    }
  });
  rep.rows = std::move(rows);
  for (auto& rs : normal_rows)
    for (auto& r : rs) rep.rows.push_back(std::move(r));
  finish(rep);
  rep.summary["max_order"] = max_order;
  rep.summary["generating_multisets"] = items.size();
  return rep;
}

SuiteReport recursion_suite(const SuiteOptions& o) {
  SuiteReport rep{"recursion-step", {}, 0, Json::object()};
  auto row_for = [](const char* sweep, const RecursionSweep& s) {
    Json row;
    row["sweep"] = sweep;
    row["checked"] = s.checked;
    row["failures"] = s.failures;
    row["first_failure"] = s.failures ? Json{s.fail_t, s.fail_k, s.fail_n} : Json();
    row["ok"] = s.failures == 0;
    return row;
  };
  const RecursionSweep d = sweep_recursion_diagonal(o.recursion_n_max, o.parallel);
  rep.rows.push_back(row_for("diagonal", d));
  const auto grid = recursion_grid(o.recursion_dense_max, o.recursion_n_max);
  rep.rows.push_back(row_for("grid", sweep_recursion_grid(grid, o.recursion_t_max, o.parallel)));
  finish(rep);
  rep.summary["n_max"] = o.recursion_n_max;
  rep.summary["t_max"] = o.recursion_t_max;
  rep.summary["grid_size"] = grid.size();
  return rep;
}

}  // namespace

Json instance_row(const InstanceReport& in) {
  Json row;
  row["A"] = in.A;
  row["B"] = in.B;
  row["H"] = in.subgroup;
  row["H_order"] = in.order_H;
  row["H_index"] = in.index_G_H;
  row["dH"] = in.bounds.d_H;
  row["dG"] = in.bounds.d_G;
  row["bounds"] = big_list({in.bounds.bound1, in.bounds.bound2, in.bounds.bound3});
  row["bound3_assembled"] = big_json(in.bounds.bound3_assembled);
  row["generators"] = {in.S, in.R_A, in.R_B};
  row["pass"] = {in.bounds.pass1, in.bounds.pass2, in.bounds.pass3, in.bounds.pass3_assembled,
                 in.construction_ok, in.chain_ok, in.goursat_ok};
  row["ok"] = in.bounds.pass() && in.construction_ok && in.chain_ok && in.goursat_ok;
  return row;
}

Json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "product-bounds", "normality",      "schur",         "multiplier-index",
      "torsion-bound",  "relation-count", "recursion-step"};
  return names;
}

std::size_t default_max_order(const std::string& suite) {
  if (suite == "schur") return 16;
  if (suite == "multiplier-index") return 32;
  return 8;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "product-bounds") return product_bounds_suite(options);
  if (name == "normality") return normality_suite(options);
  if (name == "schur") return schur_suite(options);
  if (name == "multiplier-index") return multiplier_index_suite(options);
  if (name == "torsion-bound") return torsion_bound_suite(options);
  if (name == "relation-count") return relation_count_suite(options);
  if (name == "recursion-step") return recursion_suite(options);
  throw UnknownSuite(name);
}

std::vector<FpInstance> random_fp_instances(std::size_t count, std::size_t max_index,
                                            std::uint64_t seed) {
  if (max_index < 2) throw DomainError("max_index must be at least 2");
  const auto groups = load_small_groups(std::min<std::size_t>(max_index, 32));
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto random_perm = [&](std::size_t n) {
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[pick(i)]);
    return p;
  };

  std::vector<FpInstance> out;
  while (out.size() < count) {
    const std::size_t m = 1 + pick(3), l = 1 + pick(2);
    const std::size_t q_max = max_index / (m * l);
    std::vector<const FiniteGroup*> fit;
    for (const auto& g : groups)
      if (g.order() >= 2 && g.order() <= q_max) fit.push_back(&g);
    if (fit.empty()) continue;
    const FiniteGroup& q = *fit[pick(fit.size())];
    const std::size_t n = q.order();
    // Position of an element with the identity moved to 0.
    auto pos = [&](Elem x) -> std::uint32_t {
      if (x == q.identity()) return 0;
      return x == 0 ? q.identity() : x;
    };
    const std::size_t degree = n * m * l;
    auto point = [&](Elem x, std::size_t s, std::size_t t) {
      return static_cast<std::uint32_t>((pos(x) * m + s) * l + t);
    };
    FpInstance inst;
    inst.description = q.name() + " x" + std::to_string(m) + " x" + std::to_string(l) + " [";
    for (int side = 0; side < 2; ++side)
      for (int gen = 0; gen < 2; ++gen) {
        const Elem e = static_cast<Elem>(pick(n));
        const auto sigma = random_perm(side == 0 ? m : l);
        inst.description += (side || gen ? " " : "") + std::to_string(e);
        std::vector<std::uint32_t> perm(degree);
        for (Elem x = 0; x < n; ++x)
          for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < l; ++t)
              perm[point(x, s, t)] = side == 0 ? point(q.mul(q.inv(e), x), sigma[s], t)
                                               : point(q.mul(x, e), s, sigma[t]);
        inst.perms.push_back(std::move(perm));
      }
    inst.description += "]";
    out.push_back(std::move(inst));
  }
  return out;
}

SequenceSpec fp_instance_sequence(const std::vector<FpInstance>& instances) {
  SequenceSpec spec;
  spec.name = "stabilizers of commuting actions";
  spec.kind = SequenceKind::CosetTable;
  spec.rank_a = spec.rank_b = 2;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    LevelSpec lv;
    lv.label = "fp-" + std::to_string(i + 1);
    lv.words = stabilizer_words(instances[i].perms);
    spec.levels.push_back(std::move(lv));
  }
  return spec;
}

}  // namespace dpgrad
