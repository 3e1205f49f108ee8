#include "dpgrad/gradient.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/subgroup_presentation.hpp"

namespace dpgrad {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::FiberProduct:
      return "fiber-product";
    case SequenceKind::CosetTable:
      return "coset-table";
    default:
      return "product-of-subgroups";
  }
}

Presentation free_product_presentation(std::size_t rank_a, std::size_t rank_b) {
  return product_presentation(free_presentation(rank_a), free_presentation(rank_b));
}

// ------------------------------------------------------------------ parsing

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& v, std::size_t line, std::size_t min = 1) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::logic_error&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
  if (pos != v.size() || x < static_cast<long long>(min))
    throw ParseError("expected a number >= " + std::to_string(min) + ", got '" + v + "'", line);
  return static_cast<std::size_t>(x);
}

Word parse_word_checked(const std::string& v, std::size_t rank, std::size_t line) {
  Word w;
  try {
    w = parse_word(v);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
  for (Letter x : w)
    if (static_cast<std::size_t>(std::abs(x)) > rank)
      throw ParseError("word uses a letter beyond rank " + std::to_string(rank), line);
  return w;
}

std::vector<std::vector<std::uint32_t>> parse_perms(const std::string& v, std::size_t count,
                                                   std::size_t line) {
  std::vector<std::vector<std::uint32_t>> out;
  std::stringstream all(v);
  std::string chunk;
  while (std::getline(all, chunk, '|')) {
    std::stringstream ss(chunk);
    std::vector<std::uint32_t> p;
    std::string tok;
    while (ss >> tok) p.push_back(static_cast<std::uint32_t>(parse_count(tok, line, 0)));
    std::vector<std::uint8_t> hit(p.size(), 0);
    for (auto x : p)
      if (x >= p.size() || hit[x]++) throw ParseError("not a permutation: " + trim(chunk), line);
    if (p.empty()) throw ParseError("empty permutation", line);
    if (!out.empty() && p.size() != out.front().size())
      throw ParseError("permutations of different degrees", line);
    out.push_back(std::move(p));
  }
  if (out.size() != count)
    throw ParseError("expected " + std::to_string(count) + " permutations, got " +
                         std::to_string(out.size()),
                     line);
  return out;
}

void check_level(const SequenceSpec& spec, const LevelSpec& lv) {
  switch (spec.kind) {
    case SequenceKind::FiberProduct:
      if (lv.quotient.empty()) throw ParseError("level needs a 'quotient' line", lv.line);
      break;
    case SequenceKind::CosetTable:
      if (lv.words.empty()) throw ParseError("level needs at least one 'word' line", lv.line);
      break;
    case SequenceKind::ProductOfSubgroups:
      if (lv.a_words.empty() || lv.b_words.empty())
        throw ParseError("level needs 'a-word' and 'b-word' lines", lv.line);
      break;
  }
}

}  // namespace

SequenceSpec parse_sequence_spec(const std::string& text) {
  SequenceSpec spec;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool have_format = false, have_kind = false;
  auto need_level = [&](const std::string& key) -> LevelSpec& {
    if (spec.levels.empty()) throw ParseError("'" + key + "' before any 'level' line", line);
    return spec.levels.back();
  };
  auto need_kind = [&](SequenceKind k, const std::string& key) {
    if (!have_kind || spec.kind != k)
      throw ParseError("'" + key + "' is only allowed for kind " + to_string(k), line);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", line);
    const std::string key = trim(s.substr(0, colon)), v = trim(s.substr(colon + 1));
    if (key == "format") {
      if (v != "dpgrad-sequence v1") throw ParseError("unsupported format '" + v + "'", line);
      have_format = true;
    } else if (!have_format) {
      throw ParseError("first line must be 'format: dpgrad-sequence v1'", line);
    } else if (key == "name") {
      spec.name = v;
    } else if (key == "kind") {
      if (!spec.levels.empty()) throw ParseError("'kind' after the first level", line);
      if (v == "fiber-product")
        spec.kind = SequenceKind::FiberProduct;
      else if (v == "coset-table")
        spec.kind = SequenceKind::CosetTable;
      else if (v == "product-of-subgroups")
        spec.kind = SequenceKind::ProductOfSubgroups;
      else
        throw ParseError("unknown kind '" + v + "'", line);
      have_kind = true;
    } else if (key == "ranks") {
      if (!spec.levels.empty()) throw ParseError("'ranks' after the first level", line);
      std::istringstream ss(v);
      std::string r, t, extra;
      if (!(ss >> r >> t) || (ss >> extra)) throw ParseError("expected 'ranks: <r> <s>'", line);
      spec.rank_a = parse_count(r, line);
      spec.rank_b = parse_count(t, line);
    } else if (key == "max-cosets") {
      spec.max_cosets = parse_count(v, line);
    } else if (key == "max-index") {
      spec.max_index = parse_count(v, line);
    } else if (key == "tietze-effort") {
      spec.tietze_effort = parse_count(v, line, 0);
    } else if (key == "level") {
      if (!have_kind) throw ParseError("'level' before 'kind'", line);
      if (!spec.levels.empty()) check_level(spec, spec.levels.back());
      LevelSpec lv;
      lv.label = v.empty() ? "level " + std::to_string(spec.levels.size() + 1) : v;
      lv.line = line;
      spec.levels.push_back(std::move(lv));
    } else if (key == "quotient") {
      need_kind(SequenceKind::FiberProduct, key);
      auto& lv = need_level(key);
      if (!lv.quotient.empty()) throw ParseError("duplicate 'quotient' line", line);
      if (spec.rank_a != spec.rank_b)
        throw ParseError("fiber products need equal ranks", line);
      lv.quotient = parse_perms(v, spec.rank_a, line);
    } else if (key == "word") {
      need_kind(SequenceKind::CosetTable, key);
      need_level(key).words.push_back(parse_word_checked(v, spec.rank_a + spec.rank_b, line));
    } else if (key == "a-word") {
      need_kind(SequenceKind::ProductOfSubgroups, key);
      need_level(key).a_words.push_back(parse_word_checked(v, spec.rank_a, line));
    } else if (key == "b-word") {
      need_kind(SequenceKind::ProductOfSubgroups, key);
      need_level(key).b_words.push_back(parse_word_checked(v, spec.rank_b, line));
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!have_format) throw ParseError("empty sequence file");
  if (spec.levels.empty()) throw ParseError("sequence has no levels", line);
  check_level(spec, spec.levels.back());
  return spec;
}

SequenceSpec read_sequence_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sequence_spec(ss.str());
}

// ------------------------------------------------------------- coset tables

namespace {

using Perm = std::vector<std::uint32_t>;

// "p then q".
Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

// The fiber product {(x, y) : q(x) = q(y)} has its right cosets indexed by
// z = q(x)^-1 q(y) in Q. A generator of the first factor with image s acts
// by z -> s^-1 z, one of the second factor by z -> z s.
CosetTable fiber_product_table(const SequenceSpec& spec, const LevelSpec& lv) {
  const auto& gens = lv.quotient;
  const Perm id = [&] {
    Perm p(gens.front().size());
    std::iota(p.begin(), p.end(), 0u);
    return p;
  }();
  std::vector<Perm> el{id};
  std::map<Perm, std::uint32_t> pos{{id, 0}};
  for (std::size_t i = 0; i < el.size(); ++i)
    for (const auto& g : gens) {
      Perm y = compose(el[i], g);
      if (pos.count(y)) continue;
      if (el.size() >= spec.max_index) throw CapExceeded("quotient order", el.size() + 1, spec.max_index);
      pos.emplace(y, static_cast<std::uint32_t>(el.size()));
      el.push_back(std::move(y));
    }
  const std::size_t r = spec.rank_a, n = el.size();
  std::vector<std::vector<std::uint32_t>> perms(2 * r, std::vector<std::uint32_t>(n));
  for (std::size_t g = 0; g < r; ++g) {
    const Perm sinv = invert(gens[g]);
    for (std::size_t z = 0; z < n; ++z) {
      perms[g][z] = pos.at(compose(sinv, el[z]));
      perms[r + g][z] = pos.at(compose(el[z], gens[g]));
    }
  }
  return coset_table_from_action(free_product_presentation(r, r), perms);
}

CosetTable product_table(const SequenceSpec& spec, const LevelSpec& lv) {
  EnumerationOptions opt;
  opt.max_cosets = spec.max_cosets;
  const CosetTable ta = coset_enumerate(free_presentation(spec.rank_a), lv.a_words, opt);
  const CosetTable tb = coset_enumerate(free_presentation(spec.rank_b), lv.b_words, opt);
  const std::size_t na = ta.index(), nb = tb.index();
  if (na * nb > spec.max_index) throw CapExceeded("subgroup index", na * nb, spec.max_index);
  std::vector<std::vector<std::uint32_t>> perms(spec.rank_a + spec.rank_b,
                                                std::vector<std::uint32_t>(na * nb));
  auto step = [](const CosetTable& x, std::size_t c, std::size_t g) {
    return static_cast<std::size_t>(x.at(c, static_cast<Letter>(g + 1)));
  };
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t g = 0; g < spec.rank_a; ++g)
        perms[g][i * nb + j] = static_cast<std::uint32_t>(step(ta, i, g) * nb + j);
      for (std::size_t g = 0; g < spec.rank_b; ++g)
        perms[spec.rank_a + g][i * nb + j] = static_cast<std::uint32_t>(i * nb + step(tb, j, g));
    }
  return coset_table_from_action(free_product_presentation(spec.rank_a, spec.rank_b), perms);
}

// Coset table of pi_A(U) in A (first = 1) or pi_B(U) in B, read off the
// table of U: the other factor's orbits are blocks permuted by this factor,
// and the projection is the stabilizer of the block holding coset 0.
CosetTable projection_table(const CosetTable& t, std::size_t first, std::size_t count,
                            std::size_t other_first, std::size_t other_count) {
  const std::size_t n = t.cosets;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = other_first; g < other_first + other_count; ++g) {
      const std::size_t a = find(c), b = find(static_cast<std::size_t>(t.at(c, static_cast<Letter>(g))));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::int64_t> block(n, -1);
  std::vector<std::size_t> rep;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t r = find(c);
    if (block[r] < 0) {
      block[r] = static_cast<std::int64_t>(rep.size());
      rep.push_back(c);
    }
  }
  std::vector<std::vector<std::uint32_t>> perms(count, std::vector<std::uint32_t>(rep.size()));
  for (std::size_t g = 0; g < count; ++g)
    for (std::size_t b = 0; b < rep.size(); ++b)
      perms[g][b] = static_cast<std::uint32_t>(
          block[find(static_cast<std::size_t>(t.at(rep[b], static_cast<Letter>(first + g))))]);
  return coset_table_from_action(free_presentation(count), perms);
}

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

GradientRecord compute_level(const SequenceSpec& spec, std::size_t n) {
  const CosetTable t = level_coset_table(spec, n + 1);
  if (t.index() > spec.max_index) throw CapExceeded("subgroup index", t.index(), spec.max_index);
  const std::size_t ra = spec.rank_a, rb = spec.rank_b;
  GradientRecord r;
  r.n = n + 1;
  r.label = spec.levels[n].label;
  r.index = t.index();
  r.indexA = orbit_size(t, 1, ra);
  r.indexB = orbit_size(t, ra + 1, rb);
  r.index_G_AU = r.index / r.indexA;
  r.index_G_BU = r.index / r.indexB;

  // d(F_r x F_s) = r + s: the abelianization is free of rank r + s.
  const BigInt dG = big(ra + rb);
  r.bound1 = dG * (big(r.index_G_AU) + big(r.indexA));
  r.bound2 = dG * (big(r.index_G_BU) + big(r.indexB));
  r.bound3 = dG * (big(r.index_G_AU) + 130 * big(r.index_G_BU) * floor_pow_3_7(big(r.index)));
  r.smallest_bound = "bound1";
  BigInt smallest = r.bound1;
  if (r.bound2 < smallest) {
    smallest = r.bound2;
    r.smallest_bound = "bound2";
  }
  if (r.bound3 < smallest) {
    smallest = r.bound3;
    r.smallest_bound = "bound3";
  }

  const SubgroupPresentation sp = reidemeister_schreier(t);
  r.schreier_generators = sp.rank();
  r.schreier_relators = sp.relators.size();
  const SubgroupPresentation simp = tietze_simplify(sp, spec.tietze_effort);
  r.tietze_generators = simp.rank();
  r.tietze_relators = simp.relators.size();
  if (big(r.tietze_generators) <= smallest) {
    r.d_upper = big(r.tietze_generators);
    r.d_upper_source = "tietze";
  } else {
    r.d_upper = smallest;
    r.d_upper_source = r.smallest_bound;
  }

  const AbelianInvariants ai = abelian_invariants(simp);
  r.betti = ai.betti;
  r.torsion_factors = ai.torsion_factors;
  r.torsion_order = ai.torsion_order;
  r.d_lower = ai.betti + ai.torsion_factors.size();
  r.log_torsion = log(Real(r.torsion_order, Round::Nearest), Round::Nearest);
  r.rank_ratio = Rational(BigInt(r.d_upper - 1), big(r.index));
  r.rank_ratio.canonicalize();
  r.torsion_ratio = div(r.log_torsion, Real(static_cast<long>(r.index)), Round::Nearest);

  const CosetTable pa = projection_table(t, 1, ra, ra + 1, rb);
  const CosetTable pb = projection_table(t, ra + 1, rb, 1, ra);
  r.proj_torsion_a = abelian_invariants(reidemeister_schreier(pa)).torsion_order;
  r.proj_torsion_b = abelian_invariants(reidemeister_schreier(pb)).torsion_order;
  r.torsion_bound_ok = torsion_bound_holds(r.torsion_order, r.proj_torsion_a, r.proj_torsion_b,
                                           big(r.index), &r.torsion_bound);
  if (spec.kind == SequenceKind::ProductOfSubgroups)
    r.nielsen_schreier_ok = r.betti == r.indexA * (ra - 1) + 1 + r.indexB * (rb - 1) + 1;
  return r;
}

}  // namespace

CosetTable level_coset_table(const SequenceSpec& spec, std::size_t n) {
  if (n < 1 || n > spec.levels.size())
    throw DomainError("no level " + std::to_string(n) + " in the sequence");
  const LevelSpec& lv = spec.levels[n - 1];
  switch (spec.kind) {
    case SequenceKind::FiberProduct:
      return fiber_product_table(spec, lv);
    case SequenceKind::ProductOfSubgroups:
      return product_table(spec, lv);
    default: {
      EnumerationOptions opt;
      opt.max_cosets = spec.max_cosets;
      return coset_enumerate(free_product_presentation(spec.rank_a, spec.rank_b), lv.words, opt);
    }
  }
}

std::vector<LevelOutcome> run_sequence_levels(const SequenceSpec& spec, bool parallel) {
  const std::size_t m = spec.levels.size();
  std::vector<LevelOutcome> out(m);
  const auto count = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k].record = compute_level(spec, k);
    } catch (...) {
      out[k].error = std::current_exception();
    }
  }
  for (std::size_t i = 1; i < m; ++i)
    if (out[i].record && out[i - 1].record)
      out[i].record->hypothesis_ok = out[i].record->indexA > out[i - 1].record->indexA &&
                                     out[i].record->indexB > out[i - 1].record->indexB;
  return out;
}

std::vector<GradientRecord> run_sequence(const SequenceSpec& spec, bool parallel) {
  auto levels = run_sequence_levels(spec, parallel);
  for (const auto& lv : levels)
    if (lv.error) std::rethrow_exception(lv.error);
  std::vector<GradientRecord> records;
  for (auto& lv : levels) records.push_back(std::move(*lv.record));
  return records;
}

Rational rank_gradient_estimate(const std::vector<GradientRecord>& records) {
  if (records.empty()) throw EmptyInput("no records");
  Rational best = records.front().rank_ratio;
  for (const auto& r : records) best = std::min(best, r.rank_ratio);
  return best;
}

Real torsion_gradient_estimate(const std::vector<GradientRecord>& records) {
  if (records.empty()) throw EmptyInput("no records");
  Real best = records.front().torsion_ratio;
  for (const auto& r : records)
    if (r.torsion_ratio < best) best = r.torsion_ratio;
  return best;
}

bool rank_ratio_decreasing(const std::vector<GradientRecord>& records) {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].rank_ratio < records[i - 1].rank_ratio)) return false;
  return true;
}

bool torsion_ratio_decreasing(const std::vector<GradientRecord>& records) {
  auto ratio = [](const GradientRecord& r, Round dir) {
    return div(log(Real(r.torsion_order, dir), dir), Real(static_cast<long>(r.index)), dir);
  };
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(ratio(records[i], Round::Up) < ratio(records[i - 1], Round::Down))) return false;
  return true;
}

std::vector<Word> stabilizer_words(const std::vector<std::vector<std::uint32_t>>& perms) {
  const CosetTable t = coset_table_from_action(free_presentation(perms.size()), perms);
  return reidemeister_schreier(t).generator_words;
}

}  // namespace dpgrad
