#include "dpgrad/product_bounds.hpp"

#include <algorithm>
#include <map>

#include <mpfr.h>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/real.hpp"

namespace dpgrad {

namespace {

Subgroup factor_a(const FiniteGroup& G, const FiniteGroup& A, const FiniteGroup& B) {
  std::vector<Elem> gens;
  for (Elem a : A.generators()) gens.push_back(static_cast<Elem>(a * B.order() + B.identity()));
  return closure(G, gens);
}

Subgroup factor_b(const FiniteGroup& G, const FiniteGroup& A, const FiniteGroup& B) {
  std::vector<Elem> gens;
  for (Elem b : B.generators()) gens.push_back(static_cast<Elem>(A.identity() * B.order() + b));
  return closure(G, gens);
}

// Elements of G whose B-coordinate (A-coordinate) is the identity, one per
// A-coordinate (B-coordinate) of the given set.
Subgroup projection_a(const Subgroup& h, const FiniteGroup& A, const FiniteGroup& B) {
  std::vector<Elem> gens;
  for (Elem g : h.generators())
    gens.push_back(static_cast<Elem>((g / B.order()) * B.order() + B.identity()));
  (void)A;
  return closure(h.parent(), gens);
}

Subgroup projection_b(const Subgroup& h, const FiniteGroup& A, const FiniteGroup& B) {
  std::vector<Elem> gens;
  for (Elem g : h.generators())
    gens.push_back(static_cast<Elem>(A.identity() * B.order() + g % B.order()));
  return closure(h.parent(), gens);
}

std::size_t product_set_size(const Subgroup& x, const Subgroup& y) {
  const FiniteGroup& g = x.parent();
  ElementSet s(g.order());
  for (Elem a : x.elements())
    for (Elem b : y.elements()) s.insert(g.mul(a, b));
  return s.count();
}

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

Elem embed_a(const GoursatData& gd, Elem a) {
  return static_cast<Elem>(a * gd.B.order() + gd.B.identity());
}
Elem embed_b(const GoursatData& gd, Elem b) {
  return static_cast<Elem>(gd.A.identity() * gd.B.order() + b);
}
Elem project_a(const GoursatData& gd, Elem g) { return static_cast<Elem>(g / gd.B.order()); }
Elem project_b(const GoursatData& gd, Elem g) { return static_cast<Elem>(g % gd.B.order()); }

GoursatData goursat_data(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& H) {
  const FiniteGroup& G = H.parent();
  if (G.order() != A.order() * B.order())
    throw DomainError("subgroup does not live in A x B");
  const Subgroup fa = factor_a(G, A, B), fb = factor_b(G, A, B);
  GoursatData gd{A,
                 B,
                 G,
                 H,
                 projection_a(H, A, B),
                 projection_b(H, A, B),
                 intersection(H, fa),
                 intersection(H, fb),
                 join(fa, H),
                 join(fb, H)};
  gd.index_G_H = G.order() / H.order();
  gd.index_G_AH = G.order() / gd.AH.order();
  gd.index_AH_H = gd.AH.order() / H.order();
  gd.index_G_BH = G.order() / gd.BH.order();
  gd.index_BH_H = gd.BH.order() / H.order();
  const std::size_t qa = gd.piA_H.order() / gd.A_cap_H.order();
  const std::size_t qb = gd.piB_H.order() / gd.B_cap_H.order();
  gd.goursat_consistent = qa == qb && H.order() == gd.A_cap_H.order() * gd.piB_H.order() &&
                          H.order() == gd.piA_H.order() * gd.B_cap_H.order() &&
                          is_normal_in(gd.A_cap_H, gd.piA_H) && is_normal_in(gd.B_cap_H, gd.piB_H);
  return gd;
}

NormalityCheck verify_normality(const FiniteGroup& A, const FiniteGroup& B, const Subgroup& K) {
  const FiniteGroup& G = K.parent();
  const Subgroup fa = factor_a(G, A, B), fb = factor_b(G, A, B);
  NormalityCheck out;
  out.hypothesis = product_set_size(fb, K) == G.order();
  out.conclusion = is_normal_in(intersection(fa, K), fa);
  return out;
}

GeneratorConstruction construct_generators(const GoursatData& gd, const Limits& limits) {
  GeneratorConstruction out{{}, {}, {}, trivial_subgroup(gd.G), false, false};
  out.S = min_normal_generating_set(gd.piA_H, gd.A_cap_H, limits);
  // Smallest-index lift in H of every projection generator.
  auto lift = [&](Elem x, bool side_a) {
    for (Elem h : gd.H.elements())
      if (side_a ? project_a(gd, h) == project_a(gd, x) : project_b(gd, h) == project_b(gd, x))
        return h;
    throw DomainError("projection generator has no preimage");
  };
  for (Elem x : min_generating_set(gd.piA_H, limits)) out.R_A.push_back(lift(x, true));
  for (Elem x : min_generating_set(gd.piB_H, limits)) out.R_B.push_back(lift(x, false));
  std::vector<Elem> all = out.S;
  all.insert(all.end(), out.R_A.begin(), out.R_A.end());
  all.insert(all.end(), out.R_B.begin(), out.R_B.end());
  out.combined = closure(gd.G, all);
  out.combined_ok = out.combined == gd.H;
  out.normal_closure_ok = normal_closure(gd.G, gd.piA_H, out.S) == gd.A_cap_H;
  return out;
}

BigInt floor_pow_3_7(const BigInt& x) {
  BigInt cube, r;
  mpz_pow_ui(cube.get_mpz_t(), x.get_mpz_t(), 3);
  mpz_root(r.get_mpz_t(), cube.get_mpz_t(), 7);
  return r;
}

BoundReport evaluate_bounds(const GoursatData& gd, std::size_t d_G, std::size_t d_H) {
  BoundReport r;
  r.d_G = d_G;
  r.d_H = d_H;
  const BigInt dg = big(d_G), f = floor_pow_3_7(big(gd.index_G_H));
  r.bound1 = dg * (big(gd.index_G_AH) + big(gd.index_AH_H));
  r.bound2 = dg * (big(gd.index_G_BH) + big(gd.index_BH_H));
  r.bound3 = dg * (big(gd.index_G_AH) + 130 * big(gd.index_G_BH) * f);
  r.bound3_assembled =
      dg * (big(gd.index_G_AH) + big(gd.index_G_BH) + 128 * big(gd.index_G_BH) * f);
  const BigInt dh = big(d_H);
  r.pass1 = dh <= r.bound1;
  r.pass2 = dh <= r.bound2;
  r.pass3 = dh <= r.bound3;
  r.pass3_assembled = dh <= r.bound3_assembled;
  return r;
}

BoundReport evaluate_bounds(const GoursatData& gd, const Limits& limits) {
  return evaluate_bounds(gd, d_min(gd.G, limits), d_min(gd.H, limits));
}

BigInt presentation_bound(const BigInt& k_order, const BigInt& t_size) {
  if (k_order < 1 || t_size < 0) throw DomainError("presentation_bound needs k >= 1, t >= 0");
  BigInt x, t7, k3, r;
  mpz_ui_pow_ui(x.get_mpz_t(), 128, 7);
  mpz_pow_ui(t7.get_mpz_t(), t_size.get_mpz_t(), 7);
  mpz_pow_ui(k3.get_mpz_t(), k_order.get_mpz_t(), 3);
  x *= t7 * k3;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), 7);
  return r;
}

namespace {

// 128 bits is far more than the margins in this inequality need; directed
// rounding keeps the verdict rigorous at any precision.
constexpr mpfr_prec_t kStepPrecision = 128;

struct Mpfr {
  mpfr_t v;
  Mpfr() { mpfr_init2(v, kStepPrecision); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// x^(3/7) for a positive integer x, rounded in direction rnd.
void pow_3_7(mpfr_t out, unsigned long x, mpfr_rnd_t rnd) {
  mpz_class c(x);
  c = c * c * c;
  mpfr_set_z(out, c.get_mpz_t(), rnd);
  mpfr_rootn_ui(out, out, 7, rnd);
}

}  // namespace

RecursionCheck check_recursion_step(unsigned long t, unsigned long k, unsigned long n) {
  if (t < 1 || n < 2 || k < n || k % n != 0)
    throw DomainError("recursion step needs t >= 1, n >= 2 and n | k");
  Mpfr a, b, c, lhs, rhs;
  // Left side, every term rounded up.
  pow_3_7(a.v, k / n, MPFR_RNDU);
  mpfr_mul_ui(a.v, a.v, 128, MPFR_RNDU);
  mpfr_mul_ui(a.v, a.v, t, MPFR_RNDU);
  mpfr_set_ui(b.v, n, MPFR_RNDU);
  mpfr_log2(b.v, b.v, MPFR_RNDU);
  mpfr_mul_ui(b.v, b.v, 6, MPFR_RNDU);
  mpfr_mul_ui(b.v, b.v, t, MPFR_RNDU);
  pow_3_7(c.v, n, MPFR_RNDU);
  mpfr_mul_ui(c.v, c.v, 8, MPFR_RNDU);
  mpfr_add(lhs.v, a.v, b.v, MPFR_RNDU);
  mpfr_add(lhs.v, lhs.v, c.v, MPFR_RNDU);
  // Right side rounded down.
  pow_3_7(rhs.v, k, MPFR_RNDD);
  mpfr_mul_ui(rhs.v, rhs.v, 128, MPFR_RNDD);
  mpfr_mul_ui(rhs.v, rhs.v, t, MPFR_RNDD);
  RecursionCheck out;
  out.pass = mpfr_lessequal_p(lhs.v, rhs.v);
  out.lhs = mpfr_get_d(lhs.v, MPFR_RNDN);
  out.rhs = mpfr_get_d(rhs.v, MPFR_RNDN);
  return out;
}

namespace {

struct Triple {
  unsigned long t, k, n;
};

RecursionSweep run_triples(const std::vector<Triple>& items, bool parallel) {
  std::vector<std::uint8_t> ok(items.size(), 0);
  const auto count = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& x = items[static_cast<std::size_t>(i)];
    ok[static_cast<std::size_t>(i)] = check_recursion_step(x.t, x.k, x.n).pass;
  }
  RecursionSweep s;
  s.checked = items.size();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (ok[i]) continue;
    if (s.failures++ == 0) {
      s.fail_t = items[i].t;
      s.fail_k = items[i].k;
      s.fail_n = items[i].n;
    }
  }
  return s;
}

}  // namespace

RecursionSweep sweep_recursion_diagonal(unsigned long n_max, bool parallel) {
  std::vector<Triple> items;
  for (unsigned long n = 2; n <= n_max; ++n) items.push_back({1, n, n});
  return run_triples(items, parallel);
}

std::vector<unsigned long> recursion_grid(unsigned long dense_max, unsigned long k_max) {
  std::vector<unsigned long> ks;
  for (unsigned long k = 2; k <= std::min(dense_max, k_max); ++k) ks.push_back(k);
  for (unsigned long base : {2ul, 3ul, 5ul, 7ul, 10ul})
    for (unsigned long k = base; k <= k_max; k *= base) ks.push_back(k);
  // Highly composite numbers up to 10^6, plus 9!, 2^19 - 1 and the largest
  // prime below 10^6.
  for (unsigned long k : {5040ul, 7560ul, 10080ul, 15120ul, 20160ul, 25200ul, 27720ul, 45360ul,
                          50400ul, 55440ul, 83160ul, 110880ul, 166320ul, 221760ul, 277200ul,
                          332640ul, 498960ul, 554400ul, 665280ul, 720720ul, 362880ul, 524287ul,
                          999983ul, 1000000ul})
    if (k <= k_max) ks.push_back(k);
  for (unsigned long k = dense_max; k <= k_max; k = k + k / 4 + 1) ks.push_back(k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

RecursionSweep sweep_recursion_grid(const std::vector<unsigned long>& ks, unsigned long t_max,
                                    bool parallel) {
  std::vector<Triple> items;
  for (unsigned long k : ks)
    for (unsigned long n = 2; n <= k; ++n)
      if (k % n == 0)
        for (unsigned long t = 1; t <= t_max; ++t) items.push_back({t, k, n});
  return run_triples(items, parallel);
}

bool torsion_bound_holds(const BigInt& t_H, const BigInt& t_A, const BigInt& t_B,
                         const BigInt& index, std::string* bound_value) {
  const BigInt prod = t_A * t_B;
  const Real li = log(Real(index, Round::Down), Round::Down);
  const Real e = mul(mul(Real(2), add(Real(1), li, Round::Down), Round::Down), li, Round::Down);
  if (bound_value) {
    const Real b = mul(Real(prod, Round::Down), exp(e, Round::Down), Round::Down);
    *bound_value = b.str(12);
  }
  if (t_H <= prod) return true;
  const mpq_class q(t_H, prod);
  return log(Real(q, Round::Up), Round::Up) <= e;
}

TorsionCheck verify_torsion_bound(const GoursatData& gd) {
  TorsionCheck out;
  out.t_H = abelian_invariants_finite(gd.H).torsion_order;
  out.t_A = abelian_invariants_finite(gd.piA_H).torsion_order;
  out.t_B = abelian_invariants_finite(gd.piB_H).torsion_order;
  out.index = gd.index_G_H;
  out.bound_ok = torsion_bound_holds(out.t_H, out.t_A, out.t_B, big(out.index), &out.bound_value);
  const Subgroup hd = derived_subgroup(gd.H);
  const Subgroup lower = join(commutator_subgroup(gd.G, gd.piA_H, gd.A_cap_H),
                              commutator_subgroup(gd.G, gd.piB_H, gd.B_cap_H));
  out.sandwich_lower = lower.subset_of(hd);
  const Subgroup upper =
      intersection(gd.H, join(derived_subgroup(gd.piA_H), derived_subgroup(gd.piB_H)));
  out.sandwich_upper = hd.subset_of(upper);
  return out;
}

namespace {

UniverseReport run_pairs(const std::vector<FiniteGroup>& groups,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         bool parallel, const Limits& limits) {
  struct Item {
    std::size_t a, b, pair, sub;
  };
  const std::size_t m = pairs.size();
  std::vector<std::vector<SubgroupInfo>> lattices(m);
  std::vector<std::map<std::vector<Elem>, std::size_t>> ranks(m);
  const auto pair_count = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t p = 0; p < pair_count; ++p) {
    const auto i = static_cast<std::size_t>(p);
    lattices[i] = all_subgroups(direct_product(groups[pairs[i].first], groups[pairs[i].second], limits),
                                limits);
    for (const auto& s : lattices[i]) ranks[i][s.subgroup.elements()] = s.rank;
  }
  std::vector<Item> items;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t s = 0; s < lattices[p].size(); ++s)
      items.push_back({pairs[p].first, pairs[p].second, p, s});

  UniverseReport rep;
  rep.instances.resize(items.size());
  const auto count = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
    const Item& it = items[static_cast<std::size_t>(idx)];
    const std::size_t p = it.pair;
    const auto& info = lattices[p][it.sub];
    const GoursatData gd = goursat_data(groups[it.a], groups[it.b], info.subgroup);
    const auto rank_of = [&](const Subgroup& s) { return ranks[p].at(s.elements()); };
    InstanceReport& r = rep.instances[static_cast<std::size_t>(idx)];
    r.a = it.a;
    r.b = it.b;
    r.A = groups[it.a].name();
    r.B = groups[it.b].name();
    r.subgroup = it.sub;
    r.order_H = info.subgroup.order();
    r.index_G_H = gd.index_G_H;
    r.index_G_AH = gd.index_G_AH;
    r.index_AH_H = gd.index_AH_H;
    r.index_G_BH = gd.index_G_BH;
    r.index_BH_H = gd.index_BH_H;
    r.goursat_ok = gd.goursat_consistent;
    r.bounds = evaluate_bounds(gd, rank_of(whole_group(gd.G)), info.rank);
    r.normality = verify_normality(gd.A, gd.B, gd.H);
    const GeneratorConstruction gc = construct_generators(gd, limits);
    r.S = gc.S.size();
    r.R_A = gc.R_A.size();
    r.R_B = gc.R_B.size();
    r.construction_ok = gc.combined_ok && gc.normal_closure_ok &&
                        gc.R_A.size() == rank_of(gd.piA_H) && gc.R_B.size() == rank_of(gd.piB_H);
    const BigInt s_cap = 128 * big(r.R_A) * floor_pow_3_7(big(gd.index_G_H));
    r.chain_ok = info.rank <= gc.size() && big(r.S) <= s_cap;
    r.torsion = verify_torsion_bound(gd);
  }
  for (const auto& r : rep.instances)
    if (!r.pass()) ++rep.failures;
  return rep;
}

}  // namespace

UniverseReport run_product_universe(const std::vector<FiniteGroup>& groups, bool parallel,
                                    const Limits& limits) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = 0; b < groups.size(); ++b) pairs.emplace_back(a, b);
  return run_pairs(groups, pairs, parallel, limits);
}

UniverseReport run_product_pair(const FiniteGroup& A, const FiniteGroup& B, bool parallel,
                                const Limits& limits) {
  return run_pairs({A, B}, {{0, 1}}, parallel, limits);
}

}  // namespace dpgrad
