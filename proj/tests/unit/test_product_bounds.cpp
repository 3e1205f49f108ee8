#include <doctest.h>

#include <cmath>
#include <random>

#include "dpgrad/errors.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/standard_groups.hpp"

using namespace dpgrad;

namespace {

Elem pair(const FiniteGroup& B, Elem a, Elem b) { return static_cast<Elem>(a * B.order() + b); }

Subgroup diagonal(const FiniteGroup& G, const FiniteGroup& A) {
  std::vector<Elem> gens;
  for (Elem a : A.generators()) gens.push_back(pair(A, a, a));
  return closure(G, gens);
}

// Subsets closed under multiplication that contain the identity.
std::size_t brute_subgroup_count(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!((mask >> g.identity()) & 1u)) continue;
    bool closed = true;
    for (Elem x = 0; x < n && closed; ++x)
      for (Elem y = 0; y < n && closed; ++y)
        if (((mask >> x) & 1u) && ((mask >> y) & 1u)) closed = (mask >> g.mul(x, y)) & 1u;
    count += closed;
  }
  return count;
}

}  // namespace

TEST_CASE("subgroup lattice matches subset enumeration") {
  for (const auto& g : {symmetric_group(3), dihedral_group(4), quaternion_group(),
                        elementary_abelian_group(2, 3), cyclic_group(8), abelian_group({2, 4})}) {
    const auto lat = all_subgroups(g);
    CHECK(lat.size() == brute_subgroup_count(g));
    for (const auto& s : lat) CHECK(s.rank == d_min(s.subgroup));
  }
  CHECK(all_subgroups(symmetric_group(4)).size() == 30);
  CHECK(all_subgroups(elementary_abelian_group(2, 4)).size() == 67);
}

TEST_CASE("goursat data of the diagonal in S3 x S3") {
  const FiniteGroup A = symmetric_group(3);
  const FiniteGroup G = direct_product(A, A);
  const GoursatData gd = goursat_data(A, A, diagonal(G, A));
  CHECK(gd.index_G_H == 6);
  CHECK(gd.index_G_AH == 1);
  CHECK(gd.index_AH_H == 6);
  CHECK(gd.piA_H.order() == 6);
  CHECK(gd.A_cap_H.order() == 1);
  CHECK(gd.goursat_consistent);

  const BoundReport r = evaluate_bounds(gd);
  CHECK(r.d_H == 2);
  CHECK(r.bound1 == 14);
  CHECK(r.pass());

  const auto gc = construct_generators(gd);
  CHECK(gc.S.empty());
  CHECK(gc.R_A.size() == 2);
  CHECK(gc.combined_ok);

  const auto nc = verify_normality(A, A, gd.H);
  CHECK(nc.hypothesis);
  CHECK(nc.conclusion);

  const auto tc = verify_torsion_bound(gd);
  CHECK(tc.t_H == 2);
  CHECK(tc.t_A == 2);
  CHECK(tc.t_B == 2);
  CHECK(tc.pass());
}

TEST_CASE("goursat data of full and one-sided subgroups") {
  const FiniteGroup A = symmetric_group(3);
  const FiniteGroup G = direct_product(A, A);
  const GoursatData full = goursat_data(A, A, whole_group(G));
  CHECK(full.index_G_H == 1);
  CHECK(full.index_G_AH == 1);
  CHECK(full.index_BH_H == 1);
  CHECK(full.A_cap_H.order() == 6);
  const BoundReport r = evaluate_bounds(full);
  CHECK(r.d_H == r.d_G);
  CHECK(r.bound1 == 2 * r.d_G);

  std::vector<Elem> gens;
  for (Elem a : A.generators()) gens.push_back(pair(A, a, A.identity()));
  const GoursatData left = goursat_data(A, A, closure(G, gens));
  CHECK(left.piB_H.order() == 1);
  CHECK(left.index_G_BH == 1);
  CHECK(left.index_BH_H == 6);
  const auto nc = verify_normality(A, A, left.H);
  CHECK(nc.hypothesis);
  CHECK(nc.conclusion);

  // B K = G fails for K = 1 x B: the check is vacuous.
  std::vector<Elem> bg;
  for (Elem b : A.generators()) bg.push_back(pair(A, A.identity(), b));
  const auto vac = verify_normality(A, A, closure(G, bg));
  CHECK_FALSE(vac.hypothesis);
  CHECK(vac.pass());
}

TEST_CASE("index-2 subgroup of Z/4 x Z/4") {
  const FiniteGroup A = cyclic_group(4);
  const FiniteGroup G = direct_product(A, A);
  const Elem g = A.generators().front();
  const std::vector<Elem> gens{pair(A, A.mul(g, g), A.identity()), pair(A, A.identity(), g)};
  const GoursatData gd = goursat_data(A, A, closure(G, gens));
  CHECK(gd.index_G_H == 2);
  CHECK(gd.index_G_AH == 1);
  CHECK(gd.index_AH_H == 2);
  const auto gc = construct_generators(gd);
  CHECK(gc.S.size() == 1);
  CHECK(gc.R_A.size() == 1);
  CHECK(gc.R_B.size() == 1);
  CHECK(gc.combined_ok);
  const BoundReport r = evaluate_bounds(gd);
  CHECK(r.d_H == 2);
  CHECK(r.bound1 == 6);
  CHECK(r.pass1);
}

TEST_CASE("torsion bound on the diagonal of Z/4 x Z/4") {
  const FiniteGroup A = cyclic_group(4);
  const FiniteGroup G = direct_product(A, A);
  const auto tc = verify_torsion_bound(goursat_data(A, A, diagonal(G, A)));
  CHECK(tc.t_H == 4);
  CHECK(tc.t_A == 4);
  CHECK(tc.t_B == 4);
  CHECK(tc.index == 4);
  CHECK(tc.sandwich_lower);
  CHECK(tc.sandwich_upper);
  CHECK(tc.pass());
  // Equality t_H = t_A t_B at index 1 passes exactly.
  CHECK(torsion_bound_holds(16, 4, 4, 1));
  CHECK_FALSE(torsion_bound_holds(17, 4, 4, 1));
  CHECK_FALSE(torsion_bound_holds(10000, 1, 1, 2));
}

TEST_CASE("presentation bound") {
  CHECK(presentation_bound(1, 0) == 0);
  CHECK(presentation_bound(6, 2) == 551);
  CHECK(presentation_bound(128, 1) == 1024);
  CHECK(floor_pow_3_7(128) == 8);
  CHECK(floor_pow_3_7(127) == 7);
  // Floating-point oracle away from integer boundaries.
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const unsigned long k = 1 + rng() % 100000, t = rng() % 9;
    const long double x = 128.0L * t * std::pow(static_cast<long double>(k), 3.0L / 7.0L);
    const BigInt b = presentation_bound(k, t);
    if (x - std::floor(x) > 1e-6L && std::ceil(x) - x > 1e-6L)
      CHECK(b == static_cast<unsigned long>(std::floor(x)));
  }
  CHECK_THROWS_AS(presentation_bound(0, 1), DomainError);
}

TEST_CASE("recursion step") {
  CHECK(check_recursion_step(1, 4, 2).pass);
  CHECK(check_recursion_step(3, 60, 5).pass);
  CHECK(check_recursion_step(1, 1000000, 1000000).pass);
  CHECK_THROWS_AS(check_recursion_step(0, 4, 2), DomainError);
  CHECK_THROWS_AS(check_recursion_step(1, 5, 2), DomainError);
  CHECK_THROWS_AS(check_recursion_step(1, 4, 1), DomainError);
  // Floating-point oracle for the two sides.
  for (unsigned long k : {12ul, 360ul, 5040ul})
    for (unsigned long n = 2; n <= k; ++n) {
      if (k % n) continue;
      const auto r = check_recursion_step(2, k, n);
      const double lhs = 256 * std::pow(double(k / n), 3.0 / 7) + 12 * std::log2(double(n)) +
                         8 * std::pow(double(n), 3.0 / 7);
      const double rhs = 256 * std::pow(double(k), 3.0 / 7);
      CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-12));
      CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-12));
      CHECK(r.pass == (lhs <= rhs));
    }
  const auto s = sweep_recursion_diagonal(2000, false);
  CHECK(s.checked == 1999);
  CHECK(s.failures == 0);
  const auto grid = recursion_grid(50, 1000000);
  CHECK(grid.front() == 2);
  CHECK(grid.back() == 1000000);
  const auto p = sweep_recursion_grid(grid, 2, true);
  const auto q = sweep_recursion_grid(grid, 2, false);
  CHECK(p.checked == q.checked);
  CHECK(p.failures == 0);
  CHECK(q.failures == 0);
}

TEST_CASE("product universe over small groups") {
  const std::vector<FiniteGroup> groups{FiniteGroup(), cyclic_group(2), symmetric_group(3),
                                        cyclic_group(4)};
  const auto par = run_product_universe(groups, true);
  const auto ser = run_product_universe(groups, false);
  REQUIRE(par.instances.size() == ser.instances.size());
  CHECK(par.failures == 0);
  for (std::size_t i = 0; i < par.instances.size(); ++i) {
    CHECK(par.instances[i].bounds.bound3 == ser.instances[i].bounds.bound3);
    CHECK(par.instances[i].torsion.t_H == ser.instances[i].torsion.t_H);
  }
  // S3 x S3 has 60 subgroups.
  std::size_t s3s3 = 0;
  for (const auto& r : par.instances) s3s3 += r.a == 2 && r.b == 2;
  CHECK(s3s3 == 60);
}
