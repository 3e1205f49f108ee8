#include <doctest.h>

#include <algorithm>

#include "dpgrad/errors.hpp"
#include "dpgrad/finite_group.hpp"
#include "dpgrad/group_io.hpp"
#include "dpgrad/standard_groups.hpp"

using namespace dpgrad;

namespace {

// Brute force: smallest k such that some k-subset generates g.
std::size_t d_by_subsets(const FiniteGroup& g) {
  const std::size_t n = g.order();
  if (n == 1) return 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<Elem> pick(k, 0);
    while (true) {
      if (closure(g, pick).order() == n) return k;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[i - 1];
    }
  }
  return 99;
}

}  // namespace

TEST_CASE("standard groups have the expected orders") {
  CHECK(cyclic_group(7).order() == 7);
  CHECK(dihedral_group(4).order() == 8);
  CHECK(symmetric_group(4).order() == 24);
  CHECK(alternating_group(5).order() == 60);
  CHECK(quaternion_group().order() == 8);
  CHECK(abelian_group({2, 4}).order() == 8);
  CHECK(elementary_abelian_group(2, 3).order() == 8);
  CHECK(FiniteGroup().order() == 1);
}

TEST_CASE("from_table rejects malformed tables") {
  CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 1}, {1}), DomainError);
  CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 0}, {}), DomainError);
  // A latin square with identity 0 that is not associative (order 5 loop).
  std::vector<Elem> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                            3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(FiniteGroup::from_table(5, loop, {1, 2}), DomainError);
}

TEST_CASE("element orders and inverses") {
  auto g = symmetric_group(4);
  std::size_t order2 = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    CHECK(g.mul(x, g.inv(x)) == g.identity());
    if (g.element_order(x) == 2) ++order2;
  }
  CHECK(order2 == 9);
}

TEST_CASE("d_min matches subset brute force") {
  for (const auto& g : {cyclic_group(6), dihedral_group(4), quaternion_group(),
                        elementary_abelian_group(2, 3), symmetric_group(4),
                        alternating_group(4), abelian_group({2, 2, 3})}) {
    CAPTURE(g.name());
    CHECK(d_min(g) == d_by_subsets(g));
  }
  CHECK(d_min(elementary_abelian_group(2, 3)) == 3);
  CHECK(d_min(symmetric_group(4)) == 2);
  CHECK(d_min(FiniteGroup()) == 0);
}

TEST_CASE("min_generating_set generates") {
  auto g = symmetric_group(4);
  auto s = min_generating_set(whole_group(g));
  CHECK(closure(g, s).order() == 24);
}

TEST_CASE("search cap raises CapExceeded") {
  Limits lim;
  lim.search_cap = 10;
  CHECK_THROWS_AS(d_min(symmetric_group(4), lim), CapExceeded);
}

TEST_CASE("normal generation of the Klein four subgroup of S4") {
  auto g = symmetric_group(4);
  auto normals = normal_subgroups(g);
  REQUIRE(normals.size() == 4);
  const Subgroup& v4 = normals[1];
  CHECK(v4.order() == 4);
  CHECK(d_min(v4) == 2);
  CHECK(d_normal_min(g, v4) == 1);
  auto s = min_normal_generating_set(whole_group(g), v4);
  CHECK(normal_closure(g, whole_group(g), s) == v4);
}

TEST_CASE("non-normal subgroup raises NotNormal") {
  auto g = symmetric_group(3);
  Elem t = 0;
  for (Elem x = 0; x < g.order(); ++x)
    if (g.element_order(x) == 2) {
      t = x;
      break;
    }
  auto h = closure(g, std::vector<Elem>{t});
  CHECK_FALSE(is_normal(h));
  CHECK_THROWS_AS(d_normal_min(g, h), NotNormal);
  CHECK_THROWS_AS(quotient(h), NotNormal);
}

TEST_CASE("commutator subgroup, center and Sylow subgroups") {
  auto s4 = symmetric_group(4);
  CHECK(derived_subgroup(whole_group(s4)).order() == 12);
  CHECK(center(s4).order() == 1);
  CHECK(center(dihedral_group(4)).order() == 2);
  CHECK(sylow_subgroup(s4, 2).order() == 8);
  CHECK(sylow_subgroup(s4, 3).order() == 3);
  CHECK(sylow_subgroup(alternating_group(5), 5).order() == 5);
}

TEST_CASE("quotient by the derived subgroup of S4 is C2") {
  auto s4 = symmetric_group(4);
  auto [q, pi] = quotient(derived_subgroup(whole_group(s4)));
  CHECK(q.order() == 2);
  CHECK(pi.is_surjective());
  CHECK(pi.kernel().order() == 12);
}

TEST_CASE("homomorphism from generator images") {
  auto c4 = cyclic_group(4);
  auto c2 = cyclic_group(2);
  std::vector<Elem> img{c2.generators()[0]};
  auto h = Homomorphism::from_generator_images(c4, c2, img);
  CHECK(h.kernel().order() == 2);
  auto c3 = cyclic_group(3);
  std::vector<Elem> bad{c3.generators()[0]};
  CHECK_THROWS_AS(Homomorphism::from_generator_images(c4, c3, bad), DomainError);
}

TEST_CASE("fiber product of S3 onto C2") {
  auto s3 = symmetric_group(3);
  auto [q, pi] = quotient(derived_subgroup(whole_group(s3)));
  auto fp = fiber_product(pi);
  CHECK(fp.subgroup.order() == 18);
  CHECK(fp.index == 2);
  CHECK(fp.diagonal.order() == 6);
  CHECK(fp.diagonal.subset_of(fp.subgroup));
  CHECK_FALSE(fp.kernel_central);
}

TEST_CASE("fiber product with central kernel") {
  auto q8 = quaternion_group();
  auto z = center(q8);
  auto [q, pi] = quotient(z);
  auto fp = fiber_product(pi);
  REQUIRE(fp.kernel_central);
  CHECK(fp.subgroup.order() == 16);
  CHECK(fp.central_map->kernel().order() == 8);
  CHECK(fp.central_map->is_surjective());
}

TEST_CASE("direct product encoding") {
  auto a = cyclic_group(2), b = cyclic_group(3);
  auto g = direct_product(a, b);
  CHECK(g.order() == 6);
  CHECK(g.is_abelian());
  CHECK(d_min(g) == 1);
  Limits lim;
  lim.table_cap = 5;
  CHECK_THROWS_AS(direct_product(a, b, lim), CapExceeded);
}

TEST_CASE("JSON round trip") {
  auto g = symmetric_group(3);
  auto j = group_to_perm_json(g);
  auto h = group_from_json(j);
  CHECK(h.order() == 6);
  CHECK_FALSE(h.is_abelian());
  auto c = group_from_json(group_to_cayley_json(g));
  CHECK(c.order() == 6);
  CHECK_THROWS_AS(parse_json_text("{\n\"kind\": \n}"), ParseError);
  try {
    parse_json_text("{\n\"kind\": \n}");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
