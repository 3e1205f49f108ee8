#include <doctest.h>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/product_bounds.hpp"
#include "dpgrad/relations.hpp"
#include "dpgrad/small_groups.hpp"
#include "dpgrad/standard_groups.hpp"

using namespace dpgrad;

namespace {

// Evaluates a word of K's generators T in K.
Elem evaluate(const FiniteGroup& K, std::span<const Elem> T, const Word& w) {
  Elem x = K.identity();
  for (Letter l : w) {
    const Elem t = T[static_cast<std::size_t>(std::abs(l)) - 1];
    x = K.mul(x, l > 0 ? t : K.inv(t));
  }
  return x;
}

}  // namespace

TEST_CASE("Cayley coset table") {
  const FiniteGroup K = symmetric_group(3);
  const auto& T = K.generators();
  const CosetTable t = cayley_coset_table(K, T);
  CHECK(t.index() == 6);
  const auto el = cayley_coset_elements(K, T);
  for (std::size_t c = 0; c < 6; ++c)
    for (std::size_t g = 0; g < T.size(); ++g)
      CHECK(el[static_cast<std::size_t>(t.at(c, static_cast<Letter>(g + 1)))] == K.mul(el[c], T[g]));
  const std::vector<Elem> bad{K.identity()};
  CHECK_THROWS_AS(cayley_coset_table(K, bad), DomainError);
}

TEST_CASE("relations upper and lower bounds") {
  const FiniteGroup c2 = cyclic_group(2);
  CHECK(relations_upper(c2, c2.generators()) == 1);
  CHECK(relations_upper(FiniteGroup(), std::vector<Elem>{}) == 0);
  const FiniteGroup v4 = elementary_abelian_group(2, 2);
  const std::size_t up = relations_upper(v4, v4.generators());
  CHECK(up <= 4);
  CHECK(up >= 3);
  CHECK(relations_lower(v4) == 1);
  CHECK(relations_lower(cyclic_group(6)) == 0);
  CHECK(relations_lower(FiniteGroup()) == 0);

  // The upper presentation really presents K, and its relators hold in K.
  for (const auto& K : load_small_groups(12)) {
    const auto T = min_generating_set(whole_group(K));
    const UpperPresentation u = upper_presentation(K, T);
    CHECK(coset_enumerate(u.presentation, {}).index() == K.order());
    for (const auto& r : u.presentation.relators()) CHECK(evaluate(K, T, r) == K.identity());
    CHECK(abelian_invariants(u.presentation) == abelian_invariants_finite(K));
    CHECK(relations_lower(K) <= u.presentation.relators().size());
    CHECK(BigInt(static_cast<unsigned long>(u.presentation.relators().size())) <=
          presentation_bound(K.order(), T.size()));
  }
}

TEST_CASE("exact relation counts") {
  const FiniteGroup c2 = cyclic_group(2);
  const auto r2 = exact_relations(c2, c2.generators());
  CHECK(r2.value == 1);
  CHECK(r2.certified);
  const FiniteGroup v4 = elementary_abelian_group(2, 2);
  const auto rv = exact_relations(v4, v4.generators());
  CHECK(rv.value == 3);
  CHECK(rv.length_cap == 4);
  const FiniteGroup q8 = quaternion_group();
  const auto T = min_generating_set(whole_group(q8));
  const auto rq = exact_relations(q8, T);
  CHECK(rq.value == 2);
  for (const auto& r : rq.relators) CHECK(evaluate(q8, T, r) == q8.identity());
  CHECK(exact_relations(FiniteGroup(), std::vector<Elem>{}).value == 0);
}

TEST_CASE("generating multisets") {
  const FiniteGroup s3 = symmetric_group(3);
  CHECK(generating_multisets(s3, 2).size() == 2);
  // Unordered generating pairs of S3: 3 transposition pairs + 3 * 2 mixed.
  CHECK(generating_multisets(s3, 2, false).size() == 9);
  CHECK(generating_multisets(elementary_abelian_group(2, 3), 3).size() == 1);
  CHECK(generating_multisets(elementary_abelian_group(2, 3), 3, false).size() == 28);
}

TEST_CASE("normal generation from a quotient presentation") {
  const FiniteGroup G = symmetric_group(4);
  const auto T = min_generating_set(whole_group(G));
  for (const auto& N : normal_subgroups(G)) {
    const auto [Q, q] = quotient(N);
    std::vector<Elem> Tbar;
    for (Elem t : T) Tbar.push_back(q(t));
    const UpperPresentation u = upper_presentation(Q, Tbar);
    // The relators of G/N evaluated in G normally generate N.
    std::vector<Elem> seeds;
    for (const auto& r : u.presentation.relators()) seeds.push_back(evaluate(G, T, r));
    CHECK(normal_closure(G, whole_group(G), seeds) == N);
    CHECK(d_normal_min(G, N) <= u.presentation.relators().size());
  }
}
