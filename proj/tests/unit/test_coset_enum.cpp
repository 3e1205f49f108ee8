#include <doctest.h>

#include "dpgrad/coset_enum.hpp"
#include "dpgrad/errors.hpp"

using namespace dpgrad;

namespace {

Presentation pres(std::size_t rank, std::initializer_list<const char*> rels) {
  std::vector<Word> w;
  for (auto r : rels) w.push_back(parse_word(r));
  return Presentation(rank, w);
}

// Every entry defined, inverse columns consistent, relators close from every
// coset and subgroup generators fix coset 0.
void check_table(const CosetTable& t) {
  for (std::size_t c = 0; c < t.cosets; ++c)
    for (std::size_t g = 1; g <= t.presentation.rank(); ++g) {
      const auto x = static_cast<Letter>(g);
      REQUIRE(t.at(c, x) >= 0);
      CHECK(static_cast<std::size_t>(t.at(static_cast<std::size_t>(t.at(c, x)), -x)) == c);
    }
  for (std::size_t c = 0; c < t.cosets; ++c)
    for (const auto& r : t.presentation.relators()) CHECK(trace(t, c, r) == c);
  for (const auto& w : t.subgroup_words) CHECK(trace(t, 0, w) == 0);
}

}  // namespace

TEST_CASE("orders of small finite groups") {
  struct Case {
    Presentation p;
    std::size_t order;
  };
  const Case cases[] = {
      {pres(1, {"aaaaa"}), 5},
      {pres(2, {"aa", "bbb", "abab"}), 6},
      {pres(2, {"aa", "bbb", "ababab"}), 12},
      {pres(2, {"aa", "bbb", "abababab"}), 24},
      {pres(2, {"aa", "bbb", "ababababab"}), 60},
      {pres(2, {"aaaa", "aaBB", "abaB"}), 8},
      {pres(3, {"aa", "bb", "cc", "abAB", "acAC", "bcBC"}), 8},
      {pres(2, {"aaB", "bbA"}), 3},
      {pres(2, {"aaaaaaa", "bbb", "BabAA"}), 21},
  };
  for (const auto& c : cases) {
    auto t = coset_enumerate(c.p, {});
    CHECK(t.index() == c.order);
    check_table(t);
  }
}

TEST_CASE("subgroup index") {
  auto a5 = pres(2, {"aa", "bbb", "ababababab"});
  auto t = coset_enumerate(a5, {parse_word("a"), parse_word("babab")});
  // <a, b a b a b> is dihedral of order 10? index 6 in A5.
  check_table(t);
  CHECK(60 % t.index() == 0);
  auto s3 = pres(2, {"aa", "bbb", "abab"});
  CHECK(coset_enumerate(s3, {parse_word("a")}).index() == 3);
  CHECK(coset_enumerate(s3, {parse_word("b")}).index() == 2);
  auto f2 = Presentation(2, {});
  auto k = coset_enumerate(f2, {parse_word("aa"), parse_word("b"), parse_word("abA")});
  CHECK(k.index() == 2);
  check_table(k);
}

TEST_CASE("overflow on an infinite index") {
  EnumerationOptions opt;
  opt.max_cosets = 500;
  CHECK_THROWS_AS(coset_enumerate(Presentation(2, {}), {}, opt), Overflow);
  CHECK_THROWS_AS(coset_enumerate(pres(2, {"abAB"}), {parse_word("a")}, opt), Overflow);
}

TEST_CASE("lookahead recovers from a tight cap") {
  auto s5 = pres(2, {"aa", "bbbbb", "abababab", "aBabaBabaBab"});
  auto loose = coset_enumerate(s5, {});
  CHECK(loose.index() == 120);
  EnumerationOptions tight;
  tight.max_cosets = 160;
  auto t = coset_enumerate(s5, {}, tight);
  CHECK(t.index() == 120);
  check_table(t);
}

TEST_CASE("orbit of the first factor") {
  // Z/2 x Z/3 with subgroup generated by the diagonal element.
  auto p = pres(2, {"aa", "bbb", "abAB"});
  auto t = coset_enumerate(p, {parse_word("ab")});
  CHECK(t.index() == 1);
  auto u = coset_enumerate(p, {parse_word("a")});
  CHECK(u.index() == 3);
  CHECK(orbit_size(u, 1, 1) == 1);
  CHECK(orbit_size(u, 2, 1) == 3);
}
