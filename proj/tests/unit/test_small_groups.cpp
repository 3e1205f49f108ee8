#include <doctest.h>

#include "dpgrad/small_groups.hpp"
#include "dpgrad/standard_groups.hpp"

using namespace dpgrad;

namespace {

// Number of groups of each order 1..32.
constexpr std::size_t kCounts[] = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14,
                                   1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51};

}  // namespace

TEST_CASE("stored small-group table") {
  const auto groups = load_small_groups(32);
  std::vector<std::size_t> per(33, 0);
  for (const auto& g : groups) ++per[g.order()];
  for (std::size_t n = 1; n <= 32; ++n) CHECK(per[n] == kCounts[n - 1]);
  // Pairwise non-isomorphic within each order up to 16.
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (groups[i].order() == groups[j].order() && groups[i].order() <= 16)
        CHECK_FALSE(are_isomorphic(groups[i], groups[j]));
}

TEST_CASE("regeneration agrees with the stored table") {
  const auto gen = generate_small_groups(16);
  const auto stored = load_small_groups(16);
  std::size_t k = 0;
  for (std::size_t n = 1; n <= 16; ++n)
    for (const auto& g : gen[n]) {
      REQUIRE(k < stored.size());
      CHECK(stored[k].name() == g.name());
      CHECK(are_isomorphic(stored[k], g));
      ++k;
    }
  CHECK(k == stored.size());
}

TEST_CASE("isomorphism testing") {
  CHECK(are_isomorphic(dihedral_group(3), symmetric_group(3)));
  CHECK_FALSE(are_isomorphic(dihedral_group(4), quaternion_group()));
  CHECK_FALSE(are_isomorphic(cyclic_group(4), elementary_abelian_group(2, 2)));
  CHECK(automorphisms(elementary_abelian_group(2, 2)).size() == 6);
  CHECK(automorphisms(symmetric_group(3)).size() == 6);
  CHECK(automorphisms(cyclic_group(8)).size() == 4);
}
