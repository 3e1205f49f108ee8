#pragma once

// Small-group library: isomorphism testing, automorphism groups and the
// stored table of all groups of order <= 32.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpgrad/finite_group.hpp"

namespace dpgrad {

// Isomorphism-invariant fingerprint: sorted per-element (order, class size,
// number of square roots), center and derived orders.
std::vector<std::size_t> group_signature(const FiniteGroup& g);

// Image table of an isomorphism a -> b, if one exists.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

// Every automorphism as an image table, identity first.
std::vector<std::vector<Elem>> automorphisms(const FiniteGroup& g);

// All groups of order 1..max_order up to isomorphism, built as cyclic
// extensions N.C_p of smaller groups and deduplicated by isomorphism
// testing. Within one order the list is ordered abelian first, then by
// signature.
std::vector<std::vector<FiniteGroup>> generate_small_groups(std::size_t max_order);

// Groups of order <= max_order from the stored table, in file order.
std::vector<FiniteGroup> load_small_groups(std::size_t max_order,
                                           const std::filesystem::path& path = {});
std::filesystem::path default_small_groups_path();

}  // namespace dpgrad
