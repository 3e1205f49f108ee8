#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dpgrad/finite_group.hpp"

namespace dpgrad {

// Permutations act on the right: (x*y)[i] = y[x[i]]. Elements are numbered
// in breadth-first discovery order from the identity, which is element 0.
FiniteGroup from_permutations(std::size_t degree,
                              const std::vector<std::vector<Elem>>& generators,
                              std::string name = {}, const Limits& limits = {});

FiniteGroup cyclic_group(std::size_t n);
// Order 2n: rotation r, reflection s.
FiniteGroup dihedral_group(std::size_t n);
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup alternating_group(std::size_t n);
FiniteGroup quaternion_group();
FiniteGroup abelian_group(const std::vector<std::size_t>& cyclic_factors);
FiniteGroup elementary_abelian_group(std::size_t p, std::size_t rank);

}  // namespace dpgrad
