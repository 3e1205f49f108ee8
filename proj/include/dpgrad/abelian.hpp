#pragma once

// Abelianizations of finitely presented groups and of finite groups.

#include "dpgrad/finite_group.hpp"
#include "dpgrad/presentation.hpp"
#include "dpgrad/smith.hpp"
#include "dpgrad/subgroup_presentation.hpp"

namespace dpgrad {

// Smith normal form of the exponent-sum matrix.
AbelianInvariants abelian_invariants(const Presentation& p, const SmithOptions& options = {});
AbelianInvariants abelian_invariants(const SubgroupPresentation& sp,
                                     const SmithOptions& options = {});

// H / H' for a finite subgroup, computed by counting elements whose p^k-th
// powers fall in H' (no linear algebra involved). Betti number is 0.
AbelianInvariants abelian_invariants_finite(const Subgroup& h);
AbelianInvariants abelian_invariants_finite(const FiniteGroup& g);

// Invariant factors d1 | d2 | ... of a finite abelian group given by its
// elementary divisors (prime powers, any order).
std::vector<BigInt> invariant_factors_from_prime_powers(std::vector<std::pair<unsigned long, unsigned>> pp);

}  // namespace dpgrad
