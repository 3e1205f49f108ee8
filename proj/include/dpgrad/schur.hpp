#pragma once

// Schur multipliers of small finite groups from the normalized bar
// resolution, and the multiplier bounds built on them.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dpgrad/finite_group.hpp"
#include "dpgrad/smith.hpp"

namespace dpgrad {

struct SchurOptions {
  std::size_t homology_cap = 16;
  bool parallel = true;
  SmithOptions smith;
};

struct SchurResult {
  std::string group;
  std::size_t order = 1;
  std::vector<BigInt> multiplier_factors;
  BigInt multiplier_order = 1;
  // Order of the p-primary part for every prime p dividing |E|.
  std::map<unsigned long, BigInt> per_prime;
  // Free rank of H_2; always 0 for a finite group.
  std::size_t betti = 0;
};

// Boundary maps of the normalized bar resolution over the nonidentity
// elements. Rows of d3 are 3-chains [g|h|k], columns 2-chains [g|h]:
//   d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]
//   d2[g|h]   = [h] - [gh] + [g]
// with chains containing the identity dropped.
SparseIntMatrix bar_boundary3(const FiniteGroup& e, bool parallel);
SparseIntMatrix bar_boundary2(const FiniteGroup& e);

SchurResult schur_multiplier(const FiniteGroup& e, const SchurOptions& options = {});

std::vector<unsigned long> prime_divisors(std::size_t n);
// Orders of the p-primary parts of the multiplier, for p dividing |E|.
std::map<unsigned long, BigInt> p_part_decomposition(const SchurResult& r);

struct SylowRow {
  unsigned long p = 0;
  BigInt multiplier_part;     // |p-part of M(E)|
  std::size_t sylow_order = 1;
  BigInt sylow_multiplier;    // |M(P)|
  bool pass = false;
};

struct SylowReport {
  std::vector<SylowRow> rows;
  bool pass = true;
};

SylowReport verify_sylow_bound(const FiniteGroup& e, const SchurOptions& options = {});

// A bound check performed in the log domain: ln(lhs) rounded up against the
// log of the bound rounded down.
struct BoundCheck {
  BigInt lhs;
  std::string bound_value;  // the bound itself, rounded down
  bool pass = false;
};

// |M(E)| <= |E|^(ln |E|)
BoundCheck verify_green_bound(const FiniteGroup& e, const SchurOptions& options = {});

struct MultiplierCheck {
  std::size_t index = 1;             // [A : A0]
  std::size_t derived_order = 1;     // |[A, A]|
  std::size_t commutator_index = 1;  // [[A, A] : [A, A0]]
  std::string bound_value;           // [A:A0]^(1 + ln [A:A0]), rounded down
  bool pass = false;
};

// [[A,A] : [A,A0]] <= [A:A0]^(1 + ln [A:A0]). NotNormal unless A0 is normal.
MultiplierCheck verify_multiplier_index_bound(const FiniteGroup& a, const Subgroup& a0);

}  // namespace dpgrad
