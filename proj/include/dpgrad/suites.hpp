#pragma once

// Verification suites shared by the command line tool and the acceptance
// tests. Every suite yields one JSON row per checked item, each carrying a
// boolean "ok", plus a summary object.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpgrad/finite_group.hpp"
#include "dpgrad/gradient.hpp"
#include "dpgrad/group_io.hpp"
#include "dpgrad/product_bounds.hpp"

namespace dpgrad {

struct SuiteOptions {
  std::size_t max_order = 0;  // 0: the suite default
  bool parallel = true;
  std::size_t homology_cap = 16;
  Limits limits;
  // recursion-step
  unsigned long recursion_n_max = 1'000'000;
  unsigned long recursion_dense_max = 5000;
  unsigned long recursion_t_max = 8;
  // torsion-bound: finitely presented instances in F2 x F2
  std::size_t fp_instances = 60;
  std::size_t fp_max_index = 200;
  std::uint64_t seed = 1;
};

struct SuiteReport {
  std::string suite;
  std::vector<Json> rows;
  std::size_t failures = 0;
  Json summary;
  bool pass() const { return failures == 0; }
};

// product-bounds, normality, schur, multiplier-index, torsion-bound,
// relation-count, recursion-step
const std::vector<std::string>& suite_names();
std::size_t default_max_order(const std::string& suite);

// UnknownSuite for a name outside suite_names().
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

// Row of the product-bounds suite: indices, d(H), d(G), the three bounds and
// the per-check verdicts in "pass".
Json instance_row(const InstanceReport& in);

// JSON number when the value fits in a signed 64-bit integer, else a string.
Json big_json(const BigInt& x);

// Subgroups of F2 x F2 given as stabilizers of commuting actions: a finite
// group Q with F2 acting by left and F2 by right multiplication through
// random homomorphisms, each side optionally also permuting a small extra
// set. Points are numbered so that the stabilized point is 0.
struct FpInstance {
  std::string description;
  std::vector<std::vector<std::uint32_t>> perms;  // a, b, c, d
};

std::vector<FpInstance> random_fp_instances(std::size_t count, std::size_t max_index,
                                            std::uint64_t seed);
// One coset-table level per instance, built from stabilizer words.
SequenceSpec fp_instance_sequence(const std::vector<FpInstance>& instances);

}  // namespace dpgrad
