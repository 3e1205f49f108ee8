#pragma once

// Subgroup sequences U_n of finite index in F_r x F_s and the rank and
// torsion ratios (d(U_n) - 1) / [G : U_n] and ln |t(U_n^ab)| / [G : U_n].
//
// Sequence files are line based:
//
//   format: dpgrad-sequence v1
//   name: <free text>
//   kind: fiber-product | coset-table | product-of-subgroups
//   ranks: <r> <s>
//   max-cosets: <n>          (optional, default 1000000)
//   max-index: <n>           (optional, default 5000)
//   tietze-effort: <n>       (optional, default 50)
//   level: <label>
//   quotient: <images> | <images> ...   fiber-product, one permutation per
//                                       generator of F_r, 0-based images
//   word: <word>                         coset-table, words in a, b, ... of G
//   a-word: <word>                       product-of-subgroups, words in F_r
//   b-word: <word>                       product-of-subgroups, words in F_s
//
// '#' starts a comment line. Words use the letters of the presentation
// format (a..z generators, A..Z inverses); in G the first r letters belong
// to the first factor.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "dpgrad/coset_enum.hpp"
#include "dpgrad/presentation.hpp"
#include "dpgrad/real.hpp"
#include "dpgrad/smith.hpp"
#include "dpgrad/witt.hpp"

namespace dpgrad {

enum class SequenceKind { FiberProduct, CosetTable, ProductOfSubgroups };

std::string to_string(SequenceKind kind);

struct LevelSpec {
  std::string label;
  std::size_t line = 0;
  std::vector<std::vector<std::uint32_t>> quotient;
  std::vector<Word> words;
  std::vector<Word> a_words, b_words;
};

struct SequenceSpec {
  std::string name;
  SequenceKind kind = SequenceKind::FiberProduct;
  std::size_t rank_a = 2, rank_b = 2;
  std::size_t max_cosets = 1'000'000;
  std::size_t max_index = 5000;
  std::size_t tietze_effort = 50;
  std::vector<LevelSpec> levels;
};

// ParseError carrying the offending line; a file without levels is an
// error too.
SequenceSpec parse_sequence_spec(const std::string& text);
SequenceSpec read_sequence_spec(const std::string& path);

// <a_1..a_r, b_1..b_s | [a_i, b_j]>
Presentation free_product_presentation(std::size_t rank_a, std::size_t rank_b);

struct GradientRecord {
  std::size_t n = 0;
  std::string label;
  std::size_t index = 0;
  std::size_t indexA = 0;      // [A : A n U]
  std::size_t indexB = 0;      // [B : B n U]
  std::size_t index_G_AU = 0;  // [G : AU]
  std::size_t index_G_BU = 0;
  std::size_t schreier_generators = 0;
  std::size_t schreier_relators = 0;
  std::size_t tietze_generators = 0;
  std::size_t tietze_relators = 0;
  BigInt bound1, bound2, bound3;
  std::string smallest_bound;  // "bound1", "bound2" or "bound3"
  BigInt d_upper;
  std::string d_upper_source;  // "tietze" or one of the bounds
  std::optional<std::size_t> d_lower;
  std::size_t betti = 0;
  std::vector<BigInt> torsion_factors;
  BigInt torsion_order = 1;
  Real log_torsion;            // ln |t(U^ab)|, rounded to nearest
  Rational rank_ratio;         // (d_upper - 1) / index
  Real torsion_ratio;          // log_torsion / index, rounded to nearest
  // [A : A n U] and [B : B n U] both grew since the previous level.
  bool hypothesis_ok = true;
  // |t(U^ab)| <= |t(pi_A(U)^ab)| |t(pi_B(U)^ab)| [G:U]^(2(1 + ln [G:U])),
  // projections read off the coset table.
  BigInt proj_torsion_a = 1, proj_torsion_b = 1;
  std::string torsion_bound;
  bool torsion_bound_ok = false;
  // Product-of-subgroups over free factors: betti equals
  // indexA (r - 1) + 1 + indexB (s - 1) + 1.
  std::optional<bool> nielsen_schreier_ok;
};

// Coset table of level n (1-based, as in GradientRecord::n). DomainError
// for a level outside the sequence.
CosetTable level_coset_table(const SequenceSpec& spec, std::size_t n);

struct LevelOutcome {
  std::optional<GradientRecord> record;
  std::exception_ptr error;  // set instead of record when the level failed
};

// Every level, failures kept in place. The index-growth flag compares
// neighbouring levels that both succeeded.
std::vector<LevelOutcome> run_sequence_levels(const SequenceSpec& spec, bool parallel = true);

// One record per level, computed independently (in parallel when allowed)
// and returned in level order. Overflow and CapExceeded propagate.
std::vector<GradientRecord> run_sequence(const SequenceSpec& spec, bool parallel = true);

// min over records of (d_upper - 1) / index: an upper bound for the infimum
// over the computed range. EmptyInput for no records.
Rational rank_gradient_estimate(const std::vector<GradientRecord>& records);
// min over records of ln |t(U^ab)| / index. EmptyInput for no records.
Real torsion_gradient_estimate(const std::vector<GradientRecord>& records);

// Consecutive ratios strictly decrease; the torsion comparison uses
// directed rounding so a pass is certain.
bool rank_ratio_decreasing(const std::vector<GradientRecord>& records);
bool torsion_ratio_decreasing(const std::vector<GradientRecord>& records);

// Schreier generators of the stabilizer of point 0 as words in the
// generators of the free group, for permutations perms[g] of one degree.
std::vector<Word> stabilizer_words(const std::vector<std::vector<std::uint32_t>>& perms);

}  // namespace dpgrad
