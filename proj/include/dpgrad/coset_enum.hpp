#pragma once

// Todd-Coxeter coset enumeration, HLT strategy with lookahead.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpgrad/presentation.hpp"

namespace dpgrad {

struct EnumerationOptions {
  std::size_t max_cosets = 1'000'000;
  bool lookahead = true;
};

// Column of a letter: generator g (1-based) is column 2(g-1), its inverse
// the next column.
inline std::size_t letter_column(Letter x) {
  return x > 0 ? 2 * static_cast<std::size_t>(x - 1) : 2 * static_cast<std::size_t>(-x - 1) + 1;
}
inline Letter column_letter(std::size_t col) {
  const auto g = static_cast<Letter>(col / 2 + 1);
  return col % 2 == 0 ? g : -g;
}

struct CosetTable {
  Presentation presentation;
  std::vector<Word> subgroup_words;
  std::size_t cosets = 0;            // index of the subgroup
  std::vector<std::int32_t> table;   // cosets x 2*rank, row 0 = subgroup
  bool complete = false;
  std::size_t total_defined = 0;     // cosets ever defined (work measure)

  std::size_t columns() const { return 2 * presentation.rank(); }
  std::size_t index() const { return cosets; }
  std::int32_t at(std::size_t coset, Letter x) const {
    return table[coset * columns() + letter_column(x)];
  }
};

// Deterministic for a given presentation, subgroup and options. Throws
// Overflow when the table cannot close within max_cosets.
CosetTable coset_enumerate(const Presentation& p, const std::vector<Word>& subgroup_words,
                           const EnumerationOptions& options = {});

// Coset table of the stabilizer of point 0 for an action of the group
// presented by p: perms[g][x] is the image of point x under generator g+1,
// acting on the right. Only the orbit of 0 is kept, numbered breadth-first
// in column order. DomainError when a relator moves some point or the
// permutations are malformed.
CosetTable coset_table_from_action(const Presentation& p,
                                   const std::vector<std::vector<std::uint32_t>>& perms);

// Coset reached from `coset` by reading w.
std::size_t trace(const CosetTable& t, std::size_t coset, std::span<const Letter> w);

// Number of cosets reachable from coset 0 using only generators
// first..first+count-1 (1-based first); for a normal factor A of the ambient
// group this is [A : A n H].
std::size_t orbit_size(const CosetTable& t, std::size_t first, std::size_t count);

}  // namespace dpgrad
