#pragma once

// Words in free groups and finite presentations.
//
// A letter is a nonzero int: +k is generator k (1-based), -k its inverse.
// Text syntax: lowercase a..z are generators 1..26, uppercase their
// inverses, whitespace ignored ("abAB" is a commutator). For more than 26
// generators the tokens x<k> / X<k> are accepted and emitted.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dpgrad {

using Letter = int;
using Word = std::vector<Letter>;

Word free_reduce(std::span<const Letter> letters);
Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
// Freely and cyclically reduced.
Word cyclic_reduce(std::span<const Letter> w);
// Canonical representative of the cyclic conjugates of w and of w^-1.
Word cyclic_canonical(std::span<const Letter> w);
std::vector<int> exponent_sums(std::span<const Letter> w, std::size_t rank);
// Drops letters of generators outside [first, first+count) and renumbers.
Word restrict_letters(std::span<const Letter> w, std::size_t first, std::size_t count);
Word shift_letters(std::span<const Letter> w, int offset);
Word commutator_word(Letter x, Letter y);

Word parse_word(const std::string& text);
std::string format_word(std::span<const Letter> w, std::size_t rank);

class Presentation {
 public:
  Presentation() = default;
  // Relators are freely reduced; empty ones are dropped.
  Presentation(std::size_t rank, std::vector<Word> relators, std::string name = {});

  std::size_t rank() const { return rank_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t rank_ = 0;
  std::vector<Word> relators_;
  std::string name_;
};

Presentation free_presentation(std::size_t rank);
// A x B: generators of A first, then B, plus all [a_i, b_j].
Presentation product_presentation(const Presentation& a, const Presentation& b);

// "gens: <d>" then "rel: <word>" lines; '#' starts a comment line.
Presentation parse_presentation(std::istream& in);
Presentation read_presentation_file(const std::string& path);
// "gen: <word>" lines.
std::vector<Word> parse_subgroup(std::istream& in);
std::vector<Word> read_subgroup_file(const std::string& path);
std::string format_presentation(const Presentation& p);

}  // namespace dpgrad
