#pragma once

// Reidemeister-Schreier rewriting and Tietze simplification.

#include <cstddef>
#include <string>
#include <vector>

#include "dpgrad/coset_enum.hpp"
#include "dpgrad/presentation.hpp"

namespace dpgrad {

struct SubgroupPresentation {
  std::size_t ambient_rank = 0;
  // Generator k (1-based) of the subgroup is generator_words[k-1], a word in
  // the ambient generators.
  std::vector<Word> generator_words;
  std::vector<Word> relators;
  std::vector<std::string> log;

  std::size_t rank() const { return generator_words.size(); }
  Presentation presentation() const;
};

// Schreier transversal from a breadth-first spanning tree of the coset graph
// (columns in the order a, A, b, B, ...). One generator per non-tree edge,
// one relator per (coset, ambient relator) pair that does not rewrite to the
// empty word. Throws Incomplete for an incomplete table.
SubgroupPresentation reidemeister_schreier(const CosetTable& table);

SubgroupPresentation subgroup_presentation(const Presentation& p,
                                           const std::vector<Word>& subgroup_words,
                                           const EnumerationOptions& options = {});

// Transversal word of every coset (shortlex among breadth-first paths).
std::vector<Word> schreier_transversal(const CosetTable& table);

struct TietzeOptions {
  // Elimination stops once the total relator length would exceed
  // max(growth_factor * initial total length, min_length_budget).
  double growth_factor = 4.0;
  std::size_t min_length_budget = 20000;
  // When nonzero, relators are dropped whenever coset enumeration of the
  // trivial subgroup within this many cosets shows the group order does not
  // change.
  std::size_t redundancy_cap = 0;
};

// Runs `effort` passes of: duplicate and conjugate removal, elimination of
// generators occurring once in some relator (shortest relator first), and
// the optional redundancy check. Never increases the number of generators or
// relators; stops early once a pass changes nothing.
SubgroupPresentation tietze_simplify(SubgroupPresentation sp, std::size_t effort,
                                     const TietzeOptions& options = {});

// Drops relators (longest first) whose removal keeps the enumerated order
// of the group equal to `order`. Requires the input to have that order.
Presentation drop_redundant_relators(const Presentation& p, std::size_t order,
                                     std::size_t max_cosets);

}  // namespace dpgrad
