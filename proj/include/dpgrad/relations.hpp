#pragma once

// Bounds on r(K, T), the number of normal generators needed for the kernel
// of the free group on T mapping onto the finite group K.

#include <cstddef>
#include <span>
#include <vector>

#include "dpgrad/coset_enum.hpp"
#include "dpgrad/finite_group.hpp"
#include "dpgrad/presentation.hpp"

namespace dpgrad {

// Coset table of the kernel of F_T -> K: cosets are the elements of K in
// breadth-first order from the identity, generator i acts by right
// multiplication with T[i]. DomainError unless T generates K.
CosetTable cayley_coset_table(const FiniteGroup& K, std::span<const Elem> T);
// Element of K reached by each coset of cayley_coset_table.
std::vector<Elem> cayley_coset_elements(const FiniteGroup& K, std::span<const Elem> T);

struct RelationsOptions {
  std::size_t max_cosets = 100'000;
};

struct UpperPresentation {
  Presentation presentation;  // a presentation of K on the letters of T
  std::size_t schreier_generators = 0;
};

// The Schreier generators of the kernel are relators of a presentation of K.
// Keeps the shortest prefix (ordered by length, then word) that already
// presents K, then drops relators whose removal leaves the order unchanged.
UpperPresentation upper_presentation(const FiniteGroup& K, std::span<const Elem> T,
                                     const RelationsOptions& options = {});
std::size_t relations_upper(const FiniteGroup& K, std::span<const Elem> T,
                            const RelationsOptions& options = {});

// d(M(K)); a lower bound for r(K, T) for every T. CapExceeded above the
// homology cap.
std::size_t relations_lower(const FiniteGroup& K, std::size_t homology_cap = 16);

struct ExactOptions {
  std::size_t length_cap = 0;         // 0: twice the largest element order
  std::size_t max_cosets = 4096;      // per candidate presentation
  std::size_t max_subsets = 20'000'000;
};

struct ExactRelations {
  std::size_t value = 0;          // fewest relators of length <= length_cap
  std::size_t lower_bound = 0;    // |T| + d(M(K))
  std::size_t length_cap = 0;
  std::size_t candidates = 0;     // kernel words up to cyclic conjugation and inversion
  std::size_t subsets_tried = 0;
  bool certified = false;         // value == lower_bound, so exact with no length cap
  std::vector<Word> relators;
};

// Brute force over sets of cyclically reduced kernel words of bounded
// length, smallest sets first. Each candidate set must reproduce the
// abelianization of K and enumerate to |K| cosets. CapExceeded when
// max_subsets is reached; DomainError when no set within the length cap
// works.
ExactRelations exact_relations(const FiniteGroup& K, std::span<const Elem> T,
                               const ExactOptions& options = {});

// Generating multisets of the given size, each sorted. With
// up_to_automorphism only the smallest member of every Aut(K)-orbit is kept.
std::vector<std::vector<Elem>> generating_multisets(const FiniteGroup& K, std::size_t size,
                                                    bool up_to_automorphism = true);

}  // namespace dpgrad
