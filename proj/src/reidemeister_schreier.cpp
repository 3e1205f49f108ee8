#include <algorithm>

#include "dpgrad/errors.hpp"
#include "dpgrad/subgroup_presentation.hpp"

namespace dpgrad {

Presentation SubgroupPresentation::presentation() const {
  return Presentation(rank(), relators);
}

namespace {

struct Tree {
  std::vector<Word> transversal;
  // tree_edge[c * cols + col]: edge from coset c along col lies in the tree.
  std::vector<std::uint8_t> tree_edge;
};

Tree spanning_tree(const CosetTable& t) {
  if (!t.complete) throw Incomplete();
  const std::size_t cols = t.columns(), n = t.cosets;
  Tree tree{std::vector<Word>(n), std::vector<std::uint8_t>(n * cols, 0)};
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t c = queue[i];
    for (std::size_t col = 0; col < cols; ++col) {
      const std::int32_t d = t.table[c * cols + col];
      if (d < 0) throw Incomplete();
      const auto du = static_cast<std::size_t>(d);
      if (seen[du]) continue;
      seen[du] = 1;
      queue.push_back(du);
      tree.transversal[du] = tree.transversal[c];
      tree.transversal[du].push_back(column_letter(col));
      tree.tree_edge[c * cols + col] = 1;
      tree.tree_edge[du * cols + (col ^ 1)] = 1;
    }
  }
  return tree;
}

}  // namespace

std::vector<Word> schreier_transversal(const CosetTable& table) {
  return spanning_tree(table).transversal;
}

SubgroupPresentation reidemeister_schreier(const CosetTable& t) {
  const Tree tree = spanning_tree(t);
  const std::size_t cols = t.columns(), n = t.cosets, rank = t.presentation.rank();
  SubgroupPresentation sp;
  sp.ambient_rank = rank;
  // gen[c * rank + g]: Schreier generator for the edge c --(g+1)--> c.(g+1),
  // 0 for tree edges.
  std::vector<Letter> gen(n * rank, 0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < rank; ++g) {
      if (tree.tree_edge[c * cols + 2 * g]) continue;
      const auto d = static_cast<std::size_t>(t.table[c * cols + 2 * g]);
      Word w = tree.transversal[c];
      w.push_back(static_cast<Letter>(g + 1));
      const Word back = inverse(tree.transversal[d]);
      w.insert(w.end(), back.begin(), back.end());
      sp.generator_words.push_back(free_reduce(w));
      gen[c * rank + g] = static_cast<Letter>(sp.generator_words.size());
    }
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& r : t.presentation.relators()) {
      Word out;
      std::size_t cur = c;
      for (Letter x : r) {
        if (x > 0) {
          const auto g = static_cast<std::size_t>(x - 1);
          if (const Letter s = gen[cur * rank + g]) out.push_back(s);
          cur = static_cast<std::size_t>(t.table[cur * cols + 2 * g]);
        } else {
          const auto g = static_cast<std::size_t>(-x - 1);
          const auto prev = static_cast<std::size_t>(t.table[cur * cols + 2 * g + 1]);
          if (const Letter s = gen[prev * rank + g]) out.push_back(-s);
          cur = prev;
        }
      }
      if (cur != c) throw DomainError("relator does not close in the coset table");
      Word w = cyclic_reduce(out);
      if (!w.empty()) sp.relators.push_back(std::move(w));
    }
  sp.log.push_back("reidemeister-schreier: index " + std::to_string(n) + ", " +
                   std::to_string(sp.rank()) + " generators, " +
                   std::to_string(sp.relators.size()) + " relators");
  return sp;
}

SubgroupPresentation subgroup_presentation(const Presentation& p,
                                           const std::vector<Word>& subgroup_words,
                                           const EnumerationOptions& options) {
  return reidemeister_schreier(coset_enumerate(p, subgroup_words, options));
}

}  // namespace dpgrad
