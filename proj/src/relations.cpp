#include "dpgrad/relations.hpp"

#include <algorithm>
#include <set>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/schur.hpp"
#include "dpgrad/small_groups.hpp"
#include "dpgrad/subgroup_presentation.hpp"

namespace dpgrad {

namespace {

struct Cayley {
  std::vector<Elem> elems;            // coset -> element
  std::vector<std::int32_t> coset;    // element -> coset
  std::vector<std::int32_t> table;    // coset x 2|T|
};

Cayley build_cayley(const FiniteGroup& K, std::span<const Elem> T) {
  const std::size_t cols = 2 * T.size();
  Cayley c{{K.identity()}, std::vector<std::int32_t>(K.order(), -1), {}};
  c.coset[K.identity()] = 0;
  for (std::size_t i = 0; i < c.elems.size(); ++i)
    for (std::size_t col = 0; col < cols; ++col) {
      const Elem t = col % 2 == 0 ? T[col / 2] : K.inv(T[col / 2]);
      const Elem y = K.mul(c.elems[i], t);
      if (c.coset[y] < 0) {
        c.coset[y] = static_cast<std::int32_t>(c.elems.size());
        c.elems.push_back(y);
      }
    }
  if (c.elems.size() != K.order()) throw DomainError("T does not generate K");
  c.table.resize(c.elems.size() * cols);
  for (std::size_t i = 0; i < c.elems.size(); ++i)
    for (std::size_t col = 0; col < cols; ++col) {
      const Elem t = col % 2 == 0 ? T[col / 2] : K.inv(T[col / 2]);
      c.table[i * cols + col] = c.coset[K.mul(c.elems[i], t)];
    }
  return c;
}

bool presents_order(const Presentation& p, std::size_t order, std::size_t max_cosets) {
  EnumerationOptions opt;
  opt.max_cosets = max_cosets;
  try {
    return coset_enumerate(p, {}, opt).index() == order;
  } catch (const Overflow&) {
    return false;
  }
}

bool length_then_word(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

CosetTable cayley_coset_table(const FiniteGroup& K, std::span<const Elem> T) {
  Cayley c = build_cayley(K, T);
  CosetTable t;
  t.presentation = free_presentation(T.size());
  t.cosets = c.elems.size();
  t.table = std::move(c.table);
  t.complete = true;
  t.total_defined = t.cosets;
  return t;
}

std::vector<Elem> cayley_coset_elements(const FiniteGroup& K, std::span<const Elem> T) {
  return build_cayley(K, T).elems;
}

UpperPresentation upper_presentation(const FiniteGroup& K, std::span<const Elem> T,
                                     const RelationsOptions& options) {
  const std::size_t rank = T.size();
  if (K.order() == 1 && rank == 0) return {Presentation(0, {}), 0};
  const SubgroupPresentation sp = reidemeister_schreier(cayley_coset_table(K, T));
  std::set<Word> seen;
  std::vector<Word> cands;
  for (const auto& w : sp.generator_words) {
    Word c = cyclic_reduce(w);
    if (c.empty() || !seen.insert(cyclic_canonical(c)).second) continue;
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(), length_then_word);
  auto prefix = [&](std::size_t m) {
    return Presentation(rank, std::vector<Word>(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(m)));
  };
  // Adding relators only shrinks the group, so the first prefix presenting K
  // can be located by doubling and bisection. The final prefix is checked.
  std::size_t lo = 0, hi = 1;  // prefix(lo) fails or lo == 0
  while (hi < cands.size() && !presents_order(prefix(hi), K.order(), options.max_cosets)) {
    lo = hi;
    hi *= 2;
  }
  hi = std::min(hi, cands.size());
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (presents_order(prefix(mid), K.order(), options.max_cosets))
      hi = mid;
    else
      lo = mid;
  }
  if (!presents_order(prefix(hi), K.order(), options.max_cosets))
    throw Overflow(options.max_cosets);
  Presentation p = drop_redundant_relators(prefix(hi), K.order(), options.max_cosets);
  return {std::move(p), sp.generator_words.size()};
}

std::size_t relations_upper(const FiniteGroup& K, std::span<const Elem> T,
                            const RelationsOptions& options) {
  return upper_presentation(K, T, options).presentation.relators().size();
}

std::size_t relations_lower(const FiniteGroup& K, std::size_t homology_cap) {
  SchurOptions opt;
  opt.homology_cap = homology_cap;
  return schur_multiplier(K, opt).multiplier_factors.size();
}

ExactRelations exact_relations(const FiniteGroup& K, std::span<const Elem> T,
                               const ExactOptions& options) {
  const Cayley c = build_cayley(K, T);
  const std::size_t rank = T.size(), cols = 2 * rank;
  ExactRelations out;
  std::size_t max_order = 1;
  for (Elem x = 0; x < K.order(); ++x) max_order = std::max(max_order, K.element_order(x));
  out.length_cap = options.length_cap ? options.length_cap : 2 * max_order;
  out.lower_bound = rank + relations_lower(K);
  if (K.order() == 1 && rank == 0) {
    out.certified = true;
    return out;
  }

  // Cyclically reduced words of length <= cap that trace to the identity.
  std::set<Word> seen;
  std::vector<Word> cands;
  Word w;
  auto dfs = [&](auto&& self, std::size_t coset) -> void {
    if (!w.empty() && coset == 0 && w.front() != -w.back()) {
      if (seen.insert(cyclic_canonical(w)).second) cands.push_back(w);
    }
    if (w.size() == out.length_cap) return;
    for (std::size_t col = 0; col < cols; ++col) {
      const Letter x = column_letter(col);
      if (!w.empty() && w.back() == -x) continue;
      w.push_back(x);
      self(self, static_cast<std::size_t>(c.table[coset * cols + col]));
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  std::stable_sort(cands.begin(), cands.end(), length_then_word);
  out.candidates = cands.size();

  const AbelianInvariants target = abelian_invariants_finite(K);
  for (std::size_t k = out.lower_bound; k <= cands.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (++out.subsets_tried > options.max_subsets)
        throw CapExceeded("relator subsets tried", out.subsets_tried, options.max_subsets);
      std::vector<Word> rels;
      for (std::size_t i : idx) rels.push_back(cands[i]);
      const Presentation p(rank, rels);
      if (abelian_invariants(p) == target && presents_order(p, K.order(), options.max_cosets)) {
        out.value = k;
        out.relators = std::move(rels);
        out.certified = k == out.lower_bound;
        return out;
      }
      // Next k-subset in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == cands.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw DomainError("no presentation within the relator length cap");
}

std::vector<std::vector<Elem>> generating_multisets(const FiniteGroup& K, std::size_t size,
                                                    bool up_to_automorphism) {
  const auto autos = up_to_automorphism ? automorphisms(K) : std::vector<std::vector<Elem>>{};
  const std::size_t n = K.order();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> t(size, 0);
  auto visit = [&](auto&& self, std::size_t pos, Elem from) -> void {
    if (pos == size) {
      if (closure(K, t).order() != n) return;
      for (const auto& a : autos) {
        std::vector<Elem> img;
        for (Elem x : t) img.push_back(a[x]);
        std::sort(img.begin(), img.end());
        if (img < t) return;
      }
      out.push_back(t);
      return;
    }
    for (Elem x = from; x < n; ++x) {
      t[pos] = x;
      self(self, pos + 1, x);
    }
  };
  visit(visit, 0, 0);
  return out;
}

}  // namespace dpgrad
