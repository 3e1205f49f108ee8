#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "dpgrad/errors.hpp"
#include "dpgrad/subgroup_presentation.hpp"

namespace dpgrad {

namespace {

std::size_t total_length(const std::vector<Word>& rels) {
  std::size_t t = 0;
  for (const auto& r : rels) t += r.size();
  return t;
}

// Cyclically reduces, drops trivial relators and keeps one relator per
// class of cyclic conjugates and inverses. Returns the number removed.
std::size_t normalize(std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  const std::size_t before = rels.size();
  for (auto& r : rels) {
    Word w = cyclic_reduce(r);
    if (w.empty()) continue;
    if (!seen.insert(cyclic_canonical(w)).second) continue;
    out.push_back(std::move(w));
  }
  rels = std::move(out);
  return before - rels.size();
}

struct Candidate {
  std::size_t relator = 0;
  Letter generator = 0;  // 1-based
};

// Relator of minimal length containing some generator exactly once; among
// those generators the one with the fewest occurrences elsewhere.
bool find_candidate(const std::vector<Word>& rels, const std::vector<std::size_t>& occ,
                    std::size_t budget, std::size_t total, Candidate& out) {
  std::vector<std::size_t> order(rels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rels[a].size() < rels[b].size();
  });
  std::map<Letter, std::size_t> count;
  for (std::size_t i : order) {
    const Word& r = rels[i];
    count.clear();
    for (Letter x : r) ++count[std::abs(x)];
    Letter best = 0;
    std::size_t best_occ = 0;
    for (const auto& [g, c] : count) {
      if (c != 1) continue;
      const std::size_t others = occ[static_cast<std::size_t>(g)] - 1;
      std::size_t grown = total - r.size();
      if (r.size() >= 2)
        grown += others * (r.size() - 2);
      else
        grown -= std::min(grown, others);
      if (grown > budget && grown > total) continue;
      if (best == 0 || others < best_occ) {
        best = g;
        best_occ = others;
      }
    }
    if (best != 0) {
      out = {i, best};
      return true;
    }
  }
  return false;
}

void eliminate(SubgroupPresentation& sp, const Candidate& c) {
  const Word r = sp.relators[c.relator];
  const Letter g = c.generator;
  // Rotate r to g^e w, so g^e = w^-1.
  std::size_t pos = 0;
  while (std::abs(r[pos]) != g) ++pos;
  Word rot(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
  rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
  auto renumber = [g](Letter x) { return std::abs(x) > g ? (x > 0 ? x - 1 : x + 1) : x; };
  Word value = r[pos] > 0 ? inverse(rot) : rot;  // word equal to g
  for (auto& x : value) x = renumber(x);
  const Word value_inv = inverse(value);

  std::vector<Word> rels;
  rels.reserve(sp.relators.size());
  for (std::size_t i = 0; i < sp.relators.size(); ++i) {
    if (i == c.relator) continue;
    Word w;
    for (Letter x : sp.relators[i]) {
      if (x == g)
        w.insert(w.end(), value.begin(), value.end());
      else if (x == -g)
        w.insert(w.end(), value_inv.begin(), value_inv.end());
      else
        w.push_back(renumber(x));
    }
    w = cyclic_reduce(w);
    if (!w.empty()) rels.push_back(std::move(w));
  }
  sp.relators = std::move(rels);
  sp.generator_words.erase(sp.generator_words.begin() + (g - 1));
  sp.log.push_back("eliminate generator " + std::to_string(g) + " using a relator of length " +
                   std::to_string(r.size()));
}

std::vector<std::size_t> occurrences(const SubgroupPresentation& sp) {
  std::vector<std::size_t> occ(sp.rank() + 1, 0);
  for (const auto& r : sp.relators)
    for (Letter x : r) ++occ[static_cast<std::size_t>(std::abs(x))];
  return occ;
}

}  // namespace

Presentation drop_redundant_relators(const Presentation& p, std::size_t order,
                                     std::size_t max_cosets) {
  std::vector<Word> rels = p.relators();
  std::vector<std::size_t> idx(rels.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return rels[a].size() > rels[b].size();
  });
  std::vector<std::uint8_t> keep(rels.size(), 1);
  EnumerationOptions opt;
  opt.max_cosets = max_cosets;
  for (std::size_t i : idx) {
    keep[i] = 0;
    std::vector<Word> trial;
    for (std::size_t k = 0; k < rels.size(); ++k)
      if (keep[k]) trial.push_back(rels[k]);
    try {
      const auto t = coset_enumerate(Presentation(p.rank(), trial), {}, opt);
      if (t.index() != order) keep[i] = 1;
    } catch (const Overflow&) {
      keep[i] = 1;
    }
  }
  std::vector<Word> out;
  for (std::size_t k = 0; k < rels.size(); ++k)
    if (keep[k]) out.push_back(rels[k]);
  return Presentation(p.rank(), std::move(out), p.name());
}

SubgroupPresentation tietze_simplify(SubgroupPresentation sp, std::size_t effort,
                                     const TietzeOptions& options) {
  const auto budget = std::max(
      static_cast<std::size_t>(options.growth_factor * static_cast<double>(total_length(sp.relators))),
      options.min_length_budget);
  for (std::size_t pass = 0; pass < effort; ++pass) {
    bool changed = false;
    if (const std::size_t dropped = normalize(sp.relators)) {
      sp.log.push_back("drop " + std::to_string(dropped) + " duplicate or trivial relators");
      changed = true;
    }
    Candidate c;
    auto occ = occurrences(sp);
    while (find_candidate(sp.relators, occ, budget, total_length(sp.relators), c)) {
      eliminate(sp, c);
      occ = occurrences(sp);
      changed = true;
    }
    if (normalize(sp.relators)) changed = true;
    if (options.redundancy_cap > 0 && !sp.relators.empty()) {
      const Presentation p = sp.presentation();
      EnumerationOptions opt;
      opt.max_cosets = options.redundancy_cap;
      try {
        const auto t = coset_enumerate(p, {}, opt);
        const Presentation q = drop_redundant_relators(p, t.index(), options.redundancy_cap);
        if (q.relators().size() < sp.relators.size()) {
          sp.log.push_back("drop " + std::to_string(sp.relators.size() - q.relators().size()) +
                           " redundant relators");
          sp.relators = q.relators();
          changed = true;
        }
      } catch (const Overflow&) {
        // Infinite or large group: nothing provable within the cap.
      }
    }
    if (!changed) break;
  }
  return sp;
}

}  // namespace dpgrad
