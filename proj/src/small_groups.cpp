#include "dpgrad/small_groups.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "dpgrad/abelian.hpp"
#include "dpgrad/errors.hpp"
#include "dpgrad/group_io.hpp"
#include "dpgrad/standard_groups.hpp"

namespace dpgrad {

namespace {

struct ElementSignatures {
  std::vector<std::size_t> key;  // one combined key per element
};

std::vector<std::size_t> element_keys(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> class_size(n, 0), sqrt_count(n, 0);
  for (const auto& cls : conjugacy_classes(g))
    for (Elem x : cls) class_size[x] = cls.size();
  for (Elem y = 0; y < n; ++y) ++sqrt_count[g.mul(y, y)];
  std::vector<std::size_t> key(n);
  for (Elem x = 0; x < n; ++x)
    key[x] = (g.element_order(x) * (n + 1) + class_size[x]) * (n + 1) + sqrt_count[x];
  return key;
}

// Extends generator images along the Cayley graph of <gens[0..k)>; false on
// an inconsistency. `map` uses `unset` for unassigned elements.
bool extend(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elem>& gens,
            const std::vector<Elem>& imgs, std::size_t k, std::vector<Elem>& map,
            std::vector<Elem>& reached) {
  const Elem unset = static_cast<Elem>(-1);
  std::fill(map.begin(), map.end(), unset);
  std::vector<std::uint8_t> used(b.order(), 0);
  reached.assign(1, a.identity());
  map[a.identity()] = b.identity();
  used[b.identity()] = 1;
  for (std::size_t i = 0; i < reached.size(); ++i) {
    const Elem x = reached[i];
    for (std::size_t j = 0; j < k; ++j) {
      const Elem y = a.mul(x, gens[j]);
      const Elem fy = b.mul(map[x], imgs[j]);
      if (map[y] == unset) {
        if (used[fy]) return false;
        map[y] = fy;
        used[fy] = 1;
        reached.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

template <class Visit>
void search_maps(const FiniteGroup& a, const FiniteGroup& b, Visit visit) {
  const std::size_t n = a.order();
  if (b.order() != n) return;
  Limits lim;
  lim.search_cap = std::max<std::size_t>(n, 512);
  const std::vector<Elem> gens = min_generating_set(whole_group(a), lim);
  const auto ka = element_keys(a), kb = element_keys(b);
  std::vector<Elem> imgs(gens.size()), map(n), reached;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == gens.size()) {
      if (!extend(a, b, gens, imgs, i, map, reached) || reached.size() != n) return;
      // Homomorphism check on all products of an element by a generator
      // already holds by construction; verify full multiplicativity cheaply
      // through generators of a.
      for (Elem x = 0; x < n; ++x)
        for (Elem s : gens)
          if (map[a.mul(x, s)] != b.mul(map[x], map[s])) return;
      if (!visit(map)) stop = true;
      return;
    }
    for (Elem y = 0; y < n && !stop; ++y) {
      if (kb[y] != ka[gens[i]]) continue;
      imgs[i] = y;
      if (!extend(a, b, gens, imgs, i + 1, map, reached)) continue;
      self(self, i + 1);
    }
  };
  if (gens.empty()) {
    std::vector<Elem> m(n, b.identity());
    visit(m);
    return;
  }
  rec(rec, 0);
}

}  // namespace

std::vector<std::size_t> group_signature(const FiniteGroup& g) {
  auto keys = element_keys(g);
  std::sort(keys.begin(), keys.end());
  keys.push_back(center(g).order());
  keys.push_back(derived_subgroup(whole_group(g)).order());
  keys.push_back(g.order());
  return keys;
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  if (group_signature(a) != group_signature(b)) return std::nullopt;
  std::optional<std::vector<Elem>> out;
  search_maps(a, b, [&](const std::vector<Elem>& m) {
    out = m;
    return false;
  });
  return out;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.is_abelian() && b.is_abelian())
    return group_signature(a) == group_signature(b);
  return find_isomorphism(a, b).has_value();
}

std::vector<std::vector<Elem>> automorphisms(const FiniteGroup& g) {
  std::vector<std::vector<Elem>> out;
  search_maps(g, g, [&](const std::vector<Elem>& m) {
    out.push_back(m);
    return true;
  });
  std::vector<Elem> id(g.order());
  std::iota(id.begin(), id.end(), 0);
  auto it = std::find(out.begin(), out.end(), id);
  if (it != out.end()) std::iter_swap(out.begin(), it);
  return out;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<Elem>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Elem x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::vector<Elem> compose(const std::vector<Elem>& f, const std::vector<Elem>& g) {
  // x -> g(f(x))
  std::vector<Elem> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = g[f[x]];
  return out;
}

std::vector<Elem> invert(const std::vector<Elem>& f) {
  std::vector<Elem> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[f[x]] = static_cast<Elem>(x);
  return out;
}

// One automorphism per conjugacy class of Aut(N).
std::vector<std::vector<Elem>> class_representatives(const std::vector<std::vector<Elem>>& auts) {
  std::unordered_map<std::vector<Elem>, std::size_t, VecHash> id;
  for (std::size_t i = 0; i < auts.size(); ++i) id.emplace(auts[i], i);
  std::vector<std::uint8_t> done(auts.size(), 0);
  std::vector<std::vector<Elem>> inverses;
  inverses.reserve(auts.size());
  for (const auto& b : auts) inverses.push_back(invert(b));
  std::vector<std::vector<Elem>> reps;
  for (std::size_t i = 0; i < auts.size(); ++i) {
    if (done[i]) continue;
    reps.push_back(auts[i]);
    for (std::size_t j = 0; j < auts.size(); ++j) {
      // b^-1 a b as maps
      const auto c = compose(compose(inverses[j], auts[i]), auts[j]);
      done[id.at(c)] = 1;
    }
  }
  return reps;
}

std::vector<Elem> map_power(const std::vector<Elem>& f, unsigned p) {
  std::vector<Elem> out(f.size());
  std::iota(out.begin(), out.end(), 0);
  for (unsigned i = 0; i < p; ++i) out = compose(out, f);
  return out;
}

FiniteGroup extension(const FiniteGroup& n, const std::vector<Elem>& alpha, Elem z, unsigned p) {
  const std::size_t m = n.order(), order = m * p;
  std::vector<std::vector<Elem>> alpha_pow{std::vector<Elem>(m)};
  std::iota(alpha_pow[0].begin(), alpha_pow[0].end(), 0);
  for (unsigned i = 1; i < p; ++i) alpha_pow.push_back(compose(alpha_pow.back(), alpha));
  std::vector<Elem> table(order * order);
  for (std::size_t u = 0; u < order; ++u) {
    const std::size_t i = u / m;
    const Elem x = static_cast<Elem>(u % m);
    for (std::size_t v = 0; v < order; ++v) {
      const std::size_t j = v / m;
      const Elem y = static_cast<Elem>(v % m);
      Elem w = n.mul(x, alpha_pow[i][y]);
      std::size_t k = i + j;
      if (k >= p) {
        w = n.mul(w, z);
        k -= p;
      }
      table[u * order + v] = static_cast<Elem>(k * m + w);
    }
  }
  std::vector<Elem> gens(n.generators().begin(), n.generators().end());
  gens.push_back(static_cast<Elem>(m + n.identity()));
  return FiniteGroup::from_table(order, std::move(table), std::move(gens));
}

std::string abelian_name(const FiniteGroup& g) {
  const auto inv = abelian_invariants_finite(g);
  if (inv.torsion_factors.empty()) return "1";
  std::string s;
  for (const auto& f : inv.torsion_factors) s += (s.empty() ? "C" : "xC") + f.get_str();
  return s;
}

std::string known_name(const FiniteGroup& g, std::size_t ordinal) {
  if (g.is_abelian()) return abelian_name(g);
  const std::size_t n = g.order();
  if (n % 2 == 0 && n >= 6 && are_isomorphic(g, dihedral_group(n / 2)))
    return "D" + std::to_string(n);
  if (n == 8 && are_isomorphic(g, quaternion_group())) return "Q8";
  if (n == 12 && are_isomorphic(g, alternating_group(4))) return "A4";
  if (n == 24 && are_isomorphic(g, symmetric_group(4))) return "S4";
  return "G" + std::to_string(n) + "_" + std::to_string(ordinal);
}

}  // namespace

std::vector<std::vector<FiniteGroup>> generate_small_groups(std::size_t max_order) {
  std::vector<std::vector<FiniteGroup>> by_order(max_order + 1);
  if (max_order >= 1) by_order[1].push_back(FiniteGroup());
  std::vector<std::vector<std::vector<Elem>>> class_reps_cache;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<Elem>>> reps_cache;
  for (std::size_t n = 2; n <= max_order; ++n) {
    std::vector<FiniteGroup> found;
    std::vector<std::vector<std::size_t>> sigs;
    for (unsigned long p : std::vector<unsigned long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
      if (n % p != 0) continue;
      const std::size_t m = n / p;
      if (m > max_order) continue;
      for (std::size_t idx = 0; idx < by_order[m].size(); ++idx) {
        const FiniteGroup& base = by_order[m][idx];
        auto key = std::make_pair(m, idx);
        if (!reps_cache.count(key)) reps_cache[key] = class_representatives(automorphisms(base));
        for (const auto& alpha : reps_cache[key]) {
          const auto ap = map_power(alpha, static_cast<unsigned>(p));
          for (Elem z = 0; z < m; ++z) {
            if (alpha[z] != z) continue;
            bool inner = true;
            for (Elem y = 0; y < m && inner; ++y) inner = ap[y] == base.conj(z, y);
            if (!inner) continue;
            FiniteGroup g = extension(base, alpha, z, static_cast<unsigned>(p));
            const auto sig = group_signature(g);
            bool dup = false;
            for (std::size_t k = 0; k < found.size() && !dup; ++k)
              dup = sigs[k] == sig && are_isomorphic(found[k], g);
            if (!dup) {
              found.push_back(std::move(g));
              sigs.push_back(sig);
            }
          }
        }
      }
    }
    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const bool aa = found[a].is_abelian(), ab = found[b].is_abelian();
      if (aa != ab) return aa;
      return sigs[a] < sigs[b];
    });
    std::size_t ordinal = 0;
    for (std::size_t k : order) {
      ++ordinal;
      by_order[n].push_back(found[k].renamed(known_name(found[k], ordinal)));
    }
  }
  return by_order;
}

std::filesystem::path default_small_groups_path() {
  return std::filesystem::path(DPGRAD_DATA_DIR) / "small_groups.json";
}

std::vector<FiniteGroup> load_small_groups(std::size_t max_order,
                                           const std::filesystem::path& path) {
  const auto file = path.empty() ? default_small_groups_path() : path;
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const Json j = parse_json_text(ss.str());
  std::vector<FiniteGroup> out;
  for (const auto& entry : j.at("groups")) {
    if (entry.at("order").get<std::size_t>() > max_order) continue;
    Limits lim;
    out.push_back(group_from_json(entry, lim));
  }
  return out;
}

}  // namespace dpgrad
