#include "dpgrad/finite_group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "dpgrad/errors.hpp"

namespace dpgrad {

// ---------------------------------------------------------------- ElementSet

ElementSet::ElementSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<Elem> ElementSet::to_vector() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<Elem>(i * 64 + b));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::uint64_t h = 1469598103934665603ull ^ universe_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

// --------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup() {
  auto impl = std::make_shared<Impl>();
  impl->n = 1;
  impl->mult = {0};
  impl->inv = {0};
  impl->orders = {1};
  impl->id = 0;
  impl->name = "1";
  impl_ = std::move(impl);
}

FiniteGroup FiniteGroup::from_table(std::size_t n, std::vector<Elem> table,
                                    std::vector<Elem> generators,
                                    std::string name,
                                    std::vector<std::string> labels) {
  if (n == 0) throw DomainError("group order must be positive");
  if (table.size() != n * n) throw DomainError("Cayley table is not square");
  for (auto e : table)
    if (e >= n) throw DomainError("Cayley table entry out of range");
  for (auto g : generators)
    if (g >= n) throw DomainError("generator index out of range");
  if (!labels.empty() && labels.size() != n)
    throw DomainError("label count does not match order");

  // Latin square.
  std::vector<std::uint8_t> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table[i * n + j]]++) throw DomainError("row is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table[j * n + i]]++) throw DomainError("column is not a permutation");
    }
  }
  // Identity: e with e*x = x for all x.
  std::optional<Elem> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = table[e * n + x] == x && table[x * n + e] == x;
    if (ok) id = static_cast<Elem>(e);
  }
  if (!id) throw DomainError("no identity element");
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Elem ab = table[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table[ab * n + c] != table[a * n + table[b * n + c]])
            throw DomainError("multiplication is not associative");
      }
  }

  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->id = *id;
  impl->inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a * n + b] == *id) {
        impl->inv[a] = static_cast<Elem>(b);
        break;
      }
  impl->orders.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != *id) {
      x = table[x * n + a];
      ++k;
    }
    impl->orders[a] = k;
  }
  impl->mult = std::move(table);
  impl->gens = std::move(generators);
  impl->name = std::move(name);
  impl->labels = std::move(labels);
  FiniteGroup g(std::move(impl));
  if (closure(g, g.generators()).order() != n)
    throw DomainError("generators do not generate the group");
  return g;
}

Elem FiniteGroup::pow(Elem x, std::int64_t k) const {
  const auto ord = static_cast<std::int64_t>(element_order(x));
  k %= ord;
  if (k < 0) k += ord;
  Elem r = identity();
  for (std::int64_t i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

FiniteGroup FiniteGroup::renamed(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  return FiniteGroup(std::move(impl));
}

bool FiniteGroup::is_abelian() const {
  const auto& gens = generators();
  for (auto a : gens)
    for (auto b : gens)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ------------------------------------------------------------------ Subgroup

Subgroup::Subgroup(FiniteGroup parent, ElementSet members,
                   std::vector<Elem> generators)
    : parent_(std::move(parent)),
      members_(std::move(members)),
      elements_(members_.to_vector()),
      generators_(std::move(generators)) {}

Subgroup whole_group(const FiniteGroup& g) {
  ElementSet s(g.order());
  for (Elem x = 0; x < g.order(); ++x) s.insert(x);
  return Subgroup(g, std::move(s), g.generators());
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  ElementSet s(g.order());
  s.insert(g.identity());
  return Subgroup(g, std::move(s), {});
}

Subgroup join(const Subgroup& k, Elem x) {
  const FiniteGroup& g = k.parent();
  if (k.contains(x)) return k;
  std::vector<Elem> gens = k.generators();
  gens.push_back(x);
  // The result is a union of left cosets rK; grow it by left multiplication
  // with the generators of the join.
  ElementSet members = k.members();
  std::vector<Elem> reps{g.identity()};
  const auto& kel = k.elements();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (Elem s : gens) {
      const Elem r = g.mul(s, reps[i]);
      if (members.contains(r)) continue;
      reps.push_back(r);
      for (Elem y : kel) members.insert(g.mul(r, y));
    }
  }
  return Subgroup(g, std::move(members), std::move(gens));
}

Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed) {
  Subgroup s = trivial_subgroup(g);
  for (Elem x : seed) s = join(s, x);
  return s;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  Subgroup s = a;
  for (Elem x : b.generators()) s = join(s, x);
  return s;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  const FiniteGroup& g = a.parent();
  std::vector<Elem> common;
  for (Elem x : a.elements())
    if (b.contains(x)) common.push_back(x);
  // Greedy generators: add an element whenever it is not yet covered.
  Subgroup s = trivial_subgroup(g);
  for (Elem x : common)
    if (!s.contains(x)) s = join(s, x);
  return s;
}

Subgroup normal_closure(const FiniteGroup& g, const Subgroup& conjugators,
                        std::span<const Elem> seed) {
  Subgroup s = trivial_subgroup(g);
  for (Elem x : seed)
    for (Elem c : conjugators.elements()) {
      const Elem y = g.conj(c, x);
      if (!s.contains(y)) s = join(s, y);
    }
  return s;
}

bool is_normal_in(const Subgroup& n, const Subgroup& in) {
  if (!n.subset_of(in)) return false;
  const FiniteGroup& g = n.parent();
  for (Elem c : in.generators())
    for (Elem x : n.generators())
      if (!n.contains(g.conj(c, x))) return false;
  return true;
}

bool is_normal(const Subgroup& n) { return is_normal_in(n, whole_group(n.parent())); }

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& x,
                             const Subgroup& y) {
  Subgroup s = trivial_subgroup(g);
  for (Elem a : x.elements())
    for (Elem b : y.elements()) {
      const Elem c = g.commutator(a, b);
      if (!s.contains(c)) s = join(s, c);
    }
  return s;
}

Subgroup derived_subgroup(const Subgroup& h) {
  return commutator_subgroup(h.parent(), h, h);
}

Subgroup center(const FiniteGroup& g) {
  Subgroup s = trivial_subgroup(g);
  for (Elem z = 0; z < g.order(); ++z) {
    bool central = true;
    for (Elem x : g.generators())
      if (g.mul(z, x) != g.mul(x, z)) {
        central = false;
        break;
      }
    if (central && !s.contains(z)) s = join(s, z);
  }
  return s;
}

namespace {

bool is_prime_power_of(std::size_t n, std::uint32_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p) {
  std::size_t target = 1;
  for (std::size_t n = g.order(); n % p == 0; n /= p) target *= p;
  Subgroup s = trivial_subgroup(g);
  // Every p-subgroup short of Sylow has a proper p-overgroup <P, x>, so the
  // greedy scan in index order always makes progress.
  while (s.order() < target) {
    bool grew = false;
    for (Elem x = 0; x < g.order() && !grew; ++x) {
      if (s.contains(x) || !is_prime_power_of(g.element_order(x), p)) continue;
      Subgroup t = join(s, x);
      if (is_prime_power_of(t.order(), p)) {
        s = std::move(t);
        grew = true;
      }
    }
    if (!grew) throw DomainError("sylow search stalled");
  }
  return s;
}

std::vector<Elem> cyclic_representatives(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  std::vector<Elem> reps;
  ElementSet covered(g.order());  // elements x already known to generate a seen <x>
  for (Elem x : h.elements()) {
    if (x == g.identity() || covered.contains(x)) continue;
    reps.push_back(x);
    const auto ord = g.element_order(x);
    Elem y = x;
    for (std::uint32_t k = 1; k < ord; ++k) {
      if (std::gcd(k, ord) == 1) covered.insert(y);
      y = g.mul(y, x);
    }
  }
  return reps;
}

namespace {

struct SearchNode {
  Subgroup group;
};

}  // namespace

std::vector<Elem> min_generating_set(const Subgroup& h, const Limits& limits) {
  if (h.order() > limits.search_cap)
    throw CapExceeded("generating-set search order", h.order(), limits.search_cap);
  const FiniteGroup& g = h.parent();
  if (h.order() == 1) return {};
  const auto reps = cyclic_representatives(h);
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> level{trivial_subgroup(g)};
  seen.insert(level.front().members());
  while (!level.empty()) {
    std::vector<Subgroup> next;
    for (const auto& k : level) {
      for (Elem x : reps) {
        if (k.contains(x)) continue;
        Subgroup j = join(k, x);
        if (j.order() == h.order()) return j.generators();
        if (seen.insert(j.members()).second) next.push_back(std::move(j));
      }
    }
    level = std::move(next);
  }
  throw DomainError("generating-set search exhausted");  // unreachable
}

std::size_t d_min(const Subgroup& h, const Limits& limits) {
  return min_generating_set(h, limits).size();
}

std::size_t d_min(const FiniteGroup& g, const Limits& limits) {
  return d_min(whole_group(g), limits);
}

std::vector<Elem> min_normal_generating_set(const Subgroup& conjugators,
                                            const Subgroup& n,
                                            const Limits& limits) {
  const FiniteGroup& g = n.parent();
  for (Elem c : conjugators.generators())
    for (Elem x : n.generators())
      if (!n.contains(g.conj(c, x))) throw NotNormal();
  if (n.order() > limits.search_cap)
    throw CapExceeded("normal generating-set search order", n.order(),
                      limits.search_cap);
  if (n.order() == 1) return {};
  // One representative per conjugacy class (under `conjugators`) inside N.
  std::vector<Elem> reps;
  ElementSet covered(g.order());
  for (Elem x : n.elements()) {
    if (x == g.identity() || covered.contains(x)) continue;
    reps.push_back(x);
    for (Elem c : conjugators.elements()) covered.insert(g.conj(c, x));
  }
  struct Node {
    Subgroup group;
    std::vector<Elem> seeds;
  };
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Node> level{{trivial_subgroup(g), {}}};
  seen.insert(level.front().group.members());
  while (!level.empty()) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (Elem x : reps) {
        if (node.group.contains(x)) continue;
        Subgroup j = node.group;
        for (Elem c : conjugators.elements()) {
          const Elem y = g.conj(c, x);
          if (!j.contains(y)) j = join(j, y);
        }
        auto seeds = node.seeds;
        seeds.push_back(x);
        if (j.order() == n.order()) return seeds;
        if (seen.insert(j.members()).second) next.push_back({std::move(j), std::move(seeds)});
      }
    }
    level = std::move(next);
  }
  throw DomainError("normal generating-set search exhausted");
}

std::size_t d_normal_min(const FiniteGroup& parent, const Subgroup& n,
                         const Limits& limits) {
  return min_normal_generating_set(whole_group(parent), n, limits).size();
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           const Limits& limits) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > limits.table_cap) throw CapExceeded("direct product order", n, limits.table_cap);
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const Elem xa = static_cast<Elem>(x / nb), xb = static_cast<Elem>(x % nb);
    for (std::size_t y = 0; y < n; ++y) {
      const Elem ya = static_cast<Elem>(y / nb), yb = static_cast<Elem>(y % nb);
      table[x * n + y] = static_cast<Elem>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  std::vector<Elem> gens;
  for (Elem ga : a.generators()) gens.push_back(static_cast<Elem>(ga * nb + b.identity()));
  for (Elem gb : b.generators()) gens.push_back(static_cast<Elem>(a.identity() * nb + gb));
  std::string name = a.name() + " x " + b.name();
  return FiniteGroup::from_table(n, std::move(table), std::move(gens), std::move(name));
}

std::pair<FiniteGroup, Homomorphism> quotient(const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal();
  const FiniteGroup& g = n.parent();
  // Coset of x is identified by its smallest member.
  std::vector<Elem> coset_min(g.order(), 0);
  std::vector<std::uint8_t> done(g.order(), 0);
  std::vector<Elem> mins;
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    mins.push_back(x);
    for (Elem y : n.elements()) {
      const Elem xy = g.mul(x, y);
      done[xy] = 1;
      coset_min[xy] = x;
    }
  }
  const std::size_t q = mins.size();
  std::vector<Elem> index_of(g.order(), 0);
  for (std::size_t i = 0; i < q; ++i) index_of[mins[i]] = static_cast<Elem>(i);
  std::vector<Elem> proj(g.order());
  for (Elem x = 0; x < g.order(); ++x) proj[x] = index_of[coset_min[x]];
  std::vector<Elem> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = proj[g.mul(mins[i], mins[j])];
  std::vector<Elem> gens;
  for (Elem x : g.generators()) gens.push_back(proj[x]);
  auto qg = FiniteGroup::from_table(q, std::move(table), std::move(gens),
                                    g.name() + "/N");
  Homomorphism h(g, qg, std::move(proj));
  return {std::move(qg), std::move(h)};
}

EmbeddedGroup as_group(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto& el = h.elements();
  std::vector<Elem> pos(g.order(), 0);
  for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = static_cast<Elem>(i);
  const std::size_t n = el.size();
  std::vector<Elem> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = pos[g.mul(el[i], el[j])];
  std::vector<Elem> gens;
  for (Elem x : h.generators()) gens.push_back(pos[x]);
  auto sub = FiniteGroup::from_table(n, std::move(table), std::move(gens));
  return {std::move(sub), el};
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<std::vector<Elem>> classes;
  std::vector<std::uint8_t> done(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Elem> cls{x};
    done[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem c : g.generators()) {
        const Elem y = g.conj(c, cls[i]);
        if (!done[y]) {
          done[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  const auto classes = conjugacy_classes(g);
  const Subgroup all = whole_group(g);
  // Normal closures of single classes, then close under joins.
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> found{trivial_subgroup(g)};
  seen.insert(found.front().members());
  std::vector<Subgroup> minimal;
  for (const auto& cls : classes) {
    Subgroup s = closure(g, cls);
    if (seen.insert(s.members()).second) found.push_back(s);
    minimal.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& m : minimal) {
      if (m.subset_of(found[i])) continue;
      Subgroup j = join(found[i], m);
      if (seen.insert(j.members()).second) found.push_back(std::move(j));
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return found;
}

std::vector<SubgroupInfo> all_subgroups(const FiniteGroup& g, const Limits& limits) {
  if (g.order() > limits.search_cap)
    throw CapExceeded("subgroup lattice order", g.order(), limits.search_cap);
  const auto reps = cyclic_representatives(whole_group(g));
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<SubgroupInfo> out{{trivial_subgroup(g), 0}};
  seen.insert(out.front().subgroup.members());
  std::size_t begin = 0;
  for (std::size_t level = 1; begin < out.size(); ++level) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Elem x : reps) {
        if (out[i].subgroup.contains(x)) continue;
        Subgroup j = join(out[i].subgroup, x);
        if (seen.insert(j.members()).second) out.push_back({std::move(j), level});
      }
    begin = end;
  }
  std::sort(out.begin(), out.end(), [](const SubgroupInfo& a, const SubgroupInfo& b) {
    if (a.subgroup.order() != b.subgroup.order()) return a.subgroup.order() < b.subgroup.order();
    return a.subgroup.elements() < b.subgroup.elements();
  });
  return out;
}

// -------------------------------------------------------------- Homomorphism

Homomorphism::Homomorphism(FiniteGroup source, FiniteGroup target,
                           std::vector<Elem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.order())
    throw DomainError("homomorphism image table has wrong size");
  for (auto y : images_)
    if (y >= target_.order()) throw DomainError("homomorphism image out of range");
  if (images_[source_.identity()] != target_.identity())
    throw DomainError("identity not mapped to identity");
  for (Elem x = 0; x < source_.order(); ++x)
    for (Elem s : source_.generators())
      if (images_[source_.mul(x, s)] != target_.mul(images_[x], images_[s]))
        throw DomainError("map is not a homomorphism");
}

Homomorphism Homomorphism::from_generator_images(FiniteGroup source,
                                                 FiniteGroup target,
                                                 std::span<const Elem> images) {
  const auto& gens = source.generators();
  if (images.size() != gens.size())
    throw DomainError("need one image per source generator");
  const Elem unset = static_cast<Elem>(-1);
  std::vector<Elem> map(source.order(), unset);
  map[source.identity()] = target.identity();
  std::vector<Elem> queue{source.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = source.mul(x, gens[k]);
      const Elem fy = target.mul(map[x], images[k]);
      if (map[y] == unset) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        throw DomainError("generator images do not define a homomorphism");
      }
    }
  }
  return Homomorphism(std::move(source), std::move(target), std::move(map));
}

Subgroup Homomorphism::kernel() const {
  std::vector<Elem> k;
  for (Elem x = 0; x < source_.order(); ++x)
    if (images_[x] == target_.identity()) k.push_back(x);
  return closure(source_, k);
}

Subgroup Homomorphism::image() const {
  std::vector<Elem> gens;
  for (Elem s : source_.generators()) gens.push_back(images_[s]);
  return closure(target_, gens);
}

bool Homomorphism::is_surjective() const { return image().order() == target_.order(); }

// ------------------------------------------------------------ fiber product

FiberProductData fiber_product(const Homomorphism& q, const Limits& limits) {
  if (!q.is_surjective()) throw NotSurjective();
  const FiniteGroup& k = q.source();
  FiniteGroup prod = direct_product(k, k, limits);
  const std::size_t n = k.order();
  std::vector<Elem> fiber, diag;
  for (Elem x = 0; x < n; ++x) {
    diag.push_back(static_cast<Elem>(x * n + x));
    for (Elem y = 0; y < n; ++y)
      if (q(x) == q(y)) fiber.push_back(static_cast<Elem>(x * n + y));
  }
  Subgroup sub = closure(prod, fiber);
  Subgroup dg = closure(prod, diag);
  FiberProductData out{k, q, prod, sub, dg, prod.order() / sub.order(), false,
                       std::nullopt, std::nullopt, std::nullopt};
  const Subgroup ker = q.kernel();
  bool central = true;
  for (Elem z : ker.elements())
    for (Elem x : k.generators())
      if (k.mul(z, x) != k.mul(x, z)) central = false;
  out.kernel_central = central;
  if (central) {
    auto fg = as_group(sub);
    auto kg = as_group(ker);
    std::vector<Elem> pos(n, 0);
    for (std::size_t i = 0; i < kg.embedding.size(); ++i)
      pos[kg.embedding[i]] = static_cast<Elem>(i);
    std::vector<Elem> images;
    images.reserve(fg.embedding.size());
    for (Elem xy : fg.embedding) {
      const Elem x = static_cast<Elem>(xy / n), y = static_cast<Elem>(xy % n);
      images.push_back(pos[k.mul(x, k.inv(y))]);
    }
    Homomorphism m(fg.group, kg.group, std::move(images));
    out.subgroup_group = std::move(fg);
    out.kernel_group = std::move(kg);
    out.central_map = std::move(m);
  }
  return out;
}

}  // namespace dpgrad
