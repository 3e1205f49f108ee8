#include "dpgrad/standard_groups.hpp"

#include <map>
#include <numeric>

#include "dpgrad/errors.hpp"

namespace dpgrad {

FiniteGroup from_permutations(std::size_t degree,
                              const std::vector<std::vector<Elem>>& generators,
                              std::string name, const Limits& limits) {
  using Perm = std::vector<Elem>;
  for (const auto& p : generators) {
    if (p.size() != degree) throw DomainError("permutation has wrong degree");
    std::vector<std::uint8_t> hit(degree, 0);
    for (auto v : p) {
      if (v >= degree || hit[v]++) throw DomainError("image list is not a permutation");
    }
  }
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, Elem> index{{id, 0}};
  std::vector<Perm> elements{id};
  auto compose = [degree](const Perm& x, const Perm& y) {
    Perm r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = y[x[i]];
    return r;
  };
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto& s : generators) {
      Perm y = compose(elements[i], s);
      if (index.emplace(y, static_cast<Elem>(elements.size())).second) {
        elements.push_back(std::move(y));
        if (elements.size() > limits.table_cap)
          throw CapExceeded("permutation group order", elements.size(), limits.table_cap);
      }
    }
  const std::size_t n = elements.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = index.at(compose(elements[a], elements[b]));
  std::vector<Elem> gens;
  for (const auto& s : generators) gens.push_back(index.at(s));
  return FiniteGroup::from_table(n, std::move(table), std::move(gens), std::move(name));
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group order must be positive");
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroup::from_table(n, std::move(table), std::move(gens),
                                 "C" + std::to_string(n));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) throw DomainError("dihedral parameter must be positive");
  if (n == 1) return cyclic_group(2).renamed("D2");
  if (n == 2) return abelian_group({2, 2}).renamed("D4");
  std::vector<Elem> r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<Elem>((i + 1) % n);
    s[i] = static_cast<Elem>((n - i) % n);
  }
  return from_permutations(n, {r, s}, "D" + std::to_string(2 * n));
}

FiniteGroup symmetric_group(std::size_t n) {
  if (n <= 1) return FiniteGroup();
  std::vector<Elem> t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Elem>((i + 1) % n);
  if (n == 2) return from_permutations(n, {t}, "S2");
  return from_permutations(n, {t, c}, "S" + std::to_string(n));
}

FiniteGroup alternating_group(std::size_t n) {
  if (n <= 2) return FiniteGroup().renamed("A" + std::to_string(n));
  // 3-cycles (0 1 k) generate A_n.
  std::vector<std::vector<Elem>> gens;
  for (std::size_t k = 2; k < n; ++k) {
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = static_cast<Elem>(k);
    p[k] = 0;
    gens.push_back(std::move(p));
  }
  return from_permutations(n, gens, "A" + std::to_string(n));
}

FiniteGroup quaternion_group() {
  // Right-regular action of i and j on {1,i,j,k,-1,-i,-j,-k}.
  const std::vector<Elem> i{1, 4, 7, 2, 5, 0, 3, 6};
  const std::vector<Elem> j{2, 3, 4, 5, 6, 7, 0, 1};
  return from_permutations(8, {i, j}, "Q8");
}

FiniteGroup abelian_group(const std::vector<std::size_t>& factors) {
  FiniteGroup g;
  std::string name;
  for (auto f : factors) {
    g = direct_product(g, cyclic_group(f), Limits{512, 1u << 20});
    name += (name.empty() ? "" : "x") + std::string("C") + std::to_string(f);
  }
  // Drop the identity generators that trivial factors contribute.
  std::vector<Elem> gens;
  for (auto x : g.generators())
    if (x != g.identity()) gens.push_back(x);
  std::vector<Elem> table(g.table().begin(), g.table().end());
  return FiniteGroup::from_table(g.order(), std::move(table), std::move(gens),
                                 name.empty() ? "1" : name);
}

FiniteGroup elementary_abelian_group(std::size_t p, std::size_t rank) {
  return abelian_group(std::vector<std::size_t>(rank, p));
}

}  // namespace dpgrad
