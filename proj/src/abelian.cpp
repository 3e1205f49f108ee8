#include "dpgrad/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace dpgrad {

AbelianInvariants abelian_invariants(const Presentation& p, const SmithOptions& options) {
  SparseIntMatrix m(p.relators().size(), p.rank());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const auto sums = exponent_sums(p.relators()[i], p.rank());
    for (std::size_t g = 0; g < sums.size(); ++g)
      if (sums[g] != 0) m.add(i, g, sums[g]);
  }
  return abelian_invariants_from_relations(m, options);
}

AbelianInvariants abelian_invariants(const SubgroupPresentation& sp, const SmithOptions& options) {
  return abelian_invariants(sp.presentation(), options);
}

std::vector<BigInt> invariant_factors_from_prime_powers(
    std::vector<std::pair<unsigned long, unsigned>> pp) {
  // Group by prime, largest exponents first; the i-th largest factor is the
  // product of the i-th largest power of every prime.
  std::map<unsigned long, std::vector<unsigned>> by_prime;
  for (const auto& [p, e] : pp)
    if (e > 0) by_prime[p].push_back(e);
  std::size_t len = 0;
  for (auto& [p, es] : by_prime) {
    std::sort(es.rbegin(), es.rend());
    len = std::max(len, es.size());
  }
  std::vector<BigInt> factors(len, 1);
  for (const auto& [p, es] : by_prime)
    for (std::size_t i = 0; i < es.size(); ++i) {
      BigInt q;
      mpz_ui_pow_ui(q.get_mpz_t(), p, es[i]);
      factors[i] *= q;
    }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

AbelianInvariants abelian_invariants_finite(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const Subgroup d = derived_subgroup(h);
  std::size_t m = h.order() / d.order();
  std::vector<std::pair<unsigned long, unsigned>> pp;
  for (unsigned long p = 2; m > 1; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    // c[k] = |{x in H/H' : x^(p^k) = 1}|
    std::vector<std::size_t> c{1};
    std::size_t pk = 1;
    while (true) {
      pk *= p;
      std::size_t cnt = 0;
      for (Elem x : h.elements())
        if (d.contains(g.pow(x, static_cast<std::int64_t>(pk)))) ++cnt;
      cnt /= d.order();
      if (cnt == c.back()) break;
      c.push_back(cnt);
    }
    // r_k = log_p(c_k / c_{k-1}) = number of cyclic factors of order >= p^k.
    std::vector<unsigned> r;
    for (std::size_t k = 1; k < c.size(); ++k) {
      std::size_t q = c[k] / c[k - 1];
      unsigned e = 0;
      while (q > 1) {
        q /= p;
        ++e;
      }
      r.push_back(e);
    }
    for (std::size_t k = 0; k < r.size(); ++k) {
      const unsigned next = k + 1 < r.size() ? r[k + 1] : 0;
      for (unsigned i = 0; i < r[k] - next; ++i)
        pp.emplace_back(p, static_cast<unsigned>(k + 1));
    }
  }
  return make_invariants(0, invariant_factors_from_prime_powers(std::move(pp)));
}

AbelianInvariants abelian_invariants_finite(const FiniteGroup& g) {
  return abelian_invariants_finite(whole_group(g));
}

}  // namespace dpgrad
