#include "dpgrad/schur.hpp"

#include <algorithm>

#include "dpgrad/errors.hpp"
#include "dpgrad/real.hpp"

namespace dpgrad {

namespace {

struct ChainIndex {
  std::vector<std::int64_t> pos;  // element -> index among nonidentity, -1 for identity
  std::vector<Elem> elems;        // nonidentity elements
  std::size_t m = 0;
};

ChainIndex chain_index(const FiniteGroup& e) {
  ChainIndex c;
  c.pos.assign(e.order(), -1);
  for (Elem x = 0; x < e.order(); ++x)
    if (x != e.identity()) {
      c.pos[x] = static_cast<std::int64_t>(c.elems.size());
      c.elems.push_back(x);
    }
  c.m = c.elems.size();
  return c;
}

void add_term(SparseIntMatrix::Row& row, std::int64_t col, long coeff) {
  if (col < 0) return;
  row.emplace_back(static_cast<std::size_t>(col), coeff);
}

void normalize_row(SparseIntMatrix::Row& row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseIntMatrix::Row out;
  for (auto& [c, v] : row) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.emplace_back(c, v);
    if (out.back().second == 0) out.pop_back();
  }
  row = std::move(out);
}

std::int64_t pair_col(const ChainIndex& c, Elem g, Elem h) {
  if (c.pos[g] < 0 || c.pos[h] < 0) return -1;
  return c.pos[g] * static_cast<std::int64_t>(c.m) + c.pos[h];
}

}  // namespace

SparseIntMatrix bar_boundary3(const FiniteGroup& e, bool parallel) {
  const ChainIndex c = chain_index(e);
  const std::size_t m = c.m;
  const std::size_t rows = m * m * m;
  std::vector<SparseIntMatrix::Row> built(rows);
  const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t r = 0; r < n; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    const Elem g = c.elems[ru / (m * m)];
    const Elem h = c.elems[(ru / m) % m];
    const Elem k = c.elems[ru % m];
    SparseIntMatrix::Row row;
    add_term(row, pair_col(c, h, k), 1);
    add_term(row, pair_col(c, e.mul(g, h), k), -1);
    add_term(row, pair_col(c, g, e.mul(h, k)), 1);
    add_term(row, pair_col(c, g, h), -1);
    normalize_row(row);
    built[ru] = std::move(row);
  }
  SparseIntMatrix out(rows, m * m);
  for (std::size_t r = 0; r < rows; ++r) out.set_row(r, std::move(built[r]));
  return out;
}

SparseIntMatrix bar_boundary2(const FiniteGroup& e) {
  const ChainIndex c = chain_index(e);
  const std::size_t m = c.m;
  SparseIntMatrix out(m * m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Elem g = c.elems[i], h = c.elems[j];
      SparseIntMatrix::Row row;
      add_term(row, c.pos[h], 1);
      add_term(row, c.pos[e.mul(g, h)], -1);
      add_term(row, c.pos[g], 1);
      normalize_row(row);
      out.set_row(i * m + j, std::move(row));
    }
  return out;
}

std::vector<unsigned long> prime_divisors(std::size_t n) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::map<unsigned long, BigInt> p_part_decomposition(const SchurResult& r) {
  std::map<unsigned long, BigInt> out;
  for (unsigned long p : prime_divisors(r.order)) {
    BigInt part = 1;
    for (const auto& f : r.multiplier_factors) {
      BigInt x = f;
      while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
        x /= p;
        part *= p;
      }
    }
    out[p] = part;
  }
  return out;
}

SchurResult schur_multiplier(const FiniteGroup& e, const SchurOptions& options) {
  if (e.order() > options.homology_cap)
    throw CapExceeded("homology group order", e.order(), options.homology_cap);
  SchurResult r;
  r.group = e.name();
  r.order = e.order();
  if (e.order() > 1) {
    const auto d3 = bar_boundary3(e, options.parallel);
    const auto d2 = bar_boundary2(e);
    const auto s3 = smith_normal_form(d3, options.smith);
    const auto s2 = smith_normal_form(d2, options.smith);
    const std::size_t c2 = d2.rows();
    r.betti = c2 - s2.rank - s3.rank;
    for (const auto& f : s3.factors)
      if (f > 1 || f < -1) r.multiplier_factors.push_back(abs(f));
    std::sort(r.multiplier_factors.begin(), r.multiplier_factors.end());
  }
  for (const auto& f : r.multiplier_factors) r.multiplier_order *= f;
  r.per_prime = p_part_decomposition(r);
  return r;
}

SylowReport verify_sylow_bound(const FiniteGroup& e, const SchurOptions& options) {
  SylowReport rep;
  const SchurResult m = schur_multiplier(e, options);
  for (unsigned long p : prime_divisors(e.order())) {
    const auto sylow = as_group(sylow_subgroup(e, static_cast<std::uint32_t>(p)));
    const SchurResult mp = schur_multiplier(sylow.group, options);
    SylowRow row;
    row.p = p;
    row.multiplier_part = m.per_prime.at(p);
    row.sylow_order = sylow.group.order();
    row.sylow_multiplier = mp.multiplier_order;
    row.pass = row.multiplier_part <= row.sylow_multiplier;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

// ln(lhs) rounded up <= e_log rounded down, where the bound is exp(e_log).
BoundCheck log_domain_check(const BigInt& lhs, const Real& log_bound_down) {
  BoundCheck out;
  out.lhs = lhs;
  const Real lhs_up = log(Real(lhs, Round::Up), Round::Up);
  out.pass = lhs_up <= log_bound_down;
  out.bound_value = exp(log_bound_down, Round::Down).str(12);
  return out;
}

// (1 + ln x) * ln x, rounded down (both factors are >= 0 for x >= 1).
Real one_plus_log_times_log_down(std::size_t x) {
  const Real lx = log(Real(BigInt(static_cast<unsigned long>(x)), Round::Down), Round::Down);
  return mul(add(Real(1), lx, Round::Down), lx, Round::Down);
}

}  // namespace

BoundCheck verify_green_bound(const FiniteGroup& e, const SchurOptions& options) {
  const SchurResult m = schur_multiplier(e, options);
  const Real le = log(Real(BigInt(static_cast<unsigned long>(e.order())), Round::Down), Round::Down);
  return log_domain_check(m.multiplier_order, mul(le, le, Round::Down));
}

MultiplierCheck verify_multiplier_index_bound(const FiniteGroup& a, const Subgroup& a0) {
  if (!is_normal(a0)) throw NotNormal();
  const Subgroup all = whole_group(a);
  const Subgroup d = commutator_subgroup(a, all, all);
  const Subgroup d0 = commutator_subgroup(a, all, a0);
  MultiplierCheck out;
  out.index = a.order() / a0.order();
  out.derived_order = d.order();
  out.commutator_index = d.order() / d0.order();
  const auto c = log_domain_check(BigInt(static_cast<unsigned long>(out.commutator_index)),
                                  one_plus_log_times_log_down(out.index));
  out.bound_value = c.bound_value;
  out.pass = c.pass;
  return out;
}

}  // namespace dpgrad
