#include "dpgrad/smith.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <sstream>

#include "dpgrad/errors.hpp"

namespace dpgrad {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw DomainError("matrix data does not match dimensions");
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_.size() || c >= cols_) throw DomainError("sparse entry out of range");
  if (value == 0) return;
  auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += value;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, Entry{c, value});
  }
}

void SparseIntMatrix::set_row(std::size_t r, Row row) {
  std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Row merged;
  for (auto& e : row) {
    if (e.first >= cols_) throw DomainError("sparse entry out of range");
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  rows_[r] = std::move(merged);
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows_.size(), cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) m(r, c) = v;
  return m;
}

// ---------------------------------------------------------------- dense SNF

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
int cmpabs_ui(const BigInt& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

SmithResult smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t t = 0;
  BigInt q, tmp;
  for (; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pi == rows || cmpabs(m(i, j), m(pi, pj)) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(m, t, pi);
    swap_cols(m, t, pj);
    while (true) {
      const BigInt p = m(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), p.get_mpz_t());
        if (q == 0) continue;
        for (std::size_t j = t; j < cols; ++j) {
          if (m(t, j) == 0) continue;
          tmp = q * m(t, j);
          m(i, j) -= tmp;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), p.get_mpz_t());
        if (q == 0) continue;
        for (std::size_t i = t; i < rows; ++i) {
          if (m(i, t) == 0) continue;
          tmp = q * m(i, t);
          m(i, j) -= tmp;
        }
      }
      // Any leftover in row/column t is a remainder smaller than the pivot.
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m(i, t) != 0 && (bi == rows || cmpabs(m(i, t), m(bi, bj)) < 0)) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m(t, j) != 0 && (bi == rows || cmpabs(m(t, j), m(bi, bj)) < 0)) {
          bi = t;
          bj = j;
        }
      if (bi != rows) {
        swap_rows(m, t, bi);
        swap_cols(m, t, bj);
        continue;
      }
      // Row and column clear; enforce divisibility of the trailing block.
      std::size_t di = rows;
      for (std::size_t i = t + 1; i < rows && di == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), p.get_mpz_t())) {
            di = i;
            break;
          }
      if (di == rows) break;
      for (std::size_t j = t; j < cols; ++j) m(t, j) += m(di, j);
    }
    if (m(t, t) < 0) m(t, t) = -m(t, t);
  }
  SmithResult out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.factors.push_back(m(i, i));
  return out;
}

// --------------------------------------------------------------- sparse SNF

namespace {

using Row = SparseIntMatrix::Row;

// target - factor * pivot, both sorted by column.
Row row_axpy(const Row& target, const BigInt& factor, const Row& pivot) {
  Row out;
  out.reserve(target.size() + pivot.size());
  std::size_t a = 0, b = 0;
  BigInt tmp;
  while (a < target.size() || b < pivot.size()) {
    if (b == pivot.size() || (a < target.size() && target[a].first < pivot[b].first)) {
      out.push_back(target[a++]);
    } else if (a == target.size() || pivot[b].first < target[a].first) {
      tmp = -factor * pivot[b].second;
      out.emplace_back(pivot[b].first, tmp);
      ++b;
    } else {
      tmp = target[a].second - factor * pivot[b].second;
      if (tmp != 0) out.emplace_back(target[a].first, tmp);
      ++a;
      ++b;
    }
  }
  return out;
}

const BigInt* find_entry(const Row& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseIntMatrix::Entry& e, std::size_t col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? &it->second : nullptr;
}

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& input, const SmithOptions& options) {
  const std::size_t nrows = input.rows(), ncols = input.cols();
  std::vector<Row> rows(nrows);
  std::vector<std::size_t> col_count(ncols, 0);
  std::vector<std::vector<std::size_t>> col_rows(ncols);
  std::size_t live_nnz = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    rows[r] = input.row(r);
    for (const auto& [c, v] : rows[r]) {
      ++col_count[c];
      col_rows[c].push_back(r);
    }
    live_nnz += rows[r].size();
  }

  std::size_t units = 0;
  while (live_nnz > 0) {
    if (live_nnz <= options.densify_threshold) {
      std::size_t nr = 0, nc = 0;
      for (const auto& row : rows) nr += !row.empty();
      for (auto c : col_count) nc += c > 0;
      if (nr * nc <= 40000) break;
    }
    std::size_t best_r = nrows, best_c = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < nrows && best_cost > 0; ++r) {
      const auto& row = rows[r];
      if (row.empty()) continue;
      for (const auto& [c, v] : row) {
        if (cmpabs_ui(v, 1) != 0) continue;
        const std::size_t cost = (row.size() - 1) * (col_count[c] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = r;
          best_c = c;
          if (cost == 0) break;
        }
      }
    }
    if (best_r == nrows) break;

    const Row pivot = std::move(rows[best_r]);
    rows[best_r].clear();
    const BigInt sign = *find_entry(pivot, best_c);  // +1 or -1
    for (const auto& [c, v] : pivot) --col_count[c];
    live_nnz -= pivot.size();

    std::vector<std::size_t> targets;
    for (std::size_t r2 : col_rows[best_c])
      if (r2 != best_r && find_entry(rows[r2], best_c)) targets.push_back(r2);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    col_rows[best_c].clear();

    std::vector<Row> updated(targets.size());
#pragma omp parallel for schedule(dynamic, 8) if (targets.size() > 64)
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Row& old = rows[targets[k]];
      const BigInt factor = *find_entry(old, best_c) * sign;
      updated[k] = row_axpy(old, factor, pivot);
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const std::size_t r2 = targets[k];
      const Row& old = rows[r2];
      for (const auto& [c, v] : old) --col_count[c];
      live_nnz -= old.size();
      for (const auto& [c, v] : updated[k]) {
        ++col_count[c];
        if (!find_entry(old, c)) col_rows[c].push_back(r2);
      }
      live_nnz += updated[k].size();
      rows[r2] = std::move(updated[k]);
    }
    ++units;
  }

  SmithResult out;
  out.rank = units;
  out.factors.assign(units, BigInt(1));
  if (live_nnz == 0) return out;

  // Densify whatever is left (no unit entries remain).
  std::vector<std::size_t> live_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (col_count[c] > 0) live_cols.push_back(c);
  std::vector<std::size_t> col_pos(ncols, 0);
  for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = k;
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < nrows; ++r)
    if (!rows[r].empty()) live_rows.push_back(r);
  IntMatrix dense(live_rows.size(), live_cols.size());
  for (std::size_t k = 0; k < live_rows.size(); ++k)
    for (const auto& [c, v] : rows[live_rows[k]]) dense(k, col_pos[c]) = v;
  auto rest = smith_normal_form(std::move(dense));
  out.rank += rest.rank;
  for (auto& f : rest.factors) out.factors.push_back(std::move(f));
  return out;
}

// ----------------------------------------------------------------- abelian

AbelianInvariants make_invariants(std::size_t betti, std::vector<BigInt> factors) {
  AbelianInvariants inv;
  inv.betti = betti;
  for (auto& f : factors) {
    if (f < 0) f = -f;
    if (f > 1) inv.torsion_factors.push_back(f);
  }
  std::sort(inv.torsion_factors.begin(), inv.torsion_factors.end());
  inv.torsion_order = 1;
  for (const auto& f : inv.torsion_factors) inv.torsion_order *= f;
  return inv;
}

AbelianInvariants abelian_invariants_from_relations(const SparseIntMatrix& m,
                                                    const SmithOptions& options) {
  auto snf = smith_normal_form(m, options);
  return make_invariants(m.cols() - snf.rank, std::move(snf.factors));
}

std::string to_string(const AbelianInvariants& inv) {
  std::ostringstream os;
  os << "betti=" << inv.betti << " torsion=[";
  for (std::size_t i = 0; i < inv.torsion_factors.size(); ++i)
    os << (i ? "," : "") << inv.torsion_factors[i].get_str();
  os << "]";
  return os.str();
}

IntMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw ParseError("matrix file must start with 'rows cols'", 1);
  std::vector<BigInt> data;
  data.reserve(rows * cols);
  std::string tok;
  while (data.size() < rows * cols && in >> tok) {
    BigInt v;
    if (v.set_str(tok, 10) != 0) throw ParseError("not an integer: '" + tok + "'");
    data.push_back(std::move(v));
  }
  if (data.size() != rows * cols)
    throw ParseError("expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(data.size()));
  if (in >> tok) throw ParseError("trailing data after matrix entries");
  return IntMatrix(rows, cols, std::move(data));
}

}  // namespace dpgrad
