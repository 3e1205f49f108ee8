#pragma once

// Exact integer matrices, Smith normal form and abelian invariants.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dpgrad {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Row-major sparse matrix; each row holds (column, value) pairs sorted by
// column with no explicit zeros.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::size_t, BigInt>;
  using Row = std::vector<Entry>;

  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  // Adds `value` into (r, c).
  void add(std::size_t r, std::size_t c, const BigInt& value);
  void set_row(std::size_t r, Row row);
  const Row& row(std::size_t r) const { return rows_[r]; }
  std::size_t nonzeros() const;
  IntMatrix to_dense() const;

 private:
  std::size_t cols_;
  std::vector<Row> rows_;
};

struct SmithResult {
  std::vector<BigInt> factors;  // nonzero invariant factors d1 | d2 | ...
  std::size_t rank = 0;
};

struct SmithOptions {
  // Sparse elimination densifies once the live part has at most this many
  // nonzeros or no unit pivot is left.
  std::size_t densify_threshold = 2000;
};

SmithResult smith_normal_form(IntMatrix m);
SmithResult smith_normal_form(const SparseIntMatrix& m, const SmithOptions& options = {});

struct AbelianInvariants {
  std::size_t betti = 0;
  std::vector<BigInt> torsion_factors;  // each >= 2, dividing the next
  BigInt torsion_order = 1;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

// Invariants of Z^generators / (row span of m).
AbelianInvariants abelian_invariants_from_relations(const SparseIntMatrix& m,
                                                    const SmithOptions& options = {});
AbelianInvariants make_invariants(std::size_t betti, std::vector<BigInt> factors);

std::string to_string(const AbelianInvariants& inv);

// Matrix file: first line "rows cols", then row-major integers.
IntMatrix read_matrix(std::istream& in);

}  // namespace dpgrad
