#pragma once

// Witt numbers, the graded dimensions a_n and their partial sums b_n, and a
// Lyndon-word counter used as an independent check.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dpgrad {

using BigInt = mpz_class;
using Rational = mpq_class;

int mobius(unsigned long n);

// (1/i) sum_{j | i} mu(i/j) k^j, the number of Lyndon words of length i
// over k letters.
BigInt witt_number(unsigned long i, unsigned long alphabet = 2);

// Counts binary Lyndon words of length i by enumerating all 2^i words.
// CapExceeded above `cap` (at most 24).
BigInt lyndon_count(unsigned long i, bool parallel = true, unsigned long cap = 24);

struct WittRow {
  unsigned long n = 0;
  BigInt r, a, b;
  std::optional<BigInt> index_exponent;  // b_{n-1}: [F x F : U_n] = p^{b_{n-1}}
  std::optional<Rational> ratio;         // a_n / b_{n-1}
};

struct WittTable {
  unsigned long p = 2;
  std::vector<WittRow> rows;
};

// DomainError unless p is prime and n_max >= 1.
WittTable build_witt_table(unsigned long p, unsigned long n_max, unsigned long alphabet = 2);

struct RatioReport {
  Rational epsilon;
  std::vector<unsigned long> witnesses;  // n with a_n / b_{n-1} >= 1 - epsilon
  Rational max_ratio;                    // max of a_n / b_{n-1}
  Rational max_growth;                   // max of b_n / b_{n-1}
  Rational last_growth;
  // First n from which b_m / b_{m-1} >= 19/10 for every m <= n_max; 0 if none.
  unsigned long growth_from = 0;
  bool identity_holds = true;            // a_n / b_{n-1} == b_n / b_{n-1} - 1
};

// DomainError unless 0 < epsilon < 1.
RatioReport check_ratio_threshold(const WittTable& table, const Rational& epsilon);

// "# witt-table v1 p=<p>" followed by "n,r,a,b,index_exponent,ratio_num,ratio_den";
// the ratio is written unreduced as a_n and b_{n-1}, empty for n = 1.
std::string witt_csv(const WittTable& table);

}  // namespace dpgrad
