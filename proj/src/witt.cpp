#include "dpgrad/witt.hpp"

#include <sstream>

#include "dpgrad/errors.hpp"

namespace dpgrad {

int mobius(unsigned long n) {
  if (n == 0) throw DomainError("mobius of 0");
  int mu = 1;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

BigInt witt_number(unsigned long i, unsigned long alphabet) {
  if (i == 0) throw DomainError("Witt numbers start at 1");
  BigInt sum = 0;
  for (unsigned long j = 1; j <= i; ++j) {
    if (i % j) continue;
    const int mu = mobius(i / j);
    if (mu == 0) continue;
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), alphabet, j);
    sum += mu * pw;
  }
  return sum / i;
}

namespace {

// Bit k of w is the letter at position k. A word is Lyndon when it is
// strictly smaller than each of its proper rotations.
bool is_lyndon(std::uint32_t w, unsigned len) {
  const std::uint32_t mask = len == 32 ? ~0u : (1u << len) - 1;
  auto letter = [](std::uint32_t x, unsigned k) { return (x >> k) & 1u; };
  for (unsigned s = 1; s < len; ++s) {
    const std::uint32_t rot = ((w >> s) | (w << (len - s))) & mask;
    // Lexicographic comparison from position 0.
    int cmp = 0;
    for (unsigned k = 0; k < len && cmp == 0; ++k)
      cmp = static_cast<int>(letter(w, k)) - static_cast<int>(letter(rot, k));
    if (cmp >= 0) return false;
  }
  return true;
}

}  // namespace

BigInt lyndon_count(unsigned long i, bool parallel, unsigned long cap) {
  if (i == 0) throw DomainError("Lyndon words have positive length");
  cap = std::min(cap, 24ul);
  if (i > cap) throw CapExceeded("Lyndon word length", i, cap);
  const auto total = static_cast<std::int64_t>(1) << i;
  std::int64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static) if (parallel)
  for (std::int64_t w = 0; w < total; ++w)
    count += is_lyndon(static_cast<std::uint32_t>(w), static_cast<unsigned>(i));
  return BigInt(static_cast<long>(count));
}

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

WittTable build_witt_table(unsigned long p, unsigned long n_max, unsigned long alphabet) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  WittTable t;
  t.p = p;
  BigInt a = 0, b = 0;
  for (unsigned long n = 1; n <= n_max; ++n) {
    WittRow row;
    row.n = n;
    row.r = witt_number(n, alphabet);
    if (n > 1) {
      row.index_exponent = b;
      row.ratio = Rational(a + row.r, b);
      row.ratio->canonicalize();
    }
    a += row.r;
    b += a;
    row.a = a;
    row.b = b;
    t.rows.push_back(std::move(row));
  }
  return t;
}

RatioReport check_ratio_threshold(const WittTable& table, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("epsilon must lie strictly between 0 and 1");
  RatioReport rep;
  rep.epsilon = epsilon;
  const Rational threshold = 1 - epsilon, steady(19, 10);
  bool first = true;
  for (const auto& row : table.rows) {
    if (!row.ratio) continue;
    Rational gc(row.b, *row.index_exponent);
    gc.canonicalize();
    if (*row.ratio != gc - 1) rep.identity_holds = false;
    if (*row.ratio >= threshold) rep.witnesses.push_back(row.n);
    if (first || *row.ratio > rep.max_ratio) rep.max_ratio = *row.ratio;
    if (first || gc > rep.max_growth) rep.max_growth = gc;
    first = false;
    rep.last_growth = gc;
    if (gc >= steady) {
      if (rep.growth_from == 0) rep.growth_from = row.n;
    } else {
      rep.growth_from = 0;
    }
  }
  return rep;
}

std::string witt_csv(const WittTable& table) {
  std::ostringstream os;
  os << "# witt-table v1 p=" << table.p << "\n";
  os << "n,r,a,b,index_exponent,ratio_num,ratio_den\n";
  for (const auto& row : table.rows) {
    os << row.n << ',' << row.r << ',' << row.a << ',' << row.b << ',';
    if (row.index_exponent)
      os << *row.index_exponent << ',' << row.a << ',' << *row.index_exponent;
    else
      os << ",,";
    os << "\n";
  }
  return os.str();
}

}  // namespace dpgrad
