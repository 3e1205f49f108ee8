#pragma once

// Directed-rounding reals on top of MPFR. Every operation takes the rounding
// direction explicitly so bound checks can round one side up and the other
// down.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace dpgrad {

enum class Round { Down, Up, Nearest };

class Real {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  Real();
  explicit Real(long v);
  Real(const mpz_class& v, Round r);
  Real(const mpq_class& v, Round r);
  Real(const Real& other);
  Real& operator=(const Real& other);
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  double to_double() const;
  // Fixed notation with `digits` significant digits, rounded to nearest.
  std::string str(int digits = 12) const;

  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

mpfr_rnd_t mode(Round r);

Real add(const Real& a, const Real& b, Round r);
Real sub(const Real& a, const Real& b, Round r);
Real mul(const Real& a, const Real& b, Round r);
Real div(const Real& a, const Real& b, Round r);
// Natural logarithm.
Real log(const Real& a, Round r);
Real log2(const Real& a, Round r);
Real exp(const Real& a, Round r);
// x^(p/q) for x >= 0: computed as the q-th root of the exact integer x^p.
Real rational_power(const mpz_class& x, unsigned long p, unsigned long q, Round r);

}  // namespace dpgrad
