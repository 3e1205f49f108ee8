#include "dpgrad/real.hpp"

#include <cstdio>
#include <vector>

namespace dpgrad {

mpfr_rnd_t mode(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    default:
      return MPFR_RNDN;
  }
}

Real::Real() {
  mpfr_init2(value_, kPrecision);
  mpfr_set_zero(value_, 1);
}

Real::Real(long v) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, Round r) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_z(value_, v.get_mpz_t(), mode(r));
}

Real::Real(const mpq_class& v, Round r) {
  mpfr_init2(value_, kPrecision);
  mpfr_set_q(value_, v.get_mpq_t(), mode(r));
}

Real::Real(const Real& other) {
  mpfr_init2(value_, kPrecision);
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string Real::str(int digits) const {
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, value_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

Real add(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_add(out.get(), a.get(), b.get(), mode(r));
  return out;
}

Real sub(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_sub(out.get(), a.get(), b.get(), mode(r));
  return out;
}

Real mul(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_mul(out.get(), a.get(), b.get(), mode(r));
  return out;
}

Real div(const Real& a, const Real& b, Round r) {
  Real out;
  mpfr_div(out.get(), a.get(), b.get(), mode(r));
  return out;
}

Real log(const Real& a, Round r) {
  Real out;
  mpfr_log(out.get(), a.get(), mode(r));
  return out;
}

Real log2(const Real& a, Round r) {
  Real out;
  mpfr_log2(out.get(), a.get(), mode(r));
  return out;
}

Real exp(const Real& a, Round r) {
  Real out;
  mpfr_exp(out.get(), a.get(), mode(r));
  return out;
}

Real rational_power(const mpz_class& x, unsigned long p, unsigned long q, Round r) {
  mpz_class xp;
  mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), p);
  // The integer x^p is exact only if it fits the precision; round it in the
  // requested direction first, then take a correctly rounded root.
  Real base(xp, r);
  Real out;
  mpfr_rootn_ui(out.get(), base.get(), q, mode(r));
  return out;
}

}  // namespace dpgrad
