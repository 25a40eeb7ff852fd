#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <memory>
#include <string>
#include <vector>

namespace heegner {

// Binary precision policy shared by every numeric operation.
struct PrecisionContext {
  long decimal_digits = 0;
  long target_bits = 0;
  long guard_bits = 96;

  long working_bits() const { return target_bits + guard_bits; }

  // Context with guard bits widened by ceil(log2 terms).
  PrecisionContext for_series(long terms) const;

  // Same target, n extra guard bits.
  PrecisionContext widened(long extra_bits) const;
};

PrecisionContext make_context(long decimal_digits, long guard_bits = 96);

// RAII wrapper over mpfr_t. Binary operators produce a result at the larger
// operand precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64);
  Real(long v, mpfr_prec_t prec);
  Real(const mpz_class& v, mpfr_prec_t prec);
  Real(const mpq_class& v, mpfr_prec_t prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real from_string(const std::string& s, mpfr_prec_t prec);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific notation with `digits` significant digits.
  std::string to_string(long digits) const;
  // Fixed notation with `decimals` digits after the point.
  std::string to_fixed(long decimals) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long k);
  Real& operator/=(long k);
  Real& operator*=(const mpq_class& q);

  Real operator-() const;

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long k);
Real operator/(const Real& a, long k);
Real operator*(const Real& a, const mpq_class& q);
Real operator+(const Real& a, long k);
Real operator-(const Real& a, long k);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real ldexp(const Real& x, long e);
Real const_pi(mpfr_prec_t prec);
Real const_log2(mpfr_prec_t prec);

// 2^-bits at the given precision.
Real epsilon_bits(long bits, mpfr_prec_t prec);

class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 64);
  Complex(Real re);
  Complex(Real re, Real im);
  Complex(const mpq_class& re, mpfr_prec_t prec);

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t prec() const { return re_.prec(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  // Real with a zero imaginary part of either sign.
  bool is_real() const { return im_.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& r);
  Complex& operator/=(const Real& r);
  Complex& operator*=(long k);
  Complex& operator*=(const mpq_class& q);

  Complex operator-() const;

  std::string to_string(long digits) const;

 private:
  Real re_, im_;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& r);
Complex operator*(const Real& r, const Complex& a);
Complex operator/(const Complex& a, const Real& r);
Complex operator*(const Complex& a, long k);
Complex operator*(const Complex& a, const mpq_class& q);
Complex operator+(const Complex& a, long k);
Complex operator-(const Complex& a, long k);
Complex operator+(const Complex& a, const mpq_class& q);
Complex operator-(long k, const Complex& a);
Complex operator/(long k, const Complex& a);

Complex i_unit(mpfr_prec_t prec);
Complex conj(const Complex& z);
Real abs(const Complex& z);
// Argument in (-pi, pi]; a zero imaginary part counts as +0.
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const mpq_class& r);
Complex pow(const Complex& z, long n);
// exp(i * pi * r), exact when 4r is an integer.
Complex exp_i_pi(const mpq_class& r, mpfr_prec_t prec);

// exp(log(z)/n) on the principal branch; principal_root(0, n) = 0.
Complex principal_root(const Complex& z, long n);

// Copy rounded (or widened) to precision p.
Real round_to(const Real& x, mpfr_prec_t p);
Complex round_to(const Complex& z, mpfr_prec_t p);

// |a - b| / |b|, or |a - b| when b == 0.
Real rel_diff(const Complex& a, const Complex& b);

// Exact Bernoulli numbers B_2, B_4, ..., B_{2n}; element k-1 holds B_{2k}.
// The returned snapshot is immutable and safe to share across threads.
std::shared_ptr<const std::vector<mpq_class>> bernoulli_numbers(long n);

Real gamma_ap(const mpq_class& x, const PrecisionContext& ctx);
Real digamma_ap(const mpq_class& x, const PrecisionContext& ctx);

}  // namespace heegner
