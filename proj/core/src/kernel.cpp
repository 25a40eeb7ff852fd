#include "heegner/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "heegner/errors.hpp"

namespace heegner {

PrecisionContext make_context(long decimal_digits, long guard_bits) {
  if (decimal_digits < 1) throw ParameterError("make_context: decimal_digits must be >= 1");
  if (guard_bits < 64) throw ParameterError("make_context: guard_bits must be >= 64");
  PrecisionContext ctx;
  ctx.decimal_digits = decimal_digits;
  ctx.target_bits = static_cast<long>(std::ceil(static_cast<double>(decimal_digits) * std::log2(10.0)));
  ctx.guard_bits = guard_bits;
  return ctx;
}

PrecisionContext PrecisionContext::for_series(long terms) const {
  PrecisionContext c = *this;
  if (terms > 1) c.guard_bits += static_cast<long>(std::ceil(std::log2(static_cast<double>(terms))));
  return c;
}

PrecisionContext PrecisionContext::widened(long extra_bits) const {
  PrecisionContext c = *this;
  c.guard_bits += extra_bits;
  return c;
}

// ---------------------------------------------------------------- Real

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_string(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw ParameterError("not a decimal number: " + s);
  }
  return r;
}

std::string Real::to_string(long digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", static_cast<int>(std::max(1L, digits) - 1), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Real::to_fixed(long decimals) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", static_cast<int>(decimals), v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {

void raise_to(mpfr_ptr v, mpfr_prec_t p) {
  if (mpfr_get_prec(v) < p) mpfr_prec_round(v, p, MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  raise_to(v_, o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  raise_to(v_, o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  raise_to(v_, o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  raise_to(v_, o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const mpq_class& q) {
  mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, long k) {
  Real r(a);
  r *= k;
  return r;
}

Real operator/(const Real& a, long k) {
  Real r(a);
  r /= k;
  return r;
}

Real operator*(const Real& a, const mpq_class& q) {
  Real r(a);
  r *= q;
  return r;
}

Real operator+(const Real& a, long k) {
  Real r(a.prec());
  mpfr_add_si(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, long k) {
  Real r(a.prec());
  mpfr_sub_si(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }

#define HEEGNER_UNARY(name, fn)        \
  Real name(const Real& x) {           \
    Real r(x.prec());                  \
    fn(r.raw(), x.raw(), MPFR_RNDN);   \
    return r;                          \
  }

HEEGNER_UNARY(abs, mpfr_abs)
HEEGNER_UNARY(sqrt, mpfr_sqrt)
HEEGNER_UNARY(exp, mpfr_exp)
HEEGNER_UNARY(log, mpfr_log)
HEEGNER_UNARY(sin, mpfr_sin)
HEEGNER_UNARY(cos, mpfr_cos)
#undef HEEGNER_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.prec());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_log2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real epsilon_bits(long bits, mpfr_prec_t prec) {
  Real r(1, prec);
  mpfr_mul_2si(r.raw(), r.raw(), -bits, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- Complex

Complex::Complex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
Complex::Complex(Real re) : re_(std::move(re)), im_(re_.prec()) {}
Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
Complex::Complex(const mpq_class& re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex& Complex::operator*=(const Real& r) {
  re_ *= r;
  im_ *= r;
  return *this;
}

Complex& Complex::operator/=(const Real& r) {
  re_ /= r;
  im_ /= r;
  return *this;
}

Complex& Complex::operator*=(long k) {
  re_ *= k;
  im_ *= k;
  return *this;
}

Complex& Complex::operator*=(const mpq_class& q) {
  re_ *= q;
  im_ *= q;
  return *this;
}

Complex Complex::operator-() const { return Complex(-re_, -im_); }

std::string Complex::to_string(long digits) const {
  if (im_.is_zero()) return re_.to_string(digits);
  std::string s = re_.to_string(digits);
  std::string t = abs(im_).to_string(digits);
  s += (im_.sign() < 0 ? "-" : "+");
  s += t;
  s += "i";
  return s;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re() + b.re(), a.im() + b.im()); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re() - b.re(), a.im() - b.im()); }

Complex operator*(const Complex& a, const Complex& b) {
  if (a.is_real() && b.is_real()) return Complex(a.re() * b.re(), Real(std::max(a.prec(), b.prec())));
  return Complex(a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re());
}

Complex operator/(const Complex& a, const Complex& b) {
  if (b.is_zero()) throw ParameterError("complex division by zero");
  if (b.is_real()) return Complex(a.re() / b.re(), a.im() / b.re());
  Real den = b.re() * b.re() + b.im() * b.im();
  Real re = (a.re() * b.re() + a.im() * b.im()) / den;
  Real im = (a.im() * b.re() - a.re() * b.im()) / den;
  return Complex(std::move(re), std::move(im));
}

Complex operator*(const Complex& a, const Real& r) { return Complex(a.re() * r, a.im() * r); }
Complex operator*(const Real& r, const Complex& a) { return a * r; }
Complex operator/(const Complex& a, const Real& r) { return Complex(a.re() / r, a.im() / r); }

Complex operator*(const Complex& a, long k) {
  Complex r(a);
  r *= k;
  return r;
}

Complex operator*(const Complex& a, const mpq_class& q) {
  Complex r(a);
  r *= q;
  return r;
}

Complex operator+(const Complex& a, long k) { return Complex(a.re() + k, a.im()); }
Complex operator-(const Complex& a, long k) { return Complex(a.re() - k, a.im()); }

Complex operator+(const Complex& a, const mpq_class& q) {
  return Complex(a.re() + Real(q, a.prec()), a.im());
}

Complex operator-(long k, const Complex& a) { return Complex(Real(k, a.prec()) - a.re(), -a.im()); }

Complex operator/(long k, const Complex& a) { return Complex(Real(k, a.prec())) / a; }

Complex i_unit(mpfr_prec_t prec) { return Complex(Real(prec), Real(1, prec)); }

Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }

Real abs(const Complex& z) {
  Real r(z.prec());
  mpfr_hypot(r.raw(), z.re().raw(), z.im().raw(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) {
  if (z.im().is_zero()) {
    if (z.re().sign() < 0) return const_pi(z.prec());
    return Real(z.prec());
  }
  return atan2(z.im(), z.re());
}

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  if (z.im().is_zero()) return Complex(std::move(m), Real(z.prec()));
  Real c(z.prec()), s(z.prec());
  mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
  return Complex(m * c, m * s);
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw ParameterError("log of zero");
  return Complex(log(abs(z)), arg(z));
}

Complex sqrt(const Complex& z) {
  mpfr_prec_t p = z.prec();
  if (z.is_zero()) return Complex(p);
  if (z.im().is_zero()) {
    if (z.re().sign() > 0) return Complex(sqrt(z.re()), Real(p));
    return Complex(Real(p), sqrt(-z.re()));
  }
  Real r = abs(z);
  if (z.re().sign() >= 0) {
    Real t = sqrt((r + z.re()) / 2);
    Real im = z.im() / (t * 2);
    return Complex(std::move(t), std::move(im));
  }
  Real t = sqrt((r - z.re()) / 2);
  Real re = abs(z.im()) / (t * 2);
  if (z.im().sign() < 0) t = -t;
  return Complex(std::move(re), std::move(t));
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1, z.prec())) / pow(z, -n);
  Complex result(Real(1, z.prec()));
  Complex base(z);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Complex pow(const Complex& z, const mpq_class& r) {
  if (r.get_den() == 1) return pow(z, r.get_num().get_si());
  if (z.is_zero()) {
    if (r > 0) return Complex(z.prec());
    throw ParameterError("zero to a negative power");
  }
  if (r.get_den() == 2) return pow(sqrt(z), r.get_num().get_si());
  Complex l = log(z);
  return exp(l * r);
}

Complex exp_i_pi(const mpq_class& r, mpfr_prec_t prec) {
  // Reduce to (-1, 1].
  mpq_class t = r;
  mpz_class two_floor;
  mpq_class half = t / 2;
  mpz_fdiv_q(two_floor.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  t -= 2 * mpq_class(two_floor);
  if (t > 1) t -= 2;
  mpq_class q4 = t * 4;
  if (q4.get_den() == 1) {
    long k = q4.get_num().get_si();
    switch (k) {
      case 0: return Complex(Real(1, prec), Real(prec));
      case 2: return Complex(Real(prec), Real(1, prec));
      case 4: return Complex(Real(-1, prec), Real(prec));
      case -2: return Complex(Real(prec), Real(-1, prec));
      default: break;
    }
  }
  Real a = const_pi(prec) * t;
  return Complex(cos(a), sin(a));
}

Complex principal_root(const Complex& z, long n) {
  if (n < 1) throw ParameterError("principal_root: n must be >= 1");
  if (n == 1) return z;
  if (z.is_zero()) return Complex(z.prec());
  if (n == 2) return sqrt(z);
  if (z.im().is_zero() && z.re().sign() > 0) {
    Real r(z.prec());
    mpfr_rootn_ui(r.raw(), z.re().raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    return Complex(std::move(r), Real(z.prec()));
  }
  Complex l = log(z);
  l.re() /= n;
  l.im() /= n;
  return exp(l);
}

Real round_to(const Real& x, mpfr_prec_t p) {
  Real r(p);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Complex round_to(const Complex& z, mpfr_prec_t p) { return Complex(round_to(z.re(), p), round_to(z.im(), p)); }

Real rel_diff(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real m = abs(b);
  if (m.is_zero()) return d;
  return d / m;
}

// ---------------------------------------------------------------- Bernoulli

std::shared_ptr<const std::vector<mpq_class>> bernoulli_numbers(long n) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<mpq_class>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache && static_cast<long>(cache->size()) >= n) return cache;

  long size = std::max<long>({n, 32, cache ? 2 * static_cast<long>(cache->size()) : 0});
  // Tangent numbers T_1..T_size.
  std::vector<mpz_class> t(size + 1);
  t[1] = 1;
  for (long k = 2; k <= size; ++k) t[k] = (k - 1) * t[k - 1];
  for (long k = 2; k <= size; ++k) {
    for (long j = k; j <= size; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  auto out = std::make_shared<std::vector<mpq_class>>();
  out->reserve(size);
  for (long k = 1; k <= size; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
    mpq_class b(2 * k * t[k], four_k * (four_k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    out->push_back(b);
  }
  cache = out;
  return cache;
}

// ---------------------------------------------------------------- Gamma, digamma

namespace {

struct Shifted {
  mpq_class z;      // x + m
  mpq_class prod;   // x (x+1) ... (x+m-1)
  long m = 0;
};

Shifted shift_up(const mpq_class& x, long threshold, bool want_prod) {
  Shifted s;
  s.z = x;
  s.prod = 1;
  while (s.z < threshold) {
    if (want_prod) s.prod *= s.z;
    s.z += 1;
    ++s.m;
  }
  return s;
}

long shift_threshold(long bits) { return std::max(16L, bits / 4); }

}  // namespace

Real gamma_ap(const mpq_class& x, const PrecisionContext& ctx) {
  if (x <= 0) throw ParameterError("gamma_ap: argument must be a positive rational");
  const long out_bits = ctx.working_bits();
  const long p = out_bits + 64;
  Shifted s = shift_up(x, shift_threshold(out_bits), true);

  Real z(s.z, p);
  Real zinv = Real(1, p) / z;
  Real zinv2 = zinv * zinv;
  Real lg = (z - Real(mpq_class(1, 2), p)) * log(z) - z + log(const_pi(p) * 2) / 2;

  Real eps = epsilon_bits(p, p);
  Real pw = zinv;
  auto bern = bernoulli_numbers(64);
  for (long k = 1;; ++k) {
    if (k > static_cast<long>(bern->size())) bern = bernoulli_numbers(2 * k);
    Real term = pw * (*bern)[k - 1];
    term /= (2 * k) * (2 * k - 1);
    lg += term;
    if (abs(term) < eps) break;
    if (k > 100000) throw PrecisionError("gamma_ap: Stirling series did not converge");
    pw *= zinv2;
  }
  Real g = exp(lg);
  g /= Real(s.prod, p);
  Real out(out_bits);
  mpfr_set(out.raw(), g.raw(), MPFR_RNDN);
  return out;
}

Real digamma_ap(const mpq_class& x, const PrecisionContext& ctx) {
  if (x <= 0) throw ParameterError("digamma_ap: argument must be a positive rational");
  const long out_bits = ctx.working_bits();
  const long p = out_bits + 64;
  Shifted s = shift_up(x, shift_threshold(out_bits), false);

  Real z(s.z, p);
  Real zinv = Real(1, p) / z;
  Real zinv2 = zinv * zinv;
  Real psi = log(z) - zinv / 2;

  Real eps = epsilon_bits(p, p);
  Real pw = zinv2;
  auto bern = bernoulli_numbers(64);
  for (long k = 1;; ++k) {
    if (k > static_cast<long>(bern->size())) bern = bernoulli_numbers(2 * k);
    Real term = pw * (*bern)[k - 1];
    term /= 2 * k;
    psi -= term;
    if (abs(term) < eps) break;
    if (k > 100000) throw PrecisionError("digamma_ap: asymptotic series did not converge");
    pw *= zinv2;
  }
  mpq_class xi = x;
  for (long j = 0; j < s.m; ++j, xi += 1) psi -= Real(1, p) / Real(xi, p);
  Real out(out_bits);
  mpfr_set(out.raw(), psi.raw(), MPFR_RNDN);
  return out;
}

}  // namespace heegner
