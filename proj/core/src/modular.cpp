#include "heegner/modular.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "heegner/errors.hpp"

namespace heegner {

namespace {

mpq_class parse_decimal(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  mpz_class mant = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      mant = mant * 10 + (ch - '0');
      if (dot) ++scale;
      digits = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  long ex = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    size_t used = 0;
    try {
      ex = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw ParameterError("bad exponent in decimal: " + s);
    }
    i += used;
  }
  if (!digits || i != s.size()) throw ParameterError("not a decimal number: " + s);
  long e = ex - scale;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  mpq_class q = e >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

void addmul(Complex& acc, const Complex& z, const mpz_class& k, Real& tmp) {
  mpfr_mul_z(tmp.raw(), z.re().raw(), k.get_mpz_t(), MPFR_RNDN);
  acc.re() += tmp;
  if (!z.im().is_zero()) {
    mpfr_mul_z(tmp.raw(), z.im().raw(), k.get_mpz_t(), MPFR_RNDN);
    acc.im() += tmp;
  }
}

void require_regime(const TauPoint& tau, const PrecisionContext& ctx, double min_im) {
  double y = tau.im(ctx).to_double();
  if (!(y >= min_im)) {
    std::ostringstream os;
    os << "Im(tau) = " << y << " below the q-series regime bound " << min_im;
    throw RegimeError(os.str());
  }
}

// Sigma_{k}(n) for n <= N.
std::vector<mpz_class> divisor_sums(long n_max, unsigned long k) {
  std::vector<mpz_class> s(n_max + 1, 0);
  for (long d = 1; d <= n_max; ++d) {
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
    for (long m = d; m <= n_max; m += d) s[m] += dk;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- TauPoint

TauPoint TauPoint::exact(const mpq_class& x, const mpq_class& y2) {
  if (y2 <= 0) throw DomainError("tau must lie in the upper half plane");
  TauPoint t;
  t.x_ = x;
  t.y2_ = y2;
  return t;
}

TauPoint TauPoint::numeric(const Complex& tau) {
  if (tau.im().sign() <= 0) throw DomainError("tau must lie in the upper half plane");
  TauPoint t;
  t.tau_ = tau;
  return t;
}

TauPoint TauPoint::from_decimal(const std::string& x, const std::string& y) {
  mpq_class yq = parse_decimal(y);
  if (yq <= 0) throw DomainError("tau must lie in the upper half plane");
  return exact(parse_decimal(x), yq * yq);
}

Complex TauPoint::value(const PrecisionContext& ctx) const {
  const mpfr_prec_t p = ctx.working_bits();
  if (x_) return Complex(Real(*x_, p), sqrt(Real(*y2_, p)));
  return round_to(*tau_, p);
}

Real TauPoint::re(const PrecisionContext& ctx) const {
  if (x_) return Real(*x_, ctx.working_bits());
  return round_to(*tau_, ctx.working_bits()).re();
}

Real TauPoint::im(const PrecisionContext& ctx) const {
  if (x_) return sqrt(Real(*y2_, ctx.working_bits()));
  return round_to(*tau_, ctx.working_bits()).im();
}

Complex TauPoint::q_power(const mpq_class& m, const PrecisionContext& ctx) const {
  const mpfr_prec_t p = ctx.working_bits();
  Real two_pi = const_pi(p) * 2;
  if (x_) {
    Complex phase = exp_i_pi(mpq_class(2 * m * *x_), p);
    Real mag = exp(-(two_pi * im(ctx) * m));
    return phase * mag;
  }
  Complex t = value(ctx);
  Complex arg_ = Complex(-(t.im() * two_pi), t.re() * two_pi) * m;
  return exp(arg_);
}

TauPoint TauPoint::translated(long k) const {
  if (x_) return exact(*x_ + k, *y2_);
  return numeric(*tau_ + k);
}

TauPoint TauPoint::halved_plus(long k) const {
  if (x_) return exact((*x_ + k) / 2, *y2_ / 4);
  Complex t = *tau_ + k;
  t.re() /= 2;
  t.im() /= 2;
  return numeric(t);
}

std::string TauPoint::to_string(long digits) const {
  std::ostringstream os;
  if (x_) {
    os << x_->get_str() << " + i*sqrt(" << y2_->get_str() << ")";
  } else {
    os << tau_->to_string(digits);
  }
  return os.str();
}

TauPoint HeegnerPoint::tau() const {
  if (a <= 0) throw DomainError("Heegner point needs a > 0");
  if (d() <= 0) throw DomainError("Heegner point needs 4ac - b^2 > 0");
  mpq_class x(-b, 2 * a);
  x.canonicalize();
  mpq_class y2(d(), 4 * a * a);
  y2.canonicalize();
  return TauPoint::exact(x, y2);
}

std::string HeegnerPoint::to_string() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

std::string to_string(RegionId r) {
  switch (r) {
    case RegionId::C_inf: return "inf";
    case RegionId::C_one: return "one";
    case RegionId::C_zero: return "zero";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Indeterminate: return "indeterminate";
  }
  return "?";
}

RegionId region_from_string(const std::string& s) {
  if (s == "inf") return RegionId::C_inf;
  if (s == "one") return RegionId::C_one;
  if (s == "zero") return RegionId::C_zero;
  throw ParameterError("unknown region '" + s + "' (expected inf, one or zero)");
}

// ---------------------------------------------------------------- reduction

Reduction reduce_tau(const TauPoint& tau, const PrecisionContext& ctx) {
  std::array<long, 4> m{1, 0, 0, 1};
  auto shift = [&](long k) { m = {m[0] - k * m[2], m[1] - k * m[3], m[2], m[3]}; };
  auto invert = [&]() { m = {-m[2], -m[3], m[0], m[1]}; };

  if (tau.is_exact()) {
    mpq_class x = *tau.exact_re();
    mpq_class y2 = *tau.exact_im2();
    for (int it = 0; it < 10000; ++it) {
      mpq_class xh = x + mpq_class(1, 2);
      mpz_class k;
      mpz_fdiv_q(k.get_mpz_t(), xh.get_num_mpz_t(), xh.get_den_mpz_t());
      if (k != 0) {
        x -= k;
        shift(k.get_si());
      }
      mpq_class r2 = x * x + y2;
      if (r2 >= 1) break;
      x = -x / r2;
      y2 = y2 / (r2 * r2);
      invert();
    }
    return {TauPoint::exact(x, y2), m};
  }

  Complex t = tau.value(ctx);
  Real one(1, t.prec());
  for (int it = 0; it < 10000; ++it) {
    Real xh = t.re() + Real(mpq_class(1, 2), t.prec());
    Real fl(t.prec());
    mpfr_floor(fl.raw(), xh.raw());
    long k = mpfr_get_si(fl.raw(), MPFR_RNDN);
    if (k != 0) {
      t = t - k;
      shift(k);
    }
    Real r2 = t.re() * t.re() + t.im() * t.im();
    if (r2 >= one) break;
    t = Complex(-t.re() / r2, t.im() / r2);
    invert();
  }
  return {TauPoint::numeric(t), m};
}

// ---------------------------------------------------------------- q-series

long eisenstein_terms(const PrecisionContext& ctx, double im_tau) {
  const double ln2 = std::log(2.0);
  const double w = static_cast<double>(ctx.working_bits());
  long n = static_cast<long>(std::ceil((w + 32) * ln2 / (2 * M_PI * im_tau))) + 16;
  const double log_r = -2 * M_PI * im_tau;
  const double target = -(w + 8) * ln2 - std::log(504.0);
  for (;; n += 8) {
    double n1 = n + 1.0;
    double ratio = std::exp(log_r + 6 * std::log((n1 + 1) / n1));
    if (ratio < 1) {
      double log_tail = 6 * std::log(n1) + n1 * log_r - std::log(1 - ratio);
      if (log_tail < target) return n;
    }
  }
}

EisensteinValues eisenstein_all(const TauPoint& tau, const PrecisionContext& ctx) {
  require_regime(tau, ctx, 0.3);
  const long n_terms = eisenstein_terms(ctx, tau.im(ctx).to_double());
  const PrecisionContext wctx = ctx.for_series(n_terms).widened(16);
  const mpfr_prec_t p = wctx.working_bits();

  auto s1 = divisor_sums(n_terms, 1);
  auto s3 = divisor_sums(n_terms, 3);
  auto s5 = divisor_sums(n_terms, 5);

  Complex q = tau.q_power(1, wctx);
  Complex qn = q;
  Complex a1(p), a3(p), a5(p);
  Real tmp(p);
  for (long n = 1; n <= n_terms; ++n) {
    addmul(a1, qn, s1[n], tmp);
    addmul(a3, qn, s3[n], tmp);
    addmul(a5, qn, s5[n], tmp);
    qn *= q;
  }
  const mpfr_prec_t out = ctx.working_bits();
  EisensteinValues ev{round_to(1 - a1 * 24, out), round_to(a3 * 240 + 1, out), round_to(1 - a5 * 504, out), n_terms};
  return ev;
}

Complex eisenstein(int k, const TauPoint& tau, const PrecisionContext& ctx) {
  if (k != 2 && k != 4 && k != 6) throw ParameterError("eisenstein: weight must be 2, 4 or 6");
  EisensteinValues e = eisenstein_all(tau, ctx);
  return k == 2 ? e.e2 : k == 4 ? e.e4 : e.e6;
}

Complex dedekind_eta(const TauPoint& tau, const PrecisionContext& ctx) {
  require_regime(tau, ctx, 0.3);
  const PrecisionContext wctx = ctx.widened(24);
  const mpfr_prec_t p = wctx.working_bits();
  const double y = tau.im(ctx).to_double();
  const double max_exp = (p + 8) * std::log(2.0) / (2 * M_PI * y) + 2;

  Complex prod(Real(1, p));
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    if (e1 > max_exp) break;
    long e2 = k * (3 * k + 1) / 2;
    Complex t = tau.q_power(e1, wctx);
    t += tau.q_power(e2, wctx);
    if (k % 2) prod -= t;
    else prod += t;
  }
  Complex r = tau.q_power(mpq_class(1, 24), wctx) * prod;
  return round_to(r, ctx.working_bits());
}

Complex weber_f(const TauPoint& tau, const PrecisionContext& ctx) {
  require_regime(tau, ctx, 0.6);
  const mpfr_prec_t p = ctx.working_bits();
  Complex num = dedekind_eta(tau.halved_plus(1), ctx);
  Complex den = dedekind_eta(tau, ctx);
  return exp_i_pi(mpq_class(-1, 24), p) * num / den;
}

Complex discriminant_tau(const TauPoint& tau, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex eta = dedekind_eta(tau, ctx);
  Complex eta24 = pow(eta, 24L);
  EisensteinValues e = eisenstein_all(tau, ctx);
  Complex e4_3 = e.e4 * e.e4 * e.e4;
  Complex quot = (e4_3 - e.e6 * e.e6) * mpq_class(1, 1728);
  Real diff = abs(quot - eta24);
  Real tol = epsilon_bits(ctx.working_bits() - 24, p) * (abs(e4_3) + Real(1, p));
  if (diff > tol) {
    throw ConsistencyFault("discriminant: eta^24 and (E4^3 - E6^2)/1728 disagree by " + diff.to_string(6));
  }
  Real two_pi = const_pi(p) * 2;
  Real f = two_pi * two_pi;
  f = f * f * f;
  f = f * f;
  return eta24 * f;
}

ModularData modular_data(const TauPoint& tau, const PrecisionContext& ctx) {
  // E4^3 - E6^2 = 1728 q + ... cancels about 2 pi Im(tau) / ln 2 bits.
  const double y = tau.im(ctx).to_double();
  const long extra = static_cast<long>(std::ceil(2 * M_PI * std::max(y, 0.0) / std::log(2.0))) + 8;
  const PrecisionContext wctx = ctx.widened(extra);
  EisensteinValues e = eisenstein_all(tau, wctx);
  Complex e4_3 = e.e4 * e.e4 * e.e4;
  Complex den = e4_3 - e.e6 * e.e6;
  Complex J = e4_3 / den;
  const mpfr_prec_t p = ctx.working_bits();
  return {round_to(e.e2, p), round_to(e.e4, p), round_to(e.e6, p), round_to(J, p), tau.im(ctx)};
}

Complex klein_J(const TauPoint& tau, const PrecisionContext& ctx) { return modular_data(tau, ctx).J; }

Complex j_invariant(const TauPoint& tau, const PrecisionContext& ctx) { return klein_J(tau, ctx) * 1728; }

namespace {

bool numerically_zero(const Complex& z, const PrecisionContext& ctx) {
  return abs(z) < epsilon_bits(ctx.working_bits() - 32, ctx.working_bits());
}

}  // namespace

Complex s2_from(const ModularData& m, const PrecisionContext& ctx) {
  if (numerically_zero(m.e6, ctx)) throw PoleError("s2: E6(tau) = 0 (tau equivalent to i)");
  const mpfr_prec_t p = ctx.working_bits();
  Real corr = Real(3, p) / (const_pi(p) * m.im_tau);
  Complex t = m.e2 - Complex(corr);
  return m.e4 / m.e6 * t;
}

Complex s2(const TauPoint& tau, const PrecisionContext& ctx) { return s2_from(modular_data(tau, ctx), ctx); }

Complex dJ_dtau_from(const ModularData& m, const PrecisionContext& ctx) {
  if (numerically_zero(m.e4, ctx)) throw PoleError("dJ/dtau: E4(tau) = 0 (tau equivalent to rho)");
  const mpfr_prec_t p = ctx.working_bits();
  Complex f(Real(p), -(const_pi(p) * 2));
  return f * m.J * m.e6 / m.e4;
}

Complex dJ_dtau(const TauPoint& tau, const PrecisionContext& ctx) { return dJ_dtau_from(modular_data(tau, ctx), ctx); }

// ---------------------------------------------------------------- exact q-expansions

bool ramanujan_ode_qcheck(long n) {
  if (n < 0) return true;
  auto s1 = divisor_sums(n, 1);
  auto s3 = divisor_sums(n, 3);
  auto s5 = divisor_sums(n, 5);
  std::vector<mpz_class> e2(n + 1), e4(n + 1), e6(n + 1);
  e2[0] = e4[0] = e6[0] = 1;
  for (long k = 1; k <= n; ++k) {
    e2[k] = -24 * s1[k];
    e4[k] = 240 * s3[k];
    e6[k] = -504 * s5[k];
  }
  auto conv = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, long k) {
    mpz_class s = 0;
    for (long i = 0; i <= k; ++i) s += a[i] * b[k - i];
    return s;
  };
  for (long k = 0; k <= n; ++k) {
    if (3 * k * e4[k] != conv(e2, e4, k) - e6[k]) return false;
    if (2 * k * e6[k] != conv(e2, e6, k) - conv(e4, e4, k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- regions

Membership domain_member(const TauPoint& tau, RegionId r, const PrecisionContext& ctx) {
  require_regime(tau, ctx, 0.3);
  return domain_member(tau, modular_data(tau, ctx).J, r, ctx);
}

Membership domain_member(const TauPoint& tau, const Complex& J, RegionId r, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  const Real tol = epsilon_bits(ctx.target_bits / 2, p);
  const Real one(1, p);
  bool boundary = false;

  if (tau.is_exact()) {
    const mpq_class& x = *tau.exact_re();
    const mpq_class& y2 = *tau.exact_im2();
    if (x > mpq_class(1, 2) || x < mpq_class(-1, 2)) return Membership::Out;
    if (x * x + y2 < 1) return Membership::Out;
    if (r == RegionId::C_zero && x >= 0) return Membership::Out;
  } else {
    Complex t = tau.value(ctx);
    Real ax = abs(t.re()) - Real(mpq_class(1, 2), p);
    if (ax > tol) return Membership::Out;
    Real r2 = t.re() * t.re() + t.im() * t.im() - one;
    if (r2 < -tol) return Membership::Out;
    if (r2 <= tol) boundary = true;
    if (r == RegionId::C_zero) {
      if (t.re() > tol) return Membership::Out;
      if (t.re() >= -tol) boundary = true;
    }
  }

  Real mag(p);
  switch (r) {
    case RegionId::C_inf:
      if (J.is_zero()) return Membership::Out;
      mag = Real(1, p) / abs(J);
      break;
    case RegionId::C_one:
      if (J.is_zero()) return Membership::Out;
      mag = abs(J - 1) / abs(J);
      break;
    case RegionId::C_zero: {
      Complex jm1 = J - 1;
      if (jm1.is_zero()) return Membership::Out;
      mag = abs(J) / abs(jm1);
      break;
    }
  }
  Real dist = mag - one;
  if (dist > tol) return Membership::Out;
  if (dist >= -tol || boundary) return Membership::Indeterminate;
  return Membership::In;
}

}  // namespace heegner
