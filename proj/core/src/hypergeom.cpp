#include "heegner/hypergeom.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "heegner/errors.hpp"

namespace heegner {

bool HypParams::logarithmic_at_1() const {
  mpq_class d = c - a - b;
  return d.get_den() == 1;
}

mpq_class pochhammer(const mpq_class& alpha, long n) {
  if (n < 0) throw ParameterError("pochhammer: n must be nonnegative");
  mpq_class r = 1;
  mpq_class t = alpha;
  for (long k = 0; k < n; ++k, t += 1) r *= t;
  return r;
}

std::pair<mpq_class, mpq_class> sextuple_identity(long n) {
  mpq_class lhs = pochhammer(mpq_class(1, 6), n) * pochhammer(mpq_class(5, 6), n) * pochhammer(mpq_class(1, 2), n);
  mpz_class f6, f3, p12;
  mpz_fac_ui(f6.get_mpz_t(), static_cast<unsigned long>(6 * n));
  mpz_fac_ui(f3.get_mpz_t(), static_cast<unsigned long>(3 * n));
  mpz_ui_pow_ui(p12.get_mpz_t(), 12, static_cast<unsigned long>(3 * n));
  mpq_class rhs(f6, f3 * p12);
  rhs.canonicalize();
  return {lhs, rhs};
}

namespace {

bool nonpositive_integer(const mpq_class& q) { return q.get_den() == 1 && q <= 0; }

Real three_quarters(mpfr_prec_t p) { return Real(mpq_class(3, 4), p); }

bool in_direct(const Complex& z) { return abs(z) <= three_quarters(z.prec()); }

bool in_connection(const HypParams& p, const Complex& z) {
  if (!p.c_equals_a_plus_b()) return false;
  if (z.im().is_zero() && z.re() >= Real(1, z.prec())) return false;
  Complex w = 1 - z;
  return abs(w) <= three_quarters(z.prec());
}

double qabs(const mpq_class& q) { return std::fabs(q.get_d()); }

// sup over m >= n of prod |m + num_i| / |m + den_i|, with the n! factor folded
// in as den = 1. Returns +inf while the bound is not yet valid.
double ratio_sup(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den, long n) {
  double r = 1.0;
  size_t k = std::max(num.size(), den.size());
  for (size_t i = 0; i < k; ++i) {
    double a = i < num.size() ? qabs(num[i]) : 0.0;
    double b = i < den.size() ? qabs(den[i]) : 0.0;
    double nn = static_cast<double>(n);
    if (nn <= b) return INFINITY;
    r *= std::max(1.0, (nn + a) / (nn - b));
  }
  return r * (1.0 + 1e-12);
}

HypEval pfq_direct(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den_in,
                   const Complex& z, const PrecisionContext& ctx) {
  for (const auto& d : den_in) {
    if (nonpositive_integer(d)) throw ParameterError("hypergeometric lower parameter is a nonpositive integer");
  }
  const long p = ctx.working_bits() + 32;
  std::vector<mpq_class> den = den_in;
  den.push_back(1);

  Complex zz = round_to(z, p);
  Complex term(Real(1, p));
  Complex sum(Real(1, p));
  if (z.is_zero()) return {sum, HypRegime::direct_series, 1};

  const double az = abs(z).to_double();
  Real eps = epsilon_bits(p, 64);
  long n = 0;
  for (;; ++n) {
    mpq_class r = 1;
    for (const auto& a : num) r *= a + n;
    for (const auto& d : den) r /= d + n;
    if (r == 0) break;
    term *= zz;
    term *= r;
    sum += term;
    double rho = ratio_sup(num, den, n + 1) * az;
    if (rho < 1.0) {
      Real bound = abs(term);
      mpfr_mul_d(bound.raw(), bound.raw(), rho / (1.0 - rho), MPFR_RNDU);
      if (bound <= abs(sum) * eps) break;
    }
    if (n > 10000000) throw PrecisionError("direct hypergeometric series did not converge");
  }
  return {round_to(sum, ctx.working_bits()), HypRegime::direct_series, n + 2};
}

struct KeyLess {
  bool operator()(const std::pair<mpq_class, long>& x, const std::pair<mpq_class, long>& y) const {
    if (x.second != y.second) return x.second < y.second;
    return cmp(x.first, y.first) < 0;
  }
};

template <class F>
Real cached(std::map<std::pair<mpq_class, long>, Real, KeyLess>& m, std::mutex& mu, const mpq_class& x,
            const PrecisionContext& ctx, F f) {
  std::pair<mpq_class, long> key(x, ctx.working_bits());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = m.find(key);
    if (it != m.end()) return it->second;
  }
  Real v = f(x, ctx);
  std::lock_guard<std::mutex> lock(mu);
  m.emplace(key, v);
  return v;
}

Real psi_cached(const mpq_class& x, const PrecisionContext& ctx) {
  static std::mutex mu;
  static std::map<std::pair<mpq_class, long>, Real, KeyLess> m;
  return cached(m, mu, x, ctx, digamma_ap);
}

Real gamma_cached(const mpq_class& x, const PrecisionContext& ctx) {
  static std::mutex mu;
  static std::map<std::pair<mpq_class, long>, Real, KeyLess> m;
  return cached(m, mu, x, ctx, gamma_ap);
}

// c = a + b expansion around z = 1 and its first two z-derivatives.
HypEval connection_sum(const HypParams& hp, const Complex& z, const PrecisionContext& ctx, int order) {
  const mpq_class& a = hp.a;
  const mpq_class& b = hp.b;
  if (a <= 0 || b <= 0) throw ParameterError("connection formula needs positive a, b");
  const PrecisionContext wctx = ctx.widened(32);
  const long p = wctx.working_bits();

  Complex w = 1 - round_to(z, p);
  Complex L = log(w);
  Real K = gamma_cached(a + b, wctx) / (gamma_cached(a, wctx) * gamma_cached(b, wctx));

  Real h = psi_cached(mpq_class(1), wctx) * 2 - psi_cached(a, wctx) - psi_cached(b, wctx);
  Real cn(1, p);
  Complex wpow(Real(1, p));
  if (order >= 1) wpow = wpow / w;
  if (order >= 2) wpow = wpow / w;

  const double aw = abs(w).to_double();
  const double al = abs(L).to_double();
  const double amin = std::min(a.get_d(), b.get_d());
  const double drift_c = std::fabs(1 - a.get_d()) + std::fabs(1 - b.get_d());
  Real eps = epsilon_bits(p, 64);
  std::vector<mpq_class> num{a, b};
  std::vector<mpq_class> den{mpq_class(1), mpq_class(1)};

  Complex sum(p);
  long n = 0;
  for (;; ++n) {
    Complex hl = Complex(h) - L;
    Complex poly(p);
    if (order == 0) {
      poly = hl;
    } else if (order == 1) {
      poly = hl * n - 1;
    } else {
      poly = hl * (n * (n - 1)) - (2 * n - 1);
    }
    Complex term = poly * wpow * cn;
    sum += term;

    if (n >= 2) {
      double rho = ratio_sup(num, den, n + 1) * aw * std::pow((n + 3.0) / (n + 2.0), 2);
      if (rho < 1.0) {
        double drift = (n + amin - 1 > 0) ? drift_c / (n + amin - 1) : INFINITY;
        double hmag = std::fabs(h.to_double()) + al + drift + 1.0;
        Real mag = abs(wpow) * abs(cn);
        double poly_b = std::pow(n + 2.0, order) * hmag + 2.0 * n + 3.0;
        mpfr_mul_d(mag.raw(), mag.raw(), poly_b * rho / (1.0 - rho), MPFR_RNDU);
        if (mag <= abs(sum) * eps) break;
      }
    }
    if (n > 10000000) throw PrecisionError("connection series did not converge");

    // advance to n + 1
    mpq_class ratio = (a + n) * (b + n) / mpq_class((n + 1) * (n + 1));
    cn *= ratio;
    h += Real(mpq_class(2, n + 1) - 1 / (a + n) - 1 / (b + n), p);
    wpow *= w;
  }
  Complex val = sum * K;
  if (order == 1) val = -val;
  return {round_to(val, ctx.working_bits()), HypRegime::connection_at_1, n + 1};
}

}  // namespace

HypRegime select_regime(const HypParams& p, const Complex& z) {
  if (in_direct(z)) return HypRegime::direct_series;
  if (in_connection(p, z)) return HypRegime::connection_at_1;
  throw RegimeError("2F1 argument outside both regimes (|z| <= 3/4, or |1-z| <= 3/4 with c = a+b)");
}

HypEval gauss_2f1_eval(const HypParams& p, const Complex& z, const PrecisionContext& ctx, int order,
                       std::optional<HypRegime> force) {
  if (order < 0 || order > 2) throw ParameterError("gauss_2f1_eval: order must be 0, 1 or 2");
  if (nonpositive_integer(p.c)) throw ParameterError("2F1: c is a nonpositive integer");
  HypRegime regime;
  if (force) {
    regime = *force;
    if (regime == HypRegime::direct_series && !in_direct(z)) throw RegimeError("forced direct regime needs |z| <= 3/4");
    if (regime == HypRegime::connection_at_1 && !in_connection(p, z)) {
      throw RegimeError("forced connection regime needs c = a+b, |1-z| <= 3/4, z off [1, inf)");
    }
  } else {
    regime = select_regime(p, z);
  }
  if (regime == HypRegime::connection_at_1) return connection_sum(p, z, ctx, order);

  mpq_class coef = pochhammer(p.a, order) * pochhammer(p.b, order) / pochhammer(p.c, order);
  HypEval e = pfq_direct({p.a + order, p.b + order}, {p.c + order}, z, ctx);
  if (order > 0) e.value *= coef;
  return e;
}

Complex gauss_2f1(const HypParams& p, const Complex& z, const PrecisionContext& ctx) {
  return gauss_2f1_eval(p, z, ctx, 0).value;
}

Complex gauss_2f1_dz(const HypParams& p, const Complex& z, const PrecisionContext& ctx) {
  return gauss_2f1_eval(p, z, ctx, 1).value;
}

Complex gauss_2f1_d2z(const HypParams& p, const Complex& z, const PrecisionContext& ctx) {
  return gauss_2f1_eval(p, z, ctx, 2).value;
}

Complex gen_3f2(const Hyp3F2Params& p, const Complex& z, const PrecisionContext& ctx) {
  if (!in_direct(z)) throw RegimeError("3F2 needs |z| <= 3/4");
  return pfq_direct({p.a1, p.a2, p.a3}, {p.b1, p.b2}, z, ctx).value;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto put = [&](long k, const char* sym) {
    if (k == 0) return;
    if (!first) os << (k > 0 ? "+" : "-");
    else if (k < 0) os << "-";
    long m = k < 0 ? -k : k;
    if (m != 1 || sym[0] == '\0') os << m;
    os << sym;
    first = false;
  };
  put(ka, "a");
  put(kb, "b");
  put(kc, "c");
  put(k0, "");
  if (first) os << "0";
  return os.str();
}

std::string LocalSolution::to_string() const {
  std::ostringstream os;
  const char* arg_s = arg == ArgumentMap::z ? "z" : arg == ArgumentMap::one_minus_z ? "1-z" : "1/z";
  if (z_exp.k0 || z_exp.ka || z_exp.kb || z_exp.kc) os << "z^(" << z_exp.to_string() << ") ";
  if (w_exp.k0 || w_exp.ka || w_exp.kb || w_exp.kc) os << "(1-z)^(" << w_exp.to_string() << ") ";
  os << "F(" << pa.to_string() << ", " << pb.to_string() << "; " << pc.to_string() << "; " << arg_s << ")";
  return os.str();
}

std::array<LocalSolution, 2> kummer_local_solutions(SingularPoint point) {
  const LinearForm zero{};
  switch (point) {
    case SingularPoint::zero:
      return {LocalSolution{zero, zero, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, ArgumentMap::z},
              LocalSolution{{1, 0, 0, -1}, zero, {1, 1, 0, -1}, {1, 0, 1, -1}, {2, 0, 0, -1}, ArgumentMap::z}};
    case SingularPoint::one:
      return {LocalSolution{zero, zero, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, -1}, ArgumentMap::one_minus_z},
              LocalSolution{zero, {0, -1, -1, 1}, {0, -1, 0, 1}, {0, 0, -1, 1}, {1, -1, -1, 1},
                            ArgumentMap::one_minus_z}};
    case SingularPoint::infinity:
      return {LocalSolution{{0, -1, 0, 0}, zero, {0, 1, 0, 0}, {1, 1, 0, -1}, {1, 1, -1, 0}, ArgumentMap::inverse_z},
              LocalSolution{{0, 0, -1, 0}, zero, {0, 0, 1, 0}, {1, 0, 1, -1}, {1, -1, 1, 0}, ArgumentMap::inverse_z}};
  }
  throw ParameterError("unknown singular point");
}

std::array<Complex, 3> LocalSolution::evaluate(const HypParams& p, const Complex& z,
                                               const PrecisionContext& ctx) const {
  const mpfr_prec_t prec = ctx.working_bits();
  HypParams q = params(p);
  Complex u(prec), du(prec), d2u(prec);
  switch (arg) {
    case ArgumentMap::z:
      u = z;
      du = Complex(Real(1, prec));
      break;
    case ArgumentMap::one_minus_z:
      u = 1 - z;
      du = Complex(Real(-1, prec));
      break;
    case ArgumentMap::inverse_z:
      u = 1 / z;
      du = -(u * u);
      d2u = u * u * u * 2;
      break;
  }
  Complex g0 = gauss_2f1_eval(q, u, ctx, 0).value;
  Complex g1 = gauss_2f1_eval(q, u, ctx, 1).value;
  Complex g2 = gauss_2f1_eval(q, u, ctx, 2).value;
  Complex h0 = g0;
  Complex h1 = g1 * du;
  Complex h2 = g2 * du * du + g1 * d2u;

  mpq_class alpha = z_exp.eval(p);
  mpq_class beta = w_exp.eval(p);
  Complex w = 1 - z;
  Complex phi = pow(z, alpha) * pow(w, beta);
  Complex s(prec);
  if (alpha != 0) s += (1 / z) * alpha;
  if (beta != 0) s -= (1 / w) * beta;
  Complex ds(prec);
  if (alpha != 0) ds -= (1 / (z * z)) * alpha;
  if (beta != 0) ds -= (1 / (w * w)) * beta;
  Complex phi1 = phi * s;
  Complex phi2 = phi * (s * s + ds);
  return {phi * h0, phi1 * h0 + phi * h1, phi2 * h0 + phi1 * h1 * 2 + phi * h2};
}

Complex hypergeometric_ode_residual(const HypParams& p, const Complex& z, const Complex& f, const Complex& df,
                                    const Complex& d2f) {
  Complex w = 1 - z;
  Complex r = z * w * d2f;
  Complex coef = Complex(Real(p.c, z.prec())) - z * mpq_class(p.a + p.b + 1);
  r += coef * df;
  r -= f * mpq_class(p.a * p.b);
  return r;
}

}  // namespace heegner
