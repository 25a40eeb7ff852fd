#include "heegner/fastseries.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <thread>

#include "heegner/errors.hpp"

namespace heegner {

mpz_class SeriesTermSpec::p(long n) const {
  if (n == 0) return 1;
  mpz_class r = 8;
  r *= 6 * n - 5;
  r *= 6 * n - 3;
  r *= 6 * n - 1;
  r *= C.get_den();
  if (sign < 0) r = -r;
  return r;
}

mpz_class SeriesTermSpec::q(long n) const {
  if (n == 0) return 1;
  mpz_class r = n;
  r = r * r * r;
  r *= C.get_num();
  return r;
}

mpz_class SeriesTermSpec::a(long n) const { return A.get_num() + n * mpz_class(A.get_den()); }

mpq_class SeriesTermSpec::ratio(long n) const {
  mpq_class r(p(n + 1), q(n + 1));
  r.canonicalize();
  return r;
}

mpq_class SeriesTermSpec::term(long n) const {
  mpz_class f6, f3, f1;
  mpz_fac_ui(f6.get_mpz_t(), static_cast<unsigned long>(6 * n));
  mpz_fac_ui(f3.get_mpz_t(), static_cast<unsigned long>(3 * n));
  mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class base(sign, 1);
  base /= C;
  mpq_class bn = 1;
  for (long k = 0; k < n; ++k) bn *= base;
  mpq_class t(f6, f3 * f1 * f1 * f1);
  t.canonicalize();
  return t * bn;
}

mpq_class SplitNode::value(const SeriesTermSpec& spec) const {
  mpq_class v(T, Q * spec.A.get_den());
  v.canonicalize();
  return v;
}

SplitNode merge(const SplitNode& l, const SplitNode& r) {
  SplitNode out;
  out.n0 = l.n0;
  out.n1 = r.n1;
  out.P = l.P * r.P;
  out.Q = l.Q * r.Q;
  out.T = l.T * r.Q + l.P * r.T;
  return out;
}

namespace {

SplitNode leaf(const SeriesTermSpec& spec, long n) {
  SplitNode s;
  s.n0 = n;
  s.n1 = n + 1;
  s.P = spec.p(n);
  s.Q = spec.q(n);
  s.T = spec.a(n) * s.P;
  return s;
}

SplitNode split_rec(const SeriesTermSpec& spec, long n0, long n1, int threads) {
  if (n1 - n0 == 1) return leaf(spec, n0);
  long m = n0 + (n1 - n0) / 2;
  if (threads > 1 && n1 - n0 > 64) {
    auto right = std::async(std::launch::async, split_rec, std::cref(spec), m, n1, threads / 2);
    SplitNode left = split_rec(spec, n0, m, threads - threads / 2);
    return merge(left, right.get());
  }
  return merge(split_rec(spec, n0, m, 1), split_rec(spec, m, n1, 1));
}

}  // namespace

SplitNode binary_split(const SeriesTermSpec& spec, long n0, long n1, int threads) {
  if (n0 < 0 || n1 <= n0) throw ParameterError("binary_split: need 0 <= n0 < n1");
  if (spec.C == 0) throw ParameterError("binary_split: C must be nonzero");
  return split_rec(spec, n0, n1, std::max(1, threads));
}

mpq_class direct_sum(const SeriesTermSpec& spec, long n0, long n1) {
  mpq_class base = n0 == 0 ? mpq_class(1) : spec.term(n0 - 1);
  mpq_class s = 0;
  for (long n = n0; n < n1; ++n) s += (spec.A + n) * spec.term(n);
  return s / base;
}

long series_terms(const SeriesTermSpec& spec, long working_bits) {
  mpq_class ac = abs(spec.C);
  if (ac <= 1728) throw DomainError("series diverges: |C| must exceed 12^3");
  double lr = std::log(ac.get_d() / 1728.0);
  return static_cast<long>(std::ceil(working_bits * std::log(2.0) / lr)) + 8;
}

int default_threads() {
  const char* env = std::getenv("HEEGNER_PI_THREADS");
  if (env != nullptr && *env != '\0') {
    long v = std::strtol(env, nullptr, 10);
    return v <= 0 ? 1 : static_cast<int>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

Real sum_series(const SeriesTermSpec& spec, const PrecisionContext& ctx, long terms) {
  if (terms == 0) throw ParameterError("sum_series: zero terms requested");
  const long w = ctx.working_bits();
  long n = terms < 0 ? series_terms(spec, w) : terms;
  SplitNode node = binary_split(spec, 0, n, default_threads());
  Real t(node.T, w);
  Real q(mpz_class(node.Q * spec.A.get_den()), w);
  return t / q;
}

SeriesTermSpec chudnovsky_spec() {
  mpz_class c = 640320;
  return {mpq_class(13591409, 545140134), mpq_class(c * c * c), -1};
}

SeriesTermSpec spec_67() {
  mpz_class c = 5280;
  return {mpq_class(10177, 261702), mpq_class(c * c * c), -1};
}

Real pi_value(const PrecisionContext& ctx) {
  static std::mutex mu;
  static std::map<long, Real> cache;
  const long w = ctx.working_bits();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
  }
  const long p = w + 32;
  SeriesTermSpec spec = chudnovsky_spec();
  SplitNode node = binary_split(spec, 0, series_terms(spec, p), default_threads());
  // 12 * 545140134 * S = 640320^{3/2} / pi, S = T / (Q * 545140134).
  Real num = Real(640320, p) * sqrt(Real(640320, p)) * Real(node.Q, p);
  Real den = Real(node.T, p) * 12;
  Real pi = num / den;
  Real out = round_to(pi, w);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() < 64) cache.emplace(w, out);
  return out;
}

namespace {

std::string truncated_digits(const Real& x, long digits) {
  // Two spare digits are cut off after formatting toward zero.
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits + 2), x.raw(), MPFR_RNDZ);
  std::string m(s);
  mpfr_free_str(s);
  if (e != 1) throw PrecisionError("pi formatting: unexpected exponent");
  m.resize(static_cast<size_t>(digits));
  if (digits == 1) return m;
  return m.substr(0, 1) + "." + m.substr(1);
}

long pi_bits(long digits) { return static_cast<long>(std::ceil((digits + 12) * std::log2(10.0))) + 32; }

}  // namespace

std::string compute_pi(long decimal_digits) {
  if (decimal_digits < 1) throw ParameterError("compute_pi: decimal_digits must be >= 1");
  PrecisionContext ctx;
  ctx.decimal_digits = decimal_digits;
  ctx.target_bits = pi_bits(decimal_digits);
  ctx.guard_bits = 64;
  return truncated_digits(pi_value(ctx), decimal_digits);
}

std::string cross_check_pi(long decimal_digits) {
  if (decimal_digits < 1) throw ParameterError("cross_check_pi: decimal_digits must be >= 1");
  const long p = pi_bits(decimal_digits) + 64;
  SeriesTermSpec spec = spec_67();
  SplitNode node = binary_split(spec, 0, series_terms(spec, p), default_threads());
  Real s = Real(node.T, p) / Real(mpz_class(node.Q * spec.A.get_den()), p);
  // s = 880 sqrt(330) / (130851 pi)
  Real pi = Real(880, p) * sqrt(Real(330, p)) / (Real(130851, p) * s);
  return truncated_digits(pi, decimal_digits);
}

}  // namespace heegner
