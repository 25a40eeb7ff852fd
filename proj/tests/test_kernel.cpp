#include <random>

#include "heegner/errors.hpp"
#include "heegner/fastseries.hpp"
#include "heegner/kernel.hpp"
#include "test_support.hpp"

using namespace heegner;
using heegner::test::close;
using heegner::test::small;

TEST(Precision, TargetBits) {
  EXPECT_EQ(make_context(10).target_bits, 34);
  EXPECT_EQ(make_context(1000).target_bits, 3322);
  EXPECT_EQ(make_context(10).working_bits(), 34 + 96);
  EXPECT_THROW(make_context(0), ParameterError);
}

TEST(Precision, SeriesGuardBits) {
  PrecisionContext c = make_context(100);
  EXPECT_EQ(c.for_series(1024).working_bits(), c.working_bits() + 10);
  EXPECT_EQ(c.widened(7).target_bits, c.target_bits);
}

TEST(Complex, ArgBranch) {
  const mpfr_prec_t p = 200;
  Complex neg(Real(-1, p), Real(p));
  EXPECT_TRUE(close(Complex(arg(neg)), Complex(const_pi(p)), 55));
  Complex negz(Real(-1, p), -Real(p));
  EXPECT_GT(arg(negz).to_double(), 0);
}

TEST(Complex, PrincipalRoot) {
  const mpfr_prec_t p = 300;
  Complex r = principal_root(Complex(mpq_class(-16), p), 2);
  EXPECT_TRUE(close(r, Complex(Real(p), Real(4, p)), 80));
  EXPECT_TRUE(close(principal_root(Complex(mpq_class(1), p), 6), Complex(mpq_class(1), p), 80));

  Complex z = Complex(mpq_class(-1323, 8), p);
  Complex oracle = exp(log(z) / Complex(mpq_class(2), p));
  Complex got = principal_root(z, 2);
  EXPECT_TRUE(close(got, oracle, 80));
  EXPECT_NEAR(got.im().to_double(), 12.8598, 1e-4);
  EXPECT_TRUE(principal_root(Complex(p), 3).is_zero());
}

TEST(Complex, RootPowersRecover) {
  const mpfr_prec_t p = 300;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int k = 0; k < 20; ++k) {
    Complex z(Real(mpq_class(d(rng), 7), p), Real(mpq_class(d(rng) | 1, 3), p));
    for (long n : {2L, 3L, 6L, 12L}) EXPECT_TRUE(close(pow(principal_root(z, n), n), z, 80));
  }
}

TEST(Gamma, SpecialValues) {
  PrecisionContext ctx = make_context(80);
  const mpfr_prec_t p = ctx.working_bits();
  EXPECT_TRUE(close(Complex(gamma_ap(1, ctx)), Complex(mpq_class(1), p), 75));
  EXPECT_TRUE(close(Complex(gamma_ap(mpq_class(1, 2), ctx)), Complex(sqrt(pi_value(ctx))), 75));
  Real refl = gamma_ap(mpq_class(1, 3), ctx) * gamma_ap(mpq_class(2, 3), ctx);
  EXPECT_TRUE(close(Complex(refl), Complex(pi_value(ctx) * 2 / sqrt(Real(3, p))), 75));
  EXPECT_THROW(gamma_ap(0, ctx), ParameterError);
  EXPECT_THROW(gamma_ap(mpq_class(-1, 2), ctx), ParameterError);
}

TEST(Gamma, MatchesMpfr) {
  PrecisionContext ctx = make_context(60);
  for (mpq_class x : {mpq_class(1, 4), mpq_class(5, 7), mpq_class(37, 3)}) {
    Real oracle(x, ctx.working_bits());
    mpfr_gamma(oracle.raw(), oracle.raw(), MPFR_RNDN);
    EXPECT_TRUE(close(Complex(gamma_ap(x, ctx)), Complex(oracle), 55));
  }
}

TEST(Gamma, Recurrence) {
  PrecisionContext ctx = make_context(50);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(1, 5000), den(1, 100);
  for (int k = 0; k < 100; ++k) {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    if (x > 50) x /= 100;
    Complex lhs(gamma_ap(x + 1, ctx));
    Complex rhs(gamma_ap(x, ctx) * x);
    EXPECT_TRUE(close(lhs, rhs, 45)) << x.get_str();
  }
}

TEST(Digamma, Values) {
  PrecisionContext ctx = make_context(50);
  const mpfr_prec_t p = ctx.working_bits();
  EXPECT_TRUE(small(digamma_ap(2, ctx) - digamma_ap(1, ctx) - Real(1, p), 45));
  Real ln2 = const_log2(p);
  EXPECT_TRUE(close(Complex(digamma_ap(mpq_class(1, 2), ctx) - digamma_ap(1, ctx)), Complex(-(ln2 * 2)), 45));
  Real euler(p);
  mpfr_const_euler(euler.raw(), MPFR_RNDN);
  EXPECT_TRUE(close(Complex(digamma_ap(1, ctx)), Complex(-euler), 45));

  mpq_class big = mpq_class(1000000) + mpq_class(1, 3);
  Real x(big, p);
  Real approx = log(x) - Real(1, p) / (x * 2);
  EXPECT_TRUE(small(digamma_ap(big, ctx) - approx, 12));
  EXPECT_THROW(digamma_ap(0, ctx), ParameterError);
}

TEST(Digamma, Recurrence) {
  PrecisionContext ctx = make_context(50);
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> num(1, 3000), den(1, 97);
  for (int k = 0; k < 100; ++k) {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    Real d = digamma_ap(x + 1, ctx) - digamma_ap(x, ctx) - Real(1 / x, ctx.working_bits());
    EXPECT_TRUE(small(d, 45)) << x.get_str();
  }
}

TEST(Bernoulli, FirstValues) {
  auto b = bernoulli_numbers(5);
  ASSERT_GE(b->size(), 5u);
  EXPECT_EQ((*b)[0], mpq_class(1, 6));
  EXPECT_EQ((*b)[1], mpq_class(-1, 30));
  EXPECT_EQ((*b)[2], mpq_class(1, 42));
  EXPECT_EQ((*b)[3], mpq_class(-1, 30));
  EXPECT_EQ((*b)[4], mpq_class(5, 66));
}

TEST(Kernel, MonotonePrecision) {
  Real lo = gamma_ap(mpq_class(1, 4), make_context(40));
  Real hi = gamma_ap(mpq_class(1, 4), make_context(120));
  EXPECT_TRUE(small(round_to(hi, lo.prec()) - lo, 39));
}

TEST(Kernel, RelDiff) {
  const mpfr_prec_t p = 100;
  EXPECT_EQ(rel_diff(Complex(mpq_class(3), p), Complex(mpq_class(2), p)).to_double(), 0.5);
  EXPECT_EQ(rel_diff(Complex(mpq_class(3), p), Complex(p)).to_double(), 3.0);
}
