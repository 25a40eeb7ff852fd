#include "heegner/errors.hpp"
#include "heegner/hypergeom.hpp"
#include "test_support.hpp"

using namespace heegner;
using heegner::test::close;
using heegner::test::small;

namespace {

const PrecisionContext ctx = make_context(100);
const mpfr_prec_t P = ctx.working_bits();

Complex C(const mpq_class& q) { return Complex(q, P); }

const std::vector<HypParams> catalog_params{{mpq_class(1, 12), mpq_class(5, 12), 1},
                                             {mpq_class(1, 12), mpq_class(5, 12), mpq_class(1, 2)},
                                             {mpq_class(1, 12), mpq_class(7, 12), mpq_class(2, 3)}};

}  // namespace

TEST(Pochhammer, Values) {
  EXPECT_EQ(pochhammer(mpq_class(7, 3), 0), 1);
  EXPECT_EQ(pochhammer(mpq_class(1, 6), 1) * pochhammer(mpq_class(5, 6), 1) * pochhammer(mpq_class(1, 2), 1),
            mpq_class(5, 72));
  // (p/q)_n = q^-n prod (qk + p - q), k = 1..n
  mpq_class prod = 1;
  for (long k = 1; k <= 6; ++k) prod *= mpq_class(7 * k + 3 - 7, 7);
  EXPECT_EQ(pochhammer(mpq_class(3, 7), 6), prod);
}

TEST(Sextuple, Exact) {
  EXPECT_EQ(sextuple_identity(0), std::make_pair(mpq_class(1), mpq_class(1)));
  EXPECT_EQ(sextuple_identity(1), std::make_pair(mpq_class(5, 72), mpq_class(5, 72)));
  auto [l, r] = sextuple_identity(50);
  EXPECT_EQ(l, r);
}

TEST(Params, LogarithmicFlag) {
  // c - a - b = 1/2 for the first set
  EXPECT_FALSE(catalog_params[0].logarithmic_at_1());
  EXPECT_TRUE(catalog_params[1].logarithmic_at_1());
  EXPECT_TRUE(catalog_params[2].logarithmic_at_1());
  EXPECT_TRUE(catalog_params[1].c_equals_a_plus_b());
  EXPECT_TRUE(catalog_params[2].c_equals_a_plus_b());
  EXPECT_FALSE((HypParams{mpq_class(1, 3), mpq_class(1, 5), mpq_class(7, 4)}.logarithmic_at_1()));
}

TEST(Gauss, ClosedForms) {
  EXPECT_TRUE(close(gauss_2f1(catalog_params[0], C(0), ctx), C(1), 95));
  HypParams p11{1, 1, 2};
  Real ln2 = const_log2(P);
  EXPECT_TRUE(close(gauss_2f1(p11, C(mpq_class(1, 2)), ctx), Complex(ln2 * 2), 95));
  // F(a, b; b; z) = (1 - z)^-a
  HypParams pb{mpq_class(1, 3), mpq_class(2, 5), mpq_class(2, 5)};
  EXPECT_TRUE(close(gauss_2f1(pb, C(mpq_class(-3, 5)), ctx), pow(C(mpq_class(8, 5)), mpq_class(-1, 3)), 95));
}

TEST(Gauss, ConnectionRegimeClosedForm) {
  HypParams p11{1, 1, 2};
  for (mpq_class z : {mpq_class(9, 10), mpq_class(999, 1000), mpq_class(999999999, 1000000000)}) {
    HypEval e = gauss_2f1_eval(p11, C(z), ctx);
    EXPECT_EQ(e.regime, HypRegime::connection_at_1);
    Complex oracle = -log(C(1 - z)) / C(z);
    EXPECT_TRUE(close(e.value, oracle, 95)) << z.get_str();
  }
}

TEST(Gauss, NearOneConverges) {
  HypParams p{mpq_class(1, 12), mpq_class(7, 12), mpq_class(2, 3)};
  mpq_class z(mpz_class("151931373056000"), mpz_class("151931373056001"));
  HypEval e = gauss_2f1_eval(p, C(z), ctx);
  EXPECT_EQ(e.regime, HypRegime::connection_at_1);
  // each term gains log10(1/|1-z|) ~ 14.18 digits of the working precision
  const long working_digits = static_cast<long>(ctx.working_bits() * 0.30103);
  EXPECT_LE(e.terms, working_digits / 14 + 1);
  EXPECT_LE(e.terms, 25);
}

TEST(Gauss, RegimeErrors) {
  EXPECT_THROW(gauss_2f1(catalog_params[0], C(1), ctx), RegimeError);
  EXPECT_THROW(gauss_2f1(catalog_params[0], C(mpq_class(-9, 10)), ctx), RegimeError);
  EXPECT_THROW(gauss_2f1_eval(catalog_params[0], C(mpq_class(9, 10)), ctx, 0, HypRegime::direct_series),
               RegimeError);
}

TEST(Gauss, Derivatives) {
  HypParams p11{1, 1, 2};
  for (const auto& p : catalog_params) {
    EXPECT_TRUE(close(gauss_2f1_dz(p, C(0), ctx), C(p.a * p.b / p.c), 95));
  }
  Real ln2 = const_log2(P);
  EXPECT_TRUE(close(gauss_2f1_dz(p11, C(mpq_class(1, 2)), ctx), Complex(Real(4, P) - ln2 * 4), 95));
  for (const auto& p : catalog_params) {
    for (mpq_class z : {mpq_class(1, 10), mpq_class(1, 2), mpq_class(3, 5)}) {
      Complex shifted = gauss_2f1(p.shifted(), C(z), ctx) * (p.a * p.b / p.c);
      EXPECT_TRUE(close(gauss_2f1_dz(p, C(z), ctx), shifted, 90));
    }
  }
}

TEST(Gauss, RegimeAgreementAtHalf) {
  for (const auto& p : {catalog_params[1], catalog_params[2]}) {
    for (int order = 0; order <= 2; ++order) {
      Complex d = gauss_2f1_eval(p, C(mpq_class(1, 2)), ctx, order, HypRegime::direct_series).value;
      Complex c = gauss_2f1_eval(p, C(mpq_class(1, 2)), ctx, order, HypRegime::connection_at_1).value;
      EXPECT_TRUE(close(c, d, 90)) << order;
    }
  }
}

TEST(Gauss, OdeResidual) {
  const std::vector<Complex> inner{C(mpq_class(1, 10)), C(mpq_class(-1, 2)), C(mpq_class(7, 10)),
                                   Complex(Real(mpq_class(1, 2), P), Real(mpq_class(1, 3), P)), C(mpq_class(-1, 5))};
  const std::vector<Complex> near_one{C(mpq_class(1, 10)), C(mpq_class(9, 10)), C(mpq_class(99, 100)),
                                      Complex(Real(mpq_class(1, 2), P), Real(mpq_class(1, 3), P)),
                                      C(mpq_class(-1, 5))};
  for (const auto& p : catalog_params) {
    for (const auto& z : p.c_equals_a_plus_b() ? near_one : inner) {
      Complex f = gauss_2f1(p, z, ctx), f1 = gauss_2f1_dz(p, z, ctx), f2 = gauss_2f1_d2z(p, z, ctx);
      EXPECT_TRUE(small(abs(hypergeometric_ode_residual(p, z, f, f1, f2)) / abs(f), 85));
    }
  }
}

TEST(Gen3F2, Clausen) {
  HypParams p{mpq_class(1, 12), mpq_class(5, 12), 1};
  Hyp3F2Params q{mpq_class(1, 6), mpq_class(5, 6), mpq_class(1, 2), 1, 1};
  EXPECT_TRUE(close(gen_3f2(q, C(0), ctx), C(1), 95));
  for (mpq_class x : {mpq_class(1, 10), mpq_class(1, 3), mpq_class(1, 2)}) {
    Complex f = gauss_2f1(p, C(x), ctx);
    EXPECT_TRUE(close(f * f, gen_3f2(q, C(x), ctx), 90)) << x.get_str();
  }
}

TEST(Gen3F2, SeriesForm) {
  // sum (6n)!/((3n)! n!^3) (x/1728)^n at x = 1/4
  Hyp3F2Params q{mpq_class(1, 6), mpq_class(5, 6), mpq_class(1, 2), 1, 1};
  mpq_class x(1, 4), sum = 0, t = 1;
  for (long n = 0; n < 200; ++n) {
    sum += t;
    t *= mpq_class(8 * (6 * n + 1) * (6 * n + 3) * (6 * n + 5), (n + 1) * (n + 1) * (n + 1)) * x / 1728;
  }
  EXPECT_TRUE(close(gen_3f2(q, C(x), ctx), C(sum), 95));
}

TEST(Kummer, LocalSolutionsSolveOde) {
  HypParams p{mpq_class(1, 5), mpq_class(2, 7), mpq_class(3, 11)};
  const Complex z(Real(mpq_class(1, 3), P), Real(mpq_class(1, 4), P));
  for (auto pt : {SingularPoint::zero, SingularPoint::one}) {
    for (const auto& sol : kummer_local_solutions(pt)) {
      auto v = sol.evaluate(p, z, ctx);
      EXPECT_TRUE(small(abs(hypergeometric_ode_residual(p, z, v[0], v[1], v[2])) / abs(v[0]), 80)) << sol.to_string();
    }
  }
  const Complex zinf(Real(mpq_class(-3, 2), P), Real(mpq_class(2, 1), P));
  for (const auto& sol : kummer_local_solutions(SingularPoint::infinity)) {
    auto v = sol.evaluate(p, zinf, ctx);
    EXPECT_TRUE(small(abs(hypergeometric_ode_residual(p, zinf, v[0], v[1], v[2])) / abs(v[0]), 80));
  }
}

TEST(Kummer, Parameters) {
  HypParams p{mpq_class(1, 5), mpq_class(2, 7), mpq_class(3, 11)};
  auto s0 = kummer_local_solutions(SingularPoint::zero);
  HypParams second = s0[1].params(p);
  EXPECT_EQ(second.a, p.a - p.c + 1);
  EXPECT_EQ(second.b, p.b - p.c + 1);
  EXPECT_EQ(second.c, 2 - p.c);
  EXPECT_EQ(s0[1].z_exp.eval(p), 1 - p.c);

  auto s1 = kummer_local_solutions(SingularPoint::one);
  EXPECT_EQ(s1[0].params(p).c, p.a + p.b - p.c + 1);
  EXPECT_EQ(s1[1].w_exp.eval(p), p.c - p.a - p.b);
  EXPECT_EQ(s1[1].params(p).a, p.c - p.a);

  auto si = kummer_local_solutions(SingularPoint::infinity);
  EXPECT_EQ(si[0].params(p).c, p.a - p.b + 1);
  EXPECT_EQ(si[1].params(p).b, p.b - p.c + 1);
  EXPECT_EQ(si[0].arg, ArgumentMap::inverse_z);
}
