#include <random>

#include "heegner/errors.hpp"
#include "heegner/fastseries.hpp"
#include "heegner/modular.hpp"
#include "test_support.hpp"

using namespace heegner;
using heegner::test::close;
using heegner::test::small;

namespace {

const PrecisionContext ctx100 = make_context(100);

Complex C(const mpq_class& q) { return Complex(q, ctx100.working_bits()); }

TauPoint rho() { return TauPoint::exact(mpq_class(-1, 2), mpq_class(3, 4)); }

}  // namespace

TEST(Reduce, Translation) {
  Reduction r = reduce_tau(TauPoint::exact(5, 1), ctx100);
  EXPECT_EQ(*r.tau.exact_re(), 0);
  EXPECT_EQ(*r.tau.exact_im2(), 1);
  EXPECT_EQ(r.matrix, (std::array<long, 4>{1, -5, 0, 1}));
}

TEST(Reduce, IntoFundamentalDomain) {
  Reduction r = reduce_tau(TauPoint::exact(mpq_class(1, 10), mpq_class(1, 100)), ctx100);
  mpq_class x = *r.tau.exact_re();
  EXPECT_LE(abs(x), mpq_class(1, 2));
  EXPECT_GE(x * x + *r.tau.exact_im2(), 1);
  auto [a, b, c, d] = r.matrix;
  EXPECT_EQ(a * d - b * c, 1);
}

TEST(Reduce, RhoFixed) {
  Reduction r = reduce_tau(rho(), ctx100);
  EXPECT_EQ(*r.tau.exact_re(), mpq_class(-1, 2));
  EXPECT_EQ(*r.tau.exact_im2(), mpq_class(3, 4));
}

TEST(Eisenstein, Zeros) {
  EXPECT_TRUE(small(abs(eisenstein(6, TauPoint::exact(0, 1), ctx100)), 90));
  EXPECT_TRUE(small(abs(eisenstein(4, rho(), ctx100)), 90));
  EXPECT_THROW(eisenstein(8, rho(), ctx100), ParameterError);
}

TEST(Eisenstein, E4AtIClosedForm) {
  // E4(i) = 3 Gamma(1/4)^8 / (2 pi)^6
  const mpfr_prec_t p = ctx100.working_bits();
  Real g = gamma_ap(mpq_class(1, 4), ctx100);
  Real tp = pi_value(ctx100) * 2;
  Real oracle = pow(g, Real(8, p)) * 3 / pow(tp, Real(6, p));
  EXPECT_TRUE(close(eisenstein(4, TauPoint::exact(0, 1), ctx100), Complex(oracle), 90));
}

TEST(Eisenstein, E2GivesTableS2) {
  TauPoint t = TauPoint::exact(0, 4);
  Complex e2 = eisenstein(2, t, ctx100);
  EXPECT_TRUE(e2.im().is_zero() || small(e2.im(), 90));
  EXPECT_TRUE(close(s2(t, ctx100), C(mpq_class(11, 21)), 90));
}

TEST(Eta, ClosedForms) {
  const mpfr_prec_t p = ctx100.working_bits();
  Real pi = pi_value(ctx100);
  Real eta_i = gamma_ap(mpq_class(1, 4), ctx100) / (pow(pi, Real(mpq_class(3, 4), p)) * 2);
  EXPECT_TRUE(close(dedekind_eta(TauPoint::exact(0, 1), ctx100), Complex(eta_i), 90));

  Real mod = pow(Real(3, p), Real(mpq_class(1, 4), p)) * pow(gamma_ap(mpq_class(1, 3), ctx100), Real(3, p)) /
             (pi * pi * 4);
  Complex eta_rho2 = Complex(mod) * exp_i_pi(mpq_class(-1, 12), p);
  Complex e = dedekind_eta(rho(), ctx100);
  EXPECT_TRUE(close(e * e, eta_rho2, 90));
}

TEST(Eta, Translation) {
  TauPoint t = TauPoint::exact(mpq_class(1, 5), mpq_class(3, 2));
  Complex ratio = dedekind_eta(t.translated(1), ctx100) / dedekind_eta(t, ctx100);
  EXPECT_TRUE(close(ratio, exp_i_pi(mpq_class(1, 12), ctx100.working_bits()), 90));
}

TEST(Weber, Identities) {
  const mpfr_prec_t p = ctx100.working_bits();
  EXPECT_TRUE(close(weber_f(TauPoint::exact(0, 1), ctx100), Complex(pow(Real(2, p), Real(mpq_class(1, 4), p))), 90));

  TauPoint t = TauPoint::exact(mpq_class(1, 7), 2);
  Complex lhs = weber_f(t, ctx100) * dedekind_eta(t, ctx100);
  Complex rhs = exp_i_pi(mpq_class(1, 24), p) * dedekind_eta(t.halved_plus(-1), ctx100);
  EXPECT_TRUE(close(lhs, rhs, 90));

  TauPoint s3 = TauPoint::exact(0, 3);
  Complex f = weber_f(s3, ctx100), e = dedekind_eta(s3, ctx100);
  Complex val = f * f * e * e * sqrt(pi_value(ctx100) * 6);
  Real g = gamma_ap(mpq_class(1, 3), ctx100) / gamma_ap(mpq_class(2, 3), ctx100);
  EXPECT_TRUE(close(val, Complex(pow(g, Real(mpq_class(3, 2), p))), 90));
}

TEST(Discriminant, Values) {
  Complex di = discriminant_tau(TauPoint::exact(0, 1), ctx100);
  EXPECT_GT(di.re().sign(), 0);
  EXPECT_TRUE(di.im().is_zero() || small(di.im() / di.re(), 90));
  EXPECT_NO_THROW(discriminant_tau(TauPoint::exact(0, 4), ctx100));
  Complex dr = discriminant_tau(rho(), ctx100);
  EXPECT_TRUE(small(dr.im() / abs(dr), 90));
}

TEST(KleinJ, TableValues) {
  EXPECT_TRUE(close(klein_J(TauPoint::exact(0, 1), ctx100), C(1), 90));
  EXPECT_TRUE(small(abs(klein_J(rho(), ctx100)), 90));
  EXPECT_TRUE(close(klein_J(HeegnerPoint{1, 0, 2}.tau(), ctx100), C(mpq_class(125, 27)), 90));
  mpq_class j163 = -mpq_class(mpz_class(53360) * 53360 * 53360);
  EXPECT_TRUE(close(klein_J(HeegnerPoint{1, 1, 41}.tau(), ctx100), C(j163), 90));
  mpq_class j640 = -mpq_class(mpz_class(640320) * 640320 * 640320);
  EXPECT_TRUE(close(j_invariant(HeegnerPoint{1, 1, 41}.tau(), ctx100), C(j640), 90));
}

TEST(S2, TableValues) {
  EXPECT_TRUE(close(s2(HeegnerPoint{1, 0, 2}.tau(), ctx100), C(mpq_class(5, 14)), 90));
  EXPECT_TRUE(close(s2(HeegnerPoint{1, 1, 2}.tau(), ctx100), C(mpq_class(5, 21)), 90));
  EXPECT_TRUE(close(s2(HeegnerPoint{1, 1, 41}.tau(), ctx100), C(mpq_class(77265280, 90856689)), 90));
  EXPECT_THROW(s2(TauPoint::exact(0, 1), ctx100), PoleError);
}

TEST(DJ, FiniteDifference) {
  const mpfr_prec_t p = ctx100.working_bits();
  const Complex h(mpq_class(1, mpz_class("1000000000000000000000000000000")), p);
  for (mpq_class y2 : {mpq_class(4), mpq_class(2)}) {
    Complex tau = TauPoint::exact(0, y2).value(ctx100);
    Complex up = klein_J(TauPoint::numeric(tau + h), ctx100);
    Complex dn = klein_J(TauPoint::numeric(tau - h), ctx100);
    EXPECT_TRUE(close(dJ_dtau(TauPoint::exact(0, y2), ctx100), (up - dn) / (h * 2), 50));
  }
  EXPECT_THROW(dJ_dtau(rho(), ctx100), PoleError);
}

TEST(QCheck, Exact) {
  EXPECT_TRUE(ramanujan_ode_qcheck(0));
  EXPECT_TRUE(ramanujan_ode_qcheck(1));
  EXPECT_TRUE(ramanujan_ode_qcheck(200));
}

TEST(Modularity, RandomSL2) {
  const PrecisionContext ctx = make_context(60);
  const mpfr_prec_t p = ctx.working_bits();
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(-3, 3);
  Complex tau = TauPoint::exact(mpq_class(1, 5), mpq_class(121, 100)).value(ctx);
  int checked = 0;
  for (int it = 0; it < 5000 && checked < 20; ++it) {
    long a = d(rng), b = d(rng), c = d(rng), dd = d(rng);
    if (a * dd - b * c != 1 || c == 0) continue;
    Complex ct = tau * c + Complex(mpq_class(dd), p);
    Complex g = (tau * a + Complex(mpq_class(b), p)) / ct;
    if (g.im().to_double() < 0.35) continue;
    TauPoint gt = TauPoint::numeric(g), t = TauPoint::numeric(tau);
    EXPECT_TRUE(close(eisenstein(4, gt, ctx), pow(ct, 4L) * eisenstein(4, t, ctx), 50));
    EXPECT_TRUE(close(eisenstein(6, gt, ctx), pow(ct, 6L) * eisenstein(6, t, ctx), 50));
    EXPECT_TRUE(close(klein_J(gt, ctx), klein_J(t, ctx), 50));
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(Membership, Regions) {
  EXPECT_EQ(domain_member(HeegnerPoint{1, 0, 2}.tau(), RegionId::C_inf, ctx100), Membership::In);
  EXPECT_EQ(domain_member(HeegnerPoint{1, 0, 2}.tau(), RegionId::C_one, ctx100), Membership::In);
  EXPECT_EQ(domain_member(HeegnerPoint{1, 1, 2}.tau(), RegionId::C_zero, ctx100), Membership::In);
  EXPECT_EQ(domain_member(rho(), RegionId::C_inf, ctx100), Membership::Out);
  EXPECT_EQ(domain_member(TauPoint::exact(0, 1), RegionId::C_zero, ctx100), Membership::Out);
}
