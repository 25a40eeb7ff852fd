#include "heegner/errors.hpp"
#include "heegner/fastseries.hpp"
#include "heegner/periods.hpp"
#include "test_support.hpp"

using namespace heegner;
using heegner::test::close;
using heegner::test::small;

namespace {

const PrecisionContext ctx = make_context(100);
const mpfr_prec_t P = ctx.working_bits();

TauPoint sqrt2() { return HeegnerPoint{1, 0, 2}.tau(); }
TauPoint h7() { return HeegnerPoint{1, 1, 2}.tau(); }

Complex eta_oracle(const TauPoint& t) {
  Complex e = dedekind_eta(t, ctx);
  return e * e * (pi_value(ctx) * 2);
}

}  // namespace

TEST(Period, MatchesEta) {
  EXPECT_TRUE(close(period_tilde(RegionId::C_inf, sqrt2(), ctx), eta_oracle(sqrt2()), 90));
  EXPECT_TRUE(close(period_tilde(RegionId::C_one, sqrt2(), ctx), eta_oracle(sqrt2()), 90));
  EXPECT_TRUE(close(period_tilde(RegionId::C_zero, h7(), ctx), eta_oracle(h7()), 90));
}

TEST(Period, TwelfthPowerIsDiscriminant) {
  for (auto [r, t] : {std::pair{RegionId::C_inf, TauPoint::exact(0, mpq_class(9, 4))},
                      std::pair{RegionId::C_one, TauPoint::exact(mpq_class(1, 10), mpq_class(6, 5))},
                      std::pair{RegionId::C_zero, TauPoint::exact(mpq_class(-2, 5), 1)}}) {
    EXPECT_TRUE(close(pow(period_tilde(r, t, ctx), 12L), discriminant_tau(t, ctx), 85));
  }
}

TEST(Period, OutsideRegion) {
  TauPoint near_rho = TauPoint::exact(mpq_class(-1, 2), mpq_class(3, 4) + mpq_class(1, 1000));
  EXPECT_THROW(period_tilde(RegionId::C_inf, near_rho, ctx), DomainError);
  EXPECT_THROW(period_tilde(RegionId::C_zero, TauPoint::exact(0, 4), ctx), DomainError);
}

TEST(QuasiPeriod, OverlapAndE2) {
  Complex qi = quasi_period_tilde(RegionId::C_inf, sqrt2(), ctx);
  Complex qo = quasi_period_tilde(RegionId::C_one, sqrt2(), ctx);
  EXPECT_TRUE(close(qi, qo, 90));
  for (auto [r, t] : {std::pair{RegionId::C_inf, sqrt2()}, std::pair{RegionId::C_zero, h7()},
                      std::pair{RegionId::C_one, TauPoint::exact(0, mpq_class(36, 25))}}) {
    PeriodData d = period_data(r, t, ctx);
    Real pi = pi_value(ctx);
    EXPECT_TRUE(close(d.omega * d.eta * 3 / (pi * pi), eisenstein(2, t, ctx), 90)) << to_string(r);
  }
}

TEST(QuasiPeriod, FiniteDifferenceInJ) {
  // eta~ = -2 sqrt3 J^{2/3} sqrt(J - 1) d omega~/dJ along the C_inf family
  const PrecisionContext lo = make_context(60);
  const mpfr_prec_t p = lo.working_bits();
  TauPoint t = TauPoint::exact(0, mpq_class(36, 25));
  Complex tau = t.value(lo);
  Complex dtau = Complex(Real(mpq_class(1, mpz_class("1000000000000000000000")), p));
  TauPoint up = TauPoint::numeric(tau + dtau), dn = TauPoint::numeric(tau - dtau);
  Complex dw = period_tilde(RegionId::C_inf, up, lo) - period_tilde(RegionId::C_inf, dn, lo);
  Complex dJ = klein_J(up, lo) - klein_J(dn, lo);
  Complex J = klein_J(t, lo);
  Complex q = -(pow(J, mpq_class(2, 3)) * sqrt(J - 1)) * sqrt(Real(3, p)) * 2 * (dw / dJ);
  EXPECT_TRUE(close(quasi_period_tilde(RegionId::C_inf, t, lo), q, 30));
}

TEST(Invariants, SpecialPoints) {
  EXPECT_TRUE(small(abs(invariants_from_tau(TauPoint::exact(0, 1), ctx).g3), 90));
  EXPECT_TRUE(small(abs(invariants_from_tau(TauPoint::exact(mpq_class(-1, 2), mpq_class(3, 4)), ctx).g2), 90));
  CurveInvariants c = invariants_from_tau(sqrt2(), ctx);
  EXPECT_TRUE(close(c.J, Complex(mpq_class(125, 27), P), 90));
  EXPECT_TRUE(close(*c.g, Complex(mpq_class(-3375, 98), P), 90));
  EXPECT_FALSE(invariants_from_tau(TauPoint::exact(0, 1), ctx).g);
}

TEST(RootIdentity, Residuals) {
  for (const TauPoint& t : {sqrt2(), HeegnerPoint{1, 0, 3}.tau(), h7()}) {
    LemmaResiduals r = lemma_root_identity(t, ctx);
    EXPECT_TRUE(small(r.gamma_form, 90));
    EXPECT_TRUE(small(r.eisenstein_form, 90));
  }
}

TEST(Ode, Residuals) {
  EXPECT_TRUE(small(picard_fuchs_residual(RegionId::C_inf, TauPoint::exact(0, mpq_class(169, 100)), ctx), 33));
  EXPECT_TRUE(small(picard_fuchs_residual(RegionId::C_one, sqrt2(), ctx), 33));
  EXPECT_TRUE(small(picard_fuchs_residual(RegionId::C_zero, h7(), ctx), 33));
  EXPECT_TRUE(small(differential_relation_check(RegionId::C_inf, sqrt2(), ctx), 90));
  EXPECT_TRUE(small(differential_relation_check(RegionId::C_inf, TauPoint::exact(0, mpq_class(169, 100)), ctx), 90));
  EXPECT_TRUE(small(differential_relation_check(RegionId::C_zero, HeegnerPoint{1, 1, 3}.tau(), ctx), 90));
}

TEST(Ode, RegimeLimitAtOnePointOne) {
  // 1.1i lies in C_inf but |1/J| ~ 0.88 is past the direct-series threshold.
  EXPECT_THROW(picard_fuchs_residual(RegionId::C_inf, TauPoint::exact(0, mpq_class(121, 100)), ctx), RegimeError);
}

TEST(Cm, Relation) {
  CmRelation c = cm_relation(HeegnerPoint{1, 0, 2}, ctx);
  EXPECT_TRUE(close(Complex(c.rhs), Complex(Real(1, P) / (sqrt(Real(2, P)) * 2)), 95));
  EXPECT_TRUE(small(c.residual, 90));
  EXPECT_TRUE(small(cm_relation(HeegnerPoint{1, 1, 2}, ctx).residual, 90));
  EXPECT_TRUE(small(cm_relation(HeegnerPoint{1, 1, 41}, ctx).residual, 90));
}

TEST(Region, Containing) {
  EXPECT_EQ(containing_region(sqrt2(), ctx), RegionId::C_inf);
  // |1/J| < 1 at (-1 + sqrt -7)/2, so C_inf comes first
  EXPECT_EQ(containing_region(h7(), ctx), RegionId::C_inf);
  EXPECT_EQ(containing_region(TauPoint::exact(mpq_class(-1, 2), mpq_class(3, 4)), ctx), RegionId::C_zero);
  EXPECT_EQ(containing_region(TauPoint::exact(0, 1), ctx), RegionId::C_one);
}

TEST(FamilyScale, InverseRelation) {
  Complex J(mpq_class(125, 27), P);
  Complex s = family_scale(J, ctx);
  Complex expect = pow(J, mpq_class(-1, 6)) * pow(Complex(mpq_class(27, 1), P) / (J - 1), mpq_class(-1, 4));
  EXPECT_TRUE(close(s, expect, 95));
}
