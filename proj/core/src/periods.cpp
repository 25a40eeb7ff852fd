#include "heegner/periods.hpp"

#include <algorithm>
#include <cmath>

#include "heegner/errors.hpp"
#include "heegner/hypergeom.hpp"

namespace heegner {

namespace {

const HypParams kInf{mpq_class(1, 12), mpq_class(5, 12), 1};
const HypParams kOne{mpq_class(1, 12), mpq_class(5, 12), mpq_class(1, 2)};
const HypParams kZero{mpq_class(1, 12), mpq_class(7, 12), mpq_class(2, 3)};

bool is_rho(const TauPoint& tau) {
  return tau.is_exact() && *tau.exact_re() == mpq_class(-1, 2) && *tau.exact_im2() == mpq_class(3, 4);
}

bool near_zero(const Complex& z, const PrecisionContext& ctx) {
  return abs(z) < epsilon_bits(ctx.target_bits / 2, ctx.working_bits());
}

TauPoint tau_i() { return TauPoint::exact(0, 1); }
TauPoint tau_rho() { return TauPoint::exact(mpq_class(-1, 2), mpq_class(3, 4)); }

// tau + i or tau - conj(rho).
Complex tau_shift(RegionId r, const Complex& tau, mpfr_prec_t p) {
  Complex t = tau;
  if (r == RegionId::C_one) {
    t.im() += Real(1, p);
  } else {
    t.re() += Real(mpq_class(1, 2), p);
    t.im() += sqrt(Real(3, p)) / 2;
  }
  return t;
}

// 2 pi alpha for the region.
Complex two_pi_alpha(RegionId r, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex a = r == RegionId::C_one ? alpha_one(ctx) : alpha_zero(ctx);
  return a * (const_pi(p) * 2);
}

struct RepValue {
  Complex omega;
  Complex domega;  // d omega / dJ, only when requested
};

// The region's hypergeometric representation at a given J. tau enters only
// through the C_one / C_zero prefactor m / tau_0, and Jprime through dtau/dJ.
RepValue representation(RegionId r, const Complex& J_in, const Complex& tau, bool deriv, const Complex* Jprime,
                        const PrecisionContext& ctx) {
  if (deriv && r != RegionId::C_inf && Jprime == nullptr) throw ParameterError("representation: J' required");
  // Near z = 1 the argument 1 - z ~ 1/J loses log2|J| bits when rounded.
  long lost = 0;
  if (r != RegionId::C_inf) lost = static_cast<long>(std::max(0.0, std::log2(abs(J_in).to_double() + 1.0)));
  const PrecisionContext wctx = ctx.widened(lost);
  const mpfr_prec_t p = wctx.working_bits();
  const Complex J = round_to(J_in, p);
  RepValue out{Complex(p), Complex(p)};
  const Complex inv_j = Complex(Real(1, p)) / J;

  switch (r) {
    case RegionId::C_inf: {
      Complex z = inv_j;
      Complex F = gauss_2f1(kInf, z, wctx);
      Real k = const_pi(p) * 2 / sqrt(sqrt(Real(12, p)));
      Complex pre = pow(J, mpq_class(-1, 12)) * k;
      out.omega = pre * F;
      if (deriv) {
        Complex dF = gauss_2f1_dz(kInf, z, wctx);
        out.domega = pre * (-(dF * inv_j * inv_j) - F * inv_j * mpq_class(1, 12));
      }
      break;
    }
    case RegionId::C_one: {
      Complex z = (J - 1) / J;
      Complex F = gauss_2f1(kOne, z, wctx);
      Complex t0 = tau_shift(r, tau, p);
      Complex pre = pow(J, mpq_class(-1, 12)) * two_pi_alpha(r, ctx) / t0;
      out.omega = pre * F;
      if (deriv) {
        Complex dF = gauss_2f1_dz(kOne, z, wctx);
        Complex c = inv_j * mpq_class(1, 12) + Complex(Real(1, p)) / (t0 * *Jprime);
        out.domega = pre * (dF * inv_j * inv_j - c * F);
      }
      break;
    }
    case RegionId::C_zero: {
      Complex jm1 = J - 1;
      Complex z = J / jm1;
      Complex F = gauss_2f1(kZero, z, wctx);
      Complex t0 = tau_shift(r, tau, p);
      Complex one_m_j = 1 - J;
      Complex pre = pow(one_m_j, mpq_class(-1, 12)) * two_pi_alpha(r, ctx) / t0;
      out.omega = pre * F;
      if (deriv) {
        Complex dF = gauss_2f1_dz(kZero, z, wctx);
        Complex c = Complex(Real(1, p)) / one_m_j * mpq_class(1, 12) - Complex(Real(1, p)) / (t0 * *Jprime);
        out.domega = pre * (c * F - dF / (jm1 * jm1));
      }
      break;
    }
  }
  out.omega = round_to(out.omega, ctx.working_bits());
  out.domega = round_to(out.domega, ctx.working_bits());
  return out;
}

void require_member(RegionId r, const TauPoint& tau, const Complex& J, const PrecisionContext& ctx) {
  Membership m = domain_member(tau, J, r, ctx);
  if (m != Membership::In) {
    throw DomainError("tau = " + tau.to_string(12) + " is not in region " + to_string(r) + " (" + to_string(m) +
                      ")");
  }
}

// -2 sqrt3 J^{2/3} sqrt(J-1)
Complex quasi_factor(const Complex& J, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  return pow(J, mpq_class(2, 3)) * sqrt(J - 1) * (sqrt(Real(3, p)) * -2);
}

// Limit of the quasi-period at tau = rho, where J and J' both vanish.
Complex quasi_period_at_rho(const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  TauPoint rho = tau_rho();
  Complex t0 = tau_shift(RegionId::C_zero, rho.value(ctx), p);
  Complex m = two_pi_alpha(RegionId::C_zero, ctx);
  Complex e6 = eisenstein(6, rho, ctx);
  Complex two_pi_i(Real(p), const_pi(p) * 2);
  Complex L = exp_i_pi(mpq_class(2, 3), p) / (two_pi_i * pow(e6, mpq_class(1, 3)));
  return i_unit(p) * (sqrt(Real(3, p)) * 2) * m / (t0 * t0) * L;
}

struct PointState {
  ModularData md;
  Complex tau;
};

PointState point_state(const TauPoint& tau, const PrecisionContext& ctx) {
  return {modular_data(tau, ctx), tau.value(ctx)};
}

Complex quasi_from(RegionId r, const TauPoint& tau, const PointState& st, const PrecisionContext& ctx) {
  if (r == RegionId::C_zero && is_rho(tau)) return quasi_period_at_rho(ctx);
  const Complex& J = st.md.J;
  if (near_zero(J, ctx) || near_zero(J - 1, ctx)) throw PoleError("quasi-period: J is 0 or 1");
  Complex jp(ctx.working_bits());
  const Complex* jpp = nullptr;
  if (r != RegionId::C_inf) {
    jp = dJ_dtau_from(st.md, ctx);
    if (near_zero(jp, ctx)) throw PoleError("quasi-period: J'(tau) vanishes");
    jpp = &jp;
  }
  RepValue rv = representation(r, J, st.tau, true, jpp, ctx);
  return quasi_factor(J, ctx) * rv.domega;
}

// tau with J(tau) = target, by Newton from a nearby start.
Complex invert_J(const Complex& target, const Complex& start, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex tau = start;
  Real tol = epsilon_bits(p - 8, p);
  for (int it = 0; it < 64; ++it) {
    TauPoint tp = TauPoint::numeric(tau);
    ModularData md = modular_data(tp, ctx);
    Complex step = (md.J - target) / dJ_dtau_from(md, ctx);
    tau -= step;
    if (abs(step) <= tol * abs(tau)) return tau;
  }
  throw PrecisionError("J inversion did not converge");
}

}  // namespace

CurveInvariants invariants_from_tau(const TauPoint& tau, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  ModularData md = modular_data(tau, ctx);
  Real pi = const_pi(p);
  Real pi2 = pi * pi;
  Real pi4 = pi2 * pi2;
  Complex g2 = md.e4 * (pi4 * mpq_class(4, 3));
  Complex g3 = md.e6 * (pi4 * pi2 * mpq_class(8, 27));
  Complex delta = g2 * g2 * g2 - g3 * g3 * 27;
  Complex J = g2 * g2 * g2 / delta;
  Real dj = abs(J - md.J);
  if (dj > epsilon_bits(ctx.target_bits / 2, p) * (abs(md.J) + Real(1, p))) {
    throw ConsistencyFault("invariants: J from g2, g3 disagrees with the Eisenstein value");
  }
  CurveInvariants ci{g2, g3, delta, J, J * 1728, std::nullopt, std::nullopt};
  Complex one_m_j = 1 - J;
  if (!near_zero(one_m_j, ctx)) {
    ci.g = J * 27 / one_m_j;
    ci.delta_J = J * J * mpq_class(19683, 16) / (one_m_j * one_m_j);
  }
  return ci;
}

Complex alpha_one(const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex e = dedekind_eta(tau_i(), ctx);
  return i_unit(p) * (e * e) * 2;
}

Complex alpha_zero(const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex e = dedekind_eta(tau_rho(), ctx);
  return i_unit(p) * sqrt(Real(3, p)) * (e * e);
}

std::optional<RegionId> containing_region(const TauPoint& tau, const PrecisionContext& ctx) {
  Complex J = klein_J(tau, ctx);
  for (RegionId r : {RegionId::C_inf, RegionId::C_one, RegionId::C_zero}) {
    if (domain_member(tau, J, r, ctx) == Membership::In) return r;
  }
  return std::nullopt;
}

Complex family_scale(const Complex& J, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  Complex t = Complex(Real(27, p)) / (J - 1);
  return pow(J, mpq_class(-1, 6)) * pow(t, mpq_class(-1, 4));
}

Complex period_tilde(RegionId region, const TauPoint& tau, const PrecisionContext& ctx) {
  PointState st = point_state(tau, ctx);
  require_member(region, tau, st.md.J, ctx);
  return representation(region, st.md.J, st.tau, false, nullptr, ctx).omega;
}

Complex quasi_period_tilde(RegionId region, const TauPoint& tau, const PrecisionContext& ctx) {
  PointState st = point_state(tau, ctx);
  require_member(region, tau, st.md.J, ctx);
  return quasi_from(region, tau, st, ctx);
}

PeriodData period_data(RegionId region, const TauPoint& tau, const PrecisionContext& ctx) {
  PointState st = point_state(tau, ctx);
  require_member(region, tau, st.md.J, ctx);
  Complex omega = representation(region, st.md.J, st.tau, false, nullptr, ctx).omega;
  Complex eta = quasi_from(region, tau, st, ctx);
  return {omega, eta, region, tau};
}

LemmaResiduals lemma_root_identity(const TauPoint& tau, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  PointState st = point_state(tau, ctx);
  const Complex& J = st.md.J;
  if (near_zero(J, ctx) || near_zero(J - 1, ctx)) throw PoleError("root identity: J is 0 or 1");
  std::optional<RegionId> r = containing_region(tau, ctx);
  if (!r) throw DomainError("root identity: tau = " + tau.to_string(12) + " lies in no region");
  Complex omega = representation(*r, J, st.tau, false, nullptr, ctx).omega;

  Real pi = const_pi(p);
  Real pi2 = pi * pi;
  Complex w2 = omega * omega;
  Complex g2 = st.md.e4 * (pi2 * pi2 * mpq_class(4, 3)) / (w2 * w2);
  Complex g3 = st.md.e6 * (pi2 * pi2 * pi2 * mpq_class(8, 27)) / (w2 * w2 * w2);
  Complex sq = sqrt(J) / sqrt(J - 1);
  Complex lhs1 = g3 * mpq_class(3, 2) / g2 * sq;
  Complex rhs1 = pow(J, mpq_class(1, 6)) / sqrt(Real(12, p));

  Complex lhs2 = st.md.e4 / st.md.e6;
  Complex rhs2 = pow(J, mpq_class(1, 3)) * sqrt(Real(27, p)) / sqrt(J - 1) * (pi2 * mpq_class(2, 9)) / w2;
  return {abs(lhs1 - rhs1), abs(lhs2 - rhs2), *r};
}

Real picard_fuchs_residual(RegionId region, const TauPoint& tau, const PrecisionContext& ctx) {
  const long w = ctx.working_bits();
  if (w / 3 > (1L << 20)) throw PrecisionError("Picard-Fuchs step underflows; lower the target precision");
  PointState st = point_state(tau, ctx);
  const Complex J = st.md.J;
  require_member(region, tau, J, ctx);
  if (near_zero(J, ctx) || near_zero(J - 1, ctx)) throw PoleError("Picard-Fuchs: J is 0 or 1");

  Real h = abs(J) * epsilon_bits(w / 3, w);
  Complex hc{h};
  auto omega_at = [&](const Complex& Jt) {
    Complex t = st.tau;
    if (region != RegionId::C_inf) t = invert_J(Jt, st.tau, ctx);
    return representation(region, Jt, t, false, nullptr, ctx).omega * family_scale(Jt, ctx);
  };
  Complex f0 = omega_at(J);
  Complex fp = omega_at(J + hc);
  Complex fm = omega_at(J - hc);
  Real h2 = h * h;
  Complex d1 = (fp - fm) / (h * 2);
  Complex d2 = (fp - f0 * 2 + fm) / h2;

  Complex one_m_j = 1 - J;
  Complex coef = (J * 31 - 4) / (J * J * one_m_j * one_m_j * 144);
  Complex res = d2 + d1 / J + coef * f0;
  return abs(res) / abs(f0 / (J * J));
}

Real differential_relation_check(RegionId region, const TauPoint& tau, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  PointState st = point_state(tau, ctx);
  const Complex J = st.md.J;
  require_member(region, tau, J, ctx);
  if (near_zero(J, ctx) || near_zero(J - 1, ctx)) throw PoleError("differential relation: J is 0 or 1");

  Complex jp(p);
  const Complex* jpp = nullptr;
  if (region != RegionId::C_inf) {
    jp = dJ_dtau_from(st.md, ctx);
    jpp = &jp;
  }
  RepValue rv = representation(region, J, st.tau, true, jpp, ctx);
  Complex eta = quasi_factor(J, ctx) * rv.domega;

  // Scale s = sqrt(gamma3/gamma2) from the discriminant-one curve to E_J, taken
  // from the lattice so that Omega and H belong to the same curve.
  Real pi2 = const_pi(p) * const_pi(p);
  Complex w2 = rv.omega * rv.omega;
  Complex g2 = st.md.e4 * (pi2 * pi2 * mpq_class(4, 3)) / (w2 * w2);
  Complex g3 = st.md.e6 * (pi2 * pi2 * pi2 * mpq_class(8, 27)) / (w2 * w2 * w2);
  Complex s = sqrt(g3 / g2);
  Complex jm1 = J - 1;

  Complex Omega = rv.omega * s;
  Complex H = eta / s;
  Complex ds = s * (Complex(Real(1, p)) / (jm1 * 2) - Complex(Real(1, p)) / (J * 3)) * mpq_class(1, 2);
  Complex dOmega = rv.domega * s + rv.omega * ds;

  Complex t1 = J * jm1 * dOmega * 36;
  Complex t2 = (J + 2) * Omega * 3;
  Complex t3 = jm1 * H * 2;
  Complex res = t1 - t2 + t3;
  return abs(res) / (abs(t2) + abs(t3));
}

CmRelation cm_relation(const HeegnerPoint& h, const PrecisionContext& ctx) {
  const mpfr_prec_t p = ctx.working_bits();
  if (h.a <= 0 || h.d() <= 0) throw ParameterError("cm_relation: need a > 0 and d > 0");
  TauPoint tau = h.tau();
  std::optional<RegionId> r = containing_region(tau, ctx);
  if (!r) throw DomainError("cm_relation: " + h.to_string() + " lies in no region");
  PointState st = point_state(tau, ctx);
  Complex omega = representation(*r, st.md.J, st.tau, false, nullptr, ctx).omega;
  Complex eta = quasi_from(*r, tau, st, ctx);

  Real pi = const_pi(p);
  Complex correction(p);
  if (is_rho(tau)) {
    // omega (3 gamma3 / 2 gamma2) s2 = (pi^2 / 3 omega)(E2 - 3/(pi Im tau)), finite at rho.
    Complex e2c = st.md.e2 - Complex(Real(3, p) / (pi * st.md.im_tau));
    correction = e2c * (pi * pi) / (omega * 3);
  } else {
    Complex s2v = s2_from(st.md, ctx);
    Real pi2 = pi * pi;
    Complex w2 = omega * omega;
    Complex g2 = st.md.e4 * (pi2 * pi2 * mpq_class(4, 3)) / (w2 * w2);
    Complex g3 = st.md.e6 * (pi2 * pi2 * pi2 * mpq_class(8, 27)) / (w2 * w2 * w2);
    correction = omega * g3 * mpq_class(3, 2) / g2 * s2v;
  }
  Complex lhs = omega / (pi * 2) * (eta - correction);
  Real rhs = Real(h.a, p) / sqrt(Real(h.d(), p));
  return {lhs, rhs, abs(lhs - Complex(rhs)), *r};
}

}  // namespace heegner
