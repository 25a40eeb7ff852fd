#pragma once

#include <optional>

#include "heegner/kernel.hpp"
#include "heegner/modular.hpp"

namespace heegner {

// Lattice Z + Z tau invariants and the derived E_J data.
struct CurveInvariants {
  Complex g2, g3, delta, J, j;
  // Unset at J = 1, where E_J degenerates.
  std::optional<Complex> g;        // 27J/(1-J)
  std::optional<Complex> delta_J;  // 3^9 J^2 / (16 (1-J)^2)
};

// Normalized period and quasi-period on the discriminant-one curve.
struct PeriodData {
  Complex omega;
  Complex eta;
  RegionId region;
  TauPoint tau;
};

CurveInvariants invariants_from_tau(const TauPoint& tau, const PrecisionContext& ctx);

// alpha for the C_one and C_zero representations: 2i eta(i)^2 and i sqrt(3) eta(rho)^2.
Complex alpha_one(const PrecisionContext& ctx);
Complex alpha_zero(const PrecisionContext& ctx);

Complex period_tilde(RegionId region, const TauPoint& tau, const PrecisionContext& ctx);
Complex quasi_period_tilde(RegionId region, const TauPoint& tau, const PrecisionContext& ctx);
PeriodData period_data(RegionId region, const TauPoint& tau, const PrecisionContext& ctx);

// First region (inf, one, zero order) whose verdict is In.
std::optional<RegionId> containing_region(const TauPoint& tau, const PrecisionContext& ctx);

// Omega / omega~ = J^{-1/6} (27/(J-1))^{-1/4}; H / eta~ is its inverse.
Complex family_scale(const Complex& J, const PrecisionContext& ctx);

struct LemmaResiduals {
  Real gamma_form;       // |(3 gamma3 / 2 gamma2) sqrt J / sqrt(J-1) - J^{1/6}/sqrt 12|
  Real eisenstein_form;  // |E4/E6 - (2 pi^2 / 9 omega~^2) J^{1/3} sqrt 27 / sqrt(J-1)|
  RegionId region;
};

LemmaResiduals lemma_root_identity(const TauPoint& tau, const PrecisionContext& ctx);

// ODE residual normalized by |Omega / J^2|.
Real picard_fuchs_residual(RegionId region, const TauPoint& tau, const PrecisionContext& ctx);

// |36J(J-1) Omega' - 3(2+J) Omega + 2(J-1) H| over the size of the terms.
Real differential_relation_check(RegionId region, const TauPoint& tau, const PrecisionContext& ctx);

struct CmRelation {
  Complex lhs;
  Real rhs;  // a / sqrt(d)
  Real residual;
  RegionId region;
};

CmRelation cm_relation(const HeegnerPoint& h, const PrecisionContext& ctx);

}  // namespace heegner
