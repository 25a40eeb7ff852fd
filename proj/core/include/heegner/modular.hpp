#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>

#include "heegner/kernel.hpp"

namespace heegner {

// A point of the upper half plane. When the real part and the squared
// imaginary part are rational they are kept exactly, so that q = e^{2 pi i tau}
// is exactly real on Re(tau) in {0, -1/2, 1/2} and branch decisions at negative
// real J are never made on rounding noise.
class TauPoint {
 public:
  static TauPoint exact(const mpq_class& x, const mpq_class& y2);
  static TauPoint numeric(const Complex& tau);
  // "x,y" decimal strings, kept exact as rationals.
  static TauPoint from_decimal(const std::string& x, const std::string& y);

  bool is_exact() const { return x_.has_value(); }
  const std::optional<mpq_class>& exact_re() const { return x_; }
  const std::optional<mpq_class>& exact_im2() const { return y2_; }

  Complex value(const PrecisionContext& ctx) const;
  Real re(const PrecisionContext& ctx) const;
  Real im(const PrecisionContext& ctx) const;

  // e^{2 pi i m tau}
  Complex q_power(const mpq_class& m, const PrecisionContext& ctx) const;

  // tau + k for integer k, and (tau + k)/2.
  TauPoint translated(long k) const;
  TauPoint halved_plus(long k) const;

  std::string to_string(long digits = 20) const;

 private:
  std::optional<mpq_class> x_, y2_;
  std::optional<Complex> tau_;
};

// tau = (-b + i sqrt(d)) / (2a), d = 4ac - b^2.
struct HeegnerPoint {
  long a = 1, b = 0, c = 1;

  long d() const { return 4 * a * c - b * b; }
  TauPoint tau() const;
  std::string to_string() const;
};

enum class RegionId { C_inf, C_one, C_zero };
enum class Membership { In, Out, Indeterminate };

std::string to_string(RegionId r);
std::string to_string(Membership m);
RegionId region_from_string(const std::string& s);

struct Reduction {
  TauPoint tau;
  std::array<long, 4> matrix;  // {a, b, c, d}: tau_F = (a tau + b)/(c tau + d)
};

struct EisensteinValues {
  Complex e2, e4, e6;
  long terms = 0;
};

// All modular quantities at one point from a single Eisenstein pass.
struct ModularData {
  Complex e2, e4, e6;
  Complex J;
  Real im_tau;
};

// Series terms needed at a context and imaginary part.
long eisenstein_terms(const PrecisionContext& ctx, double im_tau);

Reduction reduce_tau(const TauPoint& tau, const PrecisionContext& ctx);

EisensteinValues eisenstein_all(const TauPoint& tau, const PrecisionContext& ctx);
Complex eisenstein(int k, const TauPoint& tau, const PrecisionContext& ctx);
Complex dedekind_eta(const TauPoint& tau, const PrecisionContext& ctx);
Complex weber_f(const TauPoint& tau, const PrecisionContext& ctx);

// Returns (2 pi)^12 eta^24 after checking it against (2 pi)^12 (E4^3 - E6^2)/1728.
Complex discriminant_tau(const TauPoint& tau, const PrecisionContext& ctx);

ModularData modular_data(const TauPoint& tau, const PrecisionContext& ctx);
Complex klein_J(const TauPoint& tau, const PrecisionContext& ctx);
Complex j_invariant(const TauPoint& tau, const PrecisionContext& ctx);
Complex s2(const TauPoint& tau, const PrecisionContext& ctx);
Complex s2_from(const ModularData& m, const PrecisionContext& ctx);
Complex dJ_dtau(const TauPoint& tau, const PrecisionContext& ctx);
Complex dJ_dtau_from(const ModularData& m, const PrecisionContext& ctx);

bool ramanujan_ode_qcheck(long n);

Membership domain_member(const TauPoint& tau, RegionId r, const PrecisionContext& ctx);
Membership domain_member(const TauPoint& tau, const Complex& J, RegionId r, const PrecisionContext& ctx);

}  // namespace heegner
