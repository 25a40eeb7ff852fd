#pragma once

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "heegner/kernel.hpp"

namespace heegner {

struct HypParams {
  mpq_class a, b, c;

  bool logarithmic_at_1() const;  // c - a - b is an integer
  bool c_equals_a_plus_b() const { return c == a + b; }
  HypParams shifted() const { return {a + 1, b + 1, c + 1}; }
};

struct Hyp3F2Params {
  mpq_class a1, a2, a3, b1, b2;
};

enum class HypRegime { direct_series, connection_at_1 };

struct HypEval {
  Complex value;
  HypRegime regime;
  long terms;
};

mpq_class pochhammer(const mpq_class& alpha, long n);

// ((1/6)_n (5/6)_n (1/2)_n, 12^{-3n} (6n)!/(3n)!)
std::pair<mpq_class, mpq_class> sextuple_identity(long n);

// Regime a (params, z) pair falls in; throws RegimeError if none applies.
HypRegime select_regime(const HypParams& p, const Complex& z);

// order 0, 1, 2: F, dF/dz, d^2F/dz^2. `force` skips regime selection but still
// checks the forced regime's precondition.
HypEval gauss_2f1_eval(const HypParams& p, const Complex& z, const PrecisionContext& ctx,
                       int order = 0, std::optional<HypRegime> force = std::nullopt);

Complex gauss_2f1(const HypParams& p, const Complex& z, const PrecisionContext& ctx);
Complex gauss_2f1_dz(const HypParams& p, const Complex& z, const PrecisionContext& ctx);
Complex gauss_2f1_d2z(const HypParams& p, const Complex& z, const PrecisionContext& ctx);

Complex gen_3f2(const Hyp3F2Params& p, const Complex& z, const PrecisionContext& ctx);

// Parameter expression k0 + ka*a + kb*b + kc*c.
struct LinearForm {
  long k0 = 0, ka = 0, kb = 0, kc = 0;
  mpq_class eval(const HypParams& p) const { return k0 + ka * p.a + kb * p.b + kc * p.c; }
  std::string to_string() const;
};

enum class ArgumentMap { z, one_minus_z, inverse_z };

// prefactor z^{z_exp} (1-z)^{w_exp} times F(pa, pb; pc; arg(z)).
struct LocalSolution {
  LinearForm z_exp, w_exp;
  LinearForm pa, pb, pc;
  ArgumentMap arg;

  HypParams params(const HypParams& p) const { return {pa.eval(p), pb.eval(p), pc.eval(p)}; }
  // Value, first and second z-derivatives of the local solution.
  std::array<Complex, 3> evaluate(const HypParams& p, const Complex& z, const PrecisionContext& ctx) const;
  std::string to_string() const;
};

enum class SingularPoint { zero, one, infinity };

std::array<LocalSolution, 2> kummer_local_solutions(SingularPoint point);

// z(1-z)F'' + [c-(a+b+1)z]F' - abF, from caller-supplied F, F', F''.
Complex hypergeometric_ode_residual(const HypParams& p, const Complex& z, const Complex& f,
                                    const Complex& df, const Complex& d2f);

}  // namespace heegner
