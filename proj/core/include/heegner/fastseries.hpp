#pragma once

#include <gmpxx.h>

#include <string>

#include "heegner/kernel.hpp"

namespace heegner {

// Series sum_{n>=0} (A + n) t_n with t_n = (6n)!/((3n)! n!^3) (sign/C)^n.
// t_n / t_{n-1} = 8 (6n-5)(6n-3)(6n-1) sign Cd / (n^3 Cn) for C = Cn/Cd.
struct SeriesTermSpec {
  mpq_class A;
  mpq_class C;
  int sign = 1;

  // Per-index factors: p(n), q(n), a(n) = Anum + n Aden. p(0) = q(0) = 1.
  mpz_class p(long n) const;
  mpz_class q(long n) const;
  mpz_class a(long n) const;

  // Exact t_n and t_{n+1}/t_n.
  mpq_class term(long n) const;
  mpq_class ratio(long n) const;
};

// Exact state for the index range [n0, n1):
//   P = prod p(k), Q = prod q(k) over the range,
//   T / (Q * Aden) = sum_{n0 <= n < n1} (A + n) t_n / t_{n0-1}   (t_{-1} := 1).
struct SplitNode {
  mpz_class P, Q, T;
  long n0 = 0, n1 = 0;

  // Represented rational T / (Q * Aden).
  mpq_class value(const SeriesTermSpec& spec) const;
};

SplitNode merge(const SplitNode& left, const SplitNode& right);

// Balanced recursion. `threads` > 1 evaluates the top levels concurrently.
SplitNode binary_split(const SeriesTermSpec& spec, long n0, long n1, int threads = 1);

// Direct exact summation of the same range, for testing.
mpq_class direct_sum(const SeriesTermSpec& spec, long n0, long n1);

// Terms needed for working_bits of accuracy: ceil(w ln 2 / ln(|C|/1728)) + 8.
long series_terms(const SeriesTermSpec& spec, long working_bits);

// Threads from HEEGNER_PI_THREADS (unset -> hardware concurrency, 0 -> 1).
int default_threads();

Real sum_series(const SeriesTermSpec& spec, const PrecisionContext& ctx, long terms = -1);

// pi from the 163 series, at the context's working precision.
Real pi_value(const PrecisionContext& ctx);

// Decimal pi with `decimal_digits` significant digits, truncated: 10 -> "3.141592653".
std::string compute_pi(long decimal_digits);
// Same digits from the independent 67 series.
std::string cross_check_pi(long decimal_digits);

SeriesTermSpec chudnovsky_spec();
SeriesTermSpec spec_67();

}  // namespace heegner
