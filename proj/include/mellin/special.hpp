#pragma once

#include <span>
#include <vector>

#include "mellin/eval_result.hpp"

namespace mellin {

/// A real number stored as sign and log-magnitude; sign 0 encodes exact zero.
struct SignedLog {
  int sign = 1;
  double log_abs = 0.0;

  double value() const;
};

/// ln Γ(x) for x > 0. Throws ErrorKind::Domain otherwise.
double log_gamma(double x);

/// Γ(x) as (sign, ln|Γ(x)|) for any real x that is not a non-positive integer.
/// Arguments below 1/2 go through the reflection formula.
SignedLog gamma_signed(double x);

/// 1/Γ(x) in signed-log form; exactly zero (sign 0) at the poles of Γ.
SignedLog rgamma_signed(double x);

/// Rising factorial (a)_n = a(a+1)...(a+n-1), (a)_0 = 1.
double pochhammer(double a, unsigned n);

/// True when x is 0, -1, -2, ...
bool is_nonpositive_integer(double x);

struct HypSeriesSpec {
  std::vector<double> numerator_params;
  std::vector<double> denominator_params;
  double argument = 0.0;
};

inline constexpr double kHypDefaultTol = 1e-12;
inline constexpr unsigned kHypDefaultMaxTerms = 10000;
// p = q+1 series are refused for |z| >= 1 - kHypUnitMargin.
inline constexpr double kHypUnitMargin = 1e-3;

/// Generalized hypergeometric series pFq(a; b; z) with real parameters.
///
/// Terms are accumulated as sign plus log-magnitude so that large
/// intermediate terms do not overflow before they cancel. The sum stops once
/// |term| <= tol * |partial sum| holds for three consecutive terms, or when
/// the series terminates. abs_error carries the last included term plus a
/// rounding allowance proportional to the sum of absolute terms.
///
/// Throws NoConvergence, DivergentSeries or BadDenominator.
EvalResult hyp_series(const HypSeriesSpec& spec, double tol = kHypDefaultTol,
                      unsigned max_terms = kHypDefaultMaxTerms);

/// Convenience wrapper: pFq value only.
double hyp(std::span<const double> a, std::span<const double> b, double z);

}  // namespace mellin
