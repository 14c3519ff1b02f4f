#pragma once

#include <functional>
#include <optional>

#include "mellin/convolution.hpp"
#include "mellin/eval_result.hpp"
#include "mellin/gamma_expr.hpp"

namespace mellin {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  unsigned max_subdivisions = 2000;

  /// Throws InvalidModel unless tolerances are positive and max_subdivisions >= 10.
  void validate() const;
};

/// g(u) = ∫ f1(u/v) f2(v) dv/v, evaluated in both orderings of the factors.
/// The result is their mean; abs_error is the larger of the quadrature error
/// estimates and half the disagreement. Zero outside the support.
EvalResult product_density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg = {});

/// g(u) for u = x2/x1 from the two representations
/// ∫ (v/u²) f1(v/u) f2(v) dv and ∫ v f1(v) f2(uv) dv.
EvalResult ratio_density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg = {});

/// Dispatches on spec.kind.
EvalResult density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg = {});

/// ∫_0^xmax x^(s-1) pdf(x) dx. With xmax = +inf the substitution x = t/(1-t) maps
/// the range onto (0, 1).
EvalResult mellin_numeric(const std::function<double(double)>& pdf, double s, const QuadConfig& cfg = {},
                          double xmax = kInf);

/// Same for a pathway model; the density is evaluated in log form with exact
/// distances to the right end of a bounded support.
EvalResult mellin_numeric(const PathwayModel& m, double s, const QuadConfig& cfg = {});

struct ContourConfig {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  double first_octave = 20.0;
  // T stops doubling after this many octaves (SlowDecay beyond)
  unsigned max_octaves = 16;
  unsigned max_depth = 15;
};

/// g(u) = (1/π) ∫_0^∞ Re[expr(c+it) u^(-c-it)] dt over octaves [0,T0], [T0,2T0],
/// [2T0,4T0], ... until the last octave and the tail estimate |integrand(T)|·T are
/// both below tolerance. c defaults to strip().abscissa().
///
/// Throws OutOfStrip or SlowDecay.
EvalResult inverse_mellin_contour(const GammaExpr& expr, double u, std::optional<double> c = std::nullopt,
                                  const ContourConfig& cfg = {});

}  // namespace mellin
