#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mellin/error.hpp"
#include "mellin/quadrature.hpp"

namespace mellin {

EvalResult inverse_mellin_contour(const GammaExpr& expr, double u, std::optional<double> c,
                                  const ContourConfig& cfg) {
  if (!(u > 0.0)) throw Error(ErrorKind::Domain, "density argument must be positive");
  const double x = c.value_or(expr.strip().abscissa());
  if (!expr.strip().contains(x)) throw Error(ErrorKind::OutOfStrip, "contour abscissa outside the strip");

  const double lu = std::log(u);
  EvalResult out;
  out.backend = Backend::Contour;
  auto f = [&](double t) {
    ++out.evaluations;
    const std::complex<double> s(x, t);
    return std::exp(expr.log_eval(s) - s * lu).real();
  };

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double a = 0.0, b = cfg.first_octave, sum = 0.0, err_sum = 0.0;
  for (unsigned k = 0; k <= cfg.max_octaves; ++k) {
    double err = 0.0;
    const double piece = GK::integrate(f, a, b, cfg.max_depth, cfg.rel_tol, &err);
    sum += piece;
    err_sum += err;
    ++out.refinements;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(sum)) * std::numbers::pi;
    const std::complex<double> sb(x, b);
    const double tail = std::exp((expr.log_eval(sb) - sb * lu).real()) * b;
    if (k > 0 && std::fabs(piece) < tol && tail < tol) {
      out.value = sum / std::numbers::pi;
      out.abs_error = (err_sum + std::fabs(piece) + tail) / std::numbers::pi;
      return out;
    }
    a = b;
    b *= 2.0;
  }
  throw Error(ErrorKind::SlowDecay, "Mellin-Barnes integrand decays too slowly along the contour");
}

}  // namespace mellin
