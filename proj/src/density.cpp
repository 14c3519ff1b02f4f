#include "mellin/density.hpp"

#include <cmath>
#include <string>

#include "mellin/error.hpp"
#include "mellin/series.hpp"

namespace mellin {

namespace {
constexpr double kAutoSeriesRelTol = 1e-9;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::Series: return "series";
    case Method::Residue: return "residue";
    case Method::Quadrature: return "quad";
    case Method::Contour: return "contour";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (Method m : {Method::Auto, Method::Series, Method::Residue, Method::Quadrature, Method::Contour})
    if (to_string(m) == name) return m;
  throw Error(ErrorKind::InvalidModel, "unknown method '" + std::string(name) + "'");
}

EvalResult evaluate_density(const ConvolutionSpec& spec, double u, Method method, const DensityOptions& opts) {
  spec.validate();
  switch (method) {
    case Method::Series: {
      const auto match = classify(spec);
      if (!match) throw Error(ErrorKind::PatternMismatch, "no closed form covers this model pair");
      return eval_case(match->id, match->spec, u);
    }
    case Method::Residue: {
      if (!(u > 0.0)) throw Error(ErrorKind::Domain, "density argument must be positive");
      if (u >= support_upper(spec)) return EvalResult{0.0, 0.0, Backend::Residue, 0, 0};
      return eval_by_residues(convolved_transform(spec), u);
    }
    case Method::Quadrature: return density_quad(spec, u, opts.quad);
    case Method::Contour: return inverse_mellin_contour(convolved_transform(spec), u, std::nullopt, opts.contour);
    case Method::Auto: break;
  }
  for (Method m : {Method::Series, Method::Residue}) {
    try {
      const EvalResult r = evaluate_density(spec, u, m, opts);
      // series that lost digits to cancellation defer to quadrature
      if (r.abs_error <= kAutoSeriesRelTol * std::fabs(r.value) + opts.quad.abs_tol) return r;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Domain) throw;
    }
  }
  return density_quad(spec, u, opts.quad);
}

}  // namespace mellin
