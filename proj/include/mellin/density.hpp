#pragma once

#include <string_view>

#include "mellin/convolution.hpp"
#include "mellin/eval_result.hpp"
#include "mellin/quadrature.hpp"

namespace mellin {

enum class Method { Auto, Series, Residue, Quadrature, Contour };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct DensityOptions {
  QuadConfig quad;
  ContourConfig contour;
};

/// Density of u by the chosen method. Series uses the matching closed form
/// (PatternMismatch when none applies). Auto tries the closed form, then the
/// generic residue sum, then quadrature.
EvalResult evaluate_density(const ConvolutionSpec& spec, double u, Method method = Method::Auto,
                            const DensityOptions& opts = {});

}  // namespace mellin
