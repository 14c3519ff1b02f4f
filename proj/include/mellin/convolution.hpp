#pragma once

#include <string_view>

#include "mellin/gamma_expr.hpp"
#include "mellin/pathway.hpp"

namespace mellin {

enum class Kind { Product, Ratio };

std::string_view to_string(Kind k);
Kind kind_from_string(std::string_view name);

/// Two independent pathway variables and the combination of interest.
/// Product: u = x1·x2. Ratio: u = x2/x1, so f1 belongs to the denominator.
struct ConvolutionSpec {
  Kind kind = Kind::Product;
  PathwayModel f1;
  PathwayModel f2;

  void validate() const;
  bool operator==(const ConvolutionSpec&) const = default;
};

/// Mellin transform of the density of u.
GammaExpr convolved_transform(const ConvolutionSpec& spec);

/// Right end of the support of u (+inf when unbounded). The left end is 0.
double support_upper(const ConvolutionSpec& spec);

}  // namespace mellin
