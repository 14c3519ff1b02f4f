#pragma once

#include <cstddef>
#include <string_view>

namespace mellin {

enum class Backend { Series, Residue, Quadrature, Contour, MonteCarlo };

std::string_view to_string(Backend b);

struct EvalResult {
  double value = 0.0;
  double abs_error = 0.0;
  Backend backend = Backend::Series;
  // terms summed, integrand evaluations or samples, depending on backend
  std::size_t evaluations = 0;
  // refinement levels, subdivisions or contour octaves
  std::size_t refinements = 0;
};

}  // namespace mellin
