#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mellin/gamma_expr.hpp"
#include "mellin/strip.hpp"

namespace mellin {

enum class Family { Type1Beta, Type2Beta, GenGamma };

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

/// Pathway-family density with x^(alpha-1) as the power of x:
///   Type1Beta  ∝ x^(alpha-1) (1 - a x^delta)^(beta-1), 1 - a x^delta > 0
///   Type2Beta  ∝ x^(alpha-1) (1 + a x^delta)^(-(alpha/delta + beta))
///   GenGamma   ∝ x^(alpha-1) exp(-a x^delta)
/// beta is ignored for GenGamma.
struct PathwayModel {
  Family family = Family::GenGamma;
  double alpha = 1.0;
  double beta = 1.0;
  double a = 1.0;
  double delta = 1.0;

  static PathwayModel type1_beta(double alpha, double beta, double a = 1.0, double delta = 1.0);
  static PathwayModel type2_beta(double alpha, double beta, double a = 1.0, double delta = 1.0);
  static PathwayModel gen_gamma(double alpha, double a = 1.0, double delta = 1.0);

  bool has_beta() const { return family != Family::GenGamma; }

  /// Throws InvalidModel if any parameter is out of range.
  void validate() const;

  /// Right end of the support: (1/a)^(1/delta) for Type1Beta, +inf otherwise.
  double support_upper() const;

  bool operator==(const PathwayModel&) const = default;
};

double pdf(const PathwayModel& m, double x);

/// log pdf at x = exp(log_x). For Type1Beta, edge_gap = log(x_max) - log(x)
/// must be supplied (it is used instead of recomputing 1 - a x^delta, which
/// loses all precision near the right end of the support). Returns -inf
/// outside the support.
double log_pdf_at_log(const PathwayModel& m, double log_x, double edge_gap);

/// log of the normalizing constant.
double log_norm_constant(const PathwayModel& m);

GammaExpr mellin_transform(const PathwayModel& m);
Strip strip(const PathwayModel& m);

/// One draw from the model using the supplied generator.
double draw(const PathwayModel& m, std::mt19937_64& rng);

/// n i.i.d. draws; deterministic in seed.
std::vector<double> sample(const PathwayModel& m, std::uint64_t seed, std::size_t n);

std::string to_string(const PathwayModel& m);

}  // namespace mellin
