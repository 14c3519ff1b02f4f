#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mellin/density.hpp"
#include "mellin/sampling.hpp"
#include "mellin/series.hpp"

namespace mellin {

inline constexpr double kMinPoleGap = 0.05;
inline constexpr double kBranchExclusion = 0.05;

/// Random parameters for a case, redrawn until the pole gap of the convolved
/// transform is at least kMinPoleGap. Ranges keep the closed forms well
/// conditioned and the Mellin-Barnes integrand decaying fast enough for the
/// contour backend.
ConvolutionSpec random_case_spec(CaseId id, std::mt19937_64& rng);

/// The canonical parameters of a case followed by draws - 1 random ones, all
/// determined by seed.
std::vector<ConvolutionSpec> case_draws(CaseId id, std::uint64_t seed, std::size_t draws);

/// Effective-argument interval covered by each convergence branch of a case
/// (one entry for unsplit cases), excluding kBranchExclusion around 1.
std::vector<std::pair<double, double>> branch_ranges(CaseId id);

/// u-values with log-spaced effective arguments inside each branch range.
std::vector<std::vector<double>> branch_grids(CaseId id, const ConvolutionSpec& spec, std::size_t points);

/// Absolute tolerance for pairwise backend agreement: max(1e-7, 1e-6·|value|).
double agreement_tolerance(double value);

struct PairDeviation {
  std::string pair;
  double max_abs = 0.0;
  // max over points of |difference| / agreement_tolerance
  double max_ratio = 0.0;
};

struct CaseVerification {
  CaseId id;
  std::size_t draws = 0;
  std::size_t points = 0;
  std::vector<PairDeviation> pairs;  // series-quad, series-contour, quad-contour
  std::vector<std::string> failures;
  bool mc_run = false;
  McReport mc;
  bool passed() const;
};

struct VerifyOptions {
  std::size_t draws = 3;
  std::size_t points_per_branch = 9;
  std::size_t mc_samples = 1000000;  // 0 disables the Monte Carlo check
  std::size_t mc_points = 5;
  std::uint64_t seed = 1;
  // multiplies every series value; 1 leaves results untouched
  double series_scale = 1.0;
  DensityOptions density;
};

/// Series, quadrature and contour agreement on the canonical parameters plus
/// opts.draws - 1 random draws, followed by a Monte Carlo check of the
/// canonical spec.
CaseVerification verify_case(CaseId id, const VerifyOptions& opts);

/// Evaluation points for the Monte Carlo check: the branch grids thinned to
/// `count` points.
std::vector<double> mc_points(CaseId id, const ConvolutionSpec& spec, std::size_t count);

}  // namespace mellin
