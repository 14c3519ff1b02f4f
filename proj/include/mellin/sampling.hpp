#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mellin/convolution.hpp"

namespace mellin {

/// u_i = x1_i·x2_i (Product) or x2_i/x1_i (Ratio); x1 and x2 come from the
/// substreams "x1" and "x2" of seed.
std::vector<double> sample_convolution(const ConvolutionSpec& spec, std::uint64_t seed, std::size_t n);

/// Counts over contiguous bins [edges[i], edges[i+1]). A sample equal to the last
/// edge goes into the last bin; samples outside the edges are counted separately.
class Histogram {
 public:
  explicit Histogram(std::vector<double> edges);

  void add(double x);
  void add(const std::vector<double>& xs);

  std::size_t bins() const { return counts_.size(); }
  const std::vector<double>& edges() const { return edges_; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }
  std::uint64_t total() const { return total_; }
  std::uint64_t outside() const { return outside_; }

  double width(std::size_t i) const { return edges_[i + 1] - edges_[i]; }
  /// count_i / (total·width_i); total includes samples outside the edges.
  double density(std::size_t i) const;
  /// Binomial standard error of density(i); a single count stands in for empty bins.
  double standard_error(std::size_t i) const;
  /// Σ density_i·width_i = fraction of samples inside the edges.
  double integral() const;

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t outside_ = 0;
};

inline constexpr double kMcZThreshold = 4.0;

struct McPoint {
  double u = 0.0;
  double lo = 0.0, hi = 0.0;  // evaluation bin
  std::uint64_t count = 0;
  double empirical = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;  // bin average of the backend density
  double z = 0.0;
};

struct McReport {
  std::size_t n = 0;
  std::vector<McPoint> points;
  double max_z = 0.0;
  bool passed() const { return max_z <= kMcZThreshold; }
};

struct McOptions {
  // expected count aimed for in each evaluation bin
  double target_count = 20000.0;
  // bins never get narrower than this fraction of u
  double min_relative_width = 1e-3;
};

/// Histogram estimate of the density of u at each evaluation point compared
/// with the bin average of `density`. Evaluation bins are centred on the points,
/// sized for roughly target_count expected samples, kept inside the support and
/// disjoint. The estimate lives on a histogram whose outer bins reach the sample
/// extremes, so it integrates to one.
McReport mc_verify(const ConvolutionSpec& spec, const std::function<double(double)>& density, std::uint64_t seed,
                   std::size_t n, std::vector<double> eval_points, const McOptions& opts = {});

}  // namespace mellin
