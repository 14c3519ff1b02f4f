#include "mellin/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mellin/error.hpp"
#include "mellin/rng.hpp"

namespace mellin {

std::vector<double> sample_convolution(const ConvolutionSpec& spec, std::uint64_t seed, std::size_t n) {
  spec.validate();
  auto r1 = substream(seed, "x1");
  auto r2 = substream(seed, "x2");
  std::vector<double> out(n);
  for (auto& u : out) {
    const double x1 = draw(spec.f1, r1);
    const double x2 = draw(spec.f2, r2);
    u = spec.kind == Kind::Product ? x1 * x2 : x2 / x1;
  }
  return out;
}

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2 || !std::is_sorted(edges_.begin(), edges_.end()) ||
      std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorKind::Domain, "histogram edges must be strictly increasing");
  counts_.assign(edges_.size() - 1, 0);
}

void Histogram::add(double x) {
  ++total_;
  if (x < edges_.front() || x > edges_.back() || std::isnan(x)) {
    ++outside_;
    return;
  }
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - edges_.begin());
  i = i == 0 ? 0 : i - 1;
  ++counts_[std::min(i, counts_.size() - 1)];
}

void Histogram::add(const std::vector<double>& xs) {
  for (double x : xs) add(x);
}

double Histogram::density(std::size_t i) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_[i]) / (static_cast<double>(total_) * width(i));
}

double Histogram::standard_error(std::size_t i) const {
  const double n = static_cast<double>(std::max<std::uint64_t>(total_, 1));
  const double c = static_cast<double>(std::max<std::uint64_t>(counts_[i], 1));
  return std::sqrt(c * (1.0 - std::min(c / n, 1.0))) / (n * width(i));
}

double Histogram::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < bins(); ++i) s += density(i) * width(i);
  return s;
}

McReport mc_verify(const ConvolutionSpec& spec, const std::function<double(double)>& density, std::uint64_t seed,
                   std::size_t n, std::vector<double> eval_points, const McOptions& opts) {
  if (n == 0) throw Error(ErrorKind::Domain, "sample count must be positive");
  std::sort(eval_points.begin(), eval_points.end());
  eval_points.erase(std::unique(eval_points.begin(), eval_points.end()), eval_points.end());
  const double upper = support_upper(spec);
  for (double u : eval_points)
    if (!(u > 0.0) || !(u < upper)) throw Error(ErrorKind::Domain, "evaluation point outside the support");

  const std::size_t m = eval_points.size();
  std::vector<double> half(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = eval_points[i];
    const double g = density(u);
    double h = g > 0 ? opts.target_count / (static_cast<double>(n) * g) : 0.1 * u;
    h = std::clamp(h, opts.min_relative_width * u, u);
    if (std::isfinite(upper)) h = std::min(h, 2.0 * (upper - u));
    half[i] = 0.5 * h;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double gap = eval_points[i + 1] - eval_points[i];
    half[i] = std::min(half[i], 0.49 * gap);
    half[i + 1] = std::min(half[i + 1], 0.49 * gap);
  }

  std::vector<double> samples = sample_convolution(spec, seed, n);
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  std::vector<double> edges;
  std::vector<std::size_t> bin_of(m);
  edges.push_back(std::min(*mn, eval_points.front() - half.front()));
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = eval_points[i] - half[i];
    if (lo > edges.back()) edges.push_back(lo);
    bin_of[i] = edges.size() - 1;
    edges.push_back(eval_points[i] + half[i]);
  }
  if (*mx > edges.back()) edges.push_back(*mx);

  Histogram hist(edges);
  hist.add(samples);

  boost::math::quadrature::tanh_sinh<double> ts;
  McReport rep;
  rep.n = n;
  for (std::size_t i = 0; i < m; ++i) {
    McPoint p;
    p.u = eval_points[i];
    const std::size_t b = bin_of[i];
    p.lo = edges[b];
    p.hi = edges[b + 1];
    p.count = hist.count(b);
    p.empirical = hist.density(b);
    p.standard_error = hist.standard_error(b);
    p.analytic = ts.integrate(density, p.lo, p.hi) / (p.hi - p.lo);
    p.z = (p.empirical - p.analytic) / p.standard_error;
    rep.max_z = std::max(rep.max_z, std::fabs(p.z));
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace mellin
