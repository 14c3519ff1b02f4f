#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "mellin/convolution.hpp"
#include "mellin/density.hpp"
#include "mellin/error.hpp"
#include "mellin/rng.hpp"
#include "mellin/sampling.hpp"
#include "mellin/series.hpp"

using namespace mellin;
using doctest::Approx;

namespace {

std::pair<double, double> mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1) / n)};
}

}  // namespace

TEST_CASE("substreams are deterministic and distinct") {
  auto a = substream(5, "x1");
  auto b = substream(5, "x1");
  auto c = substream(5, "x2");
  auto d = substream(5, "x1", 1);
  const auto first = a();
  CHECK(first == b());
  CHECK(first != c());
  CHECK(first != d());
}

TEST_CASE("sampled products and ratios have the right moments") {
  const std::size_t n = 100000;
  const auto uni = sample_convolution({Kind::Product, PathwayModel::type1_beta(1, 1), PathwayModel::type1_beta(1, 1)}, 1, n);
  auto [m1, s1] = mean_se(uni);
  CHECK(std::fabs(m1 - 0.25) <= 4 * s1);

  const auto rat = sample_convolution({Kind::Ratio, PathwayModel::gen_gamma(1), PathwayModel::gen_gamma(1)}, 2, n);
  const double p = static_cast<double>(std::count_if(rat.begin(), rat.end(), [](double u) { return u <= 1.0; })) / n;
  CHECK(std::fabs(p - 0.5) <= 4 * std::sqrt(0.25 / n));

  const auto gg = sample_convolution({Kind::Product, PathwayModel::gen_gamma(2), PathwayModel::gen_gamma(2)}, 3, n);
  auto [m3, s3] = mean_se(gg);
  CHECK(std::fabs(m3 - 4.0) <= 4 * s3);

  CHECK(sample_convolution(canonical_spec(CaseId::P2_5), 9, 100) == sample_convolution(canonical_spec(CaseId::P2_5), 9, 100));
}

TEST_CASE("histogram bookkeeping") {
  Histogram h({0.0, 1.0, 3.0});
  h.add(std::vector<double>{0.5, 1.0, 2.9, 3.0, -1.0, 7.0});
  CHECK(h.total() == 6);
  CHECK(h.outside() == 2);
  CHECK(h.count(0) == 1);
  CHECK(h.count(1) == 3);
  CHECK(h.density(1) == Approx(3.0 / (6.0 * 2.0)));
  CHECK(h.integral() == Approx(4.0 / 6.0));
  CHECK(h.standard_error(0) > 0.0);
}

TEST_CASE("Monte Carlo confirms exact densities") {
  const ConvolutionSpec uni{Kind::Product, PathwayModel::type1_beta(1, 1), PathwayModel::type1_beta(1, 1)};
  const auto r = mc_verify(uni, [](double u) { return -std::log(u); }, 11, 1000000, {0.2, 0.5, 0.8});
  CHECK(r.points.size() == 3);
  CHECK(r.passed());
  for (const auto& p : r.points) CHECK(p.lo < p.u);

  const auto spec = canonical_spec(CaseId::P3_1);
  const auto series = [&](double u) { return evaluate_density(spec, u).value; };
  const std::vector<double> pts{0.3, 0.6, 1.5, 2.5, 4.0};
  CHECK(mc_verify(spec, series, 12, 1000000, pts).passed());
}

TEST_CASE("Monte Carlo detects a density scaled by 1.1") {
  const auto spec = canonical_spec(CaseId::P3_1);
  const auto wrong = [&](double u) { return 1.1 * evaluate_density(spec, u).value; };
  const auto r = mc_verify(spec, wrong, 12, 1000000, {0.3, 0.6, 1.5, 2.5, 4.0});
  CHECK(r.max_z > kMcZThreshold);
  CHECK_FALSE(r.passed());
}
