#include "mellin/verification.hpp"

#include <algorithm>
#include <cmath>

#include "mellin/error.hpp"
#include "mellin/quadrature.hpp"

namespace mellin {

namespace {

using P = PathwayModel;

ConvolutionSpec draw_once(CaseId id, std::mt19937_64& rng) {
  auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  // model alpha is the shifted exponent plus one
  auto ex = [&](double lo, double hi) { return U(lo, hi) + 1.0; };
  switch (id) {
    case CaseId::P2_1: return {Kind::Product, P::type2_beta(ex(-0.5, 1), U(0.5, 2)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P2_2:
      return {Kind::Product, P::type2_beta(ex(-0.5, 0.5), U(0.5, 1.5)), P::type2_beta(ex(-0.5, 0.5), U(0.5, 1.5))};
    case CaseId::P2_3: return {Kind::Product, P::type1_beta(ex(-0.5, 1), U(2, 4)), P::type1_beta(ex(-0.5, 1), U(2, 4))};
    case CaseId::P2_4: return {Kind::Product, P::type1_beta(ex(-0.5, 1), U(0.5, 3)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P2_5: return {Kind::Product, P::type1_beta(ex(-0.5, 1), U(0.5, 3)), P::type2_beta(ex(-0.5, 1), U(0.5, 2))};
    case CaseId::P2_6: return {Kind::Product, P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P2_7: {
      const double d = U(0.7, 1.5);
      return {Kind::Product, P::type2_beta(ex(-0.5, 0.5), U(0.5, 1.5), U(0.5, 2), d),
              P::type2_beta(ex(-0.5, 0.5), U(0.5, 1.5), U(0.5, 2), d)};
    }
    case CaseId::P3_1: return {Kind::Ratio, P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P3_2: return {Kind::Ratio, P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2)), P::type2_beta(ex(-0.5, 1), U(0.5, 2))};
    case CaseId::P3_3: return {Kind::Ratio, P::type2_beta(ex(-0.5, 1), U(0.5, 2)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P3_4: return {Kind::Ratio, P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2)), P::type1_beta(ex(-0.5, 1), U(0.5, 3))};
    case CaseId::P3_5: return {Kind::Ratio, P::type1_beta(ex(-0.5, 1), U(0.5, 3)), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2))};
    case CaseId::P3_6: return {Kind::Ratio, P::type1_beta(ex(-0.5, 1), U(2, 4)), P::type1_beta(ex(-0.5, 1), U(2, 4))};
    case CaseId::P3_7: {
      const double d = U(0.7, 1.5);
      return {Kind::Ratio, P::type2_beta(ex(-0.5, 1), U(0.5, 2), U(0.5, 2), d), P::gen_gamma(ex(-0.5, 1.5), U(0.5, 2), d)};
    }
  }
  throw Error(ErrorKind::PatternMismatch, "unknown case");
}

}  // namespace

ConvolutionSpec random_case_spec(CaseId id, std::mt19937_64& rng) {
  for (;;) {
    ConvolutionSpec s = draw_once(id, rng);
    if (min_pole_gap(convolved_transform(s)) >= kMinPoleGap) return s;
  }
}

std::vector<std::pair<double, double>> branch_ranges(CaseId id) {
  const double lo = 1.0 - kBranchExclusion, hi = 1.0 + kBranchExclusion;
  switch (id) {
    case CaseId::P2_2:
    case CaseId::P2_5:
    case CaseId::P2_7:
    case CaseId::P3_1:
    case CaseId::P3_6: return {{0.05, lo}, {hi, 20.0}};
    case CaseId::P2_3: return {{0.05, lo}};
    case CaseId::P2_1:
    case CaseId::P3_3: return {{0.05, 3.0}};
    case CaseId::P2_4: return {{0.05, 3.0}};
    case CaseId::P2_6: return {{0.05, 6.0}};
    case CaseId::P3_2: return {{0.25, 20.0}};
    case CaseId::P3_4: return {{0.3, 20.0}};
    case CaseId::P3_5: return {{0.05, 5.0}};
    case CaseId::P3_7: return {{0.05, 2.0}};
  }
  return {};
}

std::vector<std::vector<double>> branch_grids(CaseId id, const ConvolutionSpec& spec, std::size_t points) {
  // effective argument = k·u^p for every case
  const double k = case_effective_argument(id, spec, 1.0);
  const double p = std::log(case_effective_argument(id, spec, std::exp(1.0)) / k);
  std::vector<std::vector<double>> out;
  for (const auto& [a, b] : branch_ranges(id)) {
    std::vector<double> g;
    for (std::size_t i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(points - 1);
      const double eff = std::exp(std::log(a) + t * (std::log(b) - std::log(a)));
      g.push_back(std::pow(eff / k, 1.0 / p));
    }
    out.push_back(std::move(g));
  }
  return out;
}

double agreement_tolerance(double value) { return std::max(1e-7, 1e-6 * std::fabs(value)); }

bool CaseVerification::passed() const {
  if (!failures.empty()) return false;
  for (const auto& p : pairs)
    if (p.max_ratio > 1.0) return false;
  return !mc_run || mc.passed();
}

std::vector<double> mc_points(CaseId id, const ConvolutionSpec& spec, std::size_t count) {
  std::vector<double> all;
  for (const auto& g : branch_grids(id, spec, 9)) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  if (count == 0 || all.empty()) return {};
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = count == 1 ? all.size() / 2 : (i * (all.size() - 1)) / (count - 1);
    out.push_back(all[j]);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ConvolutionSpec> case_draws(CaseId id, std::uint64_t seed, std::size_t draws) {
  std::vector<ConvolutionSpec> specs{canonical_spec(id)};
  auto rng = std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(id) + 1)));
  for (std::size_t d = 1; d < draws; ++d) specs.push_back(random_case_spec(id, rng));
  return specs;
}

CaseVerification verify_case(CaseId id, const VerifyOptions& opts) {
  CaseVerification rep;
  rep.id = id;
  rep.pairs = {{"series-quad"}, {"series-contour"}, {"quad-contour"}};
  const std::vector<ConvolutionSpec> specs = case_draws(id, opts.seed, opts.draws);
  rep.draws = specs.size();

  auto note = [&](PairDeviation& p, double a, double b) {
    const double diff = std::fabs(a - b);
    p.max_abs = std::max(p.max_abs, diff);
    p.max_ratio = std::max(p.max_ratio, diff / agreement_tolerance(std::max(std::fabs(a), std::fabs(b))));
  };
  for (const auto& spec : specs) {
    const GammaExpr expr = convolved_transform(spec);
    for (const auto& grid : branch_grids(id, spec, opts.points_per_branch)) {
      for (double u : grid) {
        try {
          const double s = eval_case(id, spec, u).value * opts.series_scale;
          const double q = density_quad(spec, u, opts.density.quad).value;
          const double c = inverse_mellin_contour(expr, u, std::nullopt, opts.density.contour).value;
          note(rep.pairs[0], s, q);
          note(rep.pairs[1], s, c);
          note(rep.pairs[2], q, c);
          ++rep.points;
        } catch (const Error& e) {
          rep.failures.push_back(to_string(spec.f1) + " / " + to_string(spec.f2) + " at u=" + std::to_string(u) +
                                 ": " + e.what());
        }
      }
    }
  }

  if (opts.mc_samples > 0) {
    const ConvolutionSpec& spec = specs.front();
    auto density = [&](double u) {
      return evaluate_density(spec, u, Method::Auto, opts.density).value * opts.series_scale;
    };
    rep.mc = mc_verify(spec, density, opts.seed, opts.mc_samples, mc_points(id, spec, opts.mc_points));
    rep.mc_run = true;
  }
  return rep;
}

}  // namespace mellin
