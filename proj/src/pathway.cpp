#include "mellin/pathway.hpp"

#include <cmath>
#include <cstdio>

#include "mellin/error.hpp"
#include "mellin/rng.hpp"

namespace mellin {

std::mt19937_64 substream(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  // FNV-1a over the label keeps the derivation independent of std::hash.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Type1Beta: return "Type1Beta";
    case Family::Type2Beta: return "Type2Beta";
    case Family::GenGamma: return "GenGamma";
  }
  return "Unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "Type1Beta") return Family::Type1Beta;
  if (name == "Type2Beta") return Family::Type2Beta;
  if (name == "GenGamma") return Family::GenGamma;
  throw Error(ErrorKind::InvalidModel, "unknown family '" + std::string(name) + "'");
}

PathwayModel PathwayModel::type1_beta(double alpha, double beta, double a, double delta) {
  return {Family::Type1Beta, alpha, beta, a, delta};
}
PathwayModel PathwayModel::type2_beta(double alpha, double beta, double a, double delta) {
  return {Family::Type2Beta, alpha, beta, a, delta};
}
PathwayModel PathwayModel::gen_gamma(double alpha, double a, double delta) {
  return {Family::GenGamma, alpha, 1.0, a, delta};
}

void PathwayModel::validate() const {
  auto bad = [](double v) { return !std::isfinite(v) || !(v > 0.0); };
  if (bad(alpha)) throw Error(ErrorKind::InvalidModel, "alpha must be positive");
  if (bad(a)) throw Error(ErrorKind::InvalidModel, "a must be positive");
  if (bad(delta)) throw Error(ErrorKind::InvalidModel, "delta must be positive");
  if (has_beta() && bad(beta)) throw Error(ErrorKind::InvalidModel, "beta must be positive");
}

double PathwayModel::support_upper() const {
  if (family == Family::Type1Beta) return std::pow(a, -1.0 / delta);
  return kInf;
}

double log_norm_constant(const PathwayModel& m) {
  const double r = m.alpha / m.delta;
  double c = std::log(m.delta) + r * std::log(m.a) - log_gamma(r);
  if (m.has_beta()) c += log_gamma(r + m.beta) - log_gamma(m.beta);
  return c;
}

double log_pdf_at_log(const PathwayModel& m, double log_x, double edge_gap) {
  const double k = log_norm_constant(m);
  switch (m.family) {
    case Family::Type1Beta: {
      if (edge_gap < 0.0) return -kInf;
      if (edge_gap == 0.0) {
        if (m.beta < 1.0) return kInf;
        if (m.beta > 1.0) return -kInf;
        return k + (m.alpha - 1.0) * log_x;
      }
      const double gap = -std::expm1(-m.delta * edge_gap);
      double v = k + (m.alpha - 1.0) * log_x;
      if (m.beta != 1.0) v += (m.beta - 1.0) * std::log(gap);
      return v;
    }
    case Family::Type2Beta: {
      const double y = std::log(m.a) + m.delta * log_x;
      const double l1p = y > 0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
      return k + (m.alpha - 1.0) * log_x - (m.alpha / m.delta + m.beta) * l1p;
    }
    case Family::GenGamma:
      return k + (m.alpha - 1.0) * log_x - std::exp(std::log(m.a) + m.delta * log_x);
  }
  return -kInf;
}

double pdf(const PathwayModel& m, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (m.alpha > 1.0) return 0.0;
    if (m.alpha < 1.0) return kInf;
    return std::exp(log_norm_constant(m));
  }
  const double lx = std::log(x);
  const double edge = -std::log(m.a) / m.delta - lx;
  if (m.family == Family::Type1Beta && x >= m.support_upper()) return 0.0;
  return std::exp(log_pdf_at_log(m, lx, edge));
}

GammaExpr mellin_transform(const PathwayModel& m) {
  m.validate();
  const double inv = 1.0 / m.delta;
  const double r = m.alpha * inv;
  const double scale = std::pow(m.a, inv);
  const GammaFactor lead{(m.alpha - 1.0) * inv, inv};
  switch (m.family) {
    case Family::Type1Beta:
      return GammaExpr(scale * std::exp(log_gamma(r + m.beta) - log_gamma(r)), scale, {lead},
                       {{(m.alpha - 1.0) * inv + m.beta, inv}}, strip(m));
    case Family::Type2Beta:
      return GammaExpr(scale * std::exp(-log_gamma(r) - log_gamma(m.beta)), scale,
                       {lead, {m.beta + inv, -inv}}, {}, strip(m));
    case Family::GenGamma:
      return GammaExpr(scale * std::exp(-log_gamma(r)), scale, {lead}, {}, strip(m));
  }
  throw Error(ErrorKind::InvalidModel, "unknown family");
}

Strip strip(const PathwayModel& m) {
  if (m.family == Family::Type2Beta) return {1.0 - m.alpha, 1.0 + m.beta * m.delta};
  return {1.0 - m.alpha, kInf};
}

double draw(const PathwayModel& m, std::mt19937_64& rng) {
  std::gamma_distribution<double> g1(m.alpha / m.delta, 1.0);
  double y = g1(rng);
  if (m.has_beta()) {
    std::gamma_distribution<double> g2(m.beta, 1.0);
    const double w = g2(rng);
    y = m.family == Family::Type1Beta ? y / (y + w) : y / w;
  }
  return std::pow(y / m.a, 1.0 / m.delta);
}

std::vector<double> sample(const PathwayModel& m, std::uint64_t seed, std::size_t n) {
  m.validate();
  auto rng = substream(seed, "model");
  std::vector<double> out(n);
  for (auto& x : out) x = draw(m, rng);
  return out;
}

std::string to_string(const PathwayModel& m) {
  char buf[160];
  if (m.has_beta())
    std::snprintf(buf, sizeof buf, "%s(alpha=%.6g, beta=%.6g, a=%.6g, delta=%.6g)",
                  std::string(to_string(m.family)).c_str(), m.alpha, m.beta, m.a, m.delta);
  else
    std::snprintf(buf, sizeof buf, "%s(alpha=%.6g, a=%.6g, delta=%.6g)",
                  std::string(to_string(m.family)).c_str(), m.alpha, m.a, m.delta);
  return buf;
}

}  // namespace mellin
