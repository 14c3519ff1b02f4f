#include "mellin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "mellin/error.hpp"

namespace mellin {

void QuadConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw Error(ErrorKind::InvalidModel, "quadrature tolerances must be positive");
  if (max_subdivisions < 10) throw Error(ErrorKind::InvalidModel, "max_subdivisions must be at least 10");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t refinement_cap(const QuadConfig& cfg) {
  return static_cast<std::size_t>(std::clamp(std::log2(static_cast<double>(cfg.max_subdivisions)) + 4.0, 8.0, 20.0));
}

// log x = sigma·t + offset for one density factor.
struct Factor {
  PathwayModel model;
  double sigma = 1.0;
  double offset = 0.0;
  bool bounded = false;
  double bound = 0.0;  // t where log x reaches the right end of the support
};

// Typical location of the density mass in log x.
double log_center(const PathwayModel& m) {
  const double r = m.alpha / m.delta;
  double y = 1.0;
  switch (m.family) {
    case Family::GenGamma: y = r; break;
    case Family::Type2Beta: y = r / m.beta; break;
    case Family::Type1Beta: y = r / (r + std::max(m.beta - 1.0, 0.0) + 1e-3); break;
  }
  return (std::log(y) - std::log(m.a)) / m.delta;
}

class LogIntegrand {
 public:
  LogIntegrand(std::vector<Factor> factors, double w, double w0) : factors_(std::move(factors)), w_(w), w0_(w0) {
    for (auto& f : factors_) {
      if (f.model.family != Family::Type1Beta) continue;
      f.bounded = true;
      const double lm = std::log(f.model.support_upper());
      f.bound = (lm - f.offset) / f.sigma;
      if (f.sigma > 0) hi_ = std::min(hi_, f.bound);
      else lo_ = std::max(lo_, f.bound);
    }
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // anchor/r: t = anchor ± r, with r exact; used for the edge gap at the anchor.
  double operator()(double t, double anchor, double r) const {
    double s = w_ * t + w0_;
    for (const auto& f : factors_) {
      double gap = 0.0;
      if (f.bounded) gap = f.bound == anchor ? r : f.sigma * (f.bound - t);
      s += log_pdf_at_log(f.model, f.sigma * t + f.offset, gap);
      if (s == kNegInf) return s;
    }
    return s;
  }

  double log_at(double t) const { return (*this)(t, std::numeric_limits<double>::quiet_NaN(), 0.0); }

  std::pair<double, double> window() const {
    double a = std::numeric_limits<double>::infinity(), b = -a;
    for (const auto& f : factors_) {
      const double c = (log_center(f.model) - f.offset) / f.sigma;
      a = std::min(a, c);
      b = std::max(b, c);
    }
    return {a - 60.0, b + 60.0};
  }

 private:
  std::vector<Factor> factors_;
  double w_, w0_;
  double lo_ = kNegInf;
  double hi_ = std::numeric_limits<double>::infinity();
};

struct Piecewise {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  std::size_t evaluations = 0;
  std::size_t levels = 0;
};

Piecewise integrate(const LogIntegrand& phi, const QuadConfig& cfg) {
  Piecewise out;
  const double L = phi.lo(), H = phi.hi();
  if (!(L < H)) return out;

  auto [wa, wb] = phi.window();
  if (std::isfinite(L)) wa = std::max(wa, L);
  if (std::isfinite(H)) wb = std::min(wb, H);
  if (!(wa < wb)) {
    wa = std::isfinite(L) ? L : H - 1.0;
    wb = std::isfinite(H) ? H : L + 1.0;
  }
  constexpr int kGrid = 600;
  const double step = (wb - wa) / kGrid;
  int best = -1;
  double best_val = kNegInf;
  for (int i = 1; i < kGrid; ++i) {
    const double v = phi.log_at(wa + i * step);
    ++out.evaluations;
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best < 0 || !std::isfinite(best_val)) {
    // Mass is concentrated at a singular edge or underflows; anchor at the grid middle.
    best = kGrid / 2;
    best_val = phi.log_at(wa + best * step);
    if (!std::isfinite(best_val)) best_val = 0.0;
  } else {
    auto neg = [&](double t) { return -phi.log_at(t); };
    const auto m = boost::math::tools::brent_find_minima(neg, wa + (best - 1) * step, wa + (best + 1) * step, 40);
    if (std::isfinite(m.second) && -m.second > best_val) best_val = -m.second;
    best = 0;
    wa = m.first;  // reuse as peak location
  }
  double peak = best == 0 ? wa : wa + best * step;
  // Split point stays clear of finite edges, where the integrand may be singular.
  const double margin = std::min(0.5, 0.25 * (H - L));
  if (std::isfinite(H) && H - peak < margin) peak = H - margin;
  if (std::isfinite(L) && peak - L < margin) peak = L + margin;
  // Geometric probes toward finite edges catch maxima squeezed against them.
  double shift = best_val;
  for (int k = 1; k <= 60; ++k) {
    const double d = step * std::ldexp(1.0, -k);
    for (const double t : {L + d, H - d}) {
      if (!std::isfinite(t) || !(t > L && t < H)) continue;
      const double v = phi.log_at(t);
      ++out.evaluations;
      if (std::isfinite(v) && v > shift) shift = v;
    }
  }
  if (!std::isfinite(shift)) shift = 0.0;
  // The whole integrand underflows.
  if (shift < -1000.0) return out;

  const std::size_t cap = refinement_cap(cfg);
  boost::math::quadrature::tanh_sinh<double> ts(cap);
  boost::math::quadrature::exp_sinh<double> es(cap);
  const double tol = cfg.rel_tol / 8;

  auto add = [&](double v, double e, double l1, std::size_t lv) {
    out.value += v;
    out.error += e;
    out.l1 += l1;
    out.levels = std::max(out.levels, lv);
  };
  auto expf = [&](double lv) {
    ++out.evaluations;
    return lv == kNegInf ? 0.0 : std::exp(lv - shift);
  };

  // [L, peak] then [peak, H]; finite pieces are split at their midpoint so that
  // each tanh-sinh half is anchored at one exact endpoint.
  auto finite_piece = [&](double a, double b) {
    const double h = 0.5 * (b - a);
    if (!(h > 0)) return;
    double e = 0, l1 = 0;
    std::size_t lv = 0;
    double v = ts.integrate([&](double r) { return expf(phi(a + r, a, r)); }, 0.0, h, tol, &e, &l1, &lv);
    add(v, e, l1, lv);
    v = ts.integrate([&](double r) { return expf(phi(b - r, b, r)); }, 0.0, h, tol, &e, &l1, &lv);
    add(v, e, l1, lv);
  };
  auto tail_piece = [&](double a, double dir) {
    double e = 0, l1 = 0;
    std::size_t lv = 0;
    const double v = es.integrate([&](double r) { return expf(phi(a + dir * r, a, r)); }, tol, &e, &l1, &lv);
    add(v, e, l1, lv);
  };

  if (std::isfinite(L)) finite_piece(L, peak);
  else tail_piece(peak, -1.0);
  if (std::isfinite(H)) finite_piece(peak, H);
  else tail_piece(peak, 1.0);

  const double scale = std::exp(shift);
  out.value *= scale;
  out.error *= scale;
  out.l1 *= scale;
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
  if (!std::isfinite(out.value) || out.error > target)
    throw Error(ErrorKind::NoConvergence, "quadrature did not reach the requested tolerance");
  return out;
}

EvalResult combine(const Piecewise& a, const Piecewise& b) {
  EvalResult r;
  r.backend = Backend::Quadrature;
  r.value = 0.5 * (a.value + b.value);
  r.abs_error = std::max({a.error, b.error, 0.5 * std::fabs(a.value - b.value)});
  r.evaluations = a.evaluations + b.evaluations;
  r.refinements = std::max(a.levels, b.levels);
  return r;
}

void check_args(const ConvolutionSpec& spec, Kind kind, double u, const QuadConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (spec.kind != kind) throw Error(ErrorKind::PatternMismatch, "wrong convolution kind for this integral");
  if (!(u > 0.0)) throw Error(ErrorKind::Domain, "density argument must be positive");
}

}  // namespace

EvalResult product_density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg) {
  check_args(spec, Kind::Product, u, cfg);
  const double lu = std::log(u);
  const LogIntegrand a({{spec.f1, -1.0, lu}, {spec.f2, 1.0, 0.0}}, 0.0, 0.0);
  const LogIntegrand b({{spec.f1, 1.0, 0.0}, {spec.f2, -1.0, lu}}, 0.0, 0.0);
  return combine(integrate(a, cfg), integrate(b, cfg));
}

EvalResult ratio_density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg) {
  check_args(spec, Kind::Ratio, u, cfg);
  const double lu = std::log(u);
  const LogIntegrand a({{spec.f1, 1.0, -lu}, {spec.f2, 1.0, 0.0}}, 2.0, -2.0 * lu);
  const LogIntegrand b({{spec.f1, 1.0, 0.0}, {spec.f2, 1.0, lu}}, 2.0, 0.0);
  return combine(integrate(a, cfg), integrate(b, cfg));
}

EvalResult density_quad(const ConvolutionSpec& spec, double u, const QuadConfig& cfg) {
  return spec.kind == Kind::Product ? product_density_quad(spec, u, cfg) : ratio_density_quad(spec, u, cfg);
}

namespace {

template <class F>
EvalResult unit_interval(F&& half_left, F&& half_right, const QuadConfig& cfg) {
  boost::math::quadrature::tanh_sinh<double> ts(refinement_cap(cfg));
  EvalResult r;
  r.backend = Backend::Quadrature;
  double e = 0, l1 = 0;
  std::size_t lv = 0;
  r.value = ts.integrate(half_left, 0.0, 0.5, cfg.rel_tol / 8, &e, &l1, &lv);
  r.abs_error = e;
  r.refinements = lv;
  r.value += ts.integrate(half_right, 0.0, 0.5, cfg.rel_tol / 8, &e, &l1, &lv);
  r.abs_error += e;
  r.refinements = std::max(r.refinements, lv);
  if (!std::isfinite(r.value) || r.abs_error > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(r.value)))
    throw Error(ErrorKind::NoConvergence, "Mellin integral did not reach the requested tolerance");
  return r;
}

}  // namespace

EvalResult mellin_numeric(const std::function<double(double)>& pdf, double s, const QuadConfig& cfg, double xmax) {
  cfg.validate();
  // x^(s-1)·pdf(x)·jacobian, with zero density winning over overflowing powers
  auto term = [&](double x, double jac) {
    if (!(x > 0) || !std::isfinite(x)) return 0.0;
    const double p = pdf(x);
    if (p == 0) return 0.0;
    const double v = std::pow(x, s - 1) * p * jac;
    return std::isfinite(v) ? v : 0.0;
  };
  std::function<double(double)> left, right;
  if (std::isfinite(xmax)) {
    left = [&, term](double r) { return term(xmax * r, xmax); };
    right = [&, term](double d) { return term(xmax * (1 - d), xmax); };
  } else {
    left = [&, term](double r) { return term(r / (1 - r), 1 / ((1 - r) * (1 - r))); };
    right = [&, term](double d) { return d == 0 ? 0.0 : term((1 - d) / d, 1 / (d * d)); };
  }
  return unit_interval(left, right, cfg);
}

EvalResult mellin_numeric(const PathwayModel& m, double s, const QuadConfig& cfg) {
  cfg.validate();
  m.validate();
  if (!strip(m).contains(s)) throw Error(ErrorKind::OutOfStrip, "s outside the strip of the model");
  std::function<double(double)> left, right;
  if (m.family == Family::Type1Beta) {
    const double lm = std::log(m.support_upper());
    // x = xmax·r
    left = [&, lm](double r) {
      if (r == 0) return 0.0;
      const double lr = std::log(r);
      return std::exp(s * (lm + lr) - lr + log_pdf_at_log(m, lm + lr, -lr));
    };
    right = [&, lm](double d) {
      const double lr = std::log1p(-d);
      return std::exp(s * (lm + lr) - lr + log_pdf_at_log(m, lm + lr, -lr));
    };
  } else {
    auto term = [&](double lx, double log_jac) {
      const double lp = log_pdf_at_log(m, lx, 0.0);
      return lp == kNegInf ? 0.0 : std::exp((s - 1) * lx + lp + log_jac);
    };
    left = [&, term](double r) {
      if (r == 0) return 0.0;
      return term(std::log(r) - std::log1p(-r), -2.0 * std::log1p(-r));
    };
    right = [&, term](double d) {
      if (d == 0) return 0.0;
      return term(std::log1p(-d) - std::log(d), -2.0 * std::log(d));
    };
  }
  return unit_interval(left, right, cfg);
}

}  // namespace mellin
