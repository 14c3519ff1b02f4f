#include "mellin/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mellin/error.hpp"

namespace mellin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DivergentSeries: return "DivergentSeries";
    case ErrorKind::BadDenominator: return "BadDenominator";
    case ErrorKind::OutOfStrip: return "OutOfStrip";
    case ErrorKind::EmptyStrip: return "EmptyStrip";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::BoundaryRegion: return "BoundaryRegion";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::SimplePoleViolation: return "SimplePoleViolation";
    case ErrorKind::SlowDecay: return "SlowDecay";
    case ErrorKind::HighVariance: return "HighVariance";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidModel: return "InvalidModel";
  }
  return "Unknown";
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Series: return "series";
    case Backend::Residue: return "residue";
    case Backend::Quadrature: return "quad";
    case Backend::Contour: return "contour";
    case Backend::MonteCarlo: return "mc";
  }
  return "unknown";
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::Domain, "log_gamma requires x > 0");
  int sg = 0;
  return ::lgamma_r(x, &sg);
}

namespace {

// sin(pi x) with the argument reduced to [-1, 1] first.
double sin_pi(double x) {
  double r = std::remainder(x, 2.0);
  if (r == 0.0 || std::fabs(r) == 1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

}  // namespace

SignedLog gamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw Error(ErrorKind::Pole, "gamma pole at non-positive integer");
  if (x >= 0.5) return {1, log_gamma(x)};
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double s = sin_pi(x);
  return {s > 0.0 ? 1 : -1, std::log(std::numbers::pi) - std::log(std::fabs(s)) - log_gamma(1.0 - x)};
}

SignedLog rgamma_signed(double x) {
  if (is_nonpositive_integer(x)) return {0, -std::numeric_limits<double>::infinity()};
  SignedLog g = gamma_signed(x);
  return {g.sign, -g.log_abs};
}

double pochhammer(double a, unsigned n) {
  double p = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    p *= a + k;
    if (p == 0.0) return 0.0;
  }
  return p;
}

namespace {

EvalResult direct_series(const HypSeriesSpec& spec, double tol, unsigned max_terms) {
  const auto& a = spec.numerator_params;
  const auto& b = spec.denominator_params;
  const double z = spec.argument;
  for (double bj : b)
    if (is_nonpositive_integer(bj))
      throw Error(ErrorKind::BadDenominator, "lower parameter is a non-positive integer");

  bool terminating = false;
  for (double ai : a)
    if (is_nonpositive_integer(ai)) terminating = true;

  const std::size_t p = a.size(), q = b.size();
  if (!terminating && z != 0.0) {
    if (p > q + 1) throw Error(ErrorKind::DivergentSeries, "p > q+1 series diverges for z != 0");
    if (p == q + 1 && std::fabs(z) >= 1.0 - kHypUnitMargin)
      throw Error(ErrorKind::DivergentSeries, "p = q+1 series requires |z| < 1");
  }

  EvalResult out;
  out.backend = Backend::Series;
  if (z == 0.0) {
    out.value = 1.0;
    out.evaluations = 1;
    return out;
  }

  // running sum = acc * exp(scale); term = term_sign * exp(term_log)
  double scale = 0.0, acc = 1.0, abs_acc = 1.0;
  double term_log = 0.0;
  int term_sign = 1;
  const double log_absz = std::log(std::fabs(z));
  const int zsign = z > 0 ? 1 : -1;
  int small_run = 0;
  double last_term_abs = 1.0;

  for (unsigned k = 0;; ++k) {
    if (k >= max_terms) throw Error(ErrorKind::NoConvergence, "hyp_series reached max_terms");
    double ratio_log = log_absz - std::log(k + 1.0);
    int ratio_sign = zsign;
    bool zero = false;
    for (double ai : a) {
      const double f = ai + k;
      if (f == 0.0) { zero = true; break; }
      ratio_log += std::log(std::fabs(f));
      if (f < 0) ratio_sign = -ratio_sign;
    }
    if (zero) {
      last_term_abs = 0.0;
      out.evaluations = k + 1;
      break;
    }
    for (double bj : b) {
      const double f = bj + k;
      ratio_log -= std::log(std::fabs(f));
      if (f < 0) ratio_sign = -ratio_sign;
    }
    term_log += ratio_log;
    term_sign *= ratio_sign;

    if (term_log - scale > 600.0) {
      const double shrink = std::exp(scale - term_log);
      acc *= shrink;
      abs_acc *= shrink;
      scale = term_log;
    }
    const double t = std::exp(term_log - scale);
    acc += term_sign * t;
    abs_acc += t;

    // geometric bound on the remaining terms from the current term ratio
    const double r = std::exp(ratio_log);
    const double tail = r < 1.0 ? t * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    last_term_abs = std::max(t, tail);
    if (last_term_abs <= tol * std::fabs(acc)) {
      if (++small_run >= 3) {
        out.evaluations = k + 2;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  const double mult = std::exp(scale);
  out.value = acc * mult;
  out.abs_error =
      last_term_abs * mult + 16.0 * std::numeric_limits<double>::epsilon() * abs_acc * mult;
  return out;
}

}  // namespace

EvalResult hyp_series(const HypSeriesSpec& spec, double tol, unsigned max_terms) {
  const auto& a = spec.numerator_params;
  const auto& b = spec.denominator_params;
  const double z = spec.argument;
  const bool terminating = std::any_of(a.begin(), a.end(), is_nonpositive_integer);
  const bool bad_b = std::any_of(b.begin(), b.end(), is_nonpositive_integer);
  if (terminating || bad_b) return direct_series(spec, tol, max_terms);

  // Pfaff: 2F1(a1,a2;c;z) = (1-z)^(-a1) 2F1(a1, c-a2; c; z/(z-1))
  if (a.size() == 2 && b.size() == 1 && z < -0.5) {
    const double c = b[0];
    const std::size_t k = is_nonpositive_integer(c - a[0]) ? 1 : 0;
    const double keep = a[k], other = a[1 - k];
    EvalResult r = direct_series({{keep, c - other}, {c}, z / (z - 1.0)}, tol, max_terms);
    const double f = std::pow(1.0 - z, -keep);
    r.value *= f;
    r.abs_error *= f;
    return r;
  }
  // Kummer: 1F1(a;c;z) = e^z 1F1(c-a;c;-z)
  if (a.size() == 1 && b.size() == 1 && z < 0.0) {
    EvalResult r = direct_series({{b[0] - a[0]}, {b[0]}, -z}, tol, max_terms);
    const double f = std::exp(z);
    r.value *= f;
    r.abs_error *= f;
    return r;
  }
  return direct_series(spec, tol, max_terms);
}

double hyp(std::span<const double> a, std::span<const double> b, double z) {
  HypSeriesSpec spec{{a.begin(), a.end()}, {b.begin(), b.end()}, z};
  return hyp_series(spec).value;
}

}  // namespace mellin
