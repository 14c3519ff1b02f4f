#include <cmath>
#include <limits>

#include "mellin/error.hpp"
#include "mellin/series.hpp"

namespace mellin {

double effective_argument(const GammaExpr& expr, double u) {
  return u * expr.scale() / series_geometry(expr).radius;
}

namespace {

struct FamilySum {
  double sum = 0.0;
  double abs_sum = 0.0;
  double last = 0.0;
  std::size_t terms = 0;
};

FamilySum sum_family(const GammaExpr& expr, const PoleSequence& seq, double log_arg, double tol,
                     unsigned max_terms) {
  const auto& num = expr.numerator();
  const auto& den = expr.denominator();
  const double log_c = std::log(expr.constant());
  const double log_weight = -std::log(std::fabs(num[seq.factor].slope));
  FamilySum fs;
  int small_run = 0;
  double prev = 0.0;
  for (unsigned nu = 0;; ++nu) {
    if (nu >= max_terms) throw Error(ErrorKind::NoConvergence, "residue series reached max_terms");
    const double s0 = seq.at(nu);
    double log_t = log_c + log_weight - std::lgamma(nu + 1.0) - s0 * log_arg;
    int sign = (nu % 2) ? -1 : 1;
    bool vanishes = false;
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (i == seq.factor) continue;
      const SignedLog g = gamma_signed(num[i].offset + num[i].slope * s0);
      sign *= g.sign;
      log_t += g.log_abs;
    }
    for (const auto& f : den) {
      const SignedLog r = rgamma_signed(f.offset + f.slope * s0);
      if (r.sign == 0) { vanishes = true; break; }
      sign *= r.sign;
      log_t += r.log_abs;
    }
    const double t = vanishes ? 0.0 : sign * std::exp(log_t);
    fs.sum += t;
    fs.abs_sum += std::fabs(t);
    const double at = std::fabs(t);
    double bound = at;
    if (at > 0.0) {
      const double r = prev > 0.0 ? at / prev : std::numeric_limits<double>::infinity();
      bound = r < 1.0 ? std::max(at, at * r / (1.0 - r)) : std::numeric_limits<double>::infinity();
      prev = at;
    }
    fs.last = std::isfinite(bound) ? bound : at;
    fs.terms = nu + 1;
    if (bound <= tol * std::fabs(fs.sum)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  return fs;
}

}  // namespace

EvalResult eval_by_residues(const GammaExpr& expr, double u, Side side, double tol,
                            unsigned max_terms) {
  if (!(u > 0.0)) throw Error(ErrorKind::Domain, "residue evaluation requires u > 0");
  const PoleReport rep = poles(expr);
  if (!rep.collisions.empty())
    throw Error(ErrorKind::PoleCollision, "poles are not simple; residue series refused");

  const SeriesGeometry geo = series_geometry(expr);
  const bool balanced = std::fabs(geo.mu) < 1e-12;
  const double eff = effective_argument(expr, u);
  if (side == Side::Auto) {
    if (balanced) {
      if (std::fabs(eff - 1.0) < kBoundaryBand)
        throw Error(ErrorKind::BoundaryRegion, "effective argument too close to 1");
      side = eff < 1.0 ? Side::Left : Side::Right;
    } else {
      side = geo.mu > 0 ? Side::Left : Side::Right;
    }
  } else {
    const bool ok = balanced ? (side == Side::Left ? eff < 1.0 - kBoundaryBand : eff > 1.0 + kBoundaryBand)
                             : (side == Side::Left ? geo.mu > 0 : geo.mu < 0);
    if (!ok) throw Error(ErrorKind::DivergentSeries, "requested residue family does not converge here");
  }

  const double log_arg = std::log(u * expr.scale());
  const auto& families = side == Side::Left ? rep.left : rep.right;
  EvalResult out;
  out.backend = Backend::Residue;
  double abs_sum = 0.0;
  for (const auto& seq : families) {
    const FamilySum fs = sum_family(expr, seq, log_arg, tol, max_terms);
    out.value += fs.sum;
    out.abs_error += fs.last;
    abs_sum += fs.abs_sum;
    out.evaluations += fs.terms;
  }
  out.abs_error += 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  out.refinements = families.size();
  return out;
}

}  // namespace mellin
