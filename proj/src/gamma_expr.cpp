#include "mellin/gamma_expr.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mellin/error.hpp"

namespace mellin {

std::complex<double> log_gamma_complex(std::complex<double> z) {
  using C = std::complex<double>;
  C shift_log{0.0, 0.0};
  while (z.real() < 15.0) {
    if (z.real() <= 0.0 && z.imag() == 0.0 && std::floor(z.real()) == z.real())
      throw Error(ErrorKind::Pole, "complex log-gamma at a pole");
    shift_log += std::log(z);
    z += 1.0;
  }
  static constexpr std::array<double, 8> kBernoulli = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
      -3617.0 / 510.0};
  const C inv = 1.0 / z;
  const C inv2 = inv * inv;
  C pw = inv;
  C corr{0.0, 0.0};
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double kk = 2.0 * (k + 1);
    corr += kBernoulli[k] / (kk * (kk - 1.0)) * pw;
    pw *= inv2;
  }
  const C res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + corr;
  return res - shift_log;
}

GammaExpr::GammaExpr(double constant, double scale, std::vector<GammaFactor> num,
                     std::vector<GammaFactor> den, Strip strip)
    : constant_(constant), scale_(scale), num_(std::move(num)), den_(std::move(den)), strip_(strip) {
  if (!(constant_ > 0.0) || !std::isfinite(constant_))
    throw Error(ErrorKind::Domain, "GammaExpr constant must be positive");
  if (!(scale_ > 0.0) || !std::isfinite(scale_))
    throw Error(ErrorKind::Domain, "GammaExpr scale must be positive");
  if (strip_.empty()) throw Error(ErrorKind::EmptyStrip, "GammaExpr strip is empty");
  for (const auto* list : {&num_, &den_})
    for (const auto& f : *list)
      if (f.slope == 0.0) throw Error(ErrorKind::Domain, "gamma factor slope must be nonzero");
  constexpr double tol = 1e-12;
  for (const auto& f : num_) {
    const double edge = -f.offset / f.slope;  // where the argument crosses zero
    if (f.slope > 0 && edge > strip_.lower + tol * (1.0 + std::fabs(edge)))
      throw Error(ErrorKind::Domain, "strip contains a pole of a numerator factor");
    if (f.slope < 0 && edge < strip_.upper - tol * (1.0 + std::fabs(edge)))
      throw Error(ErrorKind::Domain, "strip contains a pole of a numerator factor");
  }
}

SignedLog GammaExpr::eval_signed(double s) const {
  if (!strip_.contains(s)) throw Error(ErrorKind::OutOfStrip, "s outside the strip");
  SignedLog out{1, std::log(constant_) - s * std::log(scale_)};
  for (const auto& f : num_) {
    const SignedLog g = gamma_signed(f.offset + f.slope * s);
    out.sign *= g.sign;
    out.log_abs += g.log_abs;
  }
  for (const auto& f : den_) {
    const SignedLog g = rgamma_signed(f.offset + f.slope * s);
    if (g.sign == 0) return {0, -kInf};
    out.sign *= g.sign;
    out.log_abs += g.log_abs;
  }
  return out;
}

double GammaExpr::eval(double s) const { return eval_signed(s).value(); }

std::complex<double> GammaExpr::log_eval(std::complex<double> s) const {
  std::complex<double> acc = std::log(constant_) - s * std::log(scale_);
  for (const auto& f : num_) acc += log_gamma_complex(f.offset + f.slope * s);
  for (const auto& f : den_) acc -= log_gamma_complex(f.offset + f.slope * s);
  return acc;
}

GammaExpr GammaExpr::reflect() const {
  auto flip = [](std::vector<GammaFactor> fs) {
    for (auto& f : fs) f = {f.offset + 2.0 * f.slope, -f.slope};
    return fs;
  };
  return GammaExpr(constant_ / (scale_ * scale_), 1.0 / scale_, flip(num_), flip(den_),
                   strip_.reflected());
}

GammaExpr product_convolve(const GammaExpr& m1, const GammaExpr& m2) {
  const Strip st = m1.strip().intersect(m2.strip());
  if (st.empty()) throw Error(ErrorKind::EmptyStrip, "strips do not intersect");
  auto num = m1.numerator();
  num.insert(num.end(), m2.numerator().begin(), m2.numerator().end());
  auto den = m1.denominator();
  den.insert(den.end(), m2.denominator().begin(), m2.denominator().end());
  return GammaExpr(m1.constant() * m2.constant(), m1.scale() * m2.scale(), std::move(num),
                   std::move(den), st);
}

GammaExpr ratio_convolve(const GammaExpr& m_num, const GammaExpr& m_den) {
  if (m_num.strip().intersect(m_den.strip().reflected()).empty())
    throw Error(ErrorKind::EmptyStrip, "reflected denominator strip does not meet numerator strip");
  return product_convolve(m_num, m_den.reflect());
}

bool HFunctionParams::is_g_function() const {
  for (const auto& x : upper)
    if (x.weight != 1.0) return false;
  for (const auto& x : lower)
    if (x.weight != 1.0) return false;
  return true;
}

HFunctionParams to_h_function(const GammaExpr& expr) {
  HFunctionParams h;
  std::vector<HFunctionParams::Pair> lower_tail, upper_tail;
  for (const auto& f : expr.numerator()) {
    if (f.slope > 0) h.lower.push_back({f.offset, f.slope});
    else h.upper.push_back({1.0 - f.offset, -f.slope});
  }
  h.m = h.lower.size();
  h.n = h.upper.size();
  for (const auto& f : expr.denominator()) {
    if (f.slope < 0) lower_tail.push_back({1.0 - f.offset, -f.slope});
    else upper_tail.push_back({f.offset, f.slope});
  }
  h.lower.insert(h.lower.end(), lower_tail.begin(), lower_tail.end());
  h.upper.insert(h.upper.end(), upper_tail.begin(), upper_tail.end());
  h.p = h.upper.size();
  h.q = h.lower.size();
  h.prefactor = expr.constant();
  h.argument_scale = expr.scale();
  return h;
}

GammaExpr from_h_function(const HFunctionParams& h, const Strip& strip) {
  if (h.upper.size() != h.p || h.lower.size() != h.q || h.n > h.p || h.m > h.q)
    throw Error(ErrorKind::Domain, "inconsistent H-function parameter block");
  std::vector<GammaFactor> num, den;
  for (std::size_t j = 0; j < h.q; ++j) {
    const auto& b = h.lower[j];
    if (j < h.m) num.push_back({b.value, b.weight});
    else den.push_back({1.0 - b.value, -b.weight});
  }
  for (std::size_t j = 0; j < h.p; ++j) {
    const auto& a = h.upper[j];
    if (j < h.n) num.push_back({1.0 - a.value, -a.weight});
    else den.push_back({a.value, a.weight});
  }
  return GammaExpr(h.prefactor, h.argument_scale, std::move(num), std::move(den), strip);
}

PoleReport poles(const GammaExpr& expr) {
  PoleReport rep;
  const auto& num = expr.numerator();
  for (std::size_t i = 0; i < num.size(); ++i) {
    PoleSequence seq{i, -num[i].offset / num[i].slope, -1.0 / num[i].slope};
    (num[i].slope > 0 ? rep.left : rep.right).push_back(seq);
  }
  for (const auto* side : {&rep.left, &rep.right}) {
    for (std::size_t x = 0; x < side->size(); ++x)
      for (std::size_t y = x + 1; y < side->size(); ++y) {
        const auto& A = (*side)[x];
        const auto& B = (*side)[y];
        for (std::size_t i = 0; i <= kPoleScanDepth; ++i)
          for (std::size_t j = 0; j <= kPoleScanDepth; ++j)
            if (std::fabs(A.at(i) - B.at(j)) < kPoleCollisionTol)
              rep.collisions.push_back({A.factor, B.factor, i, j, A.at(i)});
      }
  }
  return rep;
}

double min_pole_gap(const GammaExpr& expr) {
  const PoleReport rep = poles(expr);
  double gap = kInf;
  for (const auto* side : {&rep.left, &rep.right})
    for (std::size_t x = 0; x < side->size(); ++x)
      for (std::size_t y = x + 1; y < side->size(); ++y)
        for (std::size_t i = 0; i <= kPoleScanDepth; ++i)
          for (std::size_t j = 0; j <= kPoleScanDepth; ++j)
            gap = std::min(gap, std::fabs((*side)[x].at(i) - (*side)[y].at(j)));
  return gap;
}

SeriesGeometry series_geometry(const GammaExpr& expr) {
  SeriesGeometry g;
  double log_radius = 0.0;
  auto add = [&](bool lower, double w) {
    const double sgn = lower ? 1.0 : -1.0;
    g.mu += sgn * w;
    log_radius += sgn * w * std::log(w);
  };
  for (const auto& f : expr.numerator()) add(f.slope > 0, std::fabs(f.slope));
  for (const auto& f : expr.denominator()) add(f.slope < 0, std::fabs(f.slope));
  g.radius = std::exp(log_radius);
  return g;
}

namespace {

std::string num_str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

constexpr const char* kMinus = "−";

std::string factor_str(const GammaFactor& f) {
  std::string s = "Γ(";
  const bool has_offset = f.offset != 0.0;
  if (has_offset) s += f.offset < 0 ? kMinus + num_str(-f.offset) : num_str(f.offset);
  const double mag = std::fabs(f.slope);
  if (f.slope < 0) s += kMinus;
  else if (has_offset) s += "+";
  if (mag != 1.0) s += num_str(mag);
  s += "s)";
  return s;
}

}  // namespace

std::string to_string(const GammaExpr& expr) {
  std::string s;
  if (expr.constant() != 1.0) s += num_str(expr.constant()) + "·";
  for (const auto& f : expr.numerator()) s += factor_str(f);
  if (!expr.denominator().empty()) {
    s += "/(";
    for (const auto& f : expr.denominator()) s += factor_str(f);
    s += ")";
  }
  s += expr.scale() != 1.0 ? "·(" + num_str(expr.scale()) + "u)^{" : std::string("·u^{");
  s += kMinus;
  s += "s}";
  return s;
}

std::string to_string(const HFunctionParams& h) {
  const bool g = h.is_g_function();
  std::string s = g ? "G" : "H";
  s += "^{" + std::to_string(h.m) + "," + std::to_string(h.n) + "}_{" + std::to_string(h.p) + "," +
       std::to_string(h.q) + "}[" + num_str(h.argument_scale) + "u | ";
  auto pairs = [&](const std::vector<HFunctionParams::Pair>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ", ";
      out += g ? num_str(ps[i].value)
               : "(" + num_str(ps[i].value) + "," + num_str(ps[i].weight) + ")";
    }
    return out;
  };
  s += "upper: " + pairs(h.upper) + "; lower: " + pairs(h.lower) + "] prefactor " +
       num_str(h.prefactor);
  return s;
}

}  // namespace mellin
