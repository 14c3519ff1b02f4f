#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mellin/error.hpp"
#include "mellin/series.hpp"

namespace mellin {

namespace {

using F = Family;

constexpr std::array<CaseInfo, 14> kCases{{
    {CaseId::P2_1, Kind::Product, F::Type2Beta, F::GenGamma, false, "Type-2 beta versus gamma"},
    {CaseId::P2_2, Kind::Product, F::Type2Beta, F::Type2Beta, true, "Type-2 beta versus type-2 beta"},
    {CaseId::P2_3, Kind::Product, F::Type1Beta, F::Type1Beta, true, "Type-1 beta versus type-1 beta"},
    {CaseId::P2_4, Kind::Product, F::Type1Beta, F::GenGamma, false, "Type-1 beta versus gamma"},
    {CaseId::P2_5, Kind::Product, F::Type1Beta, F::Type2Beta, true, "Type-1 beta versus type-2 beta"},
    {CaseId::P2_6, Kind::Product, F::GenGamma, F::GenGamma, false, "Gamma versus gamma"},
    {CaseId::P2_7, Kind::Product, F::Type2Beta, F::Type2Beta, true, "Generalized type-2 beta, common delta"},
    {CaseId::P3_1, Kind::Ratio, F::GenGamma, F::GenGamma, true, "Gamma over gamma"},
    {CaseId::P3_2, Kind::Ratio, F::GenGamma, F::Type2Beta, false, "Type-2 beta over gamma"},
    {CaseId::P3_3, Kind::Ratio, F::Type2Beta, F::GenGamma, false, "Gamma over type-2 beta"},
    {CaseId::P3_4, Kind::Ratio, F::GenGamma, F::Type1Beta, false, "Type-1 beta over gamma"},
    {CaseId::P3_5, Kind::Ratio, F::Type1Beta, F::GenGamma, false, "Gamma over type-1 beta"},
    {CaseId::P3_6, Kind::Ratio, F::Type1Beta, F::Type1Beta, true, "Type-1 beta over type-1 beta"},
    {CaseId::P3_7, Kind::Ratio, F::Type2Beta, F::GenGamma, false, "Generalized gamma over type-2 beta, common delta"},
}};

bool standard(const PathwayModel& m) { return m.a == 1.0 && m.delta == 1.0; }

bool fits(const PathwayModel& m, Family f, bool needs_standard) {
  if (m.family != f) return false;
  if (!needs_standard) return true;
  return f == Family::GenGamma ? m.delta == 1.0 : standard(m);
}

// Running product kept as sign and log-magnitude.
struct Coef {
  int sign = 1;
  double log_abs = 0.0;

  Coef& gamma(double x) {
    const SignedLog g = gamma_signed(x);
    sign *= g.sign;
    log_abs += g.log_abs;
    return *this;
  }
  Coef& rgamma(double x) {
    const SignedLog g = rgamma_signed(x);
    sign *= g.sign;
    log_abs += g.log_abs;
    return *this;
  }
  Coef& pow(double base, double e) {
    log_abs += e * std::log(base);
    return *this;
  }
  Coef& times(double c) {
    if (c < 0) sign = -sign;
    if (c == 0) sign = 0;
    else log_abs += std::log(std::fabs(c));
    return *this;
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

struct Acc {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;

  void add(const Coef& c, std::vector<double> a, std::vector<double> b, double z) {
    const EvalResult h = hyp_series({std::move(a), std::move(b), z});
    const double k = c.value();
    value += k * h.value;
    error += std::fabs(k) * h.abs_error;
    evaluations += h.evaluations;
  }
  void scale(double k) {
    value *= k;
    error *= std::fabs(k);
  }
};

// Series parameters use the exponent shifted down by one.
double sh(const PathwayModel& m) { return m.alpha - 1.0; }

void check_branch(CaseId id, double eff) {
  if (case_info(id).split && std::fabs(eff - 1.0) < kBoundaryBand)
    throw Error(ErrorKind::BoundaryRegion,
                std::string(to_string(id)) + ": argument within the boundary band around 1");
}

// printed == true reproduces the typos of the printed closed forms.
Acc evaluate(CaseId id, const ConvolutionSpec& spec, double u, bool printed) {
  const PathwayModel& f1 = spec.f1;
  const PathwayModel& f2 = spec.f2;
  Acc acc;
  switch (id) {
    case CaseId::P2_1: {
      const double al = sh(f1), be = f1.beta, rho = sh(f2), a = f2.a, x = a * u;
      acc.add(Coef{}.gamma(rho - al).gamma(1 + al + be).pow(x, al), {be + 1 + al}, {1 + al - rho}, x);
      acc.add(Coef{}.gamma(al - rho).gamma(1 + be + rho).pow(x, rho), {be + 1 + rho}, {1 + rho - al}, x);
      acc.scale(Coef{}.times(a).rgamma(al + 1).rgamma(be).rgamma(rho + 1).value());
      break;
    }
    case CaseId::P2_2: {
      const double a1 = sh(f1), b1 = f1.beta, a2 = sh(f2), b2 = f2.beta;
      if (u < 1) {
        acc.add(Coef{}.gamma(a2 - a1).gamma(b1 + 1 + a1).gamma(b2 + 1 + a1).pow(u, a1),
                {b1 + 1 + a1, b2 + 1 + a1}, {1 + a1 - a2}, u);
        acc.add(Coef{}.gamma(a1 - a2).gamma(b1 + 1 + a2).gamma(b2 + 1 + a2).pow(u, a2),
                {b1 + 1 + a2, b2 + 1 + a2}, {1 + a2 - a1}, u);
      } else {
        acc.add(Coef{}.gamma(a1 + 1 + b1).gamma(a2 + b1 + 1).gamma(b2 - b1).pow(u, -b1 - 1),
                {a1 + b1 + 1, a2 + b1 + 1}, {1 + b1 - b2}, 1 / u);
        acc.add(Coef{}.gamma(a1 + 1 + b2).gamma(a2 + b2 + 1).gamma(b1 - b2).pow(u, -b2 - 1),
                {a1 + b2 + 1, a2 + b2 + 1}, {1 + b2 - b1}, 1 / u);
      }
      acc.scale(Coef{}.rgamma(a1 + 1).rgamma(b1).rgamma(a2 + 1).rgamma(b2).value());
      break;
    }
    case CaseId::P2_3: {
      const double a1 = sh(f1), b1 = f1.beta, a2 = sh(f2), b2 = f2.beta;
      if (u >= 1) return acc;
      acc.add(Coef{}.gamma(a2 - a1).rgamma(b1).rgamma(a2 + b2 - a1).pow(u, a1),
              {1 - b1, 1 + a1 - a2 - b2}, {1 + a1 - a2}, u);
      acc.add(Coef{}.gamma(a1 - a2).rgamma(b2).rgamma(a1 + b1 - a2).pow(u, a2),
              {1 - b2, 1 + a2 - a1 - b1}, {1 + a2 - a1}, u);
      acc.scale(Coef{}.gamma(a1 + 1 + b1).rgamma(a1 + 1).gamma(a2 + 1 + b2).rgamma(a2 + 1).value());
      break;
    }
    case CaseId::P2_4: {
      const double al = sh(f1), be = f1.beta, ga = sh(f2), a = f2.a, x = a * u;
      acc.add(Coef{}.gamma(ga - al).rgamma(be).pow(x, al), {1 - be}, {1 + al - ga}, -x);
      acc.add(Coef{}.gamma(al - ga).rgamma(al + be - ga).pow(x, ga), {1 + ga - al - be}, {1 + ga - al}, -x);
      acc.scale(Coef{}.gamma(al + 1 + be).rgamma(al + 1).times(a).rgamma(ga + 1).value());
      break;
    }
    case CaseId::P2_5: {
      const double al = sh(f1), be = f1.beta, ga = sh(f2), de = f2.beta;
      if (u < 1) {
        acc.add(Coef{}.gamma(ga - al).gamma(1 + de + al).rgamma(be).pow(u, al),
                {1 + de + al, 1 - be}, {1 + al - ga}, -u);
        acc.add(Coef{}.gamma(al - ga).gamma(1 + de + ga).rgamma(al + be - ga).pow(u, ga),
                {1 + de + ga, 1 + ga - al - be}, {1 + ga - al}, -u);
      } else {
        acc.add(Coef{}.gamma(al + 1 + de).gamma(ga + 1 + de).rgamma(al + be + 1 + de).pow(u, -1 - de),
                {al + 1 + de, ga + 1 + de}, {al + be + 1 + de}, -1 / u);
      }
      acc.scale(Coef{}.gamma(al + 1 + be).rgamma(al + 1).rgamma(ga + 1).rgamma(de).value());
      break;
    }
    case CaseId::P2_6: {
      const double a1 = sh(f1), a2 = sh(f2), x = f1.a * f2.a * u;
      const double x2 = printed ? f1.a * f1.a * u : x;
      acc.add(Coef{}.gamma(a2 - a1).pow(x, a1), {}, {1 + a1 - a2}, x);
      acc.add(Coef{}.gamma(a1 - a2).pow(x2, a2), {}, {1 + a2 - a1}, x);
      acc.scale(Coef{}.times(f1.a * f2.a).rgamma(a1 + 1).rgamma(a2 + 1).value());
      break;
    }
    case CaseId::P2_7: {
      const double d = f1.delta, a1 = sh(f1), b1 = f1.beta, a2 = sh(f2), b2 = f2.beta;
      const double X = std::pow(f1.a * f2.a, 1 / d) * u;
      const double y = f1.a * f2.a * std::pow(u, d);
      const double p1 = (a1 + 1) / d, p2 = (a2 + 1) / d;
      if (y < 1) {
        const double y1 = printed ? f1.a * f1.a * std::pow(u, d) : y;
        acc.add(Coef{}.gamma((a2 - a1) / d).gamma(b1 + p1).gamma(b2 + p1).pow(X, a1),
                {b1 + p1, b2 + p1}, {1 + (a1 - a2) / d}, y1);
        acc.add(Coef{}.gamma((a1 - a2) / d).gamma(b1 + p2).gamma(b2 + p2).pow(X, a2),
                {b1 + p2, b2 + p2}, {1 + (a2 - a1) / d}, y);
      } else {
        acc.add(Coef{}.gamma(b1 + p1).gamma(b1 + p2).gamma(b2 - b1).pow(X, -(b1 * d + 1)),
                {b1 + p1, b1 + p2}, {1 + b1 - b2}, 1 / y);
        acc.add(Coef{}.gamma(b2 + p1).gamma(b2 + p2).gamma(b1 - b2).pow(X, -(b2 * d + 1)),
                {b2 + p1, b2 + p2}, {1 + b2 - b1}, 1 / y);
      }
      acc.scale(Coef{}
                    .times(d)
                    .pow(f1.a * f2.a, 1 / d)
                    .rgamma(p1)
                    .rgamma(b1)
                    .rgamma(p2)
                    .rgamma(b2)
                    .value());
      break;
    }
    case CaseId::P3_1: {
      const double a1 = sh(f1), a2 = sh(f2), y = f2.a * u / f1.a, n = 2 + a1 + a2;
      if (y < 1) acc.add(Coef{}.pow(y, a2 + 1), {n}, {}, -y);
      else acc.add(Coef{}.pow(y, -(a1 + 1)), {n}, {}, -1 / y);
      acc.scale(Coef{}.gamma(n).rgamma(a1 + 1).rgamma(a2 + 1).times(1 / u).value());
      break;
    }
    case CaseId::P3_2: {
      const double a1 = sh(f1), a2 = sh(f2), b2 = f2.beta, w = f1.a / u;
      acc.add(Coef{}.gamma(a2 + b2 + 1).gamma(1 + a1 - b2).pow(w, 1 + b2), {1 + a2 + b2}, {b2 - a1}, w);
      acc.add(Coef{}.gamma(2 + a1 + a2).gamma(b2 - a1 - 1).pow(w, 2 + a1), {2 + a1 + a2}, {2 + a1 - b2}, w);
      acc.scale(Coef{}.times(1 / f1.a).rgamma(a1 + 1).rgamma(a2 + 1).rgamma(b2).value());
      break;
    }
    case CaseId::P3_3: {
      const double ga = sh(f1), de = f1.beta, al = sh(f2), a = f2.a, x = a * u;
      acc.add(Coef{}.gamma(de - 1 - al).gamma(2 + ga + al).pow(x, al), {2 + ga + al}, {2 + al - de}, x);
      acc.add(Coef{}.gamma(1 + ga + de).gamma(1 + al - de).pow(x, de - 1), {1 + ga + de}, {de - al}, x);
      acc.scale(Coef{}.times(a).rgamma(al + 1).rgamma(ga + 1).rgamma(de).value());
      break;
    }
    case CaseId::P3_4: {
      const double ga = sh(f1), a = f1.a, al = sh(f2), be = f2.beta;
      acc.add(Coef{}.gamma(2 + al + ga).rgamma(2 + al + ga + be).pow(u / a, -ga - 2), {2 + al + ga},
              {2 + al + ga + be}, -a / u);
      acc.scale(Coef{}.gamma(al + 1 + be).rgamma(al + 1).times(1 / a).rgamma(ga + 1).value());
      break;
    }
    case CaseId::P3_5: {
      const double al = sh(f1), be = f1.beta, ga = sh(f2), a = f2.a, x = a * u;
      acc.add(Coef{}.gamma(2 + al + ga).rgamma(2 + al + ga + be).pow(x, ga), {2 + al + ga},
              {2 + al + ga + be}, -x);
      acc.scale(Coef{}.times(a).gamma(al + 1 + be).rgamma(ga + 1).rgamma(al + 1).value());
      break;
    }
    case CaseId::P3_6: {
      const double a1 = sh(f1), b1 = f1.beta, a2 = sh(f2), b2 = f2.beta, n = 2 + a1 + a2;
      if (u < 1)
        acc.add(Coef{}.gamma(n).rgamma(n + b1).rgamma(b2).pow(u, a2), {1 - b2, n}, {n + b1}, u);
      else
        acc.add(Coef{}.gamma(n).rgamma(n + b2).rgamma(b1).pow(u, -(2 + a1)), {1 - b1, n}, {n + b2}, 1 / u);
      acc.scale(Coef{}.gamma(a1 + 1 + b1).rgamma(a1 + 1).gamma(a2 + 1 + b2).rgamma(a2 + 1).value());
      break;
    }
    case CaseId::P3_7: {
      const double d = f1.delta, al = sh(f1), be = f1.beta, ga = sh(f2);
      const double X = std::pow(f2.a / f1.a, 1 / d) * u, y = std::pow(X, d);
      const double q = (ga + 1) / d;
      acc.add(Coef{}.gamma(be - q).gamma((2 + al + ga) / d).pow(X, ga), {(2 + al + ga) / d}, {1 + q - be}, y);
      acc.add(Coef{}.gamma(q - be).gamma((al + 1) / d + be).pow(X, be * d - 1), {(al + 1) / d + be},
              {1 + be - q}, y);
      acc.scale(Coef{}
                    .times(d)
                    .pow(f2.a / f1.a, 1 / d)
                    .rgamma((al + 1) / d)
                    .rgamma(be)
                    .rgamma(q)
                    .value());
      break;
    }
  }
  return acc;
}

}  // namespace

std::string_view to_string(CaseId id) {
  static constexpr std::array<std::string_view, 14> names{"P2_1", "P2_2", "P2_3", "P2_4", "P2_5",
                                                          "P2_6", "P2_7", "P3_1", "P3_2", "P3_3",
                                                          "P3_4", "P3_5", "P3_6", "P3_7"};
  return names[static_cast<std::size_t>(id)];
}

CaseId case_from_string(std::string_view name) {
  for (CaseId id : all_cases())
    if (to_string(id) == name) return id;
  throw Error(ErrorKind::PatternMismatch, "unknown case '" + std::string(name) + "'");
}

const std::vector<CaseId>& all_cases() {
  static const std::vector<CaseId> ids = [] {
    std::vector<CaseId> v;
    for (const auto& c : kCases) v.push_back(c.id);
    return v;
  }();
  return ids;
}

const CaseInfo& case_info(CaseId id) { return kCases[static_cast<std::size_t>(id)]; }

ConvolutionSpec canonical_spec(CaseId id) {
  using P = PathwayModel;
  switch (id) {
    case CaseId::P2_1: return {Kind::Product, P::type2_beta(1.3, 1.7), P::gen_gamma(2.45, 1.3)};
    case CaseId::P2_2: return {Kind::Product, P::type2_beta(1.2, 0.9), P::type2_beta(0.75, 1.3)};
    case CaseId::P2_3: return {Kind::Product, P::type1_beta(1.2, 2.5), P::type1_beta(1.75, 3.1)};
    case CaseId::P2_4: return {Kind::Product, P::type1_beta(1.2, 2.5), P::gen_gamma(1.75, 1.4)};
    case CaseId::P2_5: return {Kind::Product, P::type1_beta(1.2, 2.5), P::type2_beta(1.75, 1.4)};
    case CaseId::P2_6: return {Kind::Product, P::gen_gamma(1.2, 0.7), P::gen_gamma(1.75, 1.4)};
    case CaseId::P2_7:
      return {Kind::Product, P::type2_beta(1.2, 1.5, 0.8, 1.7), P::type2_beta(1.75, 1.4, 1.3, 1.7)};
    case CaseId::P3_1: return {Kind::Ratio, P::gen_gamma(1.0), P::gen_gamma(1.0)};
    case CaseId::P3_2: return {Kind::Ratio, P::gen_gamma(1.2, 0.7), P::type2_beta(1.75, 1.4)};
    case CaseId::P3_3: return {Kind::Ratio, P::type2_beta(1.2, 1.7), P::gen_gamma(1.75, 1.4)};
    case CaseId::P3_4: return {Kind::Ratio, P::gen_gamma(1.2, 0.7), P::type1_beta(1.75, 2.4)};
    case CaseId::P3_5: return {Kind::Ratio, P::type1_beta(1.2, 2.7), P::gen_gamma(1.75, 1.4)};
    case CaseId::P3_6: return {Kind::Ratio, P::type1_beta(1.2, 2.7), P::type1_beta(1.75, 2.4)};
    case CaseId::P3_7: return {Kind::Ratio, P::type2_beta(1.2, 1.7, 0.8, 1.6), P::gen_gamma(1.75, 1.4, 1.6)};
  }
  throw Error(ErrorKind::PatternMismatch, "unknown case");
}

bool matches(CaseId id, const ConvolutionSpec& spec) {
  const CaseInfo& info = case_info(id);
  if (spec.kind != info.kind) return false;
  const bool general = id == CaseId::P2_7 || id == CaseId::P3_7;
  if (!fits(spec.f1, info.f1, !general) || !fits(spec.f2, info.f2, !general)) return false;
  if (general) {
    if (spec.f1.delta != spec.f2.delta) return false;
  }
  return true;
}

std::optional<CaseMatch> classify(const ConvolutionSpec& spec) {
  for (CaseId id : all_cases()) {
    if (matches(id, spec)) return CaseMatch{id, spec};
    if (spec.kind == Kind::Product) {
      ConvolutionSpec swapped{spec.kind, spec.f2, spec.f1};
      if (matches(id, swapped)) return CaseMatch{id, swapped};
    }
  }
  return std::nullopt;
}

double case_effective_argument(CaseId id, const ConvolutionSpec& spec, double u) {
  const PathwayModel& f1 = spec.f1;
  const PathwayModel& f2 = spec.f2;
  switch (id) {
    case CaseId::P2_1:
    case CaseId::P2_4:
    case CaseId::P3_3:
    case CaseId::P3_5: return f2.a * u;
    case CaseId::P2_6: return f1.a * f2.a * u;
    case CaseId::P2_7: return f1.a * f2.a * std::pow(u, f1.delta);
    case CaseId::P3_1: return f2.a * u / f1.a;
    case CaseId::P3_2:
    case CaseId::P3_4: return u / f1.a;
    case CaseId::P3_7: return f2.a / f1.a * std::pow(u, f1.delta);
    default: return u;
  }
}

namespace {

void precheck(CaseId id, const ConvolutionSpec& spec, double u) {
  if (!matches(id, spec))
    throw Error(ErrorKind::PatternMismatch,
                std::string(to_string(id)) + " does not accept the given model pair");
  if (!(u > 0.0)) throw Error(ErrorKind::Domain, "density argument must be positive");
  if (!poles(convolved_transform(spec)).collisions.empty())
    throw Error(ErrorKind::SimplePoleViolation,
                std::string(to_string(id)) + ": poles collide, closed form does not apply");
}

}  // namespace

EvalResult eval_case(CaseId id, const ConvolutionSpec& spec, double u) {
  precheck(id, spec, u);
  EvalResult out;
  out.backend = Backend::Series;
  if (u >= support_upper(spec)) return out;
  check_branch(id, case_effective_argument(id, spec, u));
  const Acc acc = evaluate(id, spec, u, false);
  out.value = acc.value;
  out.abs_error = acc.error;
  out.evaluations = acc.evaluations;
  return out;
}

double eval_case_as_printed(CaseId id, const ConvolutionSpec& spec, double u) {
  precheck(id, spec, u);
  if (u >= support_upper(spec)) return 0.0;
  check_branch(id, case_effective_argument(id, spec, u));
  return evaluate(id, spec, u, true).value;
}

}  // namespace mellin
