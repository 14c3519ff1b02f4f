#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include "mellin/convolution.hpp"
#include "mellin/error.hpp"
#include "mellin/quadrature.hpp"
#include "mellin/series.hpp"

using namespace mellin;
using doctest::Approx;

namespace {

const ConvolutionSpec kUniforms{Kind::Product, PathwayModel::type1_beta(1, 1), PathwayModel::type1_beta(1, 1)};
const ConvolutionSpec kExpProduct{Kind::Product, PathwayModel::gen_gamma(1), PathwayModel::gen_gamma(1)};
const ConvolutionSpec kExpRatio{Kind::Ratio, PathwayModel::gen_gamma(1), PathwayModel::gen_gamma(1)};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected mellin::Error");
  return ErrorKind::Domain;
}

}  // namespace

TEST_CASE("quadrature: product of two uniforms is -ln u") {
  for (double u : {1e-4, 0.05, std::exp(-1.0), 0.5, 0.99}) {
    const auto r = density_quad(kUniforms, u);
    CHECK(r.value == Approx(-std::log(u)).epsilon(1e-9));
    CHECK(std::fabs(r.value + std::log(u)) <= r.abs_error + 1e-12);
    CHECK(r.backend == Backend::Quadrature);
  }
  CHECK(density_quad(kUniforms, 1.2).value == 0.0);
}

TEST_CASE("quadrature: exponentials") {
  CHECK(density_quad(kExpProduct, 1.0).value ==
        Approx(2.0 * boost::math::cyl_bessel_k(0, 2.0)).epsilon(1e-10));
  CHECK(density_quad(kExpRatio, 1.0).value == Approx(0.25).epsilon(1e-11));
  CHECK(density_quad(kExpRatio, 3.0).value == Approx(1.0 / 16.0).epsilon(1e-11));
}

TEST_CASE("quadrature: error estimate bounds the true error") {
  for (double u : {0.01, 0.3, 2.0, 40.0}) {
    const auto r = density_quad(kExpRatio, u);
    const double exact = 1.0 / ((1 + u) * (1 + u));
    CHECK(std::fabs(r.value - exact) <= r.abs_error + 1e-15);
  }
}

TEST_CASE("quadrature: configuration is validated") {
  QuadConfig bad;
  bad.rel_tol = 0.0;
  CHECK(kind_of([&] { density_quad(kExpRatio, 1.0, bad); }) == ErrorKind::InvalidModel);
}

TEST_CASE("numeric Mellin transforms of simple densities") {
  CHECK(mellin_numeric(PathwayModel::gen_gamma(1), 3.0).value == Approx(2.0).epsilon(1e-12));
  CHECK(mellin_numeric(PathwayModel::type1_beta(1, 1), 2.0).value == Approx(0.5).epsilon(1e-12));
  CHECK(mellin_numeric(PathwayModel::type2_beta(1, 1), 1.5).value ==
        Approx(std::tgamma(1.5) * std::tgamma(0.5)).epsilon(1e-10));
  CHECK(mellin_numeric([](double x) { return std::exp(-x); }, 2.0).value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("contour inversion") {
  const GammaExpr g(1.0, 1.0, {{0.0, 1.0}}, {}, {0.0, kInf});
  CHECK(inverse_mellin_contour(g, 1.0, 1.0).value == Approx(std::exp(-1.0)).epsilon(1e-10));
  const auto b2 = convolved_transform(kExpRatio);
  CHECK(inverse_mellin_contour(b2, 2.0, 1.0).value == Approx(1.0 / 9.0).epsilon(1e-10));
  CHECK(inverse_mellin_contour(b2, 2.0, 0.4).value == Approx(1.0 / 9.0).epsilon(1e-10));
  CHECK(kind_of([&] { inverse_mellin_contour(b2, 2.0, 2.5); }) == ErrorKind::OutOfStrip);
}

TEST_CASE("contour result does not depend on the abscissa") {
  const auto spec = canonical_spec(CaseId::P2_1);
  const auto e = convolved_transform(spec);
  for (double u : {0.3, 1.0, 2.0}) {
    const double a = inverse_mellin_contour(e, u, e.strip().lower + 0.3).value;
    const double b = inverse_mellin_contour(e, u, e.strip().upper - 0.3).value;
    CHECK(a == Approx(b).epsilon(1e-8));
    CHECK(a == Approx(density_quad(spec, u).value).epsilon(1e-7));
  }
}

TEST_CASE("contour reports slow decay") {
  const GammaExpr slow(1.0, 1.0, {{0.0, 0.05}}, {}, {0.0, kInf});
  ContourConfig cfg;
  cfg.max_octaves = 3;
  CHECK(kind_of([&] { inverse_mellin_contour(slow, 1.0, std::nullopt, cfg); }) == ErrorKind::SlowDecay);
}

TEST_CASE("ratio quadrature over bounded supports") {
  const ConvolutionSpec t1{Kind::Ratio, PathwayModel::type1_beta(1.2, 2.7), PathwayModel::type1_beta(1.75, 2.4)};
  for (double u : {0.2, 0.9, 1.1, 5.0}) {
    const auto q = density_quad(t1, u);
    const auto s = eval_by_residues(convolved_transform(t1), u);
    CHECK(q.value == Approx(s.value).epsilon(1e-8));
  }
}
