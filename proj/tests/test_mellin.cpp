#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include "mellin/convolution.hpp"
#include "mellin/error.hpp"
#include "mellin/gamma_expr.hpp"
#include "mellin/pathway.hpp"
#include "mellin/quadrature.hpp"
#include "mellin/series.hpp"

using namespace mellin;
using doctest::Approx;

namespace {

const GammaExpr kGamma(1.0, 1.0, {{0.0, 1.0}}, {}, {0.0, kInf});
const GammaExpr kBeta2(1.0, 1.0, {{0.0, 1.0}, {2.0, -1.0}}, {}, {0.0, 2.0});
const GammaExpr kGammaSq(1.0, 1.0, {{0.0, 1.0}, {0.0, 1.0}}, {}, {0.0, kInf});

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected mellin::Error");
  return ErrorKind::Domain;
}

double bessel_oracle(double u) { return 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(u)); }

}  // namespace

TEST_CASE("GammaExpr evaluation") {
  CHECK(kGamma.eval(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(kBeta2.eval(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(mellin_transform(PathwayModel::type2_beta(2, 3)).eval(1.0) == Approx(1.0).epsilon(1e-13));
  CHECK(kind_of([] { kBeta2.eval(2.0); }) == ErrorKind::OutOfStrip);
  const auto lg = kBeta2.log_eval({0.7, 0.0});
  CHECK(std::exp(lg.real()) == Approx(kBeta2.eval(0.7)).epsilon(1e-13));
}

TEST_CASE("strip algebra") {
  CHECK((Strip{0, 2}.intersect(Strip{1, 3})) == Strip{1, 2});
  CHECK(Strip{1, 2}.intersect(Strip{3, 4}).empty());
  CHECK(Strip{0, 3}.reflected() == Strip{-1, 2});
  CHECK(Strip{0, kInf}.abscissa() == 1.0);
}

TEST_CASE("product and ratio convolution") {
  const auto sq = product_convolve(kGamma, kGamma);
  CHECK(sq.strip() == Strip{0.0, kInf});
  CHECK(sq.eval(2.5) == Approx(std::pow(std::tgamma(2.5), 2)).epsilon(1e-13));

  const auto r = ratio_convolve(kGamma, kGamma);
  CHECK(r.strip() == Strip{0.0, 2.0});
  for (double s : {0.3, 1.0, 1.7}) CHECK(r.eval(s) == Approx(kBeta2.eval(s)).epsilon(1e-13));

  const GammaExpr g2s(1.0, 1.0, {{2.0, -1.0}}, {}, {-kInf, 2.0});
  CHECK(g2s.reflect().numerator() == std::vector<GammaFactor>{{0.0, 1.0}});
  CHECK(g2s.reflect().reflect() == g2s);

  const GammaExpr a(1.0, 1.0, {{0.0, 1.0}}, {}, {0.0, 2.0});
  const GammaExpr b(1.0, 1.0, {{0.0, 1.0}}, {}, {1.0, 3.0});
  CHECK(product_convolve(a, b).strip() == Strip{1.0, 2.0});
  const GammaExpr c(1.0, 1.0, {{0.0, 1.0}}, {}, {3.0, 4.0});
  CHECK(kind_of([&] { product_convolve(a, c); }) == ErrorKind::EmptyStrip);
}

TEST_CASE("convolved transforms equal numeric Mellin transforms of the density") {
  const ConvolutionSpec ratio{Kind::Ratio, PathwayModel::gen_gamma(1), PathwayModel::gen_gamma(1)};
  const auto e = convolved_transform(ratio);
  CHECK(e.strip() == Strip{0.0, 2.0});
  for (double s : {0.5, 1.0, 1.5}) {
    const auto g = [&](double u) { return density_quad(ratio, u).value; };
    CHECK(mellin_numeric(g, s).value == Approx(e.eval(s)).epsilon(1e-6));
  }
  const ConvolutionSpec prod{Kind::Product, PathwayModel::type2_beta(1.6, 1.9, 1.3, 1.2),
                             PathwayModel::gen_gamma(2.2, 0.8, 1.5)};
  const auto ep = convolved_transform(prod);
  for (double s : {0.6, 1.4, 2.2}) {
    const auto g = [&](double u) { return density_quad(prod, u).value; };
    CHECK(mellin_numeric(g, s).value == Approx(ep.eval(s)).epsilon(1e-6));
  }
}

TEST_CASE("H-function parameters") {
  const auto h = to_h_function(kBeta2);
  CHECK(h.m == 1);
  CHECK(h.n == 1);
  CHECK(h.p == 1);
  CHECK(h.q == 1);
  CHECK(h.lower[0].value == Approx(0.0));
  CHECK(h.upper[0].value == Approx(-1.0));
  CHECK(h.is_g_function());

  // Type-2 beta times gamma: G^{2,1}_{1,2} with top -β and bottom α, ρ
  const ConvolutionSpec p21{Kind::Product, PathwayModel::type2_beta(1, 2), PathwayModel::gen_gamma(2)};
  const auto g = to_h_function(convolved_transform(p21));
  CHECK(g.m == 2);
  CHECK(g.n == 1);
  CHECK(g.p == 1);
  CHECK(g.q == 2);
  CHECK(g.upper[0].value == Approx(-2.0));
  CHECK(std::min(g.lower[0].value, g.lower[1].value) == Approx(0.0));
  CHECK(std::max(g.lower[0].value, g.lower[1].value) == Approx(1.0));

  // general-δ type-2 product: H^{2,2}_{2,2}
  const double d = 1.7;
  const ConvolutionSpec p27{Kind::Product, PathwayModel::type2_beta(1.2, 1.5, 0.8, d),
                            PathwayModel::type2_beta(1.75, 1.4, 1.3, d)};
  const auto e27 = convolved_transform(p27);
  const auto h27 = to_h_function(e27);
  CHECK(h27.m == 2);
  CHECK(h27.n == 2);
  CHECK(h27.p == 2);
  CHECK(h27.q == 2);
  CHECK_FALSE(h27.is_g_function());
  for (const auto& pr : h27.lower) CHECK(pr.weight == Approx(1.0 / d));
  const auto back = from_h_function(h27, e27.strip());
  for (double s : {0.2, 1.0, 2.1}) CHECK(back.eval(s) == Approx(e27.eval(s)).epsilon(1e-12));
}

TEST_CASE("pole sequences and collisions") {
  const auto r = poles(kGamma);
  REQUIRE(r.left.size() == 1);
  CHECK(r.left[0].at(0) == 0.0);
  CHECK(r.left[0].at(2) == -2.0);
  CHECK(r.right.empty());

  const GammaExpr clash(1.0, 1.0, {{2.3, 1.0}, {0.3, 1.0}}, {}, {-0.3, kInf});
  CHECK_FALSE(poles(clash).collisions.empty());
  CHECK(min_pole_gap(clash) < 1e-12);

  const GammaExpr ok(1.0, 1.0, {{0.3, 1.0}, {0.75, 1.0}}, {}, {-0.3, kInf});
  CHECK(poles(ok).collisions.empty());
  CHECK(min_pole_gap(ok) == Approx(0.45));

  // Γ((1+s)/2): poles at -1, -3, -5, ...
  const GammaExpr half(1.0, 1.0, {{0.5, 0.5}}, {}, {-1.0, kInf});
  const auto hp = poles(half).left.at(0);
  CHECK(hp.at(0) == Approx(-1.0));
  CHECK(hp.at(1) == Approx(-3.0));
  CHECK(hp.at(2) == Approx(-5.0));
}

TEST_CASE("residue sums reproduce known densities") {
  CHECK(eval_by_residues(kGamma, 1.0).value == Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(eval_by_residues(kBeta2, 1.0 - 0.01).value == Approx(1.0 / std::pow(1.99, 2)).epsilon(1e-11));
  for (double u : {0.2, 0.5, 2.0, 7.0}) CHECK(eval_by_residues(kBeta2, u).value == Approx(1.0 / std::pow(1 + u, 2)).epsilon(1e-11));
  CHECK(kind_of([] { eval_by_residues(kBeta2, 1.0); }) == ErrorKind::BoundaryRegion);
  CHECK(kind_of([] { eval_by_residues(kGammaSq, 1.0); }) == ErrorKind::PoleCollision);
}

TEST_CASE("left and right series agree away from the boundary for μ>0") {
  const ConvolutionSpec spec{Kind::Product, PathwayModel::type2_beta(1.3, 1.7), PathwayModel::gen_gamma(2.45, 1.3)};
  const auto e = convolved_transform(spec);
  CHECK(series_geometry(e).mu > 0.0);
  for (double u : {0.3, 1.0, 2.5}) CHECK(eval_by_residues(e, u).value == Approx(density_quad(spec, u).value).epsilon(1e-8));
}

TEST_CASE("Bessel integral for the product of two exponentials") {
  const double expect = 0.22778774549906;
  CHECK(bessel_oracle(1.0) == Approx(expect).epsilon(1e-12));
  const ConvolutionSpec spec{Kind::Product, PathwayModel::gen_gamma(1), PathwayModel::gen_gamma(1)};
  CHECK(density_quad(spec, 1.0).value == Approx(bessel_oracle(1.0)).epsilon(1e-10));
  CHECK(inverse_mellin_contour(kGammaSq, 1.0).value == Approx(bessel_oracle(1.0)).epsilon(1e-10));
}
