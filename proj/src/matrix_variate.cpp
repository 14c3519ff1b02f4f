#include "mellin/matrix_variate.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mellin/error.hpp"
#include "mellin/rng.hpp"
#include "mellin/special.hpp"

namespace mellin {

namespace {

void require_same_dim(int a, int b) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "matrix dimensions differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectral(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m);
}

Eigen::MatrixXd spectral_power(const Eigen::MatrixXd& m, double e) {
  const auto es = spectral(m);
  const Eigen::VectorXd d = es.eigenvalues().array().pow(e);
  Eigen::MatrixXd r = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (r + r.transpose());
}

Eigen::MatrixXd draw_matrix_gamma(const MatrixGammaModel& model, const Eigen::MatrixXd& chol_inv_b,
                                  std::mt19937_64& rng) {
  const int p = model.dim();
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    std::gamma_distribution<double> g(model.alpha - 0.5 * i, 1.0);
    T(i, i) = std::sqrt(g(rng));
    for (int j = 0; j < i; ++j) T(i, j) = normal(rng);
  }
  const Eigen::MatrixXd CT = chol_inv_b * T;
  Eigen::MatrixXd X = CT * CT.transpose();
  return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd chol_of_inverse(const SpdMatrix& B) {
  return Eigen::LLT<Eigen::MatrixXd>(B.inverse().matrix()).matrixL();
}

}  // namespace

bool is_spd(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols() || !m.allFinite()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) return false;
  return spectral(0.5 * (m + m.transpose())).eigenvalues().minCoeff() > kEigenFloor;
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (!is_spd(m_)) throw Error(ErrorKind::Domain, "matrix is not symmetric positive definite");
  m_ = 0.5 * (m_ + m_.transpose());
}

SpdMatrix SpdMatrix::identity(int p, double scale) {
  return SpdMatrix(scale * Eigen::MatrixXd::Identity(p, p));
}

double SpdMatrix::log_det() const {
  return spectral(m_).eigenvalues().array().log().sum();
}

double SpdMatrix::det() const { return std::exp(log_det()); }

SpdMatrix SpdMatrix::inverse() const { return SpdMatrix(spectral_power(m_, -1.0)); }

SpdMatrix SpdMatrix::sqrt() const { return SpdMatrix(spectral_power(m_, 0.5)); }

void MatrixGammaModel::validate() const {
  const int p = dim();
  if (!(alpha > 0.5 * (p - 1)))
    throw Error(ErrorKind::InvalidModel, "matrix gamma requires alpha > (p-1)/2");
}

double log_multivariate_gamma(double alpha, int p) {
  if (p < 1 || !(alpha > 0.5 * (p - 1)))
    throw Error(ErrorKind::Domain, "multivariate gamma requires p >= 1 and alpha > (p-1)/2");
  double s = 0.25 * p * (p - 1) * std::log(std::numbers::pi);
  for (int k = 0; k < p; ++k) s += log_gamma(alpha - 0.5 * k);
  return s;
}

double multivariate_gamma(double alpha, int p) { return std::exp(log_multivariate_gamma(alpha, p)); }

double matrix_gamma_pdf(const MatrixGammaModel& model, const Eigen::MatrixXd& X) {
  model.validate();
  const int p = model.dim();
  require_same_dim(p, static_cast<int>(X.rows()));
  require_same_dim(p, static_cast<int>(X.cols()));
  if (!is_spd(X)) return 0.0;
  const SpdMatrix x(X);
  const double lp = model.alpha * model.B.log_det() - log_multivariate_gamma(model.alpha, p) +
                    (model.alpha - 0.5 * (p + 1)) * x.log_det() - (model.B.matrix() * x.matrix()).trace();
  return std::exp(lp);
}

std::vector<SpdMatrix> sample_matrix_gamma(const MatrixGammaModel& model, std::uint64_t seed, std::size_t n) {
  model.validate();
  auto rng = substream(seed, "matrix");
  const Eigen::MatrixXd C = chol_of_inverse(model.B);
  std::vector<SpdMatrix> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(draw_matrix_gamma(model, C, rng));
  return out;
}

SpdMatrix symmetric_product(const SpdMatrix& X1, const SpdMatrix& X2) {
  require_same_dim(X1.dim(), X2.dim());
  const Eigen::MatrixXd r = X2.sqrt().matrix();
  Eigen::MatrixXd u = r * X1.matrix() * r;
  return SpdMatrix(0.5 * (u + u.transpose()));
}

namespace {

// Importance-sampling estimates of the density at each U with proposal `prop`
// integrated out and `outer` evaluated at V^(-1/2)·U·V^(-1/2).
std::vector<EvalResult> importance(const MatrixGammaModel& outer, const MatrixGammaModel& prop,
                                   const std::vector<SpdMatrix>& Us, std::mt19937_64& rng, std::size_t n) {
  const int p = outer.dim();
  if (p < 1 || p > 3) throw Error(ErrorKind::InvalidModel, "matrix dimension must be 1, 2 or 3");
  require_same_dim(p, prop.dim());
  for (const auto& U : Us) require_same_dim(p, U.dim());
  outer.validate();
  prop.validate();
  if (n < 2) throw Error(ErrorKind::Domain, "at least two proposal draws are needed");

  const Eigen::MatrixXd C = chol_of_inverse(prop.B);
  const std::size_t m = Us.size();
  std::vector<double> sum(m, 0.0), sum_sq(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::MatrixXd V = draw_matrix_gamma(prop, C, rng);
    const auto es = spectral(V);
    const double log_det_v = es.eigenvalues().array().log().sum();
    const Eigen::MatrixXd Vmh =
        es.eigenvectors() * es.eigenvalues().array().rsqrt().matrix().asDiagonal() * es.eigenvectors().transpose();
    const Eigen::MatrixXd BV = Vmh * outer.B.matrix() * Vmh;
    for (std::size_t i = 0; i < m; ++i) {
      // tr(B V^-1/2 U V^-1/2) = tr(V^-1/2 B V^-1/2 U)
      const double w = std::exp(-outer.alpha * log_det_v - (BV.cwiseProduct(Us[i].matrix())).sum());
      sum[i] += w;
      sum_sq[i] += w * w;
    }
  }
  std::vector<EvalResult> out(m);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    const double lc = outer.alpha * outer.B.log_det() - log_multivariate_gamma(outer.alpha, p) +
                      (outer.alpha - 0.5 * (p + 1)) * Us[i].log_det();
    const double c = std::exp(lc);
    const double mean = sum[i] / dn;
    const double var = std::max(0.0, (sum_sq[i] / dn - mean * mean) * dn / (dn - 1));
    out[i].backend = Backend::MonteCarlo;
    out[i].value = c * mean;
    out[i].abs_error = c * std::sqrt(var / dn);
    out[i].evaluations = n;
  }
  return out;
}

void check_variance(const EvalResult& r) {
  if (!(r.abs_error <= kMaxRelativeStandardError * std::fabs(r.value)))
    throw Error(ErrorKind::HighVariance, "importance-sampling estimate has relative standard error above 5%");
}

}  // namespace

std::vector<EvalResult> symmetric_product_density_mc(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                                     const std::vector<SpdMatrix>& Us, std::uint64_t seed,
                                                     std::size_t n) {
  auto rng = substream(seed, "x2");
  auto out = importance(m1, m2, Us, rng, n);
  for (const auto& r : out) check_variance(r);
  return out;
}

SymmetricProductEstimate symmetric_product_density_mc(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                                      const SpdMatrix& U, std::uint64_t seed, std::size_t n) {
  auto r2 = substream(seed, "x2");
  auto r1 = substream(seed, "x1");
  SymmetricProductEstimate est{importance(m1, m2, {U}, r2, n).front(), importance(m2, m1, {U}, r1, n).front()};
  check_variance(est.direct);
  check_variance(est.swapped);
  return est;
}

BoxEstimate symmetric_product_box_estimate(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                           const SpdMatrix& U0, double h, std::uint64_t seed, std::size_t n) {
  const int p = U0.dim();
  require_same_dim(p, m1.dim());
  require_same_dim(p, m2.dim());
  m1.validate();
  m2.validate();
  if (!(h > 0)) throw Error(ErrorKind::Domain, "box half-width must be positive");
  auto r1 = substream(seed, "box-x1");
  auto r2 = substream(seed, "box-x2");
  const Eigen::MatrixXd C1 = chol_of_inverse(m1.B), C2 = chol_of_inverse(m2.B);
  BoxEstimate b;
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::MatrixXd X1 = draw_matrix_gamma(m1, C1, r1);
    const Eigen::MatrixXd X2 = draw_matrix_gamma(m2, C2, r2);
    const Eigen::MatrixXd R = spectral_power(X2, 0.5);
    const Eigen::MatrixXd U = R * X1 * R;
    bool inside = true;
    for (int i = 0; i < p && inside; ++i)
      for (int j = i; j < p && inside; ++j) inside = std::fabs(U(i, j) - U0.matrix()(i, j)) <= h;
    if (inside) ++b.count;
  }
  const int dof = p * (p + 1) / 2;
  b.volume = std::pow(2.0 * h, dof);
  const double dn = static_cast<double>(n);
  const double frac = static_cast<double>(b.count) / dn;
  b.density = frac / b.volume;
  b.standard_error = std::sqrt(std::max(frac, 1.0 / dn) * (1.0 - frac) / dn) / b.volume;
  return b;
}

}  // namespace mellin
