#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mellin/eval_result.hpp"

namespace mellin {

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kEigenFloor = 1e-12;

/// Whether m is square, symmetric within kSymmetryTol (relative to its largest
/// entry) and has all eigenvalues above kEigenFloor.
bool is_spd(const Eigen::MatrixXd& m);

/// Symmetric positive definite matrix; the constructor rejects anything else
/// with ErrorKind::Domain.
class SpdMatrix {
 public:
  explicit SpdMatrix(Eigen::MatrixXd m);
  static SpdMatrix identity(int p, double scale = 1.0);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double log_det() const;
  double det() const;
  double trace() const { return m_.trace(); }
  SpdMatrix inverse() const;
  /// Spectral square root.
  SpdMatrix sqrt() const;

 private:
  Eigen::MatrixXd m_;
};

/// Density |B|^α/Γ_p(α)·|X|^(α-(p+1)/2)·exp(-tr(BX)) on p×p SPD matrices.
struct MatrixGammaModel {
  double alpha;
  SpdMatrix B;

  int dim() const { return B.dim(); }
  /// Throws InvalidModel unless alpha > (p-1)/2.
  void validate() const;
};

/// ln Γ_p(α) = p(p-1)/4·ln π + Σ_{k<p} ln Γ(α - k/2); Domain error unless α > (p-1)/2.
double log_multivariate_gamma(double alpha, int p);
double multivariate_gamma(double alpha, int p);

/// Zero when X is not positive definite; DimensionMismatch when sizes differ.
double matrix_gamma_pdf(const MatrixGammaModel& model, const Eigen::MatrixXd& X);

/// Bartlett construction: X = C·T·Tᵀ·Cᵀ with C·Cᵀ = B⁻¹, T lower triangular,
/// T_ii² ~ Gamma(α - (i-1)/2, 1) and T_ij ~ N(0, 1/2) below the diagonal.
std::vector<SpdMatrix> sample_matrix_gamma(const MatrixGammaModel& model, std::uint64_t seed, std::size_t n);

/// X2^(1/2)·X1·X2^(1/2)
SpdMatrix symmetric_product(const SpdMatrix& X1, const SpdMatrix& X2);

struct SymmetricProductEstimate {
  // V = X2 integrated out, proposal f2
  EvalResult direct;
  // roles exchanged: X1 integrated out, proposal f1
  EvalResult swapped;
};

inline constexpr double kMaxRelativeStandardError = 0.05;

/// Density of U = X2^(1/2)·X1·X2^(1/2) at U by importance sampling:
///   g(U) = |B1|^α1/Γ_p(α1)·|U|^(α1-(p+1)/2)·E_{V~f2}[|V|^(-α1)·exp(-tr(B1·V^(-1/2)·U·V^(-1/2)))].
/// The swapped estimate uses the same formula with the models exchanged; it
/// targets X1^(1/2)·X2·X1^(1/2), whose density coincides with g when p = 1 or
/// when both scale matrices are multiples of the identity.
/// abs_error carries the standard error. p must be 1, 2 or 3.
///
/// Throws HighVariance when a relative standard error exceeds 5%.
SymmetricProductEstimate symmetric_product_density_mc(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                                      const SpdMatrix& U, std::uint64_t seed, std::size_t n);

/// Several evaluation points sharing one set of proposal draws.
std::vector<EvalResult> symmetric_product_density_mc(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                                     const std::vector<SpdMatrix>& Us, std::uint64_t seed,
                                                     std::size_t n);

struct BoxEstimate {
  std::uint64_t count = 0;
  double volume = 0.0;
  double density = 0.0;
  double standard_error = 0.0;
};

/// Fraction of n sampled symmetric products whose independent entries
/// (u_ij, i <= j) fall in the cube of half-width h around those of U0, divided
/// by the cube volume.
BoxEstimate symmetric_product_box_estimate(const MatrixGammaModel& m1, const MatrixGammaModel& m2,
                                           const SpdMatrix& U0, double h, std::uint64_t seed, std::size_t n);

}  // namespace mellin
