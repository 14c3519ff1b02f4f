#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "mellin/special.hpp"
#include "mellin/strip.hpp"

namespace mellin {

/// Γ(offset + slope·s)
struct GammaFactor {
  double offset = 0.0;
  double slope = 1.0;

  bool operator==(const GammaFactor&) const = default;
};

/// Symbolic Mellin transform
///   constant · scale^(-s) · Π_num Γ(a_i + b_i s) / Π_den Γ(c_j + d_j s)
/// valid on an open strip. Values are immutable once constructed.
class GammaExpr {
 public:
  GammaExpr(double constant, double scale, std::vector<GammaFactor> num,
            std::vector<GammaFactor> den, Strip strip);

  double constant() const { return constant_; }
  double scale() const { return scale_; }
  const std::vector<GammaFactor>& numerator() const { return num_; }
  const std::vector<GammaFactor>& denominator() const { return den_; }
  const Strip& strip() const { return strip_; }

  /// Value at real s strictly inside the strip; throws OutOfStrip otherwise.
  double eval(double s) const;
  SignedLog eval_signed(double s) const;

  /// Logarithm of the value at complex s (principal branch of each factor);
  /// used along vertical contours. No strip check.
  std::complex<double> log_eval(std::complex<double> s) const;

  /// s -> 2 - s
  GammaExpr reflect() const;

  bool operator==(const GammaExpr&) const = default;

 private:
  double constant_;
  double scale_;
  std::vector<GammaFactor> num_;
  std::vector<GammaFactor> den_;
  Strip strip_;
};

/// Mellin transform of the product density: M1(s)·M2(s).
GammaExpr product_convolve(const GammaExpr& m1, const GammaExpr& m2);

/// Mellin transform of the ratio density u = x2/x1: M_num(s)·M_den(2 - s),
/// where m_num belongs to x2 and m_den to x1.
GammaExpr ratio_convolve(const GammaExpr& m_num, const GammaExpr& m_den);

/// Mellin–Barnes parameter block. Kernel convention:
///   Π_{j<m} Γ(b_j + B_j s) Π_{j<n} Γ(1 - a_j - A_j s)
///   / (Π_{j>=m} Γ(1 - b_j - B_j s) Π_{j>=n} Γ(a_j + A_j s)) · (scale·u)^(-s)
struct HFunctionParams {
  struct Pair {
    double value = 0.0;
    double weight = 1.0;
    bool operator==(const Pair&) const = default;
  };
  std::size_t m = 0, n = 0, p = 0, q = 0;
  std::vector<Pair> upper;  // (a_j, A_j), length p
  std::vector<Pair> lower;  // (b_j, B_j), length q
  double prefactor = 1.0;
  double argument_scale = 1.0;

  bool is_g_function() const;
};

HFunctionParams to_h_function(const GammaExpr& expr);
GammaExpr from_h_function(const HFunctionParams& h, const Strip& strip);

/// Poles of one numerator factor: s_ν = first + ν·step, ν = 0, 1, ...
struct PoleSequence {
  std::size_t factor = 0;  // index into GammaExpr::numerator()
  double first = 0.0;
  double step = 0.0;
  double at(std::size_t nu) const { return first + static_cast<double>(nu) * step; }
};

struct PoleCollision {
  std::size_t factor_a = 0, factor_b = 0;
  std::size_t index_a = 0, index_b = 0;
  double location = 0.0;
};

struct PoleReport {
  std::vector<PoleSequence> left;   // positive-slope factors
  std::vector<PoleSequence> right;  // negative-slope factors
  std::vector<PoleCollision> collisions;
};

inline constexpr double kPoleCollisionTol = 1e-9;
inline constexpr std::size_t kPoleScanDepth = 50;

PoleReport poles(const GammaExpr& expr);

/// Smallest distance between poles of distinct same-side sequences within
/// the first kPoleScanDepth + 1 elements; +inf when fewer than two sequences.
double min_pole_gap(const GammaExpr& expr);

/// Balance μ = ΣB_j - ΣA_j of the equivalent H-function and the constant
/// β = ΠA_j^(-A_j) ΠB_j^(B_j) that sets the radius of the left residue series.
struct SeriesGeometry {
  double mu = 0.0;
  double radius = 1.0;
};
SeriesGeometry series_geometry(const GammaExpr& expr);

/// Render in Γ-product notation, e.g. "0.5·Γ(s)Γ(1+s)Γ(3-s)·(2u)^{-s}".
std::string to_string(const GammaExpr& expr);
std::string to_string(const HFunctionParams& h);

}  // namespace mellin

namespace mellin {

/// ln Γ(z) for complex z off the poles (recurrence up to Re z >= 15, then
/// Stirling). The imaginary part is correct modulo 2π.
std::complex<double> log_gamma_complex(std::complex<double> z);

}  // namespace mellin
