#pragma once

#include <limits>

namespace mellin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open real interval (lower, upper) on which a Mellin transform converges.
struct Strip {
  double lower = -kInf;
  double upper = kInf;

  bool empty() const { return !(lower < upper); }
  bool contains(double s) const { return lower < s && s < upper; }

  /// Default contour abscissa: midpoint, or one unit inside a finite end.
  double abscissa() const {
    if (lower == -kInf && upper == kInf) return 0.0;
    if (upper == kInf) return lower + 1.0;
    if (lower == -kInf) return upper - 1.0;
    return 0.5 * (lower + upper);
  }

  Strip intersect(const Strip& o) const {
    return {lower > o.lower ? lower : o.lower, upper < o.upper ? upper : o.upper};
  }

  /// {s : 2 - s in this strip}
  Strip reflected() const { return {2.0 - upper, 2.0 - lower}; }

  bool operator==(const Strip&) const = default;
};

}  // namespace mellin
