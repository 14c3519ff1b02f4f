#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mellin/convolution.hpp"
#include "mellin/eval_result.hpp"
#include "mellin/gamma_expr.hpp"

namespace mellin {

enum class Side { Auto, Left, Right };

// Balanced expressions within this distance of effective argument 1 are refused.
inline constexpr double kBoundaryBand = 1e-3;

/// u·scale/radius: the argument that decides which residue series converges
/// for a balanced (μ = 0) expression.
double effective_argument(const GammaExpr& expr, double u);

/// Density value as a sum of residues of expr(s)·u^(-s).
///
/// Left: poles of positive-slope factors (converges for small arguments or
/// μ > 0). Right: poles of negative-slope factors. The residue at the ν-th
/// pole of Γ(a + b s) carries the weight (1/|b|)(-1)^ν/ν! times the
/// remaining factors there; denominator factors that hit their own poles make
/// the term vanish. Each pole family is summed until three consecutive terms
/// fall below tol relative to the family sum.
///
/// Throws PoleCollision, NoConvergence, DivergentSeries (side cannot converge)
/// or BoundaryRegion.
EvalResult eval_by_residues(const GammaExpr& expr, double u, Side side = Side::Auto,
                            double tol = 1e-12, unsigned max_terms = 10000);

enum class CaseId { P2_1, P2_2, P2_3, P2_4, P2_5, P2_6, P2_7, P3_1, P3_2, P3_3, P3_4, P3_5, P3_6, P3_7 };

std::string_view to_string(CaseId id);
CaseId case_from_string(std::string_view name);
const std::vector<CaseId>& all_cases();

struct CaseInfo {
  CaseId id;
  Kind kind;
  Family f1;
  Family f2;
  // true when the closed form switches series at effective argument 1
  bool split;
  std::string_view title;
};

const CaseInfo& case_info(CaseId id);

/// Fixed parameter set for each case, free of pole collisions. P3_1 uses two
/// unit exponentials.
ConvolutionSpec canonical_spec(CaseId id);

/// Whether spec fits the case pattern (families, order, and the standard-form
/// restrictions a = delta = 1 the case assumes).
bool matches(CaseId id, const ConvolutionSpec& spec);

struct CaseMatch {
  CaseId id;
  ConvolutionSpec spec;  // factor order as the case expects
};

/// Most specific case for spec; products are also tried with swapped factors.
std::optional<CaseMatch> classify(const ConvolutionSpec& spec);

/// The argument the case's series is written in (au, a1a2u^δ, u/a1, ...).
double case_effective_argument(CaseId id, const ConvolutionSpec& spec, double u);

/// Density from the case's closed hypergeometric form, corrected where the
/// printed formula contains a typo.
///
/// Throws PatternMismatch, SimplePoleViolation, BoundaryRegion, Domain.
EvalResult eval_case(CaseId id, const ConvolutionSpec& spec, double u);

/// The closed form exactly as printed, typos included. Only used to measure
/// deviations for the case notes.
double eval_case_as_printed(CaseId id, const ConvolutionSpec& spec, double u);

}  // namespace mellin
