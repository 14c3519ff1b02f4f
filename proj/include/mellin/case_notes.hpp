#pragma once

#include <string>
#include <vector>

#include "mellin/series.hpp"

namespace mellin {

// Relative deviation above which a printed closed form counts as corrected.
inline constexpr double kCorrectionThreshold = 1e-8;

struct CaseNote {
  CaseId id;
  bool corrected = false;
  // max relative deviation of the printed form from the residue sum
  double max_deviation = 0.0;
  std::vector<double> grid;
  std::string note;
};

/// Compares every printed closed form against eval_by_residues on its
/// canonical parameters over a small u-grid covering each branch.
std::vector<CaseNote> case_notes();

/// Markdown table of case_notes(); identical output on every run.
std::string case_notes_markdown();

}  // namespace mellin
