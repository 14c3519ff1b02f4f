#include "mellin/case_notes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mellin/error.hpp"

namespace mellin {

namespace {

constexpr double kGrid[] = {0.25, 0.5, 0.75, 1.5};

std::string remark(CaseId id) {
  switch (id) {
    case CaseId::P2_1:
      return "Kummer series argument is +au with a separator typo ':' for ';'; sign confirmed";
    case CaseId::P2_6:
      return "second term printed as (a1*a1*u)^alpha2; the residue sum gives (a1*a2*u)^alpha2";
    case CaseId::P2_7:
      return "first 2F1 argument printed as a1*a1*u^delta; the residue sum gives a1*a2*u^delta. "
             "The alternative prefactor with delta^2 does not normalize; the density uses the product "
             "of the two normalizing constants";
    case CaseId::P3_4:
      return "valid for every u > 0; the series in -a/u cancels heavily once a/u is large";
    case CaseId::P3_1:
      return "1F0 summed on both sides of a2*u/a1 = 1";
    default: return "matches the residue sum";
  }
}

}  // namespace

std::vector<CaseNote> case_notes() {
  std::vector<CaseNote> out;
  for (CaseId id : all_cases()) {
    const ConvolutionSpec spec = canonical_spec(id);
    const GammaExpr expr = convolved_transform(spec);
    CaseNote n{id, false, 0.0, {}, remark(id)};
    for (double u : kGrid) {
      double printed = 0.0, oracle = 0.0;
      try {
        printed = eval_case_as_printed(id, spec, u);
        if (u >= support_upper(spec)) continue;
        oracle = eval_by_residues(expr, u).value;
      } catch (const Error&) {
        continue;
      }
      n.grid.push_back(u);
      if (oracle != 0.0) n.max_deviation = std::max(n.max_deviation, std::fabs(printed - oracle) / std::fabs(oracle));
    }
    n.corrected = n.max_deviation > kCorrectionThreshold;
    out.push_back(std::move(n));
  }
  return out;
}

std::string case_notes_markdown() {
  std::string s =
      "# Case notes\n\n"
      "Generated by `mellinconv case-notes`. Each printed closed form is evaluated on the canonical "
      "parameters of its case and compared with the generic residue sum of the convolved Mellin "
      "transform. Entries whose relative deviation exceeds 1e-8 are marked corrected; the library "
      "evaluates those cases with the residue-consistent form.\n\n"
      "| case | pattern | status | max deviation | u-grid | note |\n"
      "|---|---|---|---|---|---|\n";
  char buf[64];
  for (const auto& n : case_notes()) {
    std::string dev;
    if (n.corrected) {
      std::snprintf(buf, sizeof buf, "%.2e", n.max_deviation);
      dev = buf;
    } else {
      dev = "< 1e-8";
    }
    std::string grid;
    for (double u : n.grid) {
      std::snprintf(buf, sizeof buf, "%s%g", grid.empty() ? "" : ", ", u);
      grid += buf;
    }
    s += "| " + std::string(to_string(n.id)) + " | " + std::string(case_info(n.id).title) + " | " +
         (n.corrected ? "corrected" : "confirmed") + " | " + dev + " | " + grid + " | " + n.note + " |\n";
  }
  return s;
}

}  // namespace mellin
