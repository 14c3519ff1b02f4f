#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mellin/case_notes.hpp"
#include "mellin/density.hpp"
#include "mellin/error.hpp"
#include "mellin/matrix_variate.hpp"
#include "mellin/quadrature.hpp"
#include "mellin/sampling.hpp"
#include "mellin/series.hpp"
#include "mellin/verification.hpp"

using nlohmann::ordered_json;
using namespace mellin;

namespace {

enum Exit { kOk = 0, kConfig = 2, kEval = 3, kVerify = 4, kMatrix = 5 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x == 0.0 ? 0.0 : x);
  return buf;
}

// One line per colliding factor pair.
std::vector<std::string> collision_lines(const PoleReport& rep) {
  std::vector<std::string> out;
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& c : rep.collisions) {
    const auto key = std::make_pair(c.factor_a, c.factor_b);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    std::size_t count = 0;
    for (const auto& d : rep.collisions) count += d.factor_a == c.factor_a && d.factor_b == c.factor_b;
    out.push_back("poles of factors " + std::to_string(c.factor_a) + " and " + std::to_string(c.factor_b) +
                  " coincide from s = " + short_num(c.location) + " (" + std::to_string(count) +
                  " coincidences in the scanned range); residue series unavailable, use quad or contour");
  }
  return out;
}

// ---- JSON model format: {"family", "alpha", "beta", "a", "delta"}

PathwayModel model_from_json(const ordered_json& j) {
  PathwayModel m;
  m.family = family_from_string(j.at("family").get<std::string>());
  m.alpha = j.at("alpha").get<double>();
  m.beta = j.value("beta", 1.0);
  m.a = j.value("a", 1.0);
  m.delta = j.value("delta", 1.0);
  m.validate();
  return m;
}

ordered_json model_to_json(const PathwayModel& m) {
  ordered_json j;
  j["family"] = std::string(to_string(m.family));
  j["alpha"] = m.alpha;
  if (m.has_beta()) j["beta"] = m.beta;
  j["a"] = m.a;
  j["delta"] = m.delta;
  return j;
}

ordered_json spec_to_json(const ConvolutionSpec& s) {
  return {{"kind", std::string(to_string(s.kind))}, {"f1", model_to_json(s.f1)}, {"f2", model_to_json(s.f2)}};
}

ConvolutionSpec spec_from_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot read spec file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    const auto j = ordered_json::parse(text);
    ConvolutionSpec s{kind_from_string(j.value("kind", std::string("Product"))), model_from_json(j.at("f1")),
                      model_from_json(j.at("f2"))};
    s.validate();
    return s;
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("invalid spec JSON: ") + e.what());
  }
}

struct Target {
  ConvolutionSpec spec;
  std::optional<CaseId> id;
};

Target resolve(const std::string& spec_arg, const std::string& case_arg) {
  if (!spec_arg.empty() && !case_arg.empty()) throw ConfigError("use either --spec or --case");
  if (!case_arg.empty()) {
    const CaseId id = case_from_string(case_arg);
    return {canonical_spec(id), id};
  }
  if (spec_arg.empty()) throw ConfigError("one of --spec or --case is required");
  Target t{spec_from_arg(spec_arg), std::nullopt};
  if (auto m = classify(t.spec)) {
    t.spec = m->spec;
    t.id = m->id;
  }
  return t;
}

std::vector<double> parse_grid(const std::string& g) {
  std::vector<std::string> parts;
  std::stringstream ss(g);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) throw ConfigError("grid must be min:max:count[:log]");
  double lo, hi;
  long count;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("grid must be min:max:count[:log]");
  }
  const bool log = parts.size() == 4 && parts[3] == "log";
  if (parts.size() == 4 && !log && parts[3] != "lin") throw ConfigError("grid spacing must be log or lin");
  if (count < 1) throw ConfigError("grid count must be at least 1");
  if (count > 1 && !(lo < hi)) throw ConfigError("grid needs min < max");
  if (log && !(lo > 0)) throw ConfigError("log grid needs min > 0");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
  }
  return out;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + out + "'");
  f << text;
}

// ---- transform

int cmd_transform(const std::string& spec_arg, const std::string& case_arg, const std::string& format,
                  const std::string& out) {
  const Target t = resolve(spec_arg, case_arg);
  const GammaExpr expr = convolved_transform(t.spec);
  const PoleReport rep = poles(expr);
  const SeriesGeometry geo = series_geometry(expr);
  const HFunctionParams h = to_h_function(expr);
  auto seq = [&](const PoleSequence& p) {
    const auto& f = expr.numerator()[p.factor];
    return "Γ(" + short_num(f.offset) + (f.slope < 0 ? " - " : " + ") + short_num(std::fabs(f.slope)) +
           "s): s = " + short_num(p.first) + (p.step < 0 ? " - " : " + ") + short_num(std::fabs(p.step)) + "ν";
  };
  if (format == "json") {
    ordered_json j;
    j["spec"] = spec_to_json(t.spec);
    if (t.id) j["case"] = std::string(to_string(*t.id));
    j["transform"] = to_string(expr);
    j["strip"] = {expr.strip().lower, expr.strip().upper};
    ordered_json left = ordered_json::array(), right = ordered_json::array(), col = ordered_json::array();
    for (const auto& p : rep.left) left.push_back(seq(p));
    for (const auto& p : rep.right) right.push_back(seq(p));
    for (const auto& c : collision_lines(rep)) col.push_back(c);
    j["left_poles"] = left;
    j["right_poles"] = right;
    j["collisions"] = col;
    j["mu"] = geo.mu;
    j["radius"] = geo.radius;
    j["h_function"] = to_string(h);
    emit(j.dump(2) + "\n", out);
    return kOk;
  }
  std::string s;
  s += "kind: " + std::string(to_string(t.spec.kind)) + "\n";
  s += "f1: " + to_string(t.spec.f1) + "\n";
  s += "f2: " + to_string(t.spec.f2) + "\n";
  if (t.id) s += "case: " + std::string(to_string(*t.id)) + " (" + std::string(case_info(*t.id).title) + ")\n";
  s += "transform: " + to_string(expr) + "\n";
  s += "strip: (" + fmt(expr.strip().lower) + ", " + fmt(expr.strip().upper) + ")\n";
  for (const auto& p : rep.left) s += "left poles: " + seq(p) + "\n";
  for (const auto& p : rep.right) s += "right poles: " + seq(p) + "\n";
  for (const auto& c : collision_lines(rep)) s += "warning: " + c + "\n";
  s += "balance mu: " + fmt(geo.mu) + ", radius: " + fmt(geo.radius) + "\n";
  s += "h-function: " + to_string(h) + "\n";
  emit(s, out);
  return kOk;
}

// ---- density

struct Row {
  double u, value, err;
  std::string backend;
};

int cmd_density(const std::string& spec_arg, const std::string& case_arg, const std::string& backend,
                const std::string& grid, std::uint64_t seed, bool quick, const std::string& format,
                const std::string& out) {
  const Target t = resolve(spec_arg, case_arg);
  const std::vector<double> us = parse_grid(grid);
  const double upper = support_upper(t.spec);
  for (double u : us)
    if (!(u > 0) || !(u < upper)) {
      std::cerr << "error: grid point " << fmt(u) << " lies outside the support\n";
      return kEval;
    }
  std::vector<std::string> backends;
  if (backend == "all") backends = {"series", "quad", "contour", "mc"};
  else backends = {backend};
  for (const auto& b : backends)
    if (b != "mc") method_from_string(b);

  std::vector<Row> rows;
  const std::size_t n = quick ? 100000 : 1000000;
  std::optional<McReport> mc;
  bool failed = false;
  for (double u : us) {
    for (const auto& b : backends) {
      try {
        if (b == "mc") {
          if (!mc) {
            auto density = [&](double x) { return evaluate_density(t.spec, x, Method::Auto).value; };
            McOptions narrow;
            narrow.target_count = 2000.0;
            mc = mc_verify(t.spec, density, seed, n, us, narrow);
          }
          for (const auto& p : mc->points)
            if (p.u == u) rows.push_back({u, p.empirical, p.standard_error, "mc"});
          continue;
        }
        const Method method = method_from_string(b);
        EvalResult r;
        try {
          r = evaluate_density(t.spec, u, method);
        } catch (const Error& e) {
          const bool series = method == Method::Series || method == Method::Residue;
          if (!series || e.kind() != ErrorKind::BoundaryRegion) throw;
          r = evaluate_density(t.spec, u, Method::Quadrature);
        }
        rows.push_back({u, r.value, r.abs_error, std::string(to_string(r.backend))});
      } catch (const Error& e) {
        std::cerr << "error: u=" << fmt(u) << " backend " << b << ": " << e.what() << "\n";
        failed = true;
      }
    }
  }
  std::string s;
  if (format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) j.push_back({{"u", r.u}, {"value", r.value}, {"abs_error", r.err}, {"backend", r.backend}});
    s = j.dump(2) + "\n";
  } else {
    s = "u,value,abs_error,backend\n";
    for (const auto& r : rows) s += fmt(r.u) + "," + fmt(r.value) + "," + fmt(r.err) + "," + r.backend + "\n";
  }
  emit(s, out);
  return failed ? kEval : kOk;
}

// ---- verify

ordered_json verification_json(const CaseVerification& v) {
  ordered_json j;
  j["case"] = std::string(to_string(v.id));
  j["draws"] = v.draws;
  j["points"] = v.points;
  ordered_json pairs = ordered_json::object();
  for (const auto& p : v.pairs) pairs[p.pair] = {{"max_abs_deviation", p.max_abs}, {"max_tolerance_ratio", p.max_ratio}};
  j["pairs"] = pairs;
  j["failures"] = v.failures;
  if (v.mc_run) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : v.mc.points)
      pts.push_back({{"u", p.u}, {"bin", {p.lo, p.hi}}, {"count", p.count}, {"empirical", p.empirical},
                     {"standard_error", p.standard_error}, {"analytic", p.analytic}, {"z", p.z}});
    j["mc"] = {{"n", v.mc.n}, {"max_z", v.mc.max_z}, {"points", pts}};
  }
  j["passed"] = v.passed();
  return j;
}

int cmd_verify(const std::string& case_arg, std::uint64_t seed, bool quick, double perturb, const std::string& out) {
  std::vector<CaseId> ids;
  if (case_arg.empty() || case_arg == "all") ids = all_cases();
  else ids = {case_from_string(case_arg)};
  if (!(perturb > 0)) throw ConfigError("perturbation factor must be positive");
  VerifyOptions opts;
  opts.seed = seed;
  opts.series_scale = perturb;
  if (quick) {
    opts.draws = 2;
    opts.points_per_branch = 5;
    opts.mc_samples = 100000;
  }
  std::vector<std::future<CaseVerification>> jobs;
  for (CaseId id : ids) jobs.push_back(std::async(std::launch::async, [id, opts] { return verify_case(id, opts); }));
  ordered_json cases = ordered_json::array();
  bool ok = true;
  for (auto& f : jobs) {
    const CaseVerification v = f.get();
    ok = ok && v.passed();
    cases.push_back(verification_json(v));
  }
  ordered_json j;
  j["seed"] = seed;
  j["quick"] = quick;
  j["series_scale"] = perturb;
  j["tolerance"] = "max(1e-7, 1e-6*|value|)";
  j["mc_z_threshold"] = kMcZThreshold;
  j["cases"] = cases;
  j["passed"] = ok;
  emit(j.dump(2) + "\n", out);
  return ok ? kOk : kVerify;
}

// ---- matrix demo

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

int cmd_matrix_demo(int p, const std::vector<double>& alphas, std::uint64_t seed, bool quick, const std::string& out) {
  if (p < 1 || p > 3) throw ConfigError("matrix dimension p must be 1, 2 or 3");
  if (alphas.size() != 2) throw ConfigError("--alphas needs two values");
  for (double a : alphas)
    if (!(a > 0.5 * (p - 1))) throw ConfigError("each alpha must exceed (p-1)/2");
  const std::size_t n = quick ? 100000 : 1000000;
  const MatrixGammaModel m1{alphas[0], SpdMatrix::identity(p)};
  const MatrixGammaModel m2{alphas[1], SpdMatrix::identity(p)};
  ordered_json j;
  j["p"] = p;
  j["alphas"] = alphas;
  j["seed"] = seed;
  j["n"] = n;
  bool stats_ok = true;

  j["multivariate_gamma"] = {{"alpha1", multivariate_gamma(alphas[0], p)}, {"alpha2", multivariate_gamma(alphas[1], p)}};

  // symmetric products of sampled pairs must stay SPD with multiplicative determinants
  const std::size_t pairs = 1000;
  const auto x1 = sample_matrix_gamma(m1, seed, pairs);
  const auto x2 = sample_matrix_gamma(m2, seed + 1, pairs);
  double det_dev = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const SpdMatrix u = symmetric_product(x1[i], x2[i]);
    det_dev = std::max(det_dev, std::fabs(u.log_det() - x1[i].log_det() - x2[i].log_det()));
  }
  j["spd_invariants"] = {{"pairs", pairs}, {"max_log_det_deviation", det_dev}};
  if (det_dev > 1e-9) {
    j["passed"] = false;
    emit(j.dump(2) + "\n", out);
    return kMatrix;
  }

  const SpdMatrix U = SpdMatrix::identity(p);
  const auto est = symmetric_product_density_mc(m1, m2, U, seed, n);
  const double z = (est.direct.value - est.swapped.value) / std::hypot(est.direct.abs_error, est.swapped.abs_error);
  stats_ok = stats_ok && std::fabs(z) <= 3.0;
  j["representations"] = {{"U", matrix_json(U.matrix())},
                          {"direct", {{"value", est.direct.value}, {"standard_error", est.direct.abs_error}}},
                          {"swapped", {{"value", est.swapped.value}, {"standard_error", est.swapped.abs_error}}},
                          {"z", z}};
  if (p == 1) {
    const ConvolutionSpec scalar{Kind::Product, PathwayModel::gen_gamma(alphas[0]), PathwayModel::gen_gamma(alphas[1])};
    const double q = density_quad(scalar, 1.0).value;
    const double zs = (est.direct.value - q) / est.direct.abs_error;
    stats_ok = stats_ok && std::fabs(zs) <= 3.0;
    j["scalar_reduction"] = {{"quadrature", q}, {"z", zs}};
  }
  j["passed"] = stats_ok;
  emit(j.dump(2) + "\n", out);
  return stats_ok ? kOk : kVerify;
}

int cmd_case_notes(const std::string& out, const std::string& check) {
  const std::string md = case_notes_markdown();
  if (!check.empty()) {
    std::ifstream in(check, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + check + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != md) {
      std::cerr << "case notes differ from " << check << "\n";
      return kVerify;
    }
    return kOk;
  }
  emit(md, out);
  return kOk;
}

int exit_for(const Error& e, bool matrix) {
  switch (e.kind()) {
    case ErrorKind::InvalidModel:
    case ErrorKind::PatternMismatch:
    case ErrorKind::DimensionMismatch: return kConfig;
    case ErrorKind::Domain: return matrix ? kMatrix : kEval;
    default: return kEval;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities of products and ratios of pathway-model random variables via Mellin convolution"};
  app.require_subcommand(1);

  std::string spec_arg, case_arg, backend = "auto", grid = "0.1:4:9", out, format = "csv", check;
  std::uint64_t seed = 1;
  bool quick = false;
  double perturb = 1.0;
  int p = 2;
  std::vector<double> alphas{2.0, 2.0};

  auto* tr = app.add_subcommand("transform", "symbolic Mellin transform, strip, poles and H-function parameters");
  tr->add_option("--spec", spec_arg, "spec JSON file or inline JSON");
  tr->add_option("--case", case_arg, "case id P2_1 ... P3_7 (canonical parameters)");
  tr->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json", "csv"}));
  tr->add_option("--out", out, "output path");

  auto* de = app.add_subcommand("density", "tabulate the density on a grid");
  de->add_option("--spec", spec_arg, "spec JSON file or inline JSON");
  de->add_option("--case", case_arg, "case id");
  de->add_option("--backend", backend, "series, residue, quad, contour, mc, auto or all")
      ->check(CLI::IsMember({"series", "residue", "quad", "contour", "mc", "auto", "all"}));
  de->add_option("--grid", grid, "min:max:count[:log]");
  de->add_option("--seed", seed, "Monte Carlo seed");
  de->add_flag("--quick", quick, "fewer Monte Carlo samples");
  de->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  de->add_option("--out", out, "output path");

  auto* ve = app.add_subcommand("verify", "cross-backend verification for one case or all");
  ve->add_option("--case", case_arg, "case id or all");
  ve->add_option("--seed", seed, "seed for draws and sampling");
  ve->add_flag("--quick", quick, "fewer draws and samples");
  ve->add_option("--perturb", perturb, "multiply series values by this factor");
  ve->add_option("--out", out, "output path");

  auto* md = app.add_subcommand("matrix-demo", "matrix-variate gamma symmetric-product checks");
  md->add_option("--p", p, "matrix dimension (1, 2 or 3)");
  md->add_option("--alphas", alphas, "shape parameters alpha1 alpha2")->delimiter(',');
  md->add_option("--seed", seed, "seed");
  md->add_flag("--quick", quick, "fewer samples");
  md->add_option("--out", out, "output path");

  auto* cn = app.add_subcommand("case-notes", "regenerate the printed-formula comparison table");
  cn->add_option("--out", out, "output path");
  cn->add_option("--check", check, "compare against an existing file instead of writing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  const bool matrix = md->parsed();
  try {
    if (tr->parsed()) return cmd_transform(spec_arg, case_arg, format == "csv" ? "text" : format, out);
    if (de->parsed()) return cmd_density(spec_arg, case_arg, backend, grid, seed, quick, format, out);
    if (ve->parsed()) return cmd_verify(case_arg, seed, quick, perturb, out);
    if (matrix) return cmd_matrix_demo(p, alphas, seed, quick, out);
    if (cn->parsed()) return cmd_case_notes(out, check);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e, matrix);
  }
  return kOk;
}
