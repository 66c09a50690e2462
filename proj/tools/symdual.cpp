// Batch front-end: select a catalog potential, run residual/verification
// suites, and emit machine-readable reports.
//
// Exit codes: 0 all checks pass, 2 at least one identity fails, 1 on
// usage/domain errors.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <variant>

#include "symdual/catalog.hpp"
#include "symdual/duality.hpp"
#include "symdual/forms.hpp"
#include "symdual/verify.hpp"

namespace {

using nlohmann::json;
using namespace symdual;

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

struct Options {
  std::string potential;
  double mu = 2.0;
  double m = 0.5;
  double c = 1.0;
  std::string F = "1-x";
  int dim = 1;
  std::string lambda = "auto";
  double radius = -1.0;  // negative means per-command default
  int count = -1;
  std::uint64_t seed = 42;
  std::string scheme = "jets";
  std::string format = "json";
  std::string out;
};

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // print -0 as 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const Options& opt, const json& doc, const std::string& csv) {
  std::string text = opt.format == "csv" ? csv : doc.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot open output file '" + opt.out + "'");
    f << text;
  }
}

struct LambdaInfo {
  std::string mode;     // "auto" or "explicit"
  double value = 1.0;
  double fprime0 = 0.0;  // gradient component at 0 behind an auto value
};

CatalogParams params_from(const Options& opt, const LambdaInfo* lam = nullptr) {
  CatalogParams p;
  p.mu = opt.mu;
  p.m = opt.m;
  p.c = opt.c;
  p.F = opt.F;
  p.n = opt.dim;
  // parabola_rotation is built for the duality constant it is checked at.
  p.lambda0 = (lam && lam->mode == "explicit") ? lam->value : 1.0;
  return p;
}

LambdaInfo resolve_lambda_mode(const Options& opt) {
  LambdaInfo info;
  if (opt.lambda == "auto") {
    info.mode = "auto";
    return info;
  }
  info.mode = "explicit";
  try {
    size_t used = 0;
    info.value = std::stod(opt.lambda, &used);
    if (used != opt.lambda.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw domain_error("--lambda expects a number or 'auto', got '" + opt.lambda + "'");
  }
  if (!(info.value > 0)) throw domain_error("--lambda must be positive");
  return info;
}

template <typename Potential>
void fill_auto_lambda(LambdaInfo& info, const Potential& p) {
  if (info.mode != "auto") return;
  const LambdaCandidate cand = candidate_lambda(p);
  if (!cand.ok) throw domain_error("lambda auto: " + cand.why_not);
  info.value = cand.lambda;
  info.fprime0 = cand.fprime0;
}

json lambda_json(const LambdaInfo& info) {
  json j{{"mode", info.mode}, {"value", info.value}};
  if (info.mode == "auto") j["fprime0"] = info.fprime0;
  return j;
}

std::string lambda_comment(const LambdaInfo& info) {
  if (info.mode == "auto")
    return "# lambda auto: 1/f'(0) = " + fmt(info.value) + " (f'(0) = " + fmt(info.fprime0) + ")\n";
  return "# lambda = " + fmt(info.value) + "\n";
}

JacobianScheme parse_scheme(const std::string& s) {
  if (s == "jets") return JacobianScheme::jets;
  if (s == "fd") return JacobianScheme::finite_difference;
  throw domain_error("--scheme expects 'jets' or 'fd'");
}

// Default grid radius: 0.8 of the verified neighbourhood of the entry.
double default_verify_radius(const Options& opt, const AnyPotential& any) {
  if (const auto* f = std::get_if<RadialPotential>(&any))
    return 0.8 * std::min(std::sqrt(f->psh_hi()), 1.0);
  const auto& p = std::get<RotationInvariantPotential>(any);
  if (p.name() == "taubnut" && opt.m > 0) {
    // stay inside the implicit-solver neighbourhood, inner point included
    return std::min(0.5, 0.8 * std::sqrt(0.99 / (2.0 * std::exp(1.0) * opt.m)));
  }
  if (p.name() == "hartogs") {
    // keep F(x0) - sum x_j positive on the ball and under the dual map
    return 0.5 * std::sqrt(CatalogParams{}.x_hi);
  }
  return 0.4;
}

// ----------------------------------------------------------------- residual

int cmd_residual(const Options& opt) {
  LambdaInfo lam = resolve_lambda_mode(opt);
  AnyPotential any = catalog(opt.potential, params_from(opt, &lam));
  if (std::holds_alternative<PolarizedPotential>(any))
    throw domain_error("residuals are not defined for polarized entries; use the dual command");

  const double threshold = kJetsThreshold;
  json rows = json::array();
  std::string csv;
  bool any_fail = false, any_error = false;

  if (auto* f = std::get_if<RadialPotential>(&any)) {
    fill_auto_lambda(lam, *f);
    const double hi = opt.radius > 0 ? opt.radius : 0.5;
    const int count = opt.count > 0 ? opt.count : 50;
    csv += lambda_comment(lam);
    csv += "x,residual,status\n";
    for (int i = 0; i < count; ++i) {
      const double x = hi * i / std::max(1, count - 1);
      json row{{"x", x}};
      std::string status = "ok";
      double res = 0.0;
      try {
        res = residual_radial(*f, lam.value, x);
        row["residual"] = res;
        if (std::abs(res) >= threshold) any_fail = true;
      } catch (const domain_error& e) {
        status = std::string("domain-error: ") + e.what();
        any_error = true;
      }
      row["status"] = status;
      rows.push_back(row);
      csv += fmt(x) + "," + (status == "ok" ? fmt(res) : "") + "," + status + "\n";
    }
  } else {
    const RotationInvariantPotential& p = std::get<RotationInvariantPotential>(any);
    fill_auto_lambda(lam, p);
    const double hi = opt.radius > 0 ? opt.radius : 0.3;
    const int count = opt.count > 0 ? opt.count : 50;
    const int n = p.n();
    csv += lambda_comment(lam);
    for (int k = 1; k <= n; ++k) csv += "x" + std::to_string(k) + ",";
    for (int k = 1; k <= n; ++k) csv += "residual" + std::to_string(k) + ",";
    csv += "status\n";
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd x(n);
      for (int k = 0; k < n; ++k) x(k) = hi * unit(rng);
      if (i == 0) x.setZero();
      json row{{"x", std::vector<double>(x.data(), x.data() + n)}};
      std::string status = "ok";
      Eigen::VectorXd res = Eigen::VectorXd::Zero(n);
      try {
        res = residual_rotation_invariant(p, lam.value, x);
        row["residual"] = std::vector<double>(res.data(), res.data() + n);
        if (res.cwiseAbs().maxCoeff() >= threshold) any_fail = true;
      } catch (const domain_error& e) {
        status = std::string("domain-error: ") + e.what();
        any_error = true;
      }
      row["status"] = status;
      rows.push_back(row);
      for (int k = 0; k < n; ++k) csv += fmt(x(k)) + ",";
      for (int k = 0; k < n; ++k) csv += (status == "ok" ? fmt(res(k)) : "") + ",";
      csv += status + "\n";
    }
  }

  json doc{{"command", "residual"},
           {"potential", opt.potential},
           {"lambda", lambda_json(lam)},
           {"threshold", threshold},
           {"seed", opt.seed},
           {"rows", rows}};
  write_output(opt, doc, csv);
  if (any_error) return kExitError;
  return any_fail ? kExitFail : kExitPass;
}

// ------------------------------------------------------------------- verify

json report_to_json(const VerificationReport& r) { return r.to_json(); }

std::string report_csv_row(const VerificationReport& r) {
  std::string s = r.identity + "," + fmt(r.max_residual) + "," + fmt(r.mean_residual) + "," +
                  fmt(r.threshold) + "," + (r.pass ? "pass" : "fail");
  return s + "\n";
}

int cmd_verify(const Options& opt) {
  LambdaInfo lam = resolve_lambda_mode(opt);
  AnyPotential any = catalog(opt.potential, params_from(opt, &lam));
  if (std::holds_alternative<PolarizedPotential>(any))
    throw domain_error("verify is not defined for polarized entries; use the dual command");
  const JacobianScheme scheme = parse_scheme(opt.scheme);
  const double radius = opt.radius > 0 ? opt.radius : 0.5;
  const int count = opt.count > 0 ? opt.count : 200;

  std::vector<VerificationReport> reports;
  if (auto* fp = std::get_if<RadialPotential>(&any)) {
    const RadialPotential f = *fp;
    fill_auto_lambda(lam, f);
    const int n = std::max(1, opt.dim);
    DualityProblem prob = make_duality_problem(f, n, lam.value, radius);
    const GridSpec grid{n, radius, count, GridSpec::Scheme::seeded_random, opt.seed};
    auto map = canonical_map(prob);
    auto [a, b] = check_duality(prob, *map, grid, scheme);
    reports.push_back(a);
    reports.push_back(b);
    reports.push_back(check_operator_identities(prob, *map, grid, scheme));

    // Gauge family: random radial polynomial phases and unitary rotations.
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VerificationReport gauge;
    bool first = true;
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::Vector4d coef;
      for (int k = 0; k < 4; ++k) coef(k) = unit(rng);
      auto g = [coef](double t) {
        const Jet1d tt = Jet1d::variable(t);
        return coef(0) + coef(1) * tt + coef(2) * (tt * tt) + coef(3) * (tt * tt * tt);
      };
      Eigen::MatrixXcd gmat(n, n);
      for (int r = 0; r < n; ++r)
        for (int c2 = 0; c2 < n; ++c2) gmat(r, c2) = std::complex<double>(gauss(rng), gauss(rng));
      const Eigen::MatrixXcd a_unitary = Eigen::HouseholderQR<Eigen::MatrixXcd>(gmat).householderQ();
      auto gauged = gauge_transform(map, g, a_unitary);
      auto [ga, gb] = check_duality(prob, *gauged, grid, scheme);
      const VerificationReport& worse = ga.max_residual >= gb.max_residual ? ga : gb;
      if (first || worse.max_residual > gauge.max_residual) gauge = worse;
      first = false;
    }
    gauge.identity = "gauge_family";
    reports.push_back(gauge);

    // Line preservation along a coordinate axis and a random direction.
    VerificationReport lines;
    {
      Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(n);
      e1(0) = 1.0;
      lines = check_line_preservation(*map, e1, radius, 40, opt.seed);
      Eigen::VectorXcd v(n);
      std::mt19937_64 rng2(opt.seed + 1);
      std::normal_distribution<double> g2(0.0, 1.0);
      for (int k = 0; k < n; ++k) v(k) = std::complex<double>(g2(rng2), g2(rng2));
      VerificationReport second = check_line_preservation(*map, v, radius, 40, opt.seed + 1);
      if (second.max_residual > lines.max_residual) lines = second;
      lines.potential = f.name();
      lines.lambda = lam.value;
    }
    reports.push_back(lines);
  } else {
    const RotationInvariantPotential p = std::get<RotationInvariantPotential>(any);
    fill_auto_lambda(lam, p);
    DualityProblem prob = make_duality_problem(p, lam.value, radius);
    const GridSpec grid{p.n(), radius, count, GridSpec::Scheme::seeded_random, opt.seed};
    auto map = canonical_map(prob);
    auto [a, b] = check_duality(prob, *map, grid, scheme);
    reports.push_back(a);
    reports.push_back(b);
  }

  json doc{{"command", "verify"},
           {"potential", opt.potential},
           {"lambda", lambda_json(lam)},
           {"reports", json::array()}};
  std::string csv = lambda_comment(lam) + "identity,max_residual,mean_residual,threshold,status\n";
  bool all_pass = true;
  for (const auto& r : reports) {
    doc["reports"].push_back(report_to_json(r));
    csv += report_csv_row(r);
    all_pass = all_pass && r.pass;
  }
  write_output(opt, doc, csv);
  return all_pass ? kExitPass : kExitFail;
}

// --------------------------------------------------------------------- dual

int cmd_dual(const Options& opt) {
  AnyPotential any = catalog(opt.potential, params_from(opt));

  if (auto* pp = std::get_if<PolarizedPotential>(&any)) {
    const PolarizedPotential dual = dual_polarized(*pp);
    const double radius = opt.radius > 0 ? opt.radius : 0.1;
    const RealnessReport rep = realness_report(dual, radius, 64, opt.seed);
    json worst = json::array();
    for (Eigen::Index j = 0; j < rep.worst_z.size(); ++j)
      worst.push_back({rep.worst_z(j).real(), rep.worst_z(j).imag()});
    json doc{{"command", "dual"},         {"potential", opt.potential}, {"flavor", "polarized"},
             {"real", rep.real},          {"max_abs_im", rep.max_abs_im}, {"worst_z", worst},
             {"sweep_radius", radius}};
    std::string csv = "real,max_abs_im\n" + std::string(rep.real ? "yes" : "no") + "," + fmt(rep.max_abs_im) + "\n";
    if (!rep.real)
      std::cerr << "NOT REAL, max |Im| = " << fmt(rep.max_abs_im) << " at z=" << rep.worst_z.transpose() << "\n";
    write_output(opt, doc, csv);
    return rep.real ? kExitPass : kExitFail;
  }

  if (auto* fp = std::get_if<RadialPotential>(&any)) {
    const RadialPotential f = *fp;
    const RadialPotential fd = dual_radial(f);
    const double hi = opt.radius > 0 ? opt.radius : 0.5;
    const int count = opt.count > 0 ? opt.count : 25;
    json rows = json::array();
    std::string csv = "x,f,f_dual,reflection_residual,status\n";
    double max_reflect = 0.0, max_selfdual = 0.0;
    for (int i = 0; i < count; ++i) {
      const double x = hi * i / std::max(1, count - 1);
      const Jet1d fx = f.jets(x);
      const Jet1d gx = fd.jets(x);
      const double reflect = std::abs(gx.d1 - f.jets(-x).d1);
      max_reflect = std::max(max_reflect, reflect);
      max_selfdual = std::max(max_selfdual, std::abs(gx.f - fx.f));
      rows.push_back(json{{"x", x}, {"f", fx.f}, {"f_dual", gx.f}, {"reflection_residual", reflect}});
      csv += fmt(x) + "," + fmt(fx.f) + "," + fmt(gx.f) + "," + fmt(reflect) + ",ok\n";
    }
    const bool self_dual = max_selfdual < 1e-12;
    json doc{{"command", "dual"},   {"potential", opt.potential},      {"flavor", "radial"},
             {"self_dual", self_dual}, {"max_reflection_residual", max_reflect}, {"rows", rows}};
    write_output(opt, doc, csv);
    return max_reflect < kJetsThreshold ? kExitPass : kExitFail;
  }

  const RotationInvariantPotential p = std::get<RotationInvariantPotential>(any);
  const RotationInvariantPotential pd = dual_rotation_invariant(p);
  const double hi = opt.radius > 0 ? opt.radius : 0.2;
  const int count = opt.count > 0 ? opt.count : 25;
  const int n = p.n();
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  json rows = json::array();
  std::string csv;
  for (int k = 1; k <= n; ++k) csv += "x" + std::to_string(k) + ",";
  csv += "phi_dual,reflection_residual,status\n";
  double max_reflect = 0.0;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x(k) = hi * unit(rng);
    if (i == 0) x.setZero();
    const JetNd dj = pd.jets(x);
    const JetNd sj = p.jets(-x);
    const double reflect = (dj.grad - sj.grad).cwiseAbs().maxCoeff();
    max_reflect = std::max(max_reflect, reflect);
    rows.push_back(json{{"x", std::vector<double>(x.data(), x.data() + n)},
                        {"phi_dual", dj.f},
                        {"reflection_residual", reflect}});
    for (int k = 0; k < n; ++k) csv += fmt(x(k)) + ",";
    csv += fmt(dj.f) + "," + fmt(reflect) + ",ok\n";
  }
  json doc{{"command", "dual"},
           {"potential", opt.potential},
           {"flavor", "rotation_invariant"},
           {"max_reflection_residual", max_reflect},
           {"rows", rows}};
  write_output(opt, doc, csv);
  return max_reflect < kJetsThreshold ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- curvature

int cmd_curvature(const Options& opt) {
  LambdaInfo lam = resolve_lambda_mode(opt);
  AnyPotential any = catalog(opt.potential, params_from(opt, &lam));
  auto* fp = std::get_if<RadialPotential>(&any);
  if (!fp) throw domain_error("curvature is implemented for radial potentials only");
  const RadialPotential f = *fp;
  const double hi = opt.radius > 0 ? opt.radius : 0.8 * std::min(f.psh_hi(), 1.25);
  const int count = opt.count > 0 ? opt.count : 50;

  json rows = json::array();
  std::string csv = "x,K,status\n";
  double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin;
  for (int i = 0; i < count; ++i) {
    const double x = hi * i / std::max(1, count - 1);
    const double k = gaussian_curvature_radial(f, x);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    rows.push_back(json{{"x", x}, {"K", k}});
    csv += fmt(x) + "," + fmt(k) + ",ok\n";
  }
  const double spread = kmax - kmin;
  const bool constant = spread < 1e-8;
  json doc{{"command", "curvature"}, {"potential", opt.potential}, {"constant", constant},
           {"spread", spread},       {"K_min", kmin},              {"K_max", kmax},
           {"rows", rows}};
  csv += "# verdict: " + std::string(constant ? "constant" : "non-constant") + ", spread " + fmt(spread) + "\n";
  write_output(opt, doc, csv);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symdual: numerical checks for dual Kahler potentials and special symplectic duality maps"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--potential", opt.potential, "catalog entry name")->required();
    cmd->add_option("--mu", opt.mu, "scaled_hyperbolic coefficient");
    cmd->add_option("--m", opt.m, "taubnut parameter");
    cmd->add_option("--c", opt.c, "flat coefficient");
    cmd->add_option("--F", opt.F, "hartogs profile expression, e.g. \"1-x\"");
    cmd->add_option("--dim", opt.dim, "complex dimension (hartogs: number of variables)");
    cmd->add_option("--lambda", opt.lambda, "duality constant or 'auto' (1/f'(0))");
    cmd->add_option("--radius", opt.radius, "grid radius / x upper bound");
    cmd->add_option("--count", opt.count, "grid size");
    cmd->add_option("--seed", opt.seed, "random seed recorded in reports");
    cmd->add_option("--scheme", opt.scheme, "jacobian scheme: jets | fd");
    cmd->add_option("--format", opt.format, "output format: json | csv");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
  };

  CLI::App* residual = app.add_subcommand("residual", "tabulate the duality residual equation over a grid");
  CLI::App* verify = app.add_subcommand("verify", "run the full verification suite for one potential");
  CLI::App* dual = app.add_subcommand("dual", "inspect the dual potential and its defining identities");
  CLI::App* curvature = app.add_subcommand("curvature", "tabulate the radial Gaussian curvature");
  for (CLI::App* cmd : {residual, verify, dual, curvature}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (residual->parsed()) return cmd_residual(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (dual->parsed()) return cmd_dual(opt);
    if (curvature->parsed()) return cmd_curvature(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
