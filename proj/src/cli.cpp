#include "calabi/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "calabi/calabi_core.hpp"
#include "calabi/catalog.hpp"
#include "calabi/frames.hpp"
#include "calabi/geodesics.hpp"
#include "calabi/jets.hpp"
#include "calabi/legendre.hpp"
#include "calabi/pde.hpp"
#include "calabi/report.hpp"
#include "calabi/verify.hpp"
#include "calabi/warped.hpp"

namespace calabi::cli {

namespace {

Vec parse_point(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed coordinate '" + item + "' in point list");
    }
  }
  if (out.empty()) throw InvalidArgument("empty point list");
  return out;
}

struct FunctionSpec {
  std::string catalog_name;
  std::string expr_source;
  int dim = 0;  // 0 = infer from point
};

ConvexFunction resolve_function(const FunctionSpec& spec, std::size_t point_size) {
  int dim = spec.dim;
  if (dim == 0) dim = static_cast<int>(point_size);
  if (point_size != 0 && dim != static_cast<int>(point_size))
    throw InvalidArgument("--dim does not match the number of point coordinates");
  if (!spec.catalog_name.empty()) return get(spec.catalog_name, dim).f;
  if (spec.expr_source.empty()) throw InvalidArgument("provide --catalog or --expr");
  ConvexFunction f;
  f.dim = dim;
  f.source = spec.expr_source;
  f.body = parse(spec.expr_source, dim);
  return f;
}

void add_function_options(CLI::App* cmd, FunctionSpec& spec) {
  cmd->add_option("--catalog", spec.catalog_name, "built-in function name (see `calabi catalog`)");
  cmd->add_option("--expr", spec.expr_source, "expression in x1..xn (grammar in README)");
  cmd->add_option("--dim", spec.dim, "dimension n (inferred from --point when omitted)");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + out_path + "'");
  file << text;
}

JsonValue function_json(const ConvexFunction& f) {
  JsonValue v = JsonValue::object();
  v.set("name", f.name.empty() ? JsonValue() : JsonValue(f.name));
  v.set("source", f.source.empty() ? to_string(f.body) : f.source);
  v.set("dim", f.dim);
  return v;
}

int thread_count_from_env() {
  const char* env = std::getenv("CALABI_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 1024)
    throw InvalidArgument("CALABI_THREADS must be a positive integer");
  return static_cast<int>(v);
}

// ---- verb implementations ---------------------------------------------------

struct AnalyzeArgs {
  FunctionSpec fn;
  std::string point_text;
  std::vector<double> exponents;
  int restarts = 16;
  std::uint64_t seed = 42;
  std::string out_path;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const Vec point = parse_point(args.point_text);
  ConvexFunction f = resolve_function(args.fn, point.size());
  const int n = f.dim;

  AnalysisReport rep;
  rep.function_name = args.fn.catalog_name;
  rep.source = f.source;
  rep.n = n;
  rep.point = point;
  rep.seed = args.seed;

  const Jet4 jet = jet4(f, point);
  const MetricData m = metric_data(jet);
  const ConnectionData c = connection_and_pick(jet, m);
  const CurvatureData cd = curvature(jet, m, c);

  rep.detD = m.detD;
  const std::vector<double> eig = sym_eigenvalues(m.G);
  rep.g_eig_min = eig.back();
  rep.g_eig_max = eig.front();
  rep.Tnorm2 = c.Tnorm2;
  rep.pickJ = c.pickJ;
  rep.scalar_contracted = cd.scalar_contracted;
  rep.scalar_JT = cd.scalar_JT;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec u(static_cast<std::size_t>(n), 0.0), v(static_cast<std::size_t>(n), 0.0);
      u[static_cast<std::size_t>(i)] = 1.0;
      v[static_cast<std::size_t>(j)] = 1.0;
      rep.sectional_samples.push_back(sectional_curvature(cd, m, u, v));
    }

  std::vector<double> exps = args.exponents;
  if (exps.empty()) {
    if (!args.fn.catalog_name.empty()) {
      const CatalogEntry entry = get(args.fn.catalog_name, n);
      if (entry.expected.solving_exponent) exps.push_back(entry.expected.solving_exponent->value);
    }
    exps.push_back(-1.0);
  }
  for (double a : exps) {
    const PdeReport pr = pde_report(f, point, a);
    rep.pde.push_back({pr.a, pr.residual_12, pr.residual_11, pr.normalized_residual_12, pr.implied_Lsharp});
  }

  try {
    const EjiriData ej = theta_max(f, point, args.restarts, args.seed);
    rep.theta = ej.theta;
    rep.spectrum = ej.spectrum;
    rep.maximizer = ej.maximizer;
  } catch (const VanishingPick&) {
    // quadratic point: theta stays null
  }

  emit(to_json(rep).dump(2) + "\n", args.out_path, out);
  return 0;
}

struct ResidualArgs {
  FunctionSpec fn;
  std::string point_text;
  double a = 0.0;
  std::string out_path;
};

int run_residual(const ResidualArgs& args, std::ostream& out) {
  const Vec point = parse_point(args.point_text);
  ConvexFunction f = resolve_function(args.fn, point.size());
  const PdeReport pr = pde_report(f, point, args.a);
  JsonValue root = JsonValue::object();
  root.set("function", function_json(f));
  root.set("point", json_vector(point));
  root.set("a", pr.a);
  root.set("w", pr.w);
  root.set("residual_12", pr.residual_12);
  root.set("residual_11", pr.residual_11);
  root.set("normalized_residual_12", pr.normalized_residual_12);
  root.set("implied_Lsharp", pr.implied_Lsharp);
  root.set("gradD", json_vector(pr.gradD));
  root.set("hessD", json_matrix(pr.hessD));
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct Identity54Args {
  int n = 2;
  double a = 0.0;
  std::string point_text;
  std::string out_path;
};

int run_identity54(const Identity54Args& args, std::ostream& out) {
  const Vec point = parse_point(args.point_text);
  if (static_cast<int>(point.size()) != args.n)
    throw InvalidArgument("--dim does not match the number of point coordinates");
  if (args.a == 0.0) throw ZeroExponent("exponent must be nonzero");
  const Identity54 id = verify_identity_54(args.n, args.a, point);
  JsonValue root = JsonValue::object();
  root.set("n", args.n);
  root.set("a", args.a);
  root.set("point", json_vector(point));
  root.set("lhs", id.lhs);
  root.set("rhs", id.rhs);
  root.set("coefficient", identity54_coefficient(args.n, args.a));
  root.set("ratio_minus_one", id.rhs != 0.0 ? JsonValue(id.lhs / id.rhs - 1.0) : JsonValue());
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct ThetaArgs {
  FunctionSpec fn;
  std::string point_text;
  int restarts = 16;
  std::uint64_t seed = 42;
  long brute_resolution = 0;
  std::string out_path;
};

int run_theta(const ThetaArgs& args, std::ostream& out) {
  const Vec point = parse_point(args.point_text);
  ConvexFunction f = resolve_function(args.fn, point.size());
  const EjiriData ej = theta_max(f, point, args.restarts, args.seed);
  JsonValue root = JsonValue::object();
  root.set("function", function_json(f));
  root.set("point", json_vector(point));
  root.set("theta", ej.theta);
  root.set("maximizer", json_vector(ej.maximizer));
  root.set("lambda1", ej.lambda1);
  root.set("spectrum", json_vector(ej.spectrum));
  root.set("restarts", args.restarts);
  root.set("seed", static_cast<std::int64_t>(args.seed));
  if (args.brute_resolution > 0) {
    const double brute = theta_bruteforce(f, point, args.brute_resolution);
    root.set("bruteforce", brute);
    root.set("oracle_gap", std::abs(brute - ej.theta));
  }
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct OdeArgs {
  double eta0 = 0.0;
  double t_end = 1.0;
  double step = 1e-3;
  std::string format = "json";
  std::string out_path;
};

int run_ode(const OdeArgs& args, std::ostream& out) {
  const EtaTrajectory traj = integrate_eta(args.eta0, args.t_end, args.step);
  if (args.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(traj.samples.size());
    for (const EtaSample& s : traj.samples)
      rows.push_back({csv_number(s.t), csv_number(s.eta), csv_number(s.rho), csv_number(s.cbar)});
    std::ostringstream os;
    write_csv(os, {"t", "eta", "rho", "cbar"}, rows);
    emit(os.str(), args.out_path, out);
    return 0;
  }
  const double c0 = traj.samples.front().cbar;
  double drift = 0.0;
  for (const EtaSample& s : traj.samples) drift = std::max(drift, std::abs(s.cbar - c0));
  const EtaSample& last = traj.samples.back();
  JsonValue root = JsonValue::object();
  root.set("eta0", args.eta0);
  root.set("t_end", args.t_end);
  root.set("step", args.step);
  root.set("method", traj.method);
  root.set("samples", static_cast<std::int64_t>(traj.samples.size()));
  JsonValue fin = JsonValue::object();
  fin.set("t", last.t);
  fin.set("eta", last.eta);
  fin.set("rho", last.rho);
  fin.set("cbar", last.cbar);
  root.set("final", std::move(fin));
  root.set("cbar_drift", drift);
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct ParamCheckArgs {
  std::string case_name = "sphere";
  int n = 2;
  std::string params_text;
  std::string out_path;
};

int run_param_check(const ParamCheckArgs& args, std::ostream& out) {
  const Vec params = parse_point(args.params_text);
  if (static_cast<int>(params.size()) != args.n)
    throw InvalidArgument("--dim does not match the number of parameters");
  const ParamCase pc = param_case(warped_case_from_name(args.case_name), args.n);

  const Vec x = immersion_point(pc, params);
  const double gres = graph_residual(pc, params);
  const Mat computed = pullback_metric(pc, params);
  const Mat closed = warped_metric(pc, params);
  const double metric_err = max_abs_diff(computed, closed);

  const std::vector<double> gfd = warped_christoffels_fd(pc, params, 1e-5);
  const std::vector<double> gcl = warped_christoffels_closed(pc, params);
  double christoffel_err = 0.0;
  for (std::size_t i = 0; i < gfd.size(); ++i)
    christoffel_err = std::max(christoffel_err, std::abs(gfd[i] - gcl[i]));

  const Sym3 a = fubini_pick_pullback(pc, params);
  double fp_err = 0.0;
  for (int i = 0; i < args.n; ++i)
    for (int j = i; j < args.n; ++j)
      for (int k = j; k < args.n; ++k) {
        double expected = 0.0;
        if (i == 0 && j == 0 && k == 0)
          expected = 2.0;
        else if (i == 0 && j > 0)
          expected = closed(j, k);
        fp_err = std::max(fp_err, std::abs(a.at(i, j, k) - expected));
      }

  JsonValue root = JsonValue::object();
  root.set("case", warped_case_name(pc.id));
  root.set("equation", pc.equation);
  root.set("n", args.n);
  root.set("params", json_vector(params));
  root.set("target", pc.target.name);
  root.set("immersion_point", json_vector(x));
  root.set("graph_residual", gres);
  root.set("metric_max_abs_err", metric_err);
  root.set("christoffel_max_abs_err", christoffel_err);
  root.set("fubini_pick_max_abs_err", fp_err);
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct LegendreArgs {
  FunctionSpec fn;
  std::string point_text;
  std::string conjugate_name;
  std::string out_path;
};

int run_legendre(const LegendreArgs& args, std::ostream& out) {
  const Vec y = parse_point(args.point_text);
  ConvexFunction f = resolve_function(args.fn, y.size());
  const LegendrePair pair = legendre_point(f, y);
  JsonValue root = JsonValue::object();
  root.set("function", function_json(f));
  root.set("y", json_vector(pair.y));
  root.set("x", json_vector(pair.x));
  root.set("u_value", pair.u_value);
  if (!args.conjugate_name.empty()) {
    const ConvexFunction conj = get(args.conjugate_name, f.dim).f;
    root.set("conjugate", args.conjugate_name);
    root.set("defect", duality_defect(f, conj, y));
  }
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct GeodesicArgs {
  FunctionSpec fn;
  std::string start_text;
  std::string velocity_text;
  double s_end = 1.0;
  double step = 1e-3;
  std::string format = "json";
  std::string out_path;
};

int run_geodesic(const GeodesicArgs& args, std::ostream& out) {
  const Vec start = parse_point(args.start_text);
  const Vec velocity = parse_point(args.velocity_text);
  if (start.size() != velocity.size()) throw InvalidArgument("start and velocity must have the same length");
  ConvexFunction f = resolve_function(args.fn, start.size());
  const GeodesicPath path = geodesic(f, start, velocity, args.s_end, args.step);

  if (args.format == "csv") {
    std::vector<std::string> header{"s"};
    for (int i = 1; i <= f.dim; ++i) header.push_back("x" + std::to_string(i));
    header.push_back("speed");
    std::vector<std::vector<std::string>> rows;
    rows.reserve(path.samples.size());
    for (const GeodesicSample& s : path.samples) {
      std::vector<std::string> row{csv_number(s.s)};
      for (double x : s.position) row.push_back(csv_number(x));
      row.push_back(csv_number(s.speed));
      rows.push_back(std::move(row));
    }
    std::ostringstream os;
    write_csv(os, header, rows);
    emit(os.str(), args.out_path, out);
    return 0;
  }

  const GeodesicSample& last = path.samples.back();
  JsonValue root = JsonValue::object();
  root.set("function", function_json(f));
  root.set("s_end", args.s_end);
  root.set("step", args.step);
  root.set("samples", static_cast<std::int64_t>(path.samples.size()));
  JsonValue fin = JsonValue::object();
  fin.set("s", last.s);
  fin.set("position", json_vector(last.position));
  fin.set("velocity", json_vector(last.velocity));
  fin.set("speed", last.speed);
  root.set("final", std::move(fin));
  root.set("arc_length", path.arc_length);
  root.set("speed_drift", path.speed_drift);
  root.set("left_domain", path.left_domain);
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

struct LengthArgs {
  FunctionSpec fn;
  std::string start_text;
  std::string direction_text;
  double eps = 1e-6;
  double cap = 64.0;
  std::string out_path;
};

int run_length(const LengthArgs& args, std::ostream& out) {
  const Vec start = parse_point(args.start_text);
  const Vec direction = parse_point(args.direction_text);
  if (start.size() != direction.size()) throw InvalidArgument("start and direction must have the same length");
  ConvexFunction f = resolve_function(args.fn, start.size());
  const BoundaryLength bl = length_to_boundary(f, start, direction, args.eps, args.cap);
  JsonValue root = JsonValue::object();
  root.set("function", function_json(f));
  root.set("start", json_vector(start));
  root.set("direction", json_vector(direction));
  root.set("eps", args.eps);
  root.set("cap", args.cap);
  root.set("length", bl.length);
  root.set("truncated", bl.truncated);
  root.set("stop_parameter", bl.stop_parameter);
  // divergence evidence only: no completeness claim is made here
  root.set("note", bl.truncated
                       ? "arc length of the segment stopped where the smallest domain inequality reaches eps"
                       : "ray never reached the boundary within the cap");
  emit(root.dump(2) + "\n", args.out_path, out);
  return 0;
}

int run_catalog(const std::string& action, std::ostream& out) {
  if (action != "list") throw InvalidArgument("unknown catalog action '" + action + "' (expected: list)");
  JsonValue entries = JsonValue::array();
  for (const std::string& name : catalog_names()) {
    const int n = 2;
    const CatalogEntry e = get(name, n);
    JsonValue v = JsonValue::object();
    v.set("name", e.name);
    v.set("equation", e.equation);
    v.set("min_n", name == "quadratic" ? 1 : 2);
    v.set("source_n2", e.f.source);
    JsonValue dom = JsonValue::array();
    for (const Expression& h : e.f.domain.constraints()) dom.push_back(to_string(h) + " > 0");
    v.set("domain_n2", std::move(dom));
    JsonValue expected = JsonValue::object();
    auto put = [&expected](const char* key, const std::optional<ExpectedValue>& ev) {
      if (!ev) return;
      JsonValue item = JsonValue::object();
      item.set("value", ev->value);
      item.set("equation", ev->equation);
      item.set("origin", ev->origin);
      expected.set(key, std::move(item));
    };
    put("theta", e.expected.theta);
    put("tnorm2", e.expected.tnorm2);
    put("pickJ", e.expected.pick_invariant);
    put("sectional", e.expected.sectional);
    put("solving_exponent", e.expected.solving_exponent);
    put("lsharp_at_minus_one", e.expected.lsharp_at_minus_one);
    if (e.expected.solves_no_exponent) expected.set("solves_no_exponent", true);
    v.set("expected_n2", std::move(expected));
    v.set("param_case", e.param_case.empty() ? JsonValue() : JsonValue(e.param_case));
    entries.push_back(std::move(v));
  }
  JsonValue root = JsonValue::object();
  root.set("entries", std::move(entries));
  out << root.dump(2) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite = "paper";
  std::uint64_t seed = 42;
};

int run_verify(const VerifyArgs& args, std::ostream& out) {
  if (args.suite != "paper") throw InvalidArgument("unknown suite '" + args.suite + "' (expected: paper)");
  const int threads = thread_count_from_env();
  const std::vector<CheckResult> results = run_paper_suite(args.seed, threads);

  std::size_t passed = 0;
  bool criterion_pass[kCriterionCount + 1];
  bool criterion_seen[kCriterionCount + 1];
  for (int i = 0; i <= kCriterionCount; ++i) {
    criterion_pass[i] = true;
    criterion_seen[i] = false;
  }
  for (const CheckResult& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-44s measured=%-12.4g bound=%-10.4g %s\n",
                  r.pass ? "PASS" : "FAIL", r.key.c_str(), r.measured, r.bound, r.note.c_str());
    out << line;
    if (r.pass) ++passed;
    criterion_seen[r.criterion] = true;
    criterion_pass[r.criterion] = criterion_pass[r.criterion] && r.pass;
  }
  int crit_passed = 0, crit_total = 0;
  for (int i = 1; i <= kCriterionCount; ++i)
    if (criterion_seen[i]) {
      ++crit_total;
      if (criterion_pass[i]) ++crit_passed;
    }
  out << "criteria " << crit_passed << "/" << crit_total << " passed; checks " << passed << "/"
      << results.size() << " passed (seed " << args.seed << ")\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"calabi: invariant calculus, fourth-order operators and classification checks for "
               "graph hypersurfaces of convex functions"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "full invariant report at a point: metric and det(Hess f), Tchebychev norm (eq-5.5), "
                 "Pick invariant (eq-5.6), scalar curvature both ways (eq-2.10), sectional samples, "
                 "operator residuals (eq-1.1/eq-1.2), theta and spectrum (eq-3.2/eq-3.8)");
  add_function_options(analyze, analyze_args.fn);
  analyze->add_option("--point", analyze_args.point_text, "comma-separated coordinates")->required();
  analyze->add_option("--a", analyze_args.exponents, "exponent(s) for the operator residuals");
  analyze->add_option("--restarts", analyze_args.restarts, "ascent restarts for theta (default 16)");
  analyze->add_option("--seed", analyze_args.seed, "random seed (default 42)");
  analyze->add_option("--out", analyze_args.out_path, "write output to file instead of stdout");

  ResidualArgs residual_args;
  CLI::App* residual = app.add_subcommand(
      "residual", "fourth-order operator residuals at a point: sum f^{ij} w_ij (eq-1.2) and "
                  "sum F^{ij} w_ij (eq-1.1) with w = det(Hess f)^a");
  add_function_options(residual, residual_args.fn);
  residual->add_option("--point", residual_args.point_text)->required();
  residual->add_option("--a", residual_args.a, "nonzero exponent a")->required();
  residual->add_option("--out", residual_args.out_path);

  Identity54Args id54_args;
  CLI::App* id54 = app.add_subcommand(
      "identity54", "check the closed-form identity sum f^{ij} (D^a)_ij = 4(n+1)[(n+1)a^2+na] D^a "
                    "(eq-5.4) for the eq-1.4 family");
  id54->add_option("--dim", id54_args.n, "dimension n")->required();
  id54->add_option("--a", id54_args.a, "nonzero exponent a")->required();
  id54->add_option("--point", id54_args.point_text)->required();
  id54->add_option("--out", id54_args.out_path);

  ThetaArgs theta_args;
  CLI::App* theta = app.add_subcommand(
      "theta", "maximize the cubic form over the metric unit sphere (eq-3.2) and report the "
               "spectral split at the Tchebychev direction (eq-3.1/eq-3.8)");
  add_function_options(theta, theta_args.fn);
  theta->add_option("--point", theta_args.point_text)->required();
  theta->add_option("--restarts", theta_args.restarts, "ascent restarts (default 16)");
  theta->add_option("--seed", theta_args.seed, "random seed (default 42)");
  theta->add_option("--brute", theta_args.brute_resolution,
                    "also run the exhaustive grid oracle at this resolution (n <= 3)");
  theta->add_option("--out", theta_args.out_path);

  OdeArgs ode_args;
  CLI::App* ode = app.add_subcommand(
      "ode", "integrate the frame flow eta' + eta^2 - 1 = 0 (eq-3.13) with rho' = eta rho and "
             "record the conserved cbar = rho^2(eta^2-1) (lemma-3.4)");
  ode->add_option("--eta0", ode_args.eta0, "initial eta")->required();
  ode->add_option("--t-end", ode_args.t_end, "integration horizon (default 1)");
  ode->add_option("--step", ode_args.step, "RK4 step in (0, 0.01] (default 1e-3)");
  ode->add_option("--format", ode_args.format, "json|csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  ode->add_option("--out", ode_args.out_path);

  ParamCheckArgs pc_args;
  CLI::App* pcheck = app.add_subcommand(
      "param-check", "validate one classification parametrization (eq-4.30/4.39/4.45/4.57) against "
                     "its target graph, warped metric (eq-4.5/4.31/4.46), connection "
                     "(eq-4.6/4.32/4.47) and cubic form (eq-4.7/4.33/4.48)");
  pcheck->add_option("--case", pc_args.case_name, "sphere|flat_minus|flat_plus|hyperbolic")->required();
  pcheck->add_option("--dim", pc_args.n, "dimension n >= 2")->required();
  pcheck->add_option("--params", pc_args.params_text, "comma-separated (t,u2..un)")->required();
  pcheck->add_option("--out", pc_args.out_path);

  LegendreArgs legendre_args;
  CLI::App* legendre = app.add_subcommand(
      "legendre", "pointwise gradient image and conjugate value (eq-5.8); with --conjugate, the "
                  "duality defect against a catalog entry (eq-5.9)");
  add_function_options(legendre, legendre_args.fn);
  legendre->add_option("--point", legendre_args.point_text)->required();
  legendre->add_option("--conjugate", legendre_args.conjugate_name, "catalog name of the claimed conjugate");
  legendre->add_option("--out", legendre_args.out_path);

  GeodesicArgs geo_args;
  CLI::App* geo = app.add_subcommand(
      "geodesic", "integrate the geodesic flow of the Hessian metric (Christoffels 1/2 f^{kl} f_ijl, "
                  "eq-2.3 metric) with RK4; conserves the G-speed");
  add_function_options(geo, geo_args.fn);
  geo->add_option("--start", geo_args.start_text)->required();
  geo->add_option("--velocity", geo_args.velocity_text)->required();
  geo->add_option("--s-end", geo_args.s_end, "parameter horizon (default 1)");
  geo->add_option("--step", geo_args.step, "RK4 step in (0, 0.01] (default 1e-3)");
  geo->add_option("--format", geo_args.format, "json|csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  geo->add_option("--out", geo_args.out_path);

  LengthArgs length_args;
  CLI::App* length = app.add_subcommand(
      "length", "Calabi arc length along a straight ray, stopped at distance eps from the boundary "
                "(divergence evidence for completeness of the eq-2.3 metric; no claim is asserted)");
  add_function_options(length, length_args.fn);
  length->add_option("--start", length_args.start_text)->required();
  length->add_option("--direction", length_args.direction_text)->required();
  length->add_option("--eps", length_args.eps, "boundary stopping level (default 1e-6)");
  length->add_option("--cap", length_args.cap, "Euclidean span cap when the ray never truncates (default 64)");
  length->add_option("--out", length_args.out_path);

  std::string catalog_action = "list";
  CLI::App* catalog_cmd = app.add_subcommand(
      "catalog", "list the built-in functions (eq-1.4, eq-1.5, eq-4.1, eq-4.4, eq-5.9, quadratic) "
                 "with domains and expected constants");
  catalog_cmd->add_option("action", catalog_action, "list (default)");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the full verification suite (eq-5.2..5.6 identities, thm-4.1 constants, "
                "classification parametrizations, duality, flow and completeness probes); prints a "
                "pass/fail table keyed by equation labels");
  verify_cmd->add_option("--suite", verify_args.suite, "suite name (paper)");
  verify_cmd->add_option("--seed", verify_args.seed, "random seed (default 42)");

  std::vector<std::string> argv_copy = args;
  try {
    std::reverse(argv_copy.begin(), argv_copy.end());
    app.parse(argv_copy);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_args, out);
    if (*residual) return run_residual(residual_args, out);
    if (*id54) return run_identity54(id54_args, out);
    if (*theta) return run_theta(theta_args, out);
    if (*ode) return run_ode(ode_args, out);
    if (*pcheck) return run_param_check(pc_args, out);
    if (*legendre) return run_legendre(legendre_args, out);
    if (*geo) return run_geodesic(geo_args, out);
    if (*length) return run_length(length_args, out);
    if (*catalog_cmd) return run_catalog(catalog_action, out);
    if (*verify_cmd) return run_verify(verify_args, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroExponent& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadDimension& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no subcommand selected\n";
  return 2;
}

}  // namespace calabi::cli
