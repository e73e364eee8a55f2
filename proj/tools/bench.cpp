// bench: command-line harness for the splitting solvers.
//
//   bench run --preset table1 --out results.csv
//   bench solve --family ex241 --m 8 --tau h --method gadi --alpha auto --omega 0.01
//   bench sweep --family ex31 --n 16 --t 0.01 --alpha-grid 0.5:5:0.1 --omega-grid 0,0.01
//   bench export --family ex242 --m 8 --dir out/
//
// Every flag can also come from an INI file given with --config; flags on the
// command line win. Exit status is 0 only when every requested run converged.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "gadi/bench/csv.hpp"
#include "gadi/bench/presets.hpp"
#include "gadi/linalg/dense.hpp"
#include "gadi/linalg/io.hpp"
#include "gadi/spectral/spectral.hpp"

namespace {

using namespace gadi;

struct ProblemFlags {
  std::string family = "ex241";
  Index size = 8;
  std::string tau = "h";
  double sigma1 = 100.0;
  double sigma2 = 100.0;
  double t = 0.01;

  void add_to(CLI::App& app) {
    app.add_option("--family", family, "ex241, ex242, ex31 or ex421")->capture_default_str();
    app.add_option("--m,--n", size, "grid size m (ex241, ex242) or matrix order n (ex31, ex421)")
        ->capture_default_str();
    app.add_option("--tau", tau, "time step for ex241: h or 500h")->capture_default_str();
    app.add_option("--sigma1", sigma1, "ex242 shift")->capture_default_str();
    app.add_option("--sigma2", sigma2, "ex242 imaginary shift")->capture_default_str();
    app.add_option("--t", t, "ex31 control parameter")->capture_default_str();
  }

  ProblemSpec spec() const {
    ProblemSpec s;
    const auto f = parse_family(family);
    if (!f) throw ConfigError("unknown family '" + family + "'");
    const auto tm = parse_tau(tau);
    if (!tm) throw ConfigError("unknown tau mode '" + tau + "'");
    s.family = *f;
    s.size = size;
    s.tau = *tm;
    s.sigma1 = sigma1;
    s.sigma2 = sigma2;
    s.t = t;
    s.validate();
    return s;
  }
};

struct SolverFlags {
  double tol = 1e-5;
  int max_outer = 1000;
  std::string inner = "exact";
  std::string newton_start = "mirrored";

  void add_to(CLI::App& app) {
    app.add_option("--tol", tol, "outer tolerance on RES")->capture_default_str();
    app.add_option("--max-outer", max_outer, "outer iteration cap")->capture_default_str();
    app.add_option("--inner", inner, "half-step solves: exact, iterative or auto")
        ->capture_default_str();
    app.add_option("--newton-start", newton_start,
                   "Newton-GADI initializer: mirrored (B*X+XB=-2Q) or shifted (B*X+XB=2Q)")
        ->capture_default_str();
  }

  void apply(RunConfig& cfg) const {
    cfg.tol = tol;
    cfg.max_outer = max_outer;
    if (inner == "exact") {
      cfg.inner = InnerMode::exact;
    } else if (inner == "iterative") {
      cfg.inner = InnerMode::iterative;
    } else if (inner == "auto") {
      cfg.inner = InnerMode::automatic;
    } else {
      throw ConfigError("unknown inner mode '" + inner + "'");
    }
    if (newton_start == "mirrored") {
      cfg.newton_start = NewtonStart::mirrored_shifted_lyapunov;
    } else if (newton_start == "shifted") {
      cfg.newton_start = NewtonStart::shifted_lyapunov;
    } else {
      throw ConfigError("unknown Newton start '" + newton_start + "'");
    }
  }
};

Algorithm algorithm_from(const std::string& name) {
  const auto a = parse_algorithm(name);
  if (!a) throw ConfigError("unknown method '" + name + "'");
  return *a;
}

// "a:b:step" (inclusive range) or "x,y,z".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::istringstream ss(s);
    ss.imbue(std::locale::classic());
    double v = 0.0;
    ss >> v;
    std::string rest;
    if (!ss || (ss >> rest)) throw ConfigError("bad grid value '" + s + "' in '" + text + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("range grid must be start:stop:step");
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError("range grid needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long k = 0; k <= count; ++k) out.push_back(a + static_cast<double>(k) * step);
  } else {
    std::istringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ',')) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("empty grid '" + text + "'");
  return out;
}

bool all_converged(const std::vector<BenchmarkRow>& rows) {
  for (const auto& r : rows) {
    if (!r.converged) return false;
  }
  return true;
}

void print_rows(const std::vector<BenchmarkRow>& rows, const std::string& out) {
  if (out.empty() || out == "-") {
    write_csv(std::cout, rows);
  } else {
    write_csv(std::filesystem::path(out), rows);
  }
}

int cmd_run(const std::string& preset_name, const ProblemFlags& pf, const SolverFlags& sf,
            const std::vector<std::string>& methods, const std::string& out,
            const std::string& series_out, bool best_only) {
  PresetOutput result;
  if (!preset_name.empty()) {
    result = run_preset(make_preset(preset_name));
  } else {
    RunConfig cfg;
    cfg.problems = {pf.spec()};
    for (const auto& m : methods) cfg.algorithms.push_back(algorithm_from(m));
    sf.apply(cfg);
    result.rows = run_grid(cfg, series_out.empty() ? nullptr : &result.series);
  }
  const auto rows = best_only ? best_rows(result.rows) : result.rows;
  print_rows(rows, out);
  if (!series_out.empty()) write_series_table(series_out, result.series);
  return all_converged(rows) ? 0 : 1;
}

int cmd_solve(const ProblemFlags& pf, const SolverFlags& sf, const std::string& method,
              const std::string& alpha_text, double omega, const std::string& out,
              const std::string& series_out, const std::string& w_file, const std::string& t_file,
              const std::string& b_file, const std::string& x_out) {
  RunConfig cfg;
  sf.apply(cfg);
  const Algorithm a = algorithm_from(method);

  ProblemSpec spec;
  GeneratedProblem problem = [&]() -> GeneratedProblem {
    if (!w_file.empty()) {
      if (t_file.empty() || b_file.empty()) throw ConfigError("--W needs --T and --b");
      ComplexSymSystem sys(load_real_symmetric(w_file), load_real_symmetric(t_file),
                           load_vector(b_file));
      spec.family = Family::ex241;
      spec.size = 0;
      return sys;
    }
    spec = pf.spec();
    return generate(spec);
  }();
  cfg.problems = {spec};
  cfg.algorithms = {a};
  if (w_file.empty()) cfg.validate();

  const double alpha =
      alpha_text == "auto" ? reference_alpha(problem, a) : std::stod(alpha_text);
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  CellResult cell = run_cell(spec, problem, a, alpha, omega, cfg);
  if (!w_file.empty()) {
    cell.row.problem = "file " + std::filesystem::path(w_file).filename().string();
    cell.row.n = std::get<ComplexSymSystem>(problem).n();
  }
  print_rows({cell.row}, out);
  if (!series_out.empty()) write_convergence_series(series_out, cell.series.samples);
  if (!x_out.empty()) {
    const auto* sys = std::get_if<ComplexSymSystem>(&problem);
    if (!sys || a == Algorithm::newton_gadi) throw ConfigError("--x-out needs a linear system");
    SplitParams p;
    p.alpha = alpha;
    p.omega = omega;
    p.method = stationary_method(a);
    if (a == Algorithm::pmhss_w) p.V = sys->W();
    SolveConfig sc;
    sc.outer_tol = cfg.tol;
    sc.max_outer = cfg.max_outer;
    sc.inner.mode = cfg.inner;
    save_vector(x_out, run_stationary(*sys, p, sc).x);
  }
  return cell.row.converged ? 0 : 1;
}

int cmd_sweep(const ProblemFlags& pf, const SolverFlags& sf, const std::string& method,
              const std::string& alpha_grid, const std::string& omega_grid,
              const std::string& out) {
  RunConfig cfg;
  sf.apply(cfg);
  const ProblemSpec spec = pf.spec();
  const Algorithm a = algorithm_from(method);
  cfg.problems = {spec};
  cfg.algorithms = {a};
  cfg.validate();

  std::vector<double> alphas;
  if (alpha_grid.empty() || alpha_grid == "auto") {
    alphas = default_alpha_grid(reference_alpha(generate(spec), a));
  } else {
    alphas = parse_grid(alpha_grid);
  }
  const SweepTable table = sweep_params(spec, a, alphas, parse_grid(omega_grid), cfg);

  std::vector<BenchmarkRow> rows;
  const Index n = (spec.family == Family::ex241 || spec.family == Family::ex242)
                      ? spec.size * spec.size
                      : spec.size;
  for (const auto& c : table.cells) {
    rows.push_back({std::string(algorithm_name(a)), n, spec.label(), c.alpha, c.omega, c.res, c.it,
                    c.cpu, c.converged});
  }
  print_rows(rows, out);
  std::fprintf(stderr, "best: alpha=%.6g omega=%s IT=%ld RES=%.4e%s\n", table.best.alpha,
               table.best.omega ? std::to_string(*table.best.omega).c_str() : "NA", table.best.it,
               table.best.res, table.best.converged ? "" : " (not converged)");
  return table.best.converged ? 0 : 1;
}

int cmd_export(const ProblemFlags& pf, const std::string& dir) {
  const ProblemSpec spec = pf.spec();
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  const GeneratedProblem problem = generate(spec);
  if (const auto* sys = std::get_if<ComplexSymSystem>(&problem)) {
    save_coordinate(root / "W.txt", sys->W().matrix());
    save_coordinate(root / "T.txt", sys->T().matrix());
    save_vector(root / "b.txt", sys->b());
  } else if (const auto* lyap = std::get_if<LyapunovProblem>(&problem)) {
    save_coordinate(root / "W.txt", lyap->W.matrix());
    save_coordinate(root / "T.txt", lyap->T.matrix());
    save_coordinate(root / "Q.txt", SparseComplex::from_dense(lyap->Q));
  } else {
    const auto& ric = std::get<RiccatiProblem>(problem);
    save_coordinate(root / "W.txt", ric.W.matrix());
    save_coordinate(root / "T.txt", ric.T.matrix());
    save_coordinate(root / "G.txt", SparseComplex::from_dense(ric.G));
    save_coordinate(root / "Q.txt", SparseComplex::from_dense(ric.Q));
  }
  std::cerr << "wrote " << spec.label() << " to " << root.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for GADI and related splitting iterations"};
  app.set_config("--config", "", "INI file with default flag values");
  app.require_subcommand(1);

  ProblemFlags pf;
  SolverFlags sf;

  auto* run = app.add_subcommand("run", "run a preset or a problem across methods, write CSV");
  std::string preset, out, series_out;
  std::vector<std::string> methods{"gadi"};
  bool best_only = false;
  run->add_option("--preset", preset, "table1..table5 or fig1..fig7");
  run->add_option("--methods", methods, "methods when no preset is given")->delimiter(',');
  run->add_option("--out", out, "CSV path (stdout when omitted)");
  run->add_option("--series", series_out, "residual histories in long format");
  run->add_flag("--best-only", best_only, "keep the best row per problem and method");
  pf.add_to(*run);
  sf.add_to(*run);

  auto* list = app.add_subcommand("presets", "list preset names");

  auto* solve = app.add_subcommand("solve", "solve one problem and print its row");
  std::string method = "gadi", alpha_text = "auto", w_file, t_file, b_file, x_out;
  double omega = 0.01;
  solve->add_option("--method", method)->capture_default_str();
  solve->add_option("--alpha", alpha_text, "a value or 'auto'")->capture_default_str();
  solve->add_option("--omega", omega)->capture_default_str();
  solve->add_option("--out", out, "CSV path (stdout when omitted)");
  solve->add_option("--series", series_out, "write the iteration,RES history here");
  solve->add_option("--W", w_file, "coordinate file for W (with --T and --b)");
  solve->add_option("--T", t_file, "coordinate file for T");
  solve->add_option("--b", b_file, "vector file for b");
  solve->add_option("--x-out", x_out, "write the solution vector here");
  pf.add_to(*solve);
  sf.add_to(*solve);

  auto* sweep = app.add_subcommand("sweep", "grid search over alpha and omega");
  std::string alpha_grid = "auto", omega_grid = "0.01";
  sweep->add_option("--method", method)->capture_default_str();
  sweep->add_option("--alpha-grid", alpha_grid, "start:stop:step, a list, or 'auto'")
      ->capture_default_str();
  sweep->add_option("--omega-grid", omega_grid, "comma-separated list or start:stop:step")
      ->capture_default_str();
  sweep->add_option("--out", out, "CSV path (stdout when omitted)");
  pf.add_to(*sweep);
  sf.add_to(*sweep);

  auto* exp = app.add_subcommand("export", "write a generated instance in coordinate format");
  std::string dir = ".";
  exp->add_option("--dir", dir)->capture_default_str();
  pf.add_to(*exp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(preset, pf, sf, methods, out, series_out, best_only);
    if (*list) {
      for (const auto& name : preset_names()) {
        std::cout << name << "  " << make_preset(name).description << '\n';
      }
      return 0;
    }
    if (*solve) {
      return cmd_solve(pf, sf, method, alpha_text, omega, out, series_out, w_file, t_file, b_file,
                       x_out);
    }
    if (*sweep) return cmd_sweep(pf, sf, method, alpha_grid, omega_grid, out);
    if (*exp) return cmd_export(pf, dir);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
