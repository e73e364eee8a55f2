#include "gadi/bench/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "gadi/mateq/lyapunov.hpp"
#include "gadi/mateq/riccati.hpp"
#include "gadi/spectral/spectral.hpp"

namespace gadi {

namespace {

constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::gadi,    Algorithm::gadi_real, Algorithm::hss, Algorithm::mhss,       Algorithm::pmhss_w,
    Algorithm::pmhss_i, Algorithm::cri,       Algorithm::tscsp, Algorithm::newton_gadi};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Method stationary_method(Algorithm a) {
  switch (a) {
    case Algorithm::gadi: return Method::gadi;
    case Algorithm::gadi_real: return Method::gadi_real;
    case Algorithm::hss: return Method::hss;
    case Algorithm::mhss: return Method::mhss;
    case Algorithm::pmhss_w:
    case Algorithm::pmhss_i: return Method::pmhss;
    case Algorithm::cri: return Method::cri;
    case Algorithm::tscsp: return Method::tscsp;
    case Algorithm::newton_gadi: break;
  }
  throw ConfigError("Newton-GADI is not a stationary splitting");
}

namespace {

InnerSolveSettings inner_settings(InnerMode mode) {
  InnerSolveSettings s;
  s.mode = mode;
  return s;
}

ComplexSymSystem lifted_system(const LyapunovProblem& p) {
  const LyapunovLift lift = lift_lyapunov(p);
  return ComplexSymSystem(lift.W_tilde, lift.T_tilde, lift.q);
}

// Ranking shared by sweep_params and best_rows: converged first, then fewer
// iterations, smaller RES, smaller alpha. NaN RES sorts last.
template <typename Cell>
bool ranks_before(const Cell& a, long a_it, double a_res, const Cell& b, long b_it, double b_res,
                  double a_alpha, double b_alpha) {
  if (a.converged != b.converged) return a.converged;
  if (a_it != b_it) return a_it < b_it;
  const double ra = std::isnan(a_res) ? std::numeric_limits<double>::infinity() : a_res;
  const double rb = std::isnan(b_res) ? std::numeric_limits<double>::infinity() : b_res;
  if (ra != rb) return ra < rb;
  return a_alpha < b_alpha;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::gadi: return "GADI";
    case Algorithm::gadi_real: return "GADI-real";
    case Algorithm::hss: return "HSS";
    case Algorithm::mhss: return "MHSS";
    case Algorithm::pmhss_w: return "PMHSS(V=W)";
    case Algorithm::pmhss_i: return "PMHSS(V=I)";
    case Algorithm::cri: return "CRI";
    case Algorithm::tscsp: return "TSCSP";
    case Algorithm::newton_gadi: return "Newton-GADI";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  std::string key = lower(name);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "pmhss" || key == "pmhss-w") return Algorithm::pmhss_w;
  if (key == "pmhss-i") return Algorithm::pmhss_i;
  if (key == "newton" || key == "newton-gadi") return Algorithm::newton_gadi;
  for (Algorithm a : kAllAlgorithms) {
    if (key == lower(algorithm_name(a))) return a;
  }
  return std::nullopt;
}

bool uses_omega(Algorithm a) {
  return a == Algorithm::gadi || a == Algorithm::gadi_real || a == Algorithm::newton_gadi;
}

void RunConfig::validate() const {
  if (problems.empty()) throw ConfigError("no problems configured");
  if (algorithms.empty()) throw ConfigError("no algorithms configured");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_outer < 1) throw ConfigError("max_outer must be at least 1");
  auto check_omega = [](double w) {
    if (!(w >= 0.0 && w < 2.0)) throw ConfigError("omega must lie in [0, 2)");
  };
  switch (policy.kind) {
    case PolicyKind::fixed:
      if (!(policy.alpha > 0.0)) throw ConfigError("fixed alpha must be positive");
      check_omega(policy.omega);
      break;
    case PolicyKind::auto_alpha:
      check_omega(policy.omega);
      break;
    case PolicyKind::sweep:
      for (double a : policy.alpha_grid) {
        if (!(a > 0.0)) throw ConfigError("alpha grid values must be positive");
      }
      if (policy.omega_grid.empty()) throw ConfigError("omega grid is empty");
      for (double w : policy.omega_grid) check_omega(w);
      break;
  }
  for (const auto& spec : problems) {
    spec.validate();
    for (Algorithm a : algorithms) {
      const bool riccati = spec.family == Family::ex421;
      if (riccati != (a == Algorithm::newton_gadi)) {
        throw ConfigError(std::string(algorithm_name(a)) + " cannot run on " + spec.label());
      }
    }
  }
}

double reference_alpha(const GeneratedProblem& problem, Algorithm a) {
  if (a == Algorithm::pmhss_w || a == Algorithm::cri || a == Algorithm::tscsp) return 1.0;
  return std::visit(
      [](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ComplexSymSystem>) {
          return optimal_alpha(eig_extremes_spd(p.W()));
        } else if constexpr (std::is_same_v<P, LyapunovProblem>) {
          return lyapunov_optimal_alpha(p);
        } else {
          return lyapunov_optimal_alpha({p.W, p.T, p.Q});
        }
      },
      problem);
}

std::vector<double> default_alpha_grid(double reference) {
  std::vector<double> out;
  for (int k = -12; k <= 12; ++k) out.push_back(reference * std::exp2(k / 4.0));
  return out;
}

CellResult run_cell(const ProblemSpec& spec, const GeneratedProblem& problem, Algorithm a,
                    double alpha, std::optional<double> omega, const RunConfig& cfg) {
  CellResult out;
  BenchmarkRow& row = out.row;
  row.algorithm = std::string(algorithm_name(a));
  row.problem = spec.label();
  row.n = (spec.family == Family::ex241 || spec.family == Family::ex242) ? spec.size * spec.size
                                                                         : spec.size;
  row.alpha = alpha;
  row.omega = uses_omega(a) ? omega : std::nullopt;
  out.series.label = row.algorithm + " " + row.problem;

  const auto start = std::chrono::steady_clock::now();
  auto run_system = [&](const ComplexSymSystem& sys) {
    SplitParams p;
    p.method = stationary_method(a);
    p.alpha = alpha;
    p.omega = omega.value_or(0.0);
    if (a == Algorithm::pmhss_w) p.V = sys.W();
    SolveConfig sc;
    sc.outer_tol = cfg.tol;
    sc.max_outer = cfg.max_outer;
    sc.inner = inner_settings(cfg.inner);
    try {
      const SolveResult r = run_stationary(sys, p, sc);
      row.res = r.report.final_res;
      row.it = r.report.iterations;
      row.converged = r.report.converged;
      out.series.samples = r.report.residual_history;
    } catch (const SolveError& e) {
      row.res = e.partial_report().final_res;
      row.it = e.partial_report().iterations;
      out.series.samples = e.partial_report().residual_history;
    }
  };

  try {
    if (const auto* sys = std::get_if<ComplexSymSystem>(&problem)) {
      run_system(*sys);
    } else if (const auto* lyap = std::get_if<LyapunovProblem>(&problem)) {
      run_system(lifted_system(*lyap));
    } else {
      NewtonConfig nc;
      nc.outer_tol = cfg.tol;
      nc.alpha = alpha;
      nc.omega = omega.value_or(0.01);
      nc.inner = inner_settings(cfg.inner);
      nc.start = cfg.newton_start;
      const NewtonResult r = newton_gadi_riccati(std::get<RiccatiProblem>(problem), nc);
      row.res = r.residual_history.back();
      row.it = r.cumulative_inner_iterations;
      row.converged = r.converged;
      for (std::size_t k = 0; k < r.residual_history.size(); ++k) {
        out.series.samples.push_back({static_cast<int>(k), r.residual_history[k]});
      }
    }
  } catch (const Error&) {
    row.res = std::numeric_limits<double>::quiet_NaN();
    row.converged = false;
  }
  row.cpu = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SweepTable sweep_params(const ProblemSpec& spec, Algorithm a, const std::vector<double>& alpha_grid,
                        const std::vector<double>& omega_grid, const RunConfig& cfg) {
  if (alpha_grid.empty() || omega_grid.empty()) throw ConfigError("sweep grids must be nonempty");
  const GeneratedProblem problem = generate(spec);
  SweepTable out;
  const std::vector<double> single{omega_grid.front()};
  const auto& omegas = uses_omega(a) ? omega_grid : single;
  for (double alpha : alpha_grid) {
    for (double omega : omegas) {
      const CellResult c = run_cell(spec, problem, a, alpha, omega, cfg);
      out.cells.push_back({alpha, c.row.omega, c.row.it, c.row.res, c.row.cpu, c.row.converged});
    }
  }
  out.best = out.cells.front();
  for (const auto& c : out.cells) {
    if (ranks_before(c, c.it, c.res, out.best, out.best.it, out.best.res, c.alpha, out.best.alpha)) {
      out.best = c;
    }
  }
  return out;
}

std::vector<BenchmarkRow> run_grid(const RunConfig& cfg, std::vector<ConvergenceSeries>* series) {
  cfg.validate();
  std::vector<BenchmarkRow> rows;
  for (const auto& spec : cfg.problems) {
    const GeneratedProblem problem = generate(spec);
    for (Algorithm a : cfg.algorithms) {
      std::vector<std::pair<double, std::optional<double>>> points;
      const ParameterPolicy& pol = cfg.policy;
      switch (pol.kind) {
        case PolicyKind::fixed:
          points.push_back({pol.alpha, pol.omega});
          break;
        case PolicyKind::auto_alpha:
          points.push_back({reference_alpha(problem, a), pol.omega});
          break;
        case PolicyKind::sweep: {
          std::vector<double> alphas;
          if (pol.alpha_grid.empty()) {
            alphas = default_alpha_grid(reference_alpha(problem, a));
          } else if (pol.alpha_relative) {
            const double ref = reference_alpha(problem, a);
            for (double f : pol.alpha_grid) alphas.push_back(ref * f);
          } else {
            alphas = pol.alpha_grid;
          }
          for (double alpha : alphas) {
            if (uses_omega(a)) {
              for (double w : pol.omega_grid) points.push_back({alpha, w});
            } else {
              points.push_back({alpha, std::nullopt});
            }
          }
          break;
        }
      }
      for (const auto& [alpha, omega] : points) {
        CellResult c = run_cell(spec, problem, a, alpha, omega, cfg);
        rows.push_back(std::move(c.row));
        if (series) series->push_back(std::move(c.series));
      }
    }
  }
  return rows;
}

std::vector<BenchmarkRow> best_rows(const std::vector<BenchmarkRow>& rows) {
  std::vector<BenchmarkRow> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.problem, r.algorithm);
    const auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      out.push_back(r);
      continue;
    }
    BenchmarkRow& best = out[it->second];
    if (ranks_before(r, r.it, r.res, best, best.it, best.res, r.alpha, best.alpha)) best = r;
  }
  return out;
}

}  // namespace gadi
