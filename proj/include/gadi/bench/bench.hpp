#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gadi/mateq/riccati.hpp"
#include "gadi/problems/generators.hpp"
#include "gadi/splitting/splitting.hpp"

namespace gadi {

/// Benchmarked algorithms. PMHSS appears twice because the tables do not say
/// which preconditioner they used.
enum class Algorithm { gadi, gadi_real, hss, mhss, pmhss_w, pmhss_i, cri, tscsp, newton_gadi };

std::string_view algorithm_name(Algorithm a);
/// Case-insensitive; also accepts "pmhss" for PMHSS with V = W.
std::optional<Algorithm> parse_algorithm(std::string_view name);
/// The splitting behind a stationary algorithm; ConfigError for Newton-GADI.
Method stationary_method(Algorithm a);
/// Whether omega affects the algorithm.
bool uses_omega(Algorithm a);

enum class PolicyKind { auto_alpha, fixed, sweep };

struct ParameterPolicy {
  PolicyKind kind = PolicyKind::auto_alpha;
  /// fixed: the alpha to use.
  double alpha = 1.0;
  /// auto and fixed: omega for algorithms that use it.
  double omega = 0.01;
  /// sweep: alpha values; multipliers of the reference alpha when alpha_relative.
  /// Empty means reference * 2^(k/4), k = -12..12.
  std::vector<double> alpha_grid;
  bool alpha_relative = false;
  /// sweep: omega values (single cell for algorithms without omega).
  std::vector<double> omega_grid{0.01};
};

struct RunConfig {
  std::vector<ProblemSpec> problems;
  std::vector<Algorithm> algorithms;
  ParameterPolicy policy;
  double tol = 1e-5;
  int max_outer = 1000;
  InnerMode inner = InnerMode::exact;
  /// Initializer for Newton-GADI runs.
  NewtonStart newton_start = NewtonStart::mirrored_shifted_lyapunov;
  /// Recorded for reproducibility of randomized suites; the generators are deterministic.
  std::uint64_t seed = 0;

  /// Throws ConfigError for empty lists, bad tolerances, or an algorithm that
  /// cannot run on a listed problem family.
  void validate() const;
};

struct BenchmarkRow {
  std::string algorithm;
  Index n = 0;
  std::string problem;
  double alpha = 0.0;
  /// Absent for algorithms without omega.
  std::optional<double> omega;
  double res = 0.0;
  /// Outer sweeps; cumulative inner sweeps for Newton-GADI.
  long it = 0;
  double cpu = 0.0;
  bool converged = false;

  bool operator==(const BenchmarkRow&) const = default;
};

/// Residual history of one run, labelled "algorithm problem".
struct ConvergenceSeries {
  std::string label;
  std::vector<ResidualSample> samples;
};

/// Reference alpha for `a` on `problem`: alpha~ of W (of the lifted W for
/// matrix equations) for GADI, GADI-real, HSS, MHSS, PMHSS(V=I) and
/// Newton-GADI; 1 for PMHSS(V=W), CRI and TSCSP.
double reference_alpha(const GeneratedProblem& problem, Algorithm a);

struct CellResult {
  BenchmarkRow row;
  ConvergenceSeries series;
};

/// One solve. Solver failures become non-converged rows.
CellResult run_cell(const ProblemSpec& spec, const GeneratedProblem& problem, Algorithm a,
                    double alpha, std::optional<double> omega, const RunConfig& cfg);

/// One row per (problem, algorithm, parameter point), problem-major in
/// configured order. Histories are appended to `series` when given.
std::vector<BenchmarkRow> run_grid(const RunConfig& cfg,
                                   std::vector<ConvergenceSeries>* series = nullptr);

struct SweepCell {
  double alpha = 0.0;
  std::optional<double> omega;
  long it = 0;
  double res = 0.0;
  double cpu = 0.0;
  bool converged = false;
};

struct SweepTable {
  std::vector<SweepCell> cells;
  SweepCell best;
};

/// Full factorial alpha x omega grid for one problem and algorithm. The best
/// cell is converged if any is, then has the fewest IT, then the smallest RES,
/// then the smallest alpha.
SweepTable sweep_params(const ProblemSpec& spec, Algorithm a, const std::vector<double>& alpha_grid,
                        const std::vector<double>& omega_grid, const RunConfig& cfg);

/// Same ranking as sweep_params, applied per (problem, algorithm) group.
std::vector<BenchmarkRow> best_rows(const std::vector<BenchmarkRow>& rows);

/// Default sweep grid: reference * 2^(k/4) for k = -12..12.
std::vector<double> default_alpha_grid(double reference);

}  // namespace gadi
