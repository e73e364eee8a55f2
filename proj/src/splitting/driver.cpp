#include <chrono>
#include <cmath>

#include "gadi/splitting/splitting.hpp"

namespace gadi {

SolveResult run_splitting(const TwoStageSplitting& splitting, const ComplexVector& b,
                          const SolveConfig& cfg) {
  if (!(cfg.outer_tol > 0.0)) throw ContractError("outer tolerance must be positive");
  if (cfg.max_outer < 0) throw ContractError("max_outer must be non-negative");
  const auto start = std::chrono::steady_clock::now();

  const StationaryIteration iteration(splitting, b, cfg.inner);
  ComplexVector x = cfg.initial_guess ? *cfg.initial_guess : ComplexVector::Zero(b.size());
  if (x.size() != b.size()) throw DimensionError("initial guess length mismatch");

  SolveResult out;
  SolveReport& rep = out.report;
  double res = iteration.residual(x);
  rep.residual_history.push_back({0, res});

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  while (res > cfg.outer_tol && rep.iterations < cfg.max_outer && std::isfinite(res)) {
    StepStats stats;
    try {
      x = iteration.step(x, res, &stats);
    } catch (const HalfStepError& e) {
      rep.final_res = res;
      rep.wall_time = elapsed();
      throw SolveError(std::string("sweep ") + std::to_string(rep.iterations + 1) + ": " + e.what(),
                       rep, e.half_step());
    }
    ++rep.iterations;
    rep.inner_iteration_total += stats.first_inner_iterations + stats.second_inner_iterations;
    res = iteration.residual(x);
    rep.residual_history.push_back({rep.iterations, res});
  }

  rep.converged = res <= cfg.outer_tol;
  rep.final_res = res;
  rep.wall_time = elapsed();
  out.x = std::move(x);
  return out;
}

SolveResult run_stationary(const ComplexSymSystem& sys, const SplitParams& p,
                           const SolveConfig& cfg) {
  return run_splitting(make_splitting(sys, p), sys.b(), cfg);
}

}  // namespace gadi
