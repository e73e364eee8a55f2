#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gadi/errors.hpp"
#include "gadi/linalg/sparse.hpp"
#include "gadi/linalg/subsystem.hpp"

namespace gadi {

/// The complex symmetric system (W + iT) x = b with real symmetric W, T.
/// Construction checks shapes only; definiteness is checked by check_system()
/// in the spectral module.
class ComplexSymSystem {
 public:
  ComplexSymSystem(SparseRealSym w, SparseRealSym t, ComplexVector b);

  const SparseRealSym& W() const noexcept { return w_; }
  const SparseRealSym& T() const noexcept { return t_; }
  const ComplexVector& b() const noexcept { return b_; }
  Index n() const noexcept { return w_.n(); }

  /// A = W + iT.
  SparseComplex matrix() const;

 private:
  SparseRealSym w_;
  SparseRealSym t_;
  ComplexVector b_;
};

enum class Method { gadi, gadi_real, hss, mhss, pmhss, cri, tscsp };

inline constexpr Method kAllMethods[] = {Method::gadi, Method::gadi_real, Method::hss,
                                         Method::mhss, Method::pmhss,     Method::cri,
                                         Method::tscsp};

std::string_view method_name(Method m);
/// Case-insensitive; accepts "gadi-real" and "gadi_real".
std::optional<Method> parse_method(std::string_view name);

struct SplitParams {
  Method method = Method::gadi;
  double alpha = 1.0;
  /// Relaxation parameter, GADI variants only.
  double omega = 0.01;
  /// PMHSS preconditioner; identity when absent.
  std::optional<SparseRealSym> V;

  /// Throws ContractError on alpha <= 0, omega outside [0, 2), or a V that is
  /// mis-sized or not positive definite.
  void validate(Index n) const;
};

struct SolveConfig {
  double outer_tol = 1e-6;
  int max_outer = 1000;
  InnerSolveSettings inner{};
  std::optional<ComplexVector> initial_guess;
};

struct ResidualSample {
  int iteration = 0;
  double res = 0.0;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_res = 0.0;
  /// RES at every sweep, starting with the initial guess; length iterations + 1.
  std::vector<ResidualSample> residual_history;
  double wall_time = 0.0;
  long inner_iteration_total = 0;
};

struct SolveResult {
  ComplexVector x;
  SolveReport report;
};

/// An inner solve failed inside half-step 1 or 2 of a sweep.
class HalfStepError : public InnerSolveError {
 public:
  HalfStepError(const InnerSolveError& cause, int half_step)
      : InnerSolveError("half-step " + std::to_string(half_step) + ": " + cause.what(),
                        cause.best_iterate(), cause.iterations(), cause.relative_residual()),
        half_step_(half_step) {}
  int half_step() const noexcept { return half_step_; }

 private:
  int half_step_;
};

/// A stationary solve aborted; carries the history accumulated so far.
class SolveError : public Error {
 public:
  SolveError(const std::string& what, SolveReport partial, int half_step)
      : Error(what), partial_(std::move(partial)), half_step_(half_step) {}
  const SolveReport& partial_report() const noexcept { return partial_; }
  int half_step() const noexcept { return half_step_; }

 private:
  SolveReport partial_;
  int half_step_;
};

/// One sweep written as two linear half-steps:
///
///   first.coefficient  * x_{k+1/2} = first.on_previous  * x_k + first.rhs_scale  * b
///   second.coefficient * x_{k+1}   = second.on_previous * x_k + second.on_half * x_{k+1/2}
///                                    + second.rhs_scale * b
///
/// A 0x0 term matrix stands for zero. Every method in this module (and the
/// Kronecker-lifted matrix-equation solvers) is an instance of this form.
struct HalfStep {
  SparseComplex coefficient;
  SubsystemKind kind = SubsystemKind::hermitian_pd;
  SparseComplex on_previous;
  SparseComplex on_half;
  Complex rhs_scale{0.0, 0.0};
};

struct TwoStageSplitting {
  std::string name;
  /// The operator whose residual ||b - A x|| drives the stopping rule.
  SparseComplex system;
  HalfStep first;
  HalfStep second;
};

/// Builds the sweep for `p.method` applied to `sys`. GADI_REAL targets the real
/// splitting A = W + T; every other method targets A = W + iT.
TwoStageSplitting make_splitting(const ComplexSymSystem& sys, const SplitParams& p);

/// GADI for a general splitting A = W + S with real SPD W:
///   (aI + W) x_{k+1/2} = (aI - S) x_k + b
///   (aI + S) x_{k+1}   = (S - (1-w) a I) x_k + (2-w) a x_{k+1/2}
TwoStageSplitting make_gadi_splitting(const RealCsr& w, const SparseComplex& s, double alpha,
                                      double omega, SubsystemKind second_kind);
/// HSS-type sweep for A = W + S:
///   (aI + W) x_{k+1/2} = (aI - S) x_k + b,  (aI + S) x_{k+1} = (aI - W) x_{k+1/2} + b
TwoStageSplitting make_hss_splitting(const RealCsr& w, const SparseComplex& s, double alpha,
                                     SubsystemKind second_kind);

struct StepStats {
  int first_inner_iterations = 0;
  int second_inner_iterations = 0;
};

/// A splitting with both half-step systems prepared (factorized in direct mode).
class StationaryIteration {
 public:
  StationaryIteration(TwoStageSplitting splitting, ComplexVector b, InnerSolveSettings inner);

  /// One full sweep from x. `outer_res` sets the proportional inner tolerance
  /// in iterative mode. Throws HalfStepError on inner failure.
  ComplexVector step(const ComplexVector& x, double outer_res, StepStats* stats = nullptr) const;
  /// ||b - A x|| / ||b||.
  double residual(const ComplexVector& x) const;

  const TwoStageSplitting& splitting() const noexcept { return splitting_; }
  const ComplexVector& rhs() const noexcept { return b_; }

 private:
  TwoStageSplitting splitting_;
  ComplexVector b_;
  InnerSolveSettings inner_;
  SubsystemSolver first_;
  SubsystemSolver second_;
};

/// Iterates from cfg.initial_guess (zero by default) until RES <= outer_tol or
/// max_outer sweeps. Reaching max_outer is reported, not thrown; an inner
/// failure throws SolveError with the partial history.
SolveResult run_splitting(const TwoStageSplitting& splitting, const ComplexVector& b,
                          const SolveConfig& cfg);
SolveResult run_stationary(const ComplexSymSystem& sys, const SplitParams& p,
                           const SolveConfig& cfg);

/// Single sweep of the method selected by p.method.
ComplexVector step(const ComplexSymSystem& sys, const SplitParams& p, const ComplexVector& x_k,
                   const InnerSolveSettings& inner = InnerSolveSettings::exact());

// Named single-sweep entry points; each requires p.method to match.
ComplexVector step_gadi(const ComplexSymSystem& sys, const SplitParams& p,
                        const ComplexVector& x_k,
                        const InnerSolveSettings& inner = InnerSolveSettings::exact());
ComplexVector step_hss(const ComplexSymSystem& sys, const SplitParams& p,
                       const ComplexVector& x_k,
                       const InnerSolveSettings& inner = InnerSolveSettings::exact());
ComplexVector step_mhss(const ComplexSymSystem& sys, const SplitParams& p,
                        const ComplexVector& x_k,
                        const InnerSolveSettings& inner = InnerSolveSettings::exact());
ComplexVector step_pmhss(const ComplexSymSystem& sys, const SplitParams& p,
                         const ComplexVector& x_k,
                         const InnerSolveSettings& inner = InnerSolveSettings::exact());
ComplexVector step_cri(const ComplexSymSystem& sys, const SplitParams& p,
                       const ComplexVector& x_k,
                       const InnerSolveSettings& inner = InnerSolveSettings::exact());
ComplexVector step_tscsp(const ComplexSymSystem& sys, const SplitParams& p,
                         const ComplexVector& x_k,
                         const InnerSolveSettings& inner = InnerSolveSettings::exact());

/// Real GADI sweep for (W + T) x = b.
RealVector step_gadi_real(const SparseRealSym& w, const SparseRealSym& t, const RealVector& b,
                          const SplitParams& p, const RealVector& x_k);

/// The operator a method iterates on: W + T for GADI_REAL, W + iT otherwise.
SparseComplex system_matrix(const ComplexSymSystem& sys, Method method);

}  // namespace gadi
