#pragma once

#include <optional>
#include <vector>

#include "gadi/mateq/lyapunov.hpp"

namespace gadi {

/// A^* X + X A + Q - X G X = 0 with A = W + iT and Hermitian G, Q.
struct RiccatiProblem {
  SparseRealSym W;
  SparseRealSym T;
  DenseComplexMatrix G;
  DenseComplexMatrix Q;

  Index n() const noexcept { return W.n(); }
  DenseComplexMatrix A() const;
  /// Throws DimensionError on mismatched shapes, ContractError if G or Q is not Hermitian.
  void validate() const;
};

/// Newton iterate k: A_k = A - G X_k, Q_k = -X_k G X_k - Q.
struct NewtonState {
  int k = 0;
  DenseComplexMatrix X;
  DenseComplexMatrix A_k;
  DenseComplexMatrix Q_k;
  SolveReport inner_report;
};

NewtonState make_newton_state(const RiccatiProblem& p, DenseComplexMatrix x, int k = 0);

/// How the Newton correction G_k enters the lifted operator.
///   derived:  G_k = I (x) (G X_k)^* + (G X_k)^T (x) I
///   printed:  G_k = X_k G (x) I + I (x) X_k G
enum class NewtonLiftForm { derived, printed };

/// Lifted Newton step (W_k + iT_k - G_k) x = q_k.
struct NewtonLift {
  SparseRealSym W_k;
  SparseRealSym T_k;
  SparseComplex G_k;
  ComplexVector q_k;
  LiftOrientation orientation = LiftOrientation::column_stacked;
  NewtonLiftForm form = NewtonLiftForm::derived;
  bool validated = false;

  /// S_k = iT_k - G_k, the non-Hermitian part of the splitting.
  SparseComplex S_k() const;
  SparseComplex matrix() const;
};

inline constexpr Index kNewtonLiftLimit = 64;

/// Validated like lift_lyapunov: the lift must map vec(X) to
/// vec(A_k^* X + X A_k) on seeded random X. Throws ConsistencyError when no
/// candidate does and SizeLimitError above kNewtonLiftLimit.
NewtonLift build_newton_lift(const NewtonState& state, const RiccatiProblem& p);
NewtonLift build_newton_lift(const NewtonState& state, const RiccatiProblem& p,
                             LiftOrientation orientation, NewtonLiftForm form);

/// Right-hand side of the shifted Lyapunov initializer B^* X + X B = +-2Q.
/// The positive sign can start Newton outside the region where A - G X_k keeps
/// a positive definite Hermitian part; the negative one matches Q_k = -X_k G X_k - Q.
enum class NewtonStart { shifted_lyapunov, mirrored_shifted_lyapunov };

struct NewtonConfig {
  double outer_tol = 1e-5;
  int k_max = 50;
  /// Inner stop: ||A_k x - q_k|| < inner_rel_tol * ||q_k||.
  double inner_rel_tol = 1e-8;
  int l_max = 500;
  /// Per-step alpha; alpha~ of W_k when absent.
  std::optional<double> alpha;
  double omega = 0.01;
  InnerSolveSettings inner = InnerSolveSettings::exact();
  /// Starting X_0; the shifted-Lyapunov initializer selected by `start` when absent.
  std::optional<DenseComplexMatrix> initial_guess;
  NewtonStart start = NewtonStart::mirrored_shifted_lyapunov;
};

struct NewtonResult {
  DenseComplexMatrix X;
  bool converged = false;
  int outer_iterations = 0;
  /// Res(X_k) for k = 0 .. outer_iterations.
  std::vector<double> residual_history;
  std::vector<SolveReport> inner_reports;
  long cumulative_inner_iterations = 0;
  double wall_time = 0.0;
};

/// An inner solve of Newton step `outer_index` failed.
class NewtonError : public Error {
 public:
  NewtonError(const std::string& what, int outer_index)
      : Error("Newton step " + std::to_string(outer_index) + ": " + what),
        outer_index_(outer_index) {}
  int outer_index() const noexcept { return outer_index_; }

 private:
  int outer_index_;
};

/// X_0 solving B^* X + X B = 2Q (or -2Q, per cfg.start) with B = A + beta I,
/// beta = 1 + ||A||_inf, computed by lifted GADI. Throws NewtonError (outer index 0) if that solve
/// does not converge.
DenseComplexMatrix newton_initial_guess(const RiccatiProblem& p, const NewtonConfig& cfg = {});

/// Newton outer iteration with lifted GADI inner solves warm-started from x_k.
/// Stops when Res(X_k) < outer_tol or after k_max steps (reported, not thrown).
NewtonResult newton_gadi_riccati(const RiccatiProblem& p, const NewtonConfig& cfg = {});

/// ||A^* X + X A + Q - X G X||_2 / ||Q||_2. Throws UndefinedDenominatorError when Q = 0.
double riccati_residual(const RiccatiProblem& p, const DenseComplexMatrix& x);

}  // namespace gadi
