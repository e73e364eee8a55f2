#pragma once

#include "gadi/linalg/sparse.hpp"
#include "gadi/splitting/splitting.hpp"

namespace gadi {

/// A^* X + X A = Q with A = W + iT and Hermitian Q.
struct LyapunovProblem {
  SparseRealSym W;
  SparseRealSym T;
  DenseComplexMatrix Q;

  Index n() const noexcept { return W.n(); }
  /// Dense A = W + iT.
  DenseComplexMatrix A() const;
  /// Throws DimensionError on mismatched shapes, ContractError if Q is not Hermitian.
  void validate() const;
};

/// Which Kronecker form the lift uses for the imaginary part.
///   column_stacked:  T~ = T (x) I - I (x) T   (from vec(A^* X) = (I (x) A^*) vec X)
///   printed:         T~ = I (x) T - T (x) I
enum class LiftOrientation { column_stacked, printed };

struct LyapunovLift {
  SparseRealSym W_tilde;
  SparseRealSym T_tilde;
  ComplexVector q;
  LiftOrientation orientation = LiftOrientation::column_stacked;
  /// Set once the lift reproduced vec(A^* X + X A) on random X.
  bool validated = false;

  SparseComplex matrix() const;
};

inline constexpr Index kLyapunovLiftLimit = 128;

/// Builds both orientations and keeps the first one that maps vec(X) to
/// vec(A^* X + X A) on three seeded random X. Throws ConsistencyError if
/// neither does and SizeLimitError above kLyapunovLiftLimit.
LyapunovLift lift_lyapunov(const LyapunovProblem& p);

/// Lifted operator for an explicit orientation. Checks shapes only; Q need
/// not be Hermitian.
LyapunovLift lift_lyapunov(const LyapunovProblem& p, LiftOrientation orientation);

struct MatrixSolveResult {
  DenseComplexMatrix X;
  SolveReport report;
};

/// GADI on the lifted system. params.method is ignored; params.alpha and
/// params.omega are used as given.
MatrixSolveResult solve_lyapunov_gadi(const LyapunovProblem& p, const SplitParams& params,
                                      const SolveConfig& cfg);
/// HSS on the lifted system.
MatrixSolveResult solve_lyapunov_hss(const LyapunovProblem& p, const SplitParams& params,
                                     const SolveConfig& cfg);

/// ||Q - A^* X - X A||_F / ||Q||_F. Throws UndefinedDenominatorError when Q = 0.
double lyapunov_residual(const LyapunovProblem& p, const DenseComplexMatrix& x);

/// alpha~ of the lifted W~ = W (x) I + I (x) W, from the extremes of W.
double lyapunov_optimal_alpha(const LyapunovProblem& p);

}  // namespace gadi
