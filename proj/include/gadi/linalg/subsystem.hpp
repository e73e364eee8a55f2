#pragma once

#include <memory>
#include <optional>

#include "gadi/linalg/krylov.hpp"
#include "gadi/linalg/sparse.hpp"

namespace gadi {

/// Structure of a half-step coefficient matrix; selects the inner solver.
enum class SubsystemKind {
  hermitian_pd,       ///< CG, or sparse Cholesky in exact mode
  complex_symmetric,  ///< COCG, or sparse LU in exact mode
  general,            ///< always factorized (no iterative solver for this class)
};

enum class InnerMode { exact, iterative, automatic };

/// How the two half-step systems of a stationary sweep are solved.
///
/// In iterative mode the half-step tolerances follow the outer residual:
/// eta = tau = relative_factor * RES_k, floored at `floor`, unless fixed
/// values are given.
struct InnerSolveSettings {
  InnerMode mode = InnerMode::automatic;
  Index exact_threshold = 4096;
  double relative_factor = 1e-2;
  double floor = 1e-14;
  std::optional<double> eta;
  std::optional<double> tau;
  int max_inner = 1000;

  static InnerSolveSettings exact() { return with_mode(InnerMode::exact); }
  static InnerSolveSettings iterative() { return with_mode(InnerMode::iterative); }

  bool use_direct(Index n) const {
    return mode == InnerMode::exact || (mode == InnerMode::automatic && n <= exact_threshold);
  }
  double first_tolerance(double outer_res) const { return eta ? *eta : proportional(outer_res); }
  double second_tolerance(double outer_res) const { return tau ? *tau : proportional(outer_res); }

 private:
  static InnerSolveSettings with_mode(InnerMode m) {
    InnerSolveSettings s;
    s.mode = m;
    return s;
  }
  double proportional(double outer_res) const {
    const double t = relative_factor * outer_res;
    return t > floor ? t : floor;
  }
};

/// A fixed coefficient matrix prepared for repeated solves: factorized once
/// in direct mode, or wrapped for CG/COCG in iterative mode.
class SubsystemSolver {
 public:
  /// `direct` is ignored for SubsystemKind::general, which is always factorized.
  /// Throws ContractError if a hermitian_pd matrix fails Cholesky, and
  /// NumericalError if an LU factorization finds the matrix singular.
  SubsystemSolver(SparseComplex matrix, SubsystemKind kind, bool direct);
  ~SubsystemSolver();
  SubsystemSolver(SubsystemSolver&&) noexcept;
  SubsystemSolver& operator=(SubsystemSolver&&) noexcept;

  /// Direct mode ignores rel_tol/max_it and reports zero iterations.
  KrylovResult solve(const ComplexVector& rhs, double rel_tol, int max_it,
                     const ComplexVector& guess = {}) const;

  const SparseComplex& matrix() const noexcept { return matrix_; }
  SubsystemKind kind() const noexcept { return kind_; }
  bool direct() const noexcept { return factor_ != nullptr; }

 private:
  struct Factorization;

  SparseComplex matrix_;
  SubsystemKind kind_;
  std::unique_ptr<Factorization> factor_;
};

}  // namespace gadi
