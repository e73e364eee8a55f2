#pragma once

#include <span>
#include <vector>

#include "gadi/linalg/sparse.hpp"
#include "gadi/splitting/splitting.hpp"

namespace gadi {

enum class SpectrumMethod { dense_exact, iterative_estimate };

/// Extreme eigenvalues of a symmetric positive definite matrix.
struct SpectrumSummary {
  double gamma_min = 0.0;
  double gamma_max = 0.0;
  SpectrumMethod method = SpectrumMethod::dense_exact;
  /// Relative accuracy of the estimate; 0 for dense_exact.
  double estimate_tol = 0.0;
};

enum class SpectrumMode { automatic, dense, iterative };

/// Largest size handled by a full dense eigensolve in automatic mode.
inline constexpr Index kDenseSpectrumLimit = 2000;

/// Automatic mode is dense up to kDenseSpectrumLimit. The iterative mode runs
/// Lanczos on W for gamma_max and on W^{-1} (sparse Cholesky) for gamma_min.
/// Throws DomainError when W is not positive definite.
SpectrumSummary eig_extremes_spd(const SparseRealSym& w, SpectrumMode mode = SpectrumMode::automatic,
                                 double tol = 1e-10);

/// All eigenvalues of a symmetric matrix in ascending order (dense).
RealVector symmetric_eigenvalues(const SparseRealSym& w);

/// alpha~ = sqrt(gamma_min * gamma_max). Throws DomainError unless both are positive.
double optimal_alpha(const SpectrumSummary& s);

/// sigma(alpha) = max |alpha - lambda| / |alpha + lambda|. With a summary only
/// the two endpoints are examined; the ratio is monotone on each side of alpha.
double sigma_bound(double alpha, const SpectrumSummary& s);
double sigma_bound(double alpha, std::span<const double> spectrum);

/// Largest system handled by the dense iteration-matrix routines.
inline constexpr Index kDenseIterationLimit = 512;

struct IterationMatrixPair {
  DenseComplexMatrix T_alpha;
  DenseComplexMatrix M_alpha_omega;
  double alpha = 0.0;
  double omega = 0.0;
};

/// T(alpha) = (aI+iT)^{-1}(aI-W)(aI+W)^{-1}(aI-iT) and
/// M(alpha,omega) = (aI+iT)^{-1}(aI+W)^{-1}[a^2 I + iWT - (1-omega) a A].
/// Throws SizeLimitError above kDenseIterationLimit.
IterationMatrixPair build_iteration_matrices(const ComplexSymSystem& sys, double alpha,
                                             double omega);
/// Same construction for a general splitting A = W + S (S = iT in the
/// complex symmetric case, S = iT~ - G_k for a Newton step).
IterationMatrixPair build_iteration_matrices(const DenseComplexMatrix& w,
                                             const DenseComplexMatrix& s, double alpha,
                                             double omega);

/// The linear part of one sweep of `splitting`, assembled densely.
DenseComplexMatrix iteration_matrix(const TwoStageSplitting& splitting);

/// Largest eigenvalue modulus. Throws SizeLimitError above kDenseIterationLimit
/// and NumericalError if the QR iteration fails.
double spectral_radius(const DenseComplexMatrix& m);

/// Largest system for the brute-force radius search.
inline constexpr Index kRadiusSearchLimit = 128;

struct RadiusSample {
  double alpha = 0.0;
  double rho = 0.0;
};

struct RadiusSearch {
  std::vector<RadiusSample> samples;
  RadiusSample best;
};

/// Spectral radius of the method's iteration matrix at every alpha in the grid
/// (other fields of `base` are kept); best is the smallest rho, ties to smaller alpha.
RadiusSearch search_alpha_by_radius(const ComplexSymSystem& sys, const SplitParams& base,
                                     std::span<const double> alpha_grid);

struct SystemCheck {
  SpectrumSummary w;
  double t_min = 0.0;
  bool t_psd = false;
};

/// Verifies W is SPD (DomainError otherwise) and reports whether T is PSD
/// within a relative tolerance of 1e-12 of its spectral scale.
SystemCheck check_system(const ComplexSymSystem& sys);

}  // namespace gadi
