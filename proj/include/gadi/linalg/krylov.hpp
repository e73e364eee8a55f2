#pragma once

#include <functional>

#include "gadi/linalg/sparse.hpp"
#include "gadi/types.hpp"

namespace gadi {

using LinearMap = std::function<ComplexVector(const ComplexVector&)>;

struct KrylovResult {
  ComplexVector x;
  int iterations = 0;
  /// ||b - M x||_2 / ||b||_2 evaluated on the returned iterate (0 when b = 0).
  double relative_residual = 0.0;
};

/// Conjugate gradients for a Hermitian positive definite operator acting on
/// complex vectors. An empty `guess` means the zero vector.
///
/// Throws InnerSolveError (carrying the last iterate) when max_it is reached,
/// and ContractError when a search direction has p^H M p <= 0.
KrylovResult cg_hpd(const LinearMap& m, const ComplexVector& b, double rel_tol, int max_it,
                    const ComplexVector& guess = {});
KrylovResult cg_hpd(const SparseComplex& m, const ComplexVector& b, double rel_tol, int max_it,
                    const ComplexVector& guess = {});

/// Conjugate-orthogonal CG (COCG) for complex symmetric M = M^T. Uses the
/// unconjugated bilinear form x^T y in place of the Hermitian inner product.
///
/// Throws BreakdownError when x^T y vanishes for the residual or search
/// direction, InnerSolveError when max_it is reached.
KrylovResult cocg_sym(const LinearMap& m, const ComplexVector& b, double rel_tol, int max_it,
                      const ComplexVector& guess = {});
KrylovResult cocg_sym(const SparseComplex& m, const ComplexVector& b, double rel_tol, int max_it,
                      const ComplexVector& guess = {});

}  // namespace gadi
