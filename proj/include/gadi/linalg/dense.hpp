#pragma once

#include "gadi/linalg/sparse.hpp"
#include "gadi/types.hpp"

namespace gadi {

/// Column-stacking vectorization: vec([x_1 ... x_n]) = (x_1; ...; x_n).
ComplexVector vec(const DenseComplexMatrix& x);

/// Inverse of vec. Throws DimensionError unless x.size() == rows * cols.
DenseComplexMatrix unvec(const ComplexVector& x, Index rows, Index cols);

DenseComplexMatrix kron(const DenseComplexMatrix& a, const DenseComplexMatrix& b);

/// RES = ||b - A x||_2 / ||b||_2. Throws UndefinedDenominatorError when b = 0.
double rel_residual(const SparseComplex& a, const ComplexVector& x, const ComplexVector& b);
double rel_residual(const DenseComplexMatrix& a, const ComplexVector& x, const ComplexVector& b);

/// Spectral norm (largest singular value).
double norm2(const DenseComplexMatrix& a);

/// ||A||_inf, the maximum absolute row sum.
double norm_inf(const DenseComplexMatrix& a);

bool is_hermitian(const DenseComplexMatrix& a, double rel_tol);

}  // namespace gadi
