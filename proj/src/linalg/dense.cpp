#include "gadi/linalg/dense.hpp"

#include <Eigen/SVD>

#include "gadi/errors.hpp"

namespace gadi {

ComplexVector vec(const DenseComplexMatrix& x) {
  ComplexVector out(x.size());
  Index k = 0;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) out[k++] = x(i, j);
  }
  return out;
}

DenseComplexMatrix unvec(const ComplexVector& x, Index rows, Index cols) {
  if (rows < 0 || cols < 0 || x.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(x.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  DenseComplexMatrix out(rows, cols);
  Index k = 0;
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = x[k++];
  }
  return out;
}

DenseComplexMatrix kron(const DenseComplexMatrix& a, const DenseComplexMatrix& b) {
  const Index p = b.rows();
  const Index q = b.cols();
  DenseComplexMatrix out(a.rows() * p, a.cols() * q);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out.block(i * p, j * q, p, q) = a(i, j) * b;
  }
  return out;
}

namespace {

double quotient(const ComplexVector& r, const ComplexVector& b) {
  const double nb = b.norm();
  if (nb == 0.0) throw UndefinedDenominatorError("relative residual undefined for b = 0");
  return r.norm() / nb;
}

}  // namespace

double rel_residual(const SparseComplex& a, const ComplexVector& x, const ComplexVector& b) {
  if (a.rows() != b.size()) throw DimensionError("rel_residual: rhs length mismatch");
  return quotient(b - a.apply(x), b);
}

double rel_residual(const DenseComplexMatrix& a, const ComplexVector& x, const ComplexVector& b) {
  if (a.cols() != x.size() || a.rows() != b.size()) {
    throw DimensionError("rel_residual: shape mismatch");
  }
  return quotient(b - a * x, b);
}

double norm2(const DenseComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double norm_inf(const DenseComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

bool is_hermitian(const DenseComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  return (a - a.adjoint()).norm() <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

}  // namespace gadi
