#pragma once

#include <span>
#include <vector>

#include "gadi/errors.hpp"
#include "gadi/types.hpp"

namespace gadi {

template <typename Scalar>
struct Triplet {
  Index row;
  Index col;
  Scalar value;
};

enum class DuplicatePolicy { sum, reject };

/// Compressed-row sparse matrix. Columns within a row are stored in strictly
/// increasing order, so products are evaluated in a fixed summation order.
template <typename Scalar>
class CsrMatrix {
 public:
  using value_type = Scalar;
  using DenseType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  CsrMatrix() = default;
  /// All-zero rows x cols matrix.
  CsrMatrix(Index rows, Index cols);

  static CsrMatrix from_triplets(Index rows, Index cols, std::vector<Triplet<Scalar>> entries,
                                 DuplicatePolicy policy = DuplicatePolicy::sum);
  static CsrMatrix identity(Index n, Scalar diagonal = Scalar{1});
  /// Keeps entries with |value| > drop_tolerance.
  static CsrMatrix from_dense(const DenseType& dense, double drop_tolerance = 0.0);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_offsets() const noexcept { return offsets_; }
  std::span<const Index> col_indices() const noexcept { return columns_; }
  std::span<const Scalar> values() const noexcept { return values_; }

  /// Stored value at (i, j), zero when absent.
  Scalar coeff(Index i, Index j) const;

  /// y = A x. Throws DimensionError on shape mismatch.
  ComplexVector apply(const ComplexVector& x) const;
  /// y = A x without allocation; y must already have rows() entries.
  void apply_into(const ComplexVector& x, ComplexVector& y) const;

  CsrMatrix transpose() const;
  CsrMatrix scaled(Scalar factor) const;
  DenseType to_dense() const;
  std::vector<Triplet<Scalar>> to_triplets() const;

  bool operator==(const CsrMatrix& other) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> offsets_{0};
  std::vector<Index> columns_;
  std::vector<Scalar> values_;
};

using RealCsr = CsrMatrix<double>;
using SparseComplex = CsrMatrix<Complex>;

extern template class CsrMatrix<double>;
extern template class CsrMatrix<Complex>;

SparseComplex to_complex(const RealCsr& matrix);

/// Real symmetric sparse matrix (W, T, V, lifted W~ and T~). Symmetry is exact:
/// entry (i,j) is stored iff (j,i) is, with bit-identical value.
class SparseRealSym {
 public:
  SparseRealSym() = default;
  /// Throws ContractError when the matrix is not square or not symmetric.
  explicit SparseRealSym(RealCsr matrix);

  static SparseRealSym from_triplets(Index n, std::vector<Triplet<double>> entries);
  static SparseRealSym identity(Index n, double diagonal = 1.0);
  static SparseRealSym from_dense(const DenseRealMatrix& dense);

  Index n() const noexcept { return matrix_.rows(); }
  const RealCsr& matrix() const noexcept { return matrix_; }
  ComplexVector apply(const ComplexVector& x) const { return matrix_.apply(x); }
  DenseRealMatrix to_dense() const { return matrix_.to_dense(); }

  bool operator==(const SparseRealSym& other) const = default;

 private:
  RealCsr matrix_;
};

/// Accumulates sum_k s_k * M_k over conforming sparse matrices.
class SparseBuilder {
 public:
  SparseBuilder(Index rows, Index cols);

  SparseBuilder& add(Complex factor, const SparseComplex& matrix);
  SparseBuilder& add(Complex factor, const RealCsr& matrix);
  SparseBuilder& add(Complex factor, const SparseRealSym& matrix) {
    return add(factor, matrix.matrix());
  }
  SparseBuilder& add_identity(Complex factor);

  SparseComplex build() const;

 private:
  Index rows_;
  Index cols_;
  std::vector<Triplet<Complex>> entries_;
};

/// Kronecker product; block (i,j) of the result is A[i,j] * B.
template <typename Scalar>
CsrMatrix<Scalar> kron(const CsrMatrix<Scalar>& a, const CsrMatrix<Scalar>& b);
SparseRealSym kron(const SparseRealSym& a, const SparseRealSym& b);

ComplexVector apply(const SparseComplex& a, const ComplexVector& x);
ComplexVector apply(const RealCsr& a, const ComplexVector& x);
ComplexVector apply(const SparseRealSym& a, const ComplexVector& x);

}  // namespace gadi
