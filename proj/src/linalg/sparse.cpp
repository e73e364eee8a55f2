#include "gadi/linalg/sparse.hpp"

#include <algorithm>
#include <sstream>

namespace gadi {

namespace {

std::string shape(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

}  // namespace

template <typename Scalar>
CsrMatrix<Scalar>::CsrMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), offsets_(static_cast<std::size_t>(rows) + 1, 0) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

template <typename Scalar>
CsrMatrix<Scalar> CsrMatrix<Scalar>::from_triplets(Index rows, Index cols,
                                                   std::vector<Triplet<Scalar>> entries,
                                                   DuplicatePolicy policy) {
  CsrMatrix out(rows, cols);
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw DimensionError("triplet (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                           ") outside " + shape(rows, cols));
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  out.columns_.reserve(entries.size());
  out.values_.reserve(entries.size());
  std::vector<Index> counts(static_cast<std::size_t>(rows), 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      if (policy == DuplicatePolicy::reject) {
        throw ContractError("duplicate coordinate (" + std::to_string(e.row) + "," +
                            std::to_string(e.col) + ")");
      }
      out.values_.back() += e.value;
      continue;
    }
    out.columns_.push_back(e.col);
    out.values_.push_back(e.value);
    ++counts[static_cast<std::size_t>(e.row)];
  }
  for (Index i = 0; i < rows; ++i) {
    out.offsets_[static_cast<std::size_t>(i) + 1] =
        out.offsets_[static_cast<std::size_t>(i)] + counts[static_cast<std::size_t>(i)];
  }
  return out;
}

template <typename Scalar>
CsrMatrix<Scalar> CsrMatrix<Scalar>::identity(Index n, Scalar diagonal) {
  std::vector<Triplet<Scalar>> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) entries.push_back({i, i, diagonal});
  return from_triplets(n, n, std::move(entries));
}

template <typename Scalar>
CsrMatrix<Scalar> CsrMatrix<Scalar>::from_dense(const DenseType& dense, double drop_tolerance) {
  std::vector<Triplet<Scalar>> entries;
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = 0; j < dense.cols(); ++j) {
      if (std::abs(dense(i, j)) > drop_tolerance) entries.push_back({i, j, dense(i, j)});
    }
  }
  return from_triplets(dense.rows(), dense.cols(), std::move(entries));
}

template <typename Scalar>
Scalar CsrMatrix<Scalar>::coeff(Index i, Index j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DimensionError("coeff index out of range");
  const auto begin = columns_.begin() + offsets_[static_cast<std::size_t>(i)];
  const auto end = columns_.begin() + offsets_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return Scalar{0};
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

template <typename Scalar>
void CsrMatrix<Scalar>::apply_into(const ComplexVector& x, ComplexVector& y) const {
  if (x.size() != cols_ || y.size() != rows_) {
    throw DimensionError("matrix " + shape(rows_, cols_) + " applied to vector of length " +
                         std::to_string(x.size()));
  }
  for (Index i = 0; i < rows_; ++i) {
    Complex sum{0.0, 0.0};
    for (Index k = offsets_[static_cast<std::size_t>(i)];
         k < offsets_[static_cast<std::size_t>(i) + 1]; ++k) {
      sum += values_[static_cast<std::size_t>(k)] * x[columns_[static_cast<std::size_t>(k)]];
    }
    y[i] = sum;
  }
}

template <typename Scalar>
ComplexVector CsrMatrix<Scalar>::apply(const ComplexVector& x) const {
  ComplexVector y(rows_);
  apply_into(x, y);
  return y;
}

template <typename Scalar>
CsrMatrix<Scalar> CsrMatrix<Scalar>::transpose() const {
  std::vector<Triplet<Scalar>> entries;
  entries.reserve(values_.size());
  for (const auto& t : to_triplets()) entries.push_back({t.col, t.row, t.value});
  return from_triplets(cols_, rows_, std::move(entries));
}

template <typename Scalar>
CsrMatrix<Scalar> CsrMatrix<Scalar>::scaled(Scalar factor) const {
  CsrMatrix out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

template <typename Scalar>
typename CsrMatrix<Scalar>::DenseType CsrMatrix<Scalar>::to_dense() const {
  DenseType dense = DenseType::Zero(rows_, cols_);
  for (const auto& t : to_triplets()) dense(t.row, t.col) = t.value;
  return dense;
}

template <typename Scalar>
std::vector<Triplet<Scalar>> CsrMatrix<Scalar>::to_triplets() const {
  std::vector<Triplet<Scalar>> out;
  out.reserve(values_.size());
  for (Index i = 0; i < rows_; ++i) {
    for (Index k = offsets_[static_cast<std::size_t>(i)];
         k < offsets_[static_cast<std::size_t>(i) + 1]; ++k) {
      out.push_back({i, columns_[static_cast<std::size_t>(k)], values_[static_cast<std::size_t>(k)]});
    }
  }
  return out;
}

template class CsrMatrix<double>;
template class CsrMatrix<Complex>;

SparseComplex to_complex(const RealCsr& matrix) {
  std::vector<Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(matrix.nnz()));
  for (const auto& t : matrix.to_triplets()) entries.push_back({t.row, t.col, Complex(t.value)});
  return SparseComplex::from_triplets(matrix.rows(), matrix.cols(), std::move(entries));
}

SparseRealSym::SparseRealSym(RealCsr matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ContractError("symmetric matrix must be square, got " +
                        shape(matrix_.rows(), matrix_.cols()));
  }
  if (matrix_.rows() < 1) throw DimensionError("symmetric matrix must have n >= 1");
  // Exact symmetry: the transpose must reproduce the same structure and values.
  if (!(matrix_.transpose() == matrix_)) throw ContractError("matrix is not symmetric");
}

SparseRealSym SparseRealSym::from_triplets(Index n, std::vector<Triplet<double>> entries) {
  return SparseRealSym(RealCsr::from_triplets(n, n, std::move(entries)));
}

SparseRealSym SparseRealSym::identity(Index n, double diagonal) {
  return SparseRealSym(RealCsr::identity(n, diagonal));
}

SparseRealSym SparseRealSym::from_dense(const DenseRealMatrix& dense) {
  return SparseRealSym(RealCsr::from_dense(dense));
}

SparseBuilder::SparseBuilder(Index rows, Index cols) : rows_(rows), cols_(cols) {}

SparseBuilder& SparseBuilder::add(Complex factor, const SparseComplex& matrix) {
  if (matrix.rows() != rows_ || matrix.cols() != cols_) {
    throw DimensionError("cannot add " + shape(matrix.rows(), matrix.cols()) + " to " +
                         shape(rows_, cols_));
  }
  for (const auto& t : matrix.to_triplets()) entries_.push_back({t.row, t.col, factor * t.value});
  return *this;
}

SparseBuilder& SparseBuilder::add(Complex factor, const RealCsr& matrix) {
  if (matrix.rows() != rows_ || matrix.cols() != cols_) {
    throw DimensionError("cannot add " + shape(matrix.rows(), matrix.cols()) + " to " +
                         shape(rows_, cols_));
  }
  for (const auto& t : matrix.to_triplets()) entries_.push_back({t.row, t.col, factor * t.value});
  return *this;
}

SparseBuilder& SparseBuilder::add_identity(Complex factor) {
  if (rows_ != cols_) throw DimensionError("identity term on non-square builder");
  for (Index i = 0; i < rows_; ++i) entries_.push_back({i, i, factor});
  return *this;
}

SparseComplex SparseBuilder::build() const {
  return SparseComplex::from_triplets(rows_, cols_, entries_);
}

template <typename Scalar>
CsrMatrix<Scalar> kron(const CsrMatrix<Scalar>& a, const CsrMatrix<Scalar>& b) {
  const Index p = b.rows();
  const Index q = b.cols();
  std::vector<Triplet<Scalar>> entries;
  entries.reserve(static_cast<std::size_t>(a.nnz() * b.nnz()));
  const auto bt = b.to_triplets();
  for (const auto& ta : a.to_triplets()) {
    for (const auto& tb : bt) {
      entries.push_back({p * ta.row + tb.row, q * ta.col + tb.col, ta.value * tb.value});
    }
  }
  return CsrMatrix<Scalar>::from_triplets(a.rows() * p, a.cols() * q, std::move(entries));
}

template RealCsr kron(const RealCsr&, const RealCsr&);
template SparseComplex kron(const SparseComplex&, const SparseComplex&);

SparseRealSym kron(const SparseRealSym& a, const SparseRealSym& b) {
  return SparseRealSym(kron(a.matrix(), b.matrix()));
}

ComplexVector apply(const SparseComplex& a, const ComplexVector& x) { return a.apply(x); }
ComplexVector apply(const RealCsr& a, const ComplexVector& x) { return a.apply(x); }
ComplexVector apply(const SparseRealSym& a, const ComplexVector& x) { return a.apply(x); }

}  // namespace gadi
