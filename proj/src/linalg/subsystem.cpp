#include "gadi/linalg/subsystem.hpp"

#include <variant>

#include <Eigen/LU>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "gadi/errors.hpp"

namespace gadi {

namespace {

// Above this fill ratio a dense LU is faster than SparseLU (Kronecker lifts
// with a dense Newton correction are nearly full).
constexpr double kDenseFillRatio = 0.05;

template <typename Scalar>
Eigen::SparseMatrix<Scalar> to_eigen(const SparseComplex& m) {
  std::vector<Eigen::Triplet<Scalar>> entries;
  entries.reserve(static_cast<std::size_t>(m.nnz()));
  for (const auto& t : m.to_triplets()) {
    if constexpr (std::is_same_v<Scalar, double>) {
      entries.emplace_back(t.row, t.col, t.value.real());
    } else {
      entries.emplace_back(t.row, t.col, t.value);
    }
  }
  Eigen::SparseMatrix<Scalar> out(m.rows(), m.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  out.makeCompressed();
  return out;
}

bool is_real(const SparseComplex& m) {
  for (const auto& v : m.values()) {
    if (v.imag() != 0.0) return false;
  }
  return true;
}

}  // namespace

struct SubsystemSolver::Factorization {
  using RealLlt = Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>;
  using ComplexLdlt = Eigen::SimplicialLDLT<Eigen::SparseMatrix<Complex>>;
  using SparseLu = Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>>;
  using DenseLu = Eigen::PartialPivLU<DenseComplexMatrix>;

  std::variant<std::unique_ptr<RealLlt>, std::unique_ptr<ComplexLdlt>, std::unique_ptr<SparseLu>,
               std::unique_ptr<DenseLu>>
      impl;

  ComplexVector solve(const ComplexVector& rhs) const {
    return std::visit(
        [&](const auto& f) -> ComplexVector {
          using F = std::decay_t<decltype(*f)>;
          if constexpr (std::is_same_v<F, RealLlt>) {
            const Eigen::VectorXd re = f->solve(rhs.real().eval());
            const Eigen::VectorXd im = f->solve(rhs.imag().eval());
            ComplexVector out(rhs.size());
            out.real() = re;
            out.imag() = im;
            return out;
          } else {
            return f->solve(rhs);
          }
        },
        impl);
  }
};

SubsystemSolver::SubsystemSolver(SparseComplex matrix, SubsystemKind kind, bool direct)
    : matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("subsystem matrix must be square");
  if (kind_ == SubsystemKind::general) direct = true;
  if (!direct) return;

  factor_ = std::make_unique<Factorization>();
  const Index n = matrix_.rows();
  if (kind_ == SubsystemKind::hermitian_pd) {
    if (is_real(matrix_)) {
      auto f = std::make_unique<Factorization::RealLlt>(to_eigen<double>(matrix_));
      if (f->info() != Eigen::Success) {
        throw ContractError("subsystem matrix is not symmetric positive definite");
      }
      factor_->impl = std::move(f);
    } else {
      auto f = std::make_unique<Factorization::ComplexLdlt>(to_eigen<Complex>(matrix_));
      if (f->info() != Eigen::Success) {
        throw ContractError("subsystem matrix is not Hermitian positive definite");
      }
      factor_->impl = std::move(f);
    }
    return;
  }

  const double fill = static_cast<double>(matrix_.nnz()) / (static_cast<double>(n) * n);
  if (fill >= kDenseFillRatio) {
    auto f = std::make_unique<Factorization::DenseLu>(matrix_.to_dense());
    // PartialPivLU does not flag singularity; check the pivots.
    const auto& lu = f->matrixLU();
    const double scale = lu.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      if (!(std::abs(lu(i, i)) > 1e-14 * scale)) {
        throw NumericalError("subsystem matrix is numerically singular");
      }
    }
    factor_->impl = std::move(f);
  } else {
    auto f = std::make_unique<Factorization::SparseLu>();
    f->analyzePattern(to_eigen<Complex>(matrix_));
    f->factorize(to_eigen<Complex>(matrix_));
    if (f->info() != Eigen::Success) {
      throw NumericalError("sparse LU failed: " + f->lastErrorMessage());
    }
    factor_->impl = std::move(f);
  }
}

SubsystemSolver::~SubsystemSolver() = default;
SubsystemSolver::SubsystemSolver(SubsystemSolver&&) noexcept = default;
SubsystemSolver& SubsystemSolver::operator=(SubsystemSolver&&) noexcept = default;

KrylovResult SubsystemSolver::solve(const ComplexVector& rhs, double rel_tol, int max_it,
                                    const ComplexVector& guess) const {
  if (rhs.size() != matrix_.rows()) throw DimensionError("subsystem rhs length mismatch");
  if (factor_) {
    KrylovResult out;
    out.x = factor_->solve(rhs);
    const double bn = rhs.norm();
    out.relative_residual = bn > 0.0 ? (rhs - matrix_.apply(out.x)).norm() / bn : 0.0;
    return out;
  }
  if (kind_ == SubsystemKind::hermitian_pd) return cg_hpd(matrix_, rhs, rel_tol, max_it, guess);
  return cocg_sym(matrix_, rhs, rel_tol, max_it, guess);
}

}  // namespace gadi
