#include "gadi/spectral/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>

namespace gadi {

namespace {

using RealOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::SparseMatrix<double> to_eigen(const RealCsr& m) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(m.nnz()));
  for (const auto& t : m.to_triplets()) entries.emplace_back(t.row, t.col, t.value);
  Eigen::SparseMatrix<double> out(m.rows(), m.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

struct RitzExtremes {
  double smallest = 0.0;
  double largest = 0.0;
};

// Lanczos with full reorthogonalization. Stops once the Ritz residual bound of
// each requested end drops below tol times the largest Ritz modulus.
RitzExtremes lanczos(const RealOp& op, Index n, double tol, bool need_small, bool need_large) {
  const Index max_steps = std::min<Index>(n, 600);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd q(n);
  for (Index i = 0; i < n; ++i) q[i] = gauss(rng);
  q.normalize();

  Eigen::MatrixXd basis(n, max_steps);
  std::vector<double> alpha, beta;
  RitzExtremes out;
  for (Index k = 0; k < max_steps; ++k) {
    basis.col(k) = q;
    Eigen::VectorXd v = op(q);
    const double a = q.dot(v);
    alpha.push_back(a);
    v -= a * q;
    if (k > 0) v -= beta.back() * basis.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) {
      v -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * v);
    }
    const double b = v.norm();

    const Index m = k + 1;
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& theta = tri.eigenvalues();
    const auto& s = tri.eigenvectors();
    out.smallest = theta[0];
    out.largest = theta[m - 1];
    const double scale = std::max(std::abs(out.smallest), std::abs(out.largest));
    const double res_small = std::abs(b * s(m - 1, 0));
    const double res_large = std::abs(b * s(m - 1, m - 1));
    const bool ok_small = !need_small || res_small <= tol * scale;
    const bool ok_large = !need_large || res_large <= tol * scale;
    if ((ok_small && ok_large) || b <= 1e-14 * scale || m == n) return out;
    beta.push_back(b);
    q = v / b;
  }
  throw NumericalError("Lanczos did not reach the requested accuracy in " +
                       std::to_string(max_steps) + " steps");
}

DenseComplexMatrix identity(Index n, double a) {
  return DenseComplexMatrix::Identity(n, n) * Complex(a);
}

void require_dense_size(Index n, const char* what) {
  if (n > kDenseIterationLimit) {
    throw SizeLimitError(std::string(what) + ": n = " + std::to_string(n) + " exceeds the dense limit " +
                         std::to_string(kDenseIterationLimit));
  }
}

}  // namespace

RealVector symmetric_eigenvalues(const SparseRealSym& w) {
  Eigen::SelfAdjointEigenSolver<DenseRealMatrix> es(w.to_dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
  return es.eigenvalues();
}

SpectrumSummary eig_extremes_spd(const SparseRealSym& w, SpectrumMode mode, double tol) {
  const Index n = w.n();
  const bool dense =
      mode == SpectrumMode::dense || (mode == SpectrumMode::automatic && n <= kDenseSpectrumLimit);
  SpectrumSummary out;
  if (dense) {
    const RealVector ev = symmetric_eigenvalues(w);
    out.gamma_min = ev[0];
    out.gamma_max = ev[n - 1];
    out.method = SpectrumMethod::dense_exact;
  } else {
    const Eigen::SparseMatrix<double> a = to_eigen(w.matrix());
    const RitzExtremes top = lanczos([&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x; },
                                     n, tol, false, true);
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(a);
    if (llt.info() != Eigen::Success) throw DomainError("matrix is not positive definite");
    const RitzExtremes inv = lanczos(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return llt.solve(x); }, n, tol, false, true);
    out.gamma_max = top.largest;
    out.gamma_min = 1.0 / inv.largest;
    out.method = SpectrumMethod::iterative_estimate;
    out.estimate_tol = tol;
  }
  if (!(out.gamma_min > 0.0)) {
    throw DomainError("matrix is not positive definite (smallest eigenvalue " +
                      std::to_string(out.gamma_min) + ")");
  }
  return out;
}

double optimal_alpha(const SpectrumSummary& s) {
  if (!(s.gamma_min > 0.0) || !(s.gamma_max > 0.0)) {
    throw DomainError("optimal alpha needs a positive spectrum");
  }
  return std::sqrt(s.gamma_min * s.gamma_max);
}

double sigma_bound(double alpha, const SpectrumSummary& s) {
  const double ends[] = {s.gamma_min, s.gamma_max};
  return sigma_bound(alpha, ends);
}

double sigma_bound(double alpha, std::span<const double> spectrum) {
  if (!(alpha > 0.0)) throw DomainError("sigma bound needs alpha > 0");
  if (spectrum.empty()) throw DomainError("sigma bound needs a nonempty spectrum");
  double out = 0.0;
  for (double lambda : spectrum) {
    if (!(lambda > 0.0)) throw DomainError("sigma bound needs a positive spectrum");
    out = std::max(out, std::abs(alpha - lambda) / (alpha + lambda));
  }
  return out;
}

IterationMatrixPair build_iteration_matrices(const ComplexSymSystem& sys, double alpha,
                                             double omega) {
  require_dense_size(sys.n(), "iteration matrices");
  const DenseComplexMatrix w = sys.W().to_dense().cast<Complex>();
  const DenseComplexMatrix s = kI * sys.T().to_dense().cast<Complex>();
  return build_iteration_matrices(w, s, alpha, omega);
}

IterationMatrixPair build_iteration_matrices(const DenseComplexMatrix& w,
                                             const DenseComplexMatrix& s, double alpha,
                                             double omega) {
  const Index n = w.rows();
  if (w.cols() != n || s.rows() != n || s.cols() != n) {
    throw DimensionError("iteration matrices need square W and S of equal size");
  }
  require_dense_size(n, "iteration matrices");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");

  const DenseComplexMatrix a_i = identity(n, alpha);
  const Eigen::PartialPivLU<DenseComplexMatrix> lu_w(a_i + w);
  const Eigen::PartialPivLU<DenseComplexMatrix> lu_s(a_i + s);

  IterationMatrixPair out;
  out.alpha = alpha;
  out.omega = omega;
  out.T_alpha = lu_s.solve(((a_i - w) * lu_w.solve(a_i - s)).eval());
  const DenseComplexMatrix inner =
      identity(n, alpha * alpha) + w * s - Complex((1.0 - omega) * alpha) * (w + s);
  out.M_alpha_omega = lu_s.solve(lu_w.solve(inner).eval());
  return out;
}

DenseComplexMatrix iteration_matrix(const TwoStageSplitting& splitting) {
  const Index n = splitting.system.rows();
  require_dense_size(n, "iteration matrix");
  const HalfStep& h1 = splitting.first;
  const HalfStep& h2 = splitting.second;
  auto dense_or_zero = [n](const SparseComplex& m) -> DenseComplexMatrix {
    return m.rows() == 0 ? DenseComplexMatrix::Zero(n, n) : m.to_dense();
  };
  const Eigen::PartialPivLU<DenseComplexMatrix> lu1(h1.coefficient.to_dense());
  const Eigen::PartialPivLU<DenseComplexMatrix> lu2(h2.coefficient.to_dense());
  const DenseComplexMatrix half = lu1.solve(dense_or_zero(h1.on_previous));
  return lu2.solve((dense_or_zero(h2.on_previous) + dense_or_zero(h2.on_half) * half).eval());
}

double spectral_radius(const DenseComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("spectral radius needs a square matrix");
  require_dense_size(m.rows(), "spectral radius");
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<DenseComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

RadiusSearch search_alpha_by_radius(const ComplexSymSystem& sys, const SplitParams& base,
                                    std::span<const double> alpha_grid) {
  if (sys.n() > kRadiusSearchLimit) {
    throw SizeLimitError("radius search is limited to n <= " + std::to_string(kRadiusSearchLimit));
  }
  if (alpha_grid.empty()) throw ContractError("alpha grid is empty");
  RadiusSearch out;
  for (double a : alpha_grid) {
    SplitParams p = base;
    p.alpha = a;
    const double rho = spectral_radius(iteration_matrix(make_splitting(sys, p)));
    out.samples.push_back({a, rho});
  }
  out.best = out.samples.front();
  for (const auto& s : out.samples) {
    if (s.rho < out.best.rho || (s.rho == out.best.rho && s.alpha < out.best.alpha)) out.best = s;
  }
  return out;
}

SystemCheck check_system(const ComplexSymSystem& sys) {
  SystemCheck out;
  out.w = eig_extremes_spd(sys.W());
  const Index n = sys.n();
  double t_max = 0.0;
  if (n <= kDenseSpectrumLimit) {
    const RealVector ev = symmetric_eigenvalues(sys.T());
    out.t_min = ev[0];
    t_max = std::max(std::abs(ev[0]), std::abs(ev[n - 1]));
  } else {
    const Eigen::SparseMatrix<double> a = to_eigen(sys.T().matrix());
    const RitzExtremes r = lanczos(
        [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x; }, n, 1e-8, true, true);
    out.t_min = r.smallest;
    t_max = std::max(std::abs(r.smallest), std::abs(r.largest));
  }
  out.t_psd = out.t_min >= -1e-12 * std::max(t_max, 1.0);
  return out;
}

}  // namespace gadi
