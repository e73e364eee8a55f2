#include "gadi/mateq/lyapunov.hpp"

#include <cmath>
#include <random>

#include "gadi/linalg/dense.hpp"
#include "gadi/mateq/lift_common.hpp"
#include "gadi/spectral/spectral.hpp"

namespace gadi {

namespace detail {

SparseRealSym combine(const SparseRealSym& a, double ca, const SparseRealSym& b, double cb) {
  std::vector<Triplet<double>> entries;
  for (const auto& t : a.matrix().to_triplets()) entries.push_back({t.row, t.col, ca * t.value});
  for (const auto& t : b.matrix().to_triplets()) entries.push_back({t.row, t.col, cb * t.value});
  return SparseRealSym::from_triplets(a.n(), std::move(entries));
}

DenseComplexMatrix seeded_matrix(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseComplexMatrix x(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) x(i, j) = Complex(u(rng), u(rng));
  }
  return x;
}

bool reproduces(const SparseComplex& lifted, const DenseComplexMatrix& a) {
  const Index n = a.rows();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const DenseComplexMatrix x = seeded_matrix(n, seed);
    const ComplexVector expected = vec(a.adjoint() * x + x * a);
    const double scale = std::max(expected.norm(), 1e-300);
    if ((lifted.apply(vec(x)) - expected).norm() > 1e-10 * scale) return false;
  }
  return true;
}

bool is_hermitian_matrix(const DenseComplexMatrix& m) {
  const double scale = m.norm();
  return (m - m.adjoint()).norm() <= 1e-13 * scale;
}

}  // namespace detail

DenseComplexMatrix LyapunovProblem::A() const {
  return W.to_dense().cast<Complex>() + kI * T.to_dense().cast<Complex>();
}

void LyapunovProblem::validate() const {
  if (T.n() != W.n() || Q.rows() != W.n() || Q.cols() != W.n()) {
    throw DimensionError("Lyapunov problem: W, T and Q must share the dimension");
  }
  if (!detail::is_hermitian_matrix(Q)) throw ContractError("Lyapunov problem: Q is not Hermitian");
}

SparseComplex LyapunovLift::matrix() const {
  const Index m = W_tilde.n();
  return SparseBuilder(m, m).add(1.0, W_tilde).add(kI, T_tilde).build();
}

LyapunovLift lift_lyapunov(const LyapunovProblem& p, LiftOrientation orientation) {
  const Index n = p.n();
  if (p.T.n() != n || p.Q.rows() != n || p.Q.cols() != n) {
    throw DimensionError("Lyapunov problem: W, T and Q must share the dimension");
  }
  if (n > kLyapunovLiftLimit) {
    throw SizeLimitError("Lyapunov lift is limited to n <= " + std::to_string(kLyapunovLiftLimit));
  }
  const SparseRealSym eye = SparseRealSym::identity(n);
  LyapunovLift out;
  out.orientation = orientation;
  out.W_tilde = detail::combine(kron(p.W, eye), 1.0, kron(eye, p.W), 1.0);
  const double sign = orientation == LiftOrientation::column_stacked ? 1.0 : -1.0;
  out.T_tilde = detail::combine(kron(p.T, eye), sign, kron(eye, p.T), -sign);
  out.q = vec(p.Q);
  return out;
}

LyapunovLift lift_lyapunov(const LyapunovProblem& p) {
  p.validate();
  const DenseComplexMatrix a = p.A();
  for (LiftOrientation o : {LiftOrientation::printed, LiftOrientation::column_stacked}) {
    LyapunovLift lift = lift_lyapunov(p, o);
    if (detail::reproduces(lift.matrix(), a)) {
      lift.validated = true;
      return lift;
    }
  }
  throw ConsistencyError("no lift orientation reproduces A^* X + X A");
}

namespace {

MatrixSolveResult solve_lifted(const LyapunovProblem& p, SplitParams params, Method method,
                               const SolveConfig& cfg) {
  const LyapunovLift lift = lift_lyapunov(p);
  const ComplexSymSystem sys(lift.W_tilde, lift.T_tilde, lift.q);
  params.method = method;
  SolveResult r = run_stationary(sys, params, cfg);
  return {unvec(r.x, p.n(), p.n()), std::move(r.report)};
}

}  // namespace

MatrixSolveResult solve_lyapunov_gadi(const LyapunovProblem& p, const SplitParams& params,
                                      const SolveConfig& cfg) {
  return solve_lifted(p, params, Method::gadi, cfg);
}

MatrixSolveResult solve_lyapunov_hss(const LyapunovProblem& p, const SplitParams& params,
                                     const SolveConfig& cfg) {
  return solve_lifted(p, params, Method::hss, cfg);
}

double lyapunov_residual(const LyapunovProblem& p, const DenseComplexMatrix& x) {
  p.validate();
  if (x.rows() != p.n() || x.cols() != p.n()) throw DimensionError("X has the wrong shape");
  const double qn = p.Q.norm();
  if (qn == 0.0) throw UndefinedDenominatorError("Lyapunov residual undefined for Q = 0");
  const DenseComplexMatrix a = p.A();
  return (p.Q - a.adjoint() * x - x * a).norm() / qn;
}

double lyapunov_optimal_alpha(const LyapunovProblem& p) {
  // The eigenvalues of W (x) I + I (x) W are the pairwise sums of those of W.
  const SpectrumSummary s = eig_extremes_spd(p.W);
  return optimal_alpha({2.0 * s.gamma_min, 2.0 * s.gamma_max, s.method, s.estimate_tol});
}

}  // namespace gadi
