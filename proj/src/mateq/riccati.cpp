#include "gadi/mateq/riccati.hpp"

#include <chrono>
#include <cmath>

#include "gadi/linalg/dense.hpp"
#include "gadi/mateq/lift_common.hpp"

namespace gadi {

DenseComplexMatrix RiccatiProblem::A() const {
  return W.to_dense().cast<Complex>() + kI * T.to_dense().cast<Complex>();
}

void RiccatiProblem::validate() const {
  const Index n = W.n();
  if (T.n() != n || G.rows() != n || G.cols() != n || Q.rows() != n || Q.cols() != n) {
    throw DimensionError("Riccati problem: W, T, G and Q must share the dimension");
  }
  if (!detail::is_hermitian_matrix(G)) throw ContractError("Riccati problem: G is not Hermitian");
  if (!detail::is_hermitian_matrix(Q)) throw ContractError("Riccati problem: Q is not Hermitian");
}

NewtonState make_newton_state(const RiccatiProblem& p, DenseComplexMatrix x, int k) {
  if (x.rows() != p.n() || x.cols() != p.n()) throw DimensionError("X_k has the wrong shape");
  NewtonState s;
  s.k = k;
  s.A_k = p.A() - p.G * x;
  s.Q_k = -(x * p.G * x) - p.Q;
  s.X = std::move(x);
  return s;
}

SparseComplex NewtonLift::S_k() const {
  const Index m = W_k.n();
  SparseBuilder b(m, m);
  b.add(kI, T_k);
  if (G_k.rows() != 0) b.add(-1.0, G_k);
  return b.build();
}

SparseComplex NewtonLift::matrix() const {
  const Index m = W_k.n();
  return SparseBuilder(m, m).add(1.0, W_k).add(1.0, S_k()).build();
}

NewtonLift build_newton_lift(const NewtonState& state, const RiccatiProblem& p,
                             LiftOrientation orientation, NewtonLiftForm form) {
  const Index n = p.n();
  if (n > kNewtonLiftLimit) {
    throw SizeLimitError("Newton lift is limited to n <= " + std::to_string(kNewtonLiftLimit));
  }
  const LyapunovLift base = lift_lyapunov({p.W, p.T, state.Q_k}, orientation);
  NewtonLift out;
  out.W_k = base.W_tilde;
  out.T_k = base.T_tilde;
  out.q_k = base.q;
  out.orientation = orientation;
  out.form = form;

  const SparseComplex eye = SparseComplex::identity(n);
  const DenseComplexMatrix gx = p.G * state.X;
  const Index m = n * n;
  if (form == NewtonLiftForm::derived) {
    out.G_k = SparseBuilder(m, m)
                  .add(1.0, kron(eye, SparseComplex::from_dense(gx.adjoint())))
                  .add(1.0, kron(SparseComplex::from_dense(gx.transpose()), eye))
                  .build();
  } else {
    const SparseComplex xg = SparseComplex::from_dense(state.X * p.G);
    out.G_k = SparseBuilder(m, m).add(1.0, kron(xg, eye)).add(1.0, kron(eye, xg)).build();
  }
  return out;
}

NewtonLift build_newton_lift(const NewtonState& state, const RiccatiProblem& p) {
  p.validate();
  for (NewtonLiftForm form : {NewtonLiftForm::derived, NewtonLiftForm::printed}) {
    for (LiftOrientation o : {LiftOrientation::printed, LiftOrientation::column_stacked}) {
      NewtonLift lift = build_newton_lift(state, p, o, form);
      if (detail::reproduces(lift.matrix(), state.A_k)) {
        lift.validated = true;
        return lift;
      }
    }
  }
  throw ConsistencyError("no Newton lift reproduces A_k^* X + X A_k");
}

DenseComplexMatrix newton_initial_guess(const RiccatiProblem& p, const NewtonConfig& cfg) {
  p.validate();
  const Index n = p.n();
  const double beta = 1.0 + norm_inf(p.A());
  const double sign = cfg.start == NewtonStart::shifted_lyapunov ? 2.0 : -2.0;
  const LyapunovProblem shifted{
      detail::combine(p.W, 1.0, SparseRealSym::identity(n), beta), p.T, sign * p.Q};
  SplitParams params;
  params.alpha = lyapunov_optimal_alpha(shifted);
  params.omega = cfg.omega;
  SolveConfig sc;
  sc.outer_tol = cfg.inner_rel_tol;
  sc.max_outer = cfg.l_max;
  sc.inner = cfg.inner;
  MatrixSolveResult r = solve_lyapunov_gadi(shifted, params, sc);
  if (!r.report.converged) {
    throw NewtonError("shifted Lyapunov initializer did not converge (RES " +
                          std::to_string(r.report.final_res) + ")",
                      0);
  }
  return std::move(r.X);
}

NewtonResult newton_gadi_riccati(const RiccatiProblem& p, const NewtonConfig& cfg) {
  p.validate();
  const auto start = std::chrono::steady_clock::now();
  const Index n = p.n();
  if (cfg.initial_guess &&
      (cfg.initial_guess->rows() != n || cfg.initial_guess->cols() != n)) {
    throw DimensionError("initial guess has the wrong shape");
  }

  NewtonResult out;
  out.X = cfg.initial_guess ? *cfg.initial_guess : newton_initial_guess(p, cfg);
  double res = riccati_residual(p, out.X);
  out.residual_history.push_back(res);
  // W_k is the same lift of W at every step, so its alpha~ is too.
  const double alpha = cfg.alpha ? *cfg.alpha : lyapunov_optimal_alpha({p.W, p.T, p.Q});

  while (!(res < cfg.outer_tol) && out.outer_iterations < cfg.k_max) {
    const int k = out.outer_iterations + 1;
    SolveResult inner;
    try {
      const NewtonState state = make_newton_state(p, out.X, out.outer_iterations);
      const NewtonLift lift = build_newton_lift(state, p);
      const TwoStageSplitting splitting = make_gadi_splitting(
          lift.W_k.matrix(), lift.S_k(), alpha, cfg.omega, SubsystemKind::general);
      SolveConfig sc;
      sc.outer_tol = cfg.inner_rel_tol;
      sc.max_outer = cfg.l_max;
      sc.inner = cfg.inner;
      sc.initial_guess = vec(out.X);
      inner = run_splitting(splitting, lift.q_k, sc);
    } catch (const SolveError& e) {
      throw NewtonError(e.what(), k);
    } catch (const NumericalError& e) {
      throw NewtonError(e.what(), k);
    } catch (const UndefinedDenominatorError& e) {
      throw NewtonError(e.what(), k);
    }
    out.cumulative_inner_iterations += inner.report.iterations;
    out.inner_reports.push_back(std::move(inner.report));
    out.X = unvec(inner.x, n, n);
    out.outer_iterations = k;
    res = riccati_residual(p, out.X);
    out.residual_history.push_back(res);
    if (!std::isfinite(res)) break;
  }
  out.converged = res < cfg.outer_tol;
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double riccati_residual(const RiccatiProblem& p, const DenseComplexMatrix& x) {
  p.validate();
  if (x.rows() != p.n() || x.cols() != p.n()) throw DimensionError("X has the wrong shape");
  const double qn = norm2(p.Q);
  if (qn == 0.0) throw UndefinedDenominatorError("Riccati residual undefined for Q = 0");
  const DenseComplexMatrix a = p.A();
  return norm2(a.adjoint() * x + x * a + p.Q - x * p.G * x) / qn;
}

}  // namespace gadi
