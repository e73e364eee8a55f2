#include <gtest/gtest.h>

#include <cmath>

#include "gadi/errors.hpp"
#include "gadi/linalg/dense.hpp"
#include "gadi/spectral/spectral.hpp"
#include "gadi/splitting/splitting.hpp"
#include "support/oracles.hpp"

using namespace gadi;
using oracle::Rng;

namespace {

using Dense = DenseComplexMatrix;

ComplexSymSystem scalar_system(double w, double t, Complex b) {
  return ComplexSymSystem(SparseRealSym::identity(1, w), SparseRealSym::identity(1, t),
                          ComplexVector::Constant(1, b));
}

SplitParams params(Method m, double alpha, double omega = 0.01) {
  SplitParams p;
  p.method = m;
  p.alpha = alpha;
  p.omega = omega;
  return p;
}

// One sweep of each method written out with dense solves, straight from the
// two half-step equations.
ComplexVector dense_step(const ComplexSymSystem& sys, const SplitParams& p, const ComplexVector& x) {
  const Index n = sys.n();
  const Dense I = Dense::Identity(n, n);
  const Dense W = sys.W().to_dense().cast<Complex>();
  const Dense T = sys.T().to_dense().cast<Complex>();
  const Dense V = p.V ? Dense(p.V->to_dense().cast<Complex>()) : I;
  const ComplexVector& b = sys.b();
  const double a = p.alpha, w = p.omega;
  const Complex i(0, 1);
  auto solve = [](const Dense& m, const ComplexVector& r) -> ComplexVector { return m.fullPivLu().solve(r); };
  switch (p.method) {
    case Method::gadi: {
      const ComplexVector h = solve(a * I + W, (a * I - i * T) * x + b);
      return solve(a * I + i * T, (i * T - (1 - w) * a * I) * x + (2 - w) * a * h);
    }
    case Method::gadi_real: {
      const ComplexVector h = solve(a * I + W, (a * I - T) * x + b);
      return solve(a * I + T, (T - (1 - w) * a * I) * x + (2 - w) * a * h);
    }
    case Method::hss: {
      const ComplexVector h = solve(a * I + W, (a * I - i * T) * x + b);
      return solve(a * I + i * T, (a * I - W) * h + b);
    }
    case Method::mhss:
    case Method::pmhss: {
      const ComplexVector h = solve(a * V + W, (a * V - i * T) * x + b);
      return solve(a * V + T, (a * V + i * W) * h - i * b);
    }
    case Method::cri: {
      const ComplexVector h = solve(a * T + W, (a - i) * T * x + b);
      return solve(a * W + T, (a + i) * W * h - i * b);
    }
    case Method::tscsp: {
      const ComplexVector h = solve(a * W + T, i * (W - a * T) * x + (a - i) * b);
      return solve(a * T + W, i * (a * W - T) * h + (1.0 - i * a) * b);
    }
  }
  return {};
}

// Closed-form iteration matrices of the comparison methods.
Dense closed_form_iteration(const ComplexSymSystem& sys, const SplitParams& p) {
  const Index n = sys.n();
  const Dense I = Dense::Identity(n, n);
  const Dense W = sys.W().to_dense().cast<Complex>();
  const Dense T = sys.T().to_dense().cast<Complex>();
  const Dense V = p.V ? Dense(p.V->to_dense().cast<Complex>()) : I;
  const double a = p.alpha, w = p.omega;
  const Complex i(0, 1);
  auto inv = [](const Dense& m) -> Dense { return m.fullPivLu().inverse(); };
  switch (p.method) {
    case Method::gadi:
      return inv(a * I + i * T) * inv(a * I + W) *
             (a * a * I + i * W * T - (1 - w) * a * (W + i * T));
    case Method::gadi_real:
      return inv(a * I + T) * inv(a * I + W) * (a * a * I + W * T - (1 - w) * a * (W + T));
    case Method::hss:
      return inv(a * I + i * T) * (a * I - W) * inv(a * I + W) * (a * I - i * T);
    case Method::mhss:
    case Method::pmhss:
      return inv(a * V + T) * (a * V + i * W) * inv(a * V + W) * (a * V - i * T);
    case Method::cri:
      return inv(a * W + T) * ((a + i) * W) * inv(a * T + W) * ((a - i) * T);
    case Method::tscsp:
      return inv(a * T + W) * (i * (a * W - T)) * inv(a * W + T) * (i * (W - a * T));
  }
  return {};
}

SplitParams random_params(Rng& rng, Method m, const ComplexSymSystem& sys) {
  SplitParams p = params(m, rng.uniform(0.2, 5.0), rng.uniform(0.0, 1.9));
  if (m == Method::pmhss) p.V = sys.W();
  return p;
}

}  // namespace

TEST(ScalarStep, HandEvaluatedSweeps) {
  const auto sys = scalar_system(2, 1, 1);
  const ComplexVector x0 = ComplexVector::Zero(1);
  auto one = [&](SplitParams p) { return step(sys, p, x0)(0); };
  const Complex i(0, 1);
  EXPECT_LE(std::abs(one(params(Method::gadi, 1, 1)) - (1.0 - i) / 6.0), 1e-15);
  EXPECT_LE(std::abs(one(params(Method::hss, 1)) - (1.0 - i) / 3.0), 1e-15);
  EXPECT_LE(std::abs(one(params(Method::mhss, 1)) - (1.0 - i) / 6.0), 1e-15);
  SplitParams pm = params(Method::pmhss, 1);
  pm.V = sys.W();
  EXPECT_LE(std::abs(one(pm) - (1.0 - i) / 6.0), 1e-15);
  EXPECT_LE(std::abs(one(params(Method::cri, 1)) - (2.0 - i) / 9.0), 1e-15);
  EXPECT_LE(std::abs(one(params(Method::tscsp, 1)) - (4.0 - 2.0 * i) / 9.0), 1e-15);
}

TEST(ScalarStep, RealVariantSolvesInOneSweep) {
  const SparseRealSym w = SparseRealSym::identity(1, 2.0), t = SparseRealSym::identity(1, 1.0);
  const RealVector x1 = step_gadi_real(w, t, RealVector::Constant(1, 3.0),
                                       params(Method::gadi_real, 1, 0), RealVector::Zero(1));
  EXPECT_NEAR(x1(0), 1.0, 1e-15);
}

TEST(Step, NamedEntryPointsCheckTheMethod) {
  Rng rng(1);
  const auto sys = oracle::random_system(rng, 3);
  const ComplexVector x = ComplexVector::Zero(3);
  EXPECT_THROW(step_gadi(sys, params(Method::hss, 1), x), ContractError);
  EXPECT_THROW(step_cri(sys, params(Method::gadi, 1), x), ContractError);
  EXPECT_EQ(step_tscsp(sys, params(Method::tscsp, 1), x), step(sys, params(Method::tscsp, 1), x));
}

TEST(Step, MatchesDenseTwoStageEvaluation) {
  Rng rng(2);
  for (Method m : kAllMethods) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto sys = oracle::random_system(rng, rng.integer(2, 6));
      const SplitParams p = random_params(rng, m, sys);
      const ComplexVector x = oracle::complex_vector(rng, sys.n());
      const ComplexVector ref = dense_step(sys, p, x);
      EXPECT_LE(oracle::rel_err(step(sys, p, x), ref), 1e-12) << method_name(m);
    }
  }
}

TEST(Step, RealVariantMatchesDenseOracle) {
  Rng rng(3);
  const auto sys = oracle::random_system(rng, 3);
  RealVector b(3), x(3);
  for (Index k = 0; k < 3; ++k) b(k) = rng.uniform(-1, 1), x(k) = rng.uniform(-1, 1);
  const ComplexSymSystem real_sys(sys.W(), sys.T(), b.cast<Complex>());
  const SplitParams p = params(Method::gadi_real, 0.7, 0.3);
  const RealVector got = step_gadi_real(sys.W(), sys.T(), b, p, x);
  const ComplexVector ref = dense_step(real_sys, p, x.cast<Complex>());
  EXPECT_LE((got.cast<Complex>() - ref).norm() / ref.norm(), 1e-12);
}

TEST(Step, ExactSolutionIsAFixedPoint) {
  Rng rng(4);
  for (Method m : kAllMethods) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto sys = oracle::random_system(rng, rng.integer(1, 32));
      const SplitParams p = random_params(rng, m, sys);
      const ComplexVector xs = oracle::direct_solve(
          system_matrix(sys, m).to_dense(), sys.b());
      EXPECT_LE(oracle::rel_err(step(sys, p, xs), xs), 1e-11) << method_name(m);
    }
  }
}

TEST(Step, OneStepLinearityMatchesClosedFormIterationMatrix) {
  Rng rng(5);
  for (Method m : kAllMethods) {
    const auto sys = oracle::random_system(rng, 5);
    const SplitParams p = random_params(rng, m, sys);
    const Index n = sys.n();
    const ComplexVector c = step(sys, p, ComplexVector::Zero(n));
    Dense extracted(n, n);
    for (Index j = 0; j < n; ++j) {
      extracted.col(j) = step(sys, p, ComplexVector::Unit(n, j)) - c;
    }
    const Dense ref = closed_form_iteration(sys, p);
    EXPECT_LE((extracted - ref).cwiseAbs().maxCoeff(), 1e-11) << method_name(m);
  }
}

TEST(Step, GadiAndHssMatchSpectralModuleMatrices) {
  Rng rng(6);
  const auto sys = oracle::random_system(rng, 6);
  const double alpha = 1.3, omega = 0.4;
  const auto pair = build_iteration_matrices(sys, alpha, omega);
  for (auto [m, ref] : {std::pair{Method::gadi, pair.M_alpha_omega}, std::pair{Method::hss, pair.T_alpha}}) {
    const SplitParams p = params(m, alpha, omega);
    const ComplexVector c = step(sys, p, ComplexVector::Zero(6));
    Dense extracted(6, 6);
    for (Index j = 0; j < 6; ++j) extracted.col(j) = step(sys, p, ComplexVector::Unit(6, j)) - c;
    EXPECT_LE((extracted - ref).cwiseAbs().maxCoeff(), 1e-11) << method_name(m);
  }
}

TEST(Step, PmhssWithIdentityIsMhss) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = oracle::random_system(rng, 4);
    const ComplexVector x = oracle::complex_vector(rng, 4);
    SplitParams pm = params(Method::pmhss, rng.uniform(0.1, 5));
    pm.V = SparseRealSym::identity(4);
    const SplitParams mh = params(Method::mhss, pm.alpha);
    EXPECT_LE((step(sys, pm, x) - step(sys, mh, x)).norm(), 1e-13);
    pm.V.reset();
    EXPECT_LE((step(sys, pm, x) - step(sys, mh, x)).norm(), 1e-13);
  }
}

TEST(Params, Validation) {
  EXPECT_THROW(params(Method::gadi, 0.0).validate(2), ContractError);
  EXPECT_THROW(params(Method::gadi, -1.0).validate(2), ContractError);
  EXPECT_THROW(params(Method::gadi, 1.0, 2.0).validate(2), ContractError);
  EXPECT_THROW(params(Method::gadi, 1.0, -0.1).validate(2), ContractError);
  EXPECT_NO_THROW(params(Method::gadi, 1.0, 0.0).validate(2));
  SplitParams p = params(Method::pmhss, 1.0);
  p.V = SparseRealSym::from_dense((DenseRealMatrix(2, 2) << 1, 2, 2, 1).finished());
  EXPECT_THROW(p.validate(2), ContractError);
  p.V = SparseRealSym::identity(3);
  EXPECT_THROW(p.validate(2), ContractError);
}

TEST(Params, MethodNames) {
  for (Method m : kAllMethods) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_EQ(parse_method("gadi_real"), Method::gadi_real);
  EXPECT_EQ(parse_method("Tscsp"), Method::tscsp);
  EXPECT_FALSE(parse_method("gmres"));
}

TEST(System, ShapesAreChecked) {
  EXPECT_THROW(ComplexSymSystem(SparseRealSym::identity(2), SparseRealSym::identity(3),
                                ComplexVector::Ones(2)),
               DimensionError);
  EXPECT_THROW(ComplexSymSystem(SparseRealSym::identity(2), SparseRealSym::identity(2),
                                ComplexVector::Ones(3)),
               DimensionError);
}

TEST(Driver, GadiConvergesForAnyAdmissibleParameters) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.integer(2, 16);
    const auto sys = oracle::random_system(rng, n);
    const SplitParams p = params(Method::gadi, rng.uniform(1e-3, 10.0), rng.uniform(0.0, 2.0 - 1e-9));
    const double rho = oracle::radius(build_iteration_matrices(sys, p.alpha, p.omega).M_alpha_omega);
    ASSERT_LT(rho, 1.0);
    SolveConfig cfg;
    cfg.outer_tol = 1e-8;
    // Enough sweeps for rho^k to fall well below the tolerance.
    cfg.max_outer = static_cast<int>(std::ceil(std::log(1e-14) / std::log(rho))) + 100;
    cfg.inner = InnerSolveSettings::exact();
    const SolveResult r = run_stationary(sys, p, cfg);
    EXPECT_TRUE(r.report.converged) << "n=" << n << " alpha=" << p.alpha << " omega=" << p.omega
                                    << " rho=" << rho << " RES=" << r.report.final_res;
  }
}

TEST(Driver, HistoryIntegrity) {
  Rng rng(9);
  const auto sys = oracle::random_system(rng, 8);
  SolveConfig cfg;
  cfg.outer_tol = 1e-9;
  cfg.initial_guess = oracle::complex_vector(rng, 8);
  const SolveResult r = run_stationary(sys, params(Method::gadi, 1.0), cfg);
  ASSERT_EQ(r.report.residual_history.size(), static_cast<std::size_t>(r.report.iterations) + 1);
  EXPECT_EQ(r.report.residual_history.front().res,
            rel_residual(sys.matrix(), *cfg.initial_guess, sys.b()));
  for (std::size_t k = 0; k < r.report.residual_history.size(); ++k) {
    EXPECT_EQ(r.report.residual_history[k].iteration, static_cast<int>(k));
  }
  EXPECT_EQ(r.report.final_res, r.report.residual_history.back().res);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.final_res, cfg.outer_tol);
}

TEST(Driver, ExactInitialGuessNeedsNoSweeps) {
  Rng rng(10);
  const auto sys = oracle::random_system(rng, 6);
  SolveConfig cfg;
  cfg.initial_guess = oracle::direct_solve(oracle::dense_a(sys), sys.b());
  const SolveResult r = run_stationary(sys, params(Method::hss, 1.0), cfg);
  EXPECT_EQ(r.report.iterations, 0);
  EXPECT_LE(r.report.final_res, 1e-12);
  EXPECT_EQ(r.report.residual_history.size(), 1u);
}

TEST(Driver, IterationCapIsReportedNotThrown) {
  Rng rng(11);
  const auto sys = oracle::random_system(rng, 10);
  SolveConfig cfg;
  cfg.outer_tol = 1e-14;
  cfg.max_outer = 3;
  const SolveResult r = run_stationary(sys, params(Method::gadi, 1.0), cfg);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.iterations, 3);
  EXPECT_EQ(r.report.residual_history.size(), 4u);
}

TEST(Driver, InnerFailureCarriesPartialHistory) {
  Rng rng(12);
  const auto sys = oracle::random_system(rng, 40, 1e-3);
  SolveConfig cfg;
  cfg.outer_tol = 1e-12;
  cfg.inner = InnerSolveSettings::iterative();
  cfg.inner.max_inner = 1;
  cfg.inner.eta = 1e-14;
  try {
    run_stationary(sys, params(Method::gadi, 0.5), cfg);
    FAIL() << "expected SolveError";
  } catch (const SolveError& e) {
    EXPECT_EQ(e.half_step(), 1);
    EXPECT_EQ(e.partial_report().residual_history.size(),
              static_cast<std::size_t>(e.partial_report().iterations) + 1);
  }
}

TEST(Driver, IterativeInnerModeAgreesWithExact) {
  Rng rng(13);
  const auto sys = oracle::random_system(rng, 30);
  const ComplexVector xs = oracle::direct_solve(oracle::dense_a(sys), sys.b());
  for (Method m : {Method::gadi, Method::hss, Method::mhss, Method::cri}) {
    SolveConfig cfg;
    cfg.outer_tol = 1e-10;
    cfg.inner = InnerSolveSettings::iterative();
    const SolveResult r = run_stationary(sys, params(m, 1.0), cfg);
    EXPECT_TRUE(r.report.converged) << method_name(m);
    EXPECT_GT(r.report.inner_iteration_total, 0) << method_name(m);
    EXPECT_LE(oracle::rel_err(r.x, xs), 1e-8) << method_name(m);
  }
}

TEST(Driver, RejectsBadConfig) {
  Rng rng(14);
  const auto sys = oracle::random_system(rng, 3);
  SolveConfig cfg;
  cfg.outer_tol = 0.0;
  EXPECT_THROW(run_stationary(sys, params(Method::gadi, 1.0), cfg), ContractError);
  EXPECT_THROW(run_stationary(sys, params(Method::gadi, -1.0), SolveConfig{}), ContractError);
}
