// Acceptance run: one PASS/FAIL line per criterion, with the measured values.
// Criterion 6 is a soft reproduction target; its failures are reported but
// only affect the exit status under --strict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gadi/bench/csv.hpp"
#include "gadi/bench/presets.hpp"
#include "gadi/errors.hpp"
#include "gadi/linalg/dense.hpp"
#include "gadi/mateq/lyapunov.hpp"
#include "gadi/mateq/riccati.hpp"
#include "gadi/problems/generators.hpp"
#include "gadi/spectral/spectral.hpp"
#include "support/oracles.hpp"

using namespace gadi;
using oracle::Rng;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAIL]");
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Algorithm kStationary[] = {Algorithm::gadi,    Algorithm::gadi_real, Algorithm::hss,
                                 Algorithm::mhss,    Algorithm::pmhss_w,   Algorithm::pmhss_i,
                                 Algorithm::cri,     Algorithm::tscsp};

SplitParams params_for(const ComplexSymSystem& sys, Algorithm a) {
  SplitParams p;
  p.method = stationary_method(a);
  p.alpha = reference_alpha(GeneratedProblem(sys), a);
  p.omega = 0.01;
  if (a == Algorithm::pmhss_w) p.V = sys.W();
  return p;
}

// Reference solution of the system the method iterates on.
ComplexVector reference_solution(const ComplexSymSystem& sys, Method m) {
  return oracle::direct_solve(system_matrix(sys, m).to_dense(), sys.b());
}

Outcome ac1() {
  Outcome o;
  Rng rng(kSeed + 1);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexSymSystem sys = oracle::random_system(rng, rng.integer(2, 64));
    for (Algorithm a : kStationary) {
      const SplitParams p = params_for(sys, a);
      SolveConfig cfg;
      cfg.outer_tol = 1e-10;
      cfg.max_outer = 20000;
      const SolveResult r = run_stationary(sys, p, cfg);
      const double err = oracle::rel_err(r.x, reference_solution(sys, p.method));
      worst = std::max(worst, err);
      if (!r.report.converged || !(err <= 1e-8)) ++failures;
    }
  }
  const double secs = seconds_since(t0);
  o.require(failures == 0, fmt("%d/800 solves outside tolerance, worst error %.2e", failures, worst));
  o.require(secs < 60.0, fmt("%.1f s", secs));
  return o;
}

struct TheoryInstance {
  ComplexSymSystem sys;
  double alpha;
};

std::vector<TheoryInstance> theory_instances() {
  Rng rng(kSeed + 2);
  std::vector<TheoryInstance> out;
  for (int i = 0; i < 50; ++i) {
    const Index n = rng.integer(1, 16);
    const double alpha = 10.0 * (1.0 - rng.uniform(0.0, 1.0));  // (0, 10]
    out.push_back({oracle::random_system(rng, n, 0.0), alpha});
  }
  return out;
}

Outcome ac2() {
  Outcome o;
  double worst_slack = 1.0, worst_sigma = 0.0, worst_unit = 0.0;
  for (const auto& [sys, alpha] : theory_instances()) {
    const auto pair = build_iteration_matrices(sys, alpha, 0.0);
    const RealVector ev = symmetric_eigenvalues(sys.W());
    const double sigma = sigma_bound(alpha, std::span<const double>(ev.data(), ev.size()));
    worst_slack = std::min(worst_slack, sigma - spectral_radius(pair.T_alpha));
    worst_sigma = std::max(worst_sigma, sigma);
    const Index n = sys.n();
    const DenseComplexMatrix it = Complex(0, 1) * sys.T().to_dense().cast<Complex>();
    const DenseComplexMatrix aI = alpha * DenseComplexMatrix::Identity(n, n);
    const DenseComplexMatrix cayley = (aI - it) * (aI + it).inverse();
    worst_unit = std::max(worst_unit, std::abs(norm2(cayley) - 1.0));
  }
  o.require(worst_slack >= -1e-10, fmt("min sigma - rho %.2e", worst_slack));
  o.require(worst_sigma < 1.0, fmt("max sigma %.6f", worst_sigma));
  o.require(worst_unit <= 1e-10, fmt("unimodular factor deviation %.2e", worst_unit));
  return o;
}

Outcome ac3() {
  Outcome o;
  double worst_rel = 0.0, worst_rho = 0.0;
  for (const auto& [sys, alpha] : theory_instances()) {
    for (double omega : {0.0, 0.5, 1.0, 1.9}) {
      const auto pair = build_iteration_matrices(sys, alpha, omega);
      const Index n = sys.n();
      const DenseComplexMatrix affine =
          0.5 * ((2.0 - omega) * pair.T_alpha + omega * DenseComplexMatrix::Identity(n, n));
      worst_rel = std::max(worst_rel, (pair.M_alpha_omega - affine).norm());
      worst_rho = std::max(worst_rho, spectral_radius(pair.M_alpha_omega));
    }
  }
  o.require(worst_rel <= 1e-11, fmt("max ||M - affine(T)||_F %.2e", worst_rel));
  o.require(worst_rho < 1.0, fmt("max rho(M) %.6f", worst_rho));
  return o;
}

Outcome ac4() {
  Outcome o;
  Rng rng(kSeed + 4);
  double e_alpha = 0, e_sigma = 0, e_equal = 0, grid_excess = -1;
  for (int trial = 0; trial < 50; ++trial) {
    const SparseRealSym w = oracle::gram(rng, rng.integer(2, 30), rng.uniform(1e-3, 1.0));
    const SpectrumSummary s = eig_extremes_spd(w, SpectrumMode::dense);
    const double a = optimal_alpha(s);
    e_alpha = std::max(e_alpha, std::abs(a - std::sqrt(s.gamma_min * s.gamma_max)) / a);
    const double kappa = s.gamma_max / s.gamma_min;
    const double closed = (std::sqrt(kappa) - 1) / (std::sqrt(kappa) + 1);
    const RealVector ev = symmetric_eigenvalues(w);
    const std::span<const double> spec(ev.data(), ev.size());
    e_sigma = std::max(e_sigma, std::abs(sigma_bound(a, spec) - closed));
    const double lo = std::abs(a - s.gamma_min) / (a + s.gamma_min);
    const double hi = std::abs(a - s.gamma_max) / (a + s.gamma_max);
    e_equal = std::max(e_equal, std::abs(lo - hi));
    const double best = sigma_bound(a, spec);
    for (int k = 0; k < 100; ++k) {
      const double alpha = s.gamma_min * 0.5 * std::pow(4.0 * kappa, k / 99.0);
      grid_excess = std::max(grid_excess, best - sigma_bound(alpha, spec));
    }
  }
  o.require(e_alpha <= 1e-12, fmt("alpha~ deviation %.2e", e_alpha));
  o.require(e_sigma <= 1e-12, fmt("sigma(alpha~) closed-form deviation %.2e", e_sigma));
  o.require(e_equal <= 1e-12, fmt("endpoint ratio gap %.2e", e_equal));
  o.require(grid_excess <= 1e-12, fmt("max sigma(alpha~) - sigma(grid) %.2e", grid_excess));
  return o;
}

Outcome ac5() {
  Outcome o;
  const double a1 = lyapunov_optimal_alpha(gen_ex31(16, 0.01));
  const double a2 = lyapunov_optimal_alpha(gen_ex31(16, 0.1));
  o.require(std::abs(a1 - 2.6198) <= 5e-4, fmt("t=0.01: %.5f", a1));
  o.require(std::abs(a2 - 3.081) <= 5e-4, fmt("t=0.1: %.5f", a2));
  return o;
}

ProblemSpec spec_of(Family f, Index size, double t = 0.01) {
  ProblemSpec s;
  s.family = f;
  s.size = size;
  s.t = t;
  return s;
}

RunConfig table_config() {
  RunConfig cfg;
  cfg.tol = 1e-5;
  cfg.max_outer = 1000;
  return cfg;
}

const std::vector<double> kOmegaGrid{0.0, 0.01, 0.1, 0.5, 1.0, 1.5};

Outcome ac6() {
  Outcome o;
  const RunConfig cfg = table_config();
  auto swept = [&](const ProblemSpec& spec, Algorithm a, const std::vector<double>& omegas,
                   long limit, const char* name) {
    const auto t0 = std::chrono::steady_clock::now();
    const double ref = reference_alpha(generate(spec), a);
    const SweepTable t = sweep_params(spec, a, default_alpha_grid(ref), omegas, cfg);
    const double secs = seconds_since(t0) / static_cast<double>(t.cells.size());
    o.require(t.best.converged && t.best.it <= limit && secs <= 120.0,
              fmt("%s IT %ld (alpha %.4g, omega %.2g, RES %.2e) <= %ld", name, t.best.it,
                  t.best.alpha, t.best.omega.value_or(0.0), t.best.res, limit));
    return t;
  };
  swept(spec_of(Family::ex241, 8), Algorithm::gadi, kOmegaGrid, 10, "table1 m=8");
  {
    ProblemSpec s = spec_of(Family::ex242, 8);
    swept(s, Algorithm::gadi, kOmegaGrid, 8, "table2 n=64");
  }
  {
    const ProblemSpec s = spec_of(Family::ex31, 16, 0.01);
    const GeneratedProblem p = generate(s);
    std::vector<long> its;
    for (double omega : {0.0, 0.01, 0.1, 0.5, 1.0, 1.5}) {
      its.push_back(run_cell(s, p, Algorithm::gadi, 2.6198, omega, cfg).row.it);
    }
    const long at001 = its[1];
    const long low = std::max({its[0], its[1], its[2]});
    o.require(at001 >= 15 && at001 <= 25, fmt("table3 IT %ld in [15, 25]", at001));
    o.require(its[5] > its[4] && its[4] > its[3] && its[3] > low,
              fmt("table3 omega pattern %ld > %ld > %ld > %ld", its[5], its[4], its[3], low));
  }
  swept(spec_of(Family::ex31, 8, 0.1), Algorithm::gadi, kOmegaGrid, 15, "table4 n=8 t=0.1");
  {
    const ProblemSpec s = spec_of(Family::ex421, 8);
    const auto t0 = std::chrono::steady_clock::now();
    const double ref = reference_alpha(generate(s), Algorithm::newton_gadi);
    std::vector<double> grid;
    for (int k = -4; k <= 4; ++k) grid.push_back(ref * std::pow(2.0, k / 2.0));
    const SweepTable t = sweep_params(s, Algorithm::newton_gadi, grid, {0.01, 0.1, 0.5, 1.0}, cfg);
    const double secs = seconds_since(t0) / static_cast<double>(t.cells.size());
    o.require(t.best.converged && t.best.it <= 50 && t.best.res <= 1e-5 && secs <= 120.0,
              fmt("table5 n=8 cumulative IT %ld (alpha %.4g, omega %.2g, Res %.2e) <= 50",
                  t.best.it, t.best.alpha, t.best.omega.value_or(0.0), t.best.res));
  }
  return o;
}

LyapunovProblem random_lyapunov(Rng& rng, Index n) {
  return {oracle::gram(rng, n, 0.5), oracle::gram(rng, n, 0.0), oracle::hermitian_matrix(rng, n)};
}

RiccatiProblem random_riccati(Rng& rng, Index n) {
  const DenseComplexMatrix c = oracle::complex_matrix(rng, n, n);
  const DenseComplexMatrix d = oracle::complex_matrix(rng, n, n);
  return {oracle::gram(rng, n, 0.5), oracle::gram(rng, n, 0.0),
          DenseComplexMatrix(c * c.adjoint() / double(n)),
          DenseComplexMatrix(d * d.adjoint() / double(n) + DenseComplexMatrix::Identity(n, n))};
}

Outcome ac7() {
  Outcome o;
  Rng rng(kSeed + 7);
  double lyap = 0, newton = 0, lemma3 = 0, lemma4 = 0;
  for (int i = 0; i < 20; ++i) {
    const LyapunovProblem p = random_lyapunov(rng, rng.integer(1, 6));
    const LyapunovLift lift = lift_lyapunov(p);
    const DenseComplexMatrix a = p.A();
    const DenseComplexMatrix x = oracle::complex_matrix(rng, p.n(), p.n());
    const double lhs = (lift.matrix().apply(vec(x)) - lift.q).norm();
    const double rhs = (a.adjoint() * x + x * a - p.Q).norm();
    lyap = std::max(lyap, std::abs(lhs - rhs) / rhs);
  }
  for (int i = 0; i < 20; ++i) {
    const RiccatiProblem p = random_riccati(rng, rng.integer(1, 5));
    const NewtonState s = make_newton_state(p, oracle::hermitian_matrix(rng, p.n()));
    const NewtonLift lift = build_newton_lift(s, p);
    const DenseComplexMatrix x = oracle::complex_matrix(rng, p.n(), p.n());
    const double lhs = (lift.matrix().apply(vec(x)) - lift.q_k).norm();
    const double rhs = (s.A_k.adjoint() * x + x * s.A_k - s.Q_k).norm();
    newton = std::max(newton, std::abs(lhs - rhs) / rhs);
  }
  for (int i = 0; i < 20; ++i) {
    const DenseComplexMatrix a = oracle::complex_matrix(rng, 3, 3);
    const DenseComplexMatrix b = oracle::complex_matrix(rng, 3, 3);
    const DenseComplexMatrix x = oracle::complex_matrix(rng, 3, 3);
    const ComplexVector lhs = vec(a * x * b);
    const ComplexVector rhs = kron(b.transpose(), a) * vec(x);
    lemma3 = std::max(lemma3, (lhs - rhs).norm() / lhs.norm());
    const DenseComplexMatrix I = DenseComplexMatrix::Identity(3, 3);
    const DenseComplexMatrix m = kron(I, a) - kron(b.transpose(), I);
    std::vector<Complex> diffs;
    for (Complex l : oracle::sorted_eigenvalues(a))
      for (Complex mu : oracle::sorted_eigenvalues(b)) diffs.push_back(l - mu);
    lemma4 = std::max(lemma4, oracle::multiset_distance(diffs, oracle::sorted_eigenvalues(m)));
  }
  o.require(lyap <= 1e-12, fmt("Lyapunov lift %.2e", lyap));
  o.require(newton <= 1e-12, fmt("Newton lift %.2e", newton));
  o.require(lemma3 <= 1e-8, fmt("vec(AXB) identity %.2e", lemma3));
  o.require(lemma4 <= 1e-8, fmt("Kronecker difference spectrum %.2e", lemma4));
  return o;
}

Outcome ac8() {
  Outcome o;
  Rng rng(kSeed + 8);
  double worst_step = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexSymSystem sys = oracle::random_system(rng, rng.integer(1, 32));
    for (Algorithm a : kStationary) {
      const SplitParams p = params_for(sys, a);
      const ComplexVector xs = reference_solution(sys, p.method);
      worst_step = std::max(worst_step, oracle::rel_err(step(sys, p, xs), xs));
    }
    const RealVector br = sys.b().real();
    SplitParams pr = params_for(sys, Algorithm::gadi_real);
    const RealVector xr = (sys.W().to_dense() + sys.T().to_dense()).fullPivLu().solve(br);
    const RealVector stepped = step_gadi_real(sys.W(), sys.T(), br, pr, xr);
    worst_step = std::max(worst_step, (stepped - xr).norm() / xr.norm());
  }
  for (int trial = 0; trial < 5; ++trial) {
    const LyapunovProblem p = random_lyapunov(rng, rng.integer(1, 5));
    const DenseComplexMatrix xs = oracle::dense_lyapunov_solve(p.A(), p.Q);
    const LyapunovLift lift = lift_lyapunov(p);
    const SparseComplex s = SparseBuilder(lift.T_tilde.n(), lift.T_tilde.n())
                                .add(Complex(0, 1), lift.T_tilde)
                                .build();
    const double alpha = lyapunov_optimal_alpha(p);
    for (const TwoStageSplitting& sp :
         {make_gadi_splitting(lift.W_tilde.matrix(), s, alpha, 0.3, SubsystemKind::complex_symmetric),
          make_hss_splitting(lift.W_tilde.matrix(), s, alpha, SubsystemKind::complex_symmetric)}) {
      const StationaryIteration it(sp, lift.q, InnerSolveSettings::exact());
      worst_step = std::max(worst_step, oracle::rel_err(it.step(vec(xs), 0.0), vec(xs)));
    }
  }
  o.require(worst_step <= 1e-11, fmt("sweep moves the solution by %.2e", worst_step));

  double worst_newton = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const RiccatiProblem p = random_riccati(rng, 3);
    // Anti-stabilizing solution: the one the GADI inner sweep contracts at.
    const DenseComplexMatrix xs = oracle::hamiltonian_solution(p, false);
    NewtonConfig cfg;
    cfg.initial_guess = xs;
    cfg.outer_tol = 0.0;
    cfg.k_max = 1;
    cfg.inner_rel_tol = 1e-14;
    cfg.l_max = 5000;
    worst_newton = std::max(worst_newton, oracle::rel_err(newton_gadi_riccati(p, cfg).X, xs));
  }
  o.require(worst_newton <= 1e-10, fmt("Newton step moves a CARE solution by %.2e", worst_newton));

  const RiccatiProblem scalar{SparseRealSym::identity(1, 1.0), SparseRealSym::identity(1, 0.0),
                              DenseComplexMatrix::Constant(1, 1, 1.0),
                              DenseComplexMatrix::Constant(1, 1, 3.0)};
  NewtonConfig cfg;
  cfg.outer_tol = 1e-12;
  cfg.inner_rel_tol = 1e-14;
  cfg.initial_guess = DenseComplexMatrix::Constant(1, 1, 4.0);
  const double x = std::abs(newton_gadi_riccati(scalar, cfg).X(0, 0) - 3.0);
  o.require(x <= 1e-8, fmt("scalar CARE |X - 3| %.2e", x));
  return o;
}

std::string csv_without_cpu(const std::vector<BenchmarkRow>& rows) {
  std::vector<BenchmarkRow> copy = rows;
  for (auto& r : copy) r.cpu = 0.0;
  std::ostringstream os;
  write_csv(os, copy);
  return os.str();
}

Outcome ac9() {
  Outcome o;
  for (const char* name : {"table3", "table5"}) {
    const Preset p = make_preset(name);
    const std::string a = csv_without_cpu(run_preset(p).rows);
    const std::string b = csv_without_cpu(run_preset(p).rows);
    o.require(a == b, fmt("%s %zu bytes identical", name, a.size()));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
  }
  struct Criterion {
    const char* id;
    std::function<Outcome()> run;
    bool soft;
  };
  const std::vector<Criterion> criteria{
      {"AC1", ac1, false}, {"AC2", ac2, false}, {"AC3", ac3, false},
      {"AC4", ac4, false}, {"AC5", ac5, false}, {"AC6", ac6, true},
      {"AC7", ac7, false}, {"AC8", ac8, false}, {"AC9", ac9, false}};
  int hard_failures = 0, soft_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s%s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.soft ? " (soft)" : "",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++(c.soft ? soft_failures : hard_failures);
  }
  if (hard_failures > 0) return 1;
  return strict && soft_failures > 0 ? 1 : 0;
}
