#include "gadi/splitting/splitting.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace gadi {

ComplexSymSystem::ComplexSymSystem(SparseRealSym w, SparseRealSym t, ComplexVector b)
    : w_(std::move(w)), t_(std::move(t)), b_(std::move(b)) {
  if (t_.n() != w_.n() || b_.size() != w_.n()) {
    throw DimensionError("system dimensions disagree: W is " + std::to_string(w_.n()) +
                         ", T is " + std::to_string(t_.n()) + ", b has " +
                         std::to_string(b_.size()));
  }
}

SparseComplex ComplexSymSystem::matrix() const {
  return SparseBuilder(n(), n()).add(1.0, w_).add(kI, t_).build();
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::gadi: return "GADI";
    case Method::gadi_real: return "GADI-real";
    case Method::hss: return "HSS";
    case Method::mhss: return "MHSS";
    case Method::pmhss: return "PMHSS";
    case Method::cri: return "CRI";
    case Method::tscsp: return "TSCSP";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  for (Method m : kAllMethods) {
    std::string candidate(method_name(m));
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (candidate == key) return m;
  }
  return std::nullopt;
}

void SplitParams::validate(Index n) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ContractError("alpha must be positive, got " + std::to_string(alpha));
  }
  if (!(omega >= 0.0 && omega < 2.0)) {
    throw ContractError("omega must lie in [0, 2), got " + std::to_string(omega));
  }
  if (V) {
    if (V->n() != n) throw ContractError("preconditioner V has the wrong dimension");
    // Throws ContractError when Cholesky fails.
    SubsystemSolver(to_complex(V->matrix()), SubsystemKind::hermitian_pd, true);
  }
}

SparseComplex system_matrix(const ComplexSymSystem& sys, Method method) {
  const Complex t_factor = method == Method::gadi_real ? Complex(1.0) : kI;
  return SparseBuilder(sys.n(), sys.n()).add(1.0, sys.W()).add(t_factor, sys.T()).build();
}

TwoStageSplitting make_gadi_splitting(const RealCsr& w, const SparseComplex& s, double alpha,
                                      double omega, SubsystemKind second_kind) {
  const Index n = w.rows();
  TwoStageSplitting out;
  out.name = "GADI";
  out.system = SparseBuilder(n, n).add(1.0, w).add(1.0, s).build();
  out.first = {SparseBuilder(n, n).add_identity(alpha).add(1.0, w).build(),
               SubsystemKind::hermitian_pd,
               SparseBuilder(n, n).add_identity(alpha).add(-1.0, s).build(),
               {},
               1.0};
  out.second = {SparseBuilder(n, n).add_identity(alpha).add(1.0, s).build(),
                second_kind,
                SparseBuilder(n, n).add(1.0, s).add_identity(-(1.0 - omega) * alpha).build(),
                SparseComplex::identity(n, (2.0 - omega) * alpha),
                0.0};
  return out;
}

TwoStageSplitting make_hss_splitting(const RealCsr& w, const SparseComplex& s, double alpha,
                                     SubsystemKind second_kind) {
  const Index n = w.rows();
  TwoStageSplitting out;
  out.name = "HSS";
  out.system = SparseBuilder(n, n).add(1.0, w).add(1.0, s).build();
  out.first = {SparseBuilder(n, n).add_identity(alpha).add(1.0, w).build(),
               SubsystemKind::hermitian_pd,
               SparseBuilder(n, n).add_identity(alpha).add(-1.0, s).build(),
               {},
               1.0};
  out.second = {SparseBuilder(n, n).add_identity(alpha).add(1.0, s).build(),
                second_kind,
                {},
                SparseBuilder(n, n).add_identity(alpha).add(-1.0, w).build(),
                1.0};
  return out;
}

TwoStageSplitting make_splitting(const ComplexSymSystem& sys, const SplitParams& p) {
  p.validate(sys.n());
  const Index n = sys.n();
  const double a = p.alpha;
  const SparseRealSym& w = sys.W();
  const SparseRealSym& t = sys.T();
  auto builder = [n] { return SparseBuilder(n, n); };

  switch (p.method) {
    case Method::gadi:
      return make_gadi_splitting(w.matrix(), builder().add(kI, t).build(), a, p.omega,
                                 SubsystemKind::complex_symmetric);
    case Method::gadi_real: {
      auto out = make_gadi_splitting(w.matrix(), to_complex(t.matrix()), a, p.omega,
                                     SubsystemKind::hermitian_pd);
      out.name = "GADI-real";
      return out;
    }
    case Method::hss:
      return make_hss_splitting(w.matrix(), builder().add(kI, t).build(), a,
                                SubsystemKind::complex_symmetric);
    case Method::mhss:
    case Method::pmhss: {
      // PMHSS with V = I is MHSS.
      const SparseComplex av = p.method == Method::pmhss && p.V
                                   ? to_complex(p.V->matrix()).scaled(a)
                                   : SparseComplex::identity(n, a);
      TwoStageSplitting out;
      out.name = std::string(method_name(p.method));
      out.system = sys.matrix();
      out.first = {builder().add(1.0, av).add(1.0, w).build(), SubsystemKind::hermitian_pd,
                   builder().add(1.0, av).add(-kI, t).build(), {}, 1.0};
      out.second = {builder().add(1.0, av).add(1.0, t).build(), SubsystemKind::hermitian_pd, {},
                    builder().add(1.0, av).add(kI, w).build(), -kI};
      return out;
    }
    case Method::cri: {
      TwoStageSplitting out;
      out.name = "CRI";
      out.system = sys.matrix();
      out.first = {builder().add(a, t).add(1.0, w).build(), SubsystemKind::hermitian_pd,
                   builder().add(Complex(a, -1.0), t).build(), {}, 1.0};
      out.second = {builder().add(a, w).add(1.0, t).build(), SubsystemKind::hermitian_pd, {},
                    builder().add(Complex(a, 1.0), w).build(), -kI};
      return out;
    }
    case Method::tscsp: {
      TwoStageSplitting out;
      out.name = "TSCSP";
      out.system = sys.matrix();
      out.first = {builder().add(a, w).add(1.0, t).build(), SubsystemKind::hermitian_pd,
                   builder().add(kI, w).add(-kI * a, t).build(), {}, Complex(a, -1.0)};
      out.second = {builder().add(a, t).add(1.0, w).build(), SubsystemKind::hermitian_pd, {},
                    builder().add(kI * a, w).add(-kI, t).build(), Complex(1.0, -a)};
      return out;
    }
  }
  throw ContractError("unknown method");
}

StationaryIteration::StationaryIteration(TwoStageSplitting splitting, ComplexVector b,
                                         InnerSolveSettings inner)
    : splitting_(std::move(splitting)),
      b_(std::move(b)),
      inner_(inner),
      first_(splitting_.first.coefficient, splitting_.first.kind,
             inner_.use_direct(splitting_.first.coefficient.rows())),
      second_(splitting_.second.coefficient, splitting_.second.kind,
              inner_.use_direct(splitting_.second.coefficient.rows())) {
  if (b_.size() != splitting_.system.rows()) throw DimensionError("rhs length mismatch");
}

double StationaryIteration::residual(const ComplexVector& x) const {
  const double bn = b_.norm();
  if (bn == 0.0) throw UndefinedDenominatorError("relative residual undefined for b = 0");
  return (b_ - splitting_.system.apply(x)).norm() / bn;
}

namespace {

void accumulate(ComplexVector& rhs, const SparseComplex& term, const ComplexVector& v) {
  if (term.rows() == 0) return;
  rhs += term.apply(v);
}

}  // namespace

ComplexVector StationaryIteration::step(const ComplexVector& x, double outer_res,
                                        StepStats* stats) const {
  if (x.size() != b_.size()) throw DimensionError("iterate length mismatch");
  const HalfStep& h1 = splitting_.first;
  const HalfStep& h2 = splitting_.second;

  ComplexVector rhs1 = h1.rhs_scale * b_;
  accumulate(rhs1, h1.on_previous, x);
  KrylovResult half;
  try {
    half = first_.solve(rhs1, inner_.first_tolerance(outer_res), inner_.max_inner, x);
  } catch (const InnerSolveError& e) {
    throw HalfStepError(e, 1);
  }

  ComplexVector rhs2 = h2.rhs_scale * b_;
  accumulate(rhs2, h2.on_previous, x);
  accumulate(rhs2, h2.on_half, half.x);
  KrylovResult next;
  try {
    next = second_.solve(rhs2, inner_.second_tolerance(outer_res), inner_.max_inner, half.x);
  } catch (const InnerSolveError& e) {
    throw HalfStepError(e, 2);
  }
  if (stats) {
    stats->first_inner_iterations = half.iterations;
    stats->second_inner_iterations = next.iterations;
  }
  return std::move(next.x);
}

ComplexVector step(const ComplexSymSystem& sys, const SplitParams& p, const ComplexVector& x_k,
                   const InnerSolveSettings& inner) {
  StationaryIteration it(make_splitting(sys, p), sys.b(), inner);
  const double res = inner.use_direct(sys.n()) ? 1.0 : it.residual(x_k);
  return it.step(x_k, res);
}

namespace {

ComplexVector checked_step(Method expected, const ComplexSymSystem& sys, const SplitParams& p,
                           const ComplexVector& x_k, const InnerSolveSettings& inner) {
  if (p.method != expected) {
    throw ContractError(std::string("expected method ") + std::string(method_name(expected)) +
                        ", got " + std::string(method_name(p.method)));
  }
  return step(sys, p, x_k, inner);
}

}  // namespace

ComplexVector step_gadi(const ComplexSymSystem& sys, const SplitParams& p,
                        const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::gadi, sys, p, x_k, inner);
}
ComplexVector step_hss(const ComplexSymSystem& sys, const SplitParams& p,
                       const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::hss, sys, p, x_k, inner);
}
ComplexVector step_mhss(const ComplexSymSystem& sys, const SplitParams& p,
                        const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::mhss, sys, p, x_k, inner);
}
ComplexVector step_pmhss(const ComplexSymSystem& sys, const SplitParams& p,
                         const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::pmhss, sys, p, x_k, inner);
}
ComplexVector step_cri(const ComplexSymSystem& sys, const SplitParams& p,
                       const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::cri, sys, p, x_k, inner);
}
ComplexVector step_tscsp(const ComplexSymSystem& sys, const SplitParams& p,
                         const ComplexVector& x_k, const InnerSolveSettings& inner) {
  return checked_step(Method::tscsp, sys, p, x_k, inner);
}

RealVector step_gadi_real(const SparseRealSym& w, const SparseRealSym& t, const RealVector& b,
                          const SplitParams& p, const RealVector& x_k) {
  if (p.method != Method::gadi_real) throw ContractError("expected method GADI-real");
  const ComplexSymSystem sys(w, t, b.cast<Complex>());
  const ComplexVector next = step(sys, p, x_k.cast<Complex>());
  return next.real();
}

}  // namespace gadi
