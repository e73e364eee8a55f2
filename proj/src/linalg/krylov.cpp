#include "gadi/linalg/krylov.hpp"

#include <cmath>
#include <limits>

#include "gadi/errors.hpp"

namespace gadi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

ComplexVector starting_point(const ComplexVector& b, const ComplexVector& guess) {
  if (guess.size() == 0) return ComplexVector::Zero(b.size());
  if (guess.size() != b.size()) throw DimensionError("initial guess length mismatch");
  return guess;
}

Complex bilinear(const ComplexVector& a, const ComplexVector& b) { return a.cwiseProduct(b).sum(); }

}  // namespace

KrylovResult cg_hpd(const LinearMap& m, const ComplexVector& b, double rel_tol, int max_it,
                    const ComplexVector& guess) {
  KrylovResult out;
  out.x = starting_point(b, guess);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    return out;
  }
  const double target = rel_tol * bnorm;

  ComplexVector r = b - m(out.x);
  double rr = r.squaredNorm();
  if (std::sqrt(rr) <= target) {
    out.relative_residual = std::sqrt(rr) / bnorm;
    return out;
  }
  ComplexVector p = r;
  for (int it = 1; it <= max_it; ++it) {
    const ComplexVector q = m(p);
    const double curvature = p.dot(q).real();
    if (!(curvature > 0.0)) {
      throw ContractError("cg_hpd: operator is not positive definite (p^H M p = " +
                          std::to_string(curvature) + ")");
    }
    const double step = rr / curvature;
    out.x += step * p;
    r -= step * q;
    double rr_next = r.squaredNorm();
    out.iterations = it;
    if (std::sqrt(rr_next) <= target) {
      // The recursive residual drifts; confirm against the true residual and
      // restart from it when they disagree.
      r = b - m(out.x);
      rr_next = r.squaredNorm();
      if (std::sqrt(rr_next) <= target) {
        out.relative_residual = std::sqrt(rr_next) / bnorm;
        return out;
      }
      p = r;
      rr = rr_next;
      continue;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  const double res = (b - m(out.x)).norm() / bnorm;
  throw InnerSolveError("cg_hpd: no convergence in " + std::to_string(max_it) +
                            " iterations (relative residual " + std::to_string(res) + ")",
                        out.x, max_it, res);
}

KrylovResult cocg_sym(const LinearMap& m, const ComplexVector& b, double rel_tol, int max_it,
                      const ComplexVector& guess) {
  KrylovResult out;
  out.x = starting_point(b, guess);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    return out;
  }
  const double target = rel_tol * bnorm;

  ComplexVector r = b - m(out.x);
  if (r.norm() <= target) {
    out.relative_residual = r.norm() / bnorm;
    return out;
  }
  ComplexVector p = r;
  Complex rho = bilinear(r, r);
  auto breakdown = [&](const char* which) {
    const double res = (b - m(out.x)).norm() / bnorm;
    return BreakdownError(std::string("cocg_sym: breakdown, ") + which + " vanishes", out.x,
                          out.iterations, res);
  };
  if (std::abs(rho) <= kEps * r.squaredNorm()) throw breakdown("r^T r");

  for (int it = 1; it <= max_it; ++it) {
    const ComplexVector q = m(p);
    const Complex mu = bilinear(p, q);
    if (std::abs(mu) <= kEps * p.norm() * q.norm()) throw breakdown("p^T M p");
    const Complex step = rho / mu;
    out.x += step * p;
    r -= step * q;
    out.iterations = it;
    if (r.norm() <= target) {
      r = b - m(out.x);
      if (r.norm() <= target) {
        out.relative_residual = r.norm() / bnorm;
        return out;
      }
      p = r;
      rho = bilinear(r, r);
      if (std::abs(rho) <= kEps * r.squaredNorm()) throw breakdown("r^T r");
      continue;
    }
    const Complex rho_next = bilinear(r, r);
    if (std::abs(rho_next) <= kEps * r.squaredNorm()) throw breakdown("r^T r");
    p = r + (rho_next / rho) * p;
    rho = rho_next;
  }
  const double res = (b - m(out.x)).norm() / bnorm;
  throw InnerSolveError("cocg_sym: no convergence in " + std::to_string(max_it) +
                            " iterations (relative residual " + std::to_string(res) + ")",
                        out.x, max_it, res);
}

KrylovResult cg_hpd(const SparseComplex& m, const ComplexVector& b, double rel_tol, int max_it,
                    const ComplexVector& guess) {
  if (m.rows() != m.cols() || m.cols() != b.size()) throw DimensionError("cg_hpd: shape mismatch");
  return cg_hpd([&m](const ComplexVector& v) { return m.apply(v); }, b, rel_tol, max_it, guess);
}

KrylovResult cocg_sym(const SparseComplex& m, const ComplexVector& b, double rel_tol, int max_it,
                      const ComplexVector& guess) {
  if (m.rows() != m.cols() || m.cols() != b.size()) {
    throw DimensionError("cocg_sym: shape mismatch");
  }
  return cocg_sym([&m](const ComplexVector& v) { return m.apply(v); }, b, rel_tol, max_it, guess);
}

}  // namespace gadi
