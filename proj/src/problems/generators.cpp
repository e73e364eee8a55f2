#include "gadi/problems/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "gadi/mateq/lift_common.hpp"

namespace gadi {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

DenseComplexMatrix ones(Index n) { return DenseComplexMatrix::Ones(n, n); }

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::ex241: return "ex241";
    case Family::ex242: return "ex242";
    case Family::ex31: return "ex31";
    case Family::ex421: return "ex421";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  const std::string key = lower(name);
  for (Family f : {Family::ex241, Family::ex242, Family::ex31, Family::ex421}) {
    if (key == family_name(f)) return f;
  }
  return std::nullopt;
}

std::string_view tau_name(TauMode t) { return t == TauMode::h ? "h" : "500h"; }

std::optional<TauMode> parse_tau(std::string_view name) {
  const std::string key = lower(name);
  if (key == "h") return TauMode::h;
  if (key == "500h") return TauMode::h500;
  return std::nullopt;
}

void ProblemSpec::validate() const {
  if (size < 1) throw ConfigError("problem size must be at least 1");
  if (family == Family::ex31 && !(t > 0.0)) throw ConfigError("ex31 needs t > 0");
  if ((family == Family::ex31 && size > kLyapunovLiftLimit) ||
      (family == Family::ex421 && size > kNewtonLiftLimit)) {
    throw ConfigError("matrix-equation size " + std::to_string(size) + " exceeds the lift limit");
  }
}

Index ProblemSpec::system_size() const { return size * size; }

std::string ProblemSpec::label() const {
  std::string out(family_name(family));
  switch (family) {
    case Family::ex241:
      return out + " m=" + std::to_string(size) + " tau=" + std::string(tau_name(tau));
    case Family::ex242:
      return out + " m=" + std::to_string(size) + " s1=" + format_number(sigma1) +
             " s2=" + format_number(sigma2);
    case Family::ex31:
      return out + " n=" + std::to_string(size) + " t=" + format_number(t);
    case Family::ex421:
      return out + " n=" + std::to_string(size);
  }
  return out;
}

SparseRealSym tridiagonal(Index n, double off, double diag) {
  std::vector<Triplet<double>> entries;
  for (Index i = 0; i < n; ++i) {
    if (i > 0) entries.push_back({i, i - 1, off});
    entries.push_back({i, i, diag});
    if (i + 1 < n) entries.push_back({i, i + 1, off});
  }
  return SparseRealSym::from_triplets(n, std::move(entries));
}

SparseRealSym laplacian_1d(Index m) {
  const double inv_h2 = static_cast<double>((m + 1) * (m + 1));
  return tridiagonal(m, -inv_h2, 2.0 * inv_h2);
}

SparseRealSym laplacian_2d(Index m) {
  const SparseRealSym v = laplacian_1d(m);
  const SparseRealSym eye = SparseRealSym::identity(m);
  return detail::combine(kron(eye, v), 1.0, kron(v, eye), 1.0);
}

ComplexSymSystem gen_ex241(Index m, TauMode tau_mode) {
  if (m < 1) throw ConfigError("grid size must be at least 1");
  const double h = 1.0 / static_cast<double>(m + 1);
  const double tau = tau_mode == TauMode::h ? h : 500.0 * h;
  const SparseRealSym k = laplacian_2d(m);
  const Index n = m * m;
  const SparseRealSym eye = SparseRealSym::identity(n);
  const double s3 = std::sqrt(3.0);
  SparseRealSym w = detail::combine(k, 1.0, eye, (3.0 - s3) / tau);
  SparseRealSym t = detail::combine(k, 1.0, eye, (3.0 + s3) / tau);
  ComplexVector b(n);
  for (Index j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    b[j - 1] = Complex(1.0, -1.0) * (jd / (tau * (jd + 1.0) * (jd + 1.0)));
  }
  return ComplexSymSystem(std::move(w), std::move(t), std::move(b));
}

ComplexSymSystem gen_ex242(Index m, double sigma1, double sigma2) {
  if (m < 1) throw ConfigError("grid size must be at least 1");
  const double h = 1.0 / static_cast<double>(m + 1);
  const double h2 = h * h;
  const Index n = m * m;
  const SparseRealSym eye = SparseRealSym::identity(n);
  const SparseRealSym w_unscaled = detail::combine(laplacian_2d(m), 1.0, eye, sigma1);
  // b is formed from the unscaled operator, then both sides are scaled by h^2.
  const ComplexVector ones_n = ComplexVector::Ones(n);
  const ComplexVector b_unscaled =
      Complex(1.0, 1.0) * (w_unscaled.apply(ones_n) + kI * sigma2 * ones_n);
  SparseRealSym w(w_unscaled.matrix().scaled(h2));
  SparseRealSym t = SparseRealSym::identity(n, h2 * sigma2);
  return ComplexSymSystem(std::move(w), std::move(t), h2 * b_unscaled);
}

LyapunovProblem gen_ex31(Index n, double t) {
  if (n < 1) throw ConfigError("matrix order must be at least 1");
  if (!(t > 0.0)) throw ConfigError("ex31 needs t > 0");
  const double c = 100.0 / static_cast<double>((n + 1) * (n + 1));
  // M + 2tN = tridiag(-1 + t, 2, -1 + t).
  const double off = -1.0 + 2.0 * t * 0.5;
  return {tridiagonal(n, off, 2.0 + c), tridiagonal(n, off, 2.0 - c), ones(n)};
}

RiccatiProblem gen_ex421(Index n) {
  if (n < 1) throw ConfigError("matrix order must be at least 1");
  return {tridiagonal(n, -1.0, 2.0), tridiagonal(n, 0.1, 0.5),
          DenseComplexMatrix::Identity(n, n) * Complex(0.1), ones(n)};
}

GeneratedProblem generate(const ProblemSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::ex241: return gen_ex241(spec.size, spec.tau);
    case Family::ex242: return gen_ex242(spec.size, spec.sigma1, spec.sigma2);
    case Family::ex31: return gen_ex31(spec.size, spec.t);
    case Family::ex421: return gen_ex421(spec.size);
  }
  throw ConfigError("unknown family");
}

}  // namespace gadi
