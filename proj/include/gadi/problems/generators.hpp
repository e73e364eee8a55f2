#pragma once

#include <optional>
#include <string>
#include <variant>

#include "gadi/mateq/riccati.hpp"
#include "gadi/splitting/splitting.hpp"

namespace gadi {

enum class Family { ex241, ex242, ex31, ex421 };
enum class TauMode { h, h500 };

/// Parameters of one benchmark instance. `size` is the grid size m for the
/// PDE families (n = m^2) and the matrix order n for the matrix equations.
struct ProblemSpec {
  Family family = Family::ex241;
  Index size = 8;
  TauMode tau = TauMode::h;
  double sigma1 = 100.0;
  double sigma2 = 100.0;
  double t = 0.01;

  /// Throws ConfigError on nonpositive size or t.
  void validate() const;
  /// Order of the linear system the spec produces (m^2, n^2 or n^2 lifted).
  Index system_size() const;
  /// Comma-free description such as "ex241 m=8 tau=h".
  std::string label() const;
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
std::string_view tau_name(TauMode t);
std::optional<TauMode> parse_tau(std::string_view name);

/// V_m = tridiag(-1, 2, -1) / h^2 with h = 1/(m+1).
SparseRealSym laplacian_1d(Index m);
/// K = I (x) V_m + V_m (x) I.
SparseRealSym laplacian_2d(Index m);
/// tridiag(off, diag, off) of order n.
SparseRealSym tridiagonal(Index n, double off, double diag);

/// W = K + ((3 - sqrt 3)/tau) I, T = K + ((3 + sqrt 3)/tau) I,
/// b_j = (1 - i) j / (tau (j+1)^2).
ComplexSymSystem gen_ex241(Index m, TauMode tau);
/// W = h^2 (K + sigma1 I), T = h^2 sigma2 I, b = h^2 (1+i) (K + sigma1 I + i sigma2 I) 1.
ComplexSymSystem gen_ex242(Index m, double sigma1, double sigma2);
/// A = (M + 2tN + c I) + i(M + 2tN - c I), c = 100/(n+1)^2, Q = ones(n, n).
LyapunovProblem gen_ex31(Index n, double t);
/// A = tridiag(-1,2,-1) + i tridiag(0.1,0.5,0.1), G = 0.1 I, Q = ones(n, n).
RiccatiProblem gen_ex421(Index n);

using GeneratedProblem = std::variant<ComplexSymSystem, LyapunovProblem, RiccatiProblem>;
GeneratedProblem generate(const ProblemSpec& spec);

}  // namespace gadi
