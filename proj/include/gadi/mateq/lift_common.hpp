#pragma once

#include <cstdint>

#include "gadi/linalg/sparse.hpp"

// Helpers shared by the Lyapunov and Riccati lifts.
namespace gadi::detail {

/// ca * A + cb * B, keeping exact symmetry.
SparseRealSym combine(const SparseRealSym& a, double ca, const SparseRealSym& b, double cb);

/// Deterministic complex matrix with entries uniform in [-1, 1] + i[-1, 1].
DenseComplexMatrix seeded_matrix(Index n, std::uint64_t seed);

/// True when lifted * vec(X) = vec(A^* X + X A) for three seeded X.
bool reproduces(const SparseComplex& lifted, const DenseComplexMatrix& a);

bool is_hermitian_matrix(const DenseComplexMatrix& m);

}  // namespace gadi::detail
