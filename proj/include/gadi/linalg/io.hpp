#pragma once

#include <filesystem>
#include <iosfwd>

#include "gadi/linalg/sparse.hpp"

namespace gadi {

// Coordinate text format: a header line "m n nnz" followed by nnz lines
// "i j re im" with 0-based indices. Vectors: a line "n" then n lines "re im".
// Values are written with 17 significant digits so a write/read cycle is exact.

void write_coordinate(std::ostream& os, const SparseComplex& m);
void write_coordinate(std::ostream& os, const RealCsr& m);
/// Throws IoError on malformed input, DimensionError on out-of-range indices,
/// ContractError on duplicate coordinates.
SparseComplex read_coordinate(std::istream& is);

void write_vector(std::ostream& os, const ComplexVector& v);
ComplexVector read_vector(std::istream& is);

void save_coordinate(const std::filesystem::path& path, const SparseComplex& m);
void save_coordinate(const std::filesystem::path& path, const RealCsr& m);
SparseComplex load_coordinate(const std::filesystem::path& path);
void save_vector(const std::filesystem::path& path, const ComplexVector& v);
ComplexVector load_vector(const std::filesystem::path& path);

/// Real symmetric view of a coordinate file; rejects nonzero imaginary parts
/// and asymmetric entries.
SparseRealSym load_real_symmetric(const std::filesystem::path& path);

}  // namespace gadi
