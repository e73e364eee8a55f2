#include "gadi/linalg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace gadi {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename Scalar>
void write_entries(std::ostream& os, const CsrMatrix<Scalar>& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& t : m.to_triplets()) {
    const Complex v(t.value);
    os << t.row << ' ' << t.col << ' ' << format_value(v.real()) << ' ' << format_value(v.imag())
       << '\n';
  }
  if (!os) throw IoError("write failed");
}

// Reads the next non-empty line; returns false at end of input.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

template <typename... Ts>
void parse_fields(const std::string& line, const char* what, Ts&... fields) {
  std::istringstream ls(line);
  ls.imbue(std::locale::classic());
  (ls >> ... >> fields);
  std::string rest;
  if (!ls || (ls >> rest)) throw IoError(std::string("malformed ") + what + " line: '" + line + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  return is;
}

}  // namespace

void write_coordinate(std::ostream& os, const SparseComplex& m) { write_entries(os, m); }
void write_coordinate(std::ostream& os, const RealCsr& m) { write_entries(os, m); }

SparseComplex read_coordinate(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw IoError("missing coordinate header");
  long long rows = 0, cols = 0, nnz = 0;
  parse_fields(line, "header", rows, cols, nnz);
  if (rows < 0 || cols < 0 || nnz < 0) throw IoError("negative size in coordinate header");

  std::vector<Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    if (!next_line(is, line)) {
      throw IoError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    }
    long long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    parse_fields(line, "entry", i, j, re, im);
    entries.push_back({static_cast<Index>(i), static_cast<Index>(j), Complex(re, im)});
  }
  return SparseComplex::from_triplets(rows, cols, std::move(entries), DuplicatePolicy::reject);
}

void write_vector(std::ostream& os, const ComplexVector& v) {
  os << v.size() << '\n';
  for (Index i = 0; i < v.size(); ++i) {
    os << format_value(v[i].real()) << ' ' << format_value(v[i].imag()) << '\n';
  }
  if (!os) throw IoError("write failed");
}

ComplexVector read_vector(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw IoError("missing vector header");
  long long n = 0;
  parse_fields(line, "vector header", n);
  if (n < 0) throw IoError("negative vector length");
  ComplexVector v(n);
  for (long long k = 0; k < n; ++k) {
    if (!next_line(is, line)) throw IoError("vector truncated at entry " + std::to_string(k));
    double re = 0.0, im = 0.0;
    parse_fields(line, "vector entry", re, im);
    v[k] = Complex(re, im);
  }
  return v;
}

void save_coordinate(const std::filesystem::path& path, const SparseComplex& m) {
  auto os = open_out(path);
  write_coordinate(os, m);
}

void save_coordinate(const std::filesystem::path& path, const RealCsr& m) {
  auto os = open_out(path);
  write_coordinate(os, m);
}

SparseComplex load_coordinate(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    return read_coordinate(is);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void save_vector(const std::filesystem::path& path, const ComplexVector& v) {
  auto os = open_out(path);
  write_vector(os, v);
}

ComplexVector load_vector(const std::filesystem::path& path) {
  auto is = open_in(path);
  try {
    return read_vector(is);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

SparseRealSym load_real_symmetric(const std::filesystem::path& path) {
  const SparseComplex m = load_coordinate(path);
  std::vector<Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(m.nnz()));
  for (const auto& t : m.to_triplets()) {
    if (t.value.imag() != 0.0) {
      throw ContractError(path.string() + ": expected a real matrix");
    }
    entries.push_back({t.row, t.col, t.value.real()});
  }
  if (m.rows() != m.cols()) throw ContractError(path.string() + ": expected a square matrix");
  return SparseRealSym::from_triplets(m.rows(), std::move(entries));
}

}  // namespace gadi
