#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gadi/bench/bench.hpp"

namespace gadi {

inline constexpr const char* kCsvHeader = "algorithm,n,problem,alpha,omega,RES,IT,CPU,converged";

/// RES is written with 5 significant digits, alpha and omega exactly, a
/// missing omega as "NA" and CPU in seconds with 6 decimals. Output is
/// locale-independent.
void write_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<BenchmarkRow>& rows);

/// Inverse of write_csv. Throws IoError on a bad header or malformed line.
std::vector<BenchmarkRow> read_csv(std::istream& is);
std::vector<BenchmarkRow> read_csv(const std::filesystem::path& path);

/// Two columns "iteration,RES". Throws ContractError on an empty history.
void write_convergence_series(std::ostream& os, const std::vector<ResidualSample>& history);
void write_convergence_series(const std::filesystem::path& path, const SolveReport& report);
void write_convergence_series(const std::filesystem::path& path,
                              const std::vector<ResidualSample>& history);

/// Several series in one long-format file "series,iteration,RES".
void write_series_table(const std::filesystem::path& path,
                        const std::vector<ConvergenceSeries>& series);

}  // namespace gadi
