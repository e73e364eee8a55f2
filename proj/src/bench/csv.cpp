#include "gadi/bench/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace gadi {

namespace {

std::string fmt(const char* spec, double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::istringstream ss(s);
  ss.imbue(std::locale::classic());
  double v = 0.0;
  ss >> v;
  std::string rest;
  if (!ss || (ss >> rest)) throw IoError("malformed number '" + s + "' in line: " + line);
  return v;
}

long parse_long(const std::string& s, const std::string& line) {
  std::istringstream ss(s);
  long v = 0;
  ss >> v;
  std::string rest;
  if (!ss || (ss >> rest)) throw IoError("malformed integer '" + s + "' in line: " + line);
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
  }
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    if (r.algorithm.find(',') != std::string::npos || r.problem.find(',') != std::string::npos) {
      throw ContractError("CSV fields must not contain commas");
    }
    os << r.algorithm << ',' << r.n << ',' << r.problem << ',' << fmt("%.17g", r.alpha) << ','
       << (r.omega ? fmt("%.17g", *r.omega) : std::string("NA")) << ',' << fmt("%.4e", r.res)
       << ',' << r.it << ',' << fmt("%.6f", r.cpu) << ',' << (r.converged ? "true" : "false")
       << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<BenchmarkRow>& rows) {
  auto os = open_out(path);
  write_csv(os, rows);
  finish(os, path);
}

std::vector<BenchmarkRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw IoError("missing or unexpected CSV header");
  std::vector<BenchmarkRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw IoError("expected 9 fields in line: " + line);
    BenchmarkRow r;
    r.algorithm = f[0];
    r.n = parse_long(f[1], line);
    r.problem = f[2];
    r.alpha = parse_double(f[3], line);
    if (f[4] != "NA") r.omega = parse_double(f[4], line);
    r.res = parse_double(f[5], line);
    r.it = parse_long(f[6], line);
    r.cpu = parse_double(f[7], line);
    if (f[8] != "true" && f[8] != "false") throw IoError("bad converged flag in line: " + line);
    r.converged = f[8] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<BenchmarkRow> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_csv(is);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_convergence_series(std::ostream& os, const std::vector<ResidualSample>& history) {
  if (history.empty()) throw ContractError("convergence series needs a nonempty history");
  os << "iteration,RES\n";
  for (const auto& s : history) os << s.iteration << ',' << fmt("%.6e", s.res) << '\n';
}

void write_convergence_series(const std::filesystem::path& path, const SolveReport& report) {
  write_convergence_series(path, report.residual_history);
}

void write_convergence_series(const std::filesystem::path& path,
                              const std::vector<ResidualSample>& history) {
  if (history.empty()) throw ContractError("convergence series needs a nonempty history");
  auto os = open_out(path);
  write_convergence_series(os, history);
  finish(os, path);
}

void write_series_table(const std::filesystem::path& path,
                        const std::vector<ConvergenceSeries>& series) {
  auto os = open_out(path);
  os << "series,iteration,RES\n";
  for (const auto& s : series) {
    for (const auto& p : s.samples) os << s.label << ',' << p.iteration << ',' << fmt("%.6e", p.res) << '\n';
  }
  finish(os, path);
}

}  // namespace gadi
