#ifndef GWAVE_IO_HPP
#define GWAVE_IO_HPP

#include <map>
#include <string>
#include <vector>

#include "gwave/graph.hpp"

namespace gwave {

/// Graph file: one edge per line, `vertex_a vertex_b weight`, whitespace
/// separated; lines starting with `#` and blank lines ignored.
std::vector<WeightedGraph::LabeledEdge> parse_edge_list(const std::string& text);
/// Measure file: `vertex mu` per line; absent vertices default to mu = 1.
std::map<std::string, double> parse_measures(const std::string& text);
/// Domain file: one vertex label per line (the set Omega).
std::vector<std::string> parse_domain(const std::string& text);

std::string read_file(const std::string& path);
/// Atomic write: to a temporary in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// Problem configuration: `key = value` lines with `#` comments. Keys:
///   graph, measure, domain, out   paths (resolved against the config file)
///   p, T, n, tol                  scalars
///   forcing.kind                  zero | constant | sinusoid | sqrt_time
///   forcing.frequency             sinusoid angular frequency
///   g.<vertex>, h.<vertex>, forcing.amplitude.<vertex>   map entries
/// Unknown keys are rejected.
struct RunConfig {
  std::string graph_path;
  std::string measure_path;
  std::string domain_path;
  std::string out_path;
  double p = 0.0;   // required
  double T = 0.0;   // required
  int n = 16;
  double tol = 1e-10;
  std::string forcing_kind = "zero";
  double forcing_frequency = 0.0;
  std::map<std::string, double> g;
  std::map<std::string, double> h;
  std::map<std::string, double> amplitude;
};

RunConfig parse_problem(const std::string& text);
RunConfig parse_problem_file(const std::string& path);
std::string emit_problem(const RunConfig& config);

/// 17-significant-digit decimal rendering, lossless for 64-bit values.
std::string format_double(double value);

/// CSV writing: comma-joined header and rows, doubles rendered with
/// format_double, newline-terminated lines, atomic file replacement.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Diagnostics on standard error, gated by GWAVE_LOG (error | info | debug).
LogLevel log_level();
void log(LogLevel level, const std::string& message);

}  // namespace gwave

#endif  // GWAVE_IO_HPP
