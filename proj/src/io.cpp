#include "gwave/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gwave/forcing.hpp"

namespace gwave {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

double parse_number(const std::string& token, int lineno, const char* what) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != token.size())
    fail(errc::parse_error,
         "line " + std::to_string(lineno) + ": bad " + what + " '" + token + "'");
  return value;
}

}  // namespace

std::vector<WeightedGraph::LabeledEdge> parse_edge_list(const std::string& text) {
  std::vector<WeightedGraph::LabeledEdge> edges;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string a, b, w, extra;
    fields >> a >> b >> w;
    if (w.empty() || (fields >> extra && !extra.empty()))
      fail(errc::parse_error,
           "line " + std::to_string(lineno) + ": expected 'vertex_a vertex_b weight'");
    edges.emplace_back(a, b, parse_number(w, lineno, "edge weight"));
  }
  return edges;
}

std::map<std::string, double> parse_measures(const std::string& text) {
  std::map<std::string, double> measures;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string vertex, mu, extra;
    fields >> vertex >> mu;
    if (mu.empty() || (fields >> extra && !extra.empty()))
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'vertex mu'");
    if (!measures.emplace(vertex, parse_number(mu, lineno, "measure")).second)
      fail(errc::parse_error,
           "line " + std::to_string(lineno) + ": measure for '" + vertex + "' repeated");
  }
  return measures;
}

std::vector<std::string> parse_domain(const std::string& text) {
  std::vector<std::string> omega;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string vertex, extra;
    fields >> vertex;
    if (fields >> extra && !extra.empty())
      fail(errc::parse_error,
           "line " + std::to_string(lineno) + ": expected a single vertex label");
    omega.push_back(vertex);
  }
  return omega;
}

std::string read_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) fail(errc::io_error, "cannot open '" + path + "'");
  std::ostringstream content;
  content << stream.rdbuf();
  return content.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.parent_path().empty() ? "." : target.parent_path();
  const fs::path temp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
    if (!stream) fail(errc::io_error, "cannot write '" + temp.string() + "'");
    stream << content;
    if (!stream.flush()) fail(errc::io_error, "short write to '" + temp.string() + "'");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) fail(errc::io_error, "cannot replace '" + path + "': " + ec.message());
}

namespace {

bool map_key(const std::string& key, const char* prefix, std::string* vertex) {
  const std::string p = std::string(prefix) + ".";
  if (key.rfind(p, 0) != 0) return false;
  *vertex = key.substr(p.size());
  return !vertex->empty();
}

}  // namespace

RunConfig parse_problem(const std::string& text) {
  RunConfig config;
  bool have_p = false, have_T = false;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": empty key or value");

    if (key == "graph") {
      config.graph_path = value;
    } else if (key == "measure") {
      config.measure_path = value;
    } else if (key == "domain") {
      config.domain_path = value;
    } else if (key == "out") {
      config.out_path = value;
    } else if (key == "p") {
      config.p = parse_number(value, lineno, "p");
      have_p = true;
    } else if (key == "T") {
      config.T = parse_number(value, lineno, "T");
      have_T = true;
    } else if (key == "n") {
      config.n = static_cast<int>(parse_number(value, lineno, "n"));
    } else if (key == "tol") {
      config.tol = parse_number(value, lineno, "tol");
    } else if (key == "forcing.kind") {
      forcing_kind_from_name(value);  // reject unknown kinds here
      config.forcing_kind = value;
    } else if (key == "forcing.frequency") {
      config.forcing_frequency = parse_number(value, lineno, "forcing.frequency");
    } else {
      std::string vertex;
      if (map_key(key, "g", &vertex)) {
        config.g[vertex] = parse_number(value, lineno, "g value");
      } else if (map_key(key, "h", &vertex)) {
        config.h[vertex] = parse_number(value, lineno, "h value");
      } else if (map_key(key, "forcing.amplitude", &vertex)) {
        config.amplitude[vertex] = parse_number(value, lineno, "amplitude value");
      } else {
        fail(errc::parse_error,
             "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    }
  }
  if (!have_p) fail(errc::parse_error, "missing required key 'p'");
  if (!have_T) fail(errc::parse_error, "missing required key 'T'");
  if (!(config.p > 1.0))
    fail(errc::invalid_exponent,
         "damping exponent must satisfy p > 1, got " + format_double(config.p));
  if (!(config.T > 0.0))
    fail(errc::nonpositive_horizon, "horizon must be positive, got " + format_double(config.T));
  if (config.n < 1) fail(errc::zero_steps, "grid size n must be at least 1");
  if (!(config.tol > 0.0)) fail(errc::parse_error, "tol must be positive");
  return config;
}

RunConfig parse_problem_file(const std::string& path) {
  namespace fs = std::filesystem;
  RunConfig config = parse_problem(read_file(path));
  // Relative data paths resolve against the config file's directory.
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (!p.empty() && fs::path(p).is_relative()) p = (base / p).string();
  };
  resolve(config.graph_path);
  resolve(config.measure_path);
  resolve(config.domain_path);
  return config;
}

std::string emit_problem(const RunConfig& config) {
  std::ostringstream out;
  out << "# gwave problem configuration\n";
  if (!config.graph_path.empty()) out << "graph = " << config.graph_path << "\n";
  if (!config.measure_path.empty()) out << "measure = " << config.measure_path << "\n";
  if (!config.domain_path.empty()) out << "domain = " << config.domain_path << "\n";
  if (!config.out_path.empty()) out << "out = " << config.out_path << "\n";
  out << "p = " << format_double(config.p) << "\n";
  out << "T = " << format_double(config.T) << "\n";
  out << "n = " << config.n << "\n";
  out << "tol = " << format_double(config.tol) << "\n";
  out << "forcing.kind = " << config.forcing_kind << "\n";
  if (config.forcing_kind == "sinusoid")
    out << "forcing.frequency = " << format_double(config.forcing_frequency) << "\n";
  for (const auto& [vertex, value] : config.amplitude)
    out << "forcing.amplitude." << vertex << " = " << format_double(value) << "\n";
  for (const auto& [vertex, value] : config.g)
    out << "g." << vertex << " = " << format_double(value) << "\n";
  for (const auto& [vertex, value] : config.h)
    out << "h." << vertex << " = " << format_double(value) << "\n";
  return out.str();
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << header << "\n";
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      if (k) out << ",";
      out << row[k];
    }
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

LogLevel log_level() {
  const char* env = std::getenv("GWAVE_LOG");
  if (!env) return LogLevel::error;
  const std::string level(env);
  if (level == "debug") return LogLevel::debug;
  if (level == "info") return LogLevel::info;
  return LogLevel::error;
}

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) <= static_cast<int>(log_level()))
    std::cerr << "gwave: " << message << "\n";
}

}  // namespace gwave
