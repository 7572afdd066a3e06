#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace otcut::cli {

// Flags the run was started with. Solver-only fields are empty for the
// spectral baseline.
struct ConfigEcho {
  std::string method;  // "otcut" or "spectral"
  std::string graph;
  std::string format;
  int k = 0;
  std::string variant;
  std::uint64_t seed = 0;
  int restarts = 1;
  std::optional<double> alpha;
  std::optional<int> iters;
  std::optional<bool> safe_step;
  std::optional<std::string> laplacian;
  std::optional<double> tol;
  std::optional<std::string> target_dist;
  std::optional<std::string> source_dist;
  std::optional<std::string> labels;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct MetricsBlock {
  std::optional<double> ari;
  std::optional<double> kl;  // may be +inf
  std::optional<double> cut;
  std::optional<double> ncut;
  std::optional<double> rcut;

  friend bool operator==(const MetricsBlock&, const MetricsBlock&) = default;
};

struct Timings {
  double total_seconds = 0.0;
  std::vector<double> per_iter_seconds;

  friend bool operator==(const Timings&, const Timings&) = default;
};

struct RunReport {
  static constexpr int kSchema = 1;

  ConfigEcho config;
  std::int64_t n = 0;
  double final_objective = 0.0;
  int iterations = 0;
  std::string stop_reason;
  std::optional<double> alpha_used;
  std::optional<double> smoothness;
  int restart = 0;
  std::vector<double> objectives;
  std::vector<int> partition;
  std::vector<std::int64_t> cluster_sizes;
  std::vector<double> size_distribution;
  std::vector<double> target_distribution;
  MetricsBlock metrics;
  Timings timings;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

using Json = nlohmann::ordered_json;

Json metrics_to_json(const MetricsBlock& m);
Json to_json(const RunReport& r);
// Throws otcut::Error(ParseError) on a missing key, a wrong type or an
// unknown schema version.
RunReport report_from_json(const Json& j);

// Two-space indented JSON followed by a newline.
std::string serialize(const RunReport& r);
RunReport parse_report(std::string_view text);

}  // namespace otcut::cli
