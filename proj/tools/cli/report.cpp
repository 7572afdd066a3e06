#include "cli/report.hpp"

#include <cmath>
#include <limits>

#include "otcut/error.hpp"

namespace otcut::cli {
namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// JSON has no infinity; it is written as the string "inf".
Json real_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, "report: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected an object around '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) fail("missing key '" + std::string(key) + "'");
  return *it;
}

double as_real(const Json& v, const char* key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail("'" + std::string(key) + "' is not a number");
}

template <class T>
T as(const Json& v, const char* key) {
  if constexpr (std::is_same_v<T, double>) {
    return as_real(v, key);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) fail("'" + std::string(key) + "' is not a boolean");
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) fail("'" + std::string(key) + "' is not a string");
    return v.get<std::string>();
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!v.is_number_unsigned()) fail("'" + std::string(key) + "' is not a nonnegative integer");
    return v.get<T>();
  } else {
    if (!v.is_number_integer()) fail("'" + std::string(key) + "' is not an integer");
    return v.get<T>();
  }
}

template <class T>
T get(const Json& j, const char* key) {
  return as<T>(field(j, key), key);
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return as<T>(v, key);
}

template <class T>
std::vector<T> get_array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) fail("'" + std::string(key) + "' is not an array");
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as<T>(e, key));
  return out;
}

Json config_to_json(const ConfigEcho& c) {
  Json j;
  j["method"] = c.method;
  j["graph"] = c.graph;
  j["format"] = c.format;
  j["k"] = c.k;
  j["variant"] = c.variant;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["alpha"] = real_json(c.alpha);
  j["iters"] = optional_json(c.iters);
  j["safe_step"] = optional_json(c.safe_step);
  j["laplacian"] = optional_json(c.laplacian);
  j["tol"] = real_json(c.tol);
  j["target_dist"] = optional_json(c.target_dist);
  j["source_dist"] = optional_json(c.source_dist);
  j["labels"] = optional_json(c.labels);
  return j;
}

ConfigEcho config_from_json(const Json& j) {
  ConfigEcho c;
  c.method = get<std::string>(j, "method");
  c.graph = get<std::string>(j, "graph");
  c.format = get<std::string>(j, "format");
  c.k = get<int>(j, "k");
  c.variant = get<std::string>(j, "variant");
  c.seed = get<std::uint64_t>(j, "seed");
  c.restarts = get<int>(j, "restarts");
  c.alpha = get_optional<double>(j, "alpha");
  c.iters = get_optional<int>(j, "iters");
  c.safe_step = get_optional<bool>(j, "safe_step");
  c.laplacian = get_optional<std::string>(j, "laplacian");
  c.tol = get_optional<double>(j, "tol");
  c.target_dist = get_optional<std::string>(j, "target_dist");
  c.source_dist = get_optional<std::string>(j, "source_dist");
  c.labels = get_optional<std::string>(j, "labels");
  return c;
}

}  // namespace

Json metrics_to_json(const MetricsBlock& m) {
  Json j;
  j["ari"] = real_json(m.ari);
  j["kl"] = real_json(m.kl);
  j["cut"] = real_json(m.cut);
  j["ncut"] = real_json(m.ncut);
  j["rcut"] = real_json(m.rcut);
  return j;
}

Json to_json(const RunReport& r) {
  Json j;
  j["schema"] = RunReport::kSchema;
  j["config"] = config_to_json(r.config);
  j["n"] = r.n;
  j["final_objective"] = r.final_objective;
  j["iterations"] = r.iterations;
  j["stop_reason"] = r.stop_reason;
  j["alpha_used"] = real_json(r.alpha_used);
  j["smoothness"] = real_json(r.smoothness);
  j["restart"] = r.restart;
  j["objectives"] = r.objectives;
  j["partition"] = r.partition;
  j["cluster_sizes"] = r.cluster_sizes;
  j["size_distribution"] = r.size_distribution;
  j["target_distribution"] = r.target_distribution;
  j["metrics"] = metrics_to_json(r.metrics);
  j["timings"] = Json{{"total_seconds", r.timings.total_seconds},
                      {"per_iter_seconds", r.timings.per_iter_seconds}};
  return j;
}

RunReport report_from_json(const Json& j) {
  if (get<int>(j, "schema") != RunReport::kSchema) fail("unsupported schema version");
  RunReport r;
  r.config = config_from_json(field(j, "config"));
  r.n = get<std::int64_t>(j, "n");
  r.final_objective = get<double>(j, "final_objective");
  r.iterations = get<int>(j, "iterations");
  r.stop_reason = get<std::string>(j, "stop_reason");
  r.alpha_used = get_optional<double>(j, "alpha_used");
  r.smoothness = get_optional<double>(j, "smoothness");
  r.restart = get<int>(j, "restart");
  r.objectives = get_array<double>(j, "objectives");
  r.partition = get_array<int>(j, "partition");
  r.cluster_sizes = get_array<std::int64_t>(j, "cluster_sizes");
  r.size_distribution = get_array<double>(j, "size_distribution");
  r.target_distribution = get_array<double>(j, "target_distribution");

  const Json& m = field(j, "metrics");
  r.metrics.ari = get_optional<double>(m, "ari");
  r.metrics.kl = get_optional<double>(m, "kl");
  r.metrics.cut = get_optional<double>(m, "cut");
  r.metrics.ncut = get_optional<double>(m, "ncut");
  r.metrics.rcut = get_optional<double>(m, "rcut");

  const Json& t = field(j, "timings");
  r.timings.total_seconds = get<double>(t, "total_seconds");
  r.timings.per_iter_seconds = get_array<double>(t, "per_iter_seconds");

  if (static_cast<std::int64_t>(r.partition.size()) != r.n) fail("partition length differs from n");
  // Solver traces include the starting point; k-means histories do not.
  const std::size_t expected = static_cast<std::size_t>(r.iterations) + (r.config.method == "otcut");
  if (r.objectives.size() != expected) {
    fail("objectives length does not match iterations");
  }
  return r;
}

std::string serialize(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

RunReport parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
  return report_from_json(j);
}

}  // namespace otcut::cli
