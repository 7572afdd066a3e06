#include "cli/commands.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "otcut/baseline.hpp"
#include "otcut/datasets.hpp"
#include "otcut/error.hpp"
#include "otcut/io.hpp"
#include "otcut/metrics.hpp"
#include "otcut/solver.hpp"

namespace otcut::cli {
namespace {

using Clock = std::chrono::steady_clock;

bool color_enabled(const std::ostream& err) {
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO) == 1;
}

class Diagnostics {
 public:
  explicit Diagnostics(std::ostream& err) : err_(err), color_(color_enabled(err)) {
    previous_ = set_warning_handler([this](std::string_view msg) {
      err_ << paint("warning:", "33") << ' ' << msg << '\n';
    });
  }
  ~Diagnostics() { set_warning_handler(std::move(previous_)); }
  Diagnostics(const Diagnostics&) = delete;
  Diagnostics& operator=(const Diagnostics&) = delete;

  void error(std::string_view msg) { err_ << paint("error:", "31") << ' ' << msg << '\n'; }

 private:
  std::string paint(std::string_view text, std::string_view code) const {
    if (!color_) return std::string(text);
    return "\x1b[" + std::string(code) + "m" + std::string(text) + "\x1b[0m";
  }

  std::ostream& err_;
  bool color_;
  WarningHandler previous_;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericalFailure:
    case ErrorKind::TooLarge:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

struct GraphFlags {
  std::string path;
  std::string format;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& g) {
  cmd->add_option("--graph", g.path, "Graph file")->required();
  cmd->add_option("--format", g.format, "edgelist or mtx (default: by extension)")
      ->check(CLI::IsMember({"edgelist", "mtx"}));
}

std::string resolve_format(const GraphFlags& g) {
  if (!g.format.empty()) return g.format;
  return std::filesystem::path(g.path).extension() == ".mtx" ? "mtx" : "edgelist";
}

SparseGraph load_graph(const std::string& path, const std::string& format) {
  return format == "mtx" ? load_matrix_market(path) : load_edge_list(path);
}

template <class Fn>
void write_to(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  fn(file);
  if (!file) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

void write_assignment(const std::string& path, const Partition& p) {
  if (path.empty()) return;
  std::vector<long> labels(p.assignment().begin(), p.assignment().end());
  write_to(path, std::cout, [&](std::ostream& o) { write_labels(o, labels); });
}

// Sizes measured with the weights the variant balances: degrees for ncut,
// node counts for rcut, the source marginal for custom runs.
std::vector<double> size_weights(const SparseGraph& g, const std::string& variant,
                                 const SizeConstraints* c) {
  if (variant == "ncut") {
    const auto& d = g.degrees();
    return {d.data(), d.data() + d.size()};
  }
  if (variant == "custom" && c != nullptr) return c->source();
  return std::vector<double>(static_cast<std::size_t>(g.num_nodes()), 1.0);
}

std::optional<Partition> load_truth(const std::string& path, Index n) {
  if (path.empty()) return std::nullopt;
  auto labels = load_labels(path);
  if (static_cast<Index>(labels.size()) != n) {
    throw Error(ErrorKind::LengthMismatch, "labels file has " + std::to_string(labels.size()) +
                                               " entries, graph has " + std::to_string(n) +
                                               " nodes");
  }
  return Partition::from_labels(labels);
}

void fill_common(RunReport& r, const SparseGraph& g, const Partition& p,
                 const std::vector<double>& weights, const std::vector<double>& target,
                 const std::optional<Partition>& truth) {
  r.n = g.num_nodes();
  r.partition = p.assignment();
  for (Index s : p.histogram()) r.cluster_sizes.push_back(s);
  r.size_distribution = cluster_size_distribution(p, weights);
  r.target_distribution = target;
  if (truth) r.metrics.ari = ari(p, *truth);
  r.metrics.kl = kl_divergence(r.size_distribution, r.target_distribution);
  r.metrics.cut = cut_value(g, p);
  r.metrics.ncut = ncut_value(g, p);
  r.metrics.rcut = rcut_value(g, p);
}

// ---- partition ------------------------------------------------------------

struct PartitionFlags {
  GraphFlags graph;
  int k = 0;
  std::string variant = "ncut";
  std::string target_dist;
  std::string source_dist;
  double alpha = 0.5;
  int iters = 20;
  std::uint64_t seed = 0;
  int restarts = 1;
  bool safe_step = false;
  std::string laplacian = "sym";
  double tol = 0.0;
  std::string labels;
  std::string out;
  std::string assignment_out;
  std::string dump_plan;
};

void add_partition(CLI::App& app, PartitionFlags& f) {
  auto* cmd = app.add_subcommand("partition", "Run OT-cut on a graph");
  add_graph_flags(cmd, f.graph);
  cmd->add_option("--k", f.k, "Number of clusters")->required();
  cmd->add_option("--variant", f.variant, "ncut, rcut or custom")
      ->check(CLI::IsMember({"ncut", "rcut", "custom"}));
  cmd->add_option("--target-dist", f.target_dist, "Cluster size distribution (custom)");
  cmd->add_option("--source-dist", f.source_dist, "Node size distribution (custom, default uniform)");
  cmd->add_option("--alpha", f.alpha, "Step size");
  cmd->add_option("--iters", f.iters, "Iteration count");
  cmd->add_option("--seed", f.seed, "Seed for the random initial partition");
  cmd->add_option("--restarts", f.restarts, "Independent starts; lowest objective wins");
  cmd->add_flag("--safe-step", f.safe_step, "Cap alpha at 0.99 / estimated smoothness");
  cmd->add_option("--laplacian", f.laplacian, "sym or unnormalized")
      ->check(CLI::IsMember({"sym", "unnormalized"}));
  cmd->add_option("--tol", f.tol, "Relative objective change for early stopping (0 = off)");
  cmd->add_option("--labels", f.labels, "Ground-truth labels for ARI");
  cmd->add_option("--out", f.out, "Report path (default stdout)");
  cmd->add_option("--assignment-out", f.assignment_out, "Write one cluster index per line");
  cmd->add_option("--dump-plan", f.dump_plan, "Write the final plan as `row col mass` lines");
}

int run_partition(const PartitionFlags& f, std::ostream& out) {
  const auto start = Clock::now();
  if (f.variant == "custom" && f.target_dist.empty()) {
    throw Error(ErrorKind::ConfigError, "--variant custom requires --target-dist");
  }
  if (f.variant != "custom" && (!f.target_dist.empty() || !f.source_dist.empty())) {
    throw Error(ErrorKind::ConfigError,
                "--target-dist and --source-dist are only valid with --variant custom");
  }

  const std::string format = resolve_format(f.graph);
  const SparseGraph g = load_graph(f.graph.path, format);
  const auto truth = load_truth(f.labels, g.num_nodes());

  SolverConfig cfg;
  cfg.alpha = f.alpha;
  cfg.max_iter = f.iters;
  cfg.tol = f.tol;
  cfg.seed = f.seed;
  cfg.restarts = f.restarts;
  cfg.safe_step = f.safe_step;
  cfg.laplacian_kind =
      f.laplacian == "sym" ? LaplacianKind::SymNormalized : LaplacianKind::Unnormalized;
  cfg.variant = f.variant == "ncut"   ? Variant::NCut
                : f.variant == "rcut" ? Variant::RCut
                                      : Variant::Custom;
  if (!f.target_dist.empty()) cfg.target = load_distribution(f.target_dist);
  if (!f.source_dist.empty()) cfg.source = load_distribution(f.source_dist);
  if (f.k < 2) throw Error(ErrorKind::ConfigError, "--k must be >= 2");

  const SizeConstraints constraints = make_constraints(g, f.k, cfg);
  const SolveResult res = solve(g, f.k, cfg);

  RunReport r;
  r.config.method = "otcut";
  r.config.graph = f.graph.path;
  r.config.format = format;
  r.config.k = f.k;
  r.config.variant = f.variant;
  r.config.seed = f.seed;
  r.config.restarts = f.restarts;
  r.config.alpha = f.alpha;
  r.config.iters = f.iters;
  r.config.safe_step = f.safe_step;
  r.config.laplacian = f.laplacian;
  r.config.tol = f.tol;
  if (!f.target_dist.empty()) r.config.target_dist = f.target_dist;
  if (!f.source_dist.empty()) r.config.source_dist = f.source_dist;
  if (!f.labels.empty()) r.config.labels = f.labels;

  r.final_objective = res.trace.objectives.back();
  r.iterations = res.trace.iterations_run;
  r.stop_reason = res.trace.stop_reason == StopReason::MaxIter ? "max_iter" : "tolerance";
  r.alpha_used = res.alpha;
  r.smoothness = res.smoothness;
  r.restart = res.restart;
  r.objectives = res.trace.objectives;
  // The constraints hold the target rescaled to the source mass; the report
  // shows the distribution as requested.
  const std::vector<double> target = cfg.target.empty() ? uniform_distribution(f.k) : cfg.target;
  fill_common(r, g, res.partition, size_weights(g, f.variant, &constraints), target, truth);
  r.timings.per_iter_seconds = res.trace.per_iter_seconds;

  write_assignment(f.assignment_out, res.partition);
  if (!f.dump_plan.empty()) {
    write_to(f.dump_plan, out, [&](std::ostream& o) {
      for (const auto& e : res.plan.entries) {
        o << e.row << ' ' << e.col << ' ' << format_double(e.mass) << '\n';
      }
    });
  }
  r.timings.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  write_to(f.out, out, [&](std::ostream& o) { o << serialize(r); });
  return kExitOk;
}

// ---- baseline -------------------------------------------------------------

struct BaselineFlags {
  GraphFlags graph;
  std::string method = "spectral";
  int k = 0;
  std::string variant = "ncut";
  std::uint64_t seed = 0;
  int restarts = 10;
  std::string labels;
  std::string out;
  std::string assignment_out;
};

void add_baseline(CLI::App& app, BaselineFlags& f) {
  auto* cmd = app.add_subcommand("baseline", "Run spectral clustering on a graph");
  add_graph_flags(cmd, f.graph);
  cmd->add_option("--method", f.method, "Baseline method")->check(CLI::IsMember({"spectral"}));
  cmd->add_option("--k", f.k, "Number of clusters")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--variant", f.variant, "ncut (normalized) or rcut (unnormalized)")
      ->check(CLI::IsMember({"ncut", "rcut"}));
  cmd->add_option("--seed", f.seed, "k-means seed");
  cmd->add_option("--restarts", f.restarts, "k-means restarts");
  cmd->add_option("--labels", f.labels, "Ground-truth labels for ARI");
  cmd->add_option("--out", f.out, "Report path (default stdout)");
  cmd->add_option("--assignment-out", f.assignment_out, "Write one cluster index per line");
}

int run_baseline(const BaselineFlags& f, std::ostream& out) {
  const auto start = Clock::now();
  const std::string format = resolve_format(f.graph);
  const SparseGraph g = load_graph(f.graph.path, format);
  const auto truth = load_truth(f.labels, g.num_nodes());
  const LaplacianKind kind =
      f.variant == "ncut" ? LaplacianKind::SymNormalized : LaplacianKind::Unnormalized;
  const SpectralResult res = spectral_clustering(g, f.k, kind, f.seed, f.restarts);

  RunReport r;
  r.config.method = f.method;
  r.config.graph = f.graph.path;
  r.config.format = format;
  r.config.k = f.k;
  r.config.variant = f.variant;
  r.config.seed = f.seed;
  r.config.restarts = f.restarts;
  r.config.laplacian = kind == LaplacianKind::SymNormalized ? "sym" : "unnormalized";
  if (!f.labels.empty()) r.config.labels = f.labels;

  // The trace of a baseline run is the k-means inertia history.
  const KMeansResult& km = res.kmeans;
  r.final_objective = km.inertia;
  r.iterations = km.iterations;
  r.stop_reason = "converged";
  r.objectives = km.inertia_history;
  fill_common(r, g, res.partition, size_weights(g, f.variant, nullptr),
              uniform_distribution(f.k), truth);

  write_assignment(f.assignment_out, res.partition);
  r.timings.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  write_to(f.out, out, [&](std::ostream& o) { o << serialize(r); });
  return kExitOk;
}

// ---- toy ------------------------------------------------------------------

struct ToyFlags {
  std::string dataset;
  Index n = 300;
  std::uint64_t seed = 0;
  std::optional<Index> knn;
  std::optional<double> gamma;
  double noise = kDefaultToyNoise;
  std::string out;
};

void add_toy(CLI::App& app, ToyFlags& f) {
  auto* cmd = app.add_subcommand("toy", "Generate a two-moons or circles graph with labels");
  cmd->add_option("--dataset", f.dataset, "moons or circles")
      ->required()
      ->check(CLI::IsMember({"moons", "circles"}));
  cmd->add_option("--n", f.n, "Number of points");
  cmd->add_option("--seed", f.seed, "Noise seed");
  auto* knn = cmd->add_option("--knn", f.knn, "Build a k-nearest-neighbour graph");
  auto* gamma = cmd->add_option("--gamma", f.gamma, "Build an RBF graph with this bandwidth");
  knn->excludes(gamma);
  cmd->add_option("--noise", f.noise, "Gaussian noise standard deviation");
  cmd->add_option("--out", f.out, "Output prefix; writes PREFIX.edges and PREFIX.labels")
      ->required();
}

int run_toy(const ToyFlags& f) {
  const LabeledPoints data = f.dataset == "moons" ? make_two_moons(f.n, f.noise, f.seed)
                                                  : make_circles(f.n, f.noise, f.seed);
  SparseGraph g;
  if (f.knn) {
    g = make_knn_graph(data.points, *f.knn);
  } else if (f.gamma) {
    g = make_rbf_graph(data.points, *f.gamma);
  } else if (f.dataset == "moons") {
    g = make_knn_graph(data.points, kDefaultToyKnn);
  } else {
    g = make_rbf_graph(data.points, kDefaultToyGamma);
  }
  write_to(f.out + ".edges", std::cout, [&](std::ostream& o) { write_edge_list(o, g); });
  write_to(f.out + ".labels", std::cout, [&](std::ostream& o) { write_labels(o, data.labels); });
  return kExitOk;
}

// ---- metrics --------------------------------------------------------------

struct MetricsFlags {
  std::string partition;
  std::string labels;
  GraphFlags graph;
  std::string target_dist;
  std::string weights = "uniform";
};

void add_metrics(CLI::App& app, MetricsFlags& f) {
  auto* cmd = app.add_subcommand("metrics", "Score a partition file");
  cmd->add_option("--partition", f.partition, "One cluster index per line")->required();
  cmd->add_option("--labels", f.labels, "Ground-truth labels for ARI");
  cmd->add_option("--graph", f.graph.path, "Graph file for cut, ncut and rcut");
  cmd->add_option("--format", f.graph.format, "edgelist or mtx (default: by extension)")
      ->check(CLI::IsMember({"edgelist", "mtx"}));
  cmd->add_option("--target-dist", f.target_dist, "Target cluster distribution for KL");
  cmd->add_option("--weights", f.weights, "Size weights for KL: uniform or degree")
      ->check(CLI::IsMember({"uniform", "degree"}));
}

int run_metrics(const MetricsFlags& f, std::ostream& out) {
  const auto assignment = load_labels(f.partition);
  for (long l : assignment) {
    if (l < 0) throw Error(ErrorKind::ConfigError, "cluster indices must be nonnegative");
  }
  const long max_label =
      assignment.empty() ? -1 : *std::max_element(assignment.begin(), assignment.end());
  std::vector<double> target;
  if (!f.target_dist.empty()) target = load_distribution(f.target_dist);
  const int k = static_cast<int>(std::max<long>(max_label + 1, static_cast<long>(target.size())));
  const Partition p(std::vector<int>(assignment.begin(), assignment.end()), std::max(k, 1));

  std::optional<SparseGraph> g;
  if (!f.graph.path.empty()) {
    g = load_graph(f.graph.path, resolve_format(f.graph));
    if (g->num_nodes() != p.size()) {
      throw Error(ErrorKind::LengthMismatch, "partition has " + std::to_string(p.size()) +
                                                 " entries, graph has " +
                                                 std::to_string(g->num_nodes()) + " nodes");
    }
  }
  if (f.weights == "degree" && !g) {
    throw Error(ErrorKind::ConfigError, "--weights degree requires --graph");
  }

  MetricsBlock m;
  if (!f.labels.empty()) {
    const auto labels = load_labels(f.labels);
    m.ari = ari(p, Partition::from_labels(labels));
  }
  if (!target.empty()) {
    if (static_cast<int>(target.size()) != k) {
      throw Error(ErrorKind::LengthMismatch, "target has " + std::to_string(target.size()) +
                                                 " entries, partition uses " + std::to_string(k) +
                                                 " clusters");
    }
    std::vector<double> w = f.weights == "degree"
                                ? size_weights(*g, "ncut", nullptr)
                                : std::vector<double>(static_cast<std::size_t>(p.size()), 1.0);
    m.kl = kl_divergence(cluster_size_distribution(p, w), target);
  }
  if (g) {
    m.cut = cut_value(*g, p);
    m.ncut = ncut_value(*g, p);
    m.rcut = rcut_value(*g, p);
  }
  Json j;
  j["n"] = p.size();
  j["k"] = k;
  const Json scores = metrics_to_json(m);
  for (const auto& [key, value] : scores.items()) j[key] = value;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Diagnostics diag(err);

  CLI::App app{"Graph partitioning under cluster-size constraints with optimal transport",
               "otcut"};
  app.require_subcommand(1);
  PartitionFlags partition;
  BaselineFlags baseline;
  ToyFlags toy;
  MetricsFlags metrics;
  add_partition(app, partition);
  add_baseline(app, baseline);
  add_toy(app, toy);
  add_metrics(app, metrics);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0 and print the help of the subcommand that asked.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("partition")) return run_partition(partition, out);
    if (app.got_subcommand("baseline")) return run_baseline(baseline, out);
    if (app.got_subcommand("toy")) return run_toy(toy);
    return run_metrics(metrics, out);
  } catch (const Error& e) {
    diag.error(e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    diag.error(e.what());
    return kExitFailure;
  }
}

}  // namespace otcut::cli
