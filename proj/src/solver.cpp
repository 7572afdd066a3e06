#include "otcut/solver.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "otcut/error.hpp"

namespace otcut {
namespace {

void check_dims(const Laplacian& lap, const Eigen::MatrixXd& x) {
  if (x.rows() != lap.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(x.rows()) +
                                                  " rows, Laplacian is " +
                                                  std::to_string(lap.size()) + "x" +
                                                  std::to_string(lap.size()));
  }
}

void check_config(const SolverConfig& cfg, int k) {
  if (k < 2) throw Error(ErrorKind::ConfigError, "k must be >= 2");
  if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) {
    throw Error(ErrorKind::ConfigError, "alpha must be a positive finite number");
  }
  if (cfg.max_iter < 1) throw Error(ErrorKind::ConfigError, "max_iter must be >= 1");
  if (!(cfg.tol >= 0.0)) throw Error(ErrorKind::ConfigError, "tol must be >= 0");
  if (cfg.restarts < 1) throw Error(ErrorKind::ConfigError, "restarts must be >= 1");
  if (cfg.power_iters < 1) throw Error(ErrorKind::ConfigError, "power_iters must be >= 1");
}

struct RunOutcome {
  TransportPlan plan;
  SolveTrace trace;
};

RunOutcome run_once(const Laplacian& lap, int k, const SizeConstraints& constraints,
                    double alpha, const SolverConfig& cfg, std::uint64_t seed,
                    const IterationObserver& observer) {
  using Clock = std::chrono::steady_clock;
  const Index n = lap.size();
  const double lambda = 1.0 / (2.0 * alpha);

  Partition init;
  if (cfg.initial) {
    init = *cfg.initial;
    if (init.size() != n || init.k() != k) {
      throw Error(ErrorKind::ConfigError, "initial partition does not match graph size or k");
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> draw(0, k - 1);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = draw(rng);
    init = Partition(std::move(labels), k);
  }

  TransportPlan x_plan = solve_emd_from_partition(init, constraints, cfg.simplex);
  Eigen::MatrixXd x = x_plan.to_dense();
  Eigen::MatrixXd x_prev = x;
  Eigen::MatrixXd z = x;
  double c_prev = 0.0;
  double c = 1.0;

  SolveTrace trace;
  trace.objectives.push_back(objective(lap, x, lambda));

  for (int t = 1; t <= cfg.max_iter; ++t) {
    const auto start = Clock::now();
    const Eigen::MatrixXd y = x + (c_prev / c) * (z - x) + ((c_prev - 1.0) / c) * (x - x_prev);
    TransportPlan z_plan = prox_step(lap, y, alpha, constraints, cfg.simplex);
    TransportPlan v_plan = prox_step(lap, x, alpha, constraints, cfg.simplex);
    const double c_next = next_momentum(c);

    Eigen::MatrixXd z_next = z_plan.to_dense();
    Eigen::MatrixXd v_next = v_plan.to_dense();
    const double fz = objective(lap, z_next, lambda);
    const double fv = objective(lap, v_next, lambda);

    x_prev = std::move(x);
    if (fz < fv) {
      x = z_next;
      x_plan = z_plan;
    } else {
      x = std::move(v_next);
      x_plan = v_plan;
    }
    z = std::move(z_next);
    c_prev = c;
    c = c_next;

    trace.objectives.push_back(std::min(fz, fv));
    trace.iterations_run = t;
    trace.per_iter_seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
    if (observer) observer(t, x_plan, z_plan, v_plan);

    const double prev = trace.objectives[trace.objectives.size() - 2];
    if (cfg.tol > 0.0 &&
        std::abs(trace.objectives.back() - prev) <= cfg.tol * std::max(1.0, std::abs(prev))) {
      trace.stop_reason = StopReason::Tolerance;
      break;
    }
  }
  return {std::move(x_plan), std::move(trace)};
}

}  // namespace

double objective(const Laplacian& lap, const Eigen::MatrixXd& x, double lambda) {
  check_dims(lap, x);
  const Eigen::MatrixXd lx = lap.matrix * x;
  return x.cwiseProduct(lx).sum() - lambda * x.squaredNorm();
}

double objective(const Laplacian& lap, const TransportPlan& x, double lambda) {
  return objective(lap, x.to_dense(), lambda);
}

Eigen::MatrixXd gradient(const Laplacian& lap, const Eigen::MatrixXd& x) {
  check_dims(lap, x);
  return 2.0 * (lap.matrix * x);
}

double estimate_smoothness(const Laplacian& lap, int iters, std::uint64_t seed) {
  const Index n = lap.size();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  v.normalize();
  double rho = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd w = lap.matrix * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    rho = std::max(rho, v.dot(w));
    v = w / norm;
  }
  rho = std::max(rho, v.dot(lap.matrix * v));
  return 2.0 * 1.01 * rho;
}

TransportPlan prox_step(const Laplacian& lap, const Eigen::MatrixXd& y, double alpha,
                        const SizeConstraints& c, const SimplexOptions& options) {
  check_dims(lap, y);
  if (!(alpha > 0.0)) throw Error(ErrorKind::ConfigError, "alpha must be > 0");
  const Eigen::MatrixXd cost = 2.0 * alpha * (lap.matrix * y) - y;
  return solve_emd(cost, c, options);
}

SizeConstraints make_constraints(const SparseGraph& g, int k, const SolverConfig& cfg) {
  const Index n = g.num_nodes();
  switch (cfg.variant) {
    case Variant::NCut:
      return SizeConstraints(degree_distribution(g), uniform_distribution(k));
    case Variant::RCut:
      return SizeConstraints(uniform_distribution(n), uniform_distribution(k));
    case Variant::Custom: {
      if (static_cast<Index>(cfg.target.size()) != k) {
        throw Error(ErrorKind::ConfigError, "custom target has " +
                                                std::to_string(cfg.target.size()) +
                                                " entries, expected k = " + std::to_string(k));
      }
      if (!cfg.source.empty() && static_cast<Index>(cfg.source.size()) != n) {
        throw Error(ErrorKind::ConfigError, "custom source has " +
                                                std::to_string(cfg.source.size()) +
                                                " entries, expected n = " + std::to_string(n));
      }
      return SizeConstraints(cfg.source.empty() ? uniform_distribution(n) : cfg.source, cfg.target);
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown variant");
}

double effective_alpha(const SolverConfig& cfg, double smoothness) {
  if (cfg.safe_step && smoothness > 0.0) return std::min(cfg.alpha, 0.99 / smoothness);
  return cfg.alpha;
}

double next_momentum(double c) { return (std::sqrt(4.0 * c * c + 1.0) + 1.0) / 2.0; }

SolveResult solve(const SparseGraph& g, int k, const SolverConfig& cfg,
                  const IterationObserver& observer) {
  check_config(cfg, k);
  if (g.num_nodes() == 0) throw Error(ErrorKind::EmptyGraph, "graph has no nodes");
  const SizeConstraints constraints = make_constraints(g, k, cfg);
  const Laplacian lap = build_laplacian(g, cfg.laplacian_kind);

  SolveResult best;
  best.smoothness = estimate_smoothness(lap, cfg.power_iters, cfg.seed);
  best.alpha = effective_alpha(cfg, best.smoothness);

  bool have = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    RunOutcome run = run_once(lap, k, constraints, best.alpha, cfg, cfg.seed + r, observer);
    if (!have || run.trace.objectives.back() < best.trace.objectives.back()) {
      best.plan = std::move(run.plan);
      best.trace = std::move(run.trace);
      best.restart = r;
      have = true;
    }
  }
  best.partition = Partition::from_argmax(best.plan.to_dense());
  return best;
}

}  // namespace otcut
