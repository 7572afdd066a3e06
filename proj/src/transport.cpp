#include "otcut/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "network_simplex.hpp"
#include "otcut/error.hpp"
#include "otcut/io.hpp"
#include "otcut/partition.hpp"

namespace otcut {
namespace {

void check_marginal(const std::vector<double>& p, const char* name) {
  if (p.empty()) throw Error(ErrorKind::ConfigError, std::string(name) + " marginal is empty");
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::ConfigError, std::string(name) + " marginal has a negative or non-finite entry");
    }
  }
}

}  // namespace

SizeConstraints::SizeConstraints(std::vector<double> source, std::vector<double> target)
    : source_(std::move(source)), target_(std::move(target)) {
  check_marginal(source_, "source");
  check_marginal(target_, "target");
  const double s = std::accumulate(source_.begin(), source_.end(), 0.0);
  const double t = std::accumulate(target_.begin(), target_.end(), 0.0);
  if (!(s > 0.0) || !(t > 0.0)) {
    throw Error(ErrorKind::InfeasibleMarginals, "marginals must carry positive mass");
  }
  if (std::abs(s - t) > 1e-9) {
    throw Error(ErrorKind::InfeasibleMarginals,
                "source mass " + format_double(s) + " != target mass " + format_double(t));
  }
  const double scale = s / t;
  for (double& x : target_) x *= scale;
}

Eigen::MatrixXd TransportPlan::to_dense() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, cols);
  for (const auto& e : entries) x(e.row, e.col) = e.mass;
  return x;
}

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> s(static_cast<std::size_t>(rows), 0.0);
  for (const auto& e : entries) s[e.row] += e.mass;
  return s;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> s(static_cast<std::size_t>(cols), 0.0);
  for (const auto& e : entries) s[e.col] += e.mass;
  return s;
}

TransportPlan TransportPlan::from_dense(const Eigen::MatrixXd& x) {
  TransportPlan plan;
  plan.rows = x.rows();
  plan.cols = x.cols();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0.0) plan.entries.push_back({i, j, x(i, j)});
    }
  }
  return plan;
}

TransportPlan solve_emd(const Eigen::MatrixXd& cost, const SizeConstraints& c,
                        const SimplexOptions& options) {
  const Index n = c.rows();
  const Index k = c.cols();
  if (cost.rows() != n || cost.cols() != k) {
    throw Error(ErrorKind::DimensionMismatch, "cost is " + std::to_string(cost.rows()) + "x" +
                                                  std::to_string(cost.cols()) + ", marginals " +
                                                  std::to_string(n) + "x" + std::to_string(k));
  }
  if (!cost.allFinite()) throw Error(ErrorKind::ConfigError, "cost matrix has non-finite entries");

  // Zero-demand columns carry no mass in any feasible plan; solving without
  // them keeps the perturbation argument valid (all demands positive).
  std::vector<Index> active;
  for (Index j = 0; j < k; ++j) {
    if (c.target()[j] > 0.0) active.push_back(j);
  }
  const auto ka = static_cast<Index>(active.size());

  std::vector<double> reduced_cost(static_cast<std::size_t>(n * ka));
  for (Index i = 0; i < n; ++i) {
    for (Index a = 0; a < ka; ++a) reduced_cost[i * ka + a] = cost(i, active[a]);
  }
  std::vector<double> demand(static_cast<std::size_t>(ka));
  for (Index a = 0; a < ka; ++a) demand[a] = c.target()[active[a]];

  detail::TransportationSimplex simplex(n, ka, std::move(reduced_cost), c.source(),
                                        std::move(demand), options);
  simplex.run();

  TransportPlan plan;
  plan.rows = n;
  plan.cols = k;
  plan.pivots = simplex.pivots();
  const double mass = std::accumulate(c.source().begin(), c.source().end(), 0.0);
  const double zero_tol = 1e-14 * mass;
  for (const auto& cell : simplex.basic_cells()) {
    if (cell.flow < -1e-9 * mass) {
      throw Error(ErrorKind::NumericalFailure, "optimal basis has a negative flow");
    }
    if (cell.flow > zero_tol) plan.entries.push_back({cell.row, active[cell.col], cell.flow});
  }
  std::ranges::sort(plan.entries, [](const PlanEntry& a, const PlanEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  const auto& pot = simplex.potentials();
  plan.row_potentials.assign(pot.begin(), pot.begin() + n);
  plan.col_potentials.assign(static_cast<std::size_t>(k), 0.0);
  for (Index a = 0; a < ka; ++a) plan.col_potentials[active[a]] = pot[n + a];
  for (Index j = 0; j < k; ++j) {
    if (c.target()[j] > 0.0) continue;
    // Any v_j <= min_i (cost_ij - u_i) is dual feasible for an empty column.
    double v = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) v = std::min(v, cost(i, j) - plan.row_potentials[i]);
    plan.col_potentials[j] = v;
  }

  plan.objective = 0.0;
  for (const auto& e : plan.entries) plan.objective += cost(e.row, e.col) * e.mass;
  plan.min_reduced_cost = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < k; ++j) {
      plan.min_reduced_cost = std::min(
          plan.min_reduced_cost, cost(i, j) - plan.row_potentials[i] - plan.col_potentials[j]);
    }
  }
  return plan;
}

TransportPlan solve_emd_from_partition(const Partition& init, const SizeConstraints& c,
                                       const SimplexOptions& options) {
  if (init.size() != c.rows() || init.k() != c.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "initial partition does not match the marginals");
  }
  return solve_emd(-init.indicator(), c, options);
}

}  // namespace otcut
