#include "otcut/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "otcut/error.hpp"

namespace otcut {
namespace {

double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

void add_noise(std::vector<Point2>& points, double noise, std::uint64_t seed) {
  if (noise <= 0.0) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, noise);
  for (auto& p : points) {
    p[0] += normal(rng);
    p[1] += normal(rng);
  }
}

void check_toy_args(Index n, double noise) {
  if (n < 4) throw Error(ErrorKind::ConfigError, "toy datasets need n >= 4");
  if (!(noise >= 0.0)) throw Error(ErrorKind::ConfigError, "noise must be >= 0");
}

}  // namespace

LabeledPoints make_two_moons(Index n, double noise, std::uint64_t seed) {
  check_toy_args(n, noise);
  const Index n_upper = n / 2;
  const Index n_lower = n - n_upper;
  LabeledPoints out;
  out.points.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n_upper; ++i) {
    const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_upper - 1);
    out.points.push_back({std::cos(t), std::sin(t)});
    out.labels.push_back(0);
  }
  for (Index i = 0; i < n_lower; ++i) {
    const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_lower - 1);
    out.points.push_back({kMoonsShiftX - std::cos(t), kMoonsShiftY - std::sin(t)});
    out.labels.push_back(1);
  }
  add_noise(out.points, noise, seed);
  return out;
}

LabeledPoints make_circles(Index n, double noise, std::uint64_t seed) {
  check_toy_args(n, noise);
  const Index n_outer = n / 2;
  const Index n_inner = n - n_outer;
  LabeledPoints out;
  out.points.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n_outer; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_outer);
    out.points.push_back({std::cos(t), std::sin(t)});
    out.labels.push_back(0);
  }
  for (Index i = 0; i < n_inner; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_inner);
    out.points.push_back({kCirclesFactor * std::cos(t), kCirclesFactor * std::sin(t)});
    out.labels.push_back(1);
  }
  add_noise(out.points, noise, seed);
  return out;
}

SparseGraph make_knn_graph(const std::vector<Point2>& points, Index k_neighbors) {
  const auto n = static_cast<Index>(points.size());
  if (k_neighbors < 1 || k_neighbors >= n) {
    throw Error(ErrorKind::ConfigError, "k_neighbors must lie in [1, n)");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * k_neighbors));
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) dist[j] = squared_distance(points[i], points[j]);
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::erase(order, i);
    std::partial_sort(order.begin(), order.begin() + k_neighbors, order.end(),
                      [&](Index a, Index b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    for (Index r = 0; r < k_neighbors; ++r) edges.push_back({i, order[r], 1.0});
  }
  // Either endpoint selecting the other is enough; duplicates collapse to 1.
  return SparseGraph::from_directed_entries(n, edges);
}

SparseGraph make_rbf_graph(const std::vector<Point2>& points, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::ConfigError, "gamma must be > 0");
  const auto n = static_cast<Index>(points.size());
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double w = std::exp(-gamma * squared_distance(points[i], points[j]));
      if (w > 0.0) edges.push_back({i, j, w});
    }
  }
  return SparseGraph::from_edges(n, edges);
}

LabeledGraph make_two_moons_knn(Index n, double noise, Index k_neighbors, std::uint64_t seed) {
  auto data = make_two_moons(n, noise, seed);
  return {make_knn_graph(data.points, k_neighbors), std::move(data.labels)};
}

LabeledGraph make_circles_rbf(Index n, double noise, double gamma, std::uint64_t seed) {
  auto data = make_circles(n, noise, seed);
  return {make_rbf_graph(data.points, gamma), std::move(data.labels)};
}

SparseGraph make_erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 1 || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::ConfigError, "Erdos-Renyi needs n >= 1 and p in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j, 1.0});
    }
  }
  return SparseGraph::from_edges(n, edges);
}

}  // namespace otcut
