#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "otcut/graph.hpp"

namespace otcut {

using Point2 = std::array<double, 2>;

struct LabeledPoints {
  std::vector<Point2> points;
  std::vector<long> labels;
};

struct LabeledGraph {
  SparseGraph graph;
  std::vector<long> labels;
};

// Geometry of the toy generators. Two moons: upper arc (cos t, sin t) and
// lower arc (1 - cos t, 0.5 - sin t), t evenly spaced in [0, pi], floor(n/2)
// points on the upper arc (label 0). Circles: outer radius 1 (label 0) and
// inner radius kCirclesFactor (label 1), angles evenly spaced over [0, 2pi).
// Isotropic Gaussian noise with standard deviation `noise` on each coordinate.
inline constexpr double kMoonsShiftX = 1.0;
inline constexpr double kMoonsShiftY = 0.5;
inline constexpr double kCirclesFactor = 0.5;

// Defaults of the `toy` command.
inline constexpr double kDefaultToyNoise = 0.05;
inline constexpr Index kDefaultToyKnn = 10;
inline constexpr double kDefaultToyGamma = 20.0;

LabeledPoints make_two_moons(Index n, double noise, std::uint64_t seed);
LabeledPoints make_circles(Index n, double noise, std::uint64_t seed);

// Symmetric k-NN graph: {i, j} is an edge (weight 1) if either endpoint is
// among the other's k nearest neighbours. Distance ties break on index.
SparseGraph make_knn_graph(const std::vector<Point2>& points, Index k_neighbors);

// Dense graph with w_ij = exp(-gamma * |p_i - p_j|^2), zero diagonal.
// Weights that underflow to 0 are not stored.
SparseGraph make_rbf_graph(const std::vector<Point2>& points, double gamma);

LabeledGraph make_two_moons_knn(Index n, double noise, Index k_neighbors, std::uint64_t seed);
LabeledGraph make_circles_rbf(Index n, double noise, double gamma, std::uint64_t seed);

// G(n, p) with unit weights.
SparseGraph make_erdos_renyi(Index n, double p, std::uint64_t seed);

}  // namespace otcut
