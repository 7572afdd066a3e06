#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "otcut/graph.hpp"
#include "otcut/partition.hpp"

namespace otcut {

inline constexpr Index kDenseEigenCap = 3000;

struct SpectralEmbedding {
  // n x k, orthonormal columns: eigenvectors of the k smallest eigenvalues.
  Eigen::MatrixXd vectors;
  // Ascending.
  Eigen::VectorXd eigenvalues;
};

// Dense symmetric eigendecomposition. Throws TooLarge when n > cap and
// ConfigError unless 1 <= k <= n.
SpectralEmbedding spectral_embed(const Laplacian& lap, Index k, Index cap = kDenseEigenCap);

// Scales every row to unit length (zero rows are left alone).
Eigen::MatrixXd normalize_rows(Eigen::MatrixXd x);

struct KMeansResult {
  Partition partition;
  Eigen::MatrixXd centers;
  double inertia = 0.0;
  int iterations = 0;
  // Inertia after each Lloyd update of the winning restart.
  std::vector<double> inertia_history;
};

// k-means++ seeding followed by Lloyd iterations until the assignment stops
// changing or max_iter; the restart with the lowest inertia wins.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts = 10,
                    int max_iter = 300);

struct SpectralResult {
  Partition partition;
  SpectralEmbedding embedding;
  KMeansResult kmeans;
};

// Normalized-cut recipe (SymNormalized, unit-length rows) or ratio-cut recipe
// (Unnormalized, raw rows), followed by k-means.
SpectralResult spectral_clustering(const SparseGraph& g, int k, LaplacianKind kind,
                                   std::uint64_t seed, int restarts = 10,
                                   Index cap = kDenseEigenCap);

}  // namespace otcut
