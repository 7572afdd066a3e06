#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace otcut {

using Index = std::int64_t;

struct Edge {
  Index u;
  Index v;
  double w;
};

// Symmetric, nonnegatively weighted adjacency in CSR layout. Each undirected
// edge {u, v} with u != v is stored as both (u, v) and (v, u); a self-loop is
// stored once on the diagonal. Columns within a row are sorted and unique.
class SparseGraph {
 public:
  SparseGraph() = default;

  // Each edge contributes w to (u, v) and (v, u). Repeated edges are summed.
  static SparseGraph from_edges(Index n, std::span<const Edge> edges);

  // Directed entries as read from a file: repeated (u, v) pairs are summed,
  // then the two directions are merged by taking the larger weight.
  static SparseGraph from_directed_entries(Index n, std::span<const Edge> entries);

  // Raw CSR buffers; validated for sortedness, range, sign and exact symmetry.
  static SparseGraph from_csr(Index n, std::vector<Index> row_ptr,
                              std::vector<Index> col_idx,
                              std::vector<double> weights);

  Index num_nodes() const { return n_; }
  // Stored (directed) entries, i.e. 2|E| minus the number of self-loops.
  Index nnz() const { return static_cast<Index>(weights_.size()); }
  // Undirected edges including self-loops.
  Index num_edges() const;

  std::span<const Index> neighbors(Index u) const;
  std::span<const double> neighbor_weights(Index u) const;
  double weight(Index u, Index v) const;

  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& weights() const { return weights_; }

  // d_u = sum_v w_uv (self-loop weight included once).
  const std::vector<double>& degrees() const { return degrees_; }
  double total_degree() const;

  // Each undirected edge once, u <= v, ordered by (u, v).
  std::vector<Edge> edge_list() const;

  Eigen::SparseMatrix<double> adjacency() const;

 private:
  SparseGraph(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
              std::vector<double> weights);

  Index n_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> weights_;
  std::vector<double> degrees_;
};

enum class LaplacianKind { Unnormalized, SymNormalized };

struct Laplacian {
  LaplacianKind kind = LaplacianKind::Unnormalized;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd degrees;

  Index size() const { return matrix.rows(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

// Unnormalized: D - W. SymNormalized: I - D^{-1/2} W D^{-1/2}, with an
// identity row for isolated nodes (a warning is emitted for those).
Laplacian build_laplacian(const SparseGraph& g, LaplacianKind kind);

// pi^s = D 1 / sum_i d_ii. Isolated nodes get mass 0.
std::vector<double> degree_distribution(const SparseGraph& g);

std::vector<double> uniform_distribution(Index n);

// Divides by the sum; a second pass absorbs the representation error.
std::vector<double> normalize_distribution(std::vector<double> p);

}  // namespace otcut
