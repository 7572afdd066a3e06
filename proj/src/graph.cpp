#include "otcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "otcut/error.hpp"

namespace otcut {
namespace {

void check_edge(Index n, const Edge& e) {
  if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
    throw Error(ErrorKind::IndexOutOfRange,
                "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                    ") outside [0, " + std::to_string(n) + ")");
  }
  if (!std::isfinite(e.w)) {
    throw Error(ErrorKind::ParseError, "non-finite edge weight");
  }
  if (e.w < 0.0) {
    throw Error(ErrorKind::NegativeWeight,
                "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                    ") has weight " + std::to_string(e.w));
  }
}

SparseGraph from_symmetric_map(Index n, const std::map<std::pair<Index, Index>, double>& sym) {
  std::vector<Index> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> col_idx;
  std::vector<double> weights;
  col_idx.reserve(sym.size());
  weights.reserve(sym.size());
  for (const auto& [key, w] : sym) {
    row_ptr[static_cast<std::size_t>(key.first) + 1]++;
    col_idx.push_back(key.second);
    weights.push_back(w);
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return SparseGraph::from_csr(n, std::move(row_ptr), std::move(col_idx), std::move(weights));
}

}  // namespace

SparseGraph::SparseGraph(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                         std::vector<double> weights)
    : n_(n),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      weights_(std::move(weights)),
      degrees_(static_cast<std::size_t>(n), 0.0) {
  for (Index u = 0; u < n_; ++u) {
    double d = 0.0;
    for (Index p = row_ptr_[u]; p < row_ptr_[u + 1]; ++p) d += weights_[p];
    degrees_[u] = d;
  }
}

SparseGraph SparseGraph::from_edges(Index n, std::span<const Edge> edges) {
  if (n < 0) throw Error(ErrorKind::ConfigError, "negative node count");
  std::map<std::pair<Index, Index>, double> sym;
  for (const Edge& e : edges) {
    check_edge(n, e);
    sym[{e.u, e.v}] += e.w;
    if (e.u != e.v) sym[{e.v, e.u}] += e.w;
  }
  return from_symmetric_map(n, sym);
}

SparseGraph SparseGraph::from_directed_entries(Index n, std::span<const Edge> entries) {
  if (n < 0) throw Error(ErrorKind::ConfigError, "negative node count");
  std::map<std::pair<Index, Index>, double> directed;
  for (const Edge& e : entries) {
    check_edge(n, e);
    directed[{e.u, e.v}] += e.w;
  }
  std::map<std::pair<Index, Index>, double> sym;
  for (const auto& [key, w] : directed) {
    auto& a = sym[key];
    auto& b = sym[{key.second, key.first}];
    a = std::max(a, w);
    b = std::max(b, w);
  }
  return from_symmetric_map(n, sym);
}

SparseGraph SparseGraph::from_csr(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                                  std::vector<double> weights) {
  if (n < 0) throw Error(ErrorKind::ConfigError, "negative node count");
  if (row_ptr.size() != static_cast<std::size_t>(n) + 1 || row_ptr.front() != 0 ||
      col_idx.size() != weights.size() ||
      row_ptr.back() != static_cast<Index>(col_idx.size())) {
    throw Error(ErrorKind::DimensionMismatch, "inconsistent CSR buffers");
  }
  for (Index u = 0; u < n; ++u) {
    if (row_ptr[u + 1] < row_ptr[u]) {
      throw Error(ErrorKind::DimensionMismatch, "row_ptr is not monotone");
    }
    for (Index p = row_ptr[u]; p < row_ptr[u + 1]; ++p) {
      check_edge(n, Edge{u, col_idx[p], weights[p]});
      if (p > row_ptr[u] && col_idx[p] <= col_idx[p - 1]) {
        throw Error(ErrorKind::DimensionMismatch, "columns not sorted/unique in row " +
                                                      std::to_string(u));
      }
    }
  }
  SparseGraph g(n, std::move(row_ptr), std::move(col_idx), std::move(weights));
  for (Index u = 0; u < n; ++u) {
    for (Index p = g.row_ptr_[u]; p < g.row_ptr_[u + 1]; ++p) {
      if (g.weight(g.col_idx_[p], u) != g.weights_[p]) {
        throw Error(ErrorKind::AsymmetricInput, "w(" + std::to_string(u) + ", " +
                                                    std::to_string(g.col_idx_[p]) +
                                                    ") differs from its transpose");
      }
    }
  }
  return g;
}

Index SparseGraph::num_edges() const {
  Index loops = 0;
  for (Index u = 0; u < n_; ++u) {
    if (std::ranges::binary_search(neighbors(u), u)) ++loops;
  }
  return (nnz() - loops) / 2 + loops;
}

std::span<const Index> SparseGraph::neighbors(Index u) const {
  return {col_idx_.data() + row_ptr_[u], static_cast<std::size_t>(row_ptr_[u + 1] - row_ptr_[u])};
}

std::span<const double> SparseGraph::neighbor_weights(Index u) const {
  return {weights_.data() + row_ptr_[u], static_cast<std::size_t>(row_ptr_[u + 1] - row_ptr_[u])};
}

double SparseGraph::weight(Index u, Index v) const {
  auto cols = neighbors(u);
  auto it = std::ranges::lower_bound(cols, v);
  if (it == cols.end() || *it != v) return 0.0;
  return weights_[row_ptr_[u] + (it - cols.begin())];
}

double SparseGraph::total_degree() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0.0);
}

std::vector<Edge> SparseGraph::edge_list() const {
  std::vector<Edge> out;
  for (Index u = 0; u < n_; ++u) {
    for (Index p = row_ptr_[u]; p < row_ptr_[u + 1]; ++p) {
      if (col_idx_[p] >= u) out.push_back({u, col_idx_[p], weights_[p]});
    }
  }
  return out;
}

Eigen::SparseMatrix<double> SparseGraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(weights_.size());
  for (Index u = 0; u < n_; ++u) {
    for (Index p = row_ptr_[u]; p < row_ptr_[u + 1]; ++p) {
      triplets.emplace_back(u, col_idx_[p], weights_[p]);
    }
  }
  Eigen::SparseMatrix<double> a(n_, n_);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

std::vector<double> normalize_distribution(std::vector<double> p) {
  for (int pass = 0; pass < 2; ++pass) {
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    if (!(total > 0.0)) throw Error(ErrorKind::EmptyGraph, "distribution has zero total mass");
    for (double& x : p) x /= total;
  }
  return p;
}

std::vector<double> degree_distribution(const SparseGraph& g) {
  if (g.num_nodes() == 0 || !(g.total_degree() > 0.0)) {
    throw Error(ErrorKind::EmptyGraph, "graph has zero total weight");
  }
  return normalize_distribution(g.degrees());
}

std::vector<double> uniform_distribution(Index n) {
  if (n <= 0) throw Error(ErrorKind::ConfigError, "uniform distribution needs n > 0");
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
}

}  // namespace otcut
