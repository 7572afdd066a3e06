#include <cmath>
#include <string>
#include <vector>

#include "otcut/error.hpp"
#include "otcut/graph.hpp"

namespace otcut {

Laplacian build_laplacian(const SparseGraph& g, LaplacianKind kind) {
  const Index n = g.num_nodes();
  const auto& deg = g.degrees();

  // SparseGraph guarantees symmetry on construction; re-check here because
  // everything downstream (eigen bounds, descent) silently relies on it.
  for (Index u = 0; u < n; ++u) {
    auto cols = g.neighbors(u);
    auto ws = g.neighbor_weights(u);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (ws[p] < 0.0) throw Error(ErrorKind::NegativeWeight, "negative weight in adjacency");
      if (g.weight(cols[p], u) != ws[p]) {
        throw Error(ErrorKind::AsymmetricInput, "adjacency is not symmetric");
      }
    }
  }

  std::vector<double> inv_sqrt(static_cast<std::size_t>(n), 0.0);
  Index isolated = 0;
  if (kind == LaplacianKind::SymNormalized) {
    for (Index u = 0; u < n; ++u) {
      if (deg[u] > 0.0) {
        inv_sqrt[u] = 1.0 / std::sqrt(deg[u]);
      } else {
        ++isolated;
      }
    }
    if (isolated > 0) {
      warn(std::to_string(isolated) +
           " isolated node(s); using identity rows in the normalized Laplacian");
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.nnz() + n));
  for (Index u = 0; u < n; ++u) {
    double diag = 0.0;
    auto cols = g.neighbors(u);
    auto ws = g.neighbor_weights(u);
    if (kind == LaplacianKind::Unnormalized) {
      diag = deg[u];
      for (std::size_t p = 0; p < cols.size(); ++p) {
        if (cols[p] == u) {
          diag -= ws[p];
        } else {
          triplets.emplace_back(u, cols[p], -ws[p]);
        }
      }
    } else {
      diag = 1.0;
      if (deg[u] > 0.0) {
        for (std::size_t p = 0; p < cols.size(); ++p) {
          const double scaled = ws[p] * (inv_sqrt[u] * inv_sqrt[cols[p]]);
          if (cols[p] == u) {
            diag -= scaled;
          } else {
            triplets.emplace_back(u, cols[p], -scaled);
          }
        }
      }
    }
    triplets.emplace_back(u, u, diag);
  }

  Laplacian lap;
  lap.kind = kind;
  lap.matrix.resize(n, n);
  lap.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lap.matrix.makeCompressed();
  lap.degrees = Eigen::Map<const Eigen::VectorXd>(deg.data(), n);
  return lap;
}

}  // namespace otcut
