#include <string>

#include <Eigen/Eigenvalues>

#include "otcut/baseline.hpp"
#include "otcut/error.hpp"

namespace otcut {

SpectralEmbedding spectral_embed(const Laplacian& lap, Index k, Index cap) {
  const Index n = lap.size();
  if (n > cap) {
    throw Error(ErrorKind::TooLarge, "n = " + std::to_string(n) +
                                         " exceeds the dense eigensolver cap of " +
                                         std::to_string(cap));
  }
  if (k < 1 || k > n) throw Error(ErrorKind::ConfigError, "spectral embedding needs 1 <= k <= n");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap.dense());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "symmetric eigensolver did not converge");
  }
  // Eigen returns eigenvalues in increasing order.
  return {solver.eigenvectors().leftCols(k), solver.eigenvalues().head(k)};
}

Eigen::MatrixXd normalize_rows(Eigen::MatrixXd x) {
  for (Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0) x.row(i) /= norm;
  }
  return x;
}

SpectralResult spectral_clustering(const SparseGraph& g, int k, LaplacianKind kind,
                                   std::uint64_t seed, int restarts, Index cap) {
  if (k < 1) throw Error(ErrorKind::ConfigError, "k must be >= 1");
  const Laplacian lap = build_laplacian(g, kind);
  SpectralEmbedding emb = spectral_embed(lap, k, cap);
  const Eigen::MatrixXd rows =
      kind == LaplacianKind::SymNormalized ? normalize_rows(emb.vectors) : emb.vectors;
  KMeansResult km = kmeans(rows, k, seed, restarts);
  Partition p = km.partition;
  return {std::move(p), std::move(emb), std::move(km)};
}

}  // namespace otcut
