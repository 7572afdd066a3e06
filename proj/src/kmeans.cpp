#include <limits>
#include <random>

#include "otcut/baseline.hpp"
#include "otcut/error.hpp"

namespace otcut {
namespace {

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
  const Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  std::uniform_int_distribution<Index> first(0, n - 1);
  centers.row(0) = points.row(first(rng));
  Eigen::VectorXd d2(n);
  for (Index i = 0; i < n; ++i) d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double r = u(rng);
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        r -= d2[i];
        if (r < 0.0 && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    centers.row(c) = points.row(pick);
    for (Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

double assign(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
              std::vector<int>& labels) {
  double inertia = 0.0;
  for (Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < centers.rows(); ++c) {
      const double d = (points.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[i] = best;
    inertia += best_d;
  }
  return inertia;
}

double inertia_of(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                  const std::vector<int>& labels) {
  double s = 0.0;
  for (Index i = 0; i < points.rows(); ++i) s += (points.row(i) - centers.row(labels[i])).squaredNorm();
  return s;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int restarts,
                    int max_iter) {
  const Index n = points.rows();
  if (k < 1 || k > n) throw Error(ErrorKind::ConfigError, "k-means needs 1 <= k <= n");
  if (restarts < 1) throw Error(ErrorKind::ConfigError, "k-means needs restarts >= 1");
  std::mt19937_64 rng(seed);

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXd centers = seed_plus_plus(points, k, rng);
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<int> previous;
    std::vector<double> history;
    assign(points, centers, labels);
    int it = 0;
    for (; it < max_iter; ++it) {
      // Update step; an empty cluster keeps its previous center.
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
      std::vector<Index> counts(static_cast<std::size_t>(k), 0);
      for (Index i = 0; i < n; ++i) {
        sums.row(labels[i]) += points.row(i);
        ++counts[labels[i]];
      }
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
      }
      history.push_back(inertia_of(points, centers, labels));
      previous = labels;
      assign(points, centers, labels);
      if (labels == previous) break;
    }
    const double inertia = inertia_of(points, centers, labels);
    if (inertia < best.inertia) {
      best.partition = Partition(labels, k);
      best.centers = centers;
      best.inertia = inertia;
      best.iterations = static_cast<int>(history.size());
      best.inertia_history = std::move(history);
    }
  }
  return best;
}

}  // namespace otcut
