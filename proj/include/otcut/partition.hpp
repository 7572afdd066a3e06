#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "otcut/graph.hpp"

namespace otcut {

// Hard assignment of n nodes to clusters 0..k-1. Clusters may be empty.
class Partition {
 public:
  Partition() = default;
  // Throws ConfigError if k < 1 or a label lies outside [0, k).
  Partition(std::vector<int> assignment, int k);

  // Relabels arbitrary integer labels to 0..k-1 in order of first appearance.
  static Partition from_labels(std::span<const long> labels);

  // Row-wise argmax of a nonnegative n x k matrix; ties go to the lowest column.
  static Partition from_argmax(const Eigen::MatrixXd& x);

  Index size() const { return static_cast<Index>(assignment_.size()); }
  int k() const { return k_; }
  int operator[](Index i) const { return assignment_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& assignment() const { return assignment_; }

  // Cluster cardinalities; sums to size().
  std::vector<Index> histogram() const;
  // n x k {0, 1} matrix.
  Eigen::MatrixXd indicator() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  int k_ = 0;
};

// Entry j = sum_{i in A_j} weight_i / sum_i weight_i. Without weights every
// node counts 1 (cardinality sizes); pass degrees for volume sizes.
std::vector<double> cluster_size_distribution(const Partition& p,
                                              std::optional<std::span<const double>> weights = {});

}  // namespace otcut
