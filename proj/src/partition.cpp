#include "otcut/partition.hpp"

#include <map>
#include <numeric>
#include <string>

#include "otcut/error.hpp"

namespace otcut {

Partition::Partition(std::vector<int> assignment, int k) : assignment_(std::move(assignment)), k_(k) {
  if (k_ < 1) throw Error(ErrorKind::ConfigError, "partition needs k >= 1");
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] < 0 || assignment_[i] >= k_) {
      throw Error(ErrorKind::ConfigError, "label " + std::to_string(assignment_[i]) + " of node " +
                                              std::to_string(i) + " outside [0, " +
                                              std::to_string(k_) + ")");
    }
  }
}

Partition Partition::from_labels(std::span<const long> labels) {
  std::map<long, int> ids;
  std::vector<int> assignment;
  assignment.reserve(labels.size());
  for (long l : labels) {
    auto [it, inserted] = ids.try_emplace(l, static_cast<int>(ids.size()));
    assignment.push_back(it->second);
  }
  return Partition(std::move(assignment), std::max<int>(1, static_cast<int>(ids.size())));
}

Partition Partition::from_argmax(const Eigen::MatrixXd& x) {
  std::vector<int> assignment(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    for (Index j = 1; j < x.cols(); ++j) {
      if (x(i, j) > x(i, best)) best = static_cast<int>(j);
    }
    assignment[i] = best;
  }
  return Partition(std::move(assignment), static_cast<int>(x.cols()));
}

std::vector<Index> Partition::histogram() const {
  std::vector<Index> h(static_cast<std::size_t>(k_), 0);
  for (int a : assignment_) ++h[a];
  return h;
}

Eigen::MatrixXd Partition::indicator() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(size(), k_);
  for (Index i = 0; i < size(); ++i) x(i, assignment_[i]) = 1.0;
  return x;
}

std::vector<double> cluster_size_distribution(const Partition& p,
                                              std::optional<std::span<const double>> weights) {
  if (weights && static_cast<Index>(weights->size()) != p.size()) {
    throw Error(ErrorKind::LengthMismatch, "weights and partition differ in length");
  }
  std::vector<double> sizes(static_cast<std::size_t>(p.k()), 0.0);
  double total = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    sizes[p[i]] += w;
    total += w;
  }
  if (total > 0.0) {
    for (double& s : sizes) s /= total;
  }
  return sizes;
}

}  // namespace otcut
