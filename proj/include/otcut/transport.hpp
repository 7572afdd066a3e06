#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "otcut/graph.hpp"

namespace otcut {

class Partition;

// Source and target marginals of the transportation polytope Pi(source, target).
// The target is rescaled on construction so both sides carry the same mass.
class SizeConstraints {
 public:
  // Throws ConfigError on empty/negative/non-finite entries and
  // InfeasibleMarginals when the totals differ by more than 1e-9.
  SizeConstraints(std::vector<double> source, std::vector<double> target);

  const std::vector<double>& source() const { return source_; }
  const std::vector<double>& target() const { return target_; }
  Index rows() const { return static_cast<Index>(source_.size()); }
  Index cols() const { return static_cast<Index>(target_.size()); }

 private:
  std::vector<double> source_;
  std::vector<double> target_;
};

struct PlanEntry {
  Index row;
  Index col;
  double mass;
};

// An optimal basic feasible solution of the transportation LP.
struct TransportPlan {
  Index rows = 0;
  Index cols = 0;
  // Strictly positive cells, ordered by (row, col).
  std::vector<PlanEntry> entries;
  // <cost, X> at the returned plan.
  double objective = 0.0;
  // Dual potentials of the final basis: u_i + v_j = cost_ij on basic cells.
  std::vector<double> row_potentials;
  std::vector<double> col_potentials;
  // min_ij cost_ij - u_i - v_j; >= -1e-9 certifies optimality.
  double min_reduced_cost = 0.0;
  std::size_t pivots = 0;

  Eigen::MatrixXd to_dense() const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  std::size_t nonzeros() const { return entries.size(); }

  static TransportPlan from_dense(const Eigen::MatrixXd& x);
};

struct SimplexOptions {
  // Candidate cells examined per pricing block; 0 picks max(10, sqrt(n k)).
  std::size_t block_size = 0;
  // 0 picks a cap proportional to n k (n + k).
  std::size_t max_pivots = 0;
};

// Exact minimum of <cost, X> over Pi(source, target) by the transportation
// network simplex. The returned plan is a vertex with at most n + k - 1
// nonzeros. Throws DimensionMismatch, NumericalFailure.
TransportPlan solve_emd(const Eigen::MatrixXd& cost, const SizeConstraints& c,
                        const SimplexOptions& options = {});

// Projects a hard assignment onto the polytope: solve_emd with cost equal to
// the negated indicator matrix of `init`.
TransportPlan solve_emd_from_partition(const Partition& init, const SizeConstraints& c,
                                       const SimplexOptions& options = {});

}  // namespace otcut
