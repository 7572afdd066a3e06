#pragma once

#include <span>
#include <vector>

#include "otcut/graph.hpp"
#include "otcut/partition.hpp"

namespace otcut {

struct ContingencyTable {
  // counts(r, c) = |{i : a_i = r, b_i = c}|, row-major rows x cols.
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> counts;
  std::vector<Index> row_totals;
  std::vector<Index> col_totals;
  Index total = 0;

  Index at(Index r, Index c) const { return counts[static_cast<std::size_t>(r * cols + c)]; }
};

ContingencyTable contingency_table(const Partition& a, const Partition& b);

// Hubert-Arabie adjusted Rand index. Throws LengthMismatch.
double ari(const Partition& a, const Partition& b);

// sum_j p_j log(p_j / q_j), 0 log 0 = 0; +infinity if some q_j = 0 < p_j.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// sum_i cut(A_i): every cross-cluster edge is counted from both sides.
double cut_value(const SparseGraph& g, const Partition& p);
// sum_i cut(A_i) / vol(A_i); empty or zero-volume clusters contribute 0.
double ncut_value(const SparseGraph& g, const Partition& p);
// sum_i cut(A_i) / |A_i|; empty clusters contribute 0.
double rcut_value(const SparseGraph& g, const Partition& p);

// cut(A_i) for every cluster.
std::vector<double> cluster_cuts(const SparseGraph& g, const Partition& p);

}  // namespace otcut
