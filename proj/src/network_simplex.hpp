#pragma once

#include <cstdint>
#include <vector>

#include "otcut/graph.hpp"
#include "otcut/transport.hpp"

namespace otcut::detail {

// Transportation simplex over spanning-tree bases of the bipartite network
// (n supply nodes, k demand nodes, all n k arcs).
//
// Degeneracy is removed by Orden's perturbation: every supply becomes
// a_i + eps and the last demand b_k + n eps. eps is kept symbolic: each flow
// is the pair (x, m) meaning x + m eps, compared lexicographically. With
// every demand strictly positive, all basic flows of every feasible basis are
// lexicographically positive, so each pivot strictly decreases the perturbed
// objective and the method cannot cycle. Dropping eps (reading x) recovers
// the basic solution of the unperturbed problem for the same optimal basis.
class TransportationSimplex {
 public:
  // cost is row-major n x k. Demands must be > 0; supplies >= 0.
  TransportationSimplex(Index n, Index k, std::vector<double> cost, std::vector<double> supply,
                        std::vector<double> demand, const SimplexOptions& options);

  void run();

  // Basic cells as (row, col, x); may include zero flows.
  struct BasicCell {
    Index row;
    Index col;
    double flow;
  };
  std::vector<BasicCell> basic_cells() const;
  const std::vector<double>& potentials() const { return potential_; }
  std::size_t pivots() const { return pivots_; }

 private:
  struct Flow {
    double x = 0.0;
    std::int64_t m = 0;
  };

  bool flow_less(const Flow& a, const Flow& b) const;
  void northwest_corner();
  void rebuild_tree();
  void hang_subtree(Index top, Index parent, Index cell);
  void compute_flows();
  Index find_entering();
  void pivot(Index entering);
  void remove_from_adj(Index node, Index cell);

  Index n_;
  Index k_;
  std::vector<double> cost_;
  std::vector<Flow> supply_;
  std::vector<Flow> demand_;
  SimplexOptions options_;
  double flow_tol_ = 0.0;
  double price_tol_ = 0.0;

  std::vector<char> is_basic_;      // per cell
  std::vector<Flow> flow_;          // per cell, meaningful on basic cells
  std::vector<std::vector<Index>> adj_;  // node -> incident basic cells

  // Tree rooted at row node 0. Nodes 0..n-1 are rows, n..n+k-1 columns.
  std::vector<Index> parent_node_;
  std::vector<Index> parent_cell_;
  std::vector<Index> depth_;
  std::vector<Index> order_;
  std::vector<double> potential_;
  std::vector<Index> path_row_, path_col_;

  std::size_t next_cell_ = 0;
  std::size_t pivots_ = 0;
};

}  // namespace otcut::detail
