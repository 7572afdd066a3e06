#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "otcut/error.hpp"

namespace otcut::detail {

TransportationSimplex::TransportationSimplex(Index n, Index k, std::vector<double> cost,
                                             std::vector<double> supply,
                                             std::vector<double> demand,
                                             const SimplexOptions& options)
    : n_(n), k_(k), cost_(std::move(cost)), options_(options) {
  supply_.resize(static_cast<std::size_t>(n_));
  demand_.resize(static_cast<std::size_t>(k_));
  for (Index i = 0; i < n_; ++i) supply_[i] = {supply[i], 1};
  for (Index j = 0; j < k_; ++j) demand_[j] = {demand[j], 0};
  demand_[k_ - 1].m = n_;

  const double mass = std::accumulate(supply.begin(), supply.end(), 0.0);
  flow_tol_ = 1e-12 * std::max(mass, 1e-300);
  double cmax = 0.0;
  for (double c : cost_) cmax = std::max(cmax, std::abs(c));
  price_tol_ = 1e-11 * cmax;

  if (options_.block_size == 0) {
    options_.block_size = std::max<std::size_t>(
        10, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_ * k_))));
  }
  if (options_.max_pivots == 0) {
    options_.max_pivots = 50 * static_cast<std::size_t>(n_ * k_ + n_ + k_) + 1000;
  }

  const auto nodes = static_cast<std::size_t>(n_ + k_);
  is_basic_.assign(static_cast<std::size_t>(n_ * k_), 0);
  flow_.assign(static_cast<std::size_t>(n_ * k_), Flow{});
  adj_.assign(nodes, {});
  parent_node_.assign(nodes, -1);
  parent_cell_.assign(nodes, -1);
  depth_.assign(nodes, 0);
  potential_.assign(nodes, 0.0);
  order_.reserve(nodes);
}

bool TransportationSimplex::flow_less(const Flow& a, const Flow& b) const {
  if (a.x < b.x - flow_tol_) return true;
  if (a.x > b.x + flow_tol_) return false;
  return a.m < b.m;
}

void TransportationSimplex::northwest_corner() {
  // Rows are visited grouped by their cheapest column, so the corner rule
  // already sends most mass where it is cheap. Any row order gives a feasible
  // basis with lexicographically positive flows.
  std::vector<Index> best(static_cast<std::size_t>(n_));
  std::vector<double> margin(static_cast<std::size_t>(n_));
  for (Index i = 0; i < n_; ++i) {
    const double* row = &cost_[static_cast<std::size_t>(i * k_)];
    const Index j = std::min_element(row, row + k_) - row;
    double second = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < k_; ++c) {
      if (c != j) second = std::min(second, row[c]);
    }
    best[i] = j;
    margin[i] = k_ > 1 ? second - row[j] : 0.0;
  }
  std::vector<Index> rows(static_cast<std::size_t>(n_));
  std::iota(rows.begin(), rows.end(), Index{0});
  std::stable_sort(rows.begin(), rows.end(), [&](Index a, Index b) {
    if (best[a] != best[b]) return best[a] < best[b];
    return margin[a] > margin[b];
  });

  std::vector<Flow> s = supply_;
  std::vector<Flow> d = demand_;
  Index r = 0, j = 0;
  while (true) {
    const Index i = rows[r];
    const Index cell = i * k_ + j;
    is_basic_[cell] = 1;
    adj_[i].push_back(cell);
    adj_[n_ + j].push_back(cell);
    if (r == n_ - 1 && j == k_ - 1) break;
    const bool row_exhausted = flow_less(s[i], d[j]);
    const Flow amount = row_exhausted ? s[i] : d[j];
    s[i].x -= amount.x;
    s[i].m -= amount.m;
    d[j].x -= amount.x;
    d[j].m -= amount.m;
    if (r == n_ - 1) {
      ++j;
    } else if (j == k_ - 1 || row_exhausted) {
      ++r;
    } else {
      ++j;
    }
  }
}

void TransportationSimplex::rebuild_tree() {
  std::fill(parent_node_.begin(), parent_node_.end(), Index{-1});
  parent_node_[0] = 0;
  parent_cell_[0] = -1;
  depth_[0] = 0;
  potential_[0] = 0.0;
  order_.clear();
  order_.push_back(0);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Index node = order_[head];
    for (Index cell : adj_[node]) {
      const Index other = node < n_ ? n_ + cell % k_ : cell / k_;
      if (parent_node_[other] != -1) continue;
      parent_node_[other] = node;
      parent_cell_[other] = cell;
      depth_[other] = depth_[node] + 1;
      potential_[other] = cost_[cell] - potential_[node];
      order_.push_back(other);
    }
  }
  if (static_cast<Index>(order_.size()) != n_ + k_) {
    throw Error(ErrorKind::NumericalFailure, "basis lost its spanning-tree structure");
  }
}

// Re-roots the component containing `top` (cut off from the root) under
// `parent` via `cell`, refreshing parents, depths and potentials there only.
void TransportationSimplex::hang_subtree(Index top, Index parent, Index cell) {
  parent_node_[top] = parent;
  parent_cell_[top] = cell;
  depth_[top] = depth_[parent] + 1;
  potential_[top] = cost_[cell] - potential_[parent];
  order_.clear();
  order_.push_back(top);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const Index node = order_[head];
    for (Index c : adj_[node]) {
      if (c == parent_cell_[node]) continue;
      const Index other = node < n_ ? n_ + c % k_ : c / k_;
      parent_node_[other] = node;
      parent_cell_[other] = c;
      depth_[other] = depth_[node] + 1;
      potential_[other] = cost_[c] - potential_[node];
      order_.push_back(other);
    }
  }
}

void TransportationSimplex::compute_flows() {
  rebuild_tree();
  std::vector<Flow> residual(static_cast<std::size_t>(n_ + k_));
  for (Index i = 0; i < n_; ++i) residual[i] = supply_[i];
  for (Index j = 0; j < k_; ++j) residual[n_ + j] = demand_[j];
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const Index node = *it;
    if (node == 0) continue;
    const Flow f = residual[node];
    flow_[parent_cell_[node]] = f;
    Flow& up = residual[parent_node_[node]];
    up.x -= f.x;
    up.m -= f.m;
  }
}

Index TransportationSimplex::find_entering() {
  const auto total = static_cast<std::size_t>(n_ * k_);
  Index best = -1;
  double best_d = -price_tol_;
  std::size_t in_block = 0;
  for (std::size_t scanned = 0; scanned < total; ++scanned) {
    const std::size_t cell = next_cell_;
    next_cell_ = next_cell_ + 1 == total ? 0 : next_cell_ + 1;
    if (!is_basic_[cell]) {
      const Index i = static_cast<Index>(cell) / k_;
      const Index j = static_cast<Index>(cell) % k_;
      const double d = cost_[cell] - potential_[i] - potential_[n_ + j];
      if (d < best_d) {
        best_d = d;
        best = static_cast<Index>(cell);
      }
    }
    if (++in_block == options_.block_size) {
      if (best >= 0) return best;
      in_block = 0;
    }
  }
  return best;
}

void TransportationSimplex::remove_from_adj(Index node, Index cell) {
  auto& list = adj_[node];
  auto it = std::find(list.begin(), list.end(), cell);
  *it = list.back();
  list.pop_back();
}

void TransportationSimplex::pivot(Index entering) {
  const Index row = entering / k_;
  const Index col = n_ + entering % k_;
  Index a = row;
  Index b = col;
  path_row_.clear();
  path_col_.clear();
  while (depth_[a] > depth_[b]) {
    path_row_.push_back(a);
    a = parent_node_[a];
  }
  while (depth_[b] > depth_[a]) {
    path_col_.push_back(b);
    b = parent_node_[b];
  }
  while (a != b) {
    path_row_.push_back(a);
    a = parent_node_[a];
    path_col_.push_back(b);
    b = parent_node_[b];
  }

  // Paths hold the child node of each tree arc. Counting from either end of
  // the cycle, odd positions lose mass.
  Index leaving_child = -1;
  bool on_row_side = false;
  for (const bool row_side : {false, true}) {
    const auto& path = row_side ? path_row_ : path_col_;
    for (std::size_t p = 0; p < path.size(); p += 2) {
      const Index node = path[p];
      if (leaving_child < 0 ||
          flow_less(flow_[parent_cell_[node]], flow_[parent_cell_[leaving_child]])) {
        leaving_child = node;
        on_row_side = row_side;
      }
    }
  }
  const Index leaving = parent_cell_[leaving_child];
  const Flow theta = flow_[leaving];
  for (const bool row_side : {false, true}) {
    const auto& path = row_side ? path_row_ : path_col_;
    for (std::size_t p = 0; p < path.size(); ++p) {
      Flow& f = flow_[parent_cell_[path[p]]];
      const double sign = p % 2 == 0 ? -1.0 : 1.0;
      f.x += sign * theta.x;
      f.m += static_cast<std::int64_t>(sign) * theta.m;
    }
  }
  flow_[entering] = theta;

  is_basic_[leaving] = 0;
  remove_from_adj(leaving / k_, leaving);
  remove_from_adj(n_ + leaving % k_, leaving);
  is_basic_[entering] = 1;
  adj_[row].push_back(entering);
  adj_[col].push_back(entering);

  // The endpoint on the leaving arc's side of the cycle is now cut off from
  // the root; hang it (and everything below) from the other endpoint.
  if (on_row_side) {
    hang_subtree(row, col, entering);
  } else {
    hang_subtree(col, row, entering);
  }
}

void TransportationSimplex::run() {
  northwest_corner();
  compute_flows();
  while (true) {
    const Index entering = find_entering();
    if (entering < 0) break;
    if (pivots_ >= options_.max_pivots) {
      throw Error(ErrorKind::NumericalFailure,
                  "network simplex exceeded " + std::to_string(options_.max_pivots) + " pivots");
    }
    pivot(entering);
    ++pivots_;
  }
  // Recompute from the marginals to drop the drift of incremental updates.
  compute_flows();
}

std::vector<TransportationSimplex::BasicCell> TransportationSimplex::basic_cells() const {
  std::vector<BasicCell> out;
  out.reserve(static_cast<std::size_t>(n_ + k_ - 1));
  for (Index node = 1; node < n_ + k_; ++node) {
    const Index cell = parent_cell_[node];
    out.push_back({cell / k_, cell % k_, flow_[cell].x});
  }
  return out;
}

}  // namespace otcut::detail
