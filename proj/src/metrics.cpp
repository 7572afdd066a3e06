#include "otcut/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "otcut/error.hpp"

namespace otcut {
namespace {

double choose2(double x) { return x * (x - 1.0) / 2.0; }

void check_cover(const SparseGraph& g, const Partition& p) {
  if (p.size() != g.num_nodes()) {
    throw Error(ErrorKind::LengthMismatch, "partition covers " + std::to_string(p.size()) +
                                               " nodes, graph has " +
                                               std::to_string(g.num_nodes()));
  }
}

}  // namespace

ContingencyTable contingency_table(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "partitions have different lengths");
  }
  ContingencyTable t;
  t.rows = a.k();
  t.cols = b.k();
  t.counts.assign(static_cast<std::size_t>(t.rows * t.cols), 0);
  t.row_totals.assign(static_cast<std::size_t>(t.rows), 0);
  t.col_totals.assign(static_cast<std::size_t>(t.cols), 0);
  for (Index i = 0; i < a.size(); ++i) {
    ++t.counts[static_cast<std::size_t>(a[i] * t.cols + b[i])];
    ++t.row_totals[a[i]];
    ++t.col_totals[b[i]];
  }
  t.total = a.size();
  return t;
}

double ari(const Partition& a, const Partition& b) {
  const ContingencyTable t = contingency_table(a, b);
  double sum_cells = 0.0;
  for (Index c : t.counts) sum_cells += choose2(static_cast<double>(c));
  double sum_rows = 0.0;
  for (Index c : t.row_totals) sum_rows += choose2(static_cast<double>(c));
  double sum_cols = 0.0;
  for (Index c : t.col_totals) sum_cols += choose2(static_cast<double>(c));
  const double pairs = choose2(static_cast<double>(t.total));
  if (pairs == 0.0) return 1.0;

  const double expected = sum_rows * sum_cols / pairs;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  const double denom = max_index - expected;
  if (denom == 0.0) {
    // Both sides trivial (all-in-one or all singletons): agree iff identical.
    return sum_cells == sum_rows && sum_cells == sum_cols ? 1.0 : 0.0;
  }
  return (sum_cells - expected) / denom;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::LengthMismatch, "distributions differ in length");
  double kl = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    if (q[j] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p[j] * std::log(p[j] / q[j]);
  }
  return kl;
}

std::vector<double> cluster_cuts(const SparseGraph& g, const Partition& p) {
  check_cover(g, p);
  std::vector<double> cuts(static_cast<std::size_t>(p.k()), 0.0);
  for (Index u = 0; u < g.num_nodes(); ++u) {
    auto cols = g.neighbors(u);
    auto ws = g.neighbor_weights(u);
    for (std::size_t e = 0; e < cols.size(); ++e) {
      if (p[cols[e]] != p[u]) cuts[p[u]] += ws[e];
    }
  }
  return cuts;
}

double cut_value(const SparseGraph& g, const Partition& p) {
  double total = 0.0;
  for (double c : cluster_cuts(g, p)) total += c;
  return total;
}

double ncut_value(const SparseGraph& g, const Partition& p) {
  const auto cuts = cluster_cuts(g, p);
  std::vector<double> vol(cuts.size(), 0.0);
  for (Index u = 0; u < g.num_nodes(); ++u) vol[p[u]] += g.degrees()[u];
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (vol[i] > 0.0) {
      total += cuts[i] / vol[i];
    } else {
      warn("ncut: cluster " + std::to_string(i) + " has zero volume; term set to 0");
    }
  }
  return total;
}

double rcut_value(const SparseGraph& g, const Partition& p) {
  const auto cuts = cluster_cuts(g, p);
  const auto sizes = p.histogram();
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (sizes[i] > 0) {
      total += cuts[i] / static_cast<double>(sizes[i]);
    } else {
      warn("rcut: cluster " + std::to_string(i) + " is empty; term set to 0");
    }
  }
  return total;
}

}  // namespace otcut
