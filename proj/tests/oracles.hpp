#pragma once

// Reference computations used only by the tests. None of these call into the
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Minimum of <cost, X> over the transportation polytope by enumerating every
// choice of n + k - 1 cells, keeping those that form a spanning tree of the
// bipartite row/column graph, solving their flows by leaf elimination, and
// keeping the nonnegative ones. Exponential; meant for n k <= 18.
inline double transport_by_vertex_enumeration(const Eigen::MatrixXd& cost,
                                              const std::vector<double>& a,
                                              const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int cells = n * k;
  const int basis = n + k - 1;
  double best = std::numeric_limits<double>::infinity();

  std::vector<int> pick(basis);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == basis) {
      // Union-find acyclicity; n + k - 1 acyclic edges on n + k nodes is a tree.
      std::vector<int> parent(n + k);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      for (int c : pick) {
        int r = find(c / k), s = find(n + c % k);
        if (r == s) return;
        parent[r] = s;
      }
      // Leaf elimination.
      std::vector<double> rem(n + k);
      for (int i = 0; i < n; ++i) rem[i] = a[i];
      for (int j = 0; j < k; ++j) rem[n + j] = b[j];
      std::vector<int> degree(n + k, 0);
      for (int c : pick) {
        ++degree[c / k];
        ++degree[n + c % k];
      }
      std::vector<char> used(basis, 0);
      double value = 0.0;
      for (int step = 0; step < basis; ++step) {
        int leaf_edge = -1, leaf = -1;
        for (int e = 0; e < basis && leaf_edge < 0; ++e) {
          if (used[e]) continue;
          int r = pick[e] / k, s = n + pick[e] % k;
          if (degree[r] == 1) { leaf_edge = e; leaf = r; }
          else if (degree[s] == 1) { leaf_edge = e; leaf = s; }
        }
        const int c = pick[leaf_edge];
        const int r = c / k, s = n + c % k;
        const int other = leaf == r ? s : r;
        const double f = rem[leaf];
        if (f < -1e-12) return;
        rem[leaf] = 0.0;
        rem[other] -= f;
        --degree[r];
        --degree[s];
        used[leaf_edge] = 1;
        value += f * cost(c / k, c % k);
      }
      best = std::min(best, value);
      return;
    }
    for (int c = start; c <= cells - (basis - depth); ++c) {
      pick[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Adjusted Rand index from the 2x2 pair-agreement counts.
inline double ari_by_pairs(const std::vector<int>& x, const std::vector<int>& y) {
  double ss = 0, sd = 0, ds = 0, dd = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool sx = x[i] == x[j];
      const bool sy = y[i] == y[j];
      if (sx && sy) ++ss;
      else if (sx) ++sd;
      else if (sy) ++ds;
      else ++dd;
    }
  }
  const double denom = (ss + sd) * (sd + dd) + (ss + ds) * (ds + dd);
  if (denom == 0.0) return 1.0;
  return 2.0 * (ss * dd - sd * ds) / denom;
}

// Central differences of f at x, step h.
inline Eigen::MatrixXd finite_difference_gradient(const std::function<double(const Eigen::MatrixXd&)>& f,
                                                  const Eigen::MatrixXd& x, double h = 1e-5) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Eigen::MatrixXd p = x, m = x;
      p(i, j) += h;
      m(i, j) -= h;
      g(i, j) = (f(p) - f(m)) / (2.0 * h);
    }
  }
  return g;
}

// Quadratic form from the edge-sum identity x^T L x = sum_{u<v} w_uv (x_u - x_v)^2.
inline double quadratic_form_by_edges(const Eigen::MatrixXd& dense_adjacency, const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index u = 0; u < x.size(); ++u) {
    for (Eigen::Index v = u + 1; v < x.size(); ++v) {
      const double d = x[u] - x[v];
      s += dense_adjacency(u, v) * d * d;
    }
  }
  return s;
}

// Cut objective sum_i cut(A_i) straight from a dense adjacency.
inline double cut_by_pairs(const Eigen::MatrixXd& w, const std::vector<int>& labels) {
  double s = 0.0;
  for (Eigen::Index u = 0; u < w.rows(); ++u) {
    for (Eigen::Index v = 0; v < w.cols(); ++v) {
      if (labels[u] != labels[v]) s += w(u, v);
    }
  }
  return s;
}

// Random rational marginal with the given denominator (zeros allowed).
inline std::vector<double> random_rational_marginal(int size, int denominator, std::mt19937_64& rng) {
  std::vector<int> counts(size, 0);
  std::uniform_int_distribution<int> pick(0, size - 1);
  for (int u = 0; u < denominator; ++u) ++counts[pick(rng)];
  std::vector<double> p(size);
  for (int i = 0; i < size; ++i) p[i] = static_cast<double>(counts[i]) / denominator;
  return p;
}

}  // namespace oracle
