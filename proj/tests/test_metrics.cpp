#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "otcut/error.hpp"
#include "otcut/metrics.hpp"
#include "otcut/solver.hpp"

using namespace otcut;

namespace {

Partition random_partition(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> a(n);
  for (auto& x : a) x = d(rng);
  return Partition(a, k);
}

Partition relabel(const Partition& p, std::mt19937_64& rng) {
  std::vector<int> perm(p.k());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> a(p.size());
  for (Index i = 0; i < p.size(); ++i) a[i] = perm[p[i]];
  return Partition(a, p.k());
}

SparseGraph bridged_cliques(double w) {
  std::vector<Edge> e{{0, 1, 1.0}, {2, 3, 1.0}, {1, 2, w}};
  return SparseGraph::from_edges(4, e);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("ari examples") {
  Partition a({0, 0, 1, 1}, 2);
  CHECK(ari(a, a) == 1.0);
  CHECK(ari(a, Partition({1, 1, 0, 0}, 2)) == 1.0);
  const std::vector<int> x{0, 0, 1, 1}, y{0, 1, 0, 1};
  const double expected = oracle::ari_by_pairs(x, y);
  CHECK(expected == doctest::Approx(-0.5));
  CHECK(ari(a, Partition(y, 2)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(ari(a, Partition({0, 1}, 2)), Error);
}

TEST_CASE("ari degenerate partitions") {
  Partition one({0, 0, 0}, 1);
  CHECK(ari(one, one) == 1.0);
  Partition singletons({0, 1, 2}, 3);
  CHECK(ari(singletons, singletons) == 1.0);
  CHECK(ari(one, singletons) == 0.0);
}

TEST_CASE("ari agrees with pair counting and is symmetric and label-blind") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 20;
    auto a = random_partition(n, 2 + trial % 4, rng);
    auto b = random_partition(n, 2 + trial % 3, rng);
    CHECK(ari(a, b) == ari(b, a));
    CHECK(ari(relabel(a, rng), b) == ari(a, b));
    CHECK(ari(a, b) == doctest::Approx(oracle::ari_by_pairs(a.assignment(), b.assignment())).epsilon(1e-12));
  }
}

TEST_CASE("kl divergence") {
  std::vector<double> half{0.5, 0.5};
  CHECK(kl_divergence(half, half) == 0.0);
  CHECK(kl_divergence(std::vector<double>{1.0, 0.0}, half) == doctest::Approx(std::log(2.0)));
  CHECK(kl_divergence(half, std::vector<double>{1.0, 0.0}) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(kl_divergence(half, std::vector<double>{1.0}), Error);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(7);
    for (auto& x : p) x = u(rng);
    p = normalize_distribution(p);
    CHECK(kl_divergence(p, p) == 0.0);
  }
}

TEST_CASE("cut values") {
  auto disjoint = bridged_cliques(0.0);
  Partition split({0, 0, 1, 1}, 2);
  CHECK(cut_value(disjoint, split) == 0.0);
  CHECK(ncut_value(disjoint, split) == 0.0);
  CHECK(rcut_value(disjoint, split) == 0.0);

  auto bridged = bridged_cliques(2.5);
  CHECK(cut_value(bridged, split) == 5.0);
  auto unit = bridged_cliques(1.0);
  CHECK(ncut_value(unit, split) == doctest::Approx(2.0 / 3.0));
  CHECK(rcut_value(unit, split) == doctest::Approx(1.0));
}

TEST_CASE("empty clusters contribute nothing") {
  auto g = bridged_cliques(1.0);
  Partition p({0, 0, 0, 0}, 3);
  int warnings = 0;
  auto old = set_warning_handler([&](std::string_view) { ++warnings; });
  CHECK(ncut_value(g, p) == 0.0);
  CHECK(rcut_value(g, p) == 0.0);
  set_warning_handler(old);
  CHECK(warnings == 4);
}

TEST_CASE("cut equals the trace form of the indicator and ignores labels") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> w(0.0, 2.0);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 10 + trial;
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u; v < n; ++v) {
        if (coin(rng)) edges.push_back({u, v, w(rng)});
      }
    }
    auto g = SparseGraph::from_edges(n, edges);
    auto p = random_partition(n, 2 + trial % 5, rng);
    auto lap = build_laplacian(g, LaplacianKind::Unnormalized);
    const double cut = cut_value(g, p);
    CHECK(std::abs(cut - objective(lap, p.indicator(), 0.0)) <= 1e-9);
    CHECK(cut == doctest::Approx(oracle::cut_by_pairs(Eigen::MatrixXd(g.adjacency()), p.assignment())));
    auto q = relabel(p, rng);
    CHECK(cut_value(g, q) == doctest::Approx(cut));
    CHECK(ncut_value(g, q) == doctest::Approx(ncut_value(g, p)));
    CHECK(rcut_value(g, q) == doctest::Approx(rcut_value(g, p)));
  }
}

TEST_CASE("contingency table totals") {
  Partition a({0, 1, 1, 2}, 3), b({1, 1, 0, 0}, 2);
  auto t = contingency_table(a, b);
  CHECK(t.total == 4);
  CHECK(t.at(1, 1) == 1);
  CHECK(t.at(1, 0) == 1);
  CHECK(t.row_totals == std::vector<Index>{1, 2, 1});
  CHECK(t.col_totals == std::vector<Index>{2, 2});
}

}  // TEST_SUITE
