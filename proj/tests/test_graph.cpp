#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"
#include "otcut/datasets.hpp"
#include "otcut/error.hpp"
#include "otcut/graph.hpp"

using namespace otcut;

namespace {

SparseGraph random_graph(Index n, double p, std::mt19937_64& rng, bool self_loops = false) {
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + (self_loops ? 0 : 1); v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v, w(rng)});
    }
  }
  return SparseGraph::from_edges(n, edges);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("construction keeps symmetry and sums duplicates") {
  std::vector<Edge> edges{{0, 1, 1.0}, {1, 0, 2.0}, {1, 2, 0.5}, {2, 2, 4.0}};
  auto g = SparseGraph::from_edges(3, edges);
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(1, 0) == 3.0);
  CHECK(g.weight(2, 2) == 4.0);
  CHECK(g.num_edges() == 3);
  CHECK(g.degrees() == std::vector<double>{3.0, 3.5, 4.5});
}

TEST_CASE("directed entries merge by max") {
  std::vector<Edge> entries{{0, 1, 2.0}, {1, 0, 3.0}, {1, 2, 1.0}, {1, 2, 1.5}};
  auto g = SparseGraph::from_directed_entries(3, entries);
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(1, 0) == 3.0);
  CHECK(g.weight(2, 1) == 2.5);
}

TEST_CASE("invalid inputs") {
  std::vector<Edge> neg{{0, 1, -1.0}};
  CHECK_THROWS_AS(SparseGraph::from_edges(2, neg), Error);
  try {
    SparseGraph::from_edges(2, neg);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeWeight);
  }
  std::vector<Edge> out{{0, 5, 1.0}};
  try {
    SparseGraph::from_edges(2, out);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndexOutOfRange);
  }
  try {
    SparseGraph::from_csr(2, {0, 1, 2}, {1, 0}, {1.0, 2.0});
    FAIL("expected AsymmetricInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AsymmetricInput);
  }
}

TEST_CASE("Laplacian examples") {
  SUBCASE("path on two nodes, unnormalized") {
    std::vector<Edge> e{{0, 1, 1.0}};
    auto lap = build_laplacian(SparseGraph::from_edges(2, e), LaplacianKind::Unnormalized);
    Eigen::Matrix2d expected;
    expected << 1, -1, -1, 1;
    CHECK(lap.dense().isApprox(expected));
  }
  SUBCASE("triangle, normalized") {
    std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
    auto lap = build_laplacian(SparseGraph::from_edges(3, e), LaplacianKind::SymNormalized);
    auto d = lap.dense();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(d(i, j) == doctest::Approx(i == j ? 1.0 : -0.5));
    }
  }
  SUBCASE("five-node star, unnormalized") {
    std::vector<Edge> e{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}};
    auto lap = build_laplacian(SparseGraph::from_edges(5, e), LaplacianKind::Unnormalized);
    auto d = lap.dense();
    CHECK(d(0, 0) == 4.0);
    for (int i = 1; i < 5; ++i) CHECK(d(i, i) == 1.0);
    for (int i = 0; i < 5; ++i) CHECK(d.row(i).sum() == doctest::Approx(0.0));
  }
}

TEST_CASE("isolated nodes get identity rows and zero degree mass") {
  std::vector<Edge> e{{0, 1, 1.0}};
  auto g = SparseGraph::from_edges(3, e);
  int warnings = 0;
  auto old = set_warning_handler([&](std::string_view) { ++warnings; });
  auto lap = build_laplacian(g, LaplacianKind::SymNormalized);
  set_warning_handler(old);
  CHECK(warnings == 1);
  auto d = lap.dense();
  CHECK(d(2, 2) == 1.0);
  CHECK(d.row(2).cwiseAbs().sum() == 1.0);
  auto pi = degree_distribution(g);
  CHECK(pi[2] == 0.0);
}

TEST_CASE("self-loops count toward degree but cancel in D - W") {
  std::vector<Edge> e{{0, 1, 1.0}, {0, 0, 2.0}};
  auto g = SparseGraph::from_edges(2, e);
  CHECK(g.degrees()[0] == 3.0);
  auto lap = build_laplacian(g, LaplacianKind::Unnormalized);
  CHECK(lap.dense()(0, 0) == 1.0);
  CHECK(lap.dense().row(0).sum() == 0.0);
}

TEST_CASE("degree distribution") {
  std::vector<Edge> path{{0, 1, 1.0}};
  CHECK(degree_distribution(SparseGraph::from_edges(2, path)) == std::vector<double>{0.5, 0.5});
  std::vector<Edge> star{{0, 1, 1.0}, {0, 2, 1.0}};
  CHECK(degree_distribution(SparseGraph::from_edges(3, star)) ==
        std::vector<double>{0.5, 0.25, 0.25});
  CHECK(uniform_distribution(4) == std::vector<double>(4, 0.25));
  try {
    degree_distribution(SparseGraph::from_edges(3, std::vector<Edge>{}));
    FAIL("expected EmptyGraph");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyGraph);
  }
}

TEST_CASE("degree distribution is a probability vector independent of edge order") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(30, 0.2, rng);
    auto edges = g.edge_list();
    std::shuffle(edges.begin(), edges.end(), rng);
    auto h = SparseGraph::from_edges(30, edges);
    if (g.total_degree() == 0.0) continue;
    auto p = degree_distribution(g);
    auto q = degree_distribution(h);
    double sum = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - q[i]) <= 1e-15);
  }
}

TEST_CASE("Laplacian properties on random graphs") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_graph(5 + trial * 4, 0.3, rng, true);
    auto dense_w = Eigen::MatrixXd(g.adjacency());
    auto lu = build_laplacian(g, LaplacianKind::Unnormalized);
    auto du = lu.dense();
    CHECK((du - du.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(du.rows());
    CHECK(std::abs(ones.dot(du * ones)) <= 1e-9);
    for (int r = 0; r < du.rows(); ++r) {
      CHECK(std::abs(du.row(r).sum()) <= 1e-12 * std::max(1.0, g.degrees()[r]));
    }
    for (int s = 0; s < 100; ++s) {
      Eigen::VectorXd x(du.rows());
      for (auto& v : x) v = normal(rng);
      const double quad = x.dot(du * x);
      const double edges = oracle::quadratic_form_by_edges(dense_w, x);
      CHECK(quad >= -1e-9);
      CHECK(std::abs(quad - edges) <= 1e-9 * std::max(1.0, std::abs(edges)));
    }
    auto ln = build_laplacian(g, LaplacianKind::SymNormalized);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ln.dense());
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    CHECK(es.eigenvalues().maxCoeff() <= 2.0 + 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eu(du);
    CHECK(eu.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("normalized Laplacian has unit diagonal without self-loops") {
  std::mt19937_64 rng(3);
  auto g = random_graph(40, 0.2, rng);
  auto d = build_laplacian(g, LaplacianKind::SymNormalized).dense();
  for (Index i = 0; i < 40; ++i) {
    if (g.degrees()[i] > 0.0) CHECK(d(i, i) == 1.0);
  }
}

}  // TEST_SUITE

TEST_SUITE("datasets") {

TEST_CASE("rbf weights") {
  auto same = make_rbf_graph({{0.0, 0.0}, {0.0, 0.0}}, 1.0);
  CHECK(same.weight(0, 1) == 1.0);
  CHECK(same.weight(0, 0) == 0.0);
  auto unit = make_rbf_graph({{0.0, 0.0}, {1.0, 0.0}}, 1.0);
  CHECK(unit.weight(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(make_rbf_graph({{0.0, 0.0}}, 0.0), Error);
}

TEST_CASE("knn with k = 1 links each point to its nearest neighbour") {
  std::vector<Point2> pts{{0.0, 0.0}, {1.0, 0.0}, {10.0, 0.0}, {10.5, 0.0}};
  auto g = make_knn_graph(pts, 1);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(2, 3) == 1.0);
  CHECK(g.weight(1, 2) == 0.0);
  CHECK(g.num_edges() == 2);
  for (Index u = 0; u < 4; ++u) {
    for (Index v = 0; v < 4; ++v) CHECK(g.weight(u, v) == g.weight(v, u));
  }
}

TEST_CASE("generators are deterministic in the seed") {
  auto a = make_two_moons_knn(300, 0.05, 10, 0);
  auto b = make_two_moons_knn(300, 0.05, 10, 0);
  CHECK(a.graph.row_ptr() == b.graph.row_ptr());
  CHECK(a.graph.col_idx() == b.graph.col_idx());
  CHECK(a.graph.weights() == b.graph.weights());
  CHECK(a.labels == b.labels);
  auto c = make_two_moons_knn(300, 0.05, 10, 1);
  CHECK(c.graph.col_idx() != a.graph.col_idx());
  CHECK(std::count(a.labels.begin(), a.labels.end(), 0) == 150);
}

TEST_CASE("generator preconditions") {
  CHECK_THROWS_AS(make_two_moons(3, 0.05, 0), Error);
  CHECK_THROWS_AS(make_knn_graph({{0.0, 0.0}, {1.0, 1.0}}, 0), Error);
}

}  // TEST_SUITE
