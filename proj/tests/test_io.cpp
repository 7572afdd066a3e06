#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "otcut/error.hpp"
#include "otcut/io.hpp"

using namespace otcut;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an otcut::Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("single weighted edge") {
  std::istringstream in("0 1 2.5\n");
  auto g = parse_edge_list(in);
  CHECK(g.num_nodes() == 2);
  CHECK(g.weight(0, 1) == 2.5);
  CHECK(g.weight(1, 0) == 2.5);
}

TEST_CASE("comments, default weights, duplicates and node header") {
  std::istringstream in(
      "# nodes 5\n"
      "0 1      # unit weight\n"
      "\n"
      "1 2 0.5\n"
      "1 2 0.25\n"
      "2 1 0.5\n");
  auto g = parse_edge_list(in);
  CHECK(g.num_nodes() == 5);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 2) == 0.75);
  CHECK(g.degrees()[4] == 0.0);
}

TEST_CASE("edge-list errors") {
  CHECK(kind_of([] { std::istringstream in(""); parse_edge_list(in); }) == ErrorKind::EmptyGraph);
  CHECK(kind_of([] { std::istringstream in("# nothing\n"); parse_edge_list(in); }) ==
        ErrorKind::EmptyGraph);
  CHECK(kind_of([] { std::istringstream in("0 1 x\n"); parse_edge_list(in); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { std::istringstream in("0 -1 1\n"); parse_edge_list(in); }) ==
        ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { std::istringstream in("# nodes 2\n0 2 1\n"); parse_edge_list(in); }) ==
        ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { std::istringstream in("0 1 -2\n"); parse_edge_list(in); }) ==
        ErrorKind::NegativeWeight);
  try {
    std::istringstream in("0 1\n1 2\n1 2 3 4\n");
    parse_edge_list(in);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(kind_of([] { load_edge_list("/nonexistent/graph.txt"); }) == ErrorKind::IoError);
}

TEST_CASE("karate club MatrixMarket file") {
  auto g = load_matrix_market(OTCUT_TEST_DATA "/karate.mtx");
  CHECK(g.num_nodes() == 34);
  CHECK(g.num_edges() == 78);
  CHECK(g.nnz() == 156);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(33, 32) == 1.0);
}

TEST_CASE("MatrixMarket variants and errors") {
  std::istringstream general(
      "%%MatrixMarket matrix coordinate real general\n"
      "3 3 2\n"
      "1 2 4.0\n"
      "3 2 1.5\n");
  auto g = parse_matrix_market(general);
  CHECK(g.weight(0, 1) == 4.0);
  CHECK(g.weight(1, 0) == 4.0);
  CHECK(g.weight(1, 2) == 1.5);

  CHECK(kind_of([] {
          std::istringstream in("%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n1 2 1\n");
          parse_matrix_market(in);
        }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          std::istringstream in("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n");
          parse_matrix_market(in);
        }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] {
          std::istringstream in("%%MatrixMarket matrix array real general\n2 2\n");
          parse_matrix_market(in);
        }) == ErrorKind::ParseError);
  CHECK(kind_of([] { std::istringstream in(""); parse_matrix_market(in); }) == ErrorKind::EmptyGraph);
}

TEST_CASE("written edge lists reload to the identical graph") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Edge> edges;
    for (Index u = 0; u < 25; ++u) {
      for (Index v = u; v < 25; ++v) {
        if (coin(rng)) edges.push_back({u, v, w(rng) * 1e3});
      }
    }
    edges.push_back({0, 1, 0.1});
    auto g = SparseGraph::from_edges(27, edges);
    std::stringstream buf;
    write_edge_list(buf, g);
    auto h = parse_edge_list(buf);
    CHECK(h.num_nodes() == 27);
    CHECK(h.row_ptr() == g.row_ptr());
    CHECK(h.col_idx() == g.col_idx());
    CHECK(h.weights() == g.weights());
  }
}

TEST_CASE("labels and distributions") {
  std::istringstream labels("3\n# c\n3\n7\n");
  CHECK(parse_labels(labels) == std::vector<long>{3, 3, 7});
  std::istringstream dist("0.25\n0.75\n");
  CHECK(parse_distribution(dist) == std::vector<double>{0.25, 0.75});
  std::istringstream bad("0.5\n0.6\n");
  CHECK_THROWS_AS(parse_distribution(bad), Error);
  std::istringstream negative("1.5\n-0.5\n");
  CHECK_THROWS_AS(parse_distribution(negative), Error);
}

}  // TEST_SUITE
