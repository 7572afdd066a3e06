#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "otcut/graph.hpp"

namespace otcut {

// Edge list: one `u v [w]` per line, 0-based, whitespace separated, weight
// defaults to 1. Text after `#` is a comment, except that a line of the form
// `# nodes N` fixes the node count (otherwise n = largest index + 1).
// Repeated (u, v) lines are summed; (u, v) and (v, u) are merged by max.
SparseGraph load_edge_list(const std::filesystem::path& path);
SparseGraph parse_edge_list(std::istream& in);

// MatrixMarket coordinate {real, integer, pattern} {symmetric, general},
// square, 1-based. Pattern entries get weight 1.
SparseGraph load_matrix_market(const std::filesystem::path& path);
SparseGraph parse_matrix_market(std::istream& in);

// Writes the `# nodes N` header and each undirected edge once (u <= v) with
// shortest round-trip weights, so load_edge_list reproduces the graph exactly.
void write_edge_list(std::ostream& out, const SparseGraph& g);

// One integer label per line; `#` comments and blank lines skipped.
std::vector<long> load_labels(const std::filesystem::path& path);
std::vector<long> parse_labels(std::istream& in);
void write_labels(std::ostream& out, std::span<const long> labels);

// One probability per line; nonnegative, summing to 1 within 1e-9. The result
// is renormalized.
std::vector<double> load_distribution(const std::filesystem::path& path);
std::vector<double> parse_distribution(std::istream& in);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace otcut
