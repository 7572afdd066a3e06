#include "otcut/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

#include "otcut/error.hpp"

namespace otcut {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

template <class T>
T parse_number(std::string_view tok, std::size_t line_no) {
  T value{};
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line_no, "cannot parse '" + std::string(tok) + "'");
  }
  return value;
}

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

SparseGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> entries;
  Index declared = -1;
  Index max_index = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto hash = view.find('#');
    if (hash != std::string_view::npos) {
      auto toks = split_ws(view.substr(hash + 1));
      if (toks.size() == 2 && toks[0] == "nodes") {
        declared = parse_number<Index>(toks[1], line_no);
        if (declared < 0) parse_fail(line_no, "negative node count");
      }
    }
    auto toks = split_ws(strip_comment(view));
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3) parse_fail(line_no, "expected `u v [w]`");
    Edge e{parse_number<Index>(toks[0], line_no), parse_number<Index>(toks[1], line_no),
           toks.size() == 3 ? parse_number<double>(toks[2], line_no) : 1.0};
    if (e.u < 0 || e.v < 0) {
      throw Error(ErrorKind::IndexOutOfRange, "line " + std::to_string(line_no) + ": negative index");
    }
    if (declared >= 0 && (e.u >= declared || e.v >= declared)) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "line " + std::to_string(line_no) + ": index exceeds declared node count");
    }
    max_index = std::max({max_index, e.u, e.v});
    entries.push_back(e);
  }
  if (entries.empty()) throw Error(ErrorKind::EmptyGraph, "edge list contains no edges");
  const Index n = declared >= 0 ? declared : max_index + 1;
  return SparseGraph::from_directed_entries(n, entries);
}

SparseGraph load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

SparseGraph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::EmptyGraph, "empty MatrixMarket file");
  ++line_no;
  auto header = split_ws(line);
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  if (header.size() != 5 || header[0] != "%%MatrixMarket" || lower(header[1]) != "matrix" ||
      lower(header[2]) != "coordinate") {
    parse_fail(line_no, "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`");
  }
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer") parse_fail(line_no, "unsupported field " + field);
  if (symmetry != "symmetric" && symmetry != "general") {
    parse_fail(line_no, "unsupported symmetry " + symmetry);
  }
  const bool symmetric = symmetry == "symmetric";

  Index rows = -1, cols = -1, declared_nnz = -1, data_lines = 0;
  std::vector<Edge> entries;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.front() == '%') continue;
    auto toks = split_ws(view);
    if (toks.empty()) continue;
    if (rows < 0) {
      if (toks.size() != 3) parse_fail(line_no, "expected `rows cols nnz`");
      rows = parse_number<Index>(toks[0], line_no);
      cols = parse_number<Index>(toks[1], line_no);
      declared_nnz = parse_number<Index>(toks[2], line_no);
      if (rows != cols) parse_fail(line_no, "adjacency matrix must be square");
      if (rows < 0 || declared_nnz < 0) parse_fail(line_no, "negative size");
      continue;
    }
    if (toks.size() != (pattern ? 2u : 3u)) parse_fail(line_no, "wrong number of fields");
    const Index i = parse_number<Index>(toks[0], line_no);
    const Index j = parse_number<Index>(toks[1], line_no);
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "line " + std::to_string(line_no) + ": entry outside the declared matrix");
    }
    const double w = pattern ? 1.0 : parse_number<double>(toks[2], line_no);
    entries.push_back({i - 1, j - 1, w});
    ++data_lines;
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, w});
  }
  if (rows < 0) throw Error(ErrorKind::EmptyGraph, "MatrixMarket file has no size line");
  if (data_lines != declared_nnz) parse_fail(line_no, "entry count differs from header");
  if (entries.empty()) throw Error(ErrorKind::EmptyGraph, "MatrixMarket file has no entries");
  return SparseGraph::from_directed_entries(rows, entries);
}

SparseGraph load_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix_market(in);
}

void write_edge_list(std::ostream& out, const SparseGraph& g) {
  out << "# nodes " << g.num_nodes() << '\n';
  for (const Edge& e : g.edge_list()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

std::vector<long> parse_labels(std::istream& in) {
  std::vector<long> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1) parse_fail(line_no, "expected one label per line");
    labels.push_back(parse_number<long>(toks[0], line_no));
  }
  return labels;
}

std::vector<long> load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_labels(in);
}

void write_labels(std::ostream& out, std::span<const long> labels) {
  for (long l : labels) out << l << '\n';
}

std::vector<double> parse_distribution(std::istream& in) {
  std::vector<double> p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1) parse_fail(line_no, "expected one probability per line");
    const double x = parse_number<double>(toks[0], line_no);
    if (!(x >= 0.0) || !std::isfinite(x)) parse_fail(line_no, "probability must be finite and >= 0");
    p.push_back(x);
  }
  if (p.empty()) throw Error(ErrorKind::ConfigError, "distribution file is empty");
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::ConfigError, "distribution sums to " + format_double(total) + ", not 1");
  }
  return normalize_distribution(std::move(p));
}

std::vector<double> load_distribution(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_distribution(in);
}

}  // namespace otcut
