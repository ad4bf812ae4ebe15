#include "sgframe/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sgframe/error.hpp"
#include "sgframe/io_util.hpp"

namespace sgf {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string line_error(int lineno, const std::string& what) {
  return "line " + std::to_string(lineno) + ": " + what;
}

Graph make_graph(int n, std::vector<Edge> edges, const char* format) {
  try {
    return Graph(n, std::move(edges));
  } catch (const InputError& e) {
    throw ParseError(std::string(format) + ": " + e.what());
  }
}

} // namespace

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int declared = -1;
  int max_index = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    if (line[first] == '#' || line[first] == '%') {
      std::istringstream hs(line.substr(first + 1));
      std::string key;
      long count = 0;
      if (hs >> key && key == "vertices") {
        if (!(hs >> count) || count < 1) {
          throw ParseError(line_error(lineno, "invalid vertex count header"));
        }
        declared = static_cast<int>(count);
      }
      continue;
    }
    std::istringstream ls(line);
    long u = 0;
    long v = 0;
    double w = 0.0;
    std::string rest;
    if (!(ls >> u >> v >> w)) {
      throw ParseError(line_error(lineno, "expected 'u v w', got '" + line + "'"));
    }
    if (ls >> rest) throw ParseError(line_error(lineno, "trailing field '" + rest + "'"));
    if (u < 0 || v < 0) throw ParseError(line_error(lineno, "negative vertex index"));
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    max_index = std::max<int>(max_index, static_cast<int>(std::max(u, v)));
  }
  int n = declared >= 0 ? declared : max_index + 1;
  if (n < 1) throw ParseError("edge list: no vertices");
  if (max_index >= n) {
    throw ParseError("edge list: vertex " + std::to_string(max_index) +
                     " exceeds declared count " + std::to_string(n));
  }
  return make_graph(n, std::move(edges), "edge list");
}

std::string format_edge_list(const Graph& g) {
  std::string out = "# vertices " + std::to_string(g.num_vertices()) + "\n";
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u) + ' ' + std::to_string(e.v) + ' ' + format_double(e.w) + '\n';
  }
  return out;
}

Graph parse_matrix_market_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw ParseError("MatrixMarket: empty file");
  std::istringstream banner(lowercase(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw ParseError(line_error(lineno, "expected '%%MatrixMarket matrix coordinate' banner"));
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError(line_error(lineno, "unsupported field '" + field + "'"));
  }
  if (symmetry != "symmetric") {
    throw ParseError(line_error(lineno, "graph matrices must be symmetric, got '" + symmetry + "'"));
  }
  const bool pattern = field == "pattern";

  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> nnz)) throw ParseError(line_error(lineno, "bad size line"));
    break;
  }
  if (rows < 1 || rows != cols || nnz < 0) {
    throw ParseError("MatrixMarket: expected a square size line with nonnegative entry count");
  }

  std::vector<Edge> edges;
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
    std::istringstream ls(line);
    long i = 0, j = 0;
    double w = 1.0;
    if (!(ls >> i >> j) || (!pattern && !(ls >> w))) {
      throw ParseError(line_error(lineno, "bad entry '" + line + "'"));
    }
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError(line_error(lineno, "index out of range"));
    }
    ++seen;
    if (i == j) {
      if (w != 0.0) throw ParseError(line_error(lineno, "nonzero diagonal entry"));
      continue;
    }
    if (w == 0.0) continue;
    edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), w});
  }
  if (seen != nnz) {
    throw ParseError("MatrixMarket: expected " + std::to_string(nnz) + " entries, found " +
                     std::to_string(seen));
  }
  return make_graph(static_cast<int>(rows), std::move(edges), "MatrixMarket");
}

std::string format_matrix_market_graph(const Graph& g) {
  std::string out = "%%MatrixMarket matrix coordinate real symmetric\n";
  out += std::to_string(g.num_vertices()) + ' ' + std::to_string(g.num_vertices()) + ' ' +
         std::to_string(g.num_edges()) + '\n';
  for (const auto& e : g.edges()) {
    // Lower triangle: row index >= column index.
    out += std::to_string(e.v + 1) + ' ' + std::to_string(e.u + 1) + ' ' + format_double(e.w) +
           '\n';
  }
  return out;
}

Graph load_graph(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    if (text.rfind("%%MatrixMarket", 0) == 0) return parse_matrix_market_graph(text);
    return parse_edge_list(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_graph(const Graph& g, const std::string& path) {
  const bool mtx = path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0;
  write_file_atomic(path, mtx ? format_matrix_market_graph(g) : format_edge_list(g));
}

} // namespace sgf
