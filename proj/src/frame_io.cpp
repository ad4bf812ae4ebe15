#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>

#include "json.hpp"

#include "sgframe/error.hpp"
#include "sgframe/frame.hpp"
#include "sgframe/io_util.hpp"

namespace sgf {

namespace {

using nlohmann::json;

std::string kind_name(AtomKind k) { return k == AtomKind::low ? "low" : "high"; }

AtomKind parse_kind(const json& value, const std::string& where) {
  if (value == "low") return AtomKind::low;
  if (value == "high") return AtomKind::high;
  throw ParseError(where + ": expected \"low\" or \"high\"");
}

template <typename T>
T get_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

} // namespace

std::string frame_index_path(const std::string& path) { return path + ".index.json"; }

std::string format_frame_matrix(const FrameAtoms& fa) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += "% rows are framelets; see the .index.json sidecar for their owners\n";
  out += std::to_string(fa.atoms.rows()) + ' ' + std::to_string(fa.atoms.cols()) + ' ' +
         std::to_string(fa.atoms.nonZeros()) + '\n';
  for (Eigen::Index r = 0; r < fa.atoms.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(fa.atoms, r); it; ++it) {
      out += std::to_string(r + 1) + ' ' + std::to_string(it.col() + 1) + ' ' +
             format_double(it.value()) + '\n';
    }
  }
  return out;
}

std::string format_frame_index(const FrameAtoms& fa) {
  json doc;
  doc["n"] = fa.n;
  doc["m"] = fa.atoms.rows();
  doc["config"] = {{"variant", to_string(fa.config.variant)},
                   {"r_schedule", fa.config.r_schedule},
                   {"R", fa.config.R}};
  json blocks = json::array();
  for (const auto& b : fa.blocks) {
    blocks.push_back({{"level", b.level},
                      {"node", b.node},
                      {"kind", kind_name(b.kind)},
                      {"first_row", b.first_row},
                      {"rows", b.rows},
                      {"support", b.support}});
  }
  doc["blocks"] = std::move(blocks);
  json index = json::array();
  for (const auto& a : fa.index) index.push_back(json::array({a.level, a.node, kind_name(a.kind), a.position}));
  doc["index"] = std::move(index);
  return doc.dump() + "\n";
}

FrameAtoms parse_frame(const std::string& matrix_text, const std::string& index_text) {
  std::istringstream in(matrix_text);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw ParseError("frame matrix: empty file");
  {
    std::string lower = line;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower.rfind("%%matrixmarket matrix coordinate real general", 0) != 0) {
      throw ParseError("frame matrix line 1: expected 'coordinate real general' banner");
    }
  }
  long m = -1, n = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> m >> n >> nnz)) {
      throw ParseError("frame matrix line " + std::to_string(lineno) + ": bad size line");
    }
    break;
  }
  if (n < 1 || m < 0 || nnz < 0) throw ParseError("frame matrix: missing or invalid size line");
  if (m < n) {
    throw ParseError("frame matrix: " + std::to_string(m) + " atoms cannot form a tight frame of R^" +
                     std::to_string(n) + " (m >= n violated)");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    long r = 0, c = 0;
    double x = 0.0;
    if (!(ls >> r >> c >> x)) {
      throw ParseError("frame matrix line " + std::to_string(lineno) + ": bad entry '" + line + "'");
    }
    if (r < 1 || r > m || c < 1 || c > n) {
      throw ParseError("frame matrix line " + std::to_string(lineno) + ": index out of range");
    }
    triplets.emplace_back(r - 1, c - 1, x);
  }
  if (static_cast<long>(triplets.size()) != nnz) {
    throw ParseError("frame matrix: expected " + std::to_string(nnz) + " entries, found " +
                     std::to_string(triplets.size()) + " (truncated file?)");
  }

  json doc;
  try {
    doc = json::parse(index_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("frame index: ") + e.what());
  }
  FrameAtoms fa;
  fa.n = get_field<int>(doc, "n", "frame index");
  if (fa.n != n || get_field<long>(doc, "m", "frame index") != m) {
    throw ParseError("frame index: dimensions disagree with the matrix file");
  }
  const json& config = doc.contains("config") ? doc["config"] : json::object();
  try {
    fa.config.variant = parse_variant(get_field<std::string>(config, "variant", "config"));
  } catch (const InputError& e) {
    throw ParseError(std::string("config.variant: ") + e.what());
  }
  fa.config.r_schedule = get_field<std::vector<int>>(config, "r_schedule", "config");
  fa.config.R = get_field<std::vector<long>>(config, "R", "config");

  if (!doc.contains("blocks") || !doc["blocks"].is_array()) {
    throw ParseError("frame index: missing 'blocks' array");
  }
  int expected_row = 0;
  for (std::size_t i = 0; i < doc["blocks"].size(); ++i) {
    const std::string where = "blocks[" + std::to_string(i) + "]";
    const json& b = doc["blocks"][i];
    AtomBlockInfo info;
    info.level = get_field<int>(b, "level", where);
    info.node = get_field<int>(b, "node", where);
    info.kind = parse_kind(b.value("kind", json()), where + ".kind");
    info.first_row = get_field<int>(b, "first_row", where);
    info.rows = get_field<int>(b, "rows", where);
    info.support = get_field<std::vector<int>>(b, "support", where);
    if (info.first_row != expected_row || info.rows < 0) {
      throw ParseError(where + ": rows are not contiguous");
    }
    expected_row += info.rows;
    fa.blocks.push_back(std::move(info));
  }
  if (expected_row != m) throw ParseError("frame index: blocks cover " + std::to_string(expected_row) +
                                          " of " + std::to_string(m) + " rows");

  if (!doc.contains("index") || !doc["index"].is_array() ||
      doc["index"].size() != static_cast<std::size_t>(m)) {
    throw ParseError("frame index: 'index' must list one entry per atom");
  }
  for (std::size_t i = 0; i < doc["index"].size(); ++i) {
    const std::string where = "index[" + std::to_string(i) + "]";
    const json& e = doc["index"][i];
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[3].is_number_integer()) {
      throw ParseError(where + ": expected [level, node, kind, position]");
    }
    fa.index.push_back({e[0].get<int>(), e[1].get<int>(), parse_kind(e[2], where), e[3].get<int>()});
  }

  fa.atoms.resize(m, n);
  fa.atoms.setFromTriplets(triplets.begin(), triplets.end());
  fa.atoms.makeCompressed();
  return fa;
}

void export_frame(const FrameAtoms& fa, const std::string& path) {
  write_files_atomic({{path, format_frame_matrix(fa)}, {frame_index_path(path), format_frame_index(fa)}});
}

FrameAtoms import_frame(const std::string& path) {
  const std::string matrix = read_text_file(path);
  const std::string index = read_text_file(frame_index_path(path));
  try {
    return parse_frame(matrix, index);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace sgf
