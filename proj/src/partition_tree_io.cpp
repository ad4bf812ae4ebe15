#include <string>

#include "json.hpp"

#include "sgframe/error.hpp"
#include "sgframe/io_util.hpp"
#include "sgframe/partition_tree.hpp"

namespace sgf {

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

const json& array_at(const json& value, const std::string& where) {
  if (!value.is_array()) throw ParseError(where + ": expected an array");
  return value;
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer");
  return value.get<int>();
}

std::vector<int> as_int_list(const json& value, const std::string& where) {
  std::vector<int> out;
  const auto& arr = array_at(value, where);
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(as_int(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

} // namespace

std::string format_tree_json(const PartitionTree& t) {
  json doc;
  doc["J"] = t.depth();
  json levels = json::array();
  for (const auto& level : t.levels) {
    json nodes = json::array();
    for (std::size_t k = 0; k < level.size(); ++k) {
      nodes.push_back({{"k", k}, {"members", level[k].members}, {"children", level[k].children}});
    }
    levels.push_back(std::move(nodes));
  }
  doc["levels"] = std::move(levels);
  json graphs = json::array();
  for (const auto& g : t.coarse_graphs) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back(json::array({e.u, e.v, e.w}));
    graphs.push_back(std::move(edges));
  }
  doc["coarse_graphs"] = std::move(graphs);
  return doc.dump(1) + "\n";
}

PartitionTree parse_tree_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree file: ") + e.what());
  }
  const int J = as_int(field(doc, "J", "tree"), "J");
  const auto& levels = array_at(field(doc, "levels", "tree"), "levels");
  const auto& graphs = array_at(field(doc, "coarse_graphs", "tree"), "coarse_graphs");
  if (J < 0 || levels.size() != static_cast<std::size_t>(J) + 1) {
    throw ParseError("levels: expected J + 1 = " + std::to_string(J + 1) + " levels, found " +
                     std::to_string(levels.size()));
  }
  if (graphs.size() != levels.size()) {
    throw ParseError("coarse_graphs: expected " + std::to_string(levels.size()) +
                     " edge lists, found " + std::to_string(graphs.size()));
  }

  PartitionTree t;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const std::string lw = "levels[" + std::to_string(j) + "]";
    const auto& nodes = array_at(levels[j], lw);
    if (nodes.empty()) throw ParseError(lw + ": level has no nodes");
    std::vector<ClusterNode> level(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const std::string nw = lw + "[" + std::to_string(k) + "]";
      const json& nd = nodes[k];
      if (nd.contains("k") && as_int(nd["k"], nw + ".k") != static_cast<int>(k)) {
        throw ParseError(nw + ".k: expected " + std::to_string(k));
      }
      level[k].members = as_int_list(field(nd, "members", nw), nw + ".members");
      level[k].children = as_int_list(field(nd, "children", nw), nw + ".children");
    }
    t.levels.push_back(std::move(level));

    const std::string gw = "coarse_graphs[" + std::to_string(j) + "]";
    std::vector<Edge> edges;
    const auto& arr = array_at(graphs[j], gw);
    for (std::size_t e = 0; e < arr.size(); ++e) {
      const std::string ew = gw + "[" + std::to_string(e) + "]";
      const auto& triple = array_at(arr[e], ew);
      if (triple.size() != 3 || !triple[2].is_number()) {
        throw ParseError(ew + ": expected [u, v, w]");
      }
      edges.push_back({as_int(triple[0], ew + "[0]"), as_int(triple[1], ew + "[1]"),
                       triple[2].get<double>()});
    }
    try {
      t.coarse_graphs.emplace_back(static_cast<int>(t.levels.back().size()), std::move(edges));
    } catch (const InputError& e) {
      throw ParseError(gw + ": " + e.what());
    }
  }

  const auto report = validate_partition_tree(t, false);
  if (!report.passed()) throw ParseError("tree file violates partition conditions:\n" + report.summary());
  return t;
}

void save_tree(const PartitionTree& t, const std::string& path) {
  write_file_atomic(path, format_tree_json(t));
}

PartitionTree load_tree(const std::string& path) {
  try {
    return parse_tree_json(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

} // namespace sgf
