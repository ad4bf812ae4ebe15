#include "sgframe/partition_tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "sgframe/error.hpp"

namespace sgf {

namespace {

std::string node_name(int j, int k) {
  return "(" + std::to_string(j) + ", " + std::to_string(k) + ")";
}

// Groups the vertices of one level graph. Every group has >= 2 members.
std::vector<std::vector<int>> group_level(const Graph& h, int branching, bool connected_clusters) {
  const int n = h.num_vertices();
  const auto& edges = h.edges();
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Edge& x = edges[static_cast<std::size_t>(a)];
    const Edge& y = edges[static_cast<std::size_t>(b)];
    if (x.w != y.w) return x.w > y.w;
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });

  std::vector<int> group_of(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> groups;
  const auto size_of = [&](int gi) { return static_cast<int>(groups[static_cast<std::size_t>(gi)].size()); };
  const auto join = [&](int v, int gi) {
    groups[static_cast<std::size_t>(gi)].push_back(v);
    group_of[static_cast<std::size_t>(v)] = gi;
  };

  for (int e : order) {
    const Edge& ed = edges[static_cast<std::size_t>(e)];
    const int gu = group_of[static_cast<std::size_t>(ed.u)];
    const int gv = group_of[static_cast<std::size_t>(ed.v)];
    if (gu < 0 && gv < 0) {
      groups.push_back({});
      const int gi = static_cast<int>(groups.size()) - 1;
      join(ed.u, gi);
      join(ed.v, gi);
    } else if (gu < 0 && size_of(gv) < branching) {
      join(ed.u, gv);
    } else if (gv < 0 && size_of(gu) < branching) {
      join(ed.v, gu);
    }
  }

  // Leftovers: all their neighbours are grouped by now.
  std::vector<int> isolated;
  for (int v = 0; v < n; ++v) {
    if (group_of[static_cast<std::size_t>(v)] >= 0) continue;
    int best = -1;
    double best_weight = 0.0;
    std::vector<std::pair<int, double>> weights;
    for (int e : h.incident(v)) {
      const int gi = group_of[static_cast<std::size_t>(h.other(e, v))];
      if (gi < 0) continue;
      const double w = edges[static_cast<std::size_t>(e)].w;
      auto it = std::find_if(weights.begin(), weights.end(),
                             [gi](const auto& p) { return p.first == gi; });
      if (it == weights.end()) {
        weights.emplace_back(gi, w);
      } else {
        it->second += w;
      }
    }
    for (const auto& [gi, w] : weights) {
      if (best < 0 || w > best_weight || (w == best_weight && gi < best)) {
        best = gi;
        best_weight = w;
      }
    }
    if (best >= 0) {
      join(v, best);
    } else {
      isolated.push_back(v);
    }
  }

  const auto smallest_group = [&] {
    int best = 0;
    for (int gi = 1; gi < static_cast<int>(groups.size()); ++gi) {
      if (size_of(gi) < size_of(best)) best = gi;
    }
    return best;
  };

  if (!isolated.empty()) {
    if (groups.empty() || !connected_clusters) {
      std::size_t i = 0;
      while (isolated.size() - i >= 2) {
        std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(branching),
                                                 isolated.size() - i);
        // Avoid leaving a single isolated vertex behind.
        if (isolated.size() - i - take == 1 && take > 2) --take;
        groups.push_back({});
        const int gi = static_cast<int>(groups.size()) - 1;
        for (std::size_t t = 0; t < take; ++t) join(isolated[i + t], gi);
        i += take;
      }
      if (i < isolated.size()) join(isolated[i], smallest_group());
    } else {
      for (int v : isolated) join(v, smallest_group());
    }
  }

  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

std::vector<int> block_labels(int n, const std::vector<std::vector<int>>& partition) {
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty()) {
      throw InputError("partition block " + std::to_string(b) + " is empty");
    }
    for (int v : partition[b]) {
      if (v < 0 || v >= n) {
        throw InputError("partition vertex " + std::to_string(v) + " out of range");
      }
      if (label[static_cast<std::size_t>(v)] >= 0) {
        throw InputError("partition vertex " + std::to_string(v) + " appears twice");
      }
      label[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (label[static_cast<std::size_t>(v)] < 0) {
      throw InputError("partition misses vertex " + std::to_string(v));
    }
  }
  return label;
}

} // namespace

Graph coarsen_graph(const Graph& g, const std::vector<std::vector<int>>& partition) {
  const auto label = block_labels(g.num_vertices(), partition);
  std::vector<Edge> crossing;
  crossing.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    int a = label[static_cast<std::size_t>(e.u)];
    int b = label[static_cast<std::size_t>(e.v)];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    crossing.push_back({a, b, e.w});
  }
  std::sort(crossing.begin(), crossing.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  std::vector<Edge> merged;
  for (const auto& e : crossing) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }
  return Graph(static_cast<int>(partition.size()), std::move(merged));
}

PartitionTree partition_tree_from_groupings(
    const Graph& g, const std::vector<std::vector<std::vector<int>>>& groupings) {
  const int J = static_cast<int>(groupings.size());
  PartitionTree t;
  t.levels.resize(static_cast<std::size_t>(J) + 1);
  t.coarse_graphs.resize(static_cast<std::size_t>(J) + 1, Graph(1));

  auto& leaves = t.levels[static_cast<std::size_t>(J)];
  leaves.resize(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) leaves[static_cast<std::size_t>(v)].members = {v};
  t.coarse_graphs[static_cast<std::size_t>(J)] = g;

  for (int i = 0; i < J; ++i) {
    const auto child_level = static_cast<std::size_t>(J - i);
    const auto level = child_level - 1;
    const auto& grouping = groupings[static_cast<std::size_t>(i)];
    t.coarse_graphs[level] = coarsen_graph(t.coarse_graphs[child_level], grouping);
    auto& nodes = t.levels[level];
    nodes.resize(grouping.size());
    for (std::size_t k = 0; k < grouping.size(); ++k) {
      nodes[k].children = grouping[k];
      for (int c : grouping[k]) {
        const auto& cm = t.levels[child_level][static_cast<std::size_t>(c)].members;
        nodes[k].members.insert(nodes[k].members.end(), cm.begin(), cm.end());
      }
    }
  }
  if (t.levels.front().size() != 1) {
    throw InputError("groupings end with " + std::to_string(t.levels.front().size()) +
                     " clusters instead of a single root");
  }
  return t;
}

PartitionTree build_partition_tree(const Graph& g, const PartitionOptions& options) {
  if (options.branching < 2) {
    throw InputError("branching must be >= 2, got " + std::to_string(options.branching));
  }
  std::vector<std::vector<std::vector<int>>> groupings;
  Graph level = g;
  while (level.num_vertices() > 1) {
    auto groups = group_level(level, options.branching, options.connected_clusters);
    level = coarsen_graph(level, groups);
    groupings.push_back(std::move(groups));
  }
  return partition_tree_from_groupings(g, groupings);
}

bool TreeValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const TreeCheck& c) { return c.passed; });
}

const TreeCheck* TreeValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string TreeValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    if (!c.offending.empty()) {
      os << " [";
      for (std::size_t i = 0; i < c.offending.size() && i < 10; ++i) {
        os << (i ? " " : "") << node_name(c.offending[i].first, c.offending[i].second);
      }
      if (c.offending.size() > 10) os << " ...";
      os << "]";
    }
    os << '\n';
  }
  return os.str();
}

TreeValidationReport validate_partition_tree(const PartitionTree& t, bool check_connectivity) {
  TreeValidationReport report;
  auto& structure = report.checks.emplace_back(TreeCheck{"structure", true, "", {}});
  if (t.levels.empty() || t.coarse_graphs.size() != t.levels.size()) {
    structure.passed = false;
    structure.detail = "need J + 1 >= 1 levels and one coarse graph per level";
    return report;
  }
  const int J = t.depth();
  const int n = t.num_vertices();

  auto& root = report.checks.emplace_back(TreeCheck{"root_covers_vertices", true, "", {}});
  if (t.levels[0].size() != 1) {
    root.passed = false;
    root.detail = "level 0 has " + std::to_string(t.levels[0].size()) + " nodes";
  } else if (static_cast<int>(t.levels[0][0].members.size()) != n) {
    root.passed = false;
    root.offending.emplace_back(0, 0);
    root.detail = "root holds " + std::to_string(t.levels[0][0].members.size()) + " of " +
                  std::to_string(n) + " vertices";
  }

  auto& leaves = report.checks.emplace_back(TreeCheck{"leaves_singletons", true, "", {}});
  const auto& leaf_level = t.levels[static_cast<std::size_t>(J)];
  if (static_cast<int>(leaf_level.size()) != n) {
    leaves.passed = false;
    leaves.detail = "leaf level has " + std::to_string(leaf_level.size()) + " nodes for " +
                    std::to_string(n) + " vertices";
  }
  for (std::size_t k = 0; k < leaf_level.size(); ++k) {
    const auto& nd = leaf_level[k];
    if (nd.members != std::vector<int>{static_cast<int>(k)} || !nd.children.empty()) {
      leaves.passed = false;
      leaves.offending.emplace_back(J, static_cast<int>(k));
    }
  }

  auto& cover = report.checks.emplace_back(TreeCheck{"level_partition", true, "", {}});
  for (int j = 0; j <= J; ++j) {
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    bool level_ok = true;
    const auto& nodes = t.levels[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      bool node_ok = !nodes[k].members.empty();
      for (int v : nodes[k].members) {
        if (v < 0 || v >= n || owner[static_cast<std::size_t>(v)] >= 0) {
          node_ok = false;
          if (v >= 0 && v < n) {
            const int other = owner[static_cast<std::size_t>(v)];
            if (std::find(cover.offending.begin(), cover.offending.end(),
                          std::make_pair(j, other)) == cover.offending.end()) {
              cover.offending.emplace_back(j, other);
            }
          }
          continue;
        }
        owner[static_cast<std::size_t>(v)] = static_cast<int>(k);
      }
      if (!node_ok) {
        level_ok = false;
        cover.offending.emplace_back(j, static_cast<int>(k));
      }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
      level_ok = false;
      cover.detail += "level " + std::to_string(j) + " misses vertices; ";
    }
    if (!level_ok) cover.passed = false;
  }

  auto& refine = report.checks.emplace_back(TreeCheck{"children_refine_parents", true, "", {}});
  auto& fanout = report.checks.emplace_back(TreeCheck{"at_least_two_children", true, "", {}});
  for (int j = 0; j < J; ++j) {
    const auto& nodes = t.levels[static_cast<std::size_t>(j)];
    const auto& next = t.levels[static_cast<std::size_t>(j) + 1];
    std::vector<int> parent_count(next.size(), 0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& nd = nodes[k];
      if (nd.children.size() < 2) fanout.offending.emplace_back(j, static_cast<int>(k));
      std::vector<int> collected;
      bool ok = true;
      for (int c : nd.children) {
        if (c < 0 || c >= static_cast<int>(next.size())) {
          ok = false;
          continue;
        }
        ++parent_count[static_cast<std::size_t>(c)];
        const auto& cm = next[static_cast<std::size_t>(c)].members;
        collected.insert(collected.end(), cm.begin(), cm.end());
      }
      std::vector<int> own = nd.members;
      std::sort(own.begin(), own.end());
      std::sort(collected.begin(), collected.end());
      if (!ok || own != collected) refine.offending.emplace_back(j, static_cast<int>(k));
    }
    for (std::size_t c = 0; c < next.size(); ++c) {
      if (parent_count[c] != 1) {
        refine.offending.emplace_back(j + 1, static_cast<int>(c));
      }
    }
  }
  refine.passed = refine.offending.empty();
  fanout.passed = fanout.offending.empty();

  auto& sizes = report.checks.emplace_back(TreeCheck{"coarse_graph_sizes", true, "", {}});
  for (int j = 0; j <= J; ++j) {
    if (t.coarse_graphs[static_cast<std::size_t>(j)].num_vertices() !=
        static_cast<int>(t.levels[static_cast<std::size_t>(j)].size())) {
      sizes.passed = false;
      sizes.detail += "level " + std::to_string(j) + " graph has " +
                      std::to_string(t.coarse_graphs[static_cast<std::size_t>(j)].num_vertices()) +
                      " vertices; ";
    }
  }

  if (check_connectivity) {
    auto& conn = report.checks.emplace_back(TreeCheck{"subgraphs_connected", true, "", {}});
    if (!refine.passed || !sizes.passed) {
      conn.passed = false;
      conn.detail = "skipped: tree structure invalid";
    } else {
      for (int j = 0; j < J; ++j) {
        for (int k = 0; k < t.num_nodes(j); ++k) {
          if (!is_connected(subgraph_of(t, j, k).subgraph)) conn.offending.emplace_back(j, k);
        }
      }
      conn.passed = conn.offending.empty();
    }
  }
  return report;
}

SubgraphView subgraph_of(const PartitionTree& t, int level, int index) {
  if (level < 0 || level >= t.depth()) {
    throw InputError("subgraph_of: node " + node_name(level, index) + " is not a non-leaf node");
  }
  if (index < 0 || index >= t.num_nodes(level)) {
    throw InputError("subgraph_of: node " + node_name(level, index) + " does not exist");
  }
  const auto& nd = t.node(level, index);
  return {level, index,
          induced_subgraph(t.coarse_graphs[static_cast<std::size_t>(level) + 1], nd.children)};
}

} // namespace sgf
