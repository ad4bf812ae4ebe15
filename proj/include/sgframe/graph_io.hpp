#ifndef SGFRAME_GRAPH_IO_HPP
#define SGFRAME_GRAPH_IO_HPP

#include <string>

#include "sgframe/graph.hpp"

namespace sgf {

// Edge list: one "u v w" triple per line, 0-indexed. Lines starting with '#'
// or '%' are comments, except "# vertices N", which fixes the vertex count
// (otherwise it is max index + 1).
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);

// MatrixMarket "coordinate real symmetric" (or "pattern symmetric", unit
// weights). Each undirected edge appears once; 1-indexed per the format.
Graph parse_matrix_market_graph(const std::string& text);
std::string format_matrix_market_graph(const Graph& g);

/// Dispatches on content: a "%%MatrixMarket" banner selects MatrixMarket.
Graph load_graph(const std::string& path);

/// Writes MatrixMarket when the path ends in ".mtx", else an edge list.
void save_graph(const Graph& g, const std::string& path);

} // namespace sgf

#endif // SGFRAME_GRAPH_IO_HPP
