#ifndef SGFRAME_GENERATORS_HPP
#define SGFRAME_GENERATORS_HPP

#include <cstdint>

#include "sgframe/graph.hpp"

namespace sgf {

/// Union of degree/2 random Hamiltonian cycles (degree even, >= 2). The
/// result is connected and every vertex has degree <= `degree`; when a cycle
/// would duplicate an edge it is redrawn a bounded number of times, after
/// which duplicates are dropped.
Graph random_regular_graph(int n, int degree, std::uint64_t seed);

/// Random recursive spanning tree plus each remaining pair with probability
/// `extra_edge_probability`; weights uniform in [min_weight, max_weight].
Graph random_connected_graph(int n, double extra_edge_probability, std::uint64_t seed,
                             double min_weight = 0.5, double max_weight = 2.0);

Graph path_graph(int n, double weight = 1.0);
Graph cycle_graph(int n, double weight = 1.0);
Graph complete_graph(int n, double weight = 1.0);

/// rows x cols 4-neighbour grid with unit weights.
Graph grid_graph(int rows, int cols);

} // namespace sgf

#endif // SGFRAME_GENERATORS_HPP
