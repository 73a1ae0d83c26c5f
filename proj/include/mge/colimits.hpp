#pragma once
#include <vector>

#include "mge/graph.hpp"
#include "mge/morphism.hpp"

namespace mge {

// Parallel maps from a shrub of n sticks: delta1(1_i) = p[i], delta2(2_i) = q[i], both ports of g.
struct GluingDatum {
  Graph g;
  std::vector<int> p, q;
};
struct Glued {
  Graph g;
  Morphism proj;
};
void validate_gluing(const GluingDatum& d);
Glued coequalize_gluing(const GluingDatum& d);

// Breaks the given inner orbits (by any member edge); the new ports of orbit j are
// ne + 2j (partner of e) and ne + 2j + 1 (partner of tau e).
struct Broken {
  Graph g;
  Morphism map;  // broken -> g
  std::vector<int> orbit_edges;  // e for each broken orbit
};
Broken break_edges(const Graph& g, const std::vector<int>& orbits);

// Base graph with one piece per vertex; piece port label i matches the i-th half-edge of v.
struct GraphOfGraphs {
  Graph base;
  std::vector<XGraph> pieces;
};
bool is_degenerate(const GraphOfGraphs& gg);
GraphOfGraphs identity_graph_of_graphs(const Graph& g);

struct Colimit {
  Graph g;
  std::vector<Morphism> iota;    // piece v -> result
  std::vector<int> base_edge;    // base edge -> result edge
};
Colimit colimit_graph_of_graphs(const GraphOfGraphs& gg);

// Contracting connected blocks of vertices: base = g with each block collapsed to a vertex,
// pieces = induced neighbourhoods of the blocks.
struct Contraction {
  GraphOfGraphs gg;
  std::vector<std::vector<int>> piece_edge;    // piece edge -> g edge
  std::vector<std::vector<int>> piece_vertex;  // piece vertex -> g vertex
  std::vector<int> base_edge;                  // base edge -> g edge
};
Contraction contract_partition(const Graph& g, const std::vector<int>& block);

}  // namespace mge
