#pragma once
#include <string>
#include <vector>

#include "mge/graph.hpp"
#include "mge/species.hpp"

namespace mge {

// Named standard graphs: stick, c0, corollaN, lineK, wheelM, mgraphA_B, ngraphN, theta, tadpole.
Graph builtin_graph(const std::string& name);
bool is_builtin_graph(const std::string& name);

Graph theta_graph();    // two vertices joined by three edges
Graph tadpole_graph();  // a loop at a trivalent vertex with one port

// Named species up to arity nmax: K (terminal), Di (terminal directed), cyclic (cyclic orders
// of the legs), bicolor (palette {c, c'} swapped, described in fixtures.cpp).
SpeciesP builtin_species(const std::string& name, int nmax = 4);
std::vector<std::string> builtin_species_names();

}  // namespace mge
