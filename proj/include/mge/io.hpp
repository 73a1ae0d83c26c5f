#pragma once
#include <string>

#include "json.hpp"
#include "mge/error.hpp"
#include "mge/graph.hpp"
#include "mge/morphism.hpp"
#include "mge/nerve.hpp"
#include "mge/operad.hpp"
#include "mge/species.hpp"

namespace mge {

using Json = nlohmann::ordered_json;

// Every file is one object with a "kind": graph, species, sgraph, presentation or presheaf.
// Graphs: {edges, tau: [[e, τe]...], half_edges: [{edge, vertex}...], vertices, labels: {ports}}.
Json graph_to_json(const XGraph& x);
Json graph_to_json(const Graph& g);  // ports labelled in ascending order
XGraph xgraph_from_json(const Json& j);
Graph graph_from_json(const Json& j);

// {palette: {colors, omega}, arities: [{arity, elements: [{name, legs}], action}]}, or
// {builtin, nmax} for a named species.
Json species_to_json(const Species& s);
SpeciesP species_from_json(const Json& j);

// Decorations by element name, colours by colour name; only base elements are written.
Json sgraph_to_json(const SGraph& a);
// With sp given, the embedded species (if any) is ignored.
SGraph sgraph_from_json(const Json& j, SpeciesP sp = nullptr);

// mult: [{x: [n, name, i], y: [m, name, j], result}], contr: [{x: [n, name], legs: [i, j], result}],
// units: names per colour, sample: {arity: [names]} or {builtin}.
Json presentation_to_json(const OperadPresentation& P);
OperadPresentation presentation_from_json(const Json& j);

// {graphs: {name: graph}, values: {name: [...]}, maps: [{name, src, tgt, klgr, fE, fV, table}]}.
Json presheaf_to_json(const FinitePresheaf& P);
FinitePresheaf presheaf_from_json(const Json& j);

Json read_json_file(const std::string& path);  // ParseError on malformed input
std::string kind_of(const Json& j);

// Runs f, prefixing the message of any library error with path.
template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    std::string w = e.what();
    if (w.find(path) != std::string::npos) throw;
    throw Error(e.code(), path + ": " + w.substr(w.find(": ") + 2));
  }
}

// A reference is a file path or a builtin name.
XGraph load_xgraph(const std::string& ref);
SpeciesP load_species(const std::string& ref, int nmax = 4);
OperadPresentation load_presentation(const std::string& ref);

// Vertices as nodes, τ-orbits as edges, ports as stubs to point nodes.
std::string export_dot(const Graph& g);
std::string export_dot(const SGraph& a);

}  // namespace mge
