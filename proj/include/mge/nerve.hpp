#pragma once
#include <map>
#include <string>
#include <vector>

#include "mge/colimits.hpp"
#include "mge/operad.hpp"
#include "mge/pointed.hpp"
#include "mge/species.hpp"

namespace mge {

// The pointed species represented by H: colours E(H) with ω = τ, arity-n elements the étale
// maps C_n -> H (a vertex and an order of its half-edges), units adjoined.
PointedSpecies upsilon(const Graph& H);
// H structured by its own vertices with the identity leg order; colour of e is e.
SGraph tautological_structure(const PointedSpecies& yh, const Graph& H);

// Structure on src pulled back along a pointed morphism g: src -> target. Deleted bivalent
// vertices carry units, deleted isolated vertices contracted units.
SGraph pullback_structure(const PointedSpecies& ps, const SGraph& target, const Graph& src,
                          const std::vector<int>& src_ports, const StarMorphism& g);
// The Υ★H-structure of a pointed morphism f: src -> H.
SGraph structure_of(const PointedSpecies& yh, const Graph& H, const XGraph& src, const StarMorphism& f);
// Exact (not up to isomorphism) identity of a structure on a fixed graph.
std::string exact_key(const SGraph& a);

// Connected X-graphs with n ports, 1..max_vertices vertices of the given valencies, one per
// isomorphism class.
std::vector<XGraph> enumerate_xgraphs(int nports, int max_vertices, const std::vector<int>& valencies);

// Colours of the ports of a similarity class, in label order.
std::vector<int> port_colors(const SimilarityClass& c, const Palette& p);

// An element of T★H(G): a colour per edge of G and a class per vertex whose port colours are
// the outward colours at that vertex.
struct KlgrElement {
  std::vector<int> edge_color;
  std::vector<SimilarityClass> vertex_class;
  std::string key() const;
  bool operator==(const KlgrElement& o) const { return key() == o.key(); }
};

struct FreeOperadHom {
  Graph G, H;
  int vertex_bound = 0;
  std::vector<KlgrElement> elements;
};
// T★H(G) restricted to classes with a representative of at most vertex_bound vertices.
FreeOperadHom free_operad_hom(const Graph& G, const Graph& H, int vertex_bound);

// A morphism G -> H of the Kleisli graph category: a non-degenerate G-shaped graph of graphs
// and a pointed morphism from its colimit to H.
struct KlgrMorphism {
  Graph G, H;
  GraphOfGraphs gamma;
  StarMorphism f;
};
KlgrMorphism klgr_from_star(const Graph& G, const Graph& H, const StarMorphism& f);  // identity shape
KlgrElement klgr_reduce(const KlgrMorphism& a);
bool klgr_equal(const KlgrMorphism& a, const KlgrMorphism& b);

// Factorisation category of β ∈ T★S over a corolla: objects are structured X-graphs of at most
// vertex_bound vertices in the class of β (one per isomorphism class), morphisms are
// label-preserving pointed morphisms (étale only when unpointed) that pull back the structure.
struct ZigZagStep {
  int from = -1, to = -1;  // objects; the morphism runs from -> to
  StarMorphism g;
};
struct FactorizationReport {
  bool pointed = true;
  int vertex_bound = 0;
  std::vector<SGraph> objects;
  int canonical = -1;
  std::vector<int> component;
  int components = 0;
  long long morphisms = 0;
  // path from object i to the canonical object; each step may point either way
  std::vector<std::vector<ZigZagStep>> witness;
  bool connected() const { return components == 1; }
  std::string summary() const;
};
FactorizationReport factorization_category(const PointedSpecies& ps, const SGraph& beta, int vertex_bound,
                                           bool pointed = true);
// General G: β is represented by a non-degenerate G-shaped graph of graphs and a structure
// on its colimit. For G with vertices the category is the product of the vertex categories.
struct FactorizationWitness {
  std::vector<FactorizationReport> vertices;
  bool connected = true;
};
FactorizationWitness factorization_category_witness(const PointedSpecies& ps, const GraphOfGraphs& gamma,
                                                    const SGraph& alpha, int vertex_bound, bool pointed = true);

// Extensional presheaf tables. A map along m: src -> tgt sends values of tgt to values of src
// (-1 where undefined). Klgr maps carry no graph morphism, only a name.
struct PresheafMap {
  std::string name, src, tgt;
  StarMorphism m;
  bool klgr = false;
  std::vector<int> table;
};
struct FinitePresheaf {
  std::map<std::string, Graph> graphs;
  std::map<std::string, std::vector<std::string>> values;
  std::vector<PresheafMap> maps;
  const PresheafMap* find(const std::string& src, const std::string& tgt, const StarMorphism& m) const;
  std::string name_of(const Graph& g) const;  // "" if absent
};

// Sheaf of S-structures on the listed graphs plus the stick and the corollas they need; with a
// pointing, also the maps along u: C_2 -> | and z: C_0 -> |.
FinitePresheaf species_presheaf(const SpeciesP& S, const std::vector<std::pair<std::string, Graph>>& graphs,
                                const PointedSpecies* pointing = nullptr);
// Nerve of an operad presentation: its species as above plus the Klgr maps C_n -> G collapsing
// each listed connected graph (restriction = evaluation).
FinitePresheaf nerve_presheaf(const OperadPresentation& P, const std::vector<std::pair<std::string, Graph>>& graphs);

struct SegalReport {
  bool ok = true;
  long long families = 0;  // matching families over el(G)
  long long values = 0;    // |P(G)|
  std::vector<std::string> diagnostics;
};
SegalReport segal_check(const FinitePresheaf& P, const std::string& graph);

// Limits over pointed and over étale elements; equal for presheaves coming from pointed species.
struct FinalityReport {
  long long unpointed = 0, pointed = 0;
  bool agree() const { return unpointed == pointed; }
};
FinalityReport finality_check(const FinitePresheaf& P, const std::string& graph);

// Composable maps compose; Klgr collapse maps restrict to the ports of the collapsed graph.
std::vector<std::string> check_functoriality(const FinitePresheaf& P);

}  // namespace mge
