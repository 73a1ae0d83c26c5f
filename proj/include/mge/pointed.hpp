#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mge/graph.hpp"
#include "mge/morphism.hpp"
#include "mge/species.hpp"

namespace mge {

// Image of a vertex under a pointed morphism: a vertex, or the tau-orbit of an edge
// (stored as its smallest edge) when the vertex is deleted.
struct VTarget {
  int vertex = -1;
  int orbit = -1;
  bool deleted() const { return orbit >= 0; }
  bool operator==(const VTarget& o) const { return vertex == o.vertex && orbit == o.orbit; }
  bool operator<(const VTarget& o) const { return vertex != o.vertex ? vertex < o.vertex : orbit < o.orbit; }
};

struct StarMorphism {
  std::vector<int> fE;
  std::vector<VTarget> fV;
  std::vector<int> deleted() const;  // W_f, ascending
  bool operator==(const StarMorphism& o) const { return fE == o.fE && fV == o.fV; }
  bool operator<(const StarMorphism& o) const { return fE != o.fE ? fE < o.fE : fV < o.fV; }
};

// Checks the extended diagram and the pullback condition. Without fV the vertex map is
// inferred from fE, which is ambiguous only for the isolated vertex and the target wheel(1).
StarMorphism validate_star_morphism(const Graph& src, const Graph& tgt, const std::vector<int>& fE,
                                    const std::optional<std::vector<VTarget>>& fV = std::nullopt);
StarMorphism star_from(const Morphism& f);
StarMorphism compose_star(const Graph& c, const StarMorphism& g, const StarMorphism& f);  // g ∘ f, g: B -> C
std::string describe(const StarMorphism& f);

struct Deletion {
  Graph g;
  StarMorphism delta;            // original -> g
  std::vector<int> old_edge;     // new edge -> kept original edge, -1 for fresh stick edges
  std::vector<int> old_vertex;   // new vertex -> original vertex
};
// W may contain bivalent and isolated vertices. Fully deleted wheels and isolated vertices
// become sticks; for a wheel the smallest edge goes to end 0 of its stick.
Deletion vertex_deletion(const Graph& g, const std::vector<int>& W);

struct Factorization {
  std::vector<int> W;
  Deletion del;
  Morphism residual;  // étale, del.g -> tgt
};
Factorization factor_star(const Graph& src, const Graph& tgt, const StarMorphism& f);

std::vector<StarMorphism> enumerate_star_morphisms(const Graph& src, const Graph& tgt, int bound = -1);

// Which decorations are units: unit_color gives c for a unit with legs (c, ωc) and -1
// otherwise; cunit_orbit gives the colour orbit of a contracted unit, -1 otherwise.
struct Pointing {
  std::function<int(const Elem&)> unit_color;
  std::function<int(const Elem&)> cunit_orbit;
  std::function<ElemP(int)> unit;   // the unit of colour c
  std::function<ElemP(int)> cunit;  // the contracted unit of the orbit of c
};
Pointing pointing_of(const PointedSpecies& ps);
// Units adjoined formally at the given level (Elem kinds Unit / CUnit).
Pointing formal_pointing(const Palette& p, int level);

struct SimilarityClass {
  enum class Kind { Admissible, UnitLine, UnitWheel };
  Kind kind = Kind::Admissible;
  int color = -1;  // UnitLine: colour of port 0; UnitWheel: colour orbit
  SGraph rep;      // Admissible: the reduced representative
  std::string key;
  bool operator==(const SimilarityClass& o) const { return key == o.key; }
};
std::vector<int> unit_vertices(const SGraph& a, const Pointing& pt);
SimilarityClass reduced_representative(const SGraph& a, const Pointing& pt);
bool similarity_equal(const SGraph& a, const SGraph& b, const Pointing& pt);
// Subdivides the orbit of e by a bivalent vertex carrying the unit of colour color[e].
SGraph insert_unit_vertex(const SGraph& a, int e, const Pointing& pt);
// The c-coloured unit structures on line(k) (port 0 coloured c) and wheel(m).
SGraph line_of_units(const SpeciesP& sp, int k, int c, const Pointing& pt);
SGraph wheel_of_units(const SpeciesP& sp, int m, int c, const Pointing& pt);
// Transports a structure along a deletion of unit vertices.
SGraph delete_structured(const SGraph& a, const std::vector<int>& W);

}  // namespace mge
