#pragma once
#include <optional>
#include <vector>

#include "mge/graph.hpp"

namespace mge {

// Checks a candidate edge map (and optional vertex map) and fills in f_H, f_V.
Morphism validate_morphism(const Graph& src, const Graph& tgt, const std::vector<int>& fE,
                           const std::optional<std::vector<int>>& fV = std::nullopt);
bool is_valid_morphism(const Graph& src, const Graph& tgt, const Morphism& f);

Morphism identity_morphism(const Graph& g);
// g ∘ f, where f: A -> B and g: B -> C
Morphism compose(const Morphism& g, const Morphism& f);
Morphism compose_checked(const Graph& a, const Graph& b, const Graph& b2, const Morphism& g, const Morphism& f);

// ch_e: stick -> g with 0 ↦ e
Morphism choose_edge(const Graph& g, int e);

struct Classification {
  bool locally_injective = false;
  bool locally_surjective = false;
  bool etale = false;           // locally bijective
  bool etale_pullback = false;  // (H,V) square is a pullback; must equal etale
  bool injective = false;       // pointwise on E, H, V
  bool mono = false;            // categorical monomorphism
  bool weak_mono = false;       // the weak-subgraph conditions (i)-(iii)
  bool epi = false;             // pointwise surjective
  bool boundary_preserving = false;
  bool iso = false;
  std::vector<std::optional<int>> cover_degree;  // per target component
};
Classification classify(const Graph& src, const Graph& tgt, const Morphism& f);

// All morphisms (or only étale ones) src -> tgt, sorted.
std::vector<Morphism> enumerate_morphisms(const Graph& src, const Graph& tgt, bool etale_only,
                                          int bound = -1);
inline std::vector<Morphism> enumerate_etale(const Graph& src, const Graph& tgt, int bound = -1) {
  return enumerate_morphisms(src, tgt, true, bound);
}

struct Pullback {
  Graph g;
  Morphism p1, p2;  // to source(f1), source(f2)
};
Pullback pullback(const Graph& a, const Graph& b, const Graph& c, const Morphism& f1, const Morphism& f2);

// X-graph: ports[i] is the port labelled i.
struct XGraph {
  Graph g;
  std::vector<int> ports;
};
void validate_xgraph(const XGraph& x);
XGraph default_labelling(const Graph& g);  // labels ports in ascending edge order

std::vector<Morphism> enumerate_x_isomorphisms(const XGraph& a, const XGraph& b);

}  // namespace mge
