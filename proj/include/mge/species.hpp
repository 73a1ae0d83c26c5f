#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mge/graph.hpp"
#include "mge/morphism.hpp"
#include "mge/perm.hpp"

namespace mge {

struct Palette {
  std::vector<int> omega;  // involution on colours 0..n-1
  std::vector<std::string> names;
  int size() const { return static_cast<int>(omega.size()); }
  int orbit(int c) const { return std::min(c, omega[c]); }
};
Palette monochrome();
Palette directed();  // {in, out} swapped

struct Elem;
using ElemP = std::shared_ptr<const Elem>;

// Finite graphical species on the skeleton {0..n-1}, n <= nmax.
// Action convention: legs(act(s, x))[i] == legs(x)[s[i]].
struct Species {
  struct Arity {
    std::vector<std::string> names;
    std::vector<std::vector<int>> legs;  // colour at each leg
    std::vector<std::vector<int>> act;   // act[perm_rank][element]
  };
  Palette pal;
  std::vector<Arity> ar;

  int nmax() const { return static_cast<int>(ar.size()) - 1; }
  int size(int n) const { return n <= nmax() ? static_cast<int>(ar[n].names.size()) : 0; }
  int act(int n, const Perm& s, int i) const { return ar[n].act[perm_rank(s)][i]; }
  const std::vector<int>& legs(int n, int i) const { return ar[n].legs[i]; }
  const std::vector<int>& with_legs(int n, const std::vector<int>& cols) const;
  ElemP elem(int n, int i) const;
  int find(int n, const std::string& name) const;  // -1 if absent

  // filled by finalize_species
  std::vector<std::map<std::vector<int>, std::vector<int>>> by_legs;
  std::vector<std::vector<ElemP>> elems;
};
using SpeciesP = std::shared_ptr<const Species>;

// Builds the full action from generator tables (gens[n][i] acts as the transposition (i i+1)).
SpeciesP make_species(Palette pal, std::vector<std::vector<std::string>> names,
                      std::vector<std::vector<std::vector<int>>> legs,
                      std::vector<std::vector<std::vector<int>>> gens);
// Finalizes a species whose full action tables are already present; validates it.
SpeciesP finalize_species(Species s);

SpeciesP terminal_species(const Palette& p, int nmax);
// Arity sets {0..g} (or names given) with trivial action; monochrome.
SpeciesP trivial_action_species(int nmax, int per_arity);

// Generic element of a species tower built from a base table by T and D.
struct SGraph;
struct Elem {
  enum class Kind { Base, Unit, CUnit, Class };
  Kind kind = Kind::Base;
  int arity = 0;
  int index = -1;  // Base
  int color = -1;  // Unit: colour c with legs (c, ωc); CUnit: ω-orbit representative
  int level = 0;   // tags stacked unit adjunctions
  bool raw = false;  // CUnit keyed by a colour instead of its orbit (deliberately defective variant)
  std::shared_ptr<const SGraph> rep;  // Class
  std::string key;
};

// A structured X-graph: ports[i] carries label i, colour per edge, decoration per vertex
// with legs ordered as the vertex's half-edges (ascending index).
struct SGraph {
  Graph g;
  std::vector<int> ports;
  std::vector<int> color;
  std::vector<ElemP> deco;
  SpeciesP sp;

  XGraph xgraph() const { return XGraph{g, ports}; }
};

ElemP make_unit(int c, int level = 0);
ElemP make_cunit(const Palette& p, int c, int level = 0);
ElemP make_cunit_raw(int c, int level = 0);
ElemP make_class(SGraph rep);  // computes the canonical key

int leg_color(const Palette& p, const Elem& x, int i);
std::vector<int> leg_colors(const Palette& p, const Elem& x);
ElemP act_elem(const Species& s, const ElemP& x, const Perm& sigma);
bool same(const ElemP& a, const ElemP& b);

void validate_sgraph(const SGraph& a);  // throws ColorMismatch / LabelMismatch
// Isomorphic copy along relabel(g, ep, vp, hp); decorations follow their legs.
SGraph relabel_sgraph(const SGraph& a, const std::vector<int>& ep, const std::vector<int>& vp,
                      const std::vector<int>& hp);
// Colour of leg i at v must equal the colour of tau(s(h_i)).
int outward_color(const SGraph& a, int h);

// Enumeration of S(g) as a limit over the elements of g.
std::vector<SGraph> evaluate_species(const SpeciesP& s, const Graph& g, long long limit = 2000000);
long long count_species(const Species& s, const Graph& g);

// Corolla C_n structured by an element of S_n.
SGraph corolla_structure(const SpeciesP& s, const ElemP& x, int n);

struct PointedSpecies {
  SpeciesP S;
  std::vector<int> eps;  // per colour: index in S_2
  std::vector<int> o;    // per colour: index in S_0
  bool is_eps(int n, int i) const;
  bool is_o(int n, int i) const;
};

// Formally adjoins units; the result's tables extend S's (indices of S are kept).
PointedSpecies apply_D(const SpeciesP& s);
// The monad multiplication DDS -> DS as an index map per arity.
std::vector<std::vector<int>> mu_D(const PointedSpecies& ds, const PointedSpecies& dds);
PointedSpecies validate_pointed(const SpeciesP& s, const std::vector<int>& eps, const std::vector<int>& o);

}  // namespace mge
