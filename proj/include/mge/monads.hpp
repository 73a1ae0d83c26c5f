#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mge/pointed.hpp"
#include "mge/species.hpp"

namespace mge {

using ElemMap = std::function<ElemP(const ElemP&)>;

// Glues pieces[v] into vertex v of base; port i of pieces[v] meets the i-th half-edge of v.
// Pieces must be admissible (at least one vertex).
SGraph substitute(const SGraph& base, const std::vector<SGraph>& pieces);

// The monad T. Elements of TS are Class elements whose decorations lie one level below.
ElemP eta_T(const SpeciesP& s, const ElemP& phi);
ElemP mu_T(const ElemP& x);                      // flattens one level of nesting
ElemP map_T(const ElemP& x, const ElemMap& f);   // T on a map of species

// The monad D on formally adjoined units: level 1 sits above level 0.
ElemP map_D(const ElemP& x, const ElemMap& f);   // fixes units of every level
ElemP flatten_D(const ElemP& x);                 // level 1 units become level 0 units

// TD => DT for units of the given level. The broken variant keys a wheel of units by the
// colour its representative happens to show, instead of the colour orbit.
ElemP lambda_TD(const ElemP& x, int level = 0, bool broken = false);

// T* on a pointed species: elements are reduced classes (Class), or the units Unit / CUnit at
// level 0. `below` says which decorations are units one level down.
ElemP star_class(const SGraph& a, const Pointing& below);
ElemP star_eta(const SpeciesP& s, const ElemP& phi, const Pointing& below);
ElemP star_mu(const ElemP& x, const Pointing& below);
ElemP star_map(const ElemP& x, const ElemMap& f, const Pointing& out);
bool star_equal(const ElemP& a, const ElemP& b);

struct TStar {
  PointedSpecies ps;
  ElemP eta(const ElemP& phi) const;
  ElemP mu(const ElemP& x) const;
  ElemP cls(const SGraph& a) const;
  bool element_equal(const ElemP& a, const ElemP& b) const { return star_equal(a, b); }
};
TStar t_star(const PointedSpecies& ps);

std::string describe(const ElemP& x);

// Random samples. Structures decorate small connected graphs; units of the listed levels
// are mixed in where the colours allow.
struct Sampler {
  SpeciesP sp;
  std::mt19937_64 rng;
  int max_vertices = 4;
  int max_valency = 3;
  std::function<bool(const ElemP&)> allow;  // restricts the base elements used, if set
  Sampler(SpeciesP s, std::uint64_t seed) : sp(std::move(s)), rng(seed) {}
  Graph graph();
  std::optional<SGraph> structure(const Graph& g, const std::vector<int>& unit_levels, int tries = 40);
  SGraph structure(const std::vector<int>& unit_levels);
  ElemP element(const std::vector<int>& unit_levels);  // of S or DS
  // A structured graph whose decorations are classes of the pieces of a random partition.
  SGraph nest(const SGraph& a);
  // Same class, fresh representative (recursively through class decorations).
  ElemP reshuffle(const ElemP& x);
};
// Reverses the half-edge order at every vertex: same class, different representative.
SGraph reverse_halves(const SGraph& a);

struct LawFailure {
  std::string law;
  std::string witness;
  std::string lhs, rhs;
};
struct LawReport {
  std::vector<std::pair<std::string, int>> checked;
  std::vector<LawFailure> failures;
  bool ok() const { return failures.empty(); }
  bool failed(const std::string& law) const;
  std::string summary() const;
};

LawReport check_T_laws(const SpeciesP& s, int fuel, std::uint64_t seed = 1);
LawReport check_beck_axioms(const SpeciesP& s, int fuel, std::uint64_t seed = 1, bool broken = false);
LawReport check_T_star_laws(const PointedSpecies& ps, int fuel, std::uint64_t seed = 1);

}  // namespace mge
