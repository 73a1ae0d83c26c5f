#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mge/monads.hpp"
#include "mge/species.hpp"

namespace mge {

// Finite modular operad presentation. Result legs of x ⋄_{i,j} y are the legs of x without i,
// then the legs of y without j; result legs of ζ_{i,j} x are the legs of x without i and j.
struct OperadPresentation {
  std::string name;
  SpeciesP S;
  std::map<std::array<int, 6>, int> mult;   // (n, x, i, m, y, j) -> element of arity n + m - 2
  std::map<std::array<int, 4>, int> contr;  // (n, x, i, j), i < j -> element of arity n - 2
  std::vector<int> eps;                     // unit per colour (index in S_2); empty if none
  // Elements random samples may use, so that evaluations stay inside the finite tables.
  std::function<bool(int n, int x)> sample_filter;

  std::optional<int> multiply(int n, int x, int i, int m, int y, int j) const;
  std::optional<int> contract(int n, int x, int i, int j) const;
  bool unital() const { return !eps.empty(); }
  std::optional<PointedSpecies> pointed() const;
};

using MultFn = std::function<std::optional<int>(int n, int x, int i, int m, int y, int j)>;
using ContrFn = std::function<std::optional<int>(int n, int x, int i, int j)>;
// Tabulates the operations on every dual-coloured pair of legs.
OperadPresentation make_presentation(std::string name, SpeciesP S, const MultFn& mult, const ContrFn& contr,
                                     std::vector<int> eps = {});

// genus: genera 0..G in every arity, ⋄ = +, ζ = successor, unit genus 0.
// genus-noinc: as genus with ζ = identity. weighted: two self-dual colours, ζ adds the
// colour's weight (1 or 2). terminal: one element per arity.
OperadPresentation builtin_presentation(const std::string& name);
// genus with arities up to nmax and genera up to max_genus (the builtin uses 6 and 8).
OperadPresentation genus_presentation(int nmax, int max_genus, bool increment = true);
std::vector<std::string> builtin_presentation_names();

struct AxiomFailure {
  std::string axiom;
  std::string instance;
  std::string path1, path2;
};
struct AxiomReport {
  std::map<std::string, long long> checked;
  std::map<std::string, long long> skipped;  // an operation along one of the paths is undefined
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
  bool failed(const std::string& axiom) const;
  std::string summary() const;
};
AxiomReport check_axioms(const OperadPresentation& P, int max_failures = 50);

// Collapses the inner orbit of edge e: ⋄ when the ends are distinct vertices, ζ for a loop.
SGraph collapse_edge(const OperadPresentation& P, const SGraph& a, int e);
// Collapses inner orbits in plan order (orbits named by any member edge of the input;
// default ascending) and returns the element of S_X, leg i at port label i.
ElemP evaluate(const OperadPresentation& P, const SGraph& a, const std::optional<std::vector<int>>& plan = std::nullopt);

struct OrderReport {
  long long plans = 0;
  bool agree = true;
  std::vector<int> plan_a, plan_b;
  ElemP a, b;
};
OrderReport evaluate_all_orders(const OperadPresentation& P, const SGraph& a, int max_orbits = 5);

// Evaluation on a nesting equals evaluation of the piece values (T-algebra compatibility).
LawReport check_algebra(const OperadPresentation& P, int fuel, std::uint64_t seed = 1);
// Inserting unit vertices does not change values; wheels of units evaluate to ζ(ε_c).
LawReport unit_behavior(const OperadPresentation& P, int fuel, std::uint64_t seed = 1, int max_wheel = 4);

}  // namespace mge
