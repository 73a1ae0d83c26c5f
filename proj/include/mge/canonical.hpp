#pragma once
#include <string>

#include "mge/morphism.hpp"
#include "mge/species.hpp"

namespace mge {

// Canonical string of a (structured) X-graph: equal iff the two are X-isomorphic
// compatibly with colours and decorations.
std::string canonical_form(const SGraph& a);
std::string canonical_form(const XGraph& x);

// Independent check: all X-isomorphisms a -> b respecting colours and decorations.
std::vector<Morphism> structured_isomorphisms(const SGraph& a, const SGraph& b);

// Permutation sending leg positions at v (ordered by half index in the source) to legs at f(v).
Perm local_perm(const Graph& a, const Graph& b, const Morphism& f, int v);

}  // namespace mge
