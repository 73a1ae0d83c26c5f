#pragma once
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mge/error.hpp"
#include "mge/fixtures.hpp"
#include "mge/graph.hpp"
#include "mge/morphism.hpp"
#include "mge/pointed.hpp"
#include "mge/species.hpp"

namespace mge::test {

inline Graph theta() { return theta_graph(); }
inline Graph tadpole() { return tadpole_graph(); }

struct Named {
  std::string name;
  Graph g;
};

inline std::vector<Named> fixture_graphs() {
  return {
      {"stick", stick()},
      {"c0", isolated_vertex()},
      {"corolla1", corolla(1)},
      {"corolla3", corolla(3)},
      {"line2", line(2)},
      {"wheel1", wheel(1)},
      {"wheel2", wheel(2)},
      {"mgraph12", mgraph(1, 2)},
      {"ngraph1", ngraph(1)},
      {"theta", theta()},
      {"tadpole", tadpole()},
  };
}

// Every morphism src -> tgt by exhausting tau-compatible edge maps (and vertex maps for
// isolated vertices), keeping the ones validate_morphism accepts.
inline std::vector<Morphism> brute_morphisms(const Graph& a, const Graph& b) {
  std::vector<Morphism> out;
  std::vector<int> orb = orbits(a);
  std::vector<int> fE(a.ne(), 0);
  std::vector<int> iso;
  for (int v = 0; v < a.nv; ++v)
    if (a.valency(v) == 0) iso.push_back(v);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == orb.size()) {
      // vertex images of non-isolated vertices are forced; isolated ones range freely
      std::vector<int> fV(a.nv, -1);
      for (int v = 0; v < a.nv; ++v)
        if (a.valency(v) > 0) {
          int e = fE[a.s[a.halves[v][0]]];
          fV[v] = b.attached(e) ? b.vertex_of(e) : -1;
          if (fV[v] < 0) return;
        }
      std::function<void(size_t)> rv = [&](size_t j) {
        if (j == iso.size()) {
          try {
            out.push_back(validate_morphism(a, b, fE, fV));
          } catch (const Error&) {
          }
          return;
        }
        for (int w = 0; w < b.nv; ++w) {
          fV[iso[j]] = w;
          rv(j + 1);
        }
      };
      rv(0);
      return;
    }
    int e = orb[i];
    for (int x = 0; x < b.ne(); ++x) {
      fE[e] = x;
      fE[a.tau[e]] = b.tau[x];
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Pointed morphisms by exhausting tau-compatible edge maps and every vertex image in V' ⊔ E'/tau.
inline std::vector<StarMorphism> brute_star_morphisms(const Graph& a, const Graph& b) {
  std::vector<StarMorphism> out;
  std::vector<int> orb = orbits(a), borb = orbits(b);
  std::vector<VTarget> targets;
  for (int w = 0; w < b.nv; ++w) targets.push_back(VTarget{w, -1});
  for (int e : borb) targets.push_back(VTarget{-1, e});
  std::vector<int> fE(a.ne(), 0);
  std::vector<VTarget> fV(a.nv);
  std::function<void(size_t)> rv = [&](size_t v) {
    if (static_cast<int>(v) == a.nv) {
      try {
        out.push_back(validate_star_morphism(a, b, fE, fV));
      } catch (const Error&) {
      }
      return;
    }
    for (const VTarget& t : targets) {
      fV[v] = t;
      rv(v + 1);
    }
  };
  std::function<void(size_t)> re = [&](size_t i) {
    if (i == orb.size()) {
      rv(0);
      return;
    }
    for (int x = 0; x < b.ne(); ++x) {
      fE[orb[i]] = x;
      fE[a.tau[orb[i]]] = b.tau[x];
      re(i + 1);
    }
  };
  re(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Number of S-structures on g by filtering every colouring of E and every choice of elements.
inline long long brute_species_count(const Species& s, const Graph& g) {
  long long n = 0;
  std::vector<int> col(g.ne(), 0), pick(g.nv, 0);
  std::function<void(int)> rv = [&](int v) {
    if (v == g.nv) {
      ++n;
      return;
    }
    int k = g.valency(v);
    for (int i = 0; i < s.size(k); ++i) {
      bool ok = true;
      for (int j = 0; j < k; ++j) ok = ok && s.legs(k, i)[j] == col[g.tau[g.s[g.halves[v][j]]]];
      if (ok) rv(v + 1);
    }
  };
  std::function<void(int)> rc = [&](int e) {
    if (e == g.ne()) {
      for (int x = 0; x < g.ne(); ++x)
        if (col[g.tau[x]] != s.pal.omega[col[x]]) return;
      rv(0);
      return;
    }
    for (int c = 0; c < s.pal.size(); ++c) {
      col[e] = c;
      rc(e + 1);
    }
  };
  rc(0);
  return n;
}

inline long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All fixed-point-free involutions on n elements.
inline std::vector<std::vector<int>> matchings(int n) {
  std::vector<std::vector<int>> out;
  if (n % 2) return out;
  std::vector<int> tau(n, -1);
  std::function<void()> rec = [&]() {
    int i = static_cast<int>(std::find(tau.begin(), tau.end(), -1) - tau.begin());
    if (i == n) {
      out.push_back(tau);
      return;
    }
    for (int j = i + 1; j < n; ++j)
      if (tau[j] < 0) {
        tau[i] = j;
        tau[j] = i;
        rec();
        tau[i] = tau[j] = -1;
      }
  };
  rec();
  return out;
}

// True if some morphism a -> b is an isomorphism.
inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.ne() != b.ne() || a.nv != b.nv || a.nh() != b.nh()) return false;
  for (const Morphism& f : enumerate_etale(a, b, 1 << 20))
    if (classify(a, b, f).iso) return true;
  return false;
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Random isomorphic copy together with the isomorphism g -> copy.
struct Copy {
  Graph g;
  std::vector<int> ep, vp, hp;
};
inline Copy random_copy(const Graph& g, std::mt19937_64& rng) {
  Copy c;
  c.ep = random_perm(g.ne(), rng);
  c.vp = random_perm(g.nv, rng);
  c.hp = random_perm(g.nh(), rng);
  c.g = relabel(g, c.ep, c.vp, c.hp);
  return c;
}

inline XGraph random_xcopy(const XGraph& x, std::mt19937_64& rng) {
  Copy c = random_copy(x.g, rng);
  XGraph y{c.g, {}};
  for (int e : x.ports) y.ports.push_back(c.ep[e]);
  return y;
}

// Random isomorphic copy of a structured graph, decorations transported to the new leg order.
inline SGraph random_scopy(const SGraph& a, std::mt19937_64& rng) {
  Copy c = random_copy(a.g, rng);
  return relabel_sgraph(a, c.ep, c.vp, c.hp);
}

}  // namespace mge::test
