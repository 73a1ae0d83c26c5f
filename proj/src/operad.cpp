#include "mge/operad.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mge/error.hpp"
#include "mge/perm.hpp"

namespace mge {

std::optional<int> OperadPresentation::multiply(int n, int x, int i, int m, int y, int j) const {
  auto it = mult.find({n, x, i, m, y, j});
  if (it == mult.end()) return std::nullopt;
  return it->second;
}

std::optional<int> OperadPresentation::contract(int n, int x, int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = contr.find({n, x, i, j});
  if (it == contr.end()) return std::nullopt;
  return it->second;
}

std::optional<PointedSpecies> OperadPresentation::pointed() const {
  if (eps.empty()) return std::nullopt;
  std::vector<int> o;
  for (int e : eps) {
    auto z = contract(2, e, 0, 1);
    if (!z) fail(ErrorCode::PartialMapUndefined, "contraction of a unit is undefined");
    o.push_back(*z);
  }
  return validate_pointed(S, eps, o);
}

static bool dual(const Species& S, int n, int x, int i, int m, int y, int j) {
  return S.legs(n, x)[i] == S.pal.omega[S.legs(m, y)[j]];
}

OperadPresentation make_presentation(std::string name, SpeciesP S, const MultFn& mult, const ContrFn& contr,
                                     std::vector<int> eps) {
  OperadPresentation P;
  P.name = std::move(name);
  P.S = S;
  P.eps = std::move(eps);
  int N = S->nmax();
  for (int n = 1; n <= N; ++n)
    for (int m = 1; n + m - 2 <= N && m <= N; ++m)
      for (int x = 0; x < S->size(n); ++x)
        for (int y = 0; y < S->size(m); ++y)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
              if (dual(*S, n, x, i, m, y, j))
                if (auto r = mult(n, x, i, m, y, j)) P.mult[{n, x, i, m, y, j}] = *r;
  for (int n = 2; n <= N; ++n)
    for (int x = 0; x < S->size(n); ++x)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (dual(*S, n, x, i, n, x, j))
            if (auto r = contr(n, x, i, j)) P.contr[{n, x, i, j}] = *r;
  return P;
}

namespace {

std::vector<int> drop(const std::vector<int>& v, std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  std::vector<int> r;
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (!std::binary_search(idx.begin(), idx.end(), k)) r.push_back(v[k]);
  return r;
}

int pow2(int n) { return 1 << n; }

// Two self-dual colours; element index = genus * 2^n + colour bits (bit k = colour of leg k).
SpeciesP weighted_species(int nmax, int G) {
  Species s;
  s.pal = Palette{{0, 1}, {"a", "b"}};
  s.ar.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    auto& a = s.ar[n];
    for (int g = 0; g <= G; ++g)
      for (int t = 0; t < pow2(n); ++t) {
        std::string nm = "g" + std::to_string(g) + ":";
        std::vector<int> legs;
        for (int k = 0; k < n; ++k) {
          legs.push_back((t >> k) & 1);
          nm += legs.back() ? 'b' : 'a';
        }
        a.names.push_back(nm);
        a.legs.push_back(legs);
      }
    for (const Perm& r : all_perms(n)) {
      std::vector<int> tab;
      for (int x = 0; x < static_cast<int>(a.legs.size()); ++x) {
        int t = 0;
        for (int k = 0; k < n; ++k) t |= a.legs[x][r[k]] << k;
        tab.push_back((x / pow2(n)) * pow2(n) + t);
      }
      a.act.push_back(tab);
    }
  }
  return finalize_species(std::move(s));
}

OperadPresentation weighted_presentation() {
  const int N = 4, G = 6;
  SpeciesP S = weighted_species(N, G);
  auto genus = [](int n, int x) { return x / pow2(n); };
  auto bits = [](int n, int x) {
    std::vector<int> b;
    for (int k = 0; k < n; ++k) b.push_back((x >> k) & 1);
    return b;
  };
  auto index = [](int g, const std::vector<int>& b) {
    int t = 0;
    for (size_t k = 0; k < b.size(); ++k) t |= b[k] << k;
    return g * pow2(static_cast<int>(b.size())) + t;
  };
  auto mult = [=](int n, int x, int i, int m, int y, int j) -> std::optional<int> {
    int g = genus(n, x) + genus(m, y);
    if (g > G) return std::nullopt;
    std::vector<int> b = drop(bits(n, x % pow2(n)), {i}), c = drop(bits(m, y % pow2(m)), {j});
    b.insert(b.end(), c.begin(), c.end());
    return index(g, b);
  };
  auto contr = [=](int n, int x, int i, int j) -> std::optional<int> {
    std::vector<int> b = bits(n, x % pow2(n));
    int g = genus(n, x) + 1 + b[i];  // weight 1 for colour a, 2 for colour b
    if (g > G) return std::nullopt;
    return index(g, drop(b, {i, j}));
  };
  // unit of colour c: genus 0, legs (c, c)
  OperadPresentation P = make_presentation("weighted", S, mult, contr, {index(0, {0, 0}), index(0, {1, 1})});
  P.sample_filter = [=](int n, int x) { return genus(n, x) == 0; };
  return P;
}

}  // namespace

OperadPresentation genus_presentation(int nmax, int max_genus, bool increment) {
  const int G = max_genus;
  SpeciesP S = trivial_action_species(nmax, G + 1);
  auto mult = [=](int, int x, int, int, int y, int) -> std::optional<int> {
    if (x + y > G) return std::nullopt;
    return x + y;
  };
  auto contr = [=](int, int x, int, int) -> std::optional<int> {
    int r = x + (increment ? 1 : 0);
    if (r > G) return std::nullopt;
    return r;
  };
  OperadPresentation P = make_presentation(increment ? "genus" : "genus-noinc", S, mult, contr, {0});
  P.sample_filter = [](int, int x) { return x <= 1; };
  return P;
}

OperadPresentation builtin_presentation(const std::string& name) {
  if (name == "genus") return genus_presentation(6, 8, true);
  if (name == "genus-noinc") return genus_presentation(6, 8, false);
  if (name == "weighted") return weighted_presentation();
  if (name == "terminal") {
    SpeciesP S = terminal_species(monochrome(), 6);
    auto zero6 = [](int, int, int, int, int, int) -> std::optional<int> { return 0; };
    auto zero4 = [](int, int, int, int) -> std::optional<int> { return 0; };
    return make_presentation(name, S, zero6, zero4, {0});
  }
  fail(ErrorCode::UnknownElement, "unknown presentation '" + name + "'");
}

std::vector<std::string> builtin_presentation_names() { return {"genus", "genus-noinc", "weighted", "terminal"}; }

// ---- axioms ----

bool AxiomReport::failed(const std::string& axiom) const {
  return std::any_of(failures.begin(), failures.end(), [&](const AxiomFailure& f) { return f.axiom == axiom; });
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  for (auto& [ax, n] : checked) {
    os << ax << ": " << n << " instances";
    auto it = skipped.find(ax);
    if (it != skipped.end()) os << ", " << it->second << " outside the tables";
    long long nf = std::count_if(failures.begin(), failures.end(), [&](const AxiomFailure& f) { return f.axiom == ax; });
    os << (nf ? ", FAIL" : ", ok") << "\n";
  }
  for (auto& f : failures) os << "FAIL " << f.axiom << ": " << f.instance << "\n  " << f.path1 << "\n  " << f.path2 << "\n";
  return os.str();
}

namespace {

// An element together with the origin (input, leg) of each of its legs.
struct Tracked {
  int n = 0, x = 0;
  std::vector<std::pair<int, int>> origin;
};

struct Axioms {
  const OperadPresentation& P;
  const Species& S;
  AxiomReport rep;
  int max_failures;

  std::string name(const Tracked& t) const { return S.ar[t.n].names[t.x] + "/" + std::to_string(t.n); }
  std::string name(int n, int x) const { return S.ar[n].names[x] + "/" + std::to_string(n); }

  Tracked input(int id, int n, int x) const {
    Tracked t{n, x, {}};
    for (int k = 0; k < n; ++k) t.origin.push_back({id, k});
    return t;
  }
  int pos(const Tracked& t, std::pair<int, int> o) const {
    return static_cast<int>(std::find(t.origin.begin(), t.origin.end(), o) - t.origin.begin());
  }
  std::optional<Tracked> mul(const std::optional<Tracked>& a, int i, const std::optional<Tracked>& b, int j) const {
    if (!a || !b) return std::nullopt;
    auto r = P.multiply(a->n, a->x, i, b->n, b->x, j);
    if (!r) return std::nullopt;
    Tracked t{a->n + b->n - 2, *r, {}};
    for (int k = 0; k < a->n; ++k)
      if (k != i) t.origin.push_back(a->origin[k]);
    for (int k = 0; k < b->n; ++k)
      if (k != j) t.origin.push_back(b->origin[k]);
    return t;
  }
  std::optional<Tracked> con(const std::optional<Tracked>& a, int i, int j) const {
    if (!a) return std::nullopt;
    auto r = P.contract(a->n, a->x, i, j);
    if (!r) return std::nullopt;
    Tracked t{a->n - 2, *r, {}};
    for (int k = 0; k < a->n; ++k)
      if (k != i && k != j) t.origin.push_back(a->origin[k]);
    return t;
  }
  Tracked act(const Tracked& a, const Perm& s) const {
    Tracked t{a.n, S.act(a.n, s, a.x), {}};
    for (int k = 0; k < a.n; ++k) t.origin.push_back(a.origin[s[k]]);
    return t;
  }
  bool dual_legs(const Tracked& a, int i, const Tracked& b, int j) const {
    return S.legs(a.n, a.x)[i] == S.pal.omega[S.legs(b.n, b.x)[j]];
  }
  // b rearranged to the leg order of a
  int aligned(const Tracked& a, const Tracked& b) const {
    Perm s(a.n);
    for (int k = 0; k < a.n; ++k) s[k] = pos(b, a.origin[k]);
    return S.act(b.n, s, b.x);
  }
  void compare(const std::string& ax, const std::string& inst, const std::optional<Tracked>& p1,
               const std::optional<Tracked>& p2) {
    ++rep.checked[ax];
    if (!p1 || !p2) {
      ++rep.skipped[ax];
      return;
    }
    if (p1->n != p2->n || aligned(*p1, *p2) != p1->x) {
      // keep at least one witness per axiom
      if (static_cast<int>(rep.failures.size()) < max_failures || !rep.failed(ax))
        rep.failures.push_back({ax, inst, "path 1 gives " + name(*p1), "path 2 gives " + name(p1->n, aligned(*p1, *p2))});
    }
  }

  void run() {
    const int N = S.nmax();
    auto each = [&](int lo, auto&& f) {
      for (int n = lo; n <= N; ++n)
        for (int x = 0; x < S.size(n); ++x) f(n, x);
    };
    // m1: commutativity
    each(1, [&](int n, int x) {
      each(1, [&](int m, int y) {
        if (n + m - 2 > N) return;
        Tracked X = input(0, n, x), Y = input(1, m, y);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < m; ++j)
            if (dual_legs(X, i, Y, j))
              compare("m1 commutativity", name(X) + " ⋄_{" + std::to_string(i) + "," + std::to_string(j) + "} " + name(Y),
                      mul(X, i, Y, j), mul(Y, j, X, i));
      });
    });
    // m2: equivariance of ⋄ (in the first factor; the second follows with m1)
    each(1, [&](int n, int x) {
      each(1, [&](int m, int y) {
        if (n + m - 2 > N) return;
        Tracked X = input(0, n, x), Y = input(1, m, y);
        for (const Perm& s : all_perms(n)) {
          Tracked sX = act(X, s);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
              if (dual_legs(sX, i, Y, j))
                compare("m2 equivariance", name(X) + " permuted, legs " + std::to_string(i) + "," + std::to_string(j),
                        mul(sX, i, Y, j), mul(X, s[i], Y, j));
        }
      });
    });
    // equivariance and symmetry of ζ
    each(2, [&](int n, int x) {
      Tracked X = input(0, n, x);
      for (const Perm& s : all_perms(n)) {
        Tracked sX = act(X, s);
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (dual_legs(sX, i, sX, j))
              compare("contraction equivariance", name(X) + " permuted, legs " + std::to_string(i) + "," + std::to_string(j),
                      con(sX, i, j), con(X, s[i], s[j]));
      }
    });
    // M1
    each(1, [&](int n1, int x) {
      each(2, [&](int n2, int y) {
        each(1, [&](int n3, int z) {
          if (n1 + n2 + n3 - 4 > N) return;
          Tracked X = input(0, n1, x), Y = input(1, n2, y), Z = input(2, n3, z);
          for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n2; ++b) {
              if (!dual_legs(X, a, Y, b)) continue;
              for (int b2 = 0; b2 < n2; ++b2) {
                if (b2 == b) continue;
                for (int c = 0; c < n3; ++c) {
                  if (!dual_legs(Y, b2, Z, c)) continue;
                  auto xy = mul(X, a, Y, b);
                  auto p1 = xy ? mul(xy, pos(*xy, {1, b2}), Z, c) : std::nullopt;
                  auto yz = mul(Y, b2, Z, c);
                  auto p2 = yz ? mul(X, a, yz, pos(*yz, {1, b})) : std::nullopt;
                  compare("M1 associativity", name(X) + "," + name(Y) + "," + name(Z), p1, p2);
                }
              }
            }
        });
      });
    });
    // M2
    each(4, [&](int n, int x) {
      Tracked X = input(0, n, x);
      for (int i = 0; i < n; ++i)
        for (int i2 = i + 1; i2 < n; ++i2) {
          if (!dual_legs(X, i, X, i2)) continue;
          for (int j = 0; j < n; ++j)
            for (int j2 = j + 1; j2 < n; ++j2) {
              if (j == i || j == i2 || j2 == i || j2 == i2 || !dual_legs(X, j, X, j2)) continue;
              auto ci = con(X, i, i2);
              auto p1 = ci ? con(ci, pos(*ci, {0, j}), pos(*ci, {0, j2})) : std::nullopt;
              auto cj = con(X, j, j2);
              auto p2 = cj ? con(cj, pos(*cj, {0, i}), pos(*cj, {0, i2})) : std::nullopt;
              compare("M2 contractions commute", name(X), p1, p2);
            }
        }
    });
    // M3
    each(3, [&](int n, int x) {
      each(1, [&](int m, int y) {
        if (n + m - 4 > N) return;
        Tracked X = input(0, n, x), Y = input(1, m, y);
        for (int i = 0; i < n; ++i)
          for (int i2 = i + 1; i2 < n; ++i2) {
            if (!dual_legs(X, i, X, i2)) continue;
            for (int k = 0; k < n; ++k) {
              if (k == i || k == i2) continue;
              for (int l = 0; l < m; ++l) {
                if (!dual_legs(X, k, Y, l)) continue;
                auto c = con(X, i, i2);
                auto p1 = c ? mul(c, pos(*c, {0, k}), Y, l) : std::nullopt;
                auto mm = mul(X, k, Y, l);
                auto p2 = mm ? con(mm, pos(*mm, {0, i}), pos(*mm, {0, i2})) : std::nullopt;
                compare("M3 multiplication and contraction commute", name(X) + "," + name(Y), p1, p2);
              }
            }
          }
      });
    });
    // M4
    each(2, [&](int n, int x) {
      each(2, [&](int m, int y) {
        if (n + m - 4 > N) return;
        Tracked X = input(0, n, x), Y = input(1, m, y);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            for (int a2 = 0; a2 < m; ++a2)
              for (int b2 = 0; b2 < m; ++b2) {
                if (a2 == b2 || !dual_legs(X, a, Y, a2) || !dual_legs(X, b, Y, b2)) continue;
                auto ma = mul(X, a, Y, a2);
                auto p1 = ma ? con(ma, pos(*ma, {0, b}), pos(*ma, {1, b2})) : std::nullopt;
                auto mb = mul(X, b, Y, b2);
                auto p2 = mb ? con(mb, pos(*mb, {0, a}), pos(*mb, {1, a2})) : std::nullopt;
                compare("M4 parallel multiplication", name(X) + "," + name(Y) + " along legs " + std::to_string(a) + "~" +
                                                          std::to_string(a2) + " and " + std::to_string(b) + "~" +
                                                          std::to_string(b2),
                        p1, p2);
              }
          }
      });
    });
    if (P.unital()) units();
  }

  void units() {
    const int N = S.nmax();
    int C = S.pal.size();
    Perm swap{1, 0};
    for (int c = 0; c < C; ++c) {
      int e = P.eps[c];
      ++rep.checked["unit colours"];
      if (S.legs(2, e) != std::vector<int>{c, S.pal.omega[c]})
        rep.failures.push_back({"unit colours", "unit of colour " + std::to_string(c), "legs differ from (c, ωc)", ""});
      ++rep.checked["unit equivariance"];
      if (S.act(2, swap, e) != P.eps[S.pal.omega[c]])
        rep.failures.push_back({"unit equivariance", "unit of colour " + std::to_string(c),
                                "swapping the legs of ε_c gives " + name(2, S.act(2, swap, e)),
                                "ε_ωc is " + name(2, P.eps[S.pal.omega[c]])});
    }
    // right unit laws on both legs of ε; left laws follow from m1
    auto is_unit = [&](int e, bool record) {
      bool good = true;
      Tracked E = input(3, 2, e);
      for (int n = 1; n <= N; ++n)
        for (int x = 0; x < S.size(n); ++x) {
          Tracked X = input(0, n, x);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2; ++j) {
              if (!dual_legs(X, i, E, j)) continue;
              Tracked expect = X;
              expect.origin[i] = {3, 1 - j};
              auto r = mul(X, i, E, j);
              if (record)
                compare("unit law", name(X) + " ⋄ ε leg " + std::to_string(j), std::optional<Tracked>(expect), r);
              if (!r || aligned(expect, *r) != x) good = false;
            }
        }
      return good;
    };
    for (int c = 0; c < C; ++c) is_unit(P.eps[c], true);
    // uniqueness: no other element with legs (c, ωc) acts as a unit
    for (int c = 0; c < C; ++c) {
      ++rep.checked["unit uniqueness"];
      for (int e : S.with_legs(2, {c, S.pal.omega[c]}))
        if (e != P.eps[c] && is_unit(e, false))
          rep.failures.push_back({"unit uniqueness", "colour " + std::to_string(c), name(2, e) + " is also a unit",
                                  "ε_c is " + name(2, P.eps[c])});
    }
  }
};

}  // namespace

AxiomReport check_axioms(const OperadPresentation& P, int max_failures) {
  Axioms a{P, *P.S, {}, max_failures};
  a.run();
  return a.rep;
}

// ---- evaluation ----

namespace {

int leg_position(const Graph& g, int v, int e) {
  const auto& hs = g.halves[v];
  for (size_t k = 0; k < hs.size(); ++k)
    if (g.s[hs[k]] == e) return static_cast<int>(k);
  return -1;
}

}  // namespace

SGraph collapse_edge(const OperadPresentation& P, const SGraph& a, int e) {
  const Graph& g = a.g;
  if (e < 0 || e >= g.ne()) fail(ErrorCode::IndexOutOfRange, "edge out of range");
  int f = g.tau[e];
  if (!g.attached(e) || !g.attached(f)) fail(ErrorCode::NotInner, "edge " + std::to_string(e) + " is not inner");
  const Species& S = *P.S;
  int v1 = g.vertex_of(e), v2 = g.vertex_of(f);
  int i = leg_position(g, v1, e), j = leg_position(g, v2, f);
  const Elem& x1 = *a.deco[v1];
  const Elem& x2 = *a.deco[v2];
  if (x1.kind != Elem::Kind::Base || x2.kind != Elem::Kind::Base)
    fail(ErrorCode::InvalidParameter, "collapse needs base decorations");
  std::optional<int> r;
  std::vector<int> merged;  // old halves of the new vertex in leg order
  if (v1 != v2) {
    r = P.multiply(x1.arity, x1.index, i, x2.arity, x2.index, j);
    if (!r)
      fail(ErrorCode::PartialMapUndefined, "product " + S.ar[x1.arity].names[x1.index] + " ⋄ " +
                                               S.ar[x2.arity].names[x2.index] + " is outside the table");
    for (int k = 0; k < x1.arity; ++k)
      if (k != i) merged.push_back(g.halves[v1][k]);
    for (int k = 0; k < x2.arity; ++k)
      if (k != j) merged.push_back(g.halves[v2][k]);
  } else {
    r = P.contract(x1.arity, x1.index, i, j);
    if (!r) fail(ErrorCode::PartialMapUndefined, "contraction of " + S.ar[x1.arity].names[x1.index] + " is outside the table");
    for (int k = 0; k < x1.arity; ++k)
      if (k != i && k != j) merged.push_back(g.halves[v1][k]);
  }
  int n = static_cast<int>(merged.size());
  std::vector<int> enew(g.ne(), -1);
  int ne = 0;
  for (int x = 0; x < g.ne(); ++x)
    if (x != e && x != f) enew[x] = ne++;
  std::vector<int> vnew(g.nv, -1);
  int nv = 0;
  for (int v = 0; v < g.nv; ++v)
    if (v != v2 || v1 == v2) vnew[v] = nv++;
  std::vector<int> tau(ne), s, t;
  for (int x = 0; x < g.ne(); ++x)
    if (enew[x] >= 0) tau[enew[x]] = enew[g.tau[x]];
  SGraph out;
  out.sp = a.sp;
  out.deco.assign(nv, nullptr);
  for (int v = 0; v < g.nv; ++v) {
    if (vnew[v] < 0) continue;
    const std::vector<int>& hs = v == v1 ? merged : g.halves[v];
    for (int h : hs) {
      s.push_back(enew[g.s[h]]);
      t.push_back(vnew[v]);
    }
    out.deco[vnew[v]] = v == v1 ? S.elem(n, *r) : a.deco[v];
  }
  out.g = make_graph(tau, s, t, nv);
  for (int x = 0; x < g.ne(); ++x)
    if (enew[x] >= 0) out.color.push_back(a.color[x]);
  for (int p : a.ports) out.ports.push_back(enew[p]);
  validate_sgraph(out);
  return out;
}

ElemP evaluate(const OperadPresentation& P, const SGraph& a, const std::optional<std::vector<int>>& plan_in) {
  if (a.g.nv == 0) fail(ErrorCode::InvalidParameter, "cannot evaluate a graph without vertices");
  if (!is_connected(a.g)) fail(ErrorCode::NotConnected, "cannot evaluate a disconnected graph");
  std::vector<int> orbits = inner_orbits(a.g);
  std::vector<int> plan;
  if (plan_in) {
    for (int e : *plan_in) {
      if (e < 0 || e >= a.g.ne()) fail(ErrorCode::IndexOutOfRange, "plan names an edge out of range");
      plan.push_back(std::min(e, a.g.tau[e]));
    }
    std::vector<int> sorted = plan;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != orbits) fail(ErrorCode::InvalidParameter, "plan is not an ordering of the inner orbits");
  } else {
    plan = orbits;
  }
  SGraph cur = a;
  std::vector<int> where(a.g.ne());  // original edge -> current edge
  std::iota(where.begin(), where.end(), 0);
  for (int o : plan) {
    int e = where[o], f = cur.g.tau[e];
    cur = collapse_edge(P, cur, e);
    for (int& w : where) {
      if (w == e || w == f) w = -1;
      else if (w >= 0) w -= (w > e) + (w > f);
    }
  }
  // one vertex left; leg k sits on the edge whose partner carries some port label
  const Graph& g = cur.g;
  int n = static_cast<int>(cur.ports.size());
  const Elem& x = *cur.deco[0];
  Perm sigma(n);
  for (int k = 0; k < n; ++k) {
    int partner = g.tau[g.s[g.halves[0][k]]];
    int label = static_cast<int>(std::find(cur.ports.begin(), cur.ports.end(), partner) - cur.ports.begin());
    sigma[label] = k;
  }
  return P.S->elem(n, P.S->act(n, sigma, x.index));
}

OrderReport evaluate_all_orders(const OperadPresentation& P, const SGraph& a, int max_orbits) {
  std::vector<int> orbits = inner_orbits(a.g);
  if (static_cast<int>(orbits.size()) > max_orbits)
    fail(ErrorCode::SizeBoundExceeded, std::to_string(orbits.size()) + " inner orbits exceed the bound " +
                                           std::to_string(max_orbits));
  OrderReport r;
  std::vector<int> plan = orbits;
  do {
    ElemP v = evaluate(P, a, plan);
    ++r.plans;
    if (!r.a) {
      r.a = v;
      r.plan_a = plan;
    } else if (r.agree && v->key != r.a->key) {
      r.agree = false;
      r.b = v;
      r.plan_b = plan;
    }
  } while (std::next_permutation(plan.begin(), plan.end()));
  return r;
}

namespace {

Sampler operad_sampler(const OperadPresentation& P, std::uint64_t seed) {
  Sampler smp(P.S, seed);
  if (P.sample_filter) {
    auto f = P.sample_filter;
    smp.allow = [f](const ElemP& x) { return f(x->arity, x->index); };
  }
  return smp;
}

struct Tally {
  LawReport rep;
  void ok(const std::string& law) { bump(law); }
  void bump(const std::string& law) {
    for (auto& [l, n] : rep.checked)
      if (l == law) {
        ++n;
        return;
      }
    rep.checked.push_back({law, 1});
  }
  void bad(const std::string& law, const std::string& w, const ElemP& a, const ElemP& b) {
    bump(law);
    if (rep.failures.size() < 50) rep.failures.push_back({law, w, describe(a), describe(b)});
  }
  void check(const std::string& law, const std::string& w, const ElemP& a, const ElemP& b) {
    if (a->key == b->key) ok(law);
    else bad(law, w, a, b);
  }
};

}  // namespace

LawReport check_algebra(const OperadPresentation& P, int fuel, std::uint64_t seed) {
  Sampler smp = operad_sampler(P, seed);
  Tally t;
  for (int i = 0; i < fuel; ++i) {
    SGraph G = smp.structure({});
    try {
      ElemP v = evaluate(P, G);
      t.check("value is independent of the representative", describe(make_class(G)), v,
              evaluate(P, *smp.reshuffle(make_class(G))->rep));
      SGraph N = smp.nest(G);
      SGraph base = N;
      for (ElemP& d : base.deco) d = evaluate(P, *d->rep);
      validate_sgraph(base);
      t.check("value of a nesting = value of the piece values", describe(make_class(N)), v, evaluate(P, base));
      ElemP c = make_class(corolla_structure(P.S, v, v->arity));
      t.check("corollas evaluate to their decoration", describe(c), v, evaluate(P, *c->rep));
      if (inner_orbits(G.g).size() <= 4) {
        OrderReport o = evaluate_all_orders(P, G, 4);
        if (o.agree) t.ok("value is independent of the collapse order");
        else t.bad("value is independent of the collapse order", describe(make_class(G)), o.a, o.b);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PartialMapUndefined) throw;
    }
  }
  return t.rep;
}

LawReport unit_behavior(const OperadPresentation& P, int fuel, std::uint64_t seed, int max_wheel) {
  Tally t;
  auto ps = P.pointed();
  if (!ps) fail(ErrorCode::InvalidParameter, "presentation has no unit");
  Pointing pt = pointing_of(*ps);
  const Palette& pal = P.S->pal;
  for (int c = 0; c < pal.size(); ++c) {
    ElemP o = P.S->elem(0, ps->o[c]);
    t.check("contracted units agree on dual colours", "colour " + std::to_string(c), o,
            P.S->elem(0, ps->o[pal.omega[c]]));
    for (int m = 1; m <= max_wheel; ++m)
      t.check("wheel of units evaluates to the contracted unit", "wheel(" + std::to_string(m) + ") colour " + std::to_string(c),
              evaluate(P, wheel_of_units(P.S, m, c, pt)), o);
    for (int k = 1; k <= max_wheel; ++k)
      t.check("line of units evaluates to the unit", "line(" + std::to_string(k) + ") colour " + std::to_string(c),
              evaluate(P, line_of_units(P.S, k, c, pt)), P.S->elem(2, ps->eps[c]));
  }
  Sampler smp = operad_sampler(P, seed);
  for (int i = 0; i < fuel; ++i) {
    SGraph G = smp.structure({});
    if (G.g.ne() == 0) continue;
    int e = std::uniform_int_distribution<int>(0, G.g.ne() - 1)(smp.rng);
    try {
      ElemP v = evaluate(P, G);
      t.check("inserting a unit vertex keeps the value", describe(make_class(G)), v,
              evaluate(P, insert_unit_vertex(G, e, pt)));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::PartialMapUndefined) throw;
    }
  }
  return t.rep;
}

}  // namespace mge
