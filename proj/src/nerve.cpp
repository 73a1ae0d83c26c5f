#include "mge/nerve.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "mge/canonical.hpp"
#include "mge/error.hpp"
#include "mge/morphism.hpp"
#include "mge/perm.hpp"

namespace mge {

namespace {

constexpr long long kMaxElements = 500000;
constexpr long long kMaxPairings = 20000000;

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string r;
  for (size_t i = 0; i < xs.size(); ++i) r += (i ? sep : "") + xs[i];
  return r;
}

// ch_v: C_n -> g, port i to the partner of the i-th half-edge at v
Morphism choose_vertex(const Graph& g, int v) {
  int n = g.valency(v);
  std::vector<int> fE(2 * n);
  for (int i = 0; i < n; ++i) {
    int e = g.s[g.halves[v][i]];
    fE[i] = g.tau[e];
    fE[n + i] = e;
  }
  return validate_morphism(corolla(n), g, fE, std::vector<int>{v});
}

std::string value_name(const SGraph& a) {
  std::vector<std::string> d, c;
  for (const auto& x : a.deco) d.push_back(x->kind == Elem::Kind::Base ? a.sp->ar[x->arity].names[x->index] : x->key);
  for (int e = 0; e < a.g.ne(); ++e)
    if (e <= a.g.tau[e]) c.push_back(a.sp->pal.names[a.color[e]]);
  if (a.g.nv == 0) return c.empty() ? "()" : c[0];
  return "[" + join(d, " ") + " | " + join(c, " ") + "]";
}

// Finite diagram of sets: x[a] = table[x[b]] for every arrow. Objects are solved in order; an
// object reached by an arrow from an earlier object takes the forced value.
struct LimitDiagram {
  struct Arrow {
    int a, b;
    const std::vector<int>* table;
    std::string name;
  };
  std::vector<int> size;
  std::vector<std::string> label;
  std::vector<Arrow> arrows;

  int add(int n, std::string name) {
    size.push_back(n);
    label.push_back(std::move(name));
    return static_cast<int>(size.size()) - 1;
  }
  bool consistent(const std::vector<int>& x) const {
    for (const auto& ar : arrows) {
      if (x[ar.b] < 0 || x[ar.a] < 0) continue;
      if ((*ar.table)[x[ar.b]] != x[ar.a]) return false;
    }
    return true;
  }
  std::vector<std::vector<int>> solve() const {
    int n = static_cast<int>(size.size());
    std::vector<std::vector<const Arrow*>> into(n);
    for (const auto& ar : arrows) into[ar.a].push_back(&ar);
    std::vector<std::vector<int>> out;
    std::vector<int> x(n, -1);
    std::function<void(int)> rec = [&](int k) {
      if (k == n) {
        out.push_back(x);
        if (static_cast<long long>(out.size()) > kMaxElements)
          fail(ErrorCode::SizeBoundExceeded, "more than " + std::to_string(kMaxElements) + " matching families");
        return;
      }
      int forced = -2;
      for (const Arrow* ar : into[k])
        if (ar->b < k) {
          forced = (*ar->table)[x[ar->b]];
          break;
        }
      auto attempt = [&](int val) {
        x[k] = val;
        bool ok = true;
        for (const auto& ar : arrows)
          if ((ar.a == k && ar.b <= k) || (ar.b == k && ar.a <= k))
            if ((*ar.table)[x[ar.b]] != x[ar.a]) {
              ok = false;
              break;
            }
        if (ok) rec(k + 1);
        x[k] = -1;
      };
      if (forced == -1) return;
      if (forced >= 0) {
        attempt(forced);
      } else {
        for (int val = 0; val < size[k]; ++val) attempt(val);
      }
    };
    rec(0);
    return out;
  }
};

struct ElementsDiagram {
  LimitDiagram d;
  std::vector<int> vobj, eobj;  // objects of el(G)
  std::vector<const PresheafMap*> vmap, emap;
};

const PresheafMap& need(const FinitePresheaf& P, const std::string& src, const std::string& tgt,
                        const StarMorphism& m, const std::string& what) {
  const PresheafMap* r = P.find(src, tgt, m);
  if (!r) fail(ErrorCode::IncompletePresheaf, "no restriction along " + what + " (" + src + " -> " + tgt + ")");
  return *r;
}

const std::string& need_graph(const FinitePresheaf& P, const Graph& g, const std::string& what) {
  static std::string none;
  for (const auto& [name, h] : P.graphs)
    if (h == g) return name;
  fail(ErrorCode::IncompletePresheaf, "presheaf lacks " + what);
  return none;
}

int value_count(const FinitePresheaf& P, const std::string& name) {
  auto it = P.values.find(name);
  if (it == P.values.end()) fail(ErrorCode::IncompletePresheaf, "no values for " + name);
  return static_cast<int>(it->second.size());
}

ElementsDiagram elements_diagram(const FinitePresheaf& P, const std::string& gname) {
  auto it = P.graphs.find(gname);
  if (it == P.graphs.end()) fail(ErrorCode::IncompletePresheaf, "unknown graph " + gname);
  const Graph& G = it->second;
  ElementsDiagram el;
  const std::string& st = need_graph(P, stick(), "the stick");
  int nst = value_count(P, st);
  for (int v = 0; v < G.nv; ++v) {
    int n = G.valency(v);
    const std::string& cn = need_graph(P, corolla(n), "corolla " + std::to_string(n));
    el.vobj.push_back(el.d.add(value_count(P, cn), "v" + std::to_string(v)));
    el.vmap.push_back(&need(P, cn, gname, star_from(choose_vertex(G, v)), "ch_v" + std::to_string(v)));
  }
  for (int e = 0; e < G.ne(); ++e) {
    el.eobj.push_back(el.d.add(nst, "e" + std::to_string(e)));
    el.emap.push_back(&need(P, st, gname, star_from(choose_edge(G, e)), "ch_e" + std::to_string(e)));
  }
  // legs: ch_v ∘ ch_i = ch_{τ s(h_i)}
  for (int v = 0; v < G.nv; ++v) {
    int n = G.valency(v);
    const std::string& cn = need_graph(P, corolla(n), "corolla");
    for (int i = 0; i < n; ++i) {
      const PresheafMap& l = need(P, st, cn, star_from(choose_edge(corolla(n), i)), "leg " + std::to_string(i));
      el.d.arrows.push_back({el.eobj[G.tau[G.s[G.halves[v][i]]]], el.vobj[v], &l.table, l.name});
    }
  }
  // ch_e ∘ swap = ch_{τe}
  const PresheafMap& sw = need(P, st, st, star_from(choose_edge(stick(), 1)), "the stick involution");
  for (int e = 0; e < G.ne(); ++e) el.d.arrows.push_back({el.eobj[G.tau[e]], el.eobj[e], &sw.table, sw.name});
  return el;
}

}  // namespace

PointedSpecies upsilon(const Graph& H) {
  Species s;
  for (int e = 0; e < H.ne(); ++e) {
    s.pal.omega.push_back(H.tau[e]);
    s.pal.names.push_back("e" + std::to_string(e));
  }
  int nmax = 2;
  for (int v = 0; v < H.nv; ++v) nmax = std::max(nmax, H.valency(v));
  s.ar.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) s.ar[n].act.assign(factorial(n), {});
  for (int v = 0; v < H.nv; ++v) {
    int n = H.valency(v);
    auto& a = s.ar[n];
    int base = static_cast<int>(a.names.size());
    auto perms = all_perms(n);
    for (const Perm& p : perms) {
      std::string nm = "v" + std::to_string(v);
      if (p != identity_perm(n)) {
        std::vector<std::string> xs;
        for (int i : p) xs.push_back(std::to_string(i));
        nm += "[" + join(xs, ",") + "]";
      }
      a.names.push_back(nm);
      std::vector<int> legs(n);
      for (int i = 0; i < n; ++i) legs[i] = H.tau[H.s[H.halves[v][p[i]]]];
      a.legs.push_back(legs);
    }
    for (size_t r = 0; r < perms.size(); ++r)
      for (const Perm& p : perms) a.act[r].push_back(base + perm_rank(compose(p, perms[r])));
  }
  return apply_D(finalize_species(std::move(s)));
}

SGraph tautological_structure(const PointedSpecies& yh, const Graph& H) {
  SGraph a;
  a.g = H;
  a.sp = yh.S;
  a.ports = ports(H);
  for (int e = 0; e < H.ne(); ++e) a.color.push_back(e);
  std::vector<int> seen(yh.S->nmax() + 1, 0);
  for (int v = 0; v < H.nv; ++v) {
    int n = H.valency(v);
    // vertex elements are listed vertex by vertex, n! each, identity order first
    a.deco.push_back(yh.S->elem(n, seen[n]));
    seen[n] += static_cast<int>(factorial(n));
  }
  validate_sgraph(a);
  return a;
}

SGraph pullback_structure(const PointedSpecies& ps, const SGraph& target, const Graph& src,
                          const std::vector<int>& src_ports, const StarMorphism& g) {
  const Graph& T = target.g;
  SGraph r;
  r.g = src;
  r.sp = ps.S;
  r.ports = src_ports;
  r.color.resize(src.ne());
  for (int e = 0; e < src.ne(); ++e) r.color[e] = target.color[g.fE[e]];
  for (int w = 0; w < src.nv; ++w) {
    const VTarget& tv = g.fV[w];
    int n = src.valency(w);
    if (tv.deleted()) {
      if (n == 2) {
        if (ps.eps.empty()) fail(ErrorCode::InvalidParameter, "deleted vertex needs a unit");
        int c = r.color[src.tau[src.s[src.halves[w][0]]]];
        r.deco.push_back(ps.S->elem(2, ps.eps[c]));
      } else if (n == 0) {
        if (ps.o.empty()) fail(ErrorCode::InvalidParameter, "deleted vertex needs a contracted unit");
        r.deco.push_back(ps.S->elem(0, ps.o[target.color[tv.orbit]]));
      } else {
        fail(ErrorCode::InvalidParameter, "deleted vertex of valency " + std::to_string(n));
      }
      continue;
    }
    int v = tv.vertex;
    const auto& hs = T.halves[v];
    Perm sigma(n);
    for (int i = 0; i < n; ++i) {
      int h = T.half_of[g.fE[src.s[src.halves[w][i]]]];
      sigma[i] = static_cast<int>(std::find(hs.begin(), hs.end(), h) - hs.begin());
    }
    r.deco.push_back(act_elem(*ps.S, target.deco[v], sigma));
  }
  validate_sgraph(r);
  return r;
}

SGraph structure_of(const PointedSpecies& yh, const Graph& H, const XGraph& src, const StarMorphism& f) {
  return pullback_structure(yh, tautological_structure(yh, H), src.g, src.ports, f);
}

std::string exact_key(const SGraph& a) {
  std::ostringstream o;
  for (int p : a.ports) o << p << ',';
  o << '|';
  for (int c : a.color) o << c << ',';
  o << '|';
  for (const auto& d : a.deco) o << d->key << ';';
  return o.str();
}

std::vector<XGraph> enumerate_xgraphs(int nports, int max_vertices, const std::vector<int>& valencies) {
  std::vector<int> vals = valencies;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<XGraph> out;
  std::set<std::string> seen;
  long long work = 0;
  std::vector<int> deg;
  std::function<void(int, size_t)> multisets = [&](int k, size_t from) {
    if (static_cast<int>(deg.size()) == k) {
      int D = 0;
      for (int d : deg) D += d;
      if (D < nports || (D - nports) % 2) return;
      if (k > 1 && std::find(deg.begin(), deg.end(), 0) != deg.end()) return;
      // Half order at a vertex does not affect isomorphism, so it is enough to choose which
      // vertex each port sits on and how many edges join each pair of vertices.
      std::vector<int> port_at(nports), rest(deg);
      std::vector<std::vector<int>> mult(k, std::vector<int>(k, 0));
      auto emit = [&] {
        if (++work > kMaxPairings) fail(ErrorCode::SizeBoundExceeded, "graph enumeration too large");
        std::vector<int> t, first(k, 0), next(k, 0);
        for (int v = 0; v < k; ++v) {
          first[v] = static_cast<int>(t.size());
          for (int j = 0; j < deg[v]; ++j) t.push_back(v);
        }
        next = first;
        std::vector<int> tau(D + nports, -1), s(D);
        for (int i = 0; i < D; ++i) s[i] = i;
        auto link = [&](int e, int f) {
          tau[e] = f;
          tau[f] = e;
        };
        for (int i = 0; i < nports; ++i) link(next[port_at[i]]++, D + i);
        for (int u = 0; u < k; ++u)
          for (int v = u; v < k; ++v)
            for (int m = 0; m < mult[u][v]; ++m) {
              int h = next[u]++;
              link(h, next[v]++);
            }
        Graph g = make_graph(tau, s, t, k);
        if (!is_connected(g)) return;
        XGraph x{g, {}};
        for (int i = 0; i < nports; ++i) x.ports.push_back(D + i);
        if (seen.insert(canonical_form(x)).second) out.push_back(x);
      };
      // pairs (u, v), u <= v, in order; vertex u is complete once its last pair is chosen
      std::function<void(int, int)> edges = [&](int u, int v) {
        if (u == k) {
          emit();
          return;
        }
        if (v == k) {
          if (rest[u] == 0) edges(u + 1, u + 1);
          return;
        }
        int most = u == v ? rest[u] / 2 : std::min(rest[u], rest[v]);
        for (int m = 0; m <= most; ++m) {
          int cu = u == v ? 2 * m : m;
          rest[u] -= cu;
          if (u != v) rest[v] -= m;
          mult[u][v] = m;
          edges(u, v + 1);
          rest[u] += cu;
          if (u != v) rest[v] += m;
        }
        mult[u][v] = 0;
      };
      std::function<void(int)> place = [&](int i) {
        if (i == nports) {
          edges(0, 0);
          return;
        }
        for (int v = 0; v < k; ++v) {
          if (rest[v] == 0) continue;
          --rest[v];
          port_at[i] = v;
          place(i + 1);
          ++rest[v];
        }
      };
      place(0);
      return;
    }
    for (size_t j = from; j < vals.size(); ++j) {
      deg.push_back(vals[j]);
      multisets(k, j);
      deg.pop_back();
    }
  };
  for (int k = 1; k <= max_vertices; ++k) multisets(k, 0);
  return out;
}

std::vector<int> port_colors(const SimilarityClass& c, const Palette& p) {
  switch (c.kind) {
    case SimilarityClass::Kind::UnitLine:
      return {c.color, p.omega[c.color]};
    case SimilarityClass::Kind::UnitWheel:
      return {};
    default: {
      std::vector<int> r;
      for (int e : c.rep.ports) r.push_back(c.rep.color[e]);
      return r;
    }
  }
}

std::string KlgrElement::key() const {
  std::string k;
  for (int c : edge_color) k += std::to_string(c) + ",";
  for (const auto& c : vertex_class) k += "|" + c.key;
  return k;
}

namespace {

// Classes of Υ★H over C_n with representatives of at most `bound` vertices, by port colours.
std::map<std::vector<int>, std::vector<SimilarityClass>> corolla_classes(const PointedSpecies& yh, int n, int bound) {
  std::vector<int> vals;
  for (int a = 0; a <= yh.S->nmax(); ++a)
    if (yh.S->size(a) > 0) vals.push_back(a);
  Pointing pt = pointing_of(yh);
  std::map<std::vector<int>, std::vector<SimilarityClass>> out;
  std::set<std::string> seen;
  for (const XGraph& x : enumerate_xgraphs(n, bound, vals)) {
    for (SGraph a : evaluate_species(yh.S, x.g)) {
      a.ports = x.ports;
      SimilarityClass c = reduced_representative(a, pt);
      if (!seen.insert(c.key).second) continue;
      out[port_colors(c, yh.S->pal)].push_back(c);
    }
  }
  return out;
}

}  // namespace

FreeOperadHom free_operad_hom(const Graph& G, const Graph& H, int vertex_bound) {
  if (vertex_bound < 0) fail(ErrorCode::InvalidParameter, "vertex bound must be >= 0");
  if (vertex_bound > 5) fail(ErrorCode::SizeBoundExceeded, "vertex bound above 5");
  FreeOperadHom r{G, H, vertex_bound, {}};
  PointedSpecies yh = upsilon(H);
  std::map<int, std::map<std::vector<int>, std::vector<SimilarityClass>>> by_arity;
  for (int v = 0; v < G.nv; ++v) {
    int n = G.valency(v);
    if (!by_arity.count(n)) by_arity[n] = corolla_classes(yh, n, vertex_bound);
  }
  std::vector<int> orb = orbits(G);
  std::vector<int> col(G.ne(), -1);
  std::function<void(size_t)> colour = [&](size_t k) {
    if (k < orb.size()) {
      for (int c = 0; c < H.ne(); ++c) {
        col[orb[k]] = c;
        col[G.tau[orb[k]]] = H.tau[c];
        colour(k + 1);
      }
      return;
    }
    std::vector<const std::vector<SimilarityClass>*> lists;
    for (int v = 0; v < G.nv; ++v) {
      std::vector<int> want;
      for (int h : G.halves[v]) want.push_back(col[G.tau[G.s[h]]]);
      const auto& m = by_arity[G.valency(v)];
      auto it = m.find(want);
      if (it == m.end()) return;
      lists.push_back(&it->second);
    }
    KlgrElement el{col, std::vector<SimilarityClass>(G.nv)};
    std::function<void(int)> pick = [&](int v) {
      if (v == G.nv) {
        r.elements.push_back(el);
        if (static_cast<long long>(r.elements.size()) > kMaxElements)
          fail(ErrorCode::SizeBoundExceeded, "more than " + std::to_string(kMaxElements) + " elements");
        return;
      }
      for (const auto& c : *lists[v]) {
        el.vertex_class[v] = c;
        pick(v + 1);
      }
    };
    pick(0);
  };
  colour(0);
  return r;
}

KlgrMorphism klgr_from_star(const Graph& G, const Graph& H, const StarMorphism& f) {
  validate_star_morphism(G, H, f.fE, f.fV);
  KlgrMorphism k{G, H, identity_graph_of_graphs(G), {}};
  Colimit c = colimit_graph_of_graphs(k.gamma);
  k.f.fE.assign(c.g.ne(), -1);
  k.f.fV.assign(c.g.nv, {});
  for (int e = 0; e < G.ne(); ++e) k.f.fE[c.base_edge[e]] = f.fE[e];
  for (int v = 0; v < G.nv; ++v) k.f.fV[c.iota[v].fV[0]] = f.fV[v];
  for (int e : k.f.fE)
    if (e < 0) fail(ErrorCode::InvalidParameter, "identity colimit has an edge outside the base");
  return k;
}

KlgrElement klgr_reduce(const KlgrMorphism& a) {
  if (!(a.gamma.base == a.G)) fail(ErrorCode::Mismatch, "graph of graphs is not shaped by the source");
  if (is_degenerate(a.gamma)) fail(ErrorCode::DegenerateGraphOfGraphs, "representative is degenerate");
  Colimit c = colimit_graph_of_graphs(a.gamma);
  validate_star_morphism(c.g, a.H, a.f.fE, a.f.fV);
  PointedSpecies yh = upsilon(a.H);
  Pointing pt = pointing_of(yh);
  SGraph alpha = structure_of(yh, a.H, XGraph{c.g, ports(c.g)}, a.f);
  KlgrElement r;
  for (int e = 0; e < a.G.ne(); ++e) r.edge_color.push_back(alpha.color[c.base_edge[e]]);
  for (int v = 0; v < a.G.nv; ++v) {
    const XGraph& p = a.gamma.pieces[v];
    SGraph piece = pullback_structure(yh, alpha, p.g, p.ports, star_from(c.iota[v]));
    r.vertex_class.push_back(reduced_representative(piece, pt));
  }
  return r;
}

bool klgr_equal(const KlgrMorphism& a, const KlgrMorphism& b) {
  if (!(a.G == b.G) || !(a.H == b.H)) fail(ErrorCode::Mismatch, "Klgr morphisms with different source or target");
  return klgr_reduce(a) == klgr_reduce(b);
}

std::string FactorizationReport::summary() const {
  std::ostringstream o;
  o << (pointed ? "pointed" : "unpointed") << " factorisation category, bound " << vertex_bound << ": "
    << objects.size() << " objects, " << morphisms << " morphisms, " << components << " component"
    << (components == 1 ? "" : "s");
  if (!connected()) {
    std::vector<int> first(components, -1);
    for (size_t i = 0; i < objects.size(); ++i)
      if (first[component[i]] < 0) first[component[i]] = static_cast<int>(i);
    o << "; component representatives:";
    for (int i : first) o << " " << value_name(objects[i]) << " on " << objects[i].g.nv << " vertices";
  }
  return o.str();
}

FactorizationReport factorization_category(const PointedSpecies& ps, const SGraph& beta, int vertex_bound,
                                           bool pointed) {
  if (vertex_bound > 5) fail(ErrorCode::SizeBoundExceeded, "vertex bound above 5");
  Pointing pt = pointing_of(ps);
  SimilarityClass cls = reduced_representative(beta, pt);
  FactorizationReport r;
  r.pointed = pointed;
  r.vertex_bound = vertex_bound;
  int n = static_cast<int>(beta.ports.size());
  std::vector<int> vals;
  for (int a = 0; a <= ps.S->nmax(); ++a)
    if (ps.S->size(a) > 0) vals.push_back(a);
  std::map<std::string, int> index;
  for (const XGraph& x : enumerate_xgraphs(n, vertex_bound, vals))
    for (SGraph a : evaluate_species(ps.S, x.g)) {
      a.ports = x.ports;
      if (reduced_representative(a, pt).key != cls.key) continue;
      if (index.emplace(canonical_form(a), static_cast<int>(r.objects.size())).second) r.objects.push_back(a);
    }
  SGraph canon;
  switch (cls.kind) {
    case SimilarityClass::Kind::Admissible:
      canon = cls.rep;
      break;
    case SimilarityClass::Kind::UnitLine:
      canon = corolla_structure(ps.S, pt.unit(cls.color), 2);
      break;
    case SimilarityClass::Kind::UnitWheel:
      canon = corolla_structure(ps.S, pt.cunit(cls.color), 0);
      break;
  }
  auto it = index.find(canonical_form(canon));
  if (it == index.end()) fail(ErrorCode::SizeBoundExceeded, "bound excludes the reduced representative");
  r.canonical = it->second;
  int N = static_cast<int>(r.objects.size());
  std::vector<std::vector<std::pair<int, ZigZagStep>>> adj(N);
  for (int a = 0; a < N; ++a) {
    const SGraph& A = r.objects[a];
    std::string ka = exact_key(A);
    for (int b = 0; b < N; ++b) {
      const SGraph& B = r.objects[b];
      std::vector<StarMorphism> cand;
      if (pointed) {
        cand = enumerate_star_morphisms(A.g, B.g);
      } else {
        for (const Morphism& m : enumerate_etale(A.g, B.g)) cand.push_back(star_from(m));
      }
      for (const StarMorphism& g : cand) {
        bool labels = true;
        for (int i = 0; i < n; ++i) labels = labels && g.fE[A.ports[i]] == B.ports[i];
        if (!labels) continue;
        if (exact_key(pullback_structure(ps, B, A.g, A.ports, g)) != ka) continue;
        ++r.morphisms;
        ZigZagStep st{a, b, g};
        adj[a].push_back({b, st});
        adj[b].push_back({a, st});
      }
    }
  }
  r.component.assign(N, -1);
  for (int s = 0; s < N; ++s) {
    if (r.component[s] >= 0) continue;
    std::deque<int> q{s};
    r.component[s] = r.components;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto& [y, st] : adj[x])
        if (r.component[y] < 0) {
          r.component[y] = r.components;
          q.push_back(y);
        }
    }
    ++r.components;
  }
  // shortest zig-zags to the canonical object
  std::vector<int> prev(N, -1);
  std::vector<ZigZagStep> via(N);
  std::vector<char> seen(N, 0);
  std::deque<int> q{r.canonical};
  seen[r.canonical] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (auto& [y, st] : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        prev[y] = x;
        via[y] = st;
        q.push_back(y);
      }
  }
  r.witness.assign(N, {});
  for (int i = 0; i < N; ++i)
    for (int x = i; seen[i] && x != r.canonical; x = prev[x]) r.witness[i].push_back(via[x]);
  return r;
}

FactorizationWitness factorization_category_witness(const PointedSpecies& ps, const GraphOfGraphs& gamma,
                                                    const SGraph& alpha, int vertex_bound, bool pointed) {
  if (is_degenerate(gamma)) fail(ErrorCode::DegenerateGraphOfGraphs, "representative is degenerate");
  Colimit c = colimit_graph_of_graphs(gamma);
  if (!(c.g == alpha.g)) fail(ErrorCode::Mismatch, "structure is not on the colimit");
  FactorizationWitness w;
  for (int v = 0; v < gamma.base.nv; ++v) {
    const XGraph& p = gamma.pieces[v];
    SGraph piece = pullback_structure(ps, alpha, p.g, p.ports, star_from(c.iota[v]));
    w.vertices.push_back(factorization_category(ps, piece, vertex_bound, pointed));
    w.connected = w.connected && w.vertices.back().connected();
  }
  return w;
}

const PresheafMap* FinitePresheaf::find(const std::string& src, const std::string& tgt, const StarMorphism& m) const {
  for (const auto& x : maps)
    if (!x.klgr && x.src == src && x.tgt == tgt && x.m == m) return &x;
  return nullptr;
}

std::string FinitePresheaf::name_of(const Graph& g) const {
  for (const auto& [name, h] : graphs)
    if (h == g) return name;
  return "";
}

FinitePresheaf species_presheaf(const SpeciesP& S, const std::vector<std::pair<std::string, Graph>>& graphs,
                                const PointedSpecies* pointing) {
  if (pointing && pointing->S != S) fail(ErrorCode::Mismatch, "pointing belongs to another species");
  FinitePresheaf P;
  auto add_graph = [&](const std::string& name, const Graph& g) {
    if (!P.name_of(g).empty()) return;
    if (P.graphs.count(name)) fail(ErrorCode::InvalidParameter, "duplicate graph name " + name);
    P.graphs[name] = g;
  };
  for (const auto& [name, g] : graphs) add_graph(name, g);
  add_graph("stick", stick());
  std::set<int> arities;
  for (const auto& [name, g] : graphs)
    for (int v = 0; v < g.nv; ++v) arities.insert(g.valency(v));
  if (pointing) arities.insert({0, 2});
  for (int n : arities) add_graph("corolla" + std::to_string(n), corolla(n));

  std::map<std::string, std::map<std::string, int>> index;
  std::map<std::string, std::vector<SGraph>> structs;
  for (const auto& [name, g] : P.graphs) {
    structs[name] = evaluate_species(S, g);
    auto& names = P.values[name];
    for (const SGraph& a : structs[name]) {
      index[name][exact_key(a)] = static_cast<int>(names.size());
      names.push_back(value_name(a));
    }
  }
  PointedSpecies plain{S, {}, {}};
  const PointedSpecies& ps = pointing ? *pointing : plain;
  auto add_map = [&](const std::string& mname, const std::string& src, const std::string& tgt, const StarMorphism& m) {
    PresheafMap pm{mname, src, tgt, m, false, {}};
    const Graph& sg = P.graphs.at(src);
    for (const SGraph& y : structs.at(tgt)) {
      SGraph x = pullback_structure(ps, y, sg, ports(sg), m);
      auto it = index.at(src).find(exact_key(x));
      if (it == index.at(src).end()) fail(ErrorCode::IncompletePresheaf, "restriction leaves the value set of " + src);
      pm.table.push_back(it->second);
    }
    P.maps.push_back(std::move(pm));
  };
  for (const auto& [name, g] : P.graphs) {
    for (int v = 0; v < g.nv; ++v)
      add_map("ch_v" + std::to_string(v), P.name_of(corolla(g.valency(v))), name, star_from(choose_vertex(g, v)));
    for (int e = 0; e < g.ne(); ++e) add_map("ch_e" + std::to_string(e), "stick", name, star_from(choose_edge(g, e)));
  }
  if (pointing) {
    Deletion u = vertex_deletion(corolla(2), {0});
    Deletion z = vertex_deletion(isolated_vertex(), {0});
    if (!(u.g == stick()) || !(z.g == stick())) fail(ErrorCode::InvalidParameter, "unexpected deletion layout");
    add_map("u", "corolla2", "stick", u.delta);
    add_map("z", "corolla0", "stick", z.delta);
  }
  return P;
}

FinitePresheaf nerve_presheaf(const OperadPresentation& op, const std::vector<std::pair<std::string, Graph>>& graphs) {
  auto ps = op.pointed();
  std::vector<std::pair<std::string, Graph>> all = graphs;
  for (const auto& [gname, g] : graphs)
    if (g.nv > 0) {
      int n = static_cast<int>(ports(g).size());
      all.push_back({"corolla" + std::to_string(n), corolla(n)});
    }
  FinitePresheaf P = species_presheaf(op.S, all, ps ? &*ps : nullptr);
  for (const auto& [gname, g0] : graphs) {
    std::string name = P.name_of(g0);
    const Graph& g = P.graphs.at(name);
    if (g.nv == 0 || !is_connected(g)) continue;
    int n = static_cast<int>(ports(g).size());
    std::string cn = P.name_of(corolla(n));
    std::map<std::string, int> cidx;
    auto cs = evaluate_species(op.S, corolla(n));
    for (size_t i = 0; i < cs.size(); ++i) cidx[exact_key(cs[i])] = static_cast<int>(i);
    PresheafMap pm{"collapse", cn, name, {}, true, {}};
    for (const SGraph& y : evaluate_species(op.S, g)) {
      int val = -1;
      try {
        val = cidx.at(exact_key(corolla_structure(op.S, evaluate(op, y), n)));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::PartialMapUndefined) throw;
      }
      pm.table.push_back(val);
    }
    P.maps.push_back(std::move(pm));
  }
  return P;
}

SegalReport segal_check(const FinitePresheaf& P, const std::string& gname) {
  ElementsDiagram el = elements_diagram(P, gname);
  const auto& vals = P.values.at(gname);
  SegalReport r;
  r.values = static_cast<long long>(vals.size());
  auto fams = el.d.solve();
  r.families = static_cast<long long>(fams.size());
  const Graph& G = P.graphs.at(gname);
  const std::string st = P.name_of(stick());
  auto family_name = [&](const std::vector<int>& f) {
    std::vector<std::string> xs;
    for (int v = 0; v < G.nv; ++v)
      xs.push_back("v" + std::to_string(v) + "=" + P.values.at(el.vmap[v]->src)[f[el.vobj[v]]]);
    for (int e = 0; e < G.ne(); ++e)
      if (e <= G.tau[e]) xs.push_back("e" + std::to_string(e) + "=" + P.values.at(st)[f[el.eobj[e]]]);
    return "{" + join(xs, ", ") + "}";
  };
  std::map<std::vector<int>, int> hit;
  for (size_t y = 0; y < vals.size(); ++y) {
    std::vector<int> f(el.d.size.size(), -1);
    bool defined = true;
    for (int v = 0; v < G.nv; ++v) defined = defined && (f[el.vobj[v]] = el.vmap[v]->table[y]) >= 0;
    for (int e = 0; e < G.ne(); ++e) defined = defined && (f[el.eobj[e]] = el.emap[e]->table[y]) >= 0;
    if (!defined) {
      r.ok = false;
      r.diagnostics.push_back("element " + vals[y] + " has an undefined restriction");
      continue;
    }
    if (!el.d.consistent(f)) {
      r.ok = false;
      r.diagnostics.push_back("element " + vals[y] + " restricts to a non-matching family " + family_name(f));
      continue;
    }
    auto [it, fresh] = hit.emplace(f, static_cast<int>(y));
    if (!fresh) {
      r.ok = false;
      r.diagnostics.push_back("duplicated family " + family_name(f) + " from " + vals[it->second] + " and " + vals[y]);
    }
  }
  for (const auto& f : fams)
    if (!hit.count(f)) {
      r.ok = false;
      r.diagnostics.push_back("missing family " + family_name(f));
    }
  return r;
}

FinalityReport finality_check(const FinitePresheaf& P, const std::string& gname) {
  ElementsDiagram el = elements_diagram(P, gname);
  FinalityReport r;
  r.unpointed = static_cast<long long>(el.d.solve().size());
  const Graph& G = P.graphs.at(gname);
  const std::string& st = need_graph(P, stick(), "the stick");
  const std::string& c2 = need_graph(P, corolla(2), "corolla 2");
  const std::string& c0 = need_graph(P, corolla(0), "corolla 0");
  Deletion u = vertex_deletion(corolla(2), {0});
  Deletion z = vertex_deletion(isolated_vertex(), {0});
  const PresheafMap& pu = need(P, c2, st, u.delta, "u");
  const PresheafMap& pz = need(P, c0, st, z.delta, "z");
  LimitDiagram& d = el.d;
  for (int e : orbits(G)) {
    // (C_2, ch_e ∘ u) and (C_0, ch_e ∘ z)
    int U = d.add(value_count(P, c2), "u" + std::to_string(e));
    d.arrows.push_back({U, el.eobj[e], &pu.table, "u"});
    StarMorphism b = compose_star(G, star_from(choose_edge(G, e)), u.delta);
    for (int i = 0; i < 2; ++i) {
      StarMorphism li = star_from(choose_edge(corolla(2), i));
      const PresheafMap& pl = need(P, st, c2, li, "leg of corolla 2");
      StarMorphism bl = compose_star(G, b, li);
      d.arrows.push_back({el.eobj[bl.fE[0]], U, &pl.table, pl.name});
    }
    int Z = d.add(value_count(P, c0), "z" + std::to_string(e));
    d.arrows.push_back({Z, el.eobj[e], &pz.table, "z"});
    d.arrows.push_back({Z, el.eobj[G.tau[e]], &pz.table, "z"});
  }
  r.pointed = static_cast<long long>(d.solve().size());
  return r;
}

std::vector<std::string> check_functoriality(const FinitePresheaf& P) {
  std::vector<std::string> out;
  for (const auto& f : P.maps) {
    if (f.klgr) continue;
    for (const auto& g : P.maps) {
      if (g.klgr || g.src != f.tgt) continue;
      StarMorphism gf = compose_star(P.graphs.at(g.tgt), g.m, f.m);
      const PresheafMap* h = P.find(f.src, g.tgt, gf);
      if (!h) continue;
      for (size_t y = 0; y < g.table.size(); ++y) {
        int a = g.table[y] < 0 ? -1 : f.table[g.table[y]];
        if (a != h->table[y]) {
          out.push_back(f.name + " after " + g.name + " differs from " + h->name + " on " + P.values.at(g.tgt)[y]);
          break;
        }
      }
    }
  }
  const std::string st = P.name_of(stick());
  for (const auto& c : P.maps) {
    if (!c.klgr) continue;
    const Graph& G = P.graphs.at(c.tgt);
    std::vector<int> ps = ports(G);
    for (size_t i = 0; i < ps.size(); ++i) {
      const PresheafMap* leg = P.find(st, c.src, star_from(choose_edge(P.graphs.at(c.src), static_cast<int>(i))));
      const PresheafMap* port = P.find(st, c.tgt, star_from(choose_edge(G, ps[i])));
      if (!leg || !port) {
        out.push_back(c.name + " on " + c.tgt + ": missing restriction to port " + std::to_string(i));
        continue;
      }
      for (size_t y = 0; y < c.table.size(); ++y) {
        if (c.table[y] < 0) continue;
        if (leg->table[c.table[y]] != port->table[y]) {
          out.push_back(c.name + " on " + c.tgt + " changes the colour of port " + std::to_string(i) + " at " +
                        P.values.at(c.tgt)[y]);
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace mge
