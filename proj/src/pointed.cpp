#include "mge/pointed.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "mge/canonical.hpp"
#include "mge/error.hpp"

namespace mge {

std::vector<int> StarMorphism::deleted() const {
  std::vector<int> w;
  for (size_t v = 0; v < fV.size(); ++v)
    if (fV[v].deleted()) w.push_back(static_cast<int>(v));
  return w;
}

StarMorphism validate_star_morphism(const Graph& src, const Graph& tgt, const std::vector<int>& fE,
                                    const std::optional<std::vector<VTarget>>& fV) {
  if (static_cast<int>(fE.size()) != src.ne()) fail(ErrorCode::IndexOutOfRange, "edge map has wrong size");
  for (int x : fE)
    if (x < 0 || x >= tgt.ne()) fail(ErrorCode::IndexOutOfRange, "edge image out of range");
  if (fV && static_cast<int>(fV->size()) != src.nv) fail(ErrorCode::IndexOutOfRange, "vertex map has wrong size");
  for (int e = 0; e < src.ne(); ++e)
    if (fE[src.tau[e]] != tgt.tau[fE[e]])
      fail(ErrorCode::NotCommuting, "f_E(tau " + std::to_string(e) + ") != tau f_E(" + std::to_string(e) + ")");
  StarMorphism r;
  r.fE = fE;
  r.fV.resize(src.nv);
  for (int v = 0; v < src.nv; ++v) {
    std::vector<int> es = src.edges_at(v);
    VTarget t;
    if (fV) {
      t = (*fV)[v];
      if ((t.vertex >= 0) == (t.orbit >= 0)) fail(ErrorCode::MissingVertexMap, "vertex " + std::to_string(v) + " needs exactly one image");
      if (t.vertex >= tgt.nv || t.orbit >= tgt.ne()) fail(ErrorCode::IndexOutOfRange, "vertex image out of range");
      if (t.orbit >= 0) t.orbit = orbit_rep(tgt, t.orbit);
    } else if (es.empty()) {
      fail(ErrorCode::MissingVertexMap, "isolated vertex " + std::to_string(v) + " needs an explicit image");
    } else if (es.size() == 2 && fE[es[0]] == tgt.tau[fE[es[1]]]) {
      t.orbit = orbit_rep(tgt, fE[es[0]]);
    } else {
      if (!tgt.attached(fE[es[0]])) fail(ErrorCode::NotCommuting, "edge at vertex " + std::to_string(v) + " maps to a port");
      t.vertex = tgt.vertex_of(fE[es[0]]);
    }
    if (t.vertex >= 0) {
      std::vector<int> img;
      for (int e : es) {
        int x = fE[e];
        if (!tgt.attached(x) || tgt.vertex_of(x) != t.vertex)
          fail(ErrorCode::NotCommuting, "edge " + std::to_string(e) + " is not sent to an edge at the image of vertex " + std::to_string(v));
        img.push_back(x);
      }
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end() || static_cast<int>(img.size()) != tgt.valency(t.vertex))
        fail(ErrorCode::PullbackFails, "vertex " + std::to_string(v) + " is not mapped locally bijectively");
    } else if (!es.empty()) {
      if (es.size() != 2) fail(ErrorCode::PullbackFails, "only bivalent or isolated vertices can be deleted");
      for (int e : es)
        if (orbit_rep(tgt, fE[e]) != t.orbit)
          fail(ErrorCode::NotCommuting, "edge " + std::to_string(e) + " leaves the orbit of deleted vertex " + std::to_string(v));
      if (fE[es[0]] == fE[es[1]])
        fail(ErrorCode::PullbackFails, "deleted vertex " + std::to_string(v) + " does not cover both ends of its edge");
    }
    r.fV[v] = t;
  }
  return r;
}

StarMorphism star_from(const Morphism& f) {
  StarMorphism r;
  r.fE = f.fE;
  for (int v : f.fV) r.fV.push_back(VTarget{v, -1});
  return r;
}

StarMorphism compose_star(const Graph& c, const StarMorphism& g, const StarMorphism& f) {
  StarMorphism r;
  for (int x : f.fE) r.fE.push_back(g.fE[x]);
  for (const VTarget& t : f.fV) {
    if (t.vertex >= 0) r.fV.push_back(g.fV[t.vertex]);
    else r.fV.push_back(VTarget{-1, orbit_rep(c, g.fE[t.orbit])});
  }
  return r;
}

std::string describe(const StarMorphism& f) {
  std::ostringstream os;
  os << "fE=[";
  for (size_t i = 0; i < f.fE.size(); ++i) os << (i ? "," : "") << f.fE[i];
  os << "] fV=[";
  for (size_t i = 0; i < f.fV.size(); ++i) {
    os << (i ? "," : "");
    if (f.fV[i].vertex >= 0) os << f.fV[i].vertex;
    else os << "~" << f.fV[i].orbit;
  }
  os << "]";
  return os.str();
}

Deletion vertex_deletion(const Graph& g, const std::vector<int>& W) {
  std::vector<char> del(g.nv, 0);
  for (int w : W) {
    if (w < 0 || w >= g.nv) fail(ErrorCode::IndexOutOfRange, "vertex out of range");
    if (g.valency(w) != 0 && g.valency(w) != 2)
      fail(ErrorCode::NotBivalent, "vertex " + std::to_string(w) + " is neither bivalent nor isolated");
    del[w] = 1;
  }
  int ne = g.ne();
  auto removed = [&](int e) { return g.attached(e) && del[g.vertex_of(e)]; };
  auto other = [&](int e) {  // the second edge at the (bivalent) vertex of e
    auto es = g.edges_at(g.vertex_of(e));
    return es[0] == e ? es[1] : es[0];
  };
  Deletion d;
  std::vector<int> nidx(ne, -1);
  for (int e = 0; e < ne; ++e)
    if (!removed(e)) {
      nidx[e] = static_cast<int>(d.old_edge.size());
      d.old_edge.push_back(e);
    }
  std::vector<int> tau(d.old_edge.size());
  for (int e : d.old_edge) {
    int y = g.tau[e];
    while (removed(y)) y = g.tau[other(y)];
    tau[nidx[e]] = nidx[y];
  }
  // edge map: constant along deleted chains, seeded by the kept edges
  std::vector<int> fE(ne, -1);
  std::deque<int> q;
  auto assign = [&](int e, int x) {
    if (fE[e] < 0) {
      fE[e] = x;
      q.push_back(e);
    }
  };
  auto flood = [&]() {
    while (!q.empty()) {
      int y = q.front();
      q.pop_front();
      assign(g.tau[y], tau[fE[y]]);
      if (removed(y)) assign(other(y), tau[fE[y]]);
    }
  };
  for (int e : d.old_edge) assign(e, nidx[e]);
  flood();
  auto fresh_stick = [&]() {
    int a = static_cast<int>(tau.size());
    tau.push_back(a + 1);
    tau.push_back(a);
    d.old_edge.push_back(-1);
    d.old_edge.push_back(-1);
    return a;
  };
  for (int e = 0; e < ne; ++e)
    if (fE[e] < 0) {  // a fully deleted wheel
      assign(e, fresh_stick());
      flood();
    }
  std::vector<int> vidx(g.nv, -1);
  for (int v = 0; v < g.nv; ++v)
    if (!del[v]) {
      vidx[v] = static_cast<int>(d.old_vertex.size());
      d.old_vertex.push_back(v);
    }
  std::vector<int> s, t;
  for (int h = 0; h < g.nh(); ++h)
    if (!del[g.t[h]]) {
      s.push_back(nidx[g.s[h]]);
      t.push_back(vidx[g.t[h]]);
    }
  std::vector<VTarget> fV(g.nv);
  std::vector<int> z_edge(g.nv, -1);
  for (int v = 0; v < g.nv; ++v)
    if (del[v] && g.valency(v) == 0) z_edge[v] = fresh_stick();
  d.g = make_graph(tau, s, t, static_cast<int>(d.old_vertex.size()));
  for (int v = 0; v < g.nv; ++v) {
    if (!del[v]) fV[v].vertex = vidx[v];
    else if (z_edge[v] >= 0) fV[v].orbit = z_edge[v];
    else fV[v].orbit = orbit_rep(d.g, fE[g.edges_at(v)[0]]);
  }
  d.delta = validate_star_morphism(g, d.g, fE, fV);
  return d;
}

Factorization factor_star(const Graph& src, const Graph& tgt, const StarMorphism& f) {
  Factorization r;
  r.W = f.deleted();
  r.del = vertex_deletion(src, r.W);
  const Graph& m = r.del.g;
  std::vector<int> fE(m.ne(), -1), fV;
  for (int e = 0; e < src.ne(); ++e) fE[r.del.delta.fE[e]] = f.fE[e];
  for (int v = 0; v < src.nv; ++v)
    if (src.valency(v) == 0 && f.fV[v].deleted()) {  // z: the stick goes to the normalized orbit edge
      int a = r.del.delta.fV[v].orbit;
      fE[a] = f.fV[v].orbit;
      fE[m.tau[a]] = tgt.tau[f.fV[v].orbit];
    }
  for (int u = 0; u < m.nv; ++u) fV.push_back(f.fV[r.del.old_vertex[u]].vertex);
  r.residual = validate_morphism(m, tgt, fE, fV);
  if (!classify(m, tgt, r.residual).etale) fail(ErrorCode::PullbackFails, "residual morphism is not étale");
  return r;
}

std::vector<StarMorphism> enumerate_star_morphisms(const Graph& src, const Graph& tgt, int bound) {
  if (bound < 0) bound = default_bound();
  if (src.ne() > bound || tgt.ne() > bound)
    fail(ErrorCode::SizeBoundExceeded, "graph exceeds " + std::to_string(bound) + " edges");
  std::vector<int> deletable;
  for (int v = 0; v < src.nv; ++v)
    if (src.valency(v) == 0 || src.valency(v) == 2) deletable.push_back(v);
  if (deletable.size() > 20) fail(ErrorCode::SizeBoundExceeded, "too many deletable vertices");
  std::vector<StarMorphism> out;
  for (unsigned mask = 0; mask < (1u << deletable.size()); ++mask) {
    std::vector<int> W;
    for (size_t i = 0; i < deletable.size(); ++i)
      if (mask >> i & 1) W.push_back(deletable[i]);
    Deletion d = vertex_deletion(src, W);
    for (const Morphism& e : enumerate_etale(d.g, tgt, bound)) out.push_back(compose_star(tgt, star_from(e), d.delta));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Pointing pointing_of(const PointedSpecies& ps) {
  Pointing p;
  auto eps = ps.eps;
  auto o = ps.o;
  Palette pal = ps.S->pal;
  SpeciesP S = ps.S;
  p.unit_color = [eps](const Elem& x) {
    if (x.kind != Elem::Kind::Base || x.arity != 2) return -1;
    for (size_t c = 0; c < eps.size(); ++c)
      if (eps[c] == x.index) return static_cast<int>(c);
    return -1;
  };
  p.cunit_orbit = [o, pal](const Elem& x) {
    if (x.kind != Elem::Kind::Base || x.arity != 0) return -1;
    for (size_t c = 0; c < o.size(); ++c)
      if (o[c] == x.index) return pal.orbit(static_cast<int>(c));
    return -1;
  };
  p.unit = [S, eps](int c) { return S->elem(2, eps[c]); };
  p.cunit = [S, o](int c) { return S->elem(0, o[c]); };
  return p;
}

Pointing formal_pointing(const Palette& pal, int level) {
  Pointing p;
  p.unit_color = [level](const Elem& x) { return x.kind == Elem::Kind::Unit && x.level == level ? x.color : -1; };
  p.cunit_orbit = [level](const Elem& x) { return x.kind == Elem::Kind::CUnit && x.level == level ? x.color : -1; };
  p.unit = [level](int c) { return make_unit(c, level); };
  p.cunit = [pal, level](int c) { return make_cunit(pal, c, level); };
  return p;
}

std::vector<int> unit_vertices(const SGraph& a, const Pointing& pt) {
  std::vector<int> w;
  for (int v = 0; v < a.g.nv; ++v) {
    int k = a.g.valency(v);
    if ((k == 2 && pt.unit_color(*a.deco[v]) >= 0) || (k == 0 && pt.cunit_orbit(*a.deco[v]) >= 0)) w.push_back(v);
  }
  return w;
}

SGraph delete_structured(const SGraph& a, const std::vector<int>& W) {
  Deletion d = vertex_deletion(a.g, W);
  SGraph r;
  r.g = d.g;
  r.sp = a.sp;
  for (int x : d.old_edge) {
    if (x < 0) fail(ErrorCode::InvalidParameter, "deletion collapses a whole component");
    r.color.push_back(a.color[x]);
  }
  for (int p : a.ports) r.ports.push_back(d.delta.fE[p]);
  for (int v : d.old_vertex) r.deco.push_back(a.deco[v]);
  validate_sgraph(r);
  return r;
}

SimilarityClass reduced_representative(const SGraph& a, const Pointing& pt) {
  const Palette& pal = a.sp->pal;
  SimilarityClass r;
  auto unit_line = [&](int c) {
    r.kind = SimilarityClass::Kind::UnitLine;
    r.color = c;
    r.key = "L" + std::to_string(c);
    return r;
  };
  auto unit_wheel = [&](int c) {
    r.kind = SimilarityClass::Kind::UnitWheel;
    r.color = pal.orbit(c);
    r.key = "W" + std::to_string(r.color);
    return r;
  };
  if (!is_connected(a.g)) fail(ErrorCode::NotConnected, "structured graph is not connected");
  if (a.g.nv == 0) return unit_line(a.color[a.ports[0]]);
  std::vector<int> W = unit_vertices(a, pt);
  if (static_cast<int>(W.size()) == a.g.nv) {
    if (a.g.ne() == 0) return unit_wheel(pt.cunit_orbit(*a.deco[0]));
    if (a.ports.empty()) return unit_wheel(a.color[0]);
    return unit_line(a.color[a.ports[0]]);
  }
  r.kind = SimilarityClass::Kind::Admissible;
  r.rep = W.empty() ? a : delete_structured(a, W);
  r.key = "A{" + canonical_form(r.rep) + "}";
  return r;
}

bool similarity_equal(const SGraph& a, const SGraph& b, const Pointing& pt) {
  if (a.ports.size() != b.ports.size()) fail(ErrorCode::LabelMismatch, "structured graphs have different label sets");
  return reduced_representative(a, pt).key == reduced_representative(b, pt).key;
}

SGraph insert_unit_vertex(const SGraph& a, int e, const Pointing& pt) {
  const Graph& g = a.g;
  if (e < 0 || e >= g.ne()) fail(ErrorCode::IndexOutOfRange, "edge out of range");
  int ne = g.ne(), f = g.tau[e];
  std::vector<int> tau = g.tau, s = g.s, t = g.t;
  tau.push_back(e);
  tau.push_back(f);
  tau[e] = ne;
  tau[f] = ne + 1;
  s.push_back(ne);
  s.push_back(ne + 1);
  t.push_back(g.nv);
  t.push_back(g.nv);
  SGraph r;
  r.g = make_graph(tau, s, t, g.nv + 1);
  r.sp = a.sp;
  r.ports = a.ports;
  r.color = a.color;
  int c = a.color[e];
  r.color.push_back(a.sp->pal.omega[c]);
  r.color.push_back(c);
  r.deco = a.deco;
  r.deco.push_back(pt.unit(c));
  validate_sgraph(r);
  return r;
}

SGraph line_of_units(const SpeciesP& sp, int k, int c, const Pointing& pt) {
  SGraph r;
  r.g = line(k);
  r.sp = sp;
  r.ports = ports(r.g);
  for (int e = 0; e < r.g.ne(); ++e) r.color.push_back(e % 2 == 0 ? c : sp->pal.omega[c]);
  for (int v = 0; v < k; ++v) r.deco.push_back(pt.unit(c));
  validate_sgraph(r);
  return r;
}

SGraph wheel_of_units(const SpeciesP& sp, int m, int c, const Pointing& pt) {
  SGraph r;
  r.g = wheel(m);
  r.sp = sp;
  for (int e = 0; e < r.g.ne(); ++e) r.color.push_back(e % 2 == 1 ? c : sp->pal.omega[c]);
  for (int v = 0; v < m; ++v) r.deco.push_back(pt.unit(c));
  validate_sgraph(r);
  return r;
}

}  // namespace mge
