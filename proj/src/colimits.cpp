#include "mge/colimits.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mge/error.hpp"

namespace mge {

void validate_gluing(const GluingDatum& d) {
  const Graph& g = d.g;
  if (d.p.size() != d.q.size()) fail(ErrorCode::NotAGluingDatum, "delta1 and delta2 have different shrubs");
  for (int e = 0; e < g.ne(); ++e)
    if (g.is_port(e) && g.is_port(g.tau[e])) fail(ErrorCode::NotAGluingDatum, "target has a stick component");
  std::set<int> img1, img2;
  for (size_t i = 0; i < d.p.size(); ++i) {
    for (int x : {d.p[i], d.q[i]})
      if (x < 0 || x >= g.ne()) fail(ErrorCode::NotAGluingDatum, "edge out of range");
    if (!g.is_port(d.p[i])) fail(ErrorCode::NotAGluingDatum, "delta1(1_" + std::to_string(i) + ") is not a port");
    if (!g.is_port(d.q[i])) fail(ErrorCode::NotAGluingDatum, "delta2(2_" + std::to_string(i) + ") is not a port");
    if (!img1.insert(d.p[i]).second || !img1.insert(g.tau[d.p[i]]).second)
      fail(ErrorCode::NotAGluingDatum, "delta1 is not injective");
    if (!img2.insert(d.q[i]).second || !img2.insert(g.tau[d.q[i]]).second)
      fail(ErrorCode::NotAGluingDatum, "delta2 is not injective");
  }
  for (int x : img1)
    if (img2.count(x)) fail(ErrorCode::NotAGluingDatum, "images of delta1 and delta2 meet");
}

Glued coequalize_gluing(const GluingDatum& d) {
  validate_gluing(d);
  const Graph& g = d.g;
  std::vector<int> to(g.ne(), -1);  // removed port -> surviving partner edge
  std::vector<int> tau0 = g.tau;
  for (size_t i = 0; i < d.p.size(); ++i) {
    int P = d.p[i], Q = d.q[i];
    to[P] = g.tau[Q];
    to[Q] = g.tau[P];
    tau0[g.tau[P]] = g.tau[Q];
    tau0[g.tau[Q]] = g.tau[P];
  }
  std::vector<int> idx(g.ne(), -1);
  int n = 0;
  for (int e = 0; e < g.ne(); ++e)
    if (to[e] < 0) idx[e] = n++;
  std::vector<int> tau(n), s(g.nh());
  for (int e = 0; e < g.ne(); ++e)
    if (idx[e] >= 0) tau[idx[e]] = idx[tau0[e]];
  for (int h = 0; h < g.nh(); ++h) s[h] = idx[g.s[h]];
  Glued r;
  r.g = make_graph(tau, s, g.t, g.nv);
  for (int e = 0; e < g.ne(); ++e) r.proj.fE.push_back(idx[to[e] < 0 ? e : to[e]]);
  r.proj = validate_morphism(g, r.g, r.proj.fE, identity_morphism(g).fV);
  return r;
}

Broken break_edges(const Graph& g, const std::vector<int>& orbs) {
  Broken r;
  std::set<int> seen;
  for (int e : orbs) {
    if (e < 0 || e >= g.ne()) fail(ErrorCode::IndexOutOfRange, "edge out of range");
    if (!is_inner(g, e)) fail(ErrorCode::NotInnerOrbit, "edge " + std::to_string(e) + " is not inner");
    if (!seen.insert(orbit_rep(g, e)).second) continue;
    r.orbit_edges.push_back(e);
  }
  int ne = g.ne();
  std::vector<int> tau = g.tau;
  std::vector<int> fE;
  for (int e = 0; e < ne; ++e) fE.push_back(e);
  for (size_t j = 0; j < r.orbit_edges.size(); ++j) {
    int e = r.orbit_edges[j], f = g.tau[e];
    int de = ne + 2 * static_cast<int>(j), df = de + 1;
    tau.push_back(e);
    tau.push_back(f);
    tau[e] = de;
    tau[f] = df;
    fE.push_back(f);
    fE.push_back(e);
  }
  r.g = make_graph(tau, g.s, g.t, g.nv);
  r.map = validate_morphism(r.g, g, fE, identity_morphism(g).fV);
  return r;
}

bool is_degenerate(const GraphOfGraphs& gg) {
  for (const XGraph& x : gg.pieces)
    for (int e = 0; e < x.g.ne(); ++e)
      if (x.g.is_port(e) && x.g.is_port(x.g.tau[e])) return true;
  return false;
}

GraphOfGraphs identity_graph_of_graphs(const Graph& g) {
  GraphOfGraphs gg;
  gg.base = g;
  for (int v = 0; v < g.nv; ++v) {
    Graph c = corolla(g.valency(v));
    gg.pieces.push_back(default_labelling(c));
  }
  return gg;
}

Colimit colimit_graph_of_graphs(const GraphOfGraphs& gg) {
  const Graph& b = gg.base;
  if (static_cast<int>(gg.pieces.size()) != b.nv) fail(ErrorCode::InvalidParameter, "one piece per vertex required");
  if (is_degenerate(gg)) fail(ErrorCode::DegenerateGraphOfGraphs, "a piece has a stick component");
  std::vector<Graph> gs;
  for (int v = 0; v < b.nv; ++v) {
    const XGraph& x = gg.pieces[v];
    if (static_cast<int>(x.ports.size()) != b.valency(v))
      fail(ErrorCode::InvalidParameter, "piece boundary does not match the valency of vertex " + std::to_string(v));
    gs.push_back(x.g);
  }
  Union u = disjoint_union(gs);
  auto port_of = [&](int h) {  // U-edge of the piece port matching base half h
    int v = b.t[h];
    const auto& hs = b.halves[v];
    int i = static_cast<int>(std::find(hs.begin(), hs.end(), h) - hs.begin());
    return u.incl[v].fE[gg.pieces[v].ports[i]];
  };
  GluingDatum d;
  d.g = u.g;
  for (int e : inner_orbits(b)) {
    d.p.push_back(port_of(b.half_of[e]));
    d.q.push_back(port_of(b.half_of[b.tau[e]]));
  }
  Glued gl = coequalize_gluing(d);
  // base stick components survive as sticks
  std::vector<int> stick_edges;
  for (int e = 0; e < b.ne(); ++e)
    if (b.is_port(e) && b.is_port(b.tau[e])) stick_edges.push_back(e);
  Colimit r;
  std::vector<Graph> parts{gl.g};
  std::map<int, int> stick_index;
  std::vector<int> stick_tau;
  for (int e : stick_edges) stick_index[e] = static_cast<int>(stick_index.size());
  for (int e : stick_edges) stick_tau.push_back(stick_index[b.tau[e]]);
  if (!stick_edges.empty()) parts.push_back(make_graph(stick_tau, {}, {}, 0));
  Union all = disjoint_union(parts);
  r.g = all.g;
  for (int v = 0; v < b.nv; ++v) r.iota.push_back(compose(all.incl[0], compose(gl.proj, u.incl[v])));
  r.base_edge.assign(b.ne(), -1);
  for (int e = 0; e < b.ne(); ++e) {
    if (stick_index.count(e)) {
      r.base_edge[e] = all.incl[1].fE[stick_index[e]];
    } else if (b.attached(e)) {
      int P = port_of(b.half_of[e]);
      r.base_edge[e] = all.incl[0].fE[gl.proj.fE[u.g.tau[P]]];
    } else {
      r.base_edge[e] = all.incl[0].fE[gl.proj.fE[port_of(b.half_of[b.tau[e]])]];
    }
  }
  return r;
}

Contraction contract_partition(const Graph& g, const std::vector<int>& block) {
  if (static_cast<int>(block.size()) != g.nv) fail(ErrorCode::InvalidParameter, "block list has wrong size");
  int nb = 0;
  for (int x : block) nb = std::max(nb, x + 1);
  auto blk_of_edge = [&](int e) { return g.attached(e) ? block[g.vertex_of(e)] : -1; };
  std::vector<char> internal(g.ne(), 0);
  for (int e = 0; e < g.ne(); ++e) {
    int a = blk_of_edge(e), c = blk_of_edge(g.tau[e]);
    internal[e] = a >= 0 && a == c;
  }
  Contraction r;
  // base graph
  std::vector<int> bidx(g.ne(), -1);
  int nbe = 0;
  for (int e = 0; e < g.ne(); ++e)
    if (!internal[e]) {
      bidx[e] = nbe++;
      r.base_edge.push_back(e);
    }
  std::vector<int> btau(nbe), bs, bt;
  for (int e = 0; e < g.ne(); ++e)
    if (!internal[e]) btau[bidx[e]] = bidx[g.tau[e]];
  std::vector<int> base_half_src;
  for (int h = 0; h < g.nh(); ++h)
    if (!internal[g.s[h]]) {
      bs.push_back(bidx[g.s[h]]);
      bt.push_back(block[g.t[h]]);
      base_half_src.push_back(h);
    }
  r.gg.base = make_graph(btau, bs, bt, nb);
  // pieces
  for (int B = 0; B < nb; ++B) {
    std::vector<int> verts;
    for (int v = 0; v < g.nv; ++v)
      if (block[v] == B) verts.push_back(v);
    if (verts.empty()) fail(ErrorCode::InvalidParameter, "empty block " + std::to_string(B));
    std::vector<int> edges;
    std::vector<char> in(g.ne(), 0);
    for (int v : verts)
      for (int e : g.edges_at(v)) in[e] = in[g.tau[e]] = 1;
    std::vector<int> eidx(g.ne(), -1), vidx(g.nv, -1);
    for (int e = 0; e < g.ne(); ++e)
      if (in[e]) {
        eidx[e] = static_cast<int>(edges.size());
        edges.push_back(e);
      }
    for (size_t i = 0; i < verts.size(); ++i) vidx[verts[i]] = static_cast<int>(i);
    std::vector<int> tau, s, t;
    for (int e : edges) tau.push_back(eidx[g.tau[e]]);
    for (int h = 0; h < g.nh(); ++h)
      if (block[g.t[h]] == B) {
        s.push_back(eidx[g.s[h]]);
        t.push_back(vidx[g.t[h]]);
      }
    XGraph x;
    x.g = make_graph(tau, s, t, static_cast<int>(verts.size()));
    if (!is_connected(x.g)) fail(ErrorCode::NotConnected, "block " + std::to_string(B) + " is not connected");
    for (int h : r.gg.base.halves[B]) {
      int gh = base_half_src[h];
      x.ports.push_back(eidx[g.tau[g.s[gh]]]);
    }
    r.gg.pieces.push_back(x);
    r.piece_edge.push_back(edges);
    r.piece_vertex.push_back(verts);
  }
  return r;
}

}  // namespace mge
