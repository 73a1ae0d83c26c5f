#include "mge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mge/error.hpp"

namespace mge {

std::vector<int> Graph::edges_at(int v) const {
  std::vector<int> r;
  for (int h : halves[v]) r.push_back(s[h]);
  return r;
}

void validate_graph(const Graph& g) {
  int ne = g.ne(), nh = g.nh();
  if (g.nv < 0) fail(ErrorCode::InvalidParameter, "negative vertex count");
  if (static_cast<int>(g.t.size()) != nh) fail(ErrorCode::InvalidParameter, "s and t differ in size");
  for (int e = 0; e < ne; ++e) {
    int f = g.tau[e];
    if (f < 0 || f >= ne) fail(ErrorCode::IndexOutOfRange, "tau(" + std::to_string(e) + ") out of range");
    if (f == e) fail(ErrorCode::FixedPointInvolution, "tau fixes edge " + std::to_string(e));
    if (g.tau[f] != e) fail(ErrorCode::NotAnInvolution, "tau(tau(" + std::to_string(e) + ")) != " + std::to_string(e));
  }
  std::vector<int> seen(ne, -1);
  for (int h = 0; h < nh; ++h) {
    if (g.s[h] < 0 || g.s[h] >= ne) fail(ErrorCode::IndexOutOfRange, "s(" + std::to_string(h) + ") out of range");
    if (g.t[h] < 0 || g.t[h] >= g.nv) fail(ErrorCode::IndexOutOfRange, "t(" + std::to_string(h) + ") out of range");
    if (seen[g.s[h]] >= 0)
      fail(ErrorCode::NonInjectiveAttach, "edge " + std::to_string(g.s[h]) + " attached twice");
    seen[g.s[h]] = h;
  }
}

Graph make_graph(std::vector<int> tau, std::vector<int> s, std::vector<int> t, int nv) {
  Graph g;
  g.tau = std::move(tau);
  g.s = std::move(s);
  g.t = std::move(t);
  g.nv = nv;
  validate_graph(g);
  g.half_of.assign(g.ne(), -1);
  g.halves.assign(nv, {});
  for (int h = 0; h < g.nh(); ++h) {
    g.half_of[g.s[h]] = h;
    g.halves[g.t[h]].push_back(h);
  }
  return g;
}

std::vector<int> ports(const Graph& g) {
  std::vector<int> r;
  for (int e = 0; e < g.ne(); ++e)
    if (g.is_port(e)) r.push_back(e);
  return r;
}

bool is_inner(const Graph& g, int e) { return g.attached(e) && g.attached(g.tau[e]); }
int orbit_rep(const Graph& g, int e) { return std::min(e, g.tau[e]); }

std::vector<int> orbits(const Graph& g) {
  std::vector<int> r;
  for (int e = 0; e < g.ne(); ++e)
    if (e < g.tau[e]) r.push_back(e);
  return r;
}

std::vector<int> inner_orbits(const Graph& g) {
  std::vector<int> r;
  for (int e : orbits(g))
    if (is_inner(g, e)) r.push_back(e);
  return r;
}

Graph stick() { return make_graph({1, 0}, {}, {}, 0); }
Graph isolated_vertex() { return make_graph({}, {}, {}, 1); }

Graph corolla(int n) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "corolla arity must be >= 0");
  std::vector<int> tau(2 * n), s(n), t(n, 0);
  for (int i = 0; i < n; ++i) {
    tau[i] = n + i;
    tau[n + i] = i;
    s[i] = n + i;
  }
  return make_graph(tau, s, t, 1);
}

Graph line(int k) {
  if (k < 0) fail(ErrorCode::InvalidParameter, "line length must be >= 0");
  int ne = 2 * k + 2;
  std::vector<int> tau(ne), s, t;
  for (int i = 0; i < ne; i += 2) {
    tau[i] = i + 1;
    tau[i + 1] = i;
  }
  for (int i = 1; i <= k; ++i) {
    s.push_back(2 * i - 1);
    t.push_back(i - 1);
    s.push_back(2 * i);
    t.push_back(i - 1);
  }
  return make_graph(tau, s, t, k);
}

Graph wheel(int m) {
  if (m < 1) fail(ErrorCode::InvalidParameter, "wheel needs m >= 1");
  int ne = 2 * m;
  std::vector<int> tau(ne), s(ne), t(ne);
  // a_j at index j-1; tau(a_{2i}) = a_{2i+1}, tau(a_{2m}) = a_1; vertex i holds a_{2i-1}, a_{2i}
  for (int i = 1; i < m; ++i) {
    tau[2 * i - 1] = 2 * i;
    tau[2 * i] = 2 * i - 1;
  }
  tau[2 * m - 1] = 0;
  tau[0] = 2 * m - 1;
  for (int h = 0; h < ne; ++h) {
    s[h] = h;
    t[h] = h / 2;
  }
  return make_graph(tau, s, t, m);
}

Graph mgraph(int a, int b) {
  if (a < 0 || b < 0) fail(ErrorCode::InvalidParameter, "negative arity");
  // X = 0..a-1, X† = a..2a-1, Y = 2a..2a+b-1, Y† = 2a+b..2a+2b-1, x0, y0
  int x0 = 2 * a + 2 * b, y0 = x0 + 1;
  std::vector<int> tau(y0 + 1), s, t;
  for (int i = 0; i < a; ++i) {
    tau[i] = a + i;
    tau[a + i] = i;
    s.push_back(a + i);
    t.push_back(0);
  }
  s.push_back(y0);
  t.push_back(0);
  for (int j = 0; j < b; ++j) {
    tau[2 * a + j] = 2 * a + b + j;
    tau[2 * a + b + j] = 2 * a + j;
    s.push_back(2 * a + b + j);
    t.push_back(1);
  }
  s.push_back(x0);
  t.push_back(1);
  tau[x0] = y0;
  tau[y0] = x0;
  return make_graph(tau, s, t, 2);
}

Graph ngraph(int n) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "negative arity");
  int x0 = 2 * n, y0 = x0 + 1;
  std::vector<int> tau(y0 + 1), s, t;
  for (int i = 0; i < n; ++i) {
    tau[i] = n + i;
    tau[n + i] = i;
    s.push_back(n + i);
    t.push_back(0);
  }
  s.push_back(x0);
  t.push_back(0);
  s.push_back(y0);
  t.push_back(0);
  tau[x0] = y0;
  tau[y0] = x0;
  return make_graph(tau, s, t, 1);
}

Union disjoint_union(const std::vector<Graph>& gs) {
  std::vector<int> tau, s, t;
  int ne = 0, nh = 0, nv = 0;
  Union u;
  for (const Graph& g : gs) {
    Morphism m;
    for (int e = 0; e < g.ne(); ++e) {
      tau.push_back(g.tau[e] + ne);
      m.fE.push_back(e + ne);
    }
    for (int h = 0; h < g.nh(); ++h) {
      s.push_back(g.s[h] + ne);
      t.push_back(g.t[h] + nv);
      m.fH.push_back(h + nh);
    }
    for (int v = 0; v < g.nv; ++v) m.fV.push_back(v + nv);
    ne += g.ne();
    nh += g.nh();
    nv += g.nv;
    u.incl.push_back(std::move(m));
  }
  u.g = make_graph(tau, s, t, nv);
  return u;
}

void component_ids(const Graph& g, std::vector<int>& ec, std::vector<int>& vc, int& ncomp) {
  // union-find over edges and vertices (vertex v is node ne+v)
  int n = g.ne() + g.nv;
  std::vector<int> par(n);
  std::iota(par.begin(), par.end(), 0);
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  auto unite = [&](int a, int b) { par[find(a)] = find(b); };
  for (int e = 0; e < g.ne(); ++e) unite(e, g.tau[e]);
  for (int h = 0; h < g.nh(); ++h) unite(g.s[h], g.ne() + g.t[h]);
  std::vector<int> id(n, -1);
  ncomp = 0;
  ec.assign(g.ne(), -1);
  vc.assign(g.nv, -1);
  // number components by smallest member, vertices ranked after edges
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (id[r] < 0) id[r] = ncomp++;
    if (x < g.ne()) ec[x] = id[r];
    else vc[x - g.ne()] = id[r];
  }
}

bool is_connected(const Graph& g) {
  std::vector<int> ec, vc;
  int n;
  component_ids(g, ec, vc, n);
  return n == 1;
}

std::vector<Component> connected_components(const Graph& g) {
  std::vector<int> ec, vc;
  int n;
  component_ids(g, ec, vc, n);
  std::vector<Component> out(n);
  std::vector<int> enew(g.ne()), vnew(g.nv), hnew(g.nh());
  std::vector<std::vector<int>> tau(n), s(n), t(n);
  std::vector<int> nv(n, 0), ne(n, 0), nh(n, 0);
  for (int e = 0; e < g.ne(); ++e) {
    enew[e] = ne[ec[e]]++;
    out[ec[e]].incl.fE.push_back(e);
  }
  for (int v = 0; v < g.nv; ++v) {
    vnew[v] = nv[vc[v]]++;
    out[vc[v]].incl.fV.push_back(v);
  }
  for (int e = 0; e < g.ne(); ++e) tau[ec[e]].push_back(enew[g.tau[e]]);
  for (int h = 0; h < g.nh(); ++h) {
    int c = vc[g.t[h]];
    hnew[h] = nh[c]++;
    s[c].push_back(enew[g.s[h]]);
    t[c].push_back(vnew[g.t[h]]);
    out[c].incl.fH.push_back(h);
  }
  for (int c = 0; c < n; ++c) {
    out[c].g = make_graph(tau[c], s[c], t[c], nv[c]);
    out[c].is_stick = nv[c] == 0;
  }
  return out;
}

Graph relabel(const Graph& g, const std::vector<int>& ep, const std::vector<int>& vp,
              const std::vector<int>& hp_in) {
  std::vector<int> hp = hp_in;
  if (hp.empty()) {
    hp.resize(g.nh());
    std::iota(hp.begin(), hp.end(), 0);
  }
  std::vector<int> tau(g.ne()), s(g.nh()), t(g.nh());
  for (int e = 0; e < g.ne(); ++e) tau[ep[e]] = ep[g.tau[e]];
  for (int h = 0; h < g.nh(); ++h) {
    s[hp[h]] = ep[g.s[h]];
    t[hp[h]] = vp[g.t[h]];
  }
  return make_graph(tau, s, t, g.nv);
}

std::string describe(const Graph& g) {
  std::ostringstream os;
  os << "E=" << g.ne() << " H=" << g.nh() << " V=" << g.nv << " tau=[";
  for (int e = 0; e < g.ne(); ++e) os << (e ? "," : "") << g.tau[e];
  os << "] s=[";
  for (int h = 0; h < g.nh(); ++h) os << (h ? "," : "") << g.s[h];
  os << "] t=[";
  for (int h = 0; h < g.nh(); ++h) os << (h ? "," : "") << g.t[h];
  os << "]";
  return os.str();
}

}  // namespace mge
