#include "mge/morphism.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "mge/error.hpp"

namespace mge {

Morphism validate_morphism(const Graph& src, const Graph& tgt, const std::vector<int>& fE,
                           const std::optional<std::vector<int>>& fV) {
  if (static_cast<int>(fE.size()) != src.ne()) fail(ErrorCode::InvalidParameter, "f_E has wrong size");
  for (int e = 0; e < src.ne(); ++e)
    if (fE[e] < 0 || fE[e] >= tgt.ne()) fail(ErrorCode::IndexOutOfRange, "f_E(" + std::to_string(e) + ") out of range");
  for (int e = 0; e < src.ne(); ++e)
    if (fE[src.tau[e]] != tgt.tau[fE[e]])
      fail(ErrorCode::InvolutionNotPreserved, "f_E(tau " + std::to_string(e) + ") != tau f_E(" + std::to_string(e) + ")");
  Morphism m;
  m.fE = fE;
  m.fH.resize(src.nh());
  for (int h = 0; h < src.nh(); ++h) {
    int e = src.s[h];
    int h2 = tgt.half_of[fE[e]];
    if (h2 < 0)
      fail(ErrorCode::NotCommuting, "attached edge " + std::to_string(e) + " maps to port " + std::to_string(fE[e]));
    m.fH[h] = h2;
  }
  if (fV) {
    if (static_cast<int>(fV->size()) != src.nv) fail(ErrorCode::InvalidParameter, "f_V has wrong size");
    for (int v = 0; v < src.nv; ++v)
      if ((*fV)[v] < 0 || (*fV)[v] >= tgt.nv) fail(ErrorCode::IndexOutOfRange, "f_V(" + std::to_string(v) + ") out of range");
    m.fV = *fV;
  } else {
    m.fV.assign(src.nv, -1);
    for (int v = 0; v < src.nv; ++v) {
      if (src.halves[v].empty())
        fail(ErrorCode::MissingVertexMap, "isolated vertex " + std::to_string(v) + " needs an explicit image");
      m.fV[v] = tgt.t[m.fH[src.halves[v][0]]];
    }
  }
  for (int h = 0; h < src.nh(); ++h)
    if (tgt.t[m.fH[h]] != m.fV[src.t[h]])
      fail(ErrorCode::NotCommuting, "half-edge " + std::to_string(h) + " at vertex " + std::to_string(src.t[h]) +
                                        " lands off f_V");
  return m;
}

bool is_valid_morphism(const Graph& src, const Graph& tgt, const Morphism& f) {
  try {
    Morphism m = validate_morphism(src, tgt, f.fE, f.fV);
    return m.fH == f.fH;
  } catch (const Error&) {
    return false;
  }
}

Morphism identity_morphism(const Graph& g) {
  Morphism m;
  for (int e = 0; e < g.ne(); ++e) m.fE.push_back(e);
  for (int h = 0; h < g.nh(); ++h) m.fH.push_back(h);
  for (int v = 0; v < g.nv; ++v) m.fV.push_back(v);
  return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism r;
  for (int x : f.fE) r.fE.push_back(g.fE[x]);
  for (int x : f.fH) r.fH.push_back(g.fH[x]);
  for (int x : f.fV) r.fV.push_back(g.fV[x]);
  return r;
}

Morphism compose_checked(const Graph& a, const Graph& b, const Graph& b2, const Morphism& g, const Morphism& f) {
  if (!(b == b2)) fail(ErrorCode::SourceTargetMismatch, "target of f differs from source of g");
  if (static_cast<int>(f.fE.size()) != a.ne() || static_cast<int>(g.fE.size()) != b.ne())
    fail(ErrorCode::SourceTargetMismatch, "map sizes do not match graphs");
  return compose(g, f);
}

Morphism choose_edge(const Graph& g, int e) {
  if (e < 0 || e >= g.ne()) fail(ErrorCode::IndexOutOfRange, "edge out of range");
  Morphism m;
  m.fE = {e, g.tau[e]};
  return m;
}

namespace {

template <class T>
bool injective(const std::vector<T>& f, int n) {
  std::vector<char> seen(n, 0);
  for (int x : f) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool surjective(const std::vector<int>& f, int n) {
  std::vector<char> seen(n, 0);
  for (int x : f) seen[x] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

}  // namespace

Classification classify(const Graph& src, const Graph& tgt, const Morphism& f) {
  Classification c;
  c.locally_injective = c.locally_surjective = true;
  for (int v = 0; v < src.nv; ++v) {
    int w = f.fV[v];
    std::vector<int> hits(tgt.nh(), 0);
    for (int h : src.halves[v]) hits[f.fH[h]]++;
    for (int h2 : tgt.halves[w]) {
      if (hits[h2] > 1) c.locally_injective = false;
      if (hits[h2] == 0) c.locally_surjective = false;
    }
  }
  c.etale = c.locally_injective && c.locally_surjective;

  // (H,V) square is a pullback iff h ↦ (t h, f_H h) is a bijection onto V ×_{V'} H'.
  {
    long long pairs = 0;
    for (int v = 0; v < src.nv; ++v) pairs += tgt.valency(f.fV[v]);
    std::map<std::pair<int, int>, int> seen;
    bool inj = true;
    for (int h = 0; h < src.nh(); ++h)
      if (seen[{src.t[h], f.fH[h]}]++) inj = false;
    c.etale_pullback = inj && pairs == src.nh();
  }

  c.injective = injective(f.fE, tgt.ne()) && injective(f.fH, tgt.nh()) && injective(f.fV, tgt.nv);
  c.mono = c.injective;  // graph maps out of the stick and C_0 detect E and V

  {
    std::vector<char> in_stick(src.ne(), 0);
    for (int e = 0; e < src.ne(); ++e) in_stick[e] = src.is_port(e) && src.is_port(src.tau[e]);
    std::vector<char> hit_rest(tgt.ne(), 0), hit_stick(tgt.ne(), 0);
    bool ok = true;
    for (int e = 0; e < src.ne(); ++e)
      if (!in_stick[e]) hit_rest[f.fE[e]] = 1;
    for (int e = 0; e < src.ne(); ++e)
      if (in_stick[e]) {
        if (hit_rest[f.fE[e]] || hit_stick[f.fE[e]]) ok = false;
        hit_stick[f.fE[e]] = 1;
      }
    c.weak_mono = ok && injective(f.fV, tgt.nv) && injective(f.fH, tgt.nh());
  }

  c.epi = surjective(f.fE, tgt.ne()) && surjective(f.fH, tgt.nh()) && surjective(f.fV, tgt.nv);
  c.iso = c.injective && c.epi;

  {
    std::vector<int> p = ports(src), p2 = ports(tgt);
    std::vector<int> img;
    bool into = true;
    for (int e : p) {
      if (!tgt.is_port(f.fE[e])) into = false;
      img.push_back(f.fE[e]);
    }
    std::sort(img.begin(), img.end());
    c.boundary_preserving = into && img == p2;
  }

  std::vector<int> ec, vc;
  int ncomp;
  component_ids(tgt, ec, vc, ncomp);
  c.cover_degree.assign(ncomp, std::nullopt);
  bool ports_to_ports = true;
  for (int e : ports(src))
    if (!tgt.is_port(f.fE[e])) ports_to_ports = false;
  if (c.etale && ports_to_ports) {
    std::vector<int> ce(tgt.ne(), 0), cv(tgt.nv, 0);
    for (int x : f.fE) ce[x]++;
    for (int x : f.fV) cv[x]++;
    for (int k = 0; k < ncomp; ++k) {
      int d = -1;
      bool constant = true;
      for (int e = 0; e < tgt.ne(); ++e)
        if (ec[e] == k) {
          if (d < 0) d = ce[e];
          else if (d != ce[e]) constant = false;
        }
      for (int v = 0; v < tgt.nv; ++v)
        if (vc[v] == k) {
          if (d < 0) d = cv[v];
          else if (d != cv[v]) constant = false;
        }
      if (constant && d >= 0) c.cover_degree[k] = d;
    }
  }
  return c;
}

namespace {

struct Search {
  const Graph& a;
  const Graph& b;
  bool etale;
  bool bijective;
  std::vector<int> fE, fV;
  std::vector<char> usedV;
  std::vector<int> order;
  std::vector<Morphism> out;

  Search(const Graph& a_, const Graph& b_, bool et, bool bij) : a(a_), b(b_), etale(et), bijective(bij) {
    fE.assign(a.ne(), -1);
    fV.assign(a.nv, -1);
    usedV.assign(b.nv, 0);
    // vertices in breadth-first order so edge images propagate early
    std::vector<char> seen(a.nv, 0);
    for (int r = 0; r < a.nv; ++r) {
      if (seen[r]) continue;
      std::deque<int> q{r};
      seen[r] = 1;
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        order.push_back(v);
        for (int h : a.halves[v]) {
          int w = a.vertex_of(a.tau[a.s[h]]);
          if (w >= 0 && !seen[w]) {
            seen[w] = 1;
            q.push_back(w);
          }
        }
      }
    }
  }

  bool set_edge(int e, int e2, std::vector<int>& undo) {
    if (fE[e] >= 0) return fE[e] == e2;
    if (fE[a.tau[e]] >= 0 && fE[a.tau[e]] != b.tau[e2]) return false;
    fE[e] = e2;
    undo.push_back(e);
    if (fE[a.tau[e]] < 0) {
      fE[a.tau[e]] = b.tau[e2];
      undo.push_back(a.tau[e]);
    }
    return true;
  }

  void finish_free(size_t i, const std::vector<int>& freeorb) {
    if (i == freeorb.size()) {
      if (bijective) {
        std::vector<char> hit(b.ne(), 0);
        for (int x : fE) {
          if (hit[x]) return;
          hit[x] = 1;
        }
      }
      Morphism m;
      m.fE = fE;
      m.fV = fV;
      m.fH.resize(a.nh());
      for (int h = 0; h < a.nh(); ++h) m.fH[h] = b.half_of[fE[a.s[h]]];
      out.push_back(std::move(m));
      return;
    }
    int e = freeorb[i];
    for (int e2 = 0; e2 < b.ne(); ++e2) {
      if (bijective && !(b.is_port(e2) && b.is_port(b.tau[e2]))) continue;
      fE[e] = e2;
      fE[a.tau[e]] = b.tau[e2];
      finish_free(i + 1, freeorb);
    }
    fE[e] = fE[a.tau[e]] = -1;
  }

  void halves_at(int vi, int v, int w, size_t k, std::vector<char>& usedH) {
    const auto& hs = a.halves[v];
    if (k == hs.size()) {
      vertex(vi + 1);
      return;
    }
    int e = a.s[hs[k]];
    for (int h2 : b.halves[w]) {
      if ((etale || bijective) && usedH[h2]) continue;
      std::vector<int> undo;
      if (set_edge(e, b.s[h2], undo)) {
        usedH[h2]++;
        halves_at(vi, v, w, k + 1, usedH);
        usedH[h2]--;
      }
      for (int x : undo) fE[x] = -1;
    }
  }

  void vertex(int vi) {
    if (vi == static_cast<int>(order.size())) {
      std::vector<int> freeorb;
      for (int e = 0; e < a.ne(); ++e)
        if (fE[e] < 0 && e < a.tau[e]) freeorb.push_back(e);
      finish_free(0, freeorb);
      return;
    }
    int v = order[vi];
    for (int w = 0; w < b.nv; ++w) {
      if ((etale || bijective) && b.valency(w) != a.valency(v)) continue;
      if (bijective && usedV[w]) continue;
      fV[v] = w;
      usedV[w]++;
      std::vector<char> usedH(b.nh(), 0);
      halves_at(vi, v, w, 0, usedH);
      usedV[w]--;
      fV[v] = -1;
    }
  }
};

void check_bound(const Graph& a, const Graph& b, int bound) {
  if (bound < 0) bound = default_bound();
  if (a.ne() > bound || b.ne() > bound)
    fail(ErrorCode::SizeBoundExceeded, "graph exceeds " + std::to_string(bound) + " edges");
}

}  // namespace

std::vector<Morphism> enumerate_morphisms(const Graph& src, const Graph& tgt, bool etale_only, int bound) {
  check_bound(src, tgt, bound);
  Search s(src, tgt, etale_only, false);
  s.vertex(0);
  std::sort(s.out.begin(), s.out.end());
  return s.out;
}

Pullback pullback(const Graph& a, const Graph& b, const Graph& c, const Morphism& f1, const Morphism& f2) {
  (void)c;
  Pullback p;
  std::map<std::pair<int, int>, int> eid, hid;
  std::vector<std::pair<int, int>> es, hs, vs;
  for (int x = 0; x < a.ne(); ++x)
    for (int y = 0; y < b.ne(); ++y)
      if (f1.fE[x] == f2.fE[y]) {
        eid[{x, y}] = static_cast<int>(es.size());
        es.push_back({x, y});
      }
  std::map<std::pair<int, int>, int> vid;
  for (int x = 0; x < a.nv; ++x)
    for (int y = 0; y < b.nv; ++y)
      if (f1.fV[x] == f2.fV[y]) {
        vid[{x, y}] = static_cast<int>(vs.size());
        vs.push_back({x, y});
      }
  for (int x = 0; x < a.nh(); ++x)
    for (int y = 0; y < b.nh(); ++y)
      if (f1.fH[x] == f2.fH[y]) hs.push_back({x, y});
  std::vector<int> tau, s, t;
  for (auto [x, y] : es) tau.push_back(eid.at({a.tau[x], b.tau[y]}));
  for (auto [x, y] : hs) {
    s.push_back(eid.at({a.s[x], b.s[y]}));
    t.push_back(vid.at({a.t[x], b.t[y]}));
  }
  p.g = make_graph(tau, s, t, static_cast<int>(vs.size()));
  for (auto [x, y] : es) {
    p.p1.fE.push_back(x);
    p.p2.fE.push_back(y);
  }
  for (auto [x, y] : hs) {
    p.p1.fH.push_back(x);
    p.p2.fH.push_back(y);
  }
  for (auto [x, y] : vs) {
    p.p1.fV.push_back(x);
    p.p2.fV.push_back(y);
  }
  return p;
}

void validate_xgraph(const XGraph& x) {
  std::vector<int> p = ports(x.g), q = x.ports;
  std::sort(q.begin(), q.end());
  if (p != q) fail(ErrorCode::LabelMismatch, "labelling is not a bijection onto the ports");
  if (x.g.nv == 0) fail(ErrorCode::InvalidParameter, "an X-graph needs a vertex");
  if (!is_connected(x.g)) fail(ErrorCode::NotConnected, "an X-graph must be connected");
}

XGraph default_labelling(const Graph& g) { return XGraph{g, ports(g)}; }

std::vector<Morphism> enumerate_x_isomorphisms(const XGraph& x, const XGraph& y) {
  if (x.ports.size() != y.ports.size()) return {};
  if (x.g.ne() != y.g.ne() || x.g.nv != y.g.nv || x.g.nh() != y.g.nh()) return {};
  Search s(x.g, y.g, true, true);
  std::vector<int> undo;
  for (size_t i = 0; i < x.ports.size(); ++i)
    if (!s.set_edge(x.ports[i], y.ports[i], undo)) return {};
  s.vertex(0);
  std::sort(s.out.begin(), s.out.end());
  s.out.erase(std::unique(s.out.begin(), s.out.end()), s.out.end());
  return s.out;
}

}  // namespace mge
