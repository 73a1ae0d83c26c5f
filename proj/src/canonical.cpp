#include "mge/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mge/error.hpp"

namespace mge {

namespace {

std::vector<int> rank_of(const std::vector<std::vector<int>>& sig) {
  std::vector<std::vector<int>> u = sig;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<int> r(sig.size());
  for (size_t i = 0; i < sig.size(); ++i)
    r[i] = static_cast<int>(std::lower_bound(u.begin(), u.end(), sig[i]) - u.begin());
  return r;
}

int count_cells(const std::vector<int>& c) {
  std::set<int> s(c.begin(), c.end());
  return static_cast<int>(s.size());
}

std::string deco_invariant(const SGraph& a, const ElemP& x) {
  switch (x->kind) {
    case Elem::Kind::Base: {
      int n = x->arity, m = x->index;
      for (const auto& row : a.sp->ar[n].act) m = std::min(m, row[x->index]);
      return "b" + std::to_string(n) + "." + std::to_string(m);
    }
    case Elem::Kind::Unit:
      return "u" + std::to_string(x->level) + "." + std::to_string(a.sp->pal.orbit(x->color));
    case Elem::Kind::CUnit: return x->key;
    case Elem::Kind::Class: {
      std::vector<int> cols = leg_colors(a.sp->pal, *x);
      std::sort(cols.begin(), cols.end());
      std::string s = "g" + std::to_string(x->arity) + ":" + std::to_string(x->rep->g.ne()) + ":" +
                      std::to_string(x->rep->g.nv);
      for (int c : cols) s += "," + std::to_string(c);
      return s;
    }
  }
  return "";
}

struct Canon {
  const Graph& g;
  const std::vector<int>& portlist;
  const SGraph* a;
  std::string best;
  bool have = false;
  long long leaves = 0;

  Canon(const Graph& g_, const std::vector<int>& p, const SGraph* a_) : g(g_), portlist(p), a(a_) {}

  bool colored() const { return a && !a->color.empty(); }
  bool decorated() const { return a && !a->deco.empty(); }

  std::vector<int> initial() {
    std::vector<int> label(g.ne(), -1);
    for (size_t i = 0; i < portlist.size(); ++i) label[portlist[i]] = static_cast<int>(i);
    std::vector<int> vinv(g.nv, 0);
    if (decorated()) {
      std::vector<std::string> s(g.nv);
      for (int v = 0; v < g.nv; ++v) s[v] = deco_invariant(*a, a->deco[v]);
      std::vector<std::string> u = s;
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      for (int v = 0; v < g.nv; ++v) vinv[v] = static_cast<int>(std::lower_bound(u.begin(), u.end(), s[v]) - u.begin());
    }
    std::vector<std::vector<int>> sig(g.ne());
    for (int e = 0; e < g.ne(); ++e) {
      if (label[e] >= 0) sig[e] = {0, label[e]};
      else {
        int v = g.vertex_of(e);
        sig[e] = {1, v < 0 ? -1 : g.valency(v), v < 0 ? -1 : vinv[v]};
      }
      if (colored()) {
        sig[e].push_back(a->color[e]);
        sig[e].push_back(a->color[g.tau[e]]);
      }
    }
    return rank_of(sig);
  }

  void refine(std::vector<int>& cell) {
    int n = count_cells(cell);
    while (true) {
      std::vector<std::vector<int>> sig(g.ne());
      for (int e = 0; e < g.ne(); ++e) {
        sig[e] = {cell[e], cell[g.tau[e]]};
        int v = g.vertex_of(e);
        if (v >= 0) {
          std::vector<int> sib;
          for (int h : g.halves[v]) sib.push_back(cell[g.s[h]]);
          std::sort(sib.begin(), sib.end());
          sig[e].insert(sig[e].end(), sib.begin(), sib.end());
        }
      }
      cell = rank_of(sig);
      int m = count_cells(cell);
      if (m == n) return;
      n = m;
    }
  }

  std::string encode(const std::vector<int>& lab) {
    int ne = g.ne();
    std::vector<int> at(ne);
    for (int e = 0; e < ne; ++e) at[lab[e]] = e;
    std::vector<int> vid(g.nv, -1);
    std::vector<int> vorder;
    for (int i = 0; i < ne; ++i) {
      int v = g.vertex_of(at[i]);
      if (v >= 0 && vid[v] < 0) {
        vid[v] = static_cast<int>(vorder.size());
        vorder.push_back(v);
      }
    }
    std::string s = "E" + std::to_string(ne) + "X" + std::to_string(portlist.size()) + ":";
    for (int i = 0; i < ne; ++i) {
      int e = at[i];
      int v = g.vertex_of(e);
      s += std::to_string(lab[g.tau[e]]) + "/" + (v < 0 ? std::string("-") : std::to_string(vid[v]));
      if (colored()) s += "/" + std::to_string(a->color[e]);
      s += ";";
    }
    if (decorated()) {
      s += "D:";
      for (int v : vorder) {
        std::vector<int> hs = g.halves[v];
        std::vector<int> pos(hs.size());
        for (size_t i = 0; i < hs.size(); ++i) pos[i] = static_cast<int>(i);
        std::sort(pos.begin(), pos.end(), [&](int x, int y) { return lab[g.s[hs[x]]] < lab[g.s[hs[y]]]; });
        s += act_elem(*a->sp, a->deco[v], pos)->key + ";";
      }
    }
    std::vector<std::string> iso;
    for (int v = 0; v < g.nv; ++v)
      if (vid[v] < 0) iso.push_back(decorated() ? a->deco[v]->key : std::string("."));
    std::sort(iso.begin(), iso.end());
    s += "I" + std::to_string(iso.size()) + ":";
    for (auto& x : iso) s += x + ";";
    return s;
  }

  void search(std::vector<int> cell) {
    refine(cell);
    int ne = g.ne();
    std::vector<int> cnt(ne + 1, 0);
    for (int c : cell) cnt[c]++;
    int target = -1;
    for (int c = 0; c < ne; ++c)
      if (cnt[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      if (++leaves > 2000000) fail(ErrorCode::SizeBoundExceeded, "canonical search too large");
      std::string s = encode(cell);
      if (!have || s < best) {
        best = s;
        have = true;
      }
      return;
    }
    for (int e = 0; e < ne; ++e) {
      if (cell[e] != target) continue;
      std::vector<std::vector<int>> sig(ne);
      for (int x = 0; x < ne; ++x) sig[x] = {cell[x], (cell[x] == target && x != e) ? 1 : 0};
      search(rank_of(sig));
    }
  }
};

}  // namespace

std::string canonical_form(const SGraph& a) {
  if (a.g.ne() > default_bound()) fail(ErrorCode::SizeBoundExceeded, "graph too large for canonical form");
  Canon c(a.g, a.ports, &a);
  if (a.g.ne() == 0) return c.encode({});
  c.search(c.initial());
  return c.best;
}

std::string canonical_form(const XGraph& x) {
  if (x.g.ne() > default_bound()) fail(ErrorCode::SizeBoundExceeded, "graph too large for canonical form");
  Canon c(x.g, x.ports, nullptr);
  if (x.g.ne() == 0) return c.encode({});
  c.search(c.initial());
  return c.best;
}

Perm local_perm(const Graph& a, const Graph& b, const Morphism& f, int v) {
  const auto& hs = a.halves[v];
  const auto& hb = b.halves[f.fV[v]];
  Perm p(hs.size());
  for (size_t i = 0; i < hs.size(); ++i)
    p[i] = static_cast<int>(std::find(hb.begin(), hb.end(), f.fH[hs[i]]) - hb.begin());
  return p;
}

std::vector<Morphism> structured_isomorphisms(const SGraph& a, const SGraph& b) {
  std::vector<Morphism> out;
  for (const Morphism& f : enumerate_x_isomorphisms(a.xgraph(), b.xgraph())) {
    bool ok = true;
    for (int e = 0; e < a.g.ne() && ok; ++e)
      if (!a.color.empty() && a.color[e] != b.color[f.fE[e]]) ok = false;
    for (int v = 0; v < a.g.nv && ok; ++v)
      if (!a.deco.empty() && !same(a.deco[v], act_elem(*b.sp, b.deco[f.fV[v]], local_perm(a.g, b.g, f, v)))) ok = false;
    if (ok) out.push_back(f);
  }
  return out;
}

}  // namespace mge
