#include <cstdint>
#include "mge/species.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "mge/canonical.hpp"
#include "mge/error.hpp"

namespace mge {

Palette monochrome() { return Palette{{0}, {"*"}}; }
Palette directed() { return Palette{{1, 0}, {"in", "out"}}; }

const std::vector<int>& Species::with_legs(int n, const std::vector<int>& cols) const {
  static const std::vector<int> none;
  if (n > nmax()) return none;
  auto it = by_legs[n].find(cols);
  return it == by_legs[n].end() ? none : it->second;
}

ElemP Species::elem(int n, int i) const {
  if (n < 0 || n > nmax() || i < 0 || i >= size(n))
    fail(ErrorCode::UnknownElement, "no element " + std::to_string(i) + " of arity " + std::to_string(n));
  return elems[n][i];
}

int Species::find(int n, const std::string& name) const {
  if (n > nmax()) return -1;
  const auto& v = ar[n].names;
  auto it = std::find(v.begin(), v.end(), name);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

SpeciesP finalize_species(Species s) {
  const Palette& p = s.pal;
  for (int c = 0; c < p.size(); ++c)
    if (p.omega[c] < 0 || p.omega[c] >= p.size() || p.omega[p.omega[c]] != c)
      fail(ErrorCode::InvalidParameter, "palette map is not an involution");
  s.by_legs.assign(s.ar.size(), {});
  s.elems.assign(s.ar.size(), {});
  for (int n = 0; n <= s.nmax(); ++n) {
    auto& a = s.ar[n];
    int m = static_cast<int>(a.names.size());
    if (static_cast<int>(a.legs.size()) != m) fail(ErrorCode::InvalidParameter, "leg table size mismatch");
    auto perms = all_perms(n);
    if (static_cast<long long>(a.act.size()) != static_cast<long long>(perms.size()))
      fail(ErrorCode::InvalidParameter, "action table size mismatch at arity " + std::to_string(n));
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(a.legs[i].size()) != n) fail(ErrorCode::InvalidParameter, "leg tuple has wrong length");
      for (int c : a.legs[i])
        if (c < 0 || c >= p.size()) fail(ErrorCode::IndexOutOfRange, "leg colour out of range");
    }
    for (size_t r = 0; r < perms.size(); ++r) {
      for (int i = 0; i < m; ++i) {
        int j = a.act[r][i];
        if (j < 0 || j >= m) fail(ErrorCode::IndexOutOfRange, "action value out of range");
        for (int x = 0; x < n; ++x)
          if (a.legs[j][x] != a.legs[i][perms[r][x]])
            fail(ErrorCode::InvalidParameter, "leg colours are not equivariant at arity " + std::to_string(n));
      }
    }
    // contravariant action: act(r∘q) = act(q) after act(r)
    for (size_t r = 0; r < perms.size(); ++r)
      for (size_t q = 0; q < perms.size(); ++q) {
        int rq = perm_rank(compose(perms[r], perms[q]));
        for (int i = 0; i < m; ++i)
          if (a.act[rq][i] != a.act[q][a.act[r][i]])
            fail(ErrorCode::InvalidParameter, "action is not a group action at arity " + std::to_string(n));
        if (n > 4) break;  // composition law spot-checked for large arities
      }
    for (int i = 0; i < m; ++i) s.by_legs[n][a.legs[i]].push_back(i);
  }
  auto sp = std::make_shared<Species>(std::move(s));
  for (int n = 0; n <= sp->nmax(); ++n)
    for (int i = 0; i < sp->size(n); ++i) {
      auto e = std::make_shared<Elem>();
      e->kind = Elem::Kind::Base;
      e->arity = n;
      e->index = i;
      e->key = "b" + std::to_string(n) + "." + std::to_string(i);
      sp->elems[n].push_back(e);
    }
  return sp;
}

SpeciesP make_species(Palette pal, std::vector<std::vector<std::string>> names,
                      std::vector<std::vector<std::vector<int>>> legs,
                      std::vector<std::vector<std::vector<int>>> gens) {
  Species s;
  s.pal = std::move(pal);
  int nmax = static_cast<int>(names.size()) - 1;
  s.ar.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    auto& a = s.ar[n];
    a.names = names[n];
    a.legs = legs[n];
    int m = static_cast<int>(a.names.size());
    auto perms = all_perms(n);
    a.act.assign(perms.size(), {});
    a.act[0].resize(m);
    for (int i = 0; i < m; ++i) a.act[0][i] = i;
    if (n >= 2 && static_cast<int>(gens[n].size()) != n - 1)
      fail(ErrorCode::InvalidParameter, "need n-1 generator tables at arity " + std::to_string(n));
    std::deque<Perm> q{identity_perm(n)};
    std::vector<char> done(perms.size(), 0);
    done[0] = 1;
    while (!q.empty()) {
      Perm r = q.front();
      q.pop_front();
      int rr = perm_rank(r);
      for (int g = 0; g + 1 < n; ++g) {
        Perm sg = identity_perm(n);
        std::swap(sg[g], sg[g + 1]);
        Perm nr = compose(r, sg);
        int k = perm_rank(nr);
        std::vector<int> tab(m);
        for (int i = 0; i < m; ++i) {
          int j = a.act[rr][i];
          if (static_cast<int>(gens[n][g].size()) != m) fail(ErrorCode::InvalidParameter, "generator table size");
          tab[i] = gens[n][g][j];
        }
        if (done[k]) {
          if (a.act[k] != tab) fail(ErrorCode::InvalidParameter, "generator tables violate the symmetric group relations");
          continue;
        }
        done[k] = 1;
        a.act[k] = tab;
        q.push_back(nr);
      }
    }
  }
  return finalize_species(std::move(s));
}

SpeciesP terminal_species(const Palette& p, int nmax) {
  Species s;
  s.pal = p;
  s.ar.resize(nmax + 1);
  int C = p.size();
  for (int n = 0; n <= nmax; ++n) {
    auto& a = s.ar[n];
    std::vector<int> t(n, 0);
    std::map<std::vector<int>, int> idx;
    while (true) {
      idx[t] = static_cast<int>(a.legs.size());
      std::string nm;
      for (int c : t) nm += (nm.empty() ? "" : ",") + p.names[c];
      a.names.push_back("(" + nm + ")");
      a.legs.push_back(t);
      int k = 0;
      while (k < n && ++t[k] == C) t[k++] = 0;
      if (k == n) break;
    }
    for (const Perm& r : all_perms(n)) {
      std::vector<int> tab;
      for (const auto& x : a.legs) {
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = x[r[i]];
        tab.push_back(idx.at(y));
      }
      a.act.push_back(tab);
    }
  }
  return finalize_species(std::move(s));
}

SpeciesP trivial_action_species(int nmax, int per_arity) {
  Species s;
  s.pal = monochrome();
  s.ar.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    auto& a = s.ar[n];
    for (int g = 0; g < per_arity; ++g) {
      a.names.push_back(std::to_string(g));
      a.legs.push_back(std::vector<int>(n, 0));
    }
    std::vector<int> id(per_arity);
    for (int g = 0; g < per_arity; ++g) id[g] = g;
    a.act.assign(factorial(n), id);
  }
  return finalize_species(std::move(s));
}

ElemP make_unit(int c, int level) {
  auto e = std::make_shared<Elem>();
  e->kind = Elem::Kind::Unit;
  e->arity = 2;
  e->color = c;
  e->level = level;
  e->key = "u" + std::to_string(level) + "." + std::to_string(c);
  return e;
}

ElemP make_cunit(const Palette& p, int c, int level) {
  auto e = std::make_shared<Elem>();
  e->kind = Elem::Kind::CUnit;
  e->arity = 0;
  e->color = p.orbit(c);
  e->level = level;
  e->key = "o" + std::to_string(level) + "." + std::to_string(e->color);
  return e;
}

ElemP make_cunit_raw(int c, int level) {
  auto e = std::make_shared<Elem>();
  e->kind = Elem::Kind::CUnit;
  e->color = c;
  e->level = level;
  e->raw = true;
  e->key = "o" + std::to_string(level) + ".r" + std::to_string(c);
  return e;
}

ElemP make_class(SGraph rep) {
  auto e = std::make_shared<Elem>();
  e->kind = Elem::Kind::Class;
  e->arity = static_cast<int>(rep.ports.size());
  e->key = "g{" + canonical_form(rep) + "}";
  e->rep = std::make_shared<SGraph>(std::move(rep));
  return e;
}

int leg_color(const Palette& p, const Elem& x, int i) {
  switch (x.kind) {
    case Elem::Kind::Base: fail(ErrorCode::InvalidParameter, "base element needs its species");
    case Elem::Kind::Unit: return i == 0 ? x.color : p.omega[x.color];
    case Elem::Kind::CUnit: fail(ErrorCode::IndexOutOfRange, "contracted unit has no legs");
    case Elem::Kind::Class: return x.rep->color[x.rep->ports[i]];
  }
  return -1;
}

static int leg_color_sp(const SpeciesP& sp, const Elem& x, int i) {
  if (x.kind == Elem::Kind::Base) return sp->legs(x.arity, x.index)[i];
  return leg_color(sp->pal, x, i);
}

std::vector<int> leg_colors(const Palette& p, const Elem& x) {
  std::vector<int> r;
  for (int i = 0; i < x.arity; ++i) r.push_back(leg_color(p, x, i));
  return r;
}

namespace {
std::mutex act_mu;
std::unordered_map<std::string, ElemP> act_cache;
}  // namespace

ElemP act_elem(const Species& s, const ElemP& x, const Perm& sigma) {
  bool id = true;
  for (size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] != static_cast<int>(i)) id = false;
  if (id) return x;
  switch (x->kind) {
    case Elem::Kind::Base: return s.elem(x->arity, s.act(x->arity, sigma, x->index));
    case Elem::Kind::Unit: {
      auto e = make_unit(s.pal.omega[x->color], x->level);
      return e;
    }
    case Elem::Kind::CUnit: return x;
    case Elem::Kind::Class: {
      // keys name base elements by index only, so the species is part of the cache key; the
      // cached value keeps the species alive and its address unique
      std::string ck = std::to_string(reinterpret_cast<std::uintptr_t>(x->rep->sp.get())) + "|" + x->key + "|";
      for (int v : sigma) ck += std::to_string(v) + ",";
      {
        std::lock_guard<std::mutex> lk(act_mu);
        auto it = act_cache.find(ck);
        if (it != act_cache.end()) return it->second;
      }
      SGraph r = *x->rep;
      std::vector<int> np(r.ports.size());
      for (size_t i = 0; i < np.size(); ++i) np[i] = x->rep->ports[sigma[i]];
      r.ports = np;
      ElemP e = make_class(std::move(r));
      std::lock_guard<std::mutex> lk(act_mu);
      if (act_cache.size() > 200000) act_cache.clear();
      act_cache[ck] = e;
      return e;
    }
  }
  return x;
}

bool same(const ElemP& a, const ElemP& b) { return a->key == b->key; }

SGraph relabel_sgraph(const SGraph& a, const std::vector<int>& ep, const std::vector<int>& vp,
                      const std::vector<int>& hp) {
  SGraph r;
  r.g = relabel(a.g, ep, vp, hp);
  r.sp = a.sp;
  r.color.assign(a.g.ne(), 0);
  for (int e = 0; e < a.g.ne(); ++e) r.color[ep[e]] = a.color[e];
  for (int p : a.ports) r.ports.push_back(ep[p]);
  r.deco.assign(a.g.nv, nullptr);
  for (int v = 0; v < a.g.nv; ++v) {
    const auto& oh = a.g.halves[v];
    const auto& nh = r.g.halves[vp[v]];
    Perm pi(oh.size());
    for (size_t i = 0; i < nh.size(); ++i)
      for (size_t j = 0; j < oh.size(); ++j)
        if (hp[oh[j]] == nh[i]) pi[i] = static_cast<int>(j);
    r.deco[vp[v]] = act_elem(*a.sp, a.deco[v], pi);
  }
  validate_sgraph(r);
  return r;
}

int outward_color(const SGraph& a, int h) { return a.color[a.g.tau[a.g.s[h]]]; }

void validate_sgraph(const SGraph& a) {
  const Graph& g = a.g;
  const Palette& p = a.sp->pal;
  if (static_cast<int>(a.color.size()) != g.ne()) fail(ErrorCode::ColorMismatch, "colouring has wrong size");
  if (static_cast<int>(a.deco.size()) != g.nv) fail(ErrorCode::ColorMismatch, "decoration list has wrong size");
  std::vector<int> pp = ports(g), q = a.ports;
  std::sort(q.begin(), q.end());
  if (pp != q) fail(ErrorCode::LabelMismatch, "labels are not a bijection onto the ports");
  for (int e = 0; e < g.ne(); ++e) {
    if (a.color[e] < 0 || a.color[e] >= p.size()) fail(ErrorCode::ColorMismatch, "colour out of range");
    if (a.color[g.tau[e]] != p.omega[a.color[e]])
      fail(ErrorCode::ColorMismatch, "edge " + std::to_string(e) + ": colours of an orbit are not dual");
  }
  for (int v = 0; v < g.nv; ++v) {
    const Elem& x = *a.deco[v];
    if (x.arity != g.valency(v))
      fail(ErrorCode::ColorMismatch, "vertex " + std::to_string(v) + ": decoration arity differs from valency");
    for (int i = 0; i < x.arity; ++i)
      if (leg_color_sp(a.sp, x, i) != outward_color(a, g.halves[v][i]))
        fail(ErrorCode::ColorMismatch, "vertex " + std::to_string(v) + " leg " + std::to_string(i) +
                                           ": decoration colour differs from edge colour");
  }
}

namespace {

template <class F>
void for_each_coloring(const Graph& g, const Palette& p, F&& f) {
  std::vector<int> orb = orbits(g);
  std::vector<int> col(g.ne(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == orb.size()) {
      f(col);
      return;
    }
    int e = orb[i];
    for (int c = 0; c < p.size(); ++c) {
      col[e] = c;
      col[g.tau[e]] = p.omega[c];
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<int> vertex_legs(const Graph& g, const std::vector<int>& col, int v) {
  std::vector<int> r;
  for (int h : g.halves[v]) r.push_back(col[g.tau[g.s[h]]]);
  return r;
}

}  // namespace

long long count_species(const Species& s, const Graph& g) {
  long long total = 0;
  for (int v = 0; v < g.nv; ++v)
    if (g.valency(v) > s.nmax()) fail(ErrorCode::SizeBoundExceeded, "vertex valency exceeds the species' maximal arity");
  for_each_coloring(g, s.pal, [&](const std::vector<int>& col) {
    long long prod = 1;
    for (int v = 0; v < g.nv && prod; ++v) prod *= static_cast<long long>(s.with_legs(g.valency(v), vertex_legs(g, col, v)).size());
    total += prod;
  });
  return total;
}

std::vector<SGraph> evaluate_species(const SpeciesP& s, const Graph& g, long long limit) {
  long long n = count_species(*s, g);
  if (n > limit) fail(ErrorCode::SizeBoundExceeded, std::to_string(n) + " structures exceed the limit");
  std::vector<SGraph> out;
  for_each_coloring(g, s->pal, [&](const std::vector<int>& col) {
    std::vector<const std::vector<int>*> cand(g.nv);
    for (int v = 0; v < g.nv; ++v) cand[v] = &s->with_legs(g.valency(v), vertex_legs(g, col, v));
    std::vector<int> pick(g.nv, 0);
    std::function<void(int)> rec = [&](int v) {
      if (v == g.nv) {
        SGraph a;
        a.g = g;
        a.ports = ports(g);
        a.color = col;
        a.sp = s;
        for (int w = 0; w < g.nv; ++w) a.deco.push_back(s->elem(g.valency(w), (*cand[w])[pick[w]]));
        out.push_back(std::move(a));
        return;
      }
      for (size_t i = 0; i < cand[v]->size(); ++i) {
        pick[v] = static_cast<int>(i);
        rec(v + 1);
      }
    };
    rec(0);
  });
  return out;
}

SGraph corolla_structure(const SpeciesP& s, const ElemP& x, int n) {
  SGraph a;
  a.g = corolla(n);
  a.sp = s;
  a.ports = ports(a.g);
  a.color.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    int c = x->kind == Elem::Kind::Base ? s->legs(n, x->index)[i] : leg_color(s->pal, *x, i);
    a.color[i] = c;
    a.color[n + i] = s->pal.omega[c];
  }
  a.deco = {x};
  return a;
}

bool PointedSpecies::is_eps(int n, int i) const {
  return n == 2 && std::find(eps.begin(), eps.end(), i) != eps.end();
}
bool PointedSpecies::is_o(int n, int i) const { return n == 0 && std::find(o.begin(), o.end(), i) != o.end(); }

PointedSpecies apply_D(const SpeciesP& s) {
  Species d;
  d.pal = s->pal;
  d.ar = s->ar;
  const Palette& p = s->pal;
  int C = p.size();
  if (d.nmax() < 2) d.ar.resize(3);
  for (int n = 1; n <= 2; ++n)
    if (d.ar[n].act.empty()) d.ar[n].act.assign(factorial(n), {});
  if (d.ar[0].act.empty()) d.ar[0].act.assign(1, {});
  PointedSpecies ps;
  auto& a2 = d.ar[2];
  int base2 = static_cast<int>(a2.names.size());
  for (int c = 0; c < C; ++c) {
    a2.names.push_back("eps+" + p.names[c]);
    a2.legs.push_back({c, p.omega[c]});
    ps.eps.push_back(base2 + c);
  }
  a2.act[0].resize(base2 + C);
  for (int c = 0; c < C; ++c) {
    a2.act[0][base2 + c] = base2 + c;
    a2.act[1].push_back(base2 + p.omega[c]);
  }
  auto& a0 = d.ar[0];
  int base0 = static_cast<int>(a0.names.size());
  std::map<int, int> orb;
  for (int c = 0; c < C; ++c) {
    int r = p.orbit(c);
    if (!orb.count(r)) {
      orb[r] = static_cast<int>(a0.names.size());
      a0.names.push_back("o+" + p.names[r]);
      a0.legs.push_back({});
      a0.act[0].push_back(orb[r]);
    }
    ps.o.push_back(orb[r]);
  }
  (void)base0;
  ps.S = finalize_species(std::move(d));
  return ps;
}

std::vector<std::vector<int>> mu_D(const PointedSpecies& ds, const PointedSpecies& dds) {
  std::vector<std::vector<int>> m(dds.S->ar.size());
  for (int n = 0; n <= dds.S->nmax(); ++n) {
    for (int i = 0; i < dds.S->size(n); ++i) m[n].push_back(i < ds.S->size(n) ? i : -1);
  }
  for (size_t c = 0; c < dds.eps.size(); ++c) m[2][dds.eps[c]] = ds.eps[c];
  for (size_t c = 0; c < dds.o.size(); ++c) m[0][dds.o[c]] = ds.o[c];
  return m;
}

PointedSpecies validate_pointed(const SpeciesP& s, const std::vector<int>& eps, const std::vector<int>& o) {
  const Palette& p = s->pal;
  int C = p.size();
  if (static_cast<int>(eps.size()) != C || static_cast<int>(o.size()) != C)
    fail(ErrorCode::InvalidParameter, "unit maps must be defined on every colour");
  for (int c = 0; c < C; ++c) {
    if (eps[c] < 0 || eps[c] >= s->size(2)) fail(ErrorCode::UnknownElement, "unit outside arity 2");
    if (o[c] < 0 || o[c] >= s->size(0)) fail(ErrorCode::UnknownElement, "contracted unit outside arity 0");
    if (s->legs(2, eps[c]) != std::vector<int>{c, p.omega[c]})
      fail(ErrorCode::UnitNotEquivariant, "unit for colour " + p.names[c] + " has the wrong leg colours");
    if (s->act(2, {1, 0}, eps[c]) != eps[p.omega[c]])
      fail(ErrorCode::UnitNotEquivariant, "unit of the dual colour is not the swapped unit");
    if (o[c] != o[p.omega[c]]) fail(ErrorCode::ContractedUnitNotOmegaInvariant, "o(c) != o(omega c)");
  }
  for (int c = 0; c < C; ++c)
    for (int d = c + 1; d < C; ++d)
      if (eps[c] == eps[d]) fail(ErrorCode::UnitNotInjective, "two colours share a unit");
  return PointedSpecies{s, eps, o};
}

}  // namespace mge
