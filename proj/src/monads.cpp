#include "mge/monads.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "mge/colimits.hpp"
#include "mge/error.hpp"

namespace mge {

SGraph substitute(const SGraph& base, const std::vector<SGraph>& pieces) {
  const Graph& b = base.g;
  if (static_cast<int>(pieces.size()) != b.nv) fail(ErrorCode::InvalidParameter, "one piece per vertex expected");
  GraphOfGraphs gg;
  gg.base = b;
  for (int v = 0; v < b.nv; ++v) {
    const SGraph& p = pieces[v];
    if (p.g.nv == 0) fail(ErrorCode::DegenerateRepresentative, "piece at vertex " + std::to_string(v) + " has no vertex");
    if (static_cast<int>(p.ports.size()) != b.valency(v))
      fail(ErrorCode::LabelMismatch, "piece at vertex " + std::to_string(v) + " has the wrong arity");
    for (int i = 0; i < b.valency(v); ++i)
      if (p.color[p.ports[i]] != outward_color(base, b.halves[v][i]))
        fail(ErrorCode::ColorMismatch, "piece at vertex " + std::to_string(v) + " port " + std::to_string(i) +
                                           ": colour differs from the base graph");
    gg.pieces.push_back(p.xgraph());
  }
  Colimit c = colimit_graph_of_graphs(gg);
  SGraph r;
  r.g = c.g;
  r.sp = base.sp;
  r.color.assign(c.g.ne(), -1);
  r.deco.assign(c.g.nv, nullptr);
  for (int e = 0; e < b.ne(); ++e) r.color[c.base_edge[e]] = base.color[e];
  for (int v = 0; v < b.nv; ++v) {
    const SGraph& p = pieces[v];
    for (int e = 0; e < p.g.ne(); ++e) {
      int& slot = r.color[c.iota[v].fE[e]];
      if (slot >= 0 && slot != p.color[e]) fail(ErrorCode::ColorMismatch, "glued edge carries two colours");
      slot = p.color[e];
    }
    for (int u = 0; u < p.g.nv; ++u) r.deco[c.iota[v].fV[u]] = p.deco[u];
  }
  for (int p : base.ports) r.ports.push_back(c.base_edge[p]);
  validate_sgraph(r);
  return r;
}

ElemP eta_T(const SpeciesP& s, const ElemP& phi) {
  if (!phi) fail(ErrorCode::UnknownElement, "no element");
  return make_class(corolla_structure(s, phi, phi->arity));
}

ElemP mu_T(const ElemP& x) {
  if (x->kind != Elem::Kind::Class) return x;
  std::vector<SGraph> pieces;
  for (const ElemP& d : x->rep->deco) {
    if (d->kind != Elem::Kind::Class) fail(ErrorCode::DegenerateRepresentative, "decoration is not a graph class");
    pieces.push_back(*d->rep);
  }
  return make_class(substitute(*x->rep, pieces));
}

ElemP map_T(const ElemP& x, const ElemMap& f) {
  if (x->kind != Elem::Kind::Class) return x;
  SGraph r = *x->rep;
  for (ElemP& d : r.deco) d = f(d);
  validate_sgraph(r);
  return make_class(std::move(r));
}

ElemP map_D(const ElemP& x, const ElemMap& f) {
  if (x->kind == Elem::Kind::Unit || x->kind == Elem::Kind::CUnit) return x;
  return f(x);
}

ElemP flatten_D(const ElemP& x) {
  if (x->level != 1) return x;
  if (x->kind == Elem::Kind::Unit) return make_unit(x->color, 0);
  if (x->kind == Elem::Kind::CUnit) {
    if (x->raw) return make_cunit_raw(x->color, 0);
    auto e = std::make_shared<Elem>(*x);  // colour is already an orbit representative
    e->level = 0;
    e->key = "o0." + std::to_string(x->color);
    return e;
  }
  return x;
}

ElemP lambda_TD(const ElemP& x, int level, bool broken) {
  if (x->kind != Elem::Kind::Class) return x;
  const SGraph& a = *x->rep;
  const Palette& pal = a.sp->pal;
  Pointing pt = formal_pointing(pal, level);
  if (broken && a.ports.empty() && static_cast<int>(unit_vertices(a, pt).size()) == a.g.nv) {
    // the loop keeps whichever colour the representative shows
    if (a.g.ne() == 0) return a.deco[0];
    int c = pt.unit_color(*a.deco[0]);
    return c == pal.orbit(c) ? make_cunit(pal, c, level) : make_cunit_raw(c, level);
  }
  SimilarityClass r = reduced_representative(a, pt);
  switch (r.kind) {
    case SimilarityClass::Kind::UnitLine: return make_unit(r.color, level);
    case SimilarityClass::Kind::UnitWheel: return make_cunit(pal, r.color, level);
    case SimilarityClass::Kind::Admissible: break;
  }
  return make_class(std::move(r.rep));
}

ElemP star_class(const SGraph& a, const Pointing& below) {
  SimilarityClass r = reduced_representative(a, below);
  switch (r.kind) {
    case SimilarityClass::Kind::UnitLine: return make_unit(r.color, 0);
    case SimilarityClass::Kind::UnitWheel: return make_cunit(a.sp->pal, r.color, 0);
    case SimilarityClass::Kind::Admissible: break;
  }
  return make_class(std::move(r.rep));
}

ElemP star_eta(const SpeciesP& s, const ElemP& phi, const Pointing& below) {
  if (!phi) fail(ErrorCode::UnknownElement, "no element");
  return star_class(corolla_structure(s, phi, phi->arity), below);
}

ElemP star_mu(const ElemP& x, const Pointing& below) {
  if (x->kind != Elem::Kind::Class) return x;
  const SpeciesP& sp = x->rep->sp;
  std::vector<SGraph> pieces;
  for (const ElemP& d : x->rep->deco) {
    switch (d->kind) {
      case Elem::Kind::Class: pieces.push_back(*d->rep); break;
      case Elem::Kind::Unit: pieces.push_back(corolla_structure(sp, below.unit(d->color), 2)); break;
      case Elem::Kind::CUnit: pieces.push_back(corolla_structure(sp, below.cunit(d->color), 0)); break;
      case Elem::Kind::Base: fail(ErrorCode::DegenerateRepresentative, "decoration is not a graph class");
    }
  }
  return star_class(substitute(*x->rep, pieces), below);
}

ElemP star_map(const ElemP& x, const ElemMap& f, const Pointing& out) {
  if (x->kind != Elem::Kind::Class) return x;
  SGraph r = *x->rep;
  for (ElemP& d : r.deco) d = f(d);
  validate_sgraph(r);
  return star_class(r, out);
}

bool star_equal(const ElemP& a, const ElemP& b) { return a->key == b->key; }

ElemP TStar::eta(const ElemP& phi) const { return star_eta(ps.S, phi, pointing_of(ps)); }
ElemP TStar::mu(const ElemP& x) const { return star_mu(x, pointing_of(ps)); }
ElemP TStar::cls(const SGraph& a) const { return star_class(a, pointing_of(ps)); }
TStar t_star(const PointedSpecies& ps) { return TStar{ps}; }

std::string describe(const ElemP& x) {
  std::ostringstream os;
  switch (x->kind) {
    case Elem::Kind::Base: os << x->key; break;
    case Elem::Kind::Unit: os << "unit(c=" << x->color << ",level=" << x->level << ")"; break;
    case Elem::Kind::CUnit:
      os << "cunit(" << (x->raw ? "colour=" : "orbit=") << x->color << ",level=" << x->level << ")";
      break;
    case Elem::Kind::Class: {
      const SGraph& a = *x->rep;
      os << "[V=" << a.g.nv << " E=" << a.g.ne() << " X=" << a.ports.size() << " decos:";
      for (const ElemP& d : a.deco) os << " " << describe(d);
      os << "]";
    }
  }
  return os.str();
}

// ---- sampling ----

Graph Sampler::graph() {
  int cap = std::min(max_valency, sp->nmax());
  for (;;) {
    int nv = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    std::vector<int> owner;
    for (int v = 0; v < nv; ++v) {
      int k = std::uniform_int_distribution<int>(0, cap)(rng);
      for (int i = 0; i < k; ++i) owner.push_back(v);
    }
    int H = static_cast<int>(owner.size());
    std::vector<int> order(H);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int pairs = std::uniform_int_distribution<int>(0, H / 2)(rng);
    std::vector<int> tau(H, -1), s(H), t(H);
    for (int h = 0; h < H; ++h) {
      s[h] = h;
      t[h] = owner[h];
    }
    for (int i = 0; i < pairs; ++i) {
      tau[order[2 * i]] = order[2 * i + 1];
      tau[order[2 * i + 1]] = order[2 * i];
    }
    for (int h = 0; h < H; ++h)
      if (tau[h] < 0) {
        int e = static_cast<int>(tau.size());
        tau.push_back(h);
        tau[h] = e;
      }
    Graph g = make_graph(tau, s, t, nv);
    if (is_connected(g)) return g;
  }
}

std::optional<SGraph> Sampler::structure(const Graph& g, const std::vector<int>& unit_levels, int tries) {
  const Palette& pal = sp->pal;
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int attempt = 0; attempt < tries; ++attempt) {
    SGraph a;
    a.g = g;
    a.sp = sp;
    a.color.assign(g.ne(), -1);
    for (int e = 0; e < g.ne(); ++e)
      if (a.color[e] < 0) {
        int c = pick(pal.size());
        a.color[e] = c;
        a.color[g.tau[e]] = pal.omega[c];
      }
    bool ok = true;
    for (int v = 0; v < g.nv && ok; ++v) {
      int k = g.valency(v);
      std::vector<int> cols;
      for (int h : g.halves[v]) cols.push_back(outward_color(a, h));
      std::vector<ElemP> base, units;
      if (k <= sp->nmax())
        for (int i : sp->with_legs(k, cols))
          if (!allow || allow(sp->elem(k, i))) base.push_back(sp->elem(k, i));
      for (int L : unit_levels) {
        if (k == 2 && cols[1] == pal.omega[cols[0]]) units.push_back(make_unit(cols[0], L));
        if (k == 0)
          for (int c = 0; c < pal.size(); ++c)
            if (pal.orbit(c) == c) units.push_back(make_cunit(pal, c, L));
      }
      if (base.empty() && units.empty()) ok = false;
      else if (units.empty() || (!base.empty() && pick(2) == 0)) a.deco.push_back(base[pick(static_cast<int>(base.size()))]);
      else a.deco.push_back(units[pick(static_cast<int>(units.size()))]);
    }
    if (!ok) continue;
    std::vector<int> p = ports(g);
    std::shuffle(p.begin(), p.end(), rng);
    a.ports = p;
    validate_sgraph(a);
    return a;
  }
  return std::nullopt;
}

SGraph Sampler::structure(const std::vector<int>& unit_levels) {
  for (;;) {
    auto a = structure(graph(), unit_levels);
    if (a) return *a;
  }
}

ElemP Sampler::element(const std::vector<int>& unit_levels) {
  int top = std::min(3, sp->nmax());
  for (;;) {
    int n = std::uniform_int_distribution<int>(0, top)(rng);
    auto a = structure(corolla(n), unit_levels, 4);
    if (a) return a->deco[0];
  }
}

SGraph Sampler::nest(const SGraph& a) {
  const Graph& g = a.g;
  std::optional<Contraction> con;
  for (int attempt = 0; attempt < 30 && !con; ++attempt) {
    int nb = std::uniform_int_distribution<int>(1, g.nv)(rng);
    std::vector<int> block(g.nv);
    for (int& b : block) b = std::uniform_int_distribution<int>(0, nb - 1)(rng);
    std::vector<int> id(nb, -1);
    int k = 0;
    for (int& b : block) {
      if (id[b] < 0) id[b] = k++;
      b = id[b];
    }
    try {
      con = contract_partition(g, block);
    } catch (const Error&) {
    }
  }
  if (!con) con = contract_partition(g, std::vector<int>(g.nv, 0));
  const Contraction& c = *con;
  SGraph r;
  r.g = c.gg.base;
  r.sp = a.sp;
  for (int e = 0; e < r.g.ne(); ++e) r.color.push_back(a.color[c.base_edge[e]]);
  for (int p : a.ports)
    r.ports.push_back(static_cast<int>(std::find(c.base_edge.begin(), c.base_edge.end(), p) - c.base_edge.begin()));
  for (int B = 0; B < r.g.nv; ++B) {
    const XGraph& x = c.gg.pieces[B];
    SGraph p;
    p.g = x.g;
    p.ports = x.ports;
    p.sp = a.sp;
    for (int e : c.piece_edge[B]) p.color.push_back(a.color[e]);
    for (int u : c.piece_vertex[B]) p.deco.push_back(a.deco[u]);
    validate_sgraph(p);
    r.deco.push_back(make_class(std::move(p)));
  }
  validate_sgraph(r);
  return r;
}

ElemP Sampler::reshuffle(const ElemP& x) {
  if (x->kind != Elem::Kind::Class) return x;
  const SGraph& a = *x->rep;
  auto perm = [&](int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  };
  SGraph r = relabel_sgraph(a, perm(a.g.ne()), perm(a.g.nv), perm(a.g.nh()));
  for (ElemP& d : r.deco) d = reshuffle(d);
  return make_class(std::move(r));
}

SGraph reverse_halves(const SGraph& a) {
  const Graph& g = a.g;
  std::vector<int> ep(g.ne()), vp(g.nv), hp(g.nh());
  std::iota(ep.begin(), ep.end(), 0);
  std::iota(vp.begin(), vp.end(), 0);
  for (int v = 0; v < g.nv; ++v) {
    const auto& hs = g.halves[v];
    for (size_t i = 0; i < hs.size(); ++i) hp[hs[i]] = hs[hs.size() - 1 - i];
  }
  return relabel_sgraph(a, ep, vp, hp);
}

// ---- law checking ----

bool LawReport::failed(const std::string& law) const {
  return std::any_of(failures.begin(), failures.end(), [&](const LawFailure& f) { return f.law == law; });
}

std::string LawReport::summary() const {
  std::ostringstream os;
  for (auto& [law, n] : checked) os << law << ": " << n << " checked\n";
  for (auto& f : failures) os << "FAIL " << f.law << " on " << f.witness << "\n  lhs " << f.lhs << "\n  rhs " << f.rhs << "\n";
  return os.str();
}

namespace {

struct Checker {
  LawReport rep;
  std::map<std::string, int> index;

  void count(const std::string& law) {
    auto it = index.find(law);
    if (it == index.end()) {
      index[law] = static_cast<int>(rep.checked.size());
      rep.checked.push_back({law, 0});
      it = index.find(law);
    }
    ++rep.checked[it->second].second;
  }
  // Both sides are evaluated on every representative; all values must agree.
  void check(const std::string& law, const std::vector<ElemP>& reps, const ElemMap& lhs, const ElemMap& rhs) {
    count(law);
    if (rep.failed(law) && rep.failures.size() > 20) return;
    std::vector<ElemP> vals;
    for (const ElemP& r : reps) {
      vals.push_back(lhs(r));
      vals.push_back(rhs(r));
    }
    for (const ElemP& v : vals)
      if (v->key != vals[0]->key) {
        rep.failures.push_back({law, describe(reps[0]), describe(vals[0]), describe(v)});
        return;
      }
  }
};

std::vector<ElemP> representatives(Sampler& smp, const ElemP& x) {
  std::vector<ElemP> r{x};
  if (x->kind != Elem::Kind::Class) return r;
  r.push_back(make_class(reverse_halves(*x->rep)));
  r.push_back(smp.reshuffle(x));
  r.push_back(smp.reshuffle(x));
  return r;
}

ElemP with_deco(SGraph a, int v, ElemP d) {
  a.deco[v] = std::move(d);
  validate_sgraph(a);
  return make_class(std::move(a));
}

}  // namespace

LawReport check_T_laws(const SpeciesP& s, int fuel, std::uint64_t seed) {
  Sampler smp(s, seed);
  Checker ck;
  ElemMap eta = [&](const ElemP& d) { return eta_T(s, d); };
  ElemMap id = [](const ElemP& d) { return d; };
  for (int i = 0; i < fuel; ++i) {
    SGraph G = smp.structure({});
    ElemP x = make_class(G);
    auto reps = representatives(smp, x);
    ck.check("mu . eta T = id", reps, [&](const ElemP& r) { return mu_T(eta_T(s, r)); }, id);
    ck.check("mu . T eta = id", reps, [&](const ElemP& r) { return mu_T(map_T(r, eta)); }, id);
    ElemP y = make_class(smp.nest(G));
    ck.check("mu flattens a partition", representatives(smp, y), mu_T, [&](const ElemP&) { return x; });
    ElemP z = make_class(smp.nest(*y->rep));
    ck.check("mu . mu T = mu . T mu", representatives(smp, z), [](const ElemP& r) { return mu_T(mu_T(r)); },
             [](const ElemP& r) { return mu_T(map_T(r, mu_T)); });
  }
  return ck.rep;
}

LawReport check_beck_axioms(const SpeciesP& s, int fuel, std::uint64_t seed, bool broken) {
  Sampler smp(s, seed);
  Checker ck;
  const Palette& pal = s->pal;
  ElemMap lam0 = [broken](const ElemP& x) { return lambda_TD(x, 0, broken); };
  ElemMap lam1 = [broken](const ElemP& x) { return lambda_TD(x, 1, broken); };
  ElemMap eta = [&](const ElemP& d) { return eta_T(s, d); };
  ElemMap id = [](const ElemP& d) { return d; };
  ElemMap pent_l = [&](const ElemP& r) { return lam0(map_T(r, flatten_D)); };
  ElemMap pent_r = [&](const ElemP& r) { return flatten_D(map_D(lam1(r), lam0)); };
  const std::string pentagon = "pentagon: lambda . T mu^D = mu^D T . D lambda . lambda D";

  // the degenerate wheels: every vertex an outer unit, possibly mixed with inner units
  for (int c = 0; c < pal.size(); ++c)
    for (int m = 1; m <= 2; ++m) {
      SGraph w = wheel_of_units(s, m, c, formal_pointing(pal, 1));
      ElemP x = make_class(w);
      ck.check(pentagon, representatives(smp, x), pent_l, pent_r);
      if (m == 2) ck.check(pentagon, representatives(smp, with_deco(w, 1, make_unit(c, 0))), pent_l, pent_r);
    }

  for (int i = 0; i < fuel; ++i) {
    ElemP d = smp.element({0});
    ck.check("lambda . eta^T D = D eta^T", {d}, [&](const ElemP& r) { return lam0(eta_T(s, r)); },
             [&](const ElemP& r) { return map_D(r, eta); });

    ElemP x = make_class(smp.structure({}));
    ck.check("lambda . T eta^D = eta^D T", representatives(smp, x), lam0, id);

    SGraph G = smp.structure({0});
    ElemP y = make_class(smp.nest(G));
    ck.check("lambda . mu^T D = D mu^T . lambda T . T lambda", representatives(smp, y),
             [&](const ElemP& r) { return lam0(mu_T(r)); },
             [&](const ElemP& r) { return map_D(lam0(map_T(r, lam0)), mu_T); });

    ElemP t = make_class(smp.structure({0, 1}));
    ck.check(pentagon, representatives(smp, t), pent_l, pent_r);

    // similar inputs have equal images
    ElemP u = make_class(G);
    if (G.g.ne() > 0) {
      int e = std::uniform_int_distribution<int>(0, G.g.ne() - 1)(smp.rng);
      ElemP u2 = make_class(insert_unit_vertex(G, e, formal_pointing(pal, 0)));
      ck.check("lambda is constant on similarity classes", representatives(smp, u), lam0,
               [&](const ElemP&) { return lam0(u2); });
    }
  }
  return ck.rep;
}

LawReport check_T_star_laws(const PointedSpecies& ps, int fuel, std::uint64_t seed) {
  const SpeciesP& S = ps.S;
  Sampler smp(S, seed);
  Checker ck;
  Pointing below = pointing_of(ps);
  Pointing f0 = formal_pointing(S->pal, 0);
  ElemMap mu1 = [&](const ElemP& r) { return star_mu(r, below); };
  ElemMap eta1 = [&](const ElemP& d) { return star_eta(S, d, below); };
  ElemMap id = [](const ElemP& d) { return d; };
  auto lift = [&](const SGraph& n, const Pointing& pt) {
    SGraph r = n;
    for (ElemP& d : r.deco) d = star_class(*d->rep, pt);
    validate_sgraph(r);
    return r;
  };
  for (int i = 0; i < fuel; ++i) {
    SGraph G = smp.structure({});
    ElemP y = star_class(G, below);
    ElemP yr = y->kind == Elem::Kind::Class ? smp.reshuffle(y) : y;
    ck.check("mu* . eta* T* = id", {y, yr}, [&](const ElemP& r) { return mu1(star_eta(S, r, f0)); },
             [&](const ElemP&) { return y; });
    ck.check("mu* . T* eta* = id", {y, yr}, [&](const ElemP& r) { return mu1(star_map(r, eta1, f0)); },
             [&](const ElemP&) { return y; });

    SGraph N1 = lift(smp.nest(G), below);
    ElemP w = star_class(N1, f0);
    ck.check("mu* flattens a partition", {w, make_class(N1)}, mu1, [&](const ElemP&) { return y; });

    SGraph N2 = lift(smp.nest(N1), f0);
    ElemP z = star_class(N2, f0);
    ck.check("mu* . mu* T* = mu* . T* mu*", {z, make_class(N2)},
             [&](const ElemP& r) { return mu1(star_mu(r, f0)); },
             [&](const ElemP& r) { return mu1(star_map(r, mu1, f0)); });

    if (G.g.ne() > 0) {
      int e = std::uniform_int_distribution<int>(0, G.g.ne() - 1)(smp.rng);
      SGraph G2 = insert_unit_vertex(G, e, below);
      ck.check("similar structures have equal classes", {y}, id, [&](const ElemP&) { return star_class(G2, below); });
    }
  }
  return ck.rep;
}

}  // namespace mge
