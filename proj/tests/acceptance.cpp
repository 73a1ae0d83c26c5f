// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Counts are exact (tolerance 0). The process fails only when a criterion outside
// kKnownUnattainable fails; those are computed in full and reported as FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "mge/canonical.hpp"
#include "mge/colimits.hpp"
#include "mge/fixtures.hpp"
#include "mge/monads.hpp"
#include "mge/nerve.hpp"
#include "mge/operad.hpp"
#include "mge/pointed.hpp"
#include "mge/topology.hpp"
#include "support.hpp"

using namespace mge;
using namespace mge::test;

namespace {

constexpr long long kTolerance = 0;  // every count is compared exactly
const std::set<int> kKnownUnattainable = {1, 6, 9};

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& s) { notes.push_back("     " + s); }
};

bool exact(long long got, long long want) { return std::llabs(got - want) <= kTolerance; }

std::string str(long long a) { return std::to_string(a); }

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Named> ten_graphs() {
  std::vector<Named> r;
  for (auto& n : fixture_graphs())
    if (n.name != "c0") r.push_back(n);
  return r;
}

// ---- 1 ----
Criterion hom_counts() {
  Criterion c{1, "hom-count oracles"};
  bool ok = true;
  for (int k = 0; k <= 5; ++k)
    for (int n = k; n <= 5; ++n) ok &= exact(enumerate_etale(line(k), line(n)).size(), 2 * (n - k + 1));
  c.check(ok, "|etGr(L^k, L^n)| = 2(n-k+1), 0 <= k <= n <= 5");
  ok = true;
  for (int k = 0; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m) ok &= exact(enumerate_etale(line(k), wheel(m)).size(), 2 * m);
  c.check(ok, "|etGr(L^k, W^m)| = 2m, k <= 4, 1 <= m <= 4");
  ok = true;
  for (int l = 1; l <= 6; ++l)
    for (int m = 1; m <= 6; ++m) ok &= exact(enumerate_etale(wheel(l), wheel(m)).size(), l % m == 0 ? 2 * m : 0);
  c.check(ok, "|etGr(W^l, W^m)| = 2m iff m | l (else 0), l, m <= 6");
  std::vector<Named> five = {{"line2", line(2)}, {"wheel2", wheel(2)}, {"theta", theta_graph()},
                             {"tadpole", tadpole_graph()}, {"mgraph12", mgraph(1, 2)}};
  bool claim = true, orbits = true;
  for (const auto& [name, g] : five) {
    long long n = enumerate_morphisms(g, wheel(1), false).size();
    claim &= exact(n, 1LL << g.ne());
    orbits &= exact(n, 1LL << (g.ne() / 2));
    c.note(name + ": |Gr(g, W^1)| = " + str(n) + ", 2^|E| = " + str(1LL << g.ne()) + ", 2^|E|/2 = " +
           str(1LL << (g.ne() / 2)));
  }
  c.check(claim, "|Gr(g, W^1)| = 2^|E(g)| on 5 fixtures");
  c.check(orbits, "(one choice per tau-orbit) |Gr(g, W^1)| = 2^(|E(g)|/2) on the same fixtures");
  c.check(exact(enumerate_star_morphisms(wheel(1), stick()).size(), 2), "|Gr*(W^1, stick)| = 2");
  ok = true;
  for (const auto& [name, g] : ten_graphs()) {
    if (g.ne() > 8) continue;
    for (int k = 0; k <= 4; ++k) {
      long long formula = 0;
      for (int j = 0; j <= k; ++j) formula += binom(k, j) * static_cast<long long>(enumerate_etale(line(j), g).size());
      long long brute = enumerate_star_morphisms(line(k), g).size();
      if (!exact(brute, formula)) {
        ok = false;
        c.note(name + " k=" + str(k) + ": enumerated " + str(brute) + ", formula " + str(formula));
      }
    }
  }
  c.check(ok, "|Gr*(L^k, g)| = sum_j C(k,j) |Gr(L^j, g)|, k <= 4, against enumeration");
  return c;
}

// ---- 2 ----
// All fixed-point-free involutions on 2n attached edges plus p port edges.
void matchings(std::vector<int>& tau, int from, const std::function<void()>& emit) {
  int n = static_cast<int>(tau.size());
  while (from < n && tau[from] >= 0) ++from;
  if (from == n) {
    emit();
    return;
  }
  for (int j = from + 1; j < n; ++j)
    if (tau[j] < 0) {
      tau[from] = j;
      tau[j] = from;
      matchings(tau, from + 1, emit);
      tau[from] = tau[j] = -1;
    }
}

Criterion bivalent() {
  Criterion c{2, "bivalent classification"};
  long long seen = 0, verified = 0;
  std::map<std::string, long long> models;
  bool ok = true;
  for (int n = 0; n <= 4; ++n)
    for (int p = 0; 2 * n + p <= 8; ++p) {
      if ((2 * n + p) % 2) continue;
      std::vector<int> tau(2 * n + p, -1), s, t;
      for (int h = 0; h < 2 * n; ++h) {
        s.push_back(h);
        t.push_back(h / 2);
      }
      matchings(tau, 0, [&] {
        Graph g = make_graph(tau, s, t, n);
        if (!is_connected(g) || g.ne() == 0) return;
        ++seen;
        BivalentModel m = classify_bivalent(g);
        bool good = is_valid_morphism(m.model, g, m.iso) && classify(m.model, g, m.iso).iso;
        good &= m.is_line ? (p == 2 && m.n == n) : (p == 0 && m.n == n);
        if (good) ++verified;
        ok &= good;
        ++models[(m.is_line ? "L" : "W") + str(m.n)];
      });
    }
  std::string dist;
  for (const auto& [k, v] : models) dist += k + ":" + str(v) + " ";
  c.note("generated " + str(seen) + " labelled graphs; models " + dist);
  c.check(ok && seen > 0, str(verified) + "/" + str(seen) + " classified with a verified isomorphism");
  return c;
}

// ---- 3 ----
Criterion sheaf_identity() {
  Criterion c{3, "sheaf/limit identity"};
  auto gs = ten_graphs();
  for (const std::string& name : {"K", "bicolor", "cyclic"}) {
    SpeciesP S = builtin_species(name, 4);
    bool prod = true, corollas = true, dsum = true;
    for (size_t i = 0; i < gs.size(); ++i)
      for (size_t j = i; j < gs.size(); ++j) {
        Graph u = disjoint_union({gs[i].g, gs[j].g}).g;
        prod &= exact(count_species(*S, u), count_species(*S, gs[i].g) * count_species(*S, gs[j].g));
      }
    for (int n = 0; n <= 4; ++n) corollas &= exact(count_species(*S, corolla(n)), S->size(n));
    PointedSpecies D = apply_D(S);
    for (const auto& [gname, g] : gs) {
      std::vector<int> v2;
      for (int v = 0; v < g.nv; ++v)
        if (g.valency(v) == 2) v2.push_back(v);
      long long sum = 0;
      for (int mask = 0; mask < (1 << v2.size()); ++mask) {
        std::vector<int> W;
        for (size_t b = 0; b < v2.size(); ++b)
          if (mask >> b & 1) W.push_back(v2[b]);
        sum += count_species(*S, vertex_deletion(g, W).g);
      }
      long long ds = count_species(*D.S, g);
      if (!exact(ds, sum)) c.note(name + " " + gname + ": |DS(g)| = " + str(ds) + ", subset sum " + str(sum));
      dsum &= exact(ds, sum);
    }
    c.check(prod, name + ": |S(g + g')| = |S(g)| |S(g')| on all pairs of 10 graphs");
    c.check(corollas, name + ": |S(C_n)| = |S_n|, n <= 4");
    c.check(dsum, name + ": |DS(g)| = sum over bivalent subsets W of |S(g minus W)|");
  }
  return c;
}

// ---- 4 ----
Criterion monad_laws() {
  Criterion c{4, "monad laws for T and T*"};
  const int fuel = 200;
  for (const auto& name : builtin_species_names()) {
    SpeciesP S = builtin_species(name, 4);
    for (int star = 0; star < 2; ++star) {
      LawReport r = star ? check_T_star_laws(apply_D(S), fuel, 7) : check_T_laws(S, fuel, 7);
      bool enough = true;
      for (const auto& [law, n] : r.checked)
        if (law.find("mu") != std::string::npos) enough &= n >= fuel;
      c.check(r.ok() && enough, name + (star ? " T*: " : " T: ") + str(r.checked.size()) + " laws, " +
                                    str(fuel) + " samples each" + (r.ok() ? "" : "\n" + r.summary()));
    }
  }
  return c;
}

// ---- 5 ----
Criterion distributive() {
  Criterion c{5, "distributive law"};
  SpeciesP S = builtin_species("bicolor", 4);
  c.check(S->pal.omega[0] != 0, "fixture palette has c != omega c");
  LawReport good = check_beck_axioms(S, 200, 11);
  c.check(good.ok() && good.checked.size() >= 4, "four Beck axioms hold on 200 samples each");
  LawReport bad = check_beck_axioms(S, 40, 11, true);
  const std::string pentagon = "pentagon: lambda . T mu^D = mu^D T . D lambda . lambda D";
  bool wheel_witness = false;
  for (const auto& f : bad.failures)
    if (f.law == pentagon && f.witness.find("X=0") != std::string::npos &&
        f.witness.find("unit(c=") != std::string::npos) {
      if (!wheel_witness) c.note("witness: " + f.witness);
      wheel_witness = true;
    }
  c.check(bad.failed(pentagon) && wheel_witness, "broken lambda fails the pentagon on a degenerate unit wheel");
  c.check(!bad.failed("lambda . eta^T D = D eta^T") && !bad.failed("lambda . T eta^D = eta^D T"),
          "broken lambda still passes both unit axioms");
  return c;
}

// ---- 6 ----
struct PlanSurvey {
  long long graphs = 0, structures = 0, plans = 0, dependent = 0;
  std::string example;
};

// Every connected graph with <= 3 vertices of valency <= 4, <= 2 ports and <= 5 inner orbits
// whose merged corollas stay inside the finite tables, every decoration by genus 0 or 1.
std::vector<XGraph> survey_graphs(int nmax) {
  std::vector<XGraph> r;
  for (int ports = 0; ports <= 2; ++ports)
    for (const XGraph& x : enumerate_xgraphs(ports, 3, {0, 1, 2, 3, 4})) {
      if (inner_orbits(x.g).size() > 5 || inner_orbits(x.g).empty()) continue;
      int legs = 0;
      for (int v = 0; v < x.g.nv; ++v) legs += x.g.valency(v);
      if (x.g.nv > 1 && legs - 2 > nmax) continue;
      r.push_back(x);
    }
  return r;
}

PlanSurvey survey_plans(const OperadPresentation& P, const std::vector<XGraph>& graphs) {
  PlanSurvey s;
  for (const XGraph& x : graphs) {
    ++s.graphs;
    for (int mask = 0; mask < (1 << x.g.nv); ++mask) {
      SGraph a;
      a.sp = P.S;
      a.g = x.g;
      a.ports = x.ports;
      a.color.assign(x.g.ne(), 0);
      for (int v = 0; v < x.g.nv; ++v) a.deco.push_back(P.S->elem(x.g.valency(v), (mask >> v) & 1));
      OrderReport r = evaluate_all_orders(P, a, 5);
      ++s.structures;
      s.plans += r.plans;
      if (!r.agree) {
        ++s.dependent;
        if (s.example.empty()) s.example = canonical_form(a);
      }
    }
  }
  return s;
}

Criterion axioms_vs_orders() {
  Criterion c{6, "axioms iff order-independence"};
  OperadPresentation genus = builtin_presentation("genus");
  AxiomReport ga = check_axioms(genus);
  c.check(ga.ok(), "genus (+, successor) passes every axiom");
  std::vector<XGraph> graphs = survey_graphs(genus.S->nmax());
  PlanSurvey gs = survey_plans(genus, graphs);
  c.check(gs.dependent == 0 && gs.structures > 0,
          "genus: " + str(gs.structures) + " structured graphs on " + str(gs.graphs) + " graphs, " + str(gs.plans) +
              " plans, all agree");
  OperadPresentation noinc = builtin_presentation("genus-noinc");
  AxiomReport na = check_axioms(noinc);
  PlanSurvey ns = survey_plans(noinc, graphs);
  c.check(na.failed("M4 parallel multiplication"), "successor without increment fails M4");
  c.check(ns.dependent > 0, "successor without increment: " + str(ns.dependent) + " plan-dependent evaluations of " +
                                str(ns.structures));
  // the corruption that does break M4: colour-dependent contraction weights
  OperadPresentation w = builtin_presentation("weighted");
  AxiomReport wa = check_axioms(w);
  bool only_m4 = wa.failed("M4 parallel multiplication");
  for (const auto& f : wa.failures) only_m4 &= f.axiom == "M4 parallel multiplication";
  c.note(std::string("weighted contraction: fails ") + (only_m4 ? "only M4" : "more than M4"));
  Graph d = make_graph({6, 4, 5, 7, 1, 2, 0, 3}, {0, 1, 2, 3, 4, 5}, {0, 0, 0, 1, 1, 1}, 2);
  SGraph a;
  a.sp = w.S;
  a.g = d;
  a.ports = ports(d);
  a.color = {0, 0, 1, 0, 0, 1, 0, 0};
  int aab = w.S->with_legs(3, {0, 0, 1})[0];
  a.deco = {w.S->elem(3, aab), w.S->elem(3, aab)};
  OrderReport r = evaluate_all_orders(w, a, 5);
  if (!r.agree)
    c.note("weighted contraction on the a/b double edge: plans disagree (" + describe(r.a) + " vs " + describe(r.b) +
           ")");
  return c;
}

// ---- 7 ----
Criterion units() {
  Criterion c{7, "unit behaviour"};
  for (const std::string& name : {"genus", "weighted", "terminal"}) {
    OperadPresentation P = builtin_presentation(name);
    const Species& S = *P.S;
    bool right = true;
    long long n_checked = 0;
    for (int n = 1; n < S.nmax(); ++n)
      for (int x = 0; x < S.size(n); ++x)
        for (int i = 0; i < n; ++i) {
          int col = S.legs(n, x)[i];
          int e = P.eps[S.pal.omega[col]];  // legs (omega c, c)
          auto r = P.multiply(n, x, i, 2, e, 0);
          // result legs: those of x without i, then the unit's remaining leg in place of i
          Perm sigma;
          for (int k = 0; k < n; ++k)
            if (k != i) sigma.push_back(k);
          sigma.push_back(i);
          int want = S.ar[n].act[perm_rank(sigma)][x];
          right &= r && *r == want;
          ++n_checked;
        }
    c.check(right, name + ": phi . eps_c = phi on " + str(n_checked) + " (element, leg) pairs");
    auto ps = P.pointed();
    Pointing pt = pointing_of(*ps);
    bool wheels = true;
    for (int col = 0; col < S.pal.size(); ++col)
      for (int m = 1; m <= 4; ++m) {
        ElemP v = evaluate(P, wheel_of_units(P.S, m, col, pt));
        wheels &= v->kind == Elem::Kind::Base && v->arity == 0 && v->index == ps->o[col];
      }
    c.check(wheels, name + ": evaluate(W^m(eps_c)) = o_c for 1 <= m <= 4 and every colour");
  }
  PointedSpecies d = apply_D(builtin_species("bicolor", 4));
  Pointing pt = pointing_of(d);
  int c0 = 0, c1 = d.S->pal.omega[0];
  bool ident = true, sep = true;
  for (int m = 1; m <= 4; ++m)
    for (int m2 = 1; m2 <= 4; ++m2)
      ident &= similarity_equal(wheel_of_units(d.S, m, c0, pt), wheel_of_units(d.S, m2, c1, pt), pt);
  for (int k = 0; k <= 3; ++k)
    for (int k2 = 0; k2 <= 3; ++k2)
      sep &= !similarity_equal(line_of_units(d.S, k, c0, pt), line_of_units(d.S, k2, c1, pt), pt);
  c.check(ident, "(|, c) ~ (|, omega c) at arity 0 (unit wheels of either colour)");
  c.check(sep, "(|, c) and (|, omega c) differ at arity 2 (unit lines)");
  return c;
}

// ---- 8 ----
Criterion segal() {
  Criterion c{8, "Segal suite"};
  std::vector<std::pair<std::string, Graph>> fx = {
      {"mgraph", mgraph(1, 2)}, {"ngraph", ngraph(2)},   {"wheel2", wheel(2)},       {"line2", line(2)},
      {"theta", theta_graph()}, {"tadpole", tadpole_graph()}, {"corolla3", corolla(3)}, {"stick", stick()}};
  OperadPresentation op = builtin_presentation("genus");
  FinitePresheaf P = nerve_presheaf(op, fx);
  bool ok = true;
  for (const auto& [g, _] : fx) {
    SegalReport r = segal_check(P, g);
    ok &= r.ok;
    c.note(g + ": |P(G)| = " + str(r.values) + ", matching families " + str(r.families));
  }
  c.check(ok, "nerve of the genus presentation satisfies the Segal condition on 8 graphs");
  auto func = check_functoriality(P);
  c.check(func.empty(), "restrictions compose; collapse maps restrict to the ports");
  long long drops = 0, named = 0;
  bool dup = true, changed = true;
  for (const std::string G : {"mgraph", "ngraph", "wheel2", "line2", "theta", "tadpole"}) {
    int N = static_cast<int>(P.values.at(G).size());
    for (int y = 0; y < N; ++y) {
      FinitePresheaf Q = P;
      Q.values[G].erase(Q.values[G].begin() + y);
      for (auto& m : Q.maps)
        if (m.tgt == G) m.table.erase(m.table.begin() + y);
      SegalReport r = segal_check(Q, G);
      ++drops;
      if (!r.ok && !r.diagnostics.empty() && r.diagnostics[0].rfind("missing family", 0) == 0) ++named;
    }
    FinitePresheaf D = P;
    D.values[G].push_back(D.values[G][0] + "'");
    for (auto& m : D.maps)
      if (m.tgt == G) m.table.push_back(m.table[0]);
    SegalReport d = segal_check(D, G);
    dup &= !d.ok && d.diagnostics[0].find("duplicated family") != std::string::npos;
    FinitePresheaf C = P;
    for (auto& m : C.maps)
      if (m.tgt == G && m.name == "ch_v0") {
        m.table[0] = (m.table[0] + 1) % static_cast<int>(C.values.at(m.src).size());
        break;
      }
    SegalReport cr = segal_check(C, G);
    changed &= !cr.ok && !cr.diagnostics.empty();
  }
  c.check(drops > 0 && named == drops, "each dropped element is named as a missing family (" + str(named) + "/" +
                                           str(drops) + ")");
  c.check(dup, "each duplicated element is named as a duplicated family");
  c.check(changed, "each changed restriction entry is reported");
  bool connected = true;
  long long cats = 0;
  for (const std::string& name : {"K", "bicolor", "cyclic"}) {
    PointedSpecies ps = apply_D(builtin_species(name, 3));
    for (int n = 0; n <= 3; ++n)
      for (int x = 0; x < ps.S->size(n); ++x) {
        FactorizationReport r = factorization_category(ps, corolla_structure(ps.S, ps.S->elem(n, x), n), 3, true);
        connected &= r.connected();
        ++cats;
      }
  }
  c.check(connected, "pointed factorisation categories are connected (" + str(cats) + " categories)");
  PointedSpecies yh = upsilon(stick());
  SGraph beta = corolla_structure(yh.S, yh.S->elem(0, yh.o[0]), 0);
  FactorizationReport up = factorization_category(yh, beta, 3, false);
  FactorizationReport pt = factorization_category(yh, beta, 3, true);
  c.check(up.components == 2, "unpointed counterexample: " + up.summary());
  c.check(pt.connected(), "same object, pointed: " + pt.summary());
  return c;
}

// ---- 9 ----
std::vector<Orientation> orientations(const Graph& g) {
  std::vector<int> orb = orbits(g);
  std::vector<Orientation> r;
  for (int mask = 0; mask < (1 << orb.size()); ++mask) {
    Orientation o;
    o.in.assign(g.ne(), 0);
    for (size_t b = 0; b < orb.size(); ++b) {
      o.in[orb[b]] = mask >> b & 1;
      o.in[g.tau[orb[b]]] = !(mask >> b & 1);
    }
    r.push_back(o);
  }
  return r;
}

Criterion dags() {
  Criterion c{9, "DAG suite"};
  struct Oriented {
    std::string name;
    Graph g;
    Orientation o;
  };
  std::vector<Oriented> fx;
  std::vector<Named> base = {{"line1", line(1)},   {"line2", line(2)},   {"line3", line(3)},
                             {"wheel1", wheel(1)}, {"wheel2", wheel(2)}, {"wheel3", wheel(3)},
                             {"wheel4", wheel(4)}, {"corolla3", corolla(3)}, {"theta", theta_graph()},
                             {"mgraph11", mgraph(1, 1)}, {"tadpole", tadpole_graph()}};
  for (const auto& [name, g] : base) {
    if (g.ne() > 8 || !is_connected(g)) continue;
    int k = 0;
    for (const Orientation& o : orientations(g)) {
      if (directed_analysis(g, o).is_dag) fx.push_back({name + "/o" + str(k), g, o});
      ++k;
    }
  }
  long long maps = 0, monos = 0;
  std::string witness;
  for (const auto& a : fx)
    for (const auto& b : fx)
      for (const Morphism& f : enumerate_etale(a.g, b.g)) {
        if (!preserves_orientation(f, a.o, b.o)) continue;
        ++maps;
        if (classify(a.g, b.g, f).mono) {
          ++monos;
        } else if (witness.empty()) {
          std::ostringstream os;
          os << a.name << " -> " << b.name << " fE=[";
          for (size_t i = 0; i < f.fE.size(); ++i) os << (i ? "," : "") << f.fE[i];
          os << "]";
          witness = os.str();
        }
      }
  c.note(str(fx.size()) + " oriented DAG fixtures, " + str(maps) + " orientation-preserving etale maps");
  if (!witness.empty()) c.note("first non-mono: " + witness);
  c.check(monos == maps, "every etale map between connected DAGs is a monomorphism (" + str(monos) + "/" + str(maps) +
                             ")");
  bool cyc = true;
  for (int m = 1; m <= 4; ++m) cyc &= !directed_analysis(wheel(m), theta_wheel(m)).is_dag;
  c.check(cyc, "wheels with the cyclic orientation are detected as non-DAG (m <= 4)");
  return c;
}

}  // namespace

int main() {
  std::vector<std::function<Criterion()>> all = {hom_counts, bivalent,  sheaf_identity, monad_laws, distributive,
                                                 axioms_vs_orders, units, segal, dags};
  int unexpected = 0;
  for (auto& run : all) {
    Criterion c{0, ""};
    auto t0 = std::chrono::steady_clock::now();
    try {
      c = run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.notes.push_back(std::string("FAIL exception: ") + e.what());
      c.id = static_cast<int>(&run - &all[0]) + 1;
    }
    std::cout << "CRITERION " << c.id << " " << (c.pass ? "PASS" : "FAIL") << " " << c.title;
    if (!c.pass && kKnownUnattainable.count(c.id)) std::cout << " (known unattainable, see README)";
    char took[32];
    std::snprintf(took, sizeof took, " [%.1fs]",
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    std::cout << took << "\n";
    for (const auto& n : c.notes) std::cout << "  " << n << "\n";
    if (!c.pass && !kKnownUnattainable.count(c.id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
