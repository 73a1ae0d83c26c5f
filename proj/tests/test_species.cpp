#include <gtest/gtest.h>

#include "mge/canonical.hpp"
#include "mge/error.hpp"
#include "mge/fixtures.hpp"
#include "mge/pointed.hpp"
#include "mge/species.hpp"
#include "support.hpp"

using namespace mge;

static std::vector<SpeciesP> fixture_species() {
  return {builtin_species("K"), builtin_species("Di"), builtin_species("cyclic"), builtin_species("bicolor")};
}

static std::vector<Graph> small_graphs() {
  std::vector<Graph> gs;
  for (auto& a : test::fixture_graphs()) gs.push_back(a.g);
  gs.push_back(line(3));
  gs.push_back(ngraph(2));
  return gs;
}

TEST(Species, FixturesAreValid) {
  for (auto& s : fixture_species()) {
    for (int n = 0; n <= s->nmax(); ++n)
      for (int i = 0; i < s->size(n); ++i)
        for (const Perm& r : all_perms(n)) {
          int j = s->act(n, r, i);
          for (int x = 0; x < n; ++x) EXPECT_EQ(s->legs(n, j)[x], s->legs(n, i)[r[x]]);
        }
  }
  auto cyc = builtin_species("cyclic");
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(cyc->size(n), static_cast<int>(factorial(n - 1)));
  auto two = terminal_species(Palette{{0, 1}, {"a", "b"}}, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(two->size(n), 1 << n);
}

TEST(Species, RejectsBrokenTables) {
  Species s;
  s.pal = monochrome();
  s.ar.resize(3);
  s.ar[0].act = {{}};
  s.ar[1].act = {{}};
  s.ar[2].names = {"x", "y"};
  s.ar[2].legs = {{0, 0}, {0, 0}};
  s.ar[2].act = {{0, 1}, {1, 1}};  // not a permutation action
  EXPECT_THROW(finalize_species(s), Error);
  EXPECT_THROW(make_species(monochrome(), {{}, {}, {"x"}}, {{}, {}, {{0, 0}}}, {{}, {}, {{1}}}), Error);
}

TEST(Species, EvaluationMatchesBruteForce) {
  for (auto& s : fixture_species())
    for (const Graph& g : small_graphs()) {
      long long n = count_species(*s, g);
      EXPECT_EQ(n, test::brute_species_count(*s, g)) << describe(g);
      auto all = evaluate_species(s, g);
      EXPECT_EQ(static_cast<long long>(all.size()), n);
      for (auto& a : all) validate_sgraph(a);
    }
  // terminal species: exactly one structure; Di: one per orientation
  for (const Graph& g : small_graphs()) {
    EXPECT_EQ(count_species(*builtin_species("K"), g), 1);
    EXPECT_EQ(count_species(*builtin_species("Di"), g), 1LL << orbits(g).size());
  }
}

TEST(Species, SheafCondition) {
  auto gs = small_graphs();
  for (auto& s : fixture_species()) {
    for (size_t i = 0; i < gs.size(); ++i)
      for (size_t j = i; j < gs.size() && j < i + 3; ++j) {
        Graph u = disjoint_union({gs[i], gs[j]}).g;
        EXPECT_EQ(count_species(*s, u), count_species(*s, gs[i]) * count_species(*s, gs[j]));
      }
    for (int n = 0; n <= s->nmax(); ++n) {
      auto all = evaluate_species(s, corolla(n));
      ASSERT_EQ(static_cast<int>(all.size()), s->size(n));
      std::vector<int> seen;
      for (auto& a : all) seen.push_back(a.deco[0]->index);
      std::sort(seen.begin(), seen.end());
      for (int i = 0; i < s->size(n); ++i) EXPECT_EQ(seen[i], i);
    }
    EXPECT_EQ(count_species(*s, stick()), s->pal.size());
  }
}

TEST(Species, MGraphStructuresArePairs) {
  for (auto& s : fixture_species()) {
    Graph m = mgraph(1, 1);  // two bivalent vertices
    long long pairs = 0;
    for (int i = 0; i < s->size(2); ++i)
      for (int j = 0; j < s->size(2); ++j) {
        // v0 legs (X†, y0) and v1 legs (Y†, x0); x0 and y0 are dual
        int cy = s->legs(2, i)[1], cx = s->legs(2, j)[1];
        if (cx == s->pal.omega[cy]) ++pairs;
      }
    EXPECT_EQ(count_species(*s, m), pairs);
  }
}

TEST(Species, ApplyD) {
  for (auto& s : fixture_species()) {
    PointedSpecies d = apply_D(s);
    int C = s->pal.size();
    int orbs = 0;
    for (int c = 0; c < C; ++c) orbs += s->pal.orbit(c) == c;
    EXPECT_EQ(d.S->size(2), s->size(2) + C);
    EXPECT_EQ(d.S->size(0), s->size(0) + orbs);
    for (int n = 1; n <= s->nmax(); ++n)
      if (n != 2) EXPECT_EQ(d.S->size(n), s->size(n));
    validate_pointed(d.S, d.eps, d.o);
    PointedSpecies dd = apply_D(d.S);
    auto mu = mu_D(d, dd);
    for (int n = 0; n <= dd.S->nmax(); ++n)
      for (int i = 0; i < dd.S->size(n); ++i) {
        int j = mu[n][i];
        ASSERT_GE(j, 0);
        EXPECT_EQ(dd.S->legs(n, i), d.S->legs(n, j));
      }
    // mu ∘ D(eta) and mu ∘ eta(D) are the identity on DS
    for (int n = 0; n <= d.S->nmax(); ++n)
      for (int i = 0; i < d.S->size(n); ++i) EXPECT_EQ(mu[n][i], i);
    for (int c = 0; c < C; ++c) EXPECT_EQ(mu[2][dd.eps[c]], d.eps[c]);
  }
}

TEST(Species, ValidatePointed) {
  auto di = builtin_species("Di");
  PointedSpecies d = apply_D(di);
  auto code = [&](std::vector<int> eps, std::vector<int> o) {
    try {
      validate_pointed(d.S, eps, o);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code({d.eps[1], d.eps[0]}, d.o), ErrorCode::UnitNotEquivariant);
  // the base (in,out) element has the right legs but its swap is not the other unit
  int io = di->with_legs(2, {0, 1})[0];
  EXPECT_EQ(code({io, d.eps[1]}, d.o), ErrorCode::UnitNotEquivariant);
  // Di itself is trivially pointed only if o is chosen omega-invariantly
  auto tdi = terminal_species(directed(), 3);
  int a = tdi->with_legs(2, {0, 1})[0], b = tdi->with_legs(2, {1, 0})[0], z = 0;
  validate_pointed(tdi, {a, b}, {z, z});
  auto k = terminal_species(monochrome(), 3);
  validate_pointed(k, {0}, {0});
  EXPECT_EQ(code({d.eps[0], d.eps[1]}, {d.o[0], d.o[0]}), ErrorCode::ParseError);
}

TEST(Species, DecompositionOverDeletions) {
  auto gs = small_graphs();
  for (auto& s : fixture_species()) {
    PointedSpecies d = apply_D(s);
    for (const Graph& g : gs) {
      bool iso = false;
      for (int v = 0; v < g.nv; ++v) iso |= g.valency(v) == 0;
      if (iso) continue;
      std::vector<int> v2;
      for (int v = 0; v < g.nv; ++v)
        if (g.valency(v) == 2) v2.push_back(v);
      long long sum = 0;
      for (unsigned mask = 0; mask < (1u << v2.size()); ++mask) {
        std::vector<int> W;
        for (size_t i = 0; i < v2.size(); ++i)
          if (mask >> i & 1) W.push_back(v2[i]);
        sum += count_species(*s, vertex_deletion(g, W).g);
      }
      EXPECT_EQ(count_species(*d.S, g), sum) << describe(g);
    }
  }
}

TEST(Species, ActionOnClasses) {
  auto s = builtin_species("cyclic");
  SGraph a = evaluate_species(s, mgraph(2, 1))[1];
  a.ports = {a.ports[2], a.ports[0], a.ports[1]};
  ElemP x = make_class(a);
  for (const Perm& r : all_perms(3))
    for (const Perm& q : all_perms(3)) {
      // contravariant action on classes
      EXPECT_TRUE(same(act_elem(*s, x, compose(r, q)), act_elem(*s, act_elem(*s, x, r), q)));
    }
  ElemP u = make_unit(0);
  EXPECT_TRUE(same(act_elem(*s, u, {1, 0}), make_unit(0)));
  auto di = builtin_species("Di");
  EXPECT_TRUE(same(act_elem(*di, make_unit(0), {1, 0}), make_unit(1)));
}
