#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "mge/colimits.hpp"
#include "mge/error.hpp"
#include "support.hpp"

using namespace mge;

static int code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return -1;
}

TEST(Gluing, StandardExamples) {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      Union u = disjoint_union({corolla(a + 1), corolla(b + 1)});
      GluingDatum d{u.g, {u.incl[0].fE[a]}, {u.incl[1].fE[b]}};
      Glued r = coequalize_gluing(d);
      EXPECT_TRUE(test::isomorphic(r.g, mgraph(a, b)));
      auto c = classify(u.g, r.g, r.proj);
      EXPECT_TRUE(c.etale);
      EXPECT_TRUE(c.weak_mono);
      EXPECT_EQ(r.g.nh(), u.g.nh());
      EXPECT_EQ(r.g.nv, u.g.nv);
      EXPECT_EQ(inner_orbits(r.g).size(), 1u);
    }
  for (int n = 0; n <= 2; ++n) {
    Graph c = corolla(n + 2);
    Glued r = coequalize_gluing({c, {n}, {n + 1}});
    EXPECT_TRUE(test::isomorphic(r.g, ngraph(n)));
  }
  for (int m = 1; m <= 4; ++m) {
    Glued r = coequalize_gluing({line(m), {0}, {2 * m + 1}});
    EXPECT_TRUE(test::isomorphic(r.g, wheel(m)));
  }
}

TEST(Gluing, RejectsBadData) {
  auto bad = static_cast<int>(ErrorCode::NotAGluingDatum);
  EXPECT_EQ(code_of([] { coequalize_gluing({corolla(3), {0}, {3}}); }), bad);          // not a port
  EXPECT_EQ(code_of([] { coequalize_gluing({corolla(3), {0}, {0}}); }), bad);          // images meet
  EXPECT_EQ(code_of([] { coequalize_gluing({corolla(3), {0, 0}, {1, 2}}); }), bad);    // not injective
  Graph withstick = disjoint_union({corolla(2), stick()}).g;
  EXPECT_EQ(code_of([&] { coequalize_gluing({withstick, {0}, {1}}); }), bad);
}

TEST(Breaking, Examples) {
  Broken w = break_edges(wheel(1), {0});
  EXPECT_TRUE(test::isomorphic(w.g, corolla(2)));
  auto c = classify(w.g, wheel(1), w.map);
  EXPECT_TRUE(c.epi && c.weak_mono && c.etale);
  EXPECT_FALSE(c.mono);

  for (auto& a : test::fixture_graphs()) {
    Broken none = break_edges(a.g, {});
    EXPECT_EQ(none.g, a.g);
    bool has_stick = false;
    for (auto& comp : connected_components(a.g)) has_stick |= comp.is_stick;
    if (has_stick || a.g.nv == 0) continue;
    Broken all = break_edges(a.g, inner_orbits(a.g));
    std::vector<Graph> cs;
    for (int v = 0; v < a.g.nv; ++v) cs.push_back(corolla(a.g.valency(v)));
    EXPECT_TRUE(test::isomorphic(all.g, disjoint_union(cs).g)) << a.name;
    EXPECT_TRUE(inner_orbits(all.g).empty());
    EXPECT_EQ(ports(all.g).size(), ports(a.g).size() + 2 * inner_orbits(a.g).size());
  }
  EXPECT_EQ(code_of([] { break_edges(corolla(2), {0}); }), static_cast<int>(ErrorCode::NotInnerOrbit));
}

TEST(Breaking, GlueRoundTrip) {
  for (auto& a : test::fixture_graphs()) {
    auto inner = inner_orbits(a.g);
    for (unsigned mask = 0; mask < (1u << inner.size()); ++mask) {
      std::vector<int> I;
      for (size_t i = 0; i < inner.size(); ++i)
        if (mask >> i & 1) I.push_back(inner[i]);
      Broken b = break_edges(a.g, I);
      EXPECT_EQ(inner_orbits(b.g).size(), inner.size() - I.size());
      GluingDatum d{b.g, {}, {}};
      for (size_t j = 0; j < b.orbit_edges.size(); ++j) {
        d.p.push_back(a.g.ne() + 2 * static_cast<int>(j));
        d.q.push_back(a.g.ne() + 2 * static_cast<int>(j) + 1);
      }
      bool has_stick = false;
      for (auto& comp : connected_components(b.g)) has_stick |= comp.is_stick;
      if (has_stick) continue;
      Glued gl = coequalize_gluing(d);
      EXPECT_TRUE(test::isomorphic(gl.g, a.g)) << a.name << " " << mask;
    }
  }
}

TEST(GraphOfGraphs, IdentityAndContractions) {
  for (auto& a : test::fixture_graphs()) {
    Colimit c = colimit_graph_of_graphs(identity_graph_of_graphs(a.g));
    EXPECT_TRUE(test::isomorphic(c.g, a.g)) << a.name;
  }
  // every partition of the vertices of these graphs into connected blocks
  std::vector<Graph> gs = {mgraph(1, 1), test::theta(), line(3), wheel(3), ngraph(1), disjoint_union({line(2), corolla(1)}).g};
  int tried = 0;
  for (const Graph& g : gs) {
    std::vector<int> block(g.nv, 0);
    std::function<void(int, int)> rec = [&](int v, int nb) {
      if (v == g.nv) {
        Contraction ct;
        try {
          ct = contract_partition(g, block);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::NotConnected);
          return;
        }
        Colimit c = colimit_graph_of_graphs(ct.gg);
        EXPECT_TRUE(test::isomorphic(c.g, g));
        // edges: base edges plus inner edges of pieces; ports unchanged
        size_t inner = 0;
        for (auto& x : ct.gg.pieces) inner += 2 * inner_orbits(x.g).size();
        EXPECT_EQ(static_cast<size_t>(c.g.ne()), static_cast<size_t>(ct.gg.base.ne()) + inner);
        EXPECT_EQ(ports(c.g).size(), ports(ct.gg.base).size());
        EXPECT_EQ(connected_components(c.g).size(), connected_components(ct.gg.base).size());
        for (size_t v = 0; v < c.iota.size(); ++v) {
          auto cl = classify(ct.gg.pieces[v].g, c.g, c.iota[v]);
          EXPECT_TRUE(cl.etale && cl.weak_mono);
        }
        ++tried;
        return;
      }
      for (int b = 0; b <= nb; ++b) {
        block[v] = b;
        rec(v + 1, std::max(nb, b + 1));
      }
    };
    rec(0, 0);
  }
  EXPECT_GT(tried, 10);
}

TEST(GraphOfGraphs, Substitution) {
  // substitute an M-graph into the middle vertex of line(3)
  Graph base = line(3);
  GraphOfGraphs gg = identity_graph_of_graphs(base);
  gg.pieces[1] = default_labelling(mgraph(1, 1));
  ASSERT_EQ(gg.pieces[1].ports.size(), 2u);
  Colimit c = colimit_graph_of_graphs(gg);
  EXPECT_EQ(c.g.ne(), base.ne() + 2);
  EXPECT_EQ(c.g.nv, 4);
  EXPECT_TRUE(test::isomorphic(c.g, line(4)));
  // a wheel into a corolla vertex of the N-graph gives a connected result with one more cycle
  GraphOfGraphs g2 = identity_graph_of_graphs(ngraph(1));
  g2.pieces[0] = default_labelling(mgraph(2, 1));
  Colimit c2 = colimit_graph_of_graphs(g2);
  EXPECT_TRUE(is_connected(c2.g));
  EXPECT_EQ(c2.g.ne(), ngraph(1).ne() + 2);

  GraphOfGraphs deg{wheel(1), {XGraph{stick(), {0, 1}}}};
  EXPECT_TRUE(is_degenerate(deg));
  EXPECT_EQ(code_of([&] { colimit_graph_of_graphs(deg); }), static_cast<int>(ErrorCode::DegenerateGraphOfGraphs));
}

// Cocones over the pieces agreeing on glued boundaries correspond to maps out of the colimit.
TEST(GraphOfGraphs, UniversalPropertySpotCheck) {
  std::vector<std::pair<Graph, std::vector<int>>> cases = {
      {mgraph(1, 1), {0, 1}}, {line(3), {0, 0, 1}}, {test::theta(), {0, 1}}, {wheel(2), {0, 1}}};
  std::vector<Graph> targets = {wheel(1), wheel(2), mgraph(1, 1), test::theta(), corolla(3), test::tadpole()};
  for (auto& [g, block] : cases) {
    Contraction ct = contract_partition(g, block);
    Colimit col = colimit_graph_of_graphs(ct.gg);
    const Graph& b = ct.gg.base;
    auto port_edge = [&](int h) {
      int v = b.t[h];
      const auto& hs = b.halves[v];
      return ct.gg.pieces[v].ports[std::find(hs.begin(), hs.end(), h) - hs.begin()];
    };
    for (const Graph& T : targets) {
      std::vector<std::vector<Morphism>> maps;
      for (auto& x : ct.gg.pieces) maps.push_back(enumerate_morphisms(x.g, T, false, 1 << 20));
      size_t families = 0;
      std::vector<Morphism> fam(maps.size());
      std::function<void(size_t)> rec = [&](size_t v) {
        if (v == maps.size()) {
          for (int e : inner_orbits(b)) {
            int h = b.half_of[e], h2 = b.half_of[b.tau[e]];
            int v1 = b.t[h], v2 = b.t[h2];
            const Graph& p2 = ct.gg.pieces[v2].g;
            if (fam[v1].fE[port_edge(h)] != fam[v2].fE[p2.tau[port_edge(h2)]]) return;
          }
          ++families;
          return;
        }
        for (auto& f : maps[v]) {
          fam[v] = f;
          rec(v + 1);
        }
      };
      rec(0);
      auto out = enumerate_morphisms(col.g, T, false, 1 << 20);
      EXPECT_EQ(out.size(), families);
    }
  }
}
