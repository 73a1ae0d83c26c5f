#include <gtest/gtest.h>

#include "mge/error.hpp"
#include "mge/graph.hpp"
#include "support.hpp"

using namespace mge;

static ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

TEST(GraphCore, RejectsBadDiagrams) {
  EXPECT_EQ(code_of([] { make_graph({0}, {}, {}, 0); }), ErrorCode::FixedPointInvolution);
  EXPECT_EQ(code_of([] { make_graph({1, 2, 0}, {}, {}, 0); }), ErrorCode::NotAnInvolution);
  EXPECT_EQ(code_of([] { make_graph({1, 0}, {0, 0}, {0, 0}, 1); }), ErrorCode::NonInjectiveAttach);
  EXPECT_EQ(code_of([] { make_graph({1, 0}, {0}, {3}, 1); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([] { corolla(-1); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { wheel(0); }), ErrorCode::InvalidParameter);
}

TEST(GraphCore, StandardConstructions) {
  Graph s = stick();
  EXPECT_EQ(s.ne(), 2);
  EXPECT_EQ(ports(s).size(), 2u);
  EXPECT_TRUE(inner_orbits(s).empty());

  Graph c = corolla(3);
  EXPECT_EQ(ports(c), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(c.valency(0), 3);

  Graph l = line(3);
  EXPECT_EQ(l.ne(), 8);
  EXPECT_EQ(ports(l), (std::vector<int>{0, 7}));
  EXPECT_EQ(inner_orbits(l).size(), 2u);

  Graph w = wheel(3);
  EXPECT_TRUE(ports(w).empty());
  EXPECT_EQ(inner_orbits(w).size(), 3u);
  for (int v = 0; v < 3; ++v) EXPECT_EQ(w.valency(v), 2);

  Graph m = mgraph(2, 3);
  EXPECT_EQ(ports(m).size(), 5u);
  ASSERT_EQ(inner_orbits(m).size(), 1u);
  int x0 = 10, y0 = 11;
  EXPECT_EQ(inner_orbits(m)[0], x0);
  EXPECT_EQ(m.tau[x0], y0);
  EXPECT_EQ(m.vertex_of(y0), 0);  // E_{v_X} = X† ⊔ {y0}
  EXPECT_EQ(m.vertex_of(x0), 1);

  Graph n = ngraph(2);
  auto ev = n.edges_at(0);
  EXPECT_NE(std::find(ev.begin(), ev.end(), 4), ev.end());
  EXPECT_NE(std::find(ev.begin(), ev.end(), 5), ev.end());
  EXPECT_EQ(ports(n).size(), 2u);
}

TEST(GraphCore, Components) {
  Union u = disjoint_union({stick(), wheel(1)});
  EXPECT_EQ(connected_components(u.g).size(), 2u);
  EXPECT_EQ(connected_components(corolla(4)).size(), 1u);
  EXPECT_EQ(connected_components(disjoint_union({}).g).size(), 0u);
  Union v = disjoint_union({corolla(2), wheel(1)});
  EXPECT_EQ(v.g.ne(), 6);
  EXPECT_EQ(v.g.nv, 2);
  auto comps = connected_components(disjoint_union({stick(), stick()}).g);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_TRUE(comps[0].is_stick && comps[1].is_stick);
}

TEST(GraphCore, Invariants) {
  auto fx = test::fixture_graphs();
  for (const auto& a : fx) {
    const Graph& g = a.g;
    for (int e = 0; e < g.ne(); ++e) {
      EXPECT_EQ(g.tau[g.tau[e]], e);
      EXPECT_NE(g.tau[e], e);
    }
    // E = E_0 ⊔ ⨿_n E_n
    int graded = static_cast<int>(ports(g).size());
    for (int v = 0; v < g.nv; ++v) graded += g.valency(v);
    EXPECT_EQ(graded, g.ne()) << a.name;
    // stick components <-> orbits inside E_0
    int sticks = 0, port_orbits = 0;
    for (auto& c : connected_components(g)) sticks += c.is_stick;
    for (int e : orbits(g)) port_orbits += g.is_port(e) && g.is_port(g.tau[e]);
    EXPECT_EQ(sticks, port_orbits) << a.name;
    // inclusions of components are valid morphisms
    for (auto& c : connected_components(g)) EXPECT_TRUE(is_valid_morphism(c.g, g, c.incl));
  }
  for (size_t i = 0; i < fx.size(); ++i)
    for (size_t j = 0; j < fx.size(); ++j) {
      size_t n = connected_components(fx[i].g).size() + connected_components(fx[j].g).size();
      EXPECT_EQ(connected_components(disjoint_union({fx[i].g, fx[j].g}).g).size(), n);
    }
}
