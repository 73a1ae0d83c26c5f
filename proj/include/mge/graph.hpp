#pragma once
#include <string>
#include <vector>

namespace mge {

// E <-s- H -t-> V with a fixed-point-free involution tau on E and s injective.
struct Graph {
  std::vector<int> tau;  // E -> E
  std::vector<int> s;    // H -> E
  std::vector<int> t;    // H -> V
  int nv = 0;

  // derived by finalize()
  std::vector<int> half_of;              // E -> H, or -1 for ports
  std::vector<std::vector<int>> halves;  // V -> halves, ascending

  int ne() const { return static_cast<int>(tau.size()); }
  int nh() const { return static_cast<int>(s.size()); }
  bool attached(int e) const { return half_of[e] >= 0; }
  bool is_port(int e) const { return half_of[e] < 0; }
  int vertex_of(int e) const { return half_of[e] < 0 ? -1 : t[half_of[e]]; }
  int valency(int v) const { return static_cast<int>(halves[v].size()); }
  std::vector<int> edges_at(int v) const;  // E_v in half order

  bool operator==(const Graph& o) const {
    return tau == o.tau && s == o.s && t == o.t && nv == o.nv;
  }
};

// Validates and fills derived data; throws mge::Error.
Graph make_graph(std::vector<int> tau, std::vector<int> s, std::vector<int> t, int nv);
void validate_graph(const Graph& g);

std::vector<int> ports(const Graph& g);         // ascending
std::vector<int> inner_orbits(const Graph& g);  // min edge of each inner orbit, ascending
std::vector<int> orbits(const Graph& g);        // min edge of each orbit
bool is_inner(const Graph& g, int e);
int orbit_rep(const Graph& g, int e);

// A morphism of graphs is a triple of maps commuting with s, t, tau.
struct Morphism {
  std::vector<int> fE, fH, fV;
  bool operator==(const Morphism& o) const { return fE == o.fE && fH == o.fH && fV == o.fV; }
  bool operator<(const Morphism& o) const {
    if (fE != o.fE) return fE < o.fE;
    if (fV != o.fV) return fV < o.fV;
    return fH < o.fH;
  }
};

// Standard graphs.
Graph stick();
Graph isolated_vertex();
Graph corolla(int n);     // ports 0..n-1, attached n..2n-1, tau(i)=n+i
Graph line(int k);        // edges l_0..l_{2k+1}; ports l_0, l_{2k+1}
Graph wheel(int m);       // edges a_1..a_{2m} stored at 0..2m-1
Graph mgraph(int a, int b);
Graph ngraph(int n);

struct Union {
  Graph g;
  std::vector<Morphism> incl;
};
Union disjoint_union(const std::vector<Graph>& gs);

struct Component {
  Graph g;
  Morphism incl;  // component -> whole graph
  bool is_stick = false;
};
std::vector<Component> connected_components(const Graph& g);
bool is_connected(const Graph& g);
// component id per edge and per vertex
void component_ids(const Graph& g, std::vector<int>& edge_comp, std::vector<int>& vert_comp, int& ncomp);

// Isomorphic copy: edge e becomes ep[e], vertex v becomes vp[v], half h becomes hp[h] (identity if empty).
Graph relabel(const Graph& g, const std::vector<int>& ep, const std::vector<int>& vp,
              const std::vector<int>& hp = {});

std::string describe(const Graph& g);

}  // namespace mge
