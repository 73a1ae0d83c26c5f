#pragma once
#include <optional>
#include <vector>

#include "mge/graph.hpp"
#include "mge/morphism.hpp"

namespace mge {

// A path of length k is a morphism line(k) -> g, stored through its edge sequence.
struct Path {
  int k = 0;
  Morphism m;
  std::vector<int> seq() const { return m.fE; }
};
Path path_from_sequence(const Graph& g, const std::vector<int>& seq);
bool is_locally_injective_path(const Path& p);

struct Node {
  bool vertex = false;
  int id = 0;
  static Node edge(int e) { return {false, e}; }
  static Node vert(int v) { return {true, v}; }
};
bool path_contains(const Graph& g, const Path& p, Node x);

std::optional<Path> find_connecting_path(const Graph& g, Node a, Node b);
Path reduce_path(const Graph& g, const Path& p);

struct CycleReport {
  bool simply_connected = true;
  int m = 0;
  Morphism witness;  // wheel(m) -> g, locally injective
};
CycleReport is_simply_connected(const Graph& g);

struct BivalentModel {
  bool is_line = true;
  int n = 0;  // k for line(k), m for wheel(m)
  Graph model;
  Morphism iso;  // model -> g
};
BivalentModel classify_bivalent(const Graph& g);

struct Orientation {
  std::vector<char> in;  // per edge
};
void validate_orientation(const Graph& g, const Orientation& o);
Orientation theta_line(int k);
Orientation theta_wheel(int m);
bool preserves_orientation(const Morphism& f, const Orientation& a, const Orientation& b);

struct DirectedReport {
  std::vector<Path> paths;            // simple directed paths of length >= 1 (capped)
  std::vector<Morphism> cycles;       // elementary directed cycles wheel(m) -> g
  std::vector<int> cycle_lengths;
  bool is_dag = true;
};
DirectedReport directed_analysis(const Graph& g, const Orientation& o, int cap = 10000);

}  // namespace mge
