#include "mge/topology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "mge/error.hpp"

namespace mge {

Path path_from_sequence(const Graph& g, const std::vector<int>& seq) {
  Path p;
  p.k = static_cast<int>(seq.size()) / 2 - 1;
  p.m = validate_morphism(line(p.k), g, seq);
  return p;
}

bool is_locally_injective_path(const Path& p) {
  for (int j = 1; j <= p.k; ++j)
    if (p.m.fE[2 * j - 1] == p.m.fE[2 * j]) return false;
  return true;
}

bool path_contains(const Graph& g, const Path& p, Node x) {
  (void)g;
  if (x.vertex) return std::find(p.m.fV.begin(), p.m.fV.end(), x.id) != p.m.fV.end();
  return std::find(p.m.fE.begin(), p.m.fE.end(), x.id) != p.m.fE.end();
}

std::optional<Path> find_connecting_path(const Graph& g, Node a, Node b) {
  auto check = [&](Node x) {
    if (x.vertex ? (x.id < 0 || x.id >= g.nv) : (x.id < 0 || x.id >= g.ne()))
      fail(ErrorCode::IndexOutOfRange, "path endpoint out of range");
  };
  check(a);
  check(b);
  auto same_orbit = [&](int e, int f) { return e == f || g.tau[e] == f; };
  // close the walk at the vertex of `last`
  auto close_at = [&](std::vector<int> seq) {
    int last = seq.back();
    int w = g.vertex_of(last);
    int nxt = last;
    for (int e : g.edges_at(w))
      if (e != last) {
        nxt = e;
        break;
      }
    seq.push_back(nxt);
    seq.push_back(g.tau[nxt]);
    return path_from_sequence(g, seq);
  };
  std::vector<int> prefix;
  if (!a.vertex) {
    int e = a.id;
    if (!b.vertex && same_orbit(e, b.id)) return path_from_sequence(g, {e, g.tau[e]});
    // orient so that the walk can continue through an attached end
    prefix = g.attached(g.tau[e]) ? std::vector<int>{e, g.tau[e]} : std::vector<int>{g.tau[e], e};
    if (!g.attached(prefix.back())) {
      // a stick component contains nothing but its own orbit
      return std::nullopt;
    }
  } else {
    if (g.halves[a.id].empty()) return std::nullopt;
    int b0 = g.s[g.halves[a.id][0]];
    prefix = {g.tau[b0], b0};
    if (!b.vertex && same_orbit(b0, b.id)) return close_at(prefix);
  }
  // breadth-first search over the attached edge ending the current walk
  std::map<int, std::pair<int, int>> parent;  // last -> (previous last, edge b leaving)
  std::deque<int> q{prefix.back()};
  parent[prefix.back()] = {-1, -1};
  auto rebuild = [&](int last) {
    std::vector<int> steps;
    for (int x = last; parent[x].first >= 0; x = parent[x].first) steps.push_back(parent[x].second);
    std::reverse(steps.begin(), steps.end());
    std::vector<int> seq = prefix;
    for (int bb : steps) {
      seq.push_back(bb);
      seq.push_back(g.tau[bb]);
    }
    return seq;
  };
  while (!q.empty()) {
    int last = q.front();
    q.pop_front();
    int w = g.vertex_of(last);
    if (b.vertex && w == b.id) return close_at(rebuild(last));
    // stepping back along `last` is allowed; paths need not be locally injective
    for (int bb : g.edges_at(w)) {
      if (!b.vertex && same_orbit(bb, b.id)) {
        std::vector<int> seq = rebuild(last);
        seq.push_back(bb);
        seq.push_back(g.tau[bb]);
        return path_from_sequence(g, seq);
      }
      int nl = g.tau[bb];
      if (g.attached(nl) && !parent.count(nl)) {
        parent[nl] = {last, bb};
        q.push_back(nl);
      }
    }
  }
  return std::nullopt;
}

Path reduce_path(const Graph& g, const Path& p) {
  std::vector<int> seq = p.m.fE;
  while (true) {
    int k = static_cast<int>(seq.size()) / 2 - 1;
    int j = 0;
    for (int i = 1; i <= k; ++i)
      if (seq[2 * i - 1] == seq[2 * i]) {
        j = i;
        break;
      }
    if (j == 0) break;
    std::vector<int> nseq;
    if (j == 1) nseq.assign(seq.begin() + 2, seq.end());
    else if (j == k) nseq.assign(seq.begin(), seq.begin() + 2 * k);
    else {
      nseq.assign(seq.begin(), seq.begin() + 2 * j - 2);
      nseq.insert(nseq.end(), seq.begin() + 2 * j + 2, seq.end());
    }
    seq = nseq;
  }
  return path_from_sequence(g, seq);
}

CycleReport is_simply_connected(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::NotConnected, "graph is not connected");
  CycleReport r;
  // non-backtracking walk digraph on attached edges: x -> tau(b), b at vertex(x), b != x
  int best = -1;
  std::vector<int> best_cycle_x, best_cycle_b;
  for (int s0 = 0; s0 < g.ne(); ++s0) {
    if (!g.attached(s0)) continue;
    std::map<int, std::pair<int, int>> parent;
    std::deque<std::pair<int, int>> q{{s0, 0}};
    parent[s0] = {-1, -1};
    bool found = false;
    while (!q.empty() && !found) {
      auto [x, d] = q.front();
      q.pop_front();
      if (best >= 0 && d + 1 >= best) break;
      for (int b : g.edges_at(g.vertex_of(x))) {
        if (b == x) continue;
        int nx = g.tau[b];
        if (!g.attached(nx)) continue;
        if (nx == s0) {
          std::vector<int> xs, bs;
          bs.push_back(b);
          xs.push_back(x);
          for (int y = x; parent[y].first >= 0; y = parent[y].first) {
            bs.push_back(parent[y].second);
            xs.push_back(parent[y].first);
          }
          std::reverse(xs.begin(), xs.end());
          std::reverse(bs.begin(), bs.end());
          best = static_cast<int>(xs.size());
          best_cycle_x = xs;
          best_cycle_b = bs;
          found = true;
          break;
        }
        if (!parent.count(nx)) {
          parent[nx] = {x, b};
          q.push_back({nx, d + 1});
        }
      }
    }
  }
  if (best < 0) return r;
  r.simply_connected = false;
  r.m = best;
  std::vector<int> fE(2 * best);
  for (int i = 0; i < best; ++i) {
    fE[2 * i] = best_cycle_x[i];
    fE[2 * i + 1] = best_cycle_b[i];
  }
  r.witness = validate_morphism(wheel(best), g, fE);
  return r;
}

BivalentModel classify_bivalent(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::NotConnected, "graph is not connected");
  for (int v = 0; v < g.nv; ++v)
    if (g.valency(v) != 2) fail(ErrorCode::NotBivalent, "vertex " + std::to_string(v) + " is not bivalent");
  BivalentModel r;
  std::vector<int> ps = ports(g);
  std::vector<int> seq;
  if (!ps.empty()) {
    int e = ps[0];
    seq = {e, g.tau[e]};
    while (g.attached(seq.back())) {
      int last = seq.back();
      auto es = g.edges_at(g.vertex_of(last));
      int nxt = es[0] == last ? es[1] : es[0];
      seq.push_back(nxt);
      seq.push_back(g.tau[nxt]);
    }
    r.is_line = true;
    r.n = static_cast<int>(seq.size()) / 2 - 1;
    r.model = line(r.n);
  } else {
    int x = g.s[g.halves[0][0]];
    for (int i = 0; i < g.nv; ++i) {
      auto es = g.edges_at(g.vertex_of(x));
      int b = es[0] == x ? es[1] : es[0];
      seq.push_back(x);
      seq.push_back(b);
      x = g.tau[b];
    }
    r.is_line = false;
    r.n = g.nv;
    r.model = wheel(r.n);
  }
  r.iso = validate_morphism(r.model, g, seq);
  if (!classify(r.model, g, r.iso).iso) fail(ErrorCode::NotBivalent, "walk did not produce an isomorphism");
  return r;
}

void validate_orientation(const Graph& g, const Orientation& o) {
  if (static_cast<int>(o.in.size()) != g.ne()) fail(ErrorCode::InvalidOrientation, "orientation has wrong size");
  for (int e = 0; e < g.ne(); ++e)
    if (o.in[e] == o.in[g.tau[e]])
      fail(ErrorCode::InvalidOrientation, "edge " + std::to_string(e) + " and its partner have the same direction");
}

Orientation theta_line(int k) {
  Orientation o;
  for (int i = 0; i < 2 * k + 2; ++i) o.in.push_back(i % 2 == 0);
  return o;
}

Orientation theta_wheel(int m) {
  Orientation o;
  for (int i = 0; i < 2 * m; ++i) o.in.push_back(i % 2 == 1);  // a_j is in for even j
  return o;
}

bool preserves_orientation(const Morphism& f, const Orientation& a, const Orientation& b) {
  for (size_t e = 0; e < f.fE.size(); ++e)
    if (a.in[e] != b.in[f.fE[e]]) return false;
  return true;
}

DirectedReport directed_analysis(const Graph& g, const Orientation& o, int cap) {
  validate_orientation(g, o);
  DirectedReport r;
  // darts: attached out-edges x; x -> tau(b) for in-edges b at the vertex of x
  auto succ = [&](int x) {
    std::vector<std::pair<int, int>> out;
    for (int b : g.edges_at(g.vertex_of(x)))
      if (o.in[b]) out.push_back({b, g.tau[b]});
    return out;
  };
  std::vector<int> darts;
  for (int e = 0; e < g.ne(); ++e)
    if (g.attached(e) && !o.in[e]) darts.push_back(e);

  // cycle detection by colouring DFS
  std::vector<int> state(g.ne(), 0);
  std::function<bool(int)> dfs = [&](int x) {
    state[x] = 1;
    for (auto [b, nx] : succ(x)) {
      if (!g.attached(nx)) continue;
      if (state[nx] == 1) return true;
      if (state[nx] == 0 && dfs(nx)) return true;
    }
    state[x] = 2;
    return false;
  };
  for (int x : darts)
    if (state[x] == 0 && dfs(x)) {
      r.is_dag = false;
      break;
    }

  // elementary cycles, each listed once from its smallest dart
  for (int s0 : darts) {
    std::vector<int> xs{s0}, bs;
    std::vector<char> on(g.ne(), 0);
    on[s0] = 1;
    std::function<void(int)> rec = [&](int x) {
      if (static_cast<int>(r.cycles.size()) >= cap) return;
      for (auto [b, nx] : succ(x)) {
        if (!g.attached(nx) || nx < s0) continue;
        if (nx == s0) {
          std::vector<int> fE;
          for (size_t i = 0; i < xs.size(); ++i) {
            fE.push_back(xs[i]);
            fE.push_back(i < bs.size() ? bs[i] : b);
          }
          int m = static_cast<int>(xs.size());
          r.cycles.push_back(validate_morphism(wheel(m), g, fE));
          r.cycle_lengths.push_back(m);
          continue;
        }
        if (on[nx]) continue;
        on[nx] = 1;
        xs.push_back(nx);
        bs.push_back(b);
        rec(nx);
        xs.pop_back();
        bs.pop_back();
        on[nx] = 0;
      }
    };
    rec(s0);
  }

  // simple directed paths of length >= 1 (no repeated vertex)
  for (int x0 : darts) {
    std::vector<int> seq{g.tau[x0], x0};
    if (!o.in[g.tau[x0]]) continue;
    std::vector<char> seen(g.nv, 0);
    std::function<void(int)> rec = [&](int x) {
      if (static_cast<int>(r.paths.size()) >= cap) return;
      int v = g.vertex_of(x);
      seen[v] = 1;
      for (auto [b, nx] : succ(x)) {
        seq.push_back(b);
        seq.push_back(nx);
        r.paths.push_back(path_from_sequence(g, seq));
        if (g.attached(nx) && !seen[g.vertex_of(nx)]) rec(nx);
        seq.pop_back();
        seq.pop_back();
      }
      seen[v] = 0;
    };
    rec(x0);
  }
  return r;
}

}  // namespace mge
