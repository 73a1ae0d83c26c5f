#include "mge/fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>

#include "mge/error.hpp"

namespace mge {

Graph theta_graph() { return make_graph({3, 4, 5, 0, 1, 2}, {0, 1, 2, 3, 4, 5}, {0, 0, 0, 1, 1, 1}, 2); }
Graph tadpole_graph() { return make_graph({1, 0, 3, 2}, {1, 2, 3}, {0, 0, 0}, 1); }

Graph builtin_graph(const std::string& name) {
  std::smatch m;
  if (name == "stick") return stick();
  if (name == "c0") return isolated_vertex();
  if (name == "theta") return theta_graph();
  if (name == "tadpole") return tadpole_graph();
  static const std::regex one("(corolla|line|wheel|ngraph)([0-9]+)"), two("mgraph([0-9]+)_([0-9]+)");
  if (std::regex_match(name, m, one)) {
    int n = std::stoi(m[2]);
    if (n > 64) fail(ErrorCode::SizeBoundExceeded, "builtin graph parameter too large");
    if (m[1] == "corolla") return corolla(n);
    if (m[1] == "line") return line(n);
    if (m[1] == "wheel") return wheel(n);
    return ngraph(n);
  }
  if (std::regex_match(name, m, two)) {
    int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > 64 || b > 64) fail(ErrorCode::SizeBoundExceeded, "builtin graph parameter too large");
    return mgraph(a, b);
  }
  fail(ErrorCode::UnknownElement, "unknown graph name '" + name + "'");
}

bool is_builtin_graph(const std::string& name) {
  try {
    builtin_graph(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

// Cyclic orders of {0..n-1}, stored as sequences starting at 0.
SpeciesP cyclic_species(int nmax) {
  Species s;
  s.pal = monochrome();
  s.ar.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    auto& a = s.ar[n];
    std::vector<std::vector<int>> orders;
    if (n == 0) orders.push_back({});
    else {
      std::vector<int> rest(n - 1);
      std::iota(rest.begin(), rest.end(), 1);
      do {
        std::vector<int> o{0};
        o.insert(o.end(), rest.begin(), rest.end());
        orders.push_back(o);
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    std::map<std::vector<int>, int> idx;
    for (auto& o : orders) {
      idx[o] = static_cast<int>(a.names.size());
      std::string nm;
      for (int x : o) nm += std::to_string(x);
      a.names.push_back("(" + nm + ")");
      a.legs.push_back(std::vector<int>(n, 0));
    }
    for (const Perm& r : all_perms(n)) {
      Perm ri = inverse(r);
      std::vector<int> tab;
      for (auto& o : orders) {
        std::vector<int> y;
        for (int x : o) y.push_back(ri[x]);
        if (n > 0) std::rotate(y.begin(), std::find(y.begin(), y.end(), 0), y.end());
        tab.push_back(idx.at(y));
      }
      a.act.push_back(tab);
    }
  }
  return finalize_species(std::move(s));
}

// Palette {c, c'} exchanged by the involution. Arity 1: one element per colour; arity 2: a
// single element with legs (c, c); arity 3: legs (c, c', c') and its images. Nothing in arity 0.
SpeciesP bicolor_species(int nmax) {
  Species s;
  s.pal = Palette{{1, 0}, {"c", "c'"}};
  s.ar.resize(std::max(nmax, 0) + 1);
  auto fill = [&](int n, const std::vector<std::vector<int>>& base) {
    auto& a = s.ar[n];
    std::map<std::vector<int>, int> idx;
    auto add = [&](const std::vector<int>& l) {
      if (idx.count(l)) return;
      idx[l] = static_cast<int>(a.legs.size());
      std::string nm;
      for (int c : l) nm += c ? "'" : "c";
      a.names.push_back(nm);
      a.legs.push_back(l);
    };
    for (auto& b : base)
      for (const Perm& r : all_perms(n)) {
        std::vector<int> l(n);
        for (int i = 0; i < n; ++i) l[i] = b[r[i]];
        add(l);
      }
    // elements are determined by their leg colours, so the action permutes colour tuples
    for (const Perm& r : all_perms(n)) {
      std::vector<int> tab;
      for (auto& l : a.legs) {
        std::vector<int> y(n);
        for (int i = 0; i < n; ++i) y[i] = l[r[i]];
        tab.push_back(idx.at(y));
      }
      a.act.push_back(tab);
    }
  };
  fill(0, {});
  s.ar[0].names.clear();
  s.ar[0].legs.clear();
  s.ar[0].act = {{}};
  if (nmax >= 1) fill(1, {{0}, {1}});
  if (nmax >= 2) fill(2, {{0, 0}});
  if (nmax >= 3) fill(3, {{0, 1, 1}});
  for (int n = 4; n <= nmax; ++n) s.ar[n].act.assign(factorial(n), {});
  return finalize_species(std::move(s));
}

}  // namespace

SpeciesP builtin_species(const std::string& name, int nmax) {
  if (name == "K") return terminal_species(monochrome(), nmax);
  if (name == "Di") return terminal_species(directed(), nmax);
  if (name == "cyclic") return cyclic_species(nmax);
  if (name == "bicolor") return bicolor_species(nmax);
  fail(ErrorCode::UnknownElement, "unknown species name '" + name + "'");
}

std::vector<std::string> builtin_species_names() { return {"K", "Di", "cyclic", "bicolor"}; }

}  // namespace mge
