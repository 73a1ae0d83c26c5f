#include "mge/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mge/error.hpp"
#include "mge/fixtures.hpp"
#include "mge/perm.hpp"
#include "mge/pointed.hpp"

namespace mge {

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, what + ": " + e.what());
  }
}

void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "expected a JSON object of kind " + kind);
  if (j.contains("kind") && j.at("kind").get<std::string>() != kind)
    fail(ErrorCode::ParseError, "expected kind '" + kind + "', found '" + j.at("kind").get<std::string>() + "'");
}

int color_index(const Palette& p, const Json& c) {
  if (c.is_number_integer()) {
    int i = c.get<int>();
    if (i < 0 || i >= static_cast<int>(p.names.size())) fail(ErrorCode::IndexOutOfRange, "colour " + std::to_string(i) + " out of range");
    return i;
  }
  std::string n = c.get<std::string>();
  for (size_t i = 0; i < p.names.size(); ++i)
    if (p.names[i] == n) return static_cast<int>(i);
  fail(ErrorCode::UnknownElement, "unknown colour '" + n + "'");
}

int element_index(const Species& s, int n, const Json& x) {
  if (n < 0 || n > s.nmax()) fail(ErrorCode::IndexOutOfRange, "arity " + std::to_string(n) + " out of range");
  if (x.is_number_integer()) {
    int i = x.get<int>();
    if (i < 0 || i >= s.size(n)) fail(ErrorCode::IndexOutOfRange, "element index out of range");
    return i;
  }
  int i = s.find(n, x.get<std::string>());
  if (i < 0) fail(ErrorCode::UnknownElement, "no element '" + x.get<std::string>() + "' of arity " + std::to_string(n));
  return i;
}

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

std::string dot_body(const Graph& g, const std::vector<std::string>& vlabel, const std::vector<std::string>& elabel) {
  std::ostringstream o;
  o << "graph G {\n  node [shape=circle];\n";
  for (int v = 0; v < g.nv; ++v) o << "  v" << v << " [label=\"" << dot_escape(vlabel[v]) << "\"];\n";
  std::vector<int> ps = ports(g);
  std::map<int, int> port_label;
  for (size_t i = 0; i < ps.size(); ++i) port_label[ps[i]] = static_cast<int>(i);
  for (int p : ps) o << "  p" << p << " [shape=point, label=\"\"];\n";
  for (int e = 0; e < g.ne(); ++e) {
    int f = g.tau[e];
    std::string lab = dot_escape(elabel[e]);
    if (g.attached(e) && g.attached(f)) {
      if (e < f) o << "  v" << g.vertex_of(e) << " -- v" << g.vertex_of(f) << " [label=\"" << lab << "\"];\n";
    } else if (g.attached(e)) {
      o << "  v" << g.vertex_of(e) << " -- p" << f << " [label=\"" << lab << "\", taillabel=\"" << port_label[f]
        << "\"];\n";
    } else if (!g.attached(f) && e < f) {
      o << "  p" << e << " -- p" << f << " [label=\"" << lab << "\"];\n";
    }
  }
  o << "}\n";
  return o.str();
}

}  // namespace

Json graph_to_json(const XGraph& x) {
  const Graph& g = x.g;
  Json j;
  j["kind"] = "graph";
  Json edges = Json::array(), tau = Json::array(), halves = Json::array(), verts = Json::array();
  for (int e = 0; e < g.ne(); ++e) {
    edges.push_back(e);
    if (e < g.tau[e]) tau.push_back({e, g.tau[e]});
  }
  for (int h = 0; h < g.nh(); ++h) halves.push_back({{"edge", g.s[h]}, {"vertex", g.t[h]}});
  for (int v = 0; v < g.nv; ++v) verts.push_back(v);
  j["edges"] = edges;
  j["tau"] = tau;
  j["half_edges"] = halves;
  j["vertices"] = verts;
  j["labels"] = {{"ports", x.ports}};
  return j;
}

Json graph_to_json(const Graph& g) { return graph_to_json(default_labelling(g)); }

XGraph xgraph_from_json(const Json& j) {
  return guarded("graph", [&] {
    expect_kind(j, "graph");
    std::map<long long, int> eid, vid;
    for (const auto& e : j.at("edges")) {
      long long id = e.get<long long>();
      if (!eid.emplace(id, static_cast<int>(eid.size())).second)
        fail(ErrorCode::ParseError, "duplicate edge id " + std::to_string(id));
    }
    for (const auto& v : j.at("vertices")) {
      long long id = v.get<long long>();
      if (!vid.emplace(id, static_cast<int>(vid.size())).second)
        fail(ErrorCode::ParseError, "duplicate vertex id " + std::to_string(id));
    }
    auto edge = [&](const Json& x) {
      auto it = eid.find(x.get<long long>());
      if (it == eid.end()) fail(ErrorCode::IndexOutOfRange, "unknown edge id " + x.dump());
      return it->second;
    };
    int ne = static_cast<int>(eid.size());
    std::vector<int> tau(ne, -1);
    for (const auto& p : j.at("tau")) {
      if (!p.is_array() || p.size() != 2) fail(ErrorCode::ParseError, "tau entries are pairs");
      int a = edge(p[0]), b = edge(p[1]);
      if (a == b) fail(ErrorCode::FixedPointInvolution, "edge " + p[0].dump() + " is its own partner");
      if ((tau[a] >= 0 && tau[a] != b) || (tau[b] >= 0 && tau[b] != a))
        fail(ErrorCode::NotAnInvolution, "edge listed in two tau pairs");
      tau[a] = b;
      tau[b] = a;
    }
    for (int e = 0; e < ne; ++e)
      if (tau[e] < 0) fail(ErrorCode::NotAnInvolution, "edge without a partner");
    std::vector<int> s, t;
    for (const auto& h : j.at("half_edges")) {
      s.push_back(edge(h.at("edge")));
      auto it = vid.find(h.at("vertex").get<long long>());
      if (it == vid.end()) fail(ErrorCode::UnknownVertex, "unknown vertex id " + h.at("vertex").dump());
      t.push_back(it->second);
    }
    XGraph x{make_graph(tau, s, t, static_cast<int>(vid.size())), {}};
    if (j.contains("labels") && j.at("labels").contains("ports")) {
      for (const auto& p : j.at("labels").at("ports")) x.ports.push_back(edge(p));
    } else {
      x.ports = ports(x.g);
    }
    // the port labelling must be a bijection; graphs without vertices are allowed here
    std::vector<int> sorted = x.ports;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ports(x.g)) fail(ErrorCode::LabelMismatch, "labels.ports is not a bijection onto the ports");
    return x;
  });
}

Graph graph_from_json(const Json& j) { return xgraph_from_json(j).g; }

Json species_to_json(const Species& s) {
  Json j;
  j["kind"] = "species";
  Json cols = Json::array(), om = Json::array();
  for (int c = 0; c < s.pal.size(); ++c) {
    cols.push_back(s.pal.names[c]);
    om.push_back(s.pal.names[s.pal.omega[c]]);
  }
  j["palette"] = {{"colors", cols}, {"omega", om}};
  Json ar = Json::array();
  for (int n = 0; n <= s.nmax(); ++n) {
    Json a;
    a["arity"] = n;
    Json els = Json::array();
    for (int i = 0; i < s.size(n); ++i) {
      Json legs = Json::array();
      for (int c : s.legs(n, i)) legs.push_back(s.pal.names[c]);
      els.push_back({{"name", s.ar[n].names[i]}, {"legs", legs}});
    }
    a["elements"] = els;
    a["action"] = s.ar[n].act;
    ar.push_back(a);
  }
  j["arities"] = ar;
  return j;
}

SpeciesP species_from_json(const Json& j) {
  return guarded("species", [&]() -> SpeciesP {
    expect_kind(j, "species");
    if (j.contains("builtin")) return builtin_species(j.at("builtin").get<std::string>(), j.value("nmax", 4));
    Species s;
    for (const auto& c : j.at("palette").at("colors")) s.pal.names.push_back(c.get<std::string>());
    for (const auto& c : j.at("palette").at("omega")) s.pal.omega.push_back(color_index(s.pal, c));
    if (s.pal.omega.size() != s.pal.names.size()) fail(ErrorCode::ParseError, "omega has the wrong length");
    int nmax = -1;
    for (const auto& a : j.at("arities")) nmax = std::max(nmax, a.at("arity").get<int>());
    if (nmax < 0) fail(ErrorCode::ParseError, "species without arities");
    s.ar.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n) s.ar[n].act.assign(factorial(n), {});
    for (const auto& a : j.at("arities")) {
      int n = a.at("arity").get<int>();
      auto& A = s.ar[n];
      for (const auto& e : a.at("elements")) {
        A.names.push_back(e.at("name").get<std::string>());
        std::vector<int> legs;
        for (const auto& c : e.at("legs")) legs.push_back(color_index(s.pal, c));
        A.legs.push_back(legs);
      }
      A.act = a.at("action").get<std::vector<std::vector<int>>>();
    }
    return finalize_species(std::move(s));
  });
}

Json sgraph_to_json(const SGraph& a) {
  Json j;
  j["kind"] = "sgraph";
  j["species"] = species_to_json(*a.sp);
  j["graph"] = graph_to_json(a.xgraph());
  Json cols = Json::array(), decos = Json::array();
  for (int c : a.color) cols.push_back(a.sp->pal.names[c]);
  for (const auto& d : a.deco) {
    if (d->kind != Elem::Kind::Base) fail(ErrorCode::InvalidParameter, "only base decorations serialize");
    decos.push_back(a.sp->ar[d->arity].names[d->index]);
  }
  j["colors"] = cols;
  j["decorations"] = decos;
  return j;
}

SGraph sgraph_from_json(const Json& j, SpeciesP sp) {
  return guarded("sgraph", [&] {
    expect_kind(j, "sgraph");
    SGraph a;
    a.sp = sp ? sp : species_from_json(j.at("species"));
    XGraph x = xgraph_from_json(j.at("graph"));
    a.g = x.g;
    a.ports = x.ports;
    for (const auto& c : j.at("colors")) a.color.push_back(color_index(a.sp->pal, c));
    if (static_cast<int>(a.color.size()) != a.g.ne()) fail(ErrorCode::ParseError, "need one colour per edge");
    if (static_cast<int>(j.at("decorations").size()) != a.g.nv)
      fail(ErrorCode::ParseError, "need one decoration per vertex");
    int v = 0;
    for (const auto& d : j.at("decorations")) {
      int n = a.g.valency(v);
      a.deco.push_back(a.sp->elem(n, element_index(*a.sp, n, d)));
      ++v;
    }
    validate_sgraph(a);
    return a;
  });
}

Json presentation_to_json(const OperadPresentation& P) {
  const Species& S = *P.S;
  Json j;
  j["kind"] = "presentation";
  j["name"] = P.name;
  j["species"] = species_to_json(S);
  auto nm = [&](int n, int x) { return S.ar[n].names[x]; };
  Json mult = Json::array(), contr = Json::array();
  for (const auto& [k, r] : P.mult)
    mult.push_back({{"x", {k[0], nm(k[0], k[1]), k[2]}}, {"y", {k[3], nm(k[3], k[4]), k[5]}},
                    {"result", nm(k[0] + k[3] - 2, r)}});
  for (const auto& [k, r] : P.contr)
    contr.push_back({{"x", {k[0], nm(k[0], k[1])}}, {"legs", {k[2], k[3]}}, {"result", nm(k[0] - 2, r)}});
  j["mult"] = mult;
  j["contr"] = contr;
  Json units = Json::array();
  for (int e : P.eps) units.push_back(nm(2, e));
  j["units"] = units;
  if (P.sample_filter) {
    Json sample = Json::object();
    for (int n = 0; n <= S.nmax(); ++n) {
      Json xs = Json::array();
      for (int x = 0; x < S.size(n); ++x)
        if (P.sample_filter(n, x)) xs.push_back(nm(n, x));
      sample[std::to_string(n)] = xs;
    }
    j["sample"] = sample;
  }
  return j;
}

OperadPresentation presentation_from_json(const Json& j) {
  return guarded("presentation", [&]() -> OperadPresentation {
    expect_kind(j, "presentation");
    if (j.contains("builtin")) return builtin_presentation(j.at("builtin").get<std::string>());
    OperadPresentation P;
    P.name = j.value("name", std::string("presentation"));
    P.S = species_from_json(j.at("species"));
    const Species& S = *P.S;
    auto drop = [](std::vector<int> v, std::vector<int> idx) {
      std::sort(idx.rbegin(), idx.rend());
      for (int i : idx) v.erase(v.begin() + i);
      return v;
    };
    for (const auto& m : j.at("mult")) {
      const Json& x = m.at("x");
      const Json& y = m.at("y");
      int n = x.at(0).get<int>(), i = x.at(2).get<int>(), mm = y.at(0).get<int>(), jj = y.at(2).get<int>();
      int xi = element_index(S, n, x.at(1)), yi = element_index(S, mm, y.at(1));
      if (i < 0 || i >= n || jj < 0 || jj >= mm) fail(ErrorCode::IndexOutOfRange, "leg position out of range");
      if (S.legs(mm, yi)[jj] != S.pal.omega[S.legs(n, xi)[i]])
        fail(ErrorCode::ColorMismatch, "multiplied legs are not dual: " + m.dump());
      int r = element_index(S, n + mm - 2, m.at("result"));
      std::vector<int> want = drop(S.legs(n, xi), {i}), rest = drop(S.legs(mm, yi), {jj});
      want.insert(want.end(), rest.begin(), rest.end());
      if (S.legs(n + mm - 2, r) != want) fail(ErrorCode::ColorMismatch, "result has the wrong leg colours: " + m.dump());
      if (!P.mult.emplace(std::array<int, 6>{n, xi, i, mm, yi, jj}, r).second)
        fail(ErrorCode::ParseError, "duplicate multiplication entry: " + m.dump());
    }
    for (const auto& c : j.at("contr")) {
      const Json& x = c.at("x");
      int n = x.at(0).get<int>(), xi = element_index(S, n, x.at(1));
      int i = c.at("legs").at(0).get<int>(), k = c.at("legs").at(1).get<int>();
      if (i > k) std::swap(i, k);
      if (i < 0 || k >= n || i == k) fail(ErrorCode::IndexOutOfRange, "contracted legs out of range");
      if (S.legs(n, xi)[k] != S.pal.omega[S.legs(n, xi)[i]])
        fail(ErrorCode::ColorMismatch, "contracted legs are not dual: " + c.dump());
      int r = element_index(S, n - 2, c.at("result"));
      if (S.legs(n - 2, r) != drop(S.legs(n, xi), {i, k}))
        fail(ErrorCode::ColorMismatch, "result has the wrong leg colours: " + c.dump());
      if (!P.contr.emplace(std::array<int, 4>{n, xi, i, k}, r).second)
        fail(ErrorCode::ParseError, "duplicate contraction entry: " + c.dump());
    }
    if (j.contains("units"))
      for (const auto& u : j.at("units")) P.eps.push_back(element_index(S, 2, u));
    if (!P.eps.empty() && static_cast<int>(P.eps.size()) != S.pal.size())
      fail(ErrorCode::ParseError, "need one unit per colour");
    if (j.contains("sample")) {
      std::set<std::pair<int, int>> allowed;
      for (const auto& [k, xs] : j.at("sample").items()) {
        int n = std::stoi(k);
        for (const auto& x : xs) allowed.insert({n, element_index(S, n, x)});
      }
      P.sample_filter = [allowed](int n, int x) { return allowed.count({n, x}) > 0; };
    }
    return P;
  });
}

Json presheaf_to_json(const FinitePresheaf& P) {
  Json j;
  j["kind"] = "presheaf";
  Json gs = Json::object(), vs = Json::object(), ms = Json::array();
  for (const auto& [name, g] : P.graphs) gs[name] = graph_to_json(g);
  for (const auto& [name, v] : P.values) vs[name] = v;
  for (const auto& m : P.maps) {
    Json x;
    x["name"] = m.name;
    x["src"] = m.src;
    x["tgt"] = m.tgt;
    x["klgr"] = m.klgr;
    if (!m.klgr) {
      x["fE"] = m.m.fE;
      Json fv = Json::array();
      for (const auto& t : m.m.fV) fv.push_back({t.vertex, t.orbit});
      x["fV"] = fv;
    }
    x["table"] = m.table;
    ms.push_back(x);
  }
  j["graphs"] = gs;
  j["values"] = vs;
  j["maps"] = ms;
  return j;
}

FinitePresheaf presheaf_from_json(const Json& j) {
  return guarded("presheaf", [&] {
    expect_kind(j, "presheaf");
    FinitePresheaf P;
    for (const auto& [name, g] : j.at("graphs").items()) P.graphs[name] = graph_from_json(g);
    for (const auto& [name, v] : j.at("values").items()) {
      if (!P.graphs.count(name)) fail(ErrorCode::ParseError, "values for unknown graph " + name);
      P.values[name] = v.get<std::vector<std::string>>();
    }
    for (const auto& x : j.at("maps")) {
      PresheafMap m;
      m.name = x.at("name").get<std::string>();
      m.src = x.at("src").get<std::string>();
      m.tgt = x.at("tgt").get<std::string>();
      m.klgr = x.value("klgr", false);
      m.table = x.at("table").get<std::vector<int>>();
      for (const auto& g : {m.src, m.tgt})
        if (!P.values.count(g)) fail(ErrorCode::ParseError, "map " + m.name + " refers to unknown graph " + g);
      if (m.table.size() != P.values.at(m.tgt).size())
        fail(ErrorCode::ParseError, "map " + m.name + " table has the wrong length");
      for (int v : m.table)
        if (v < -1 || v >= static_cast<int>(P.values.at(m.src).size()))
          fail(ErrorCode::IndexOutOfRange, "map " + m.name + " table entry out of range");
      if (!m.klgr) {
        std::vector<VTarget> fv;
        for (const auto& t : x.at("fV")) fv.push_back({t.at(0).get<int>(), t.at(1).get<int>()});
        m.m = validate_star_morphism(P.graphs.at(m.src), P.graphs.at(m.tgt), x.at("fE").get<std::vector<int>>(), fv);
      }
      P.maps.push_back(std::move(m));
    }
    return P;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, path + ": cannot read file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    fail(ErrorCode::ParseError, "file has no \"kind\"");
  return j.at("kind").get<std::string>();
}

XGraph load_xgraph(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref))
    return with_path(ref, [&] {
      Json j = read_json_file(ref);
      std::string k = kind_of(j);
      if (k == "graph") return xgraph_from_json(j);
      if (k == "sgraph") return guarded("sgraph", [&] { return xgraph_from_json(j.at("graph")); });
      fail(ErrorCode::ParseError, "expected a graph, found " + k);
    });
  if (!is_builtin_graph(ref)) fail(ErrorCode::UnknownElement, "'" + ref + "' is neither a file nor a builtin graph");
  return default_labelling(builtin_graph(ref));
}

SpeciesP load_species(const std::string& ref, int nmax) {
  if (std::filesystem::is_regular_file(ref))
    return with_path(ref, [&] { return species_from_json(read_json_file(ref)); });
  return builtin_species(ref, nmax);
}

OperadPresentation load_presentation(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref))
    return with_path(ref, [&] { return presentation_from_json(read_json_file(ref)); });
  return builtin_presentation(ref);
}

std::string export_dot(const Graph& g) {
  std::vector<std::string> vl, el;
  for (int v = 0; v < g.nv; ++v) vl.push_back("v" + std::to_string(v));
  for (int e = 0; e < g.ne(); ++e) el.push_back(std::to_string(std::min(e, g.tau[e])) + "/" + std::to_string(std::max(e, g.tau[e])));
  return dot_body(g, vl, el);
}

std::string export_dot(const SGraph& a) {
  const Graph& g = a.g;
  std::vector<std::string> vl, el;
  for (const auto& d : a.deco)
    vl.push_back(d->kind == Elem::Kind::Base ? a.sp->ar[d->arity].names[d->index] : d->key);
  for (int e = 0; e < g.ne(); ++e) {
    // label by the colour read from the lower-numbered end
    int lo = std::min(e, g.tau[e]);
    el.push_back(a.sp->pal.names[a.color[lo]] + "/" + a.sp->pal.names[a.color[g.tau[lo]]]);
  }
  return dot_body(g, vl, el);
}

}  // namespace mge
