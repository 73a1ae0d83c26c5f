#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mge/canonical.hpp"
#include "mge/colimits.hpp"
#include "mge/error.hpp"
#include "mge/fixtures.hpp"
#include "mge/io.hpp"
#include "mge/monads.hpp"
#include "mge/nerve.hpp"
#include "mge/operad.hpp"
#include "mge/pointed.hpp"
#include "mge/topology.hpp"

using namespace mge;

namespace {

struct Options {
  bool json = false;
  std::optional<int> bound;
  std::uint64_t seed = 1;
  int nmax = 4;
};

// Explicit --bound wins, then MGE_BOUND, then the command's own default.
int bound_or(const Options& o, int dflt) {
  if (o.bound) return *o.bound;
  if (std::getenv("MGE_BOUND")) return default_bound();
  return dflt;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      r.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "not an integer: '" + tok + "'");
    }
  }
  return r;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) r.push_back(tok);
  return r;
}

std::string elem_name(const ElemP& x, const Species& s) {
  if (x->kind == Elem::Kind::Base) return s.ar[x->arity].names[x->index];
  return describe(x);
}

void print(const Json& report, const Options& o) {
  if (o.json) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : report.items()) {
    if (v.is_string()) {
      std::cout << k << ": " << v.get<std::string>() << "\n";
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      std::cout << k << ":\n";
      for (const auto& x : v) std::cout << "  " << x.dump() << "\n";
    } else {
      std::cout << k << ": " << v.dump() << "\n";
    }
  }
}

Json law_json(const LawReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json checked = Json::object();
  for (const auto& [law, n] : r.checked) checked[law] = n;
  j["checked"] = checked;
  Json fs = Json::array();
  for (const auto& f : r.failures) fs.push_back({{"law", f.law}, {"witness", f.witness}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  j["failures"] = fs;
  return j;
}

Json graph_info(const XGraph& x) {
  const Graph& g = x.g;
  Json j;
  j["vertices"] = g.nv;
  j["edges"] = g.ne();
  j["ports"] = x.ports;
  j["inner_orbits"] = inner_orbits(g).size();
  j["components"] = connected_components(g).size();
  Json val = Json::array();
  for (int v = 0; v < g.nv; ++v) val.push_back(g.valency(v));
  j["valencies"] = val;
  if (is_connected(g)) {
    CycleReport c = is_simply_connected(g);
    j["simply_connected"] = c.simply_connected;
    bool bivalent = g.nv > 0;
    for (int v = 0; v < g.nv; ++v) bivalent = bivalent && g.valency(v) == 2;
    if (bivalent) {
      BivalentModel m = classify_bivalent(g);
      j["bivalent_model"] = (m.is_line ? "line" : "wheel") + std::to_string(m.n);
    }
  }
  j["canonical_form"] = canonical_form(x);
  return j;
}

SGraph load_sgraph_for(const OperadPresentation& P, const std::string& ref, const std::string& deco,
                       const std::string& colors) {
  if (std::filesystem::is_regular_file(ref)) {
    Json j = read_json_file(ref);
    if (kind_of(j) == "sgraph") return with_path(ref, [&] { return sgraph_from_json(j, P.S); });
  }
  XGraph x = load_xgraph(ref);
  const Species& S = *P.S;
  SGraph a;
  a.sp = P.S;
  a.g = x.g;
  a.ports = x.ports;
  std::vector<std::string> cs = colors.empty() ? std::vector<std::string>{} : split(colors);
  if (!cs.empty() && static_cast<int>(cs.size()) != a.g.ne())
    fail(ErrorCode::InvalidParameter, "--colors needs one colour per edge");
  for (int e = 0; e < a.g.ne(); ++e) {
    int c = 0;
    if (!cs.empty()) {
      c = -1;
      for (int i = 0; i < S.pal.size(); ++i)
        if (S.pal.names[i] == cs[e]) c = i;
      if (c < 0) fail(ErrorCode::UnknownElement, "unknown colour '" + cs[e] + "'");
    }
    a.color.push_back(c);
  }
  std::vector<std::string> ds = split(deco);
  if (static_cast<int>(ds.size()) != a.g.nv) fail(ErrorCode::InvalidParameter, "--deco needs one name per vertex");
  for (int v = 0; v < a.g.nv; ++v) {
    int n = a.g.valency(v);
    if (n > S.nmax()) fail(ErrorCode::SizeBoundExceeded, "vertex valency exceeds the species arity bound");
    int i = S.find(n, ds[v]);
    if (i < 0) fail(ErrorCode::UnknownElement, "no element '" + ds[v] + "' of arity " + std::to_string(n));
    a.deco.push_back(S.elem(n, i));
  }
  validate_sgraph(a);
  return a;
}

std::vector<std::pair<std::string, Graph>> segal_fixtures() {
  return {{"mgraph", mgraph(1, 2)}, {"ngraph", ngraph(2)},  {"wheel2", wheel(2)},
          {"line2", line(2)},       {"theta", theta_graph()}, {"tadpole", tadpole_graph()},
          {"corolla3", corolla(3)}, {"stick", stick()}};
}

int validate_file(const std::string& path, const Options& o) {
  Json j = read_json_file(path);
  std::string k = kind_of(j);
  Json r;
  r["file"] = path;
  r["kind"] = k;
  if (k == "graph") {
    XGraph x = xgraph_from_json(j);
    r["vertices"] = x.g.nv;
    r["edges"] = x.g.ne();
  } else if (k == "species") {
    SpeciesP s = species_from_json(j);
    r["colors"] = s->pal.size();
    r["nmax"] = s->nmax();
  } else if (k == "sgraph") {
    SGraph a = sgraph_from_json(j);
    r["vertices"] = a.g.nv;
  } else if (k == "presentation") {
    OperadPresentation P = presentation_from_json(j);
    r["mult"] = P.mult.size();
    r["contr"] = P.contr.size();
  } else if (k == "presheaf") {
    FinitePresheaf P = presheaf_from_json(j);
    r["graphs"] = P.graphs.size();
    r["maps"] = P.maps.size();
  } else {
    fail(ErrorCode::ParseError, "unknown kind '" + k + "'");
  }
  r["valid"] = true;
  print(r, o);
  return 0;
}

int cmd_validate(const std::string& path, const Options& o) {
  return with_path(path, [&] { return validate_file(path, o); });
}

int cmd_info(const std::string& ref, const Options& o) {
  Json r;
  auto species_info = [&](const SpeciesP& s) {
    r["colors"] = s->pal.names;
    Json sizes = Json::array();
    for (int n = 0; n <= s->nmax(); ++n) sizes.push_back(s->size(n));
    r["sizes"] = sizes;
    print(r, o);
    return 0;
  };
  auto sn = builtin_species_names();
  if (!std::filesystem::is_regular_file(ref) && std::find(sn.begin(), sn.end(), ref) != sn.end())
    return species_info(builtin_species(ref, o.nmax));
  if (std::filesystem::is_regular_file(ref)) {
    Json j = read_json_file(ref);
    std::string k = kind_of(j);
    if (k == "sgraph") {
      SGraph a = with_path(ref, [&] { return sgraph_from_json(j); });
      r = graph_info(a.xgraph());
      Json ds = Json::array();
      for (const auto& d : a.deco) ds.push_back(elem_name(d, *a.sp));
      r["decorations"] = ds;
      r["canonical_form"] = canonical_form(a);
      print(r, o);
      return 0;
    }
    if (k == "species") {
      return species_info(with_path(ref, [&] { return species_from_json(j); }));
    }
  }
  print(graph_info(load_xgraph(ref)), o);
  return 0;
}

int cmd_hom(const std::string& a, const std::string& b, const std::string& mode, bool list, const Options& o) {
  Graph src = load_xgraph(a).g, tgt = load_xgraph(b).g;
  int bound = bound_or(o, -1);
  Json r;
  r["source"] = a;
  r["target"] = b;
  r["kind"] = mode;
  Json items = Json::array();
  if (mode == "pointed") {
    auto ms = enumerate_star_morphisms(src, tgt, bound);
    r["count"] = ms.size();
    if (list)
      for (const auto& m : ms) items.push_back(describe(m));
  } else {
    auto ms = enumerate_morphisms(src, tgt, mode == "etale", bound);
    r["count"] = ms.size();
    if (list)
      for (const auto& m : ms) items.push_back({{"fE", m.fE}, {"fV", m.fV}});
  }
  if (list) r["morphisms"] = items;
  print(r, o);
  return 0;
}

int cmd_glue(const std::string& ref, const std::string& pairs, const Options& o) {
  GluingDatum d;
  d.g = load_xgraph(ref).g;
  for (const auto& p : split(pairs)) {
    auto c = p.find(':');
    if (c == std::string::npos) fail(ErrorCode::ParseError, "pairs are p:q, got '" + p + "'");
    auto l = parse_ints(p.substr(0, c)), r = parse_ints(p.substr(c + 1));
    if (l.size() != 1 || r.size() != 1) fail(ErrorCode::ParseError, "pairs are p:q, got '" + p + "'");
    d.p.push_back(l[0]);
    d.q.push_back(r[0]);
  }
  Glued res = coequalize_gluing(d);
  Json r;
  r["graph"] = graph_to_json(res.g);
  r["projection"] = res.proj.fE;
  print(r, o);
  return 0;
}

int cmd_substitute(const std::string& base, const std::vector<std::string>& pieces, const Options& o) {
  GraphOfGraphs gg;
  gg.base = load_xgraph(base).g;
  for (const auto& p : pieces) gg.pieces.push_back(load_xgraph(p));
  if (static_cast<int>(gg.pieces.size()) != gg.base.nv)
    fail(ErrorCode::InvalidParameter, "need one piece per base vertex");
  Colimit c = colimit_graph_of_graphs(gg);
  Json r;
  r["graph"] = graph_to_json(c.g);
  r["base_edge"] = c.base_edge;
  print(r, o);
  return 0;
}

int cmd_collapse(const std::string& pres, const std::string& ref, int edge, const std::string& deco,
                 const std::string& colors, const Options& o) {
  OperadPresentation P = load_presentation(pres);
  SGraph a = load_sgraph_for(P, ref, deco, colors);
  SGraph b = collapse_edge(P, a, edge);
  print(sgraph_to_json(b), o);
  return 0;
}

int cmd_evaluate(const std::string& pres, const std::string& ref, const std::string& deco, const std::string& colors,
                 const std::string& plan, bool all_orders, const Options& o) {
  OperadPresentation P = load_presentation(pres);
  SGraph a = load_sgraph_for(P, ref, deco, colors);
  Json r;
  if (all_orders) {
    OrderReport rep = evaluate_all_orders(P, a, bound_or(o, 5));
    r["plans"] = rep.plans;
    r["agree"] = rep.agree;
    r["value"] = elem_name(rep.a, *P.S);
    if (!rep.agree) {
      r["plan_a"] = rep.plan_a;
      r["plan_b"] = rep.plan_b;
      r["value_b"] = elem_name(rep.b, *P.S);
    }
    print(r, o);
    return rep.agree ? 0 : 1;
  }
  std::optional<std::vector<int>> pl;
  if (!plan.empty()) pl = parse_ints(plan);
  r["value"] = elem_name(evaluate(P, a, pl), *P.S);
  print(r, o);
  return 0;
}

int cmd_check_axioms(const std::string& pres, const Options& o) {
  OperadPresentation P = load_presentation(pres);
  AxiomReport rep = check_axioms(P);
  Json r;
  r["presentation"] = P.name;
  r["ok"] = rep.ok();
  Json checked = Json::object(), skipped = Json::object();
  for (const auto& [k, v] : rep.checked) checked[k] = v;
  for (const auto& [k, v] : rep.skipped) skipped[k] = v;
  r["checked"] = checked;
  r["skipped"] = skipped;
  Json fs = Json::array();
  for (const auto& f : rep.failures)
    fs.push_back({{"axiom", f.axiom}, {"instance", f.instance}, {"path1", f.path1}, {"path2", f.path2}});
  r["failures"] = fs;
  print(r, o);
  return rep.ok() ? 0 : 1;
}

int cmd_check_monad(const std::string& ref, const Options& o) {
  SpeciesP s = load_species(ref, o.nmax);
  int fuel = bound_or(o, 200);
  LawReport t = check_T_laws(s, fuel, o.seed);
  LawReport ts = check_T_star_laws(apply_D(s), fuel, o.seed);
  Json r;
  r["T"] = law_json(t);
  r["T_star"] = law_json(ts);
  r["ok"] = t.ok() && ts.ok();
  print(r, o);
  return t.ok() && ts.ok() ? 0 : 1;
}

int cmd_check_distributive(const std::string& ref, bool broken, const Options& o) {
  SpeciesP s = load_species(ref, o.nmax);
  LawReport rep = check_beck_axioms(s, bound_or(o, 200), o.seed, broken);
  Json r = law_json(rep);
  r["broken"] = broken;
  print(r, o);
  return rep.ok() ? 0 : 1;
}

int cmd_segal(const std::string& ref, const std::string& only, const Options& o) {
  FinitePresheaf P;
  std::string source = ref.empty() ? "genus" : ref;
  bool presheaf = false;
  if (std::filesystem::is_regular_file(source)) {
    Json j = read_json_file(source);
    if (kind_of(j) == "presheaf") {
      P = with_path(source, [&] { return presheaf_from_json(j); });
      presheaf = true;
    }
  }
  std::vector<std::string> names;
  if (!presheaf) {
    auto fx = segal_fixtures();
    P = nerve_presheaf(load_presentation(source), fx);
    for (const auto& [n, g] : fx) names.push_back(n);
  } else {
    for (const auto& [n, g] : P.graphs) names.push_back(n);
  }
  if (!only.empty()) names = {only};
  bool ok = true;
  Json graphs = Json::array();
  for (const auto& n : names) {
    if (!P.graphs.count(n)) fail(ErrorCode::UnknownElement, "no graph named '" + n + "'");
    SegalReport s = segal_check(P, n);
    // finality needs the pointed elements; presheaves without them skip it
    Json final = nullptr;
    try {
      FinalityReport f = finality_check(P, n);
      final = f.agree();
      ok = ok && f.agree();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompletePresheaf) throw;
    }
    ok = ok && s.ok;
    graphs.push_back({{"graph", n},
                      {"segal", s.ok},
                      {"values", s.values},
                      {"families", s.families},
                      {"final", final},
                      {"diagnostics", s.diagnostics}});
  }
  std::vector<std::string> func = check_functoriality(P);
  ok = ok && func.empty();
  Json r;
  r["source"] = source;
  r["ok"] = ok;
  r["graphs"] = graphs;
  r["functoriality"] = func;
  print(r, o);
  return ok ? 0 : 1;
}

int cmd_dot(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref)) {
    Json j = read_json_file(ref);
    if (kind_of(j) == "sgraph") {
      std::cout << export_dot(with_path(ref, [&] { return sgraph_from_json(j); }));
      return 0;
    }
  }
  std::cout << export_dot(load_xgraph(ref).g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular operad graph calculus"};
  app.require_subcommand(1);
  Options o;
  int bound = 0;
  auto* bound_opt = app.add_option("--bound", bound, "size, vertex or sample bound for the command");
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--seed", o.seed, "sample generation seed");
  app.add_option("--nmax", o.nmax, "arity bound for builtin species");

  std::string a, b, pairs, deco, colors, plan, only;
  std::vector<std::string> pieces;
  int edge = 0;
  bool list = false, all_orders = false, broken = false, etale = false, all = false, pointed = false;

  auto* validate = app.add_subcommand("validate", "check a JSON file");
  validate->add_option("file", a)->required();
  auto* info = app.add_subcommand("info", "describe a graph, structured graph or species");
  info->add_option("ref", a)->required();
  auto* hom = app.add_subcommand("hom", "count morphisms between graphs");
  hom->add_option("source", a)->required();
  hom->add_option("target", b)->required();
  auto* et = hom->add_flag("--etale", etale, "etale morphisms (default)");
  auto* al = hom->add_flag("--all", all, "all morphisms");
  auto* pt = hom->add_flag("--pointed", pointed, "pointed morphisms");
  et->excludes(al)->excludes(pt);
  al->excludes(pt);
  hom->add_flag("--list", list, "list the morphisms");
  auto* glue = app.add_subcommand("glue", "coequalize pairs of ports");
  glue->add_option("graph", a)->required();
  glue->add_option("--pairs", pairs, "p:q,...")->required();
  auto* subst = app.add_subcommand("substitute", "colimit of a graph of graphs");
  subst->add_option("base", a)->required();
  subst->add_option("pieces", pieces, "one X-graph per base vertex");
  auto* collapse = app.add_subcommand("collapse", "collapse one inner orbit");
  collapse->add_option("presentation", a)->required();
  collapse->add_option("graph", b)->required();
  collapse->add_option("--edge", edge)->required();
  auto* eval = app.add_subcommand("evaluate", "evaluate a structured graph");
  eval->add_option("presentation", a)->required();
  eval->add_option("graph", b)->required();
  eval->add_option("--plan", plan, "orbit order e1,e2,...");
  eval->add_flag("--all-orders", all_orders, "compare every collapse plan");
  for (auto* c : {collapse, eval}) {
    c->add_option("--deco", deco, "element names per vertex, for plain graphs");
    c->add_option("--colors", colors, "colour names per edge, for plain graphs");
  }
  auto* axioms = app.add_subcommand("check-axioms", "check the modular operad axioms");
  axioms->add_option("presentation", a)->required();
  auto* monad = app.add_subcommand("check-monad", "monad laws for T and the pointed monad");
  monad->add_option("species", a)->required();
  auto* dist = app.add_subcommand("check-distributive", "distributive law axioms");
  dist->add_option("species", a)->required();
  dist->add_flag("--broken", broken, "drop the wheel identification");
  auto* segal = app.add_subcommand("segal", "Segal conditions for a presheaf or the nerve of a presentation");
  segal->add_option("source", a, "presheaf file or presentation (default genus)");
  segal->add_option("--graph", only, "check one graph only");
  auto* dot = app.add_subcommand("dot", "render a graph as DOT");
  dot->add_option("ref", a)->required();
  for (auto* c : app.get_subcommands({})) c->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (bound_opt->count()) o.bound = bound;

  try {
    if (*validate) return cmd_validate(a, o);
    if (*info) return cmd_info(a, o);
    if (*hom) return cmd_hom(a, b, pointed ? "pointed" : all ? "all" : "etale", list, o);
    if (*glue) return cmd_glue(a, pairs, o);
    if (*subst) return cmd_substitute(a, pieces, o);
    if (*collapse) return cmd_collapse(a, b, edge, deco, colors, o);
    if (*eval) return cmd_evaluate(a, b, deco, colors, plan, all_orders, o);
    if (*axioms) return cmd_check_axioms(a, o);
    if (*monad) return cmd_check_monad(a, o);
    if (*dist) return cmd_check_distributive(a, broken, o);
    if (*segal) return cmd_segal(a, only, o);
    if (*dot) return cmd_dot(a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
