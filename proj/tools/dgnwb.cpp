// dgnwb: command-line front end.
//
//   dgnwb <ibr|dgn|cocycle|order|verify> --spec f.json [--seed N]
//         [--level quick|exhaustive] [--out report.json] [--timings]
//
// Exit codes: 0 all checks pass, 1 a verification fails, 2 bad input or a
// failed precondition, 3 an internal assertion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgnwb/bijection.hpp"

using json = nlohmann::json;
using namespace dgnwb;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "1.0.0";

struct InputError : PreconditionError {
  using PreconditionError::PreconditionError;
};

Perm read_perm(const json& j, int degree) {
  if (!j.is_array()) throw InputError("permutation must be an array of images");
  Perm p = j.get<Perm>();
  if (static_cast<int>(p.size()) != degree) throw InputError("permutation of length " + std::to_string(p.size()) + ", expected " + std::to_string(degree));
  if (!is_perm(p)) throw InputError("array is not a permutation of 0.." + std::to_string(degree - 1));
  return p;
}

Group read_subgroup(const json& j, const PermGroupPtr& amb, const std::string& what) {
  if (!j.is_object() || !j.contains("generators")) throw InputError(what + ": expected {\"generators\": [...]}");
  if (j.contains("degree") && j["degree"].get<int>() != amb->degree()) throw InputError(what + ": degree differs from the group's");
  std::vector<int> gens;
  for (const auto& g : j["generators"]) {
    int i = amb->index_of(read_perm(g, amb->degree()));
    if (i < 0) throw InputError(what + ": generator " + g.dump() + " is not in G");
    gens.push_back(i);
  }
  return Group::generated(amb, gens);
}

std::vector<int> perm_index_list(const PermGroup& amb, const json& list, const std::string& what) {
  std::vector<int> out;
  for (const auto& g : list) {
    int i = amb.index_of(read_perm(g, amb.degree()));
    if (i < 0) throw InputError(what + ": " + g.dump() + " is not in G");
    out.push_back(i);
  }
  return out;
}

json perm_json(const PermGroup& amb, int x) { return amb.element(x); }

json group_json(const Group& g) {
  const auto& amb = *g.ambient();
  json gens = json::array();
  for (int x : g.generators()) gens.push_back(perm_json(amb, x));
  return {{"order", g.order()}, {"generators", gens}};
}

json char_json(const BrauerChar& c) {
  const auto& amb = *c.group.ambient();
  json vals = json::array();
  for (size_t k = 0; k < c.classes.size(); ++k)
    vals.push_back({{"rep", perm_json(amb, c.group.class_rep(c.classes[k]))}, {"dlogs", c.values[k]}});
  return {{"degree", c.degree()}, {"values", vals}};
}

json cocycle_json(const TwistedCocycle& a) {
  json rows = json::array();
  int n = a.group.order();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(a.E.field()->dlog(a.at(i, j)));
    rows.push_back(row);
  }
  json tw = json::array();
  for (int i = 0; i < n; ++i) tw.push_back(a.t_at(i));
  return {{"group_order", n}, {"dlog_table", rows}, {"twist", tw}};
}

json condition_json(const Condition& c) {
  json j{{"name", c.name}, {"pass", c.pass}, {"checks", c.checks}};
  if (!c.pass) j["witness"] = c.witness;
  return j;
}

struct Loaded {
  json spec;
  int p = 0;
  PermGroupPtr amb;
  Group g;
  std::optional<Group> n, m, d;
  std::vector<Automorphism> autos;
};

Loaded load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file " + path);
  Loaded l;
  try {
    l.spec = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spec is not valid JSON: ") + e.what());
  }
  const json& s = l.spec;
  if (!s.contains("p") || !s["p"].is_number_integer()) throw InputError("spec needs an integer \"p\"");
  l.p = s["p"].get<int>();
  if (!is_prime(l.p)) throw InputError("p = " + std::to_string(l.p) + " is not prime");
  if (!s.contains("group")) throw InputError("spec needs \"group\"");
  const json& gj = s["group"];
  if (!gj.contains("degree") || !gj.contains("generators")) throw InputError("group: expected {\"degree\", \"generators\"}");
  int degree = gj["degree"].get<int>();
  if (degree < 1) throw InputError("group: degree must be positive");
  std::vector<Perm> gens;
  for (const auto& x : gj["generators"]) gens.push_back(read_perm(x, degree));
  l.amb = PermGroup::generate(degree, gens);
  l.g = Group::whole(l.amb);
  if (s.contains("N")) l.n = read_subgroup(s["N"], l.amb, "N");
  if (s.contains("M")) l.m = read_subgroup(s["M"], l.amb, "M");
  if (s.contains("D")) l.d = read_subgroup(s["D"], l.amb, "D");
  if (s.contains("automorphisms")) {
    for (const auto& a : s["automorphisms"]) {
      std::string name = a.value("name", "automorphism " + std::to_string(l.autos.size()));
      if (!a.contains("images")) throw InputError(name + ": needs \"images\" of the group generators");
      // one image per listed group generator, in order
      std::vector<int> src = perm_index_list(*l.amb, gj["generators"], name);
      std::vector<int> img = perm_index_list(*l.amb, a["images"], name);
      if (src.size() != img.size()) throw InputError(name + ": one image per group generator is required");
      GroupMap map = GroupMap::from_generators(l.g, l.g, src, img);
      if (!map.is_injective()) throw InputError(name + ": not bijective");
      l.autos.push_back({name, map});
    }
  }
  return l;
}

BrauerChar select_theta(Workspace& ws, const Loaded& l) {
  if (!l.n) throw InputError("spec needs \"N\"");
  if (!l.spec.contains("theta")) throw InputError("spec needs a \"theta\" selector");
  const json& t = l.spec["theta"];
  auto irr = ws.ibr_chars(*l.n);
  if (t.contains("index")) {
    int i = t["index"].get<int>();
    if (i < 0 || i >= static_cast<int>(irr.size())) throw InputError("theta index out of range");
    return irr[i];
  }
  std::vector<BrauerChar> hits;
  for (const auto& c : irr) {
    if (t.contains("degree") && c.degree() != t["degree"].get<int>()) continue;
    bool ok = true;
    if (t.contains("values"))
      for (const auto& v : t["values"]) {
        int x = l.amb->index_of(read_perm(v.at("element"), l.amb->degree()));
        if (x < 0 || !l.n->contains(x)) throw InputError("theta fingerprint element is not in N");
        auto want = v.at("dlogs").get<std::vector<int>>();
        std::sort(want.begin(), want.end());
        if (c.value_at(x) != want) {
          ok = false;
          break;
        }
      }
    if (ok) hits.push_back(c);
  }
  if (hits.size() != 1)
    throw InputError("theta selector matches " + std::to_string(hits.size()) + " irreducible Brauer characters of N, expected 1");
  return hits[0];
}

Instance instance_of(Workspace& ws, const Loaded& l) {
  if (!l.n || !l.m) throw InputError("spec needs \"N\" and \"M\"");
  return {l.g, *l.n, *l.m, select_theta(ws, l), l.d};
}

struct Outcome {
  json result, witnesses;
  std::vector<Condition> conditions;
  std::vector<std::string> summary;
};

Outcome cmd_ibr(Workspace& ws, const Loaded& l) {
  Outcome o;
  const Group& s = l.n && l.spec.value("ibr_of", "G") == "N" ? *l.n : l.g;
  auto irr = ws.ibr_chars(s);
  json chars = json::array();
  std::vector<int> degs;
  for (const auto& c : irr) {
    chars.push_back(char_json(c));
    degs.push_back(c.degree());
  }
  int classes = static_cast<int>(s.p_regular_classes(l.p).size());
  o.result = {{"group_order", s.order()}, {"p_regular_classes", classes}, {"degrees", degs}, {"characters", chars}};
  Condition c{"count equals p-regular classes", static_cast<int>(irr.size()) == classes, 1, ""};
  if (!c.pass) c.witness = std::to_string(irr.size()) + " vs " + std::to_string(classes);
  o.conditions.push_back(c);
  std::ostringstream os;
  os << "|IBr| = " << irr.size() << ", degrees";
  for (int d : degs) os << " " << d;
  o.summary.push_back(os.str());
  return o;
}

Outcome cmd_dgn(Workspace& ws, const Loaded& l) {
  Outcome o;
  Prepared su = prepare(ws, instance_of(ws, l));
  o.result = {{"theta", char_json(su.inst.theta)},
              {"D", group_json(su.d)},
              {"C", group_json(su.c)},
              {"H", group_json(su.h)},
              {"phi", char_json(su.phi)},
              {"multiplicities", su.dgn.multiplicities},
              {"unique_index", su.dgn.unique_index},
              {"dade_certified", su.dgn.dade_certified}};
  o.conditions.push_back({"both DGN paths agree", su.dgn.via_block == su.dgn.via_quotient, 1, ""});
  o.conditions.push_back({"E = F_p[theta] = F_p[phi]", su.t1.e.degree() == su.t2.e.degree(), 1, ""});
  o.summary.push_back("|D| = " + std::to_string(su.d.order()) + ", |C| = " + std::to_string(su.c.order()) +
                      ", |H| = " + std::to_string(su.h.order()) + ", phi of degree " + std::to_string(su.phi.degree()));
  return o;
}

Outcome cmd_cocycle(Workspace& ws, const Loaded& l) {
  Outcome o;
  Prepared su = prepare(ws, instance_of(ws, l));
  Theorem38Result r = theorem38_pipeline(ws, su.t1, su.t2);
  bool planted = r.alpha_bar.times_coboundary(r.gamma).values == r.beta_bar.values;
  o.result = {{"quotient_order", r.hbar.bar.order()},
              {"E_degree", su.t1.e.degree()},
              {"cohomologous", planted},
              {"alpha_trivial_class", cohomologous(TwistedCocycle::trivial(r.alpha_bar.group, r.alpha_bar.E, r.alpha_bar.twist),
                                                   r.alpha_bar)
                                          .has_value()}};
  json gamma = json::array();
  for (Elem v : r.gamma) gamma.push_back(r.alpha_bar.E.field()->dlog(v));
  o.witnesses = {{"alpha_bar", cocycle_json(r.alpha_bar)}, {"beta_bar", cocycle_json(r.beta_bar)}, {"gamma_dlogs", gamma}};
  o.conditions.push_back({"alpha_bar is a cocycle", r.alpha_bar.is_cocycle(), 1, ""});
  o.conditions.push_back({"beta_bar is a cocycle", r.beta_bar.is_cocycle(), 1, ""});
  o.conditions.push_back({"[alpha_bar] = [beta_bar] with verified gamma", planted, 1, ""});
  o.summary.push_back(std::string("classes on G/N of order ") + std::to_string(r.hbar.bar.order()) +
                      (planted ? " agree" : " differ"));
  return o;
}

Outcome cmd_order(Workspace& ws, const Loaded& l) {
  Outcome o;
  Prepared su = prepare(ws, instance_of(ws, l));
  Theorem38Result r = theorem38_pipeline(ws, su.t1, su.t2);
  auto pp = brauer_quotient_pair(su.t1, su.t2, r.p, su.d);
  OrderReport bq = order_check(su.t1, su.t2, r.p, pp);
  json clauses = json::array();
  for (size_t i = 0; i < r.order.clauses.size(); ++i) {
    const auto& c = r.order.clauses[i];
    clauses.push_back({{"clause", c.name}, {"solver_pair", c.pass}, {"brauer_quotient_pair", bq.clauses[i].pass}});
    o.conditions.push_back({"(" + std::to_string(i + 1) + ") " + c.name, c.pass && bq.clauses[i].pass, 2, c.witness + bq.clauses[i].witness});
  }
  o.conditions.push_back({"mu matches the closed form", r.closed_form_ok, r.closed_form_checks, ""});
  o.result = {{"clauses", clauses}, {"pairs_checked", r.order.pairs_checked}};
  o.summary.push_back("pair stabilizer elements checked: " + std::to_string(r.order.pairs_checked));
  return o;
}

json family_json(const DeltaFamily& fam) {
  json maps = json::array();
  for (const auto& m : fam.maps) {
    json pairs = json::array();
    std::vector<std::pair<BrauerChar, BrauerChar>> sorted;
    for (const auto& chi : m.domain) sorted.push_back({chi, m(chi)});
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [a, b] : sorted) pairs.push_back({{"chi", char_json(a)}, {"image", char_json(b)}});
    maps.push_back({{"S", group_json(m.s)}, {"S_meet_H", group_json(m.sh)}, {"map", pairs}});
  }
  return maps;
}

Outcome cmd_verify(Workspace& ws, const Loaded& l, Level level, const std::string& inject) {
  Outcome o;
  Instance in = instance_of(ws, l);
  if (!l.autos.empty()) {
    CorollaryRun run = verify_corollary_b(ws, in, l.autos, level);
    for (const auto& c : run.report.conditions) o.conditions.push_back(c);
    json f = json::array();
    for (const auto& [a, b] : run.f) f.push_back({{"chi", char_json(a)}, {"image", char_json(b)}});
    o.result = {{"included", run.included}, {"excluded", run.excluded}, {"all_inner", run.all_inner}, {"f", f}};
    if (run.extended) o.result["extended_group_order"] = run.extended->setup.inst.g.order();
    o.summary.push_back("automorphisms used: " + std::to_string(run.included.size()) + ", excluded by the stabilizer filter: " +
                        std::to_string(run.excluded.size()));
    return o;
  }
  TheoremARun run = verify_theorem_a(ws, in, level);
  if (inject == "swap-delta" && !run.family.maps.empty()) {
    for (auto& m : run.family.maps)
      if (m.image.size() >= 2) {
        std::swap(m.image[0], m.image[1]);
        break;
      }
    VertexCache vc;
    run.report = verify_family(ws, run.family, level, vc);
  }
  for (const auto& c : run.report.conditions) o.conditions.push_back(c);
  o.result = {{"D", group_json(run.setup.d)},
              {"C", group_json(run.setup.c)},
              {"H", group_json(run.setup.h)},
              {"phi", char_json(run.setup.phi)},
              {"family", family_json(run.family)}};
  o.witnesses = {{"transports_checked", run.family.transports_checked}, {"constituents_checked", run.family.constituents_checked}};
  o.summary.push_back("members of S(G, N): " + std::to_string(run.family.maps.size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular DGN and equivariant bijection workbench"};
  std::string command, spec_path, out_path, level_name = "exhaustive", inject;
  std::uint64_t seed = 1;
  bool timings = false;
  app.add_option("command", command, "ibr | dgn | cocycle | order | verify")->required()->check(
      CLI::IsMember({"ibr", "dgn", "cocycle", "order", "verify"}));
  app.add_option("--spec", spec_path, "instance spec (JSON)")->required();
  app.add_option("--seed", seed, "random seed (default 1)");
  app.add_option("--level", level_name, "quick | exhaustive")->check(CLI::IsMember({"quick", "exhaustive"}));
  app.add_option("--out", out_path, "write the JSON report here");
  app.add_flag("--timings", timings, "include wall-clock timings in the report");
  app.add_option("--inject", inject, "fault injection for harness self-tests: swap-delta | internal")
      ->check(CLI::IsMember({"swap-delta", "internal"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  json report{{"schema_version", kSchemaVersion}, {"tool_version", kToolVersion}, {"command", command}, {"seed", seed}};
  if (command == "verify") report["level"] = level_name;
  int code = 0;
  try {
    Loaded l = load(spec_path);
    report["instance"] = l.spec;
    if (l.spec.contains("seed") && !app.count("--seed")) {
      seed = l.spec["seed"].get<std::uint64_t>();
      report["seed"] = seed;
    }
    FieldPtr f = Field::get(l.p, command == "verify" ? corollary_field_degree(l.g, l.autos, l.p) : splitting_degree(l.g, l.p));
    Workspace ws(l.amb, l.p, f, seed);
    if (inject == "internal") throw InternalError("injected internal fault");
    Outcome o;
    if (command == "ibr") o = cmd_ibr(ws, l);
    if (command == "dgn") o = cmd_dgn(ws, l);
    if (command == "cocycle") o = cmd_cocycle(ws, l);
    if (command == "order") o = cmd_order(ws, l);
    if (command == "verify") o = cmd_verify(ws, l, level_name == "quick" ? Level::quick : Level::exhaustive, inject);
    json conds = json::array();
    bool pass = true;
    for (const auto& c : o.conditions) {
      conds.push_back(condition_json(c));
      pass = pass && c.pass;
    }
    report["field"] = {{"p", l.p}, {"degree", f->degree()}};
    report["result"] = o.result;
    if (!o.witnesses.is_null()) report["witnesses"] = o.witnesses;
    report["conditions"] = conds;
    report["verdict"] = pass ? "pass" : "fail";
    for (const auto& s : o.summary) std::cout << s << "\n";
    for (const auto& c : o.conditions)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.checks << " checks)" << (c.pass ? "" : ": " + c.witness) << "\n";
    code = pass ? 0 : 1;
  } catch (const InternalError& e) {
    report["verdict"] = "internal-error";
    report["error"] = e.what();
    std::cerr << "internal error: " << e.what() << "\n";
    code = 3;
  } catch (const std::logic_error& e) {
    report["verdict"] = "internal-error";
    report["error"] = e.what();
    std::cerr << "internal error: " << e.what() << "\n";
    code = 3;
  } catch (const std::runtime_error& e) {
    // PreconditionError, ResourceError, FieldTooSmallError and input errors
    report["verdict"] = "rejected";
    report["error"] = e.what();
    std::cerr << "rejected: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    report["verdict"] = "internal-error";
    report["error"] = e.what();
    std::cerr << "internal error: " << e.what() << "\n";
    code = 3;
  }
  if (timings)
    report["timings_ms"] = {{"total", std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count()}};
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report.dump(2) << "\n";
  }
  return code;
}
