#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galgebra.hpp"
#include "instance.hpp"

namespace dgnwb {

enum class Level { quick, exhaustive };

struct Condition {
  std::string name;
  bool pass = true;
  long long checks = 0;
  std::string witness;

  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
};

struct VerificationReport {
  std::deque<Condition> conditions;  // stable references across get()
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
  Condition& get(const std::string& name) {
    for (auto& c : conditions)
      if (c.name == name) return c;
    conditions.push_back({name, true, 0, ""});
    return conditions.back();
  }
  const Condition* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline ProjectiveRep restrict_projective(const ProjectiveRep& p, const Group& s) {
  require(s.is_subgroup_of(p.group), "projective restriction to a non-subgroup");
  std::vector<Matrix> imgs;
  imgs.reserve(s.order());
  for (int x : s.elements()) imgs.push_back(p(x));
  return ProjectiveRep::from_images(s, p.field, std::move(imgs));
}

inline int find_char(const std::vector<BrauerChar>& list, const BrauerChar& chi) {
  for (size_t i = 0; i < list.size(); ++i)
    if (list[i] == chi) return static_cast<int>(i);
  return -1;
}

inline bool same_set(std::vector<BrauerChar> a, std::vector<BrauerChar> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// The bijection IBr(S | theta) -> IBr(S meet H | phi) induced by (P, P'):
// Q (x) P_S affords chi and Q (x) P'_{S meet H} affords chi' for each
// irreducible projective Q of S/N with factor set alpha^-1.
struct PrimeBijection {
  Group s, sh, n;
  BrauerChar theta, phi;
  std::vector<BrauerChar> domain, image;
  std::vector<ProjectiveRep> witnesses;

  const BrauerChar& operator()(const BrauerChar& chi) const {
    int i = find_char(domain, chi);
    require(i >= 0, "character outside the domain of the bijection");
    return image[i];
  }
};

inline PrimeBijection prime_bijection(Workspace& ws, const BrauerChar& theta, const BrauerChar& phi, const ProjectiveRep& p,
                                      const ProjectiveRep& pp, const Group& s) {
  const Group& n = theta.group;
  require(n.is_subgroup_of(s) && s.is_subgroup_of(p.group), "need N <= S <= G_theta");
  require(char_stabilizer(theta, s) == s, "theta is not S-invariant");
  PrimeBijection b{s, intersection(s, pp.group), n, theta, phi, {}, {}, {}};
  require(intersection(n, b.sh) == phi.group, "S meet H does not meet N in C");
  ProjectiveRep ps = restrict_projective(p, s), pps = restrict_projective(pp, b.sh);
  Quotient q = quotient(s, n);
  auto alpha = descend_cocycle(ps.factor_set(Subfield::whole(p.field)), q);
  auto project = [&q](int x) { return q.project(x); };
  for (auto& qr : twisted_simples(alpha.inverse(), ws.rng())) {
    BrauerChar chi = brauer_char_of(tensor_inflated(qr, project, ps).as_group_rep(), ws.p());
    BrauerChar chi2 = brauer_char_of(tensor_inflated(qr, project, pps).as_group_rep(), ws.p());
    ensure(ws.index_in_ibr(chi) >= 0 && ws.lies_over(chi, theta), "Q (x) P does not afford a character over theta");
    ensure(ws.index_in_ibr(chi2) >= 0 && ws.lies_over(chi2, phi), "Q (x) P' does not afford a character over phi");
    ensure(find_char(b.domain, chi) < 0 && find_char(b.image, chi2) < 0, "induced map is not injective");
    b.domain.push_back(chi);
    b.image.push_back(chi2);
    b.witnesses.push_back(std::move(qr));
  }
  ensure(same_set(b.domain, ws.ibr_over(s, {theta})), "induced map is not total on IBr(S | theta)");
  ensure(same_set(b.image, ws.ibr_over(b.sh, {phi})), "induced map is not onto IBr(S meet H | phi)");
  return b;
}

// Vertices by canonical representative, cached per character.
class VertexCache {
 public:
  const Group& of(Workspace& ws, const BrauerChar& chi) {
    auto key = std::make_pair(chi.group.elements(), chi.values);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, vertex(ws.realization(chi), ws.p())).first->second;
  }

 private:
  std::map<std::pair<std::vector<int>, std::vector<std::vector<int>>>, Group> cache_;
};

// Some (S meet H)-conjugate V of v2 has V N = v1 N.
inline bool vertices_match(const Group& v1, const Group& v2, const Group& n, const Group& sh) {
  Group target = join(v1, n);
  for (int x : sh.elements())
    if (join(conjugate(v2, x), n) == target) return true;
  return false;
}

inline Condition vertex_relation_check(Workspace& ws, const PrimeBijection& b, VertexCache* cache = nullptr) {
  VertexCache local;
  VertexCache& vc = cache ? *cache : local;
  Condition c{"Vertex Relation", true, 0, ""};
  for (size_t i = 0; i < b.domain.size(); ++i) {
    ++c.checks;
    const Group& v1 = vc.of(ws, b.domain[i]);
    const Group& v2 = vc.of(ws, b.image[i]);
    if (!vertices_match(v1, v2, b.n, b.sh)) c.fail("S = " + b.s.describe() + ", chi = " + b.domain[i].str());
  }
  return c;
}

struct DeltaContext {
  HTriple t1, t2;
  ProjectiveRep p, pp;
};

inline DeltaContext context_of(const Prepared& su, const Theorem38Result& r) {
  require(r.ok, "order relation data did not verify");
  return {su.t1, su.t2, r.p, r.pp};
}

struct DeltaMap {
  Group s, sh;
  std::vector<BrauerChar> domain, image;

  const BrauerChar& operator()(const BrauerChar& chi) const {
    int i = find_char(domain, chi);
    require(i >= 0, "character outside IBr(S | theta^H)");
    return image[i];
  }
};

struct DeltaOptions {
  bool last_representative = false;  // greatest subgroup per H-class for the representatives
  int transport_choice = 0;          // which admissible a defines the transported value
  int constituent_choice = 0;        // which constituent theta_1 on S meet H
};

struct DeltaFamily {
  DeltaContext ctx;
  std::vector<Group> representatives;
  std::vector<PrimeBijection> step1;
  std::vector<DeltaMap> maps;  // one per S in S(G, N), sorted by S
  long long transports_checked = 0, constituents_checked = 0;

  const DeltaMap& at(const Group& s) const {
    for (const auto& m : maps)
      if (m.s == s) return m;
    throw PreconditionError("subgroup is not in S(G, N)");
  }
  BrauerChar operator()(const BrauerChar& chi) const { return at(chi.group)(chi); }

  // N-linear extension: a genuine character of some S in S(G, N) whose
  // constituents lie over theta^H, as a multiplicity vector over IBr(S meet H).
  std::vector<long long> linear(Workspace& ws, const BrauerChar& psi) const {
    const DeltaMap& m = at(psi.group);
    auto coef = ws.decompose_ibr(psi);
    auto irr = ws.ibr_chars(psi.group);
    auto irr_h = ws.ibr_chars(m.sh);
    std::vector<long long> out(irr_h.size(), 0);
    for (size_t i = 0; i < coef.size(); ++i) {
      if (coef[i] == 0) continue;
      require(coef[i] > 0, "N-linear extension applied to a virtual character");
      int j = find_char(irr_h, m(irr[i]));
      ensure(j >= 0, "image outside IBr(S meet H)");
      out[j] += coef[i];
    }
    return out;
  }
};

inline DeltaFamily delta_family(Workspace& ws, const DeltaContext& ctx, const DeltaOptions& opt = {}) {
  const HTriple &t1 = ctx.t1, &t2 = ctx.t2;
  const Group &g = t1.g, &n = t1.n, &h = t2.g;
  const auto& amb = *g.ambient();
  int s = t1.s();
  DeltaFamily fam{ctx, {}, {}, {}, 0, 0};
  auto theta_orbit = galois_orbit(t1.theta), phi_orbit = galois_orbit(t2.theta);

  // representatives and their prime bijections
  auto inner = overgroups(t1.g_theta, n);
  for (const auto& cls : conjugacy_orbits(inner, h)) {
    fam.representatives.push_back(opt.last_representative ? cls.back() : cls.front());
    fam.step1.push_back(prime_bijection(ws, t1.theta, t2.theta, ctx.p, ctx.pp, fam.representatives.back()));
  }
  ensure(std::find(fam.representatives.begin(), fam.representatives.end(), n) != fam.representatives.end(),
         "N is not its own class representative");

  // transport to the whole H-class
  std::map<std::vector<int>, DeltaMap> inner_maps;
  for (const auto& sg : inner) {
    DeltaMap m{sg, intersection(sg, h), ws.ibr_over(sg, theta_orbit), {}};
    for (const auto& chi : m.domain) {
      std::vector<BrauerChar> vals;
      for (int t = 0; t < s; ++t)
        for (int x : h.elements()) {
          Group sx = conjugate(sg, x);
          auto it = std::find(fam.representatives.begin(), fam.representatives.end(), sx);
          if (it == fam.representatives.end()) continue;
          BrauerChar ca = act(chi, t, x);
          if (!ws.lies_over(ca, t1.theta)) continue;
          const PrimeBijection& b = fam.step1[it - fam.representatives.begin()];
          vals.push_back(act(b(ca), -t, amb.inv(x)));
          ++fam.transports_checked;
        }
      ensure(!vals.empty(), "no transport to a class representative");
      const BrauerChar& v = vals[opt.transport_choice % vals.size()];
      for (const auto& w : vals) ensure(w == v, "transported value depends on the choice of a");
      m.image.push_back(v);
    }
    inner_maps.emplace(sg.elements(), std::move(m));
  }

  // every overgroup of N through Clifford correspondents over S_theta
  for (const auto& sg : overgroups(g, n)) {
    DeltaMap m{sg, intersection(sg, h), ws.ibr_over(sg, theta_orbit), {}};
    Group st = char_stabilizer(t1.theta, sg);
    const DeltaMap& m1 = inner_maps.at(st.elements());
    for (const auto& chi : m.domain) {
      std::vector<BrauerChar> vals;
      for (const auto& th1 : ws.constituents(chi, n)) {
        ensure(find_char(theta_orbit, th1) >= 0, "constituent outside theta^H");
        BrauerChar chi1 = clifford_correspondent(ws, chi, th1);
        ensure(chi1.group == st, "stabilizers of theta and its conjugate differ");
        vals.push_back(induce_char(m1(chi1), m.sh));
        ++fam.constituents_checked;
      }
      const BrauerChar& v = vals[opt.constituent_choice % vals.size()];
      for (const auto& w : vals) ensure(w == v, "Clifford value depends on the constituent");
      if (st == sg) ensure(v == m1(chi), "Clifford value disagrees with the transported one on S(G_theta, N)");
      m.image.push_back(v);
    }
    for (size_t i = 0; i < m.image.size(); ++i)
      for (size_t j = 0; j < i; ++j) ensure(m.image[i] != m.image[j], "Delta_S is not injective");
    ensure(same_set(m.image, ws.ibr_over(m.sh, phi_orbit)), "Delta_S is not onto IBr(S meet H | phi^H)");
    fam.maps.push_back(std::move(m));
  }
  return fam;
}

inline bool same_family(const DeltaFamily& a, const DeltaFamily& b) {
  if (a.maps.size() != b.maps.size()) return false;
  for (size_t i = 0; i < a.maps.size(); ++i) {
    if (a.maps[i].s != b.maps[i].s || !same_set(a.maps[i].domain, b.maps[i].domain)) return false;
    for (const auto& chi : a.maps[i].domain)
      if (a.maps[i](chi) != b.maps[i](chi)) return false;
  }
  return true;
}

inline std::vector<std::pair<int, int>> pair_actions(const HTriple& t, const Group& h, Level level) {
  std::vector<std::pair<int, int>> out;
  if (level == Level::exhaustive) {
    for (int s = 0; s < t.s(); ++s)
      for (int x : h.elements()) out.emplace_back(s, x);
  } else {
    if (t.s() > 1) out.emplace_back(1, 0);
    for (int x : h.generators()) out.emplace_back(0, x);
  }
  return out;
}

// The four named conditions of the main theorem for a constructed family,
// plus bijectivity, Galois equivariance and the prime-bijection vertex check.
inline VerificationReport verify_family(Workspace& ws, const DeltaFamily& fam, Level level, VertexCache& vc) {
  const HTriple &t1 = fam.ctx.t1, &t2 = fam.ctx.t2;
  const Group &n = t1.n, &h = t2.g;
  VerificationReport rep;
  rep.seed = ws.seed();
  auto theta_orbit = galois_orbit(t1.theta), phi_orbit = galois_orbit(t2.theta);

  Condition& bij = rep.get("Bijectivity");
  for (const auto& m : fam.maps) {
    ++bij.checks;
    auto cod = ws.ibr_over(m.sh, phi_orbit);
    if (m.domain.size() != cod.size() || !same_set(m.image, cod)) bij.fail("S = " + m.s.describe());
  }

  Condition& gal = rep.get("Galois equivariance");
  Condition& conj = rep.get("Conjugation Compatibility");
  for (auto [t, x] : pair_actions(t1, h, level))
    for (const auto& m : fam.maps)
      for (const auto& chi : m.domain) {
        Condition& c = t == 0 ? conj : gal;
        ++c.checks;
        BrauerChar lhs = act(m(chi), t, x), rhs = fam(act(chi, t, x));
        if (lhs != rhs)
          c.fail("a = (" + std::to_string(t) + ", " + std::to_string(x) + "), S = " + m.s.describe() + ", chi = " + chi.str());
      }

  Condition& res = rep.get("Restriction Compatibility");
  for (const auto& ms : fam.maps)
    for (const auto& mt : fam.maps) {
      if (!mt.s.is_subgroup_of(ms.s)) continue;
      for (const auto& chi : ms.domain) {
        ++res.checks;
        auto lhs = ws.decompose_ibr(restrict_char(ms(chi), mt.sh));
        auto rhs = fam.linear(ws, restrict_char(chi, mt.s));
        if (lhs != rhs) res.fail("T = " + mt.s.describe() + ", S = " + ms.s.describe() + ", chi = " + chi.str());
      }
    }

  Condition& dgn = rep.get("DGN Consistency");
  ++dgn.checks;
  if (fam.at(n)(t1.theta) != t2.theta) dgn.fail("Delta_N(theta) = " + fam.at(n)(t1.theta).str());

  Condition& vert = rep.get("Vertex Relation");
  for (const auto& m : fam.maps)
    for (const auto& chi : m.domain) {
      ++vert.checks;
      if (!vertices_match(vc.of(ws, chi), vc.of(ws, m(chi)), n, m.sh))
        vert.fail("S = " + m.s.describe() + ", chi = " + chi.str());
    }
  Condition& pv = rep.get("Prime bijection vertices");
  for (const auto& b : fam.step1) {
    Condition c = vertex_relation_check(ws, b, &vc);
    pv.checks += c.checks;
    if (!c.pass) pv.fail(c.witness);
  }
  return rep;
}

struct TheoremARun {
  Prepared setup;
  Theorem38Result order;
  DeltaFamily family;
  VerificationReport report;
};

// Full pipeline: D, C, H, phi; the order relation from the Y-functions; the
// family Delta_S; the checks.
inline TheoremARun verify_theorem_a(Workspace& ws, const Instance& in, Level level = Level::exhaustive) {
  Prepared su = prepare(ws, in);
  Theorem38Result r = theorem38_pipeline(ws, su.t1, su.t2);
  VerificationReport pre;
  Condition& oc = pre.get("Order relation");
  for (const auto& c : r.order.clauses) {
    ++oc.checks;
    if (!c.pass) oc.fail(c.name + ": " + c.witness);
  }
  if (!r.ok) {
    oc.fail(r.failure);
    pre.seed = ws.seed();
    return {std::move(su), std::move(r), {}, std::move(pre)};
  }
  // The family is built from P and the P' it induces on the Brauer quotient,
  // which ties P' to P independently of the realization choices.
  DeltaContext ctx = context_of(su, r);
  ctx.pp = brauer_quotient_pair(su.t1, su.t2, r.p, su.d);
  OrderReport bq = order_check(su.t1, su.t2, ctx.p, ctx.pp);
  Condition qc{"Order relation (Brauer quotient pair)", true, 0, ""};
  for (const auto& c : bq.clauses) {
    ++qc.checks;
    if (!c.pass) qc.fail(c.name + ": " + c.witness);
  }
  if (!qc.pass) {
    pre.conditions.push_back(qc);
    pre.seed = ws.seed();
    return {std::move(su), std::move(r), {}, std::move(pre)};
  }
  DeltaFamily fam = delta_family(ws, ctx);
  VertexCache vc;
  VerificationReport rep = verify_family(ws, fam, level, vc);
  rep.conditions.insert(rep.conditions.begin(), qc);
  rep.conditions.insert(rep.conditions.begin(), oc);
  return {std::move(su), std::move(r), std::move(fam), std::move(rep)};
}

// Automorphisms of G as element maps; x -> phi(x).
struct Automorphism {
  std::string name;
  GroupMap map;
};

inline Automorphism make_automorphism(const std::string& name, const Group& g, const std::vector<int>& gen_images) {
  GroupMap m = GroupMap::from_generators(g, g, g.generators(), gen_images);
  require(m.is_injective(), "automorphism '" + name + "' is not bijective");
  return {name, m};
}

inline Group image_of(const GroupMap& m, const Group& s) {
  std::vector<int> e;
  for (int x : s.elements()) e.push_back(m(x));
  std::sort(e.begin(), e.end());
  return Group::from_elements(s.ambient(), e);
}

// Some g in G with phi = conjugation by g, if any.
inline std::optional<int> inner_witness(const Group& g, const GroupMap& m) {
  const auto& amb = *g.ambient();
  for (int x : g.elements()) {
    bool ok = true;
    for (int y : g.generators())
      if (amb.conj(y, x) != m(y)) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

// G x| T as a permutation group on the elements of G: right multiplications
// and the automorphisms themselves.
struct Extension {
  PermGroupPtr amb;
  std::vector<int> embed;  // by position in G
  std::vector<int> taus;   // one per automorphism
  int operator()(int x, const Group& g) const { return embed[g.position(x)]; }
};

inline Extension semidirect_extension(const Group& g, const std::vector<Automorphism>& autos) {
  const auto& amb = *g.ambient();
  int n = g.order();
  auto right_mult = [&](int y) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = g.position(amb.mul(g.elements()[i], y));
    return p;
  };
  std::vector<Perm> gens;
  for (int y : g.generators()) gens.push_back(right_mult(y));
  std::vector<Perm> tau_perms;
  for (const auto& a : autos) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = g.position(a.map(g.elements()[i]));
    tau_perms.push_back(p);
    gens.push_back(p);
  }
  Extension e;
  e.amb = PermGroup::generate(n, gens);
  for (int y : g.elements()) e.embed.push_back(e.amb->index_of(right_mult(y)));
  for (const auto& p : tau_perms) e.taus.push_back(e.amb->index_of(p));
  return e;
}

inline Group embed_group(const Extension& e, const Group& g, const Group& s) {
  std::vector<int> el;
  for (int x : s.elements()) el.push_back(e(x, g));
  std::sort(el.begin(), el.end());
  return Group::from_elements(e.amb, el);
}

// Splitting degree needed to run the corollary: that of G x| T.
inline int corollary_field_degree(const Group& g, const std::vector<Automorphism>& autos, int p) {
  if (autos.empty()) return splitting_degree(g, p);
  return splitting_degree(Group::whole(semidirect_extension(g, autos).amb), p);
}

struct CorollaryRun {
  std::vector<std::string> included, excluded;
  bool all_inner = true;
  std::optional<TheoremARun> extended;  // run inside G x| T when some automorphism is outer
  std::vector<std::pair<BrauerChar, BrauerChar>> f;
  VerificationReport report;
};

// f: IBr(G | theta) -> IBr(N_G(D) | phi) and its equivariance under the
// supplied automorphisms (with Galois exponents) stabilizing theta and D.
inline CorollaryRun verify_corollary_b(Workspace& ws, const Instance& in, const std::vector<Automorphism>& autos,
                                       Level level = Level::exhaustive) {
  const Group &g = in.g, &n = in.n, &m = in.m;
  require(g == Group::whole(g.ambient()), "G must be the whole ambient group for the corollary");
  CorollaryRun out;
  TheoremARun base = verify_theorem_a(ws, in, level);
  const Group& d = base.setup.d;
  auto orbit = galois_orbit(in.theta);
  std::vector<const Automorphism*> kept;
  for (const auto& a : autos) {
    require(a.map.domain == g && a.map.codomain == g, "automorphism '" + a.name + "' is not defined on G");
    require(image_of(a.map, n) == n, "automorphism '" + a.name + "' does not stabilize N");
    require(image_of(a.map, m) == m, "automorphism '" + a.name + "' does not stabilize M");
    // theta^phi(x) = theta(phi^-1(x))
    std::vector<int> inv(g.order());
    for (int x : g.elements()) inv[g.position(a.map(x))] = x;
    BrauerChar tp = empty_char(n, in.theta.p, in.theta.field);
    for (size_t k = 0; k < tp.classes.size(); ++k) tp.values[k] = in.theta.value_at(inv[g.position(n.class_rep(tp.classes[k]))]);
    if (find_char(orbit, tp) >= 0 && image_of(a.map, d) == d) {
      kept.push_back(&a);
      out.included.push_back(a.name);
      if (!inner_witness(g, a.map)) out.all_inner = false;
    } else {
      out.excluded.push_back(a.name);
    }
  }
  VerificationReport& rep = out.report;
  rep.seed = ws.seed();
  for (const auto& c : base.report.conditions) rep.conditions.push_back(c);

  Condition& eq = rep.get("Automorphism equivariance");
  Condition& vt = rep.get("Corollary vertex relation");
  if (out.all_inner) {
    if (!base.report.pass()) return out;
    const DeltaMap& dg = base.family.at(g);
    for (const auto& chi : ws.ibr_over(g, {in.theta})) out.f.push_back({chi, dg(chi)});
    for (const auto* a : kept) {
      int xi = *inner_witness(g, a->map);
      for (int t = 0; t < ws.field()->degree(); ++t) {
        if (act(in.theta, t, xi) != in.theta) continue;
        for (const auto& [chi, img] : out.f) {
          ++eq.checks;
          if (dg(act(chi, t, xi)) != act(img, t, xi)) eq.fail(a->name + " t=" + std::to_string(t) + " chi = " + chi.str());
        }
      }
    }
    VertexCache vc;
    for (const auto& [chi, img] : out.f) {
      ++vt.checks;
      if (!vertices_match(vc.of(ws, chi), vc.of(ws, img), n, dg.sh)) vt.fail("chi = " + chi.str());
    }
    return out;
  }

  std::vector<Automorphism> kept_autos;
  for (const auto* a : kept) kept_autos.push_back(*a);
  Extension ext = semidirect_extension(g, kept_autos);
  require(ext.amb->order() <= 500, "G x| T has order above 500");
  Group gt = Group::whole(ext.amb);
  require(ws.field()->degree() % splitting_degree(gt, ws.p()) == 0,
          "the field does not split G x| T; use corollary_field_degree");
  Workspace ws2(ext.amb, ws.p(), ws.field(), ws.seed());
  Group g2 = embed_group(ext, g, g), n2 = embed_group(ext, g, n), m2 = embed_group(ext, g, m), d2 = embed_group(ext, g, d);
  std::optional<BrauerChar> theta2;
  for (const auto& c : ws2.ibr_chars(n2)) {
    bool ok = true;
    for (int x : n.elements())
      if (std::find(in.theta.classes.begin(), in.theta.classes.end(), n.class_of(x)) != in.theta.classes.end() &&
          c.value_at(ext(x, g)) != in.theta.value_at(x)) {
        ok = false;
        break;
      }
    if (ok) theta2 = c;
  }
  ensure(theta2.has_value(), "theta has no image in G x| T");
  out.extended = verify_theorem_a(ws2, {gt, n2, m2, *theta2, d2}, level);
  for (const auto& c : out.extended->report.conditions) {
    Condition& cc = rep.get("Extended: " + c.name);
    cc = c;
    cc.name = "Extended: " + c.name;
  }
  if (!out.extended->report.pass()) return out;
  const DeltaMap& dg = out.extended->family.at(g2);
  for (const auto& chi : ws2.ibr_over(g2, {*theta2})) out.f.push_back({chi, dg(chi)});
  {
    Condition& fb = rep.get("f is a bijection onto IBr(N_G(D) | phi)");
    ++fb.checks;
    std::vector<BrauerChar> imgs;
    for (const auto& pr : out.f) imgs.push_back(pr.second);
    if (!same_set(imgs, ws2.ibr_over(dg.sh, {out.extended->setup.phi}))) fb.fail("image set differs");
  }
  const HTriple& t1 = out.extended->setup.t1;
  for (size_t k = 0; k < kept.size(); ++k) {
    int tau = ext.taus[k];
    for (int t = 0; t < t1.s(); ++t) {
      if (act(*theta2, t, tau) != *theta2) continue;
      for (const auto& [chi, img] : out.f) {
        ++eq.checks;
        if (dg(act(chi, t, tau)) != act(img, t, tau)) eq.fail(kept[k]->name + " t=" + std::to_string(t) + " chi = " + chi.str());
      }
    }
  }
  VertexCache vc;
  for (const auto& [chi, img] : out.f) {
    ++vt.checks;
    if (!vertices_match(vc.of(ws2, chi), vc.of(ws2, img), n2, dg.sh)) vt.fail("chi = " + chi.str());
  }
  return out;
}

}  // namespace dgnwb
