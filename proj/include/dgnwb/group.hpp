#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace dgnwb {

// Images of 0..n-1.  Products compose left to right: (a*b)(x) = b(a(x)).
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

inline bool is_perm(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  for (int x : a) {
    if (x < 0 || x >= static_cast<int>(a.size()) || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline std::string perm_str(const Perm& a) {
  std::string s;
  for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ULL;
    for (int x : p) h = (h ^ static_cast<size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

// A finite permutation group with every element enumerated, sorted
// lexicographically (so the identity has index 0).  Elements are referred to
// by index everywhere else.
class PermGroup {
 public:
  static constexpr size_t kDefaultCap = 10000;

  static std::shared_ptr<const PermGroup> generate(int degree, const std::vector<Perm>& gens, size_t cap = kDefaultCap) {
    for (const auto& g : gens) {
      require(static_cast<int>(g.size()) == degree, "generator degree mismatch");
      require(is_perm(g), "generator is not a permutation");
    }
    auto pg = std::shared_ptr<PermGroup>(new PermGroup());
    pg->degree_ = degree;
    pg->gens_ = gens;
    std::unordered_map<Perm, int, PermHash> seen;
    std::vector<Perm> elems{perm_identity(degree)};
    seen.emplace(elems[0], 0);
    for (size_t i = 0; i < elems.size(); ++i) {
      for (const auto& g : gens) {
        Perm x = perm_mul(elems[i], g);
        if (seen.count(x)) continue;
        if (elems.size() >= cap)
          throw ResourceError("group order exceeds the enumeration cap of " + std::to_string(cap));
        seen.emplace(x, static_cast<int>(elems.size()));
        elems.push_back(std::move(x));
      }
    }
    std::sort(elems.begin(), elems.end());
    pg->elems_ = std::move(elems);
    pg->finish();
    return pg;
  }

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const Perm& element(int i) const { return elems_[i]; }
  const std::vector<Perm>& generators() const { return gens_; }
  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
  }
  int mul(int a, int b) const {
    if (!table_.empty()) return table_[static_cast<size_t>(a) * elems_.size() + b];
    return index_.at(perm_mul(elems_[a], elems_[b]));
  }
  int inv(int a) const { return inv_[a]; }
  // g^-1 x g
  int conj(int x, int g) const { return mul(mul(inv_[g], x), g); }
  int elem_order(int a) const { return order_[a]; }
  int pow(int a, long long k) const {
    k = mod_norm(k, order_[a]);
    int r = 0;
    int b = a;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }
  int exponent() const {
    long long e = 1;
    for (int o : order_) e = std::lcm(e, static_cast<long long>(o));
    return static_cast<int>(e);
  }

 private:
  PermGroup() = default;

  void finish() {
    int n = order();
    index_.reserve(n * 2);
    for (int i = 0; i < n; ++i) index_.emplace(elems_[i], i);
    if (n <= 1024) {
      table_.resize(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table_[static_cast<size_t>(i) * n + j] = index_.at(perm_mul(elems_[i], elems_[j]));
    }
    inv_.resize(n);
    for (int i = 0; i < n; ++i) inv_[i] = index_.at(perm_inv(elems_[i]));
    order_.resize(n);
    for (int i = 0; i < n; ++i) {
      int k = 1, x = i;
      while (x != 0) {
        x = mul(x, i);
        ++k;
      }
      order_[i] = k;
    }
  }

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<int> order_;
};

using PermGroupPtr = std::shared_ptr<const PermGroup>;

// A subgroup of an ambient PermGroup, stored as its sorted element indices.
// Cheap to copy; derived data (generators, classes) is computed on demand.
class Group {
 public:
  Group() = default;

  static Group whole(const PermGroupPtr& amb) {
    std::vector<int> all(amb->order());
    std::iota(all.begin(), all.end(), 0);
    return Group(amb, std::move(all));
  }
  static Group trivial(const PermGroupPtr& amb) { return Group(amb, {0}); }
  static Group generated(const PermGroupPtr& amb, const std::vector<int>& gens) {
    return Group(amb, closure(*amb, gens));
  }
  // Elements must form a subgroup; checked.
  static Group from_elements(const PermGroupPtr& amb, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Group g(amb, elems);
    require(!elems.empty() && elems[0] == 0, "subgroup must contain the identity");
    for (int a : g.generators())
      for (int x : elems) require(g.contains(amb->mul(x, a)), "element set is not closed");
    return g;
  }

  const PermGroupPtr& ambient() const { return d_->amb; }
  int order() const { return static_cast<int>(d_->elems.size()); }
  const std::vector<int>& elements() const { return d_->elems; }
  bool contains(int x) const { return position(x) >= 0; }
  int position(int x) const {
    auto it = std::lower_bound(d_->elems.begin(), d_->elems.end(), x);
    return (it != d_->elems.end() && *it == x) ? static_cast<int>(it - d_->elems.begin()) : -1;
  }
  int mul(int a, int b) const { return d_->amb->mul(a, b); }
  int inv(int a) const { return d_->amb->inv(a); }

  bool operator==(const Group& o) const { return d_->elems == o.d_->elems; }
  bool operator!=(const Group& o) const { return !(*this == o); }
  // Subgroup order: by size, then lexicographically by element indices.
  bool operator<(const Group& o) const {
    if (order() != o.order()) return order() < o.order();
    return d_->elems < o.d_->elems;
  }

  bool is_subgroup_of(const Group& o) const {
    return std::includes(o.elements().begin(), o.elements().end(), elements().begin(), elements().end());
  }
  bool is_trivial() const { return order() == 1; }

  // Greedy generating set: least elements not in the span of earlier ones.
  const std::vector<int>& generators() const {
    std::call_once(d_->gens_once, [this] {
      auto& amb = *d_->amb;
      std::vector<char> in(amb.order(), 0);
      in[0] = 1;
      std::vector<int> span{0};
      for (int x : d_->elems) {
        if (in[x]) continue;
        d_->gens.push_back(x);
        span = closure(amb, d_->gens);
        for (int y : span) in[y] = 1;
      }
    });
    return d_->gens;
  }

  // BFS tree over generators(): for position i > 0, element(i) =
  // element(parent) * generators()[slot].
  const std::vector<std::pair<int, int>>& word_tree() const {
    std::call_once(d_->tree_once, [this] {
      const auto& gens = generators();
      int n = order();
      d_->tree.assign(n, {-1, -1});
      std::vector<int> queue{0};
      std::vector<char> seen(n, 0);
      seen[0] = 1;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int pos = queue[qi];
        for (size_t s = 0; s < gens.size(); ++s) {
          int y = position(mul(d_->elems[pos], gens[s]));
          if (seen[y]) continue;
          seen[y] = 1;
          d_->tree[y] = {pos, static_cast<int>(s)};
          queue.push_back(y);
        }
      }
      d_->bfs_order = queue;
    });
    return d_->tree;
  }
  // Positions in BFS order (parents before children).
  const std::vector<int>& bfs_order() const {
    word_tree();
    return d_->bfs_order;
  }

  // Conjugacy classes as sorted element lists, ordered by least element.
  const std::vector<std::vector<int>>& classes() const {
    std::call_once(d_->classes_once, [this] {
      const auto& amb = *d_->amb;
      const auto& gens = generators();
      int n = order();
      d_->class_of.assign(n, -1);
      for (int i = 0; i < n; ++i) {
        if (d_->class_of[i] >= 0) continue;
        int cid = static_cast<int>(d_->classes.size());
        std::vector<int> orbit{d_->elems[i]};
        d_->class_of[i] = cid;
        for (size_t k = 0; k < orbit.size(); ++k)
          for (int g : gens) {
            int y = amb.conj(orbit[k], g);
            int py = position(y);
            if (d_->class_of[py] < 0) {
              d_->class_of[py] = cid;
              orbit.push_back(y);
            }
          }
        std::sort(orbit.begin(), orbit.end());
        d_->classes.push_back(std::move(orbit));
      }
    });
    return d_->classes;
  }
  int class_of(int x) const {
    classes();
    int pos = position(x);
    require(pos >= 0, "element outside the group");
    return d_->class_of[pos];
  }
  int class_rep(int c) const { return classes()[c][0]; }
  int class_size(int c) const { return static_cast<int>(classes()[c].size()); }

  // Indices of classes whose elements have order prime to p.
  std::vector<int> p_regular_classes(int p) const {
    std::vector<int> out;
    const auto& cl = classes();
    for (size_t c = 0; c < cl.size(); ++c)
      if (d_->amb->elem_order(cl[c][0]) % p != 0) out.push_back(static_cast<int>(c));
    return out;
  }
  int class_power(int c, long long k) const { return class_of(d_->amb->pow(class_rep(c), k)); }

  int exponent() const {
    long long e = 1;
    for (int x : d_->elems) e = std::lcm(e, static_cast<long long>(d_->amb->elem_order(x)));
    return static_cast<int>(e);
  }

  std::string describe() const {
    std::string s = "order " + std::to_string(order()) + " <";
    const auto& g = generators();
    for (size_t i = 0; i < g.size(); ++i) s += (i ? " | " : "") + perm_str(d_->amb->element(g[i]));
    return s + ">";
  }

  static std::vector<int> closure(const PermGroup& amb, const std::vector<int>& gens) {
    std::vector<char> in(amb.order(), 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (size_t i = 0; i < out.size(); ++i)
      for (int g : gens) {
        int y = amb.mul(out[i], g);
        if (!in[y]) {
          in[y] = 1;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Data {
    PermGroupPtr amb;
    std::vector<int> elems;
    std::once_flag gens_once, tree_once, classes_once;
    std::vector<int> gens;
    std::vector<std::pair<int, int>> tree;
    std::vector<int> bfs_order;
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;
  };
  Group(PermGroupPtr amb, std::vector<int> elems) : d_(std::make_shared<Data>()) {
    d_->amb = std::move(amb);
    d_->elems = std::move(elems);
  }
  std::shared_ptr<Data> d_;
};

inline Group conjugate(const Group& s, int g) {
  const auto& amb = *s.ambient();
  std::vector<int> e;
  e.reserve(s.order());
  for (int x : s.elements()) e.push_back(amb.conj(x, g));
  std::sort(e.begin(), e.end());
  return Group::from_elements(s.ambient(), e);
}

inline Group intersection(const Group& a, const Group& b) {
  std::vector<int> e;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(e));
  return Group::from_elements(a.ambient(), e);
}

inline Group join(const Group& a, const Group& b) {
  std::vector<int> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Group::generated(a.ambient(), gens);
}

// Elements of g normalizing the set s.
inline Group normalizer(const Group& g, const Group& s) {
  const auto& amb = *g.ambient();
  std::vector<int> out;
  for (int x : g.elements()) {
    bool ok = true;
    for (int y : s.generators())
      if (!s.contains(amb.conj(y, x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Group::from_elements(g.ambient(), out);
}

// Elements of g commuting with every element of the set.
inline Group centralizer(const Group& g, const std::vector<int>& set) {
  const auto& amb = *g.ambient();
  std::vector<int> out;
  for (int x : g.elements()) {
    bool ok = true;
    for (int y : set)
      if (amb.mul(x, y) != amb.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return Group::from_elements(g.ambient(), out);
}
inline Group centralizer(const Group& g, const Group& s) { return centralizer(g, s.generators()); }

inline Group center(const Group& g) { return centralizer(g, g); }

inline bool is_normal(const Group& n, const Group& g) {
  if (!n.is_subgroup_of(g)) return false;
  const auto& amb = *g.ambient();
  for (int x : g.generators())
    for (int y : n.generators())
      if (!n.contains(amb.conj(y, x))) return false;
  return true;
}

inline bool is_p_group(const Group& g, int p) { return p_prime_part(g.order(), p) == 1; }

// Product set AB when it is a subgroup (checked by size).
inline Group product(const Group& a, const Group& b) { return join(a, b); }

// Right coset representatives of t in s: least element of each coset t*x,
// ordered by that element.
inline std::vector<int> right_transversal(const Group& s, const Group& t) {
  require(t.is_subgroup_of(s), "transversal: not a subgroup");
  const auto& amb = *s.ambient();
  std::vector<char> used(amb.order(), 0);
  std::vector<int> reps;
  for (int x : s.elements()) {
    if (used[x]) continue;
    reps.push_back(x);
    for (int y : t.elements()) used[amb.mul(y, x)] = 1;
  }
  return reps;
}

// G/N as a permutation group on right cosets, with the projection.
struct Quotient {
  Group source;
  Group normal;
  PermGroupPtr bar_ambient;
  Group bar;                    // whole of bar_ambient
  std::vector<int> coset_reps;  // least element of each coset
  std::vector<int> proj;        // by position in source: image index in bar_ambient
  int project(int g) const {
    int pos = source.position(g);
    require(pos >= 0, "projecting an element outside the group");
    return proj[pos];
  }
  // Preimage of a subgroup of the quotient.
  Group preimage(const Group& sbar) const {
    std::vector<int> e;
    for (size_t i = 0; i < proj.size(); ++i)
      if (sbar.contains(proj[i])) e.push_back(source.elements()[i]);
    return Group::from_elements(source.ambient(), e);
  }
  Group image(const Group& s) const {
    std::vector<int> e;
    for (int x : s.elements()) e.push_back(project(x));
    return Group::from_elements(bar_ambient, e);
  }
};

inline Quotient quotient(const Group& g, const Group& n) {
  require(is_normal(n, g), "quotient by a non-normal subgroup");
  const auto& amb = *g.ambient();
  Quotient q;
  q.source = g;
  q.normal = n;
  q.coset_reps = right_transversal(g, n);
  std::unordered_map<int, int> coset_of;
  for (size_t c = 0; c < q.coset_reps.size(); ++c)
    for (int y : n.elements()) coset_of[amb.mul(y, q.coset_reps[c])] = static_cast<int>(c);
  int k = static_cast<int>(q.coset_reps.size());
  auto image_perm = [&](int x) {
    Perm p(k);
    for (int c = 0; c < k; ++c) p[c] = coset_of.at(amb.mul(q.coset_reps[c], x));
    return p;
  };
  std::vector<Perm> gens;
  for (int x : g.generators()) gens.push_back(image_perm(x));
  q.bar_ambient = PermGroup::generate(k, gens);
  q.bar = Group::whole(q.bar_ambient);
  q.proj.resize(g.order());
  for (int i = 0; i < g.order(); ++i) q.proj[i] = q.bar_ambient->index_of(image_perm(g.elements()[i]));
  ensure(q.bar_ambient->order() * n.order() == g.order(), "|G| != |N| |G/N|");
  return q;
}

// Every subgroup of g, ascending in subgroup order.  Cyclic extension from
// the trivial group; capped.
inline std::vector<Group> all_subgroups(const Group& g, int cap = 1000) {
  if (g.order() > cap) throw ResourceError("subgroup enumeration limited to groups of order " + std::to_string(cap));
  const auto& amb = g.ambient();
  std::set<std::vector<int>> seen;
  std::vector<Group> list{Group::trivial(amb)};
  seen.insert(list[0].elements());
  for (size_t i = 0; i < list.size(); ++i) {
    Group a = list[i];
    std::vector<char> covered(amb->order(), 0);
    for (int y : a.elements()) covered[y] = 1;
    for (int x : g.elements()) {
      if (covered[x]) continue;
      std::vector<int> gens = a.generators();
      gens.push_back(x);
      auto elems = Group::closure(*amb, gens);
      if (seen.insert(elems).second) list.push_back(Group::from_elements(amb, elems));
      covered[x] = 1;
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

inline std::vector<Group> p_subgroups(const Group& g, int p) {
  std::vector<Group> out;
  for (auto& s : all_subgroups(g))
    if (is_p_group(s, p)) out.push_back(s);
  return out;
}

// Partition of a list of subgroups into orbits under conjugation by `by`;
// each orbit sorted, orbits ordered by their least member.
inline std::vector<std::vector<Group>> conjugacy_orbits(const std::vector<Group>& subs, const Group& by) {
  std::vector<std::vector<Group>> orbits;
  std::set<std::vector<int>> done;
  std::vector<Group> sorted = subs;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& s : sorted) {
    if (done.count(s.elements())) continue;
    std::vector<Group> orbit{s};
    done.insert(s.elements());
    for (size_t i = 0; i < orbit.size(); ++i)
      for (int x : by.generators()) {
        Group c = conjugate(orbit[i], x);
        if (done.insert(c.elements()).second) orbit.push_back(c);
      }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Subgroups S with N <= S <= G, pulled back from subgroups of G/N.
inline std::vector<Group> overgroups(const Group& g, const Group& n) {
  require(is_normal(n, g), "overgroups: N is not normal in G");
  Quotient q = quotient(g, n);
  if (q.bar.order() > 64) throw ResourceError("overgroups: |G/N| exceeds 64");
  std::vector<Group> out;
  for (const auto& sb : all_subgroups(q.bar)) out.push_back(q.preimage(sb));
  std::sort(out.begin(), out.end());
  return out;
}

// Complements D to N in M: D N = M, D and N meet trivially.
inline std::vector<Group> complements(const Group& m, const Group& n) {
  require(is_normal(n, m), "complements: N is not normal in M");
  int idx = m.order() / n.order();
  std::vector<Group> out;
  for (auto& d : all_subgroups(m))
    if (d.order() == idx && intersection(d, n).is_trivial()) out.push_back(d);
  return out;
}

// |G| recomputed as |orbit| * |stabilizer| down a chain of point stabilizers,
// orbits taken under the generators only.
inline long long order_by_orbit_stabilizer(const Group& g) {
  const auto& amb = *g.ambient();
  if (g.order() == 1) return 1;
  int deg = amb.degree();
  int pt = -1;
  for (int x : g.generators()) {
    const Perm& p = amb.element(x);
    for (int i = 0; i < deg && pt < 0; ++i)
      if (p[i] != i) pt = i;
    if (pt >= 0) break;
  }
  std::vector<char> seen(deg, 0);
  std::vector<int> orbit{pt};
  seen[pt] = 1;
  for (size_t i = 0; i < orbit.size(); ++i)
    for (int x : g.generators()) {
      int y = amb.element(x)[orbit[i]];
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
    }
  std::vector<int> stab;
  for (int x : g.elements())
    if (amb.element(x)[pt] == pt) stab.push_back(x);
  return static_cast<long long>(orbit.size()) * order_by_orbit_stabilizer(Group::from_elements(g.ambient(), stab));
}

// A homomorphism given by element images (indexed by domain position).
struct GroupMap {
  Group domain;
  Group codomain;
  std::vector<int> images;
  int operator()(int x) const {
    int pos = domain.position(x);
    require(pos >= 0, "map applied outside its domain");
    return images[pos];
  }

  // Extends generator images; throws if the assignment is not a
  // well-defined homomorphism.
  static GroupMap from_generators(const Group& dom, const Group& cod, const std::vector<int>& gens,
                                  const std::vector<int>& gen_images) {
    require(gens.size() == gen_images.size(), "generator image count mismatch");
    const auto& da = *dom.ambient();
    const auto& ca = *cod.ambient();
    for (int x : gens) require(dom.contains(x), "map generator outside the domain");
    for (int y : gen_images) require(cod.contains(y), "map image outside the codomain");
    GroupMap m{dom, cod, std::vector<int>(dom.order(), -1)};
    m.images[dom.position(0)] = 0;
    std::vector<int> queue{0};
    for (size_t i = 0; i < queue.size(); ++i) {
      int x = queue[i];
      int fx = m.images[dom.position(x)];
      for (size_t k = 0; k < gens.size(); ++k) {
        int y = da.mul(x, gens[k]);
        int fy = ca.mul(fx, gen_images[k]);
        int py = dom.position(y);
        if (m.images[py] < 0) {
          m.images[py] = fy;
          queue.push_back(y);
        } else if (m.images[py] != fy) {
          throw PreconditionError("generator images do not define a homomorphism");
        }
      }
    }
    require(static_cast<int>(queue.size()) == dom.order(), "map generators do not generate the domain");
    return m;
  }

  bool is_injective() const {
    std::vector<int> s = images;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  }
};

}  // namespace dgnwb
