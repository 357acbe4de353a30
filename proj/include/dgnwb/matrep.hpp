#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cocycle.hpp"
#include "group.hpp"
#include "meataxe.hpp"
#include "tower.hpp"

namespace dgnwb {

// Representation of a group by invertible matrices; images stored for every
// element, indexed by position in group.elements().
struct MatrixRep {
  Group group;
  FieldPtr field;
  int dim = 0;
  std::vector<Matrix> images;

  const Matrix& operator()(int x) const {
    int pos = group.position(x);
    require(pos >= 0, "representation evaluated outside its group");
    return images[pos];
  }

  std::vector<Matrix> generator_images() const {
    std::vector<Matrix> out;
    for (int g : group.generators()) out.push_back((*this)(g));
    return out;
  }

  Module module() const { return Module{field, dim, generator_images(), images}; }

  // X(gh) = X(g) X(h): exhaustive for |G| <= 200, 1000 random pairs otherwise.
  bool is_homomorphism(Rng* rng = nullptr) const {
    int n = group.order();
    if (!images[group.position(0)].is_identity()) return false;
    auto check = [&](int a, int b) {
      int ga = group.elements()[a], gb = group.elements()[b];
      return images[a] * images[b] == (*this)(group.mul(ga, gb));
    };
    if (n <= 200) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!check(a, b)) return false;
      return true;
    }
    Rng local(99);
    Rng& r = rng ? *rng : local;
    for (int t = 0; t < 1000; ++t)
      if (!check(static_cast<int>(r() % n), static_cast<int>(r() % n))) return false;
    return true;
  }

  // Extends images of group.generators() along the word tree.
  static MatrixRep from_generator_images(const Group& g, const FieldPtr& f, const std::vector<Matrix>& gen_images) {
    require(gen_images.size() == g.generators().size(), "one image per generator required");
    MatrixRep r{g, f, 0, std::vector<Matrix>(g.order())};
    r.dim = gen_images.empty() ? 0 : gen_images[0].rows();
    if (gen_images.empty()) {
      r.dim = 1;
    }
    const auto& tree = g.word_tree();
    r.images[0] = Matrix::identity(f, r.dim);
    for (int pos : g.bfs_order()) {
      if (pos == 0) continue;
      r.images[pos] = r.images[tree[pos].first] * gen_images[tree[pos].second];
    }
    return r;
  }

  // Extends images of arbitrary generators; throws if not a homomorphism.
  static MatrixRep from_generators(const Group& g, const FieldPtr& f, const std::vector<int>& gens,
                                   const std::vector<Matrix>& imgs) {
    require(gens.size() == imgs.size() && !gens.empty(), "generator/image mismatch");
    int d = imgs[0].rows();
    MatrixRep r{g, f, d, std::vector<Matrix>(g.order())};
    std::vector<char> have(g.order(), 0);
    r.images[0] = Matrix::identity(f, d);
    have[0] = 1;
    std::vector<int> queue{0};
    for (size_t i = 0; i < queue.size(); ++i) {
      int x = g.elements()[queue[i]];
      for (size_t k = 0; k < gens.size(); ++k) {
        int y = g.mul(x, gens[k]);
        int py = g.position(y);
        require(py >= 0, "generator outside the group");
        Matrix m = r.images[queue[i]] * imgs[k];
        if (!have[py]) {
          have[py] = 1;
          r.images[py] = std::move(m);
          queue.push_back(py);
        } else if (r.images[py] != m) {
          throw PreconditionError("generator images do not define a representation");
        }
      }
    }
    require(static_cast<int>(queue.size()) == g.order(), "generators do not generate the group");
    return r;
  }

  static MatrixRep from_function(const Group& g, const FieldPtr& f, int dim, const std::function<Matrix(int)>& fn) {
    MatrixRep r{g, f, dim, {}};
    r.images.reserve(g.order());
    for (int x : g.elements()) r.images.push_back(fn(x));
    return r;
  }
};

inline MatrixRep trivial_rep(const Group& g, const FieldPtr& f, int n = 1) {
  return MatrixRep::from_function(g, f, n, [&](int) { return Matrix::identity(f, n); });
}

// Right regular representation: basis e_x, e_x g = e_{xg}.
inline MatrixRep regular_rep(const Group& g, const FieldPtr& f) {
  int n = g.order();
  return MatrixRep::from_function(g, f, n, [&](int x) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, g.position(g.mul(g.elements()[i], x))) = 1;
    return m;
  });
}

inline MatrixRep restrict_rep(const MatrixRep& r, const Group& s) {
  require(s.is_subgroup_of(r.group), "restriction to a non-subgroup");
  return MatrixRep::from_function(s, r.field, r.dim, [&](int x) { return r(x); });
}

// Induced representation with the least-element right transversal g_i of T in
// S: block (i,j) of the image of s is X(g_i s g_j^-1) when g_i s lies in T g_j.
inline MatrixRep induce_rep(const MatrixRep& r, const Group& s) {
  const Group& t = r.group;
  require(t.is_subgroup_of(s), "induction from a non-subgroup");
  auto reps = right_transversal(s, t);
  int k = static_cast<int>(reps.size()), d = r.dim;
  const auto& amb = *s.ambient();
  return MatrixRep::from_function(s, r.field, k * d, [&](int x) {
    Matrix m(r.field, k * d, k * d);
    for (int i = 0; i < k; ++i) {
      int y = amb.mul(reps[i], x);
      for (int j = 0; j < k; ++j) {
        int h = amb.mul(y, amb.inv(reps[j]));
        if (t.contains(h)) {
          m.set_block(i * d, j * d, r(h));
          break;
        }
      }
    }
    return m;
  });
}

inline MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
  require(a.group == b.group, "direct sum over different groups");
  return MatrixRep::from_function(a.group, a.field, a.dim + b.dim, [&](int x) {
    Matrix m(a.field, a.dim + b.dim, a.dim + b.dim);
    m.set_block(0, 0, a(x));
    m.set_block(a.dim, a.dim, b(x));
    return m;
  });
}

inline MatrixRep tensor_rep(const MatrixRep& a, const MatrixRep& b) {
  require(a.group == b.group, "tensor over different groups");
  return MatrixRep::from_function(a.group, a.field, a.dim * b.dim, [&](int x) { return a(x).kron(b(x)); });
}

// y -> Q^-1 X(y) Q
inline MatrixRep conjugate_by_matrix(const MatrixRep& r, const Matrix& q) {
  Matrix qi = inverse(q);
  return MatrixRep::from_function(r.group, r.field, r.dim, [&](int x) { return qi * r(x) * q; });
}

// Representation of S^g = g^-1 S g given by y -> X(g y g^-1)^(p^t).
inline MatrixRep act_rep(const MatrixRep& r, long long t, int g) {
  const auto& amb = *r.group.ambient();
  Group sg = conjugate(r.group, g);
  int gi = amb.inv(g);
  return MatrixRep::from_function(sg, r.field, r.dim, [&](int y) { return r(amb.conj(y, gi)).frobenius(t); });
}

inline std::optional<Matrix> intertwiner(const MatrixRep& x1, const MatrixRep& x2) {
  require(x1.group == x2.group, "intertwiner between representations of different groups");
  if (x1.dim != x2.dim) return std::nullopt;
  if (x1.group.generators().empty()) return Matrix::identity(x1.field, x1.dim);
  return intertwiner(x1.generator_images(), x2.generator_images());
}

// Composition factors of a representation, each as a representation.
struct RepConstituent {
  MatrixRep rep;
  int multiplicity;
};

inline MatrixRep rep_from_module(const Group& g, const Module& m) {
  ensure(m.span.size() == static_cast<size_t>(g.order()), "module does not carry all element images");
  return MatrixRep{g, m.field, m.dim, m.span};
}

inline std::vector<RepConstituent> split_into_irreducibles(const MatrixRep& r, Rng& rng, const Subfield* k = nullptr,
                                                          int stop_after = -1) {
  Subfield kk = k ? *k : Subfield::whole(r.field);
  auto cons = composition_factors(r.module(), kk, rng, stop_after);
  std::vector<RepConstituent> out;
  for (auto& c : cons) out.push_back({rep_from_module(r.group, c.module), c.multiplicity});
  return out;
}

// The representation viewed over the subfield k by restriction of scalars:
// entries of F are replaced by their regular matrices over k.
inline MatrixRep restrict_scalars(const MatrixRep& r, const Subfield& k) {
  FieldTower tower(r.field, r.field->degree(), k.degree());
  int d = r.dim * tower.relative_degree();
  return MatrixRep::from_function(r.group, r.field, d, [&](int x) { return tower.embed(r(x)); });
}

// An equivalent representation with all entries in k, when one exists: an
// irreducible constituent of the restriction of scalars.
inline MatrixRep realize_over(const MatrixRep& r, const Subfield& k, Rng& rng) {
  if (k.degree() == r.field->degree()) return r;
  MatrixRep big = restrict_scalars(r, k);
  Module m = some_irreducible_constituent(big.module(), k, rng);
  ensure(m.dim == r.dim, "realization over the subfield has the wrong dimension");
  return rep_from_module(r.group, m);
}


// Projective representation: P(g)P(h) = alpha(g,h) P(gh).  Images and factor
// set are stored for every element (by position).
struct ProjectiveRep {
  Group group;
  FieldPtr field;
  int dim = 0;
  std::vector<Matrix> images;
  std::vector<Elem> factor;  // n*n

  const Matrix& operator()(int x) const {
    int pos = group.position(x);
    require(pos >= 0, "projective representation evaluated outside its group");
    return images[pos];
  }
  Elem factor_at(int a, int b) const {
    return factor[static_cast<size_t>(group.position(a)) * group.order() + group.position(b)];
  }

  // Reads the factor set off the images; throws if some P(g)P(h)P(gh)^-1 is
  // not scalar.
  static ProjectiveRep from_images(const Group& g, const FieldPtr& f, std::vector<Matrix> images) {
    ProjectiveRep r{g, f, images.empty() ? 0 : images[0].rows(), std::move(images), {}};
    int n = g.order();
    r.factor.assign(static_cast<size_t>(n) * n, 0);
    std::vector<Matrix> inv;
    inv.reserve(n);
    for (const auto& m : r.images) inv.push_back(inverse(m));
    const auto& el = g.elements();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = g.position(g.mul(el[a], el[b]));
        auto z = (r.images[a] * r.images[b] * inv[ab]).scalar_value();
        if (!z || *z == 0) throw InternalError("images do not form a projective representation");
        r.factor[static_cast<size_t>(a) * n + b] = *z;
      }
    return r;
  }

  TwistedCocycle factor_set(const Subfield& e) const { return TwistedCocycle{group, e, {}, factor}; }

  MatrixRep as_group_rep() const {
    for (Elem v : factor) ensure(v == 1, "factor set is not trivial");
    return MatrixRep{group, field, dim, images};
  }
};

// Regular module of the twisted group algebra: u_h u_g = alpha(h,g) u_hg,
// right multiplication by u_g has entry alpha(h,g) at (h, hg).
inline Module twisted_regular_module(const TwistedCocycle& alpha) {
  const Group& g = alpha.group;
  const FieldPtr& f = alpha.E.field();
  int n = g.order();
  Module m{f, n, {}, {}};
  for (int x = 0; x < n; ++x) {
    Matrix r(f, n, n);
    for (int h = 0; h < n; ++h) r(h, g.position(g.mul(g.elements()[h], g.elements()[x]))) = alpha.at(h, x);
    m.span.push_back(r);
  }
  for (int x : g.generators()) m.gens.push_back(m.span[g.position(x)]);
  return m;
}

// All irreducible projective representations with factor set alpha_inv over
// the full field, one per isomorphism type.
inline std::vector<ProjectiveRep> twisted_simples(const TwistedCocycle& alpha_inv, Rng& rng) {
  require(alpha_inv.twist.empty() || std::all_of(alpha_inv.twist.begin(), alpha_inv.twist.end(), [](int t) { return t == 0; }),
          "twisted group algebra needs a trivially acting cocycle");
  require(alpha_inv.is_normalized(), "twisted group algebra needs a normalized cocycle");
  Module reg = twisted_regular_module(alpha_inv);
  auto cons = composition_factors(reg, Subfield::whole(reg.field), rng);
  std::vector<ProjectiveRep> out;
  for (auto& c : cons) {
    auto pr = ProjectiveRep::from_images(alpha_inv.group, reg.field, c.module.span);
    ensure(pr.factor == alpha_inv.values, "constituent of the twisted regular module has the wrong factor set");
    out.push_back(std::move(pr));
  }
  std::sort(out.begin(), out.end(), [](const ProjectiveRep& a, const ProjectiveRep& b) { return a.dim < b.dim; });
  return out;
}

// s -> Q(bar s) (x) P(s) for s in P's group, bar given by `project`.
inline ProjectiveRep tensor_inflated(const ProjectiveRep& q, const std::function<int(int)>& project, const ProjectiveRep& p) {
  std::vector<Matrix> imgs;
  imgs.reserve(p.group.order());
  for (int x : p.group.elements()) imgs.push_back(q(project(x)).kron(p(x)));
  return ProjectiveRep::from_images(p.group, p.field, std::move(imgs));
}

}  // namespace dgnwb
