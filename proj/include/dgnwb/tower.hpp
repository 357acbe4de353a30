#pragma once

#include <vector>

#include "matrix.hpp"

namespace dgnwb {

// The subfield K = GF(p^big) of F viewed as a vector space over its subfield
// k = GF(p^small), with basis 1, u, ..., u^(r-1) for the primitive u of K.
// Gives coordinates, regular (right multiplication) matrices, and the
// entrywise block embedding M_m(K) -> M_{mr}(k).
class FieldTower {
 public:
  FieldTower() = default;
  FieldTower(FieldPtr f, int big, int small) : f_(std::move(f)), big_(f_, big), small_(f_, small) {
    require(big % small == 0, "tower degrees must divide");
    r_ = big / small;
    const Field& F = *f_;
    Elem u = big_.primitive();
    Elem v = small_.primitive();
    basis_.resize(r_);
    Elem ui = 1;
    for (int i = 0; i < r_; ++i) {
      basis_[i] = ui;
      ui = F.mul(ui, u);
    }
    small_basis_.resize(small);
    Elem vj = 1;
    for (int j = 0; j < small; ++j) {
      small_basis_[j] = vj;
      vj = F.mul(vj, v);
    }
    int s = F.degree();
    Matrix rows(f_, big, s);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < small; ++j) {
        auto d = F.digits(F.mul(basis_[i], small_basis_[j]));
        for (int c = 0; c < s; ++c) rows(i * small + j, c) = static_cast<Elem>(d[c]);
      }
    coords_ = Coordinates(rows);
  }

  const FieldPtr& field() const { return f_; }
  const Subfield& big() const { return big_; }
  const Subfield& small() const { return small_; }
  int relative_degree() const { return r_; }
  Elem basis(int i) const { return basis_[i]; }

  // c_0..c_{r-1} in k with y = sum c_i u^i.
  Vec coords(Elem y) const {
    const Field& F = *f_;
    auto d = F.digits(y);
    Vec dv(d.begin(), d.end());
    auto a = coords_.coords(dv);
    ensure(a.has_value(), "element outside the tower's top field");
    int sm = small_.degree();
    Vec c(r_, 0);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < sm; ++j) c[i] = F.add(c[i], F.mul((*a)[i * sm + j], small_basis_[j]));
    return c;
  }
  Elem from_coords(const Vec& c) const {
    const Field& F = *f_;
    Elem y = 0;
    for (int i = 0; i < r_; ++i) y = F.add(y, F.mul(c[i], basis_[i]));
    return y;
  }

  // Matrix of right multiplication by z: row i holds coords(u^i z).
  Matrix regular(Elem z) const {
    Matrix m(f_, r_, r_);
    for (int i = 0; i < r_; ++i) m.set_row(i, coords(f_->mul(basis_[i], z)));
    return m;
  }

  // Entrywise block embedding.
  Matrix embed(const Matrix& x) const {
    Matrix out(f_, x.rows() * r_, x.cols() * r_);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j)
        if (x(i, j)) out.set_block(i * r_, j * r_, regular(x(i, j)));
    return out;
  }

  // Inverse of embed, or nullopt when y is not in the image.
  std::optional<Matrix> unembed(const Matrix& y) const {
    if (y.rows() % r_ || y.cols() % r_) return std::nullopt;
    int m = y.rows() / r_, n = y.cols() / r_;
    Matrix x(f_, m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        Vec c(r_);
        for (int k = 0; k < r_; ++k) {
          c[k] = y(i * r_, j * r_ + k);
          if (!small_.contains(c[k])) return std::nullopt;
        }
        x(i, j) = from_coords(c);
      }
    if (embed(x) != y) return std::nullopt;
    return x;
  }

 private:
  FieldPtr f_;
  Subfield big_, small_;
  int r_ = 1;
  std::vector<Elem> basis_, small_basis_;
  Coordinates coords_;
};

}  // namespace dgnwb
