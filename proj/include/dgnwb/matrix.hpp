#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace dgnwb {

using Vec = std::vector<Elem>;

// Dense matrix over a finite field.  Vectors are rows; a matrix acts on the
// right of a row vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, int r, int c) : f_(std::move(f)), r_(r), c_(c), a_(static_cast<size_t>(r) * c, 0) {}

  static Matrix identity(const FieldPtr& f, int n) { return scalar(f, n, 1); }
  static Matrix scalar(const FieldPtr& f, int n, Elem z) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = z;
    return m;
  }
  static Matrix from_rows(const FieldPtr& f, const std::vector<Vec>& rows, int cols) {
    Matrix m(f, static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.r_; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }
  static Matrix row_vector(const FieldPtr& f, const Vec& v) { return from_rows(f, {v}, static_cast<int>(v.size())); }

  const FieldPtr& field() const { return f_; }
  int rows() const { return r_; }
  int cols() const { return c_; }
  Elem& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  Elem operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
  Elem* row_ptr(int i) { return a_.data() + static_cast<size_t>(i) * c_; }
  const Elem* row_ptr(int i) const { return a_.data() + static_cast<size_t>(i) * c_; }
  Vec row(int i) const { return Vec(row_ptr(i), row_ptr(i) + c_); }
  void set_row(int i, const Vec& v) { std::copy(v.begin(), v.end(), row_ptr(i)); }
  const std::vector<Elem>& data() const { return a_; }
  // Entries in row-major order as one vector.
  Vec flatten() const { return a_; }
  static Matrix unflatten(const FieldPtr& f, const Vec& v, int r, int c) {
    Matrix m(f, r, c);
    m.a_ = v;
    return m;
  }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const {
    if (r_ != o.r_) return r_ < o.r_;
    if (c_ != o.c_) return c_ < o.c_;
    return a_ < o.a_;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
  }
  bool is_square() const { return r_ == c_; }
  // Returns the scalar if this is z*I.
  std::optional<Elem> scalar_value() const {
    if (!is_square() || r_ == 0) return std::nullopt;
    Elem z = (*this)(0, 0);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if ((*this)(i, j) != (i == j ? z : 0)) return std::nullopt;
    return z;
  }
  bool is_identity() const {
    auto z = scalar_value();
    return z && *z == 1;
  }

  Matrix operator*(const Matrix& o) const {
    require(c_ == o.r_, "matrix product dimension mismatch");
    Matrix out(f_, r_, o.c_);
    const Field& F = *f_;
    for (int i = 0; i < r_; ++i) {
      Elem* dst = out.row_ptr(i);
      for (int k = 0; k < c_; ++k) {
        Elem x = (*this)(i, k);
        if (!x) continue;
        const Elem* src = o.row_ptr(k);
        if (x == 1) {
          for (int j = 0; j < o.c_; ++j) dst[j] = F.add(dst[j], src[j]);
        } else {
          for (int j = 0; j < o.c_; ++j)
            if (src[j]) dst[j] = F.add(dst[j], F.mul(x, src[j]));
        }
      }
    }
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    require(r_ == o.r_ && c_ == o.c_, "matrix sum dimension mismatch");
    Matrix out(*this);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->add(a_[i], o.a_[i]);
    return out;
  }
  Matrix operator-(const Matrix& o) const {
    require(r_ == o.r_ && c_ == o.c_, "matrix difference dimension mismatch");
    Matrix out(*this);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->sub(a_[i], o.a_[i]);
    return out;
  }
  Matrix scaled(Elem z) const {
    Matrix out(*this);
    for (auto& x : out.a_) x = f_->mul(x, z);
    return out;
  }
  Matrix transpose() const {
    Matrix out(f_, c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  // Entrywise x -> x^(p^t).
  Matrix frobenius(long long t) const {
    Matrix out(*this);
    for (auto& x : out.a_) x = f_->frobenius(x, t);
    return out;
  }
  Matrix kron(const Matrix& o) const {
    Matrix out(f_, r_ * o.r_, c_ * o.c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) {
        Elem x = (*this)(i, j);
        if (!x) continue;
        for (int k = 0; k < o.r_; ++k)
          for (int l = 0; l < o.c_; ++l) out(i * o.r_ + k, j * o.c_ + l) = f_->mul(x, o(k, l));
      }
    return out;
  }
  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix out(f_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }
  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.r_; ++i)
      for (int j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  // Rows stacked below this one.
  Matrix stacked(const Matrix& below) const {
    if (r_ == 0) return below;
    if (below.r_ == 0) return *this;
    require(c_ == below.c_, "stacking mismatched widths");
    Matrix out(f_, r_ + below.r_, c_);
    out.set_block(0, 0, *this);
    out.set_block(r_, 0, below);
    return out;
  }
  Elem trace() const {
    Elem t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t = f_->add(t, (*this)(i, i));
    return t;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < r_; ++i) {
      s += "[";
      for (int j = 0; j < c_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s;
  }

 private:
  FieldPtr f_;
  int r_ = 0, c_ = 0;
  std::vector<Elem> a_;
};

inline Vec vec_mat(const Vec& v, const Matrix& m) {
  const Field& F = *m.field();
  Vec out(m.cols(), 0);
  for (int k = 0; k < m.rows(); ++k) {
    Elem x = v[k];
    if (!x) continue;
    const Elem* src = m.row_ptr(k);
    for (int j = 0; j < m.cols(); ++j)
      if (src[j]) out[j] = F.add(out[j], F.mul(x, src[j]));
  }
  return out;
}

inline bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
}

inline void vec_axpy(const Field& F, Vec& y, Elem a, const Vec& x) {
  if (!a) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = F.add(y[i], F.mul(a, x[i]));
}

inline Vec vec_scale(const Field& F, const Vec& x, Elem a) {
  Vec y(x);
  for (auto& v : y) v = F.mul(v, a);
  return y;
}

// Reduced row echelon form.  transform * input = rref when tracked.
struct Echelon {
  Matrix rref;
  std::vector<int> pivots;  // pivot column of each nonzero row
  Matrix transform;
  int rank() const { return static_cast<int>(pivots.size()); }
};

inline Echelon echelon(const Matrix& a, bool track = false) {
  const FieldPtr& fp = a.field();
  const Field& F = *fp;
  Echelon e;
  e.rref = a;
  Matrix& m = e.rref;
  if (track) e.transform = Matrix::identity(fp, a.rows());
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    auto swap_rows = [&](Matrix& x) {
      if (piv != r)
        for (int j = 0; j < x.cols(); ++j) std::swap(x(piv, j), x(r, j));
    };
    swap_rows(m);
    if (track) swap_rows(e.transform);
    Elem iv = F.inv(m(r, c));
    for (int j = 0; j < m.cols(); ++j) m(r, j) = F.mul(m(r, j), iv);
    if (track)
      for (int j = 0; j < e.transform.cols(); ++j) e.transform(r, j) = F.mul(e.transform(r, j), iv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || !m(i, c)) continue;
      Elem f = F.neg(m(i, c));
      Elem* dst = m.row_ptr(i);
      const Elem* src = m.row_ptr(r);
      for (int j = c; j < m.cols(); ++j)
        if (src[j]) dst[j] = F.add(dst[j], F.mul(f, src[j]));
      if (track) {
        Elem* td = e.transform.row_ptr(i);
        const Elem* ts = e.transform.row_ptr(r);
        for (int j = 0; j < e.transform.cols(); ++j)
          if (ts[j]) td[j] = F.add(td[j], F.mul(f, ts[j]));
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

inline int rank(const Matrix& a) { return echelon(a).rank(); }

// Reduced echelon basis of the row space.
inline Matrix row_space(const Matrix& a) {
  Echelon e = echelon(a);
  return e.rref.block(0, 0, e.rank(), a.cols());
}

// Rows x with a * x^T = 0, in reduced form (1 at a free column, 0 at the others).
inline Matrix nullspace(const Matrix& a) {
  Echelon e = echelon(a);
  const Field& F = *a.field();
  int n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (int c : e.pivots) is_piv[c] = true;
  std::vector<Vec> basis;
  for (int fcol = 0; fcol < n; ++fcol) {
    if (is_piv[fcol]) continue;
    Vec v(n, 0);
    v[fcol] = 1;
    for (int i = 0; i < e.rank(); ++i) v[e.pivots[i]] = F.neg(e.rref(i, fcol));
    basis.push_back(v);
  }
  return Matrix::from_rows(a.field(), basis, n);
}

// Rows v with v * a = 0.
inline Matrix left_nullspace(const Matrix& a) { return nullspace(a.transpose()); }

inline std::optional<Matrix> try_inverse(const Matrix& a) {
  require(a.is_square(), "inverse of a non-square matrix");
  Echelon e = echelon(a, true);
  if (e.rank() != a.rows()) return std::nullopt;
  return e.transform;
}

inline Matrix inverse(const Matrix& a) {
  auto r = try_inverse(a);
  if (!r) throw PreconditionError("singular matrix");
  return *r;
}

inline bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

// Some x with a * x^T = b^T, or nullopt.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  require(static_cast<int>(b.size()) == a.rows(), "solve: rhs length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (int i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  Echelon e = echelon(aug);
  Vec x(a.cols(), 0);
  for (int i = 0; i < e.rank(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rref(i, a.cols());
  }
  return x;
}

inline Elem determinant(const Matrix& a) {
  require(a.is_square(), "determinant of a non-square matrix");
  const Field& F = *a.field();
  Matrix m = a;
  Elem det = 1;
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, m(c, c));
    Elem iv = F.inv(m(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (!m(i, c)) continue;
      Elem f = F.neg(F.mul(m(i, c), iv));
      for (int j = c; j < n; ++j) m(i, j) = F.add(m(i, j), F.mul(f, m(c, j)));
    }
  }
  return det;
}

// Coordinates relative to a fixed basis of a subspace.
class Coordinates {
 public:
  Coordinates() = default;
  // basis rows must be linearly independent.
  explicit Coordinates(const Matrix& basis) : basis_(basis) {
    Echelon e = echelon(basis, true);
    ensure(e.rank() == basis.rows(), "Coordinates: basis rows are dependent");
    rref_ = e.rref;
    pivots_ = e.pivots;
    transform_ = e.transform;
  }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  // c with c * basis = x, or nullopt when x is outside the span.
  std::optional<Vec> coords(const Vec& x) const {
    const Field& F = *basis_.field();
    Vec c(pivots_.size());
    for (size_t i = 0; i < pivots_.size(); ++i) c[i] = x[pivots_[i]];
    Vec back = vec_mat(c, rref_);
    if (back != x) return std::nullopt;
    (void)F;
    return vec_mat(c, transform_);
  }
  bool contains(const Vec& x) const { return coords(x).has_value(); }

 private:
  Matrix basis_, rref_, transform_;
  std::vector<int> pivots_;
};

using Poly = std::vector<Elem>;  // coefficients, low degree first

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Elem poly_eval(const Field& F, const Poly& f, Elem x) {
  Elem r = 0;
  for (size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

// Divides f by (x - a) assuming a is a root; returns the quotient.
inline Poly poly_deflate(const Field& F, const Poly& f, Elem a) {
  int n = static_cast<int>(f.size()) - 1;
  Poly q(std::max(n, 0), 0);
  Elem carry = 0;
  for (int i = n; i >= 1; --i) {
    carry = F.add(f[i], F.mul(carry, a));
    q[i - 1] = carry;
  }
  return q;
}

// Characteristic polynomial det(xI - A) via Hessenberg reduction.
inline Poly charpoly(const Matrix& a) {
  require(a.is_square(), "charpoly of a non-square matrix");
  const Field& F = *a.field();
  int n = a.rows();
  Matrix h = a;
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h(i, j)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(h(piv, k), h(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(h(k, piv), h(k, j + 1));
    }
    Elem iv = F.inv(h(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      if (!h(i, j)) continue;
      Elem u = F.mul(h(i, j), iv);
      Elem nu = F.neg(u);
      for (int k = 0; k < n; ++k) h(i, k) = F.add(h(i, k), F.mul(nu, h(j + 1, k)));
      for (int k = 0; k < n; ++k) h(k, j + 1) = F.add(h(k, j + 1), F.mul(u, h(k, i)));
    }
  }
  std::vector<Poly> ps(n + 1);
  ps[0] = {1};
  for (int m = 1; m <= n; ++m) {
    // (x - h_mm) p_{m-1}
    const Poly& prev = ps[m - 1];
    Poly cur(m + 1, 0);
    Elem hm = h(m - 1, m - 1);
    for (size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], prev[i]);
      cur[i] = F.sub(cur[i], F.mul(hm, prev[i]));
    }
    Elem t = 1;
    for (int i = 1; i < m; ++i) {
      t = F.mul(t, h(m - i, m - i - 1));
      Elem coef = F.mul(t, h(m - i - 1, m - 1));
      if (!coef) continue;
      const Poly& pp = ps[m - i - 1];
      for (size_t k = 0; k < pp.size(); ++k) cur[k] = F.sub(cur[k], F.mul(coef, pp[k]));
    }
    ps[m] = cur;
  }
  return ps[n];
}

}  // namespace dgnwb
