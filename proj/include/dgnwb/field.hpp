#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace dgnwb {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^s).  An element is an integer code whose base-p digits are the
// coefficients of a polynomial in x modulo the field's modulus (digit i is
// the coefficient of x^i), so GF(p) sits inside as the codes 0..p-1.
class Field {
 public:
  static constexpr long long kMaxSize = 1LL << 20;

  // Shared instance per (p, s).
  static FieldPtr get(int p, int s) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, s});
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(p, s));
    cache.emplace(std::make_pair(p, s), f);
    return f;
  }

  int p() const { return p_; }
  int degree() const { return s_; }
  Elem size() const { return q_; }
  int units() const { return static_cast<int>(q_ - 1); }
  Elem generator() const { return gen_; }
  // Coefficients c_0..c_{s-1} of the monic modulus x^s + sum c_i x^i.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    if (a == 0) return b;
    if (b == 0) return a;
    int la = log_[a], lb = log_[b];
    int d = lb - la;
    if (d < 0) d += units();
    int z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + z];
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw PreconditionError("inverse of zero");
    int l = log_[a];
    return exp_[l == 0 ? 0 : units() - l];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long k) const {
    if (a == 0) {
      if (k < 0) throw PreconditionError("negative power of zero");
      return k == 0 ? 1 : 0;
    }
    return exp_[mod_norm(static_cast<long long>(log_[a]) * mod_norm(k, units()), units())];
  }

  // Discrete log to base generator(); a must be nonzero.
  int dlog(Elem a) const {
    if (a == 0) throw PreconditionError("dlog of zero");
    return log_[a];
  }
  Elem exp(long long k) const { return exp_[mod_norm(k, units())]; }

  // x -> x^(p^t), t taken mod s.
  Elem frobenius(Elem x, long long t) const {
    if (x == 0) return 0;
    long long m = pow_mod(p_, mod_norm(t, s_), units());
    return exp_[mul_mod(log_[x], m, units())];
  }

  Elem from_int(long long v) const { return static_cast<Elem>(mod_norm(v, p_)); }
  bool in_prime_field(Elem a) const { return a < static_cast<Elem>(p_); }

  std::vector<int> digits(Elem a) const {
    std::vector<int> d(s_);
    for (int i = 0; i < s_; ++i) {
      d[i] = static_cast<int>(a % p_);
      a /= p_;
    }
    return d;
  }
  Elem from_digits(const std::vector<int>& d) const {
    Elem a = 0;
    for (int i = s_ - 1; i >= 0; --i) a = a * p_ + static_cast<Elem>(mod_norm(d[i], p_));
    return a;
  }

  std::string name() const {
    return "GF(" + std::to_string(p_) + (s_ > 1 ? "^" + std::to_string(s_) : "") + ")";
  }

 private:
  Field(int p, int s) : p_(p), s_(s) {
    if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
    if (s < 1) throw PreconditionError("field degree must be positive");
    long long q = 1;
    for (int i = 0; i < s; ++i) {
      q *= p;
      if (q > kMaxSize) throw ResourceError("field GF(" + std::to_string(p) + "^" + std::to_string(s) + ") exceeds 2^20 elements");
    }
    q_ = static_cast<Elem>(q);
    find_modulus();
    find_generator();
    build_tables();
  }

  // Polynomial product of two codes reduced by the modulus; slow path used
  // only while the log tables are being built.
  Elem slow_mul(Elem a, Elem b) const {
    std::vector<int> x = digits(a), y = digits(b);
    std::vector<int> r(2 * s_, 0);
    for (int i = 0; i < s_; ++i)
      if (x[i])
        for (int j = 0; j < s_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    for (int k = 2 * s_ - 1; k >= s_; --k) {
      int c = r[k];
      if (!c) continue;
      r[k] = 0;
      for (int i = 0; i < s_; ++i) r[k - s_ + i] = static_cast<int>(mod_norm(r[k - s_ + i] - c * modulus_[i], p_));
    }
    r.resize(s_);
    return from_digits(r);
  }

  Elem slow_pow(Elem a, long long e) const {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  // Remainder of f by monic g, both as coefficient vectors low to high.
  static std::vector<int> poly_rem(std::vector<int> f, const std::vector<int>& g, int p) {
    int dg = static_cast<int>(g.size()) - 1;
    for (int k = static_cast<int>(f.size()) - 1; k >= dg; --k) {
      int c = f[k];
      if (!c) continue;
      for (int i = 0; i <= dg; ++i) f[k - dg + i] = static_cast<int>(mod_norm(f[k - dg + i] - c * g[i], p));
    }
    f.resize(dg);
    return f;
  }

  static bool irreducible(const std::vector<int>& f, int p) {
    int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d) {
      long long count = ipow(p, d);
      for (long long c = 0; c < count; ++c) {
        std::vector<int> g(d + 1);
        long long v = c;
        for (int i = 0; i < d; ++i) {
          g[i] = static_cast<int>(v % p);
          v /= p;
        }
        g[d] = 1;
        auto r = poly_rem(f, g, p);
        bool zero = true;
        for (int x : r) zero = zero && x == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void find_modulus() {
    for (Elem c = 0; c < q_; ++c) {
      std::vector<int> f = digits(c);
      f.push_back(1);
      if (irreducible(f, p_)) {
        f.pop_back();
        modulus_ = f;
        return;
      }
    }
    throw InternalError("no irreducible polynomial found");
  }

  void find_generator() {
    long long n = q_ - 1;
    if (n == 1) {
      gen_ = 1;
      return;
    }
    auto primes = prime_divisors(n);
    for (Elem g = 2; g < q_; ++g) {
      bool ok = true;
      for (long long r : primes) {
        if (slow_pow(g, n / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        gen_ = g;
        return;
      }
    }
    throw InternalError("no primitive element found");
  }

  void build_tables() {
    int n = units();
    exp_.assign(2 * static_cast<size_t>(n) + 1, 0);
    log_.assign(q_, -1);
    Elem x = 1;
    for (int k = 0; k < n; ++k) {
      exp_[k] = x;
      if (log_[x] != -1) throw InternalError("generator is not primitive");
      log_[x] = k;
      x = slow_mul(x, gen_);
    }
    for (int k = n; k < 2 * n + 1; ++k) exp_[k] = exp_[k - n];
    if (p_ != 2) {
      neg_.resize(q_);
      for (Elem a = 0; a < q_; ++a) {
        auto d = digits(a);
        for (int& v : d) v = (p_ - v) % p_;
        neg_[a] = from_digits(d);
      }
      auto plus_one = [&](Elem a) {
        auto d = digits(a);
        d[0] = (d[0] + 1) % p_;
        return from_digits(d);
      };
      if (q_ <= 729) {
        add_table_.resize(static_cast<size_t>(q_) * q_);
        for (Elem a = 0; a < q_; ++a) {
          auto da = digits(a);
          for (Elem b = 0; b < q_; ++b) {
            auto db = digits(b);
            for (int i = 0; i < s_; ++i) db[i] = (db[i] + da[i]) % p_;
            add_table_[a * q_ + b] = from_digits(db);
          }
        }
      } else {
        zech_.resize(n);
        for (int k = 0; k < n; ++k) {
          Elem y = plus_one(exp_[k]);
          zech_[k] = y == 0 ? -1 : log_[y];
        }
      }
    }
  }

  int p_, s_;
  Elem q_ = 0;
  Elem gen_ = 1;
  std::vector<int> modulus_;
  std::vector<Elem> exp_;
  std::vector<int> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;
  std::vector<int> zech_;
};

// The subfield GF(p^e) of F, e | s, generated by w = g^((q-1)/(p^e-1)).
class Subfield {
 public:
  Subfield() = default;
  Subfield(FieldPtr f, int e) : f_(std::move(f)), e_(e) {
    require(e_ >= 1 && f_->degree() % e_ == 0, "subfield degree must divide the field degree");
    long long pe = ipow(f_->p(), e_);
    step_ = static_cast<int>((f_->size() - 1) / (pe - 1));
    order_ = static_cast<int>(pe - 1);
  }
  static Subfield whole(FieldPtr f) {
    int s = f->degree();
    return Subfield(std::move(f), s);
  }

  const FieldPtr& field() const { return f_; }
  int degree() const { return e_; }
  int units() const { return order_; }
  Elem primitive() const { return f_->exp(step_); }
  bool contains(Elem x) const { return x == 0 || f_->dlog(x) % step_ == 0; }
  // Discrete log relative to primitive().
  int dlog(Elem x) const {
    int d = f_->dlog(x);
    ensure(d % step_ == 0, "element outside subfield");
    return d / step_;
  }
  Elem exp(long long k) const { return f_->exp(mod_norm(k, order_) * step_); }
  Elem frobenius(Elem x, long long t) const { return f_->frobenius(x, mod_norm(t, e_)); }
  std::vector<Elem> elements() const {
    std::vector<Elem> out{0};
    for (int k = 0; k < order_; ++k) out.push_back(exp(k));
    return out;
  }

 private:
  FieldPtr f_;
  int e_ = 1;
  int step_ = 1;
  int order_ = 1;
};

}  // namespace dgnwb
