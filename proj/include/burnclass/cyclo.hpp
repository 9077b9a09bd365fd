#pragma once

// Exact arithmetic in Q(zeta_N) in the power basis modulo the N-th cyclotomic
// polynomial, and the linear algebra on top of it (echelon forms, kernels,
// subspace lattice operations). One field instance is shared per computation.

#include "common.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace burn {

using Poly = std::vector<Rat>;  // coefficient list, low degree first

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

// Division with remainder; divisor need not be monic.
inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  poly_trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rat(0));
  Rat lead = b.back();
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (a[i] == 0) continue;
    Rat c = a[i] / lead;
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
  }
  poly_trim(a);
  return {q, a};
}

class CycloField {
 public:
  explicit CycloField(int conductor) : N_(conductor) {
    require(conductor >= 1, Err::ValidationError, "conductor must be positive");
    phi_poly_ = cyclotomic(conductor);
    deg_ = static_cast<int>(phi_poly_.size()) - 1;
    // reduction table: x^k mod Phi for k < 2*deg - 1 (the largest power a
    // product of two reduced elements can reach)
    int top = std::max(2 * deg_ - 1, deg_);
    power_rows_.reserve(static_cast<size_t>(top));
    Poly cur(1, Rat(1));  // x^0
    for (int k = 0; k < top; ++k) {
      Poly row = cur;
      row.resize(static_cast<size_t>(deg_), Rat(0));
      power_rows_.push_back(row);
      // multiply by x, reduce once
      cur.insert(cur.begin(), Rat(0));
      if (static_cast<int>(cur.size()) > deg_) {
        Rat lead = cur.back();
        cur.pop_back();
        if (lead != 0)
          for (int j = 0; j < deg_; ++j) cur[static_cast<size_t>(j)] -= lead * phi_poly_[static_cast<size_t>(j)];
      }
    }
  }

  int conductor() const { return N_; }
  int degree() const { return deg_; }
  const Poly& modulus() const { return phi_poly_; }
  const Poly& power_row(size_t k) const { return power_rows_[k]; }

  Poly reduce(Poly p) const {
    if (static_cast<int>(p.size()) <= deg_) {
      p.resize(static_cast<size_t>(deg_), Rat(0));
      return p;
    }
    if (p.size() <= power_rows_.size()) {
      Poly r(static_cast<size_t>(deg_), Rat(0));
      for (size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        const Poly& row = power_rows_[k];
        for (int j = 0; j < deg_; ++j)
          if (row[static_cast<size_t>(j)] != 0) r[static_cast<size_t>(j)] += p[k] * row[static_cast<size_t>(j)];
      }
      return r;
    }
    auto [q, r] = poly_divmod(std::move(p), phi_poly_);
    r.resize(static_cast<size_t>(deg_), Rat(0));
    return r;
  }

 private:
  std::vector<Poly> power_rows_;

 public:
  static Poly cyclotomic(int n) {
    // x^n - 1 divided by all lower cyclotomic polynomials.
    Poly num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      Poly cd = cyclotomic(d);
      auto [q, r] = poly_divmod(num, cd);
      require(r.empty(), Err::Internal, "cyclotomic division not exact");
      num = q;
    }
    return num;
  }

 private:
  int N_;
  int deg_;
  Poly phi_poly_;
};

using FieldRef = std::shared_ptr<const CycloField>;

inline FieldRef make_field(int conductor) {
  static std::map<int, FieldRef> cache;
  auto it = cache.find(conductor);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const CycloField>(conductor);
  cache[conductor] = f;
  return f;
}

/// An element of Q(zeta_N): rational coefficients in the power basis.
class Cyc {
 public:
  Cyc() = default;
  Cyc(FieldRef f, Poly c) : f_(std::move(f)), c_(std::move(c)) {
    c_.resize(f_->degree(), Rat(0));
  }
  static Cyc zero(const FieldRef& f) { return Cyc(f, {}); }
  static Cyc one(const FieldRef& f) { return from_rat(f, Rat(1)); }
  static Cyc from_rat(const FieldRef& f, const Rat& r) {
    Poly p{r};
    return Cyc(f, std::move(p));
  }
  /// zeta_N^k, k arbitrary integer.
  static Cyc zeta_pow(const FieldRef& f, long long k) {
    long long n = f->conductor();
    k %= n;
    if (k < 0) k += n;
    Poly p(static_cast<size_t>(k) + 1, Rat(0));
    p[static_cast<size_t>(k)] = 1;
    return Cyc(f, f->reduce(std::move(p)));
  }
  /// Root of unity e^{2 pi i q} for q in Q/Z with denominator dividing N.
  static Cyc root_of_unity(const FieldRef& f, const Rat& q) {
    Rat r = mod1(q);
    BigInt den = denominator(r);
    require(f->conductor() % static_cast<long long>(den) == 0, Err::ValidationError,
            "root of unity order does not divide conductor");
    long long k = static_cast<long long>(numerator(r)) * (f->conductor() / static_cast<long long>(den));
    return zeta_pow(f, k);
  }

  const FieldRef& field() const { return f_; }
  const Poly& coeffs() const { return c_; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rat(const Rat& r) const {
    if (c_.empty()) return r == 0;
    if (c_[0] != r) return false;
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    Poly r = a.c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b.c_[i];
    return Cyc(a.f_, std::move(r));
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) {
    Poly r = a.c_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b.c_[i];
    return Cyc(a.f_, std::move(r));
  }
  Cyc operator-() const {
    Poly r = c_;
    for (auto& x : r) x = -x;
    return Cyc(f_, std::move(r));
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    // sparse-aware product: most matrix entries are rational multiples of a
    // single power of zeta
    int na = 0, nb = 0, ia = -1, ib = -1;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i] != 0) {
        ++na;
        ia = static_cast<int>(i);
      }
    for (size_t i = 0; i < b.c_.size(); ++i)
      if (b.c_[i] != 0) {
        ++nb;
        ib = static_cast<int>(i);
      }
    if (na == 0 || nb == 0) return Cyc::zero(a.f_);
    if (na == 1 && ia == 0) {  // rational scalar
      Poly r = b.c_;
      for (auto& x : r) x *= a.c_[0];
      return Cyc(a.f_, std::move(r));
    }
    if (nb == 1 && ib == 0) {
      Poly r = a.c_;
      for (auto& x : r) x *= b.c_[0];
      return Cyc(a.f_, std::move(r));
    }
    if (na == 1 && nb == 1) {  // monomial * monomial
      size_t k = static_cast<size_t>(ia + ib);
      const Poly& row = a.f_->power_row(k);
      Poly r = row;
      Rat c = a.c_[static_cast<size_t>(ia)] * b.c_[static_cast<size_t>(ib)];
      for (auto& x : r) x *= c;
      return Cyc(a.f_, std::move(r));
    }
    Poly pa = a.c_, pb = b.c_;
    poly_trim(pa);
    poly_trim(pb);
    return Cyc(a.f_, a.f_->reduce(poly_mul(pa, pb)));
  }
  friend bool operator==(const Cyc& a, const Cyc& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  /// Multiplicative inverse via extended gcd with the cyclotomic modulus.
  Cyc inv() const {
    require(!is_zero(), Err::Internal, "division by zero in cyclotomic field");
    Poly a = c_;
    poly_trim(a);
    Poly b = f_->modulus();
    // extended Euclid: s*a + t*b = g
    Poly s0{Rat(1)}, s1{};
    Poly r0 = a, r1 = b;
    while (!r1.empty()) {
      auto [q, r] = poly_divmod(r0, r1);
      Poly s2 = s0;
      Poly qs = poly_mul(q, s1);
      s2.resize(std::max(s2.size(), qs.size()), Rat(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      poly_trim(s2);
      r0 = r1;
      r1 = r;
      s0 = s1;
      s1 = s2;
    }
    // r0 = gcd (a nonzero constant since the modulus is irreducible)
    require(r0.size() == 1, Err::Internal, "unexpected gcd degree in field inverse");
    Rat g = r0[0];
    for (auto& x : s0) x /= g;
    return Cyc(f_, f_->reduce(std::move(s0)));
  }

  std::string str() const {
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rat v = c_[i];
      if (first) {
        if (v < 0) out += '-', v = -v;
      } else {
        out += (v < 0) ? '-' : '+';
        if (v < 0) v = -v;
      }
      first = false;
      bool unit = (v == 1) && i != 0;
      if (!unit) out += rat_str(v);
      if (i >= 1) {
        if (!unit) out += '*';
        out += 'z';
        if (i >= 2) out += '^' + std::to_string(i);
      }
    }
    if (first) out = "0";
    return out;
  }

 private:
  FieldRef f_;
  Poly c_;
};

// ---------------------------------------------------------------------------
// Matrices (dense, exact). Vectors act on the right: row * matrix.

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Cyc> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c, const FieldRef& f) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Cyc::zero(f)) {}
  Cyc& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Cyc& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n, const FieldRef& f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::one(f);
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    require(x.cols == y.rows, Err::Internal, "matrix shape mismatch");
    FieldRef f = x.a.empty() ? (y.a.empty() ? nullptr : y.a[0].field()) : x.a[0].field();
    Matrix r(x.rows, y.cols, f);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols; ++j) {
          if (y.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
        }
      }
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  Matrix scaled(const Cyc& s) const {
    Matrix r = *this;
    for (auto& v : r.a) v = v * s;
    return r;
  }

  Cyc trace() const {
    require(rows == cols && rows > 0, Err::Internal, "trace of non-square matrix");
    Cyc t = Cyc::zero(a[0].field());
    for (int i = 0; i < rows; ++i) t = t + at(i, i);
    return t;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += (i ? ";" : "");
      for (int j = 0; j < cols; ++j) s += (j ? "," : "") + at(i, j).str();
    }
    return s + "]";
  }
};

/// Reduced row echelon form in place; returns pivot column per row.
inline std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    Cyc iv = m.at(r, c).inv();
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * iv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Cyc f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize(static_cast<size_t>(r) * m.cols);
  return pivots;
}

/// Left kernel: all v with v*m = 0, returned as RREF rows.
inline Matrix left_kernel(const Matrix& m, const FieldRef& f) {
  // Solve over the transpose: rows of m^T are columns of m.
  Matrix t(m.cols, m.rows, f);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  // kernel of x |-> x*m equals null space of columns: rref t and read free rows
  Matrix red = t;
  std::vector<int> pivots = rref(red);
  std::vector<bool> is_pivot_row(m.rows, false);  // here "columns" of t = rows index? careful below
  // We need null space of m acting on row vectors of length m.rows:
  // v * m = 0  <=>  m^T v^T = 0. Standard null space of red (= rref of m^T).
  std::vector<bool> pivot_col(t.cols, false);
  for (int p : pivots) pivot_col[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < t.cols; ++c)
    if (!pivot_col[c]) free_cols.push_back(c);
  Matrix ker(static_cast<int>(free_cols.size()), t.cols, f);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ker.at(static_cast<int>(k), fc) = Cyc::one(f);
    for (size_t r = 0; r < pivots.size(); ++r)
      ker.at(static_cast<int>(k), pivots[r]) = -red.at(static_cast<int>(r), fc);
  }
  rref(ker);
  return ker;
}

/// Row space of a matrix in RREF (canonical basis of the span of the rows).
inline Matrix row_space(Matrix m) {
  rref(m);
  return m;
}

/// A linear subspace of k^n stored as the RREF of a basis (rows).
struct Subspace {
  int ambient = 0;
  Matrix basis;  // RREF rows

  static Subspace from_rows(int ambient, Matrix rows) {
    Subspace s;
    s.ambient = ambient;
    s.basis = row_space(std::move(rows));
    return s;
  }
  static Subspace zero(int ambient, const FieldRef& f) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Matrix(0, ambient, f);
    return s;
  }
  static Subspace full(int ambient, const FieldRef& f) {
    return from_rows(ambient, Matrix::identity(ambient, f));
  }

  int dim() const { return basis.rows; }
  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient == y.ambient && x.basis == y.basis;
  }
  friend bool operator<(const Subspace& x, const Subspace& y) { return x.key() < y.key(); }

  std::string key() const { return std::to_string(ambient) + "|" + basis.str(); }

  bool contains(const Subspace& other) const {
    if (other.dim() > dim()) return false;
    Matrix stacked(dim() + other.dim(), ambient, field());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < ambient; ++j) stacked.at(i, j) = basis.at(i, j);
    for (int i = 0; i < other.dim(); ++i)
      for (int j = 0; j < ambient; ++j) stacked.at(dim() + i, j) = other.basis.at(i, j);
    rref(stacked);
    return stacked.rows == dim();
  }

  FieldRef field() const {
    require(!basis.a.empty() || basis.cols > 0, Err::Internal, "subspace without field");
    return basis.a.empty() ? FieldRef() : basis.a[0].field();
  }
};

inline Subspace subspace_sum(const Subspace& x, const Subspace& y, const FieldRef& f) {
  require(x.ambient == y.ambient, Err::Internal, "ambient mismatch in sum");
  Matrix stacked(x.dim() + y.dim(), x.ambient, f);
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.ambient; ++j) stacked.at(i, j) = x.basis.at(i, j);
  for (int i = 0; i < y.dim(); ++i)
    for (int j = 0; j < x.ambient; ++j) stacked.at(x.dim() + i, j) = y.basis.at(i, j);
  return Subspace::from_rows(x.ambient, std::move(stacked));
}

inline Subspace subspace_intersect(const Subspace& x, const Subspace& y, const FieldRef& f) {
  require(x.ambient == y.ambient, Err::Internal, "ambient mismatch in intersect");
  if (x.dim() == 0 || y.dim() == 0) return Subspace::zero(x.ambient, f);
  // Rows (a | b) with a*X + b*Y = 0 give intersection vectors a*X.
  Matrix stacked(x.dim() + y.dim(), x.ambient, f);
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.ambient; ++j) stacked.at(i, j) = x.basis.at(i, j);
  for (int i = 0; i < y.dim(); ++i)
    for (int j = 0; j < x.ambient; ++j) stacked.at(x.dim() + i, j) = y.basis.at(i, j);
  Matrix ker = left_kernel(stacked, f);
  Matrix rows(ker.rows, x.ambient, f);
  for (int r = 0; r < ker.rows; ++r)
    for (int j = 0; j < x.ambient; ++j) {
      Cyc v = Cyc::zero(f);
      for (int i = 0; i < x.dim(); ++i) v = v + ker.at(r, i) * x.basis.at(i, j);
      rows.at(r, j) = v;
    }
  return Subspace::from_rows(x.ambient, std::move(rows));
}

}  // namespace burn
