#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rings.hpp"

namespace orthgen {

using Vec = std::vector<Scalar>;

/// Dense square matrix with 1-based indexing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring r, int dim) : ring_(r), dim_(dim), e_(static_cast<std::size_t>(dim) * dim, zero(r)) {}

  static Matrix identity(Ring r, int dim) {
    Matrix m(r, dim);
    Scalar u = one(r);
    for (int i = 1; i <= dim; ++i) m(i, i) = u;
    return m;
  }

  int dim() const { return dim_; }
  Ring ring() const { return ring_; }

  Scalar& operator()(int i, int j) { return e_[index(i, j)]; }
  const Scalar& operator()(int i, int j) const { return e_[index(i, j)]; }

  bool operator==(const Matrix& o) const { return ring_ == o.ring_ && dim_ == o.dim_ && e_ == o.e_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(ring_, dim_);
    for (int i = 1; i <= dim_; ++i)
      for (int j = 1; j <= dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_identity() const { return *this == identity(ring_, dim_); }

 private:
  std::size_t index(int i, int j) const {
    if (i < 1 || j < 1 || i > dim_ || j > dim_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "(" + std::to_string(i) + "," + std::to_string(j) + ") in dim " + std::to_string(dim_));
    return static_cast<std::size_t>(i - 1) * dim_ + (j - 1);
  }

  Ring ring_;
  int dim_ = 0;
  std::vector<Scalar> e_;
};

namespace detail {
inline void same_shape(const Matrix& a, const Matrix& b) {
  if (a.ring() != b.ring()) throw Error(ErrorKind::RingMismatch, a.ring().name() + " vs " + b.ring().name());
  if (a.dim() != b.dim()) throw Error(ErrorKind::IndexOutOfRange, "dimension mismatch");
}
}  // namespace detail

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  detail::same_shape(a, b);
  int d = a.dim();
  Matrix c(a.ring(), d);
  for (int i = 1; i <= d; ++i)
    for (int k = 1; k <= d; ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (int j = 1; j <= d; ++j) {
        const Scalar& y = b(k, j);
        if (!is_zero(y)) c(i, j) += x * y;
      }
    }
  return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::same_shape(a, b);
  Matrix c = a;
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) c(i, j) += b(i, j);
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  detail::same_shape(a, b);
  Matrix c = a;
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) c(i, j) -= b(i, j);
  return c;
}

inline Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix c = a;
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline Vec operator*(const Matrix& a, const Vec& v) {
  if (static_cast<int>(v.size()) != a.dim()) throw Error(ErrorKind::IndexOutOfRange, "vector length mismatch");
  Vec out(v.size(), zero(a.ring()));
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) out[i - 1] += a(i, j) * v[j - 1];
  return out;
}

inline Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::IndexOutOfRange, "dot of mismatched vectors");
  Scalar s = zero(a[0].ring());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// a·bᵀ
inline Matrix outer(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::IndexOutOfRange, "outer of mismatched vectors");
  int d = static_cast<int>(a.size());
  Matrix m(a[0].ring(), d);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) m(i, j) = a[i - 1] * b[j - 1];
  return m;
}

inline Vec scale(const Scalar& s, const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

inline Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::IndexOutOfRange, "vector length mismatch");
  Vec out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) { return add(a, scale(from_int(a[0].ring(), -1), b)); }

inline Vec zero_vec(Ring r, int n) { return Vec(static_cast<std::size_t>(n), zero(r)); }

inline Vec unit_vec(Ring r, int n, int i) {
  Vec v = zero_vec(r, n);
  v[static_cast<std::size_t>(i - 1)] = one(r);
  return v;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// e_{ij}(z): the matrix with z at (i,j) and zeros elsewhere.
inline Matrix elementary(Ring r, int dim, int i, int j, const Scalar& z) {
  Matrix m(r, dim);
  m(i, j) = z;
  return m;
}

/// size×size block starting at (r0, c0).
inline Matrix submatrix(const Matrix& a, int r0, int c0, int size) {
  Matrix m(a.ring(), size);
  for (int i = 1; i <= size; ++i)
    for (int j = 1; j <= size; ++j) m(i, j) = a(r0 + i - 1, c0 + j - 1);
  return m;
}

inline void set_block(Matrix& a, int r0, int c0, const Matrix& b) {
  for (int i = 1; i <= b.dim(); ++i)
    for (int j = 1; j <= b.dim(); ++j) a(r0 + i - 1, c0 + j - 1) = b(i, j);
}

inline Matrix map_entries(const Matrix& a, Ring target, const std::function<Scalar(const Scalar&)>& f) {
  Matrix m(target, a.dim());
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) m(i, j) = f(a(i, j));
  return m;
}

inline Matrix embed(const Matrix& a, Ring target) {
  return map_entries(a, target, [&](const Scalar& x) { return embed(x, target); });
}

inline bool is_zero(const Matrix& a) {
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

inline bool is_alternating(const Matrix& a) {
  for (int i = 1; i <= a.dim(); ++i) {
    if (!is_zero(a(i, i))) return false;
    for (int j = i + 1; j <= a.dim(); ++j)
      if (a(i, j) != -a(j, i)) return false;
  }
  return true;
}

inline bool is_unipotent_triangular(const Matrix& a, bool upper) {
  Scalar u = one(a.ring());
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) {
      if (i == j && a(i, j) != u) return false;
      if (i != j && ((i > j) == upper) && !is_zero(a(i, j))) return false;
    }
  return true;
}

/// Inverse of I + N with N nilpotent.
inline Matrix unipotent_inverse(const Matrix& a) {
  Matrix id = Matrix::identity(a.ring(), a.dim());
  Matrix n = a - id;
  Matrix term = id, sum(a.ring(), a.dim());
  for (int k = 0; k <= a.dim(); ++k) {
    sum = sum + term;
    term = term * n;
    term = Scalar(from_int(a.ring(), -1)) * term;
    if (is_zero(term)) return sum;
  }
  throw Error(ErrorKind::NotUnipotent, "matrix is not unipotent");
}

/// Gauss-Jordan inverse choosing unit pivots (fields and local rings).
inline Matrix inverse(const Matrix& a) {
  int d = a.dim();
  Matrix m = a, inv_m = Matrix::identity(a.ring(), d);
  for (int c = 1; c <= d; ++c) {
    int piv = 0;
    for (int r = c; r <= d; ++r)
      if (is_unit(m(r, c))) {
        piv = r;
        break;
      }
    if (!piv) throw Error(ErrorKind::NotAUnit, "no unit pivot in column " + std::to_string(c));
    if (piv != c)
      for (int j = 1; j <= d; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv_m(piv, j), inv_m(c, j));
      }
    Scalar s = inv(m(c, c));
    for (int j = 1; j <= d; ++j) {
      m(c, j) = s * m(c, j);
      inv_m(c, j) = s * inv_m(c, j);
    }
    for (int r = 1; r <= d; ++r) {
      if (r == c || is_zero(m(r, c))) continue;
      Scalar f = m(r, c);
      for (int j = 1; j <= d; ++j) {
        m(r, j) -= f * m(c, j);
        inv_m(r, j) -= f * inv_m(c, j);
      }
    }
  }
  return inv_m;
}

/// Division-free determinant (Samuelson-Berkowitz).
inline Scalar det(const Matrix& a) {
  int n = a.dim();
  Ring r = a.ring();
  if (n == 0) return one(r);
  // Characteristic polynomial coefficients, built up over leading principal submatrices.
  std::vector<Scalar> c = {one(r), -a(1, 1)};
  for (int k = 2; k <= n; ++k) {
    // Partition the leading k×k block as [[A, R],[C, akk]] with A of size k-1.
    std::vector<Scalar> col(k + 1, zero(r));
    col[0] = one(r);
    col[1] = -a(k, k);
    Vec rvec, cvec;
    for (int j = 1; j < k; ++j) {
      rvec.push_back(a(k, j));
      cvec.push_back(a(j, k));
    }
    Vec pw = cvec;
    for (int i = 2; i <= k; ++i) {
      Scalar s = zero(r);
      for (int j = 0; j < k - 1; ++j) s += rvec[j] * pw[j];
      col[i] = -s;
      Vec next(k - 1, zero(r));
      for (int x = 1; x < k; ++x)
        for (int y = 1; y < k; ++y) next[x - 1] += a(x, y) * pw[y - 1];
      pw = next;
    }
    std::vector<Scalar> nc(k + 1, zero(r));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= std::min(i, k - 1); ++j)
        if (i - j < static_cast<int>(col.size())) nc[i] += col[i - j] * c[j];
    c = nc;
  }
  Scalar d = c[n];
  return (n % 2 == 0) ? d : -d;
}

}  // namespace orthgen
