#pragma once

#include <string>
#include <vector>

#include "matrix.hpp"
#include "rings.hpp"

namespace orthgen {

/// The form 2 ⊥ ψ̃_n on R^{2n+1} (odd) or ψ̃_n on R^{2n} (even).
struct FormContext {
  int n = 1;
  bool odd = true;
  Ring ring;
  Matrix gram;
  Matrix gram_inv;

  int dim() const { return odd ? 2 * n + 1 : 2 * n; }

  int delta(int i) const {
    if (i < 1 || i > dim()) throw Error(ErrorKind::BadIndex, "delta index " + std::to_string(i));
    if (odd) {
      if (i == 1) return 1;
      return i <= n + 1 ? i + n : i - n;
    }
    return i <= n ? i + n : i - n;
  }
};

inline FormContext build_form(int n, Ring r, bool odd = true) {
  if (n < 1) throw Error(ErrorKind::BadIndex, "n must be >= 1");
  Scalar two = from_int(r, 2);
  if (!is_unit(two)) throw Error(ErrorKind::UnsupportedRing, "2 is not a unit in " + r.name());
  FormContext ctx;
  ctx.n = n;
  ctx.odd = odd;
  ctx.ring = r;
  ctx.gram = Matrix(r, ctx.dim());
  ctx.gram_inv = Matrix(r, ctx.dim());
  int s = odd ? 1 : 0;
  if (odd) {
    ctx.gram(1, 1) = two;
    ctx.gram_inv(1, 1) = inv(two);
  }
  for (int i = 1; i <= n; ++i) {
    for (Matrix* m : {&ctx.gram, &ctx.gram_inv}) {
      (*m)(s + i, s + n + i) = one(r);
      (*m)(s + n + i, s + i) = one(r);
    }
  }
  return ctx;
}

inline FormContext build_even_form(int n, Ring r) { return build_form(n, r, false); }

inline FormContext with_ring(const FormContext& ctx, Ring r) { return build_form(ctx.n, r, ctx.odd); }

/// v = (v₀, v′, v″) with v′ in coordinates 2..n+1 and v″ in n+2..2n+1.
struct SplitVector {
  Scalar v0;
  Vec vp;
  Vec vdp;

  Vec to_vec() const {
    Vec v{v0};
    v.insert(v.end(), vp.begin(), vp.end());
    v.insert(v.end(), vdp.begin(), vdp.end());
    return v;
  }

  static SplitVector from_vec(const Vec& v, int n) {
    if (static_cast<int>(v.size()) != 2 * n + 1) throw Error(ErrorKind::IndexOutOfRange, "vector length is not 2n+1");
    SplitVector s;
    s.v0 = v[0];
    s.vp.assign(v.begin() + 1, v.begin() + 1 + n);
    s.vdp.assign(v.begin() + 1 + n, v.end());
    return s;
  }

  bool operator==(const SplitVector& o) const { return v0 == o.v0 && vp == o.vp && vdp == o.vdp; }
};

namespace detail {
inline void check_len(const Vec& v, const FormContext& ctx) {
  if (static_cast<int>(v.size()) != ctx.dim()) throw Error(ErrorKind::IndexOutOfRange, "vector length mismatch");
  for (const auto& x : v)
    if (x.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, x.ring().name() + " vs " + ctx.ring.name());
}
}  // namespace detail

/// ṽ = φ·v, so that φ(v, w) = ṽᵀ·w.
inline Vec tilde(const Vec& v, const FormContext& ctx) {
  detail::check_len(v, ctx);
  return ctx.gram * v;
}

inline Scalar quad_q(const Vec& v, const FormContext& ctx) {
  detail::check_len(v, ctx);
  int s = ctx.odd ? 1 : 0;
  Scalar q = ctx.odd ? v[0] * v[0] : zero(ctx.ring);
  for (int i = 1; i <= ctx.n; ++i) q += v[s + i - 1] * v[s + ctx.n + i - 1];
  return q;
}

inline Scalar bilinear_phi(const Vec& v, const Vec& w, const FormContext& ctx) {
  return dot(tilde(v, ctx), w);
}

inline bool is_orthogonal(const Matrix& a, const FormContext& ctx) {
  if (a.dim() != ctx.dim() || a.ring() != ctx.ring) return false;
  return a.transpose() * ctx.gram * a == ctx.gram;
}

/// α⁻¹ = φ⁻¹·αᵀ·φ, valid for orthogonal α.
inline Matrix orth_inverse(const Matrix& a, const FormContext& ctx) {
  return ctx.gram_inv * a.transpose() * ctx.gram;
}

inline bool in_congruence(const Matrix& a, const Ideal& I) {
  Matrix d = a - Matrix::identity(a.ring(), a.dim());
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j)
      if (!ideal_member(d(i, j), I)) return false;
  return true;
}

inline bool is_monomial(const Matrix& a) {
  for (int i = 1; i <= a.dim(); ++i) {
    int row_nz = 0, col_nz = 0;
    for (int j = 1; j <= a.dim(); ++j) {
      if (!is_zero(a(i, j))) ++row_nz;
      if (!is_zero(a(j, i))) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j)
      if (!is_zero(a(i, j)) && !is_unit(a(i, j))) return false;
  return true;
}

inline bool is_monomial_orthogonal(const Matrix& a, const FormContext& ctx) {
  return is_monomial(a) && is_orthogonal(a, ctx);
}

}  // namespace orthgen
