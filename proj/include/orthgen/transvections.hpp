#pragma once

#include <string>
#include <vector>

#include "generators.hpp"
#include "matrix.hpp"
#include "quadratic_space.hpp"

namespace orthgen {

struct TransvectionSpec {
  SplitVector v;
  SplitVector w;
  Scalar x;
};

/// x = Σ cᵢ·sourceᵢ.
struct OrderIdealWitness {
  Scalar target;
  Vec combiners;
};

/// E_{v,w}(x) = I + x(v·w̃ᵀ − w·ṽᵀ) − x²·q(w)·v·ṽᵀ, with no hypothesis checks.
inline Matrix transvection_formula(const Vec& v, const Vec& w, const Scalar& x, const FormContext& ctx) {
  Vec vt = tilde(v, ctx), wt = tilde(w, ctx);
  Matrix id = Matrix::identity(ctx.ring, ctx.dim());
  Matrix lin = outer(v, wt) - outer(w, vt);
  Matrix quad = outer(v, vt);
  return id + x * lin - (x * x * quad_q(w, ctx)) * quad;
}

inline Matrix transvection(const Vec& v, const Vec& w, const Scalar& x, const FormContext& ctx) {
  if (!is_zero(quad_q(v, ctx))) throw Error(ErrorKind::HypothesisViolated, "q(v) != 0");
  if (!is_zero(bilinear_phi(v, w, ctx))) throw Error(ErrorKind::HypothesisViolated, "phi(v,w) != 0");
  if (x.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, "parameter ring");
  return transvection_formula(v, w, x, ctx);
}

inline Matrix transvection(const TransvectionSpec& s, const FormContext& ctx) {
  return transvection(s.v.to_vec(), s.w.to_vec(), s.x, ctx);
}

/// Alternating α = Σ cᵢ(v·eᵢᵀ − eᵢ·vᵀ), so α·w = v·x when vᵀw = 0 and x = Σ cᵢwᵢ.
inline Matrix solve_alternating(const Vec& v, const Vec& w, const OrderIdealWitness& wit) {
  if (v.size() != w.size() || v.empty() || wit.combiners.size() != w.size())
    throw Error(ErrorKind::IndexOutOfRange, "solve_alternating length mismatch");
  if (!is_zero(dot(v, w))) throw Error(ErrorKind::NotOrthogonalPair, "v^T w != 0");
  if (dot(wit.combiners, w) != wit.target) throw Error(ErrorKind::BadWitness, "combination does not reproduce x");
  int m = static_cast<int>(v.size());
  Matrix a(v[0].ring(), m);
  for (int i = 1; i <= m; ++i) {
    const Scalar& c = wit.combiners[i - 1];
    if (is_zero(c)) continue;
    for (int r = 1; r <= m; ++r) {
      a(r, i) += c * v[r - 1];
      a(i, r) -= c * v[r - 1];
    }
  }
  return a;
}

/// δ-commuting permutation moving w so that w″ = 0 (greedy pair swaps).
inline std::vector<int> normalize_permutation(const Vec& w, const FormContext& ctx) {
  int n = ctx.n;
  std::vector<int> p = identity_perm(ctx.dim());
  for (int i = 1; i <= n; ++i) {
    bool lo = !is_zero(w[i]), hi = !is_zero(w[n + i]);
    if (lo && hi) throw Error(ErrorKind::HypothesisViolated, "both coordinates of pair " + std::to_string(i) + " are nonzero");
    if (hi) std::swap(p[i], p[n + i]);
  }
  return p;
}

struct Split3 {
  Matrix m1, m2, m3;
};

/// Three-factor split of E_{v,w}(x) for w″ = 0, v₀² = w₀² = v₀w₀ = 0, q(v) = q(w) = φ(v,w) = 0.
inline Split3 transvection_split3(const TransvectionSpec& s, const FormContext& ctx) {
  Vec v = s.v.to_vec(), w = s.w.to_vec();
  const Scalar& x = s.x;
  Ring r = ctx.ring;
  int n = ctx.n;
  auto req = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::HypothesisViolated, what);
  };
  req(is_zero(s.w.vdp), "w'' != 0");
  req(is_zero(s.v.v0 * s.v.v0), "v0^2 != 0");
  req(is_zero(s.w.v0 * s.w.v0), "w0^2 != 0");
  req(is_zero(s.v.v0 * s.w.v0), "v0 w0 != 0");
  req(is_zero(quad_q(v, ctx)), "q(v) != 0");
  req(is_zero(quad_q(w, ctx)), "q(w) != 0");
  req(is_zero(bilinear_phi(v, w, ctx)), "phi(v,w) != 0");

  const Vec &vp = s.v.vp, &vdp = s.v.vdp, &wp = s.w.vp;
  const Scalar &v0 = s.v.v0, &w0 = s.w.v0;
  Split3 out{Matrix::identity(r, ctx.dim()), Matrix::identity(r, ctx.dim()), Matrix::identity(r, ctx.dim())};
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      out.m1(1 + a, 1 + b) -= x * wp[a - 1] * vdp[b - 1];
      out.m1(1 + n + a, 1 + n + b) += x * vdp[a - 1] * wp[b - 1];
      out.m2(1 + a, 1 + n + b) = x * (vp[a - 1] * wp[b - 1] - wp[a - 1] * vp[b - 1]);
    }
  Scalar two = from_int(r, 2);
  for (int b = 1; b <= n; ++b) {
    Scalar b1 = -(x * w0 * vdp[b - 1]);
    Scalar b2 = -(x * (w0 * vp[b - 1] - v0 * wp[b - 1]));
    out.m3(1, 1 + b) = b1;
    out.m3(1, 1 + n + b) = b2;
    out.m3(1 + b, 1) = -(two * b2);
    out.m3(1 + n + b, 1) = -(two * b1);
  }
  return out;
}

struct WPair {
  SplitVector w1, w2;
};

/// w₁ = (α·(w₀; w″), w″·y), w₂ = ((w₀; w′)·y − α·(w₀; w″), 0).
inline WPair split_w_pair(const SplitVector& v, const SplitVector& w, const Scalar& y, const Matrix& alpha,
                          const FormContext& ctx) {
  int n = ctx.n;
  if (alpha.dim() != n + 1) throw Error(ErrorKind::IndexOutOfRange, "alpha must be (n+1)x(n+1)");
  Vec vv = v.to_vec(), ww = w.to_vec();
  if (!is_zero(quad_q(vv, ctx))) throw Error(ErrorKind::HypothesisViolated, "q(v) != 0");
  if (!is_zero(bilinear_phi(vv, ww, ctx))) throw Error(ErrorKind::HypothesisViolated, "phi(v,w) != 0");
  if (!is_zero(v.v0 * w.v0)) throw Error(ErrorKind::HypothesisViolated, "v0 w0 != 0");
  if (!is_alternating(alpha)) throw Error(ErrorKind::NotAlternating, "alpha is not alternating");
  Vec head{w.v0};
  head.insert(head.end(), w.vdp.begin(), w.vdp.end());
  Vec ah = alpha * head;
  Vec top{w.v0};
  top.insert(top.end(), w.vp.begin(), w.vp.end());
  Vec rest = sub(scale(y, top), ah);
  WPair out;
  out.w1.v0 = ah[0];
  out.w1.vp.assign(ah.begin() + 1, ah.end());
  out.w1.vdp = scale(y, w.vdp);
  out.w2.v0 = rest[0];
  out.w2.vp.assign(rest.begin() + 1, rest.end());
  out.w2.vdp = zero_vec(ctx.ring, n);
  return out;
}

struct PairSplit {
  Scalar y;
  Matrix alpha;
  WPair pair;
};

/// Builds y = Σ cᵢ·(2v₀; v″)ᵢ, α with α·(2v₀; v″) = (v₀/2; v′)·y, and the pair (w₁, w₂).
inline PairSplit pair_split(const SplitVector& v, const SplitVector& w, const Vec& c, const FormContext& ctx) {
  Ring r = ctx.ring;
  Vec a{half(r) * v.v0};
  a.insert(a.end(), v.vp.begin(), v.vp.end());
  Vec b{from_int(r, 2) * v.v0};
  b.insert(b.end(), v.vdp.begin(), v.vdp.end());
  if (c.size() != b.size()) throw Error(ErrorKind::IndexOutOfRange, "witness length must be n+1");
  Scalar y = dot(c, b);
  Matrix alpha = solve_alternating(a, b, OrderIdealWitness{y, c});
  return PairSplit{y, alpha, split_w_pair(v, w, y, alpha, ctx)};
}

struct LawResult {
  std::string law;
  bool applicable = false;
  bool holds = false;
  std::string detail;
};

/// Evaluates each applicable transvection law on the given data.
/// u, v isotropic and orthogonal to each other and to w; α a similitude with multiplier a.
inline std::vector<LawResult> transvection_laws(const Vec& u, const Vec& v, const Vec& w, const Scalar& a,
                                                const Scalar& b, const Matrix& alpha, const Scalar& mult,
                                                const FormContext& ctx) {
  std::vector<LawResult> out;
  Ring r = ctx.ring;
  Scalar one_r = one(r);
  auto iso = [&](const Vec& x) { return is_zero(quad_q(x, ctx)); };
  auto perp = [&](const Vec& x, const Vec& y) { return is_zero(bilinear_phi(x, y, ctx)); };
  auto run = [&](const std::string& name, bool applicable, auto&& f) {
    LawResult res{name, applicable, false, ""};
    if (!applicable) {
      res.detail = "HypothesisViolated";
    } else {
      try {
        res.holds = f();
      } catch (const Error& e) {
        res.detail = e.what();
      }
    }
    out.push_back(res);
  };
  run("i", iso(u) && perp(u, v), [&] {
    Matrix e = transvection(u, v, a, ctx);
    return is_orthogonal(e, ctx) && transvection(u, u, a, ctx).is_identity();
  });
  run("ii", iso(u) && perp(u, v), [&] {
    Matrix e = transvection(u, v, a, ctx);
    return e == transvection(scale(a, u), v, one_r, ctx) && e == transvection(u, scale(a, v), one_r, ctx);
  });
  run("iii", iso(u) && perp(u, v) && perp(u, w), [&] {
    return transvection(u, add(v, w), one_r, ctx) ==
           transvection(u, v, one_r, ctx) * transvection(u, w, one_r, ctx);
  });
  run("iv", iso(u) && iso(v) && perp(u, v) && perp(u, w) && perp(v, w), [&] {
    Matrix lhs = transvection(u, w, one_r, ctx) * transvection(v, w, one_r, ctx);
    Matrix corr = transvection(u, v, -quad_q(w, ctx), ctx);
    bool alt = (transvection(u, v, one_r, ctx) * transvection(v, u, one_r, ctx)).is_identity();
    Matrix uvw = transvection(add(u, v), w, one_r, ctx);
    return alt && lhs == uvw * corr && lhs == corr * uvw;
  });
  run("v", iso(u) && perp(u, v) && is_unit(mult) &&
               alpha.transpose() * ctx.gram * alpha == mult * ctx.gram, [&] {
    Matrix ainv = inv(mult) * (ctx.gram_inv * alpha.transpose() * ctx.gram);
    return alpha * transvection(u, v, b, ctx) * ainv == transvection(alpha * u, alpha * v, inv(mult) * b, ctx);
  });
  return out;
}

}  // namespace orthgen
