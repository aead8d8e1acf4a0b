#pragma once

#include <optional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "matrix.hpp"
#include "quadratic_space.hpp"
#include "transvections.hpp"

namespace orthgen {

/// F3 word for block(1, γ, (γᵀ)⁻¹), γ unipotent triangular.
inline Word factor_unipotent(const Matrix& g, bool upper, const FormContext& ctx) {
  int n = ctx.n;
  if (g.dim() != n || g.ring() != ctx.ring) throw Error(ErrorKind::NotUnipotent, "block must be n x n over the context ring");
  if (!is_unipotent_triangular(g, upper)) throw Error(ErrorKind::NotUnipotent, "block is not unipotent triangular");
  Word w{ctx, {}};
  if (upper) {
    for (int j = n; j >= 2; --j)
      for (int i = 1; i < j; ++i)
        if (!is_zero(g(i, j))) w.letters.push_back(GenLabel::F(Family::F3, i, j, g(i, j)));
  } else {
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i)
        if (!is_zero(g(j, i))) w.letters.push_back(GenLabel::F(Family::F3, j, i, g(j, i)));
  }
  return w;
}

/// F4 (upper) or F5 (lower) word over pairs i < j.
inline Word factor_alt(const Matrix& a, bool upper, const FormContext& ctx) {
  int n = ctx.n;
  if (a.dim() != n || a.ring() != ctx.ring) throw Error(ErrorKind::NotAlternating, "block must be n x n over the context ring");
  if (!is_alternating(a)) throw Error(ErrorKind::NotAlternating, "block is not alternating");
  Word w{ctx, {}};
  Family f = upper ? Family::F4 : Family::F5;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!is_zero(a(i, j))) w.letters.push_back(GenLabel::F(f, i, j, a(i, j)));
  return w;
}

/// block(1, γ, δ; 0, (γᵀ)⁻¹) for upper, block(1, γ, 0; δ, (γᵀ)⁻¹) for lower.
inline Matrix to_block(const Matrix& g, const Matrix& d, bool upper) {
  int n = g.dim();
  Matrix m(g.ring(), 2 * n + 1);
  m(1, 1) = one(g.ring());
  set_block(m, 2, 2, g);
  set_block(m, n + 2, n + 2, inverse(g).transpose());
  if (upper)
    set_block(m, 2, n + 2, d);
  else
    set_block(m, n + 2, 2, d);
  return m;
}

/// TO (upper) or TO′ (lower) block matrix -> F3/F4 or F5/F3 word.
inline Word factor_to(const Matrix& a, const FormContext& ctx, bool upper = true) {
  int n = ctx.n;
  if (a.dim() != ctx.dim() || a.ring() != ctx.ring) throw Error(ErrorKind::NotTOShape, "dimension or ring mismatch");
  Ring r = ctx.ring;
  auto fail = [](const std::string& s) { throw Error(ErrorKind::NotTOShape, s); };
  if (a(1, 1) != one(r)) fail("entry (1,1) is not 1");
  for (int k = 2; k <= ctx.dim(); ++k)
    if (!is_zero(a(1, k)) || !is_zero(a(k, 1))) fail("first row/column is not trivial");
  Matrix g = submatrix(a, 2, 2, n);
  Matrix zero_blk = upper ? submatrix(a, n + 2, 2, n) : submatrix(a, 2, n + 2, n);
  Matrix d = upper ? submatrix(a, 2, n + 2, n) : submatrix(a, n + 2, 2, n);
  if (!is_zero(zero_blk)) fail("off-diagonal block is not zero");
  if (!is_unipotent_triangular(g, upper)) fail("gamma is not unipotent triangular");
  Matrix gi = unipotent_inverse(g);
  if (submatrix(a, n + 2, n + 2, n) != gi.transpose()) fail("lower-right block is not (gamma^T)^-1");
  Matrix alt = upper ? gi * d : d * gi;
  if (!is_alternating(alt)) fail("gamma^-1 delta is not alternating");
  if (upper) return concat(factor_unipotent(g, true, ctx), factor_alt(alt, true, ctx));
  return concat(factor_alt(alt, false, ctx), factor_unipotent(g, false, ctx));
}

struct TmtDecomposition {
  Word tau1;
  Matrix mu;
  Word tau2;
};

namespace detail {

/// Basis ordered by decreasing weight: v′ coordinates, then e₁, then v″ in reverse.
inline std::vector<int> weight_order(int n) {
  std::vector<int> ord(2 * n + 1);
  for (int p = 1; p <= n; ++p) ord[p - 1] = p + 1;
  ord[n] = 1;
  for (int p = n + 2; p <= 2 * n + 1; ++p) ord[p - 1] = n + (2 * n + 2 - p) + 1;
  return ord;
}

inline Matrix reorder(const Matrix& a, const std::vector<int>& ord) {
  Matrix m(a.ring(), a.dim());
  for (int p = 1; p <= a.dim(); ++p)
    for (int q = 1; q <= a.dim(); ++q) m(p, q) = a(ord[p - 1], ord[q - 1]);
  return m;
}

inline Matrix unreorder(const Matrix& a, const std::vector<int>& ord) {
  Matrix m(a.ring(), a.dim());
  for (int p = 1; p <= a.dim(); ++p)
    for (int q = 1; q <= a.dim(); ++q) m(ord[p - 1], ord[q - 1]) = a(p, q);
  return m;
}

/// Letters whose product is the orthogonal unipotent U (upper in the weight basis).
inline std::vector<GenLabel> factor_upper_unipotent(Matrix w, const FormContext& ctx, const std::vector<int>& ord) {
  int n = ctx.n, d = ctx.dim();
  Ring r = ctx.ring;
  Scalar hf = half(r);
  std::vector<GenLabel> applied;
  for (int c = 1; c <= d; ++c) {
    for (int p = c - 1; p >= 1; --p) {
      if (p + c >= d + 1 || is_zero(w(p, c))) continue;
      GenLabel g;
      if (c <= n)
        g = GenLabel::F(Family::F3, p, c, -w(p, c));
      else if (c == n + 1)
        g = GenLabel::F1(p, hf * w(p, c));
      else
        g = GenLabel::F(Family::F4, p, d + 1 - c, -w(p, c));
      w = reorder(letter_matrix(g, ctx), ord) * w;
      applied.push_back(g);
    }
  }
  if (!w.is_identity()) throw Error(ErrorKind::EliminationStalled, "unipotent factor did not reduce to I");
  std::vector<GenLabel> out;
  for (const auto& g : applied) {
    GenLabel h = g;
    h.z = -h.z;
    out.push_back(h);
  }
  return out;
}

}  // namespace detail

/// α = eval(τ₁)·μ·eval(τ₂) with μ monomial and τ letters in TO, over a field.
inline TmtDecomposition tmt_decompose(const Matrix& alpha, const FormContext& ctx) {
  if (!ctx.ring.is_field()) throw Error(ErrorKind::UnsupportedRing, "tmt_decompose needs a field");
  if (!ctx.odd) throw Error(ErrorKind::UnsupportedRing, "tmt_decompose needs odd dimension");
  if (!is_orthogonal(alpha, ctx)) throw Error(ErrorKind::NotOrthogonal, "input is not orthogonal");
  int d = ctx.dim();
  Ring r = ctx.ring;
  auto ord = detail::weight_order(ctx.n);
  Matrix b0 = detail::reorder(alpha, ord);
  Matrix b = b0, left = Matrix::identity(r, d);
  std::vector<int> pivot_col(d + 1, 0);

  // Bruhat elimination: rows bottom to top, pivot at the leftmost nonzero entry.
  for (int row = d; row >= 1; --row) {
    int c = 0;
    for (int j = 1; j <= d; ++j)
      if (!is_zero(b(row, j))) {
        c = j;
        break;
      }
    if (!c) throw Error(ErrorKind::EliminationStalled, "zero row during elimination");
    pivot_col[row] = c;
    Scalar pinv = inv(b(row, c));
    for (int j = c + 1; j <= d; ++j) {
      if (is_zero(b(row, j))) continue;
      Scalar f = b(row, j) * pinv;
      for (int i = 1; i <= d; ++i) b(i, j) -= f * b(i, c);
    }
    for (int i = row - 1; i >= 1; --i) {
      if (is_zero(b(i, c))) continue;
      Scalar f = b(i, c) * pinv;
      for (int j = 1; j <= d; ++j) {
        b(i, j) -= f * b(row, j);
        left(i, j) -= f * left(row, j);
      }
    }
  }
  const Matrix& mono = b;
  Matrix u = unipotent_inverse(left);

  // Keep only the part of u in U ∩ M·U⁻·M⁻¹; the rest moves to the right factor.
  for (int j = 1; j <= d; ++j)
    for (int i = j - 1; i >= 1; --i) {
      if (pivot_col[i] > pivot_col[j] || is_zero(u(i, j))) continue;
      Scalar t = -u(i, j);
      for (int k = 1; k <= i; ++k) u(k, j) += t * u(k, i);
    }
  Matrix mono_inv(r, d);
  for (int i = 1; i <= d; ++i) mono_inv(pivot_col[i], i) = inv(mono(i, pivot_col[i]));
  Matrix u2 = mono_inv * unipotent_inverse(u) * b0;

  Matrix j = detail::reorder(ctx.gram, ord);
  auto orth = [&](const Matrix& x) { return x.transpose() * j * x == j; };
  if (!is_unipotent_triangular(u2, true) || !orth(u) || !orth(mono) || !orth(u2))
    throw Error(ErrorKind::EliminationStalled, "Bruhat factors are not orthogonal");

  TmtDecomposition out{Word{ctx, detail::factor_upper_unipotent(u, ctx, ord)}, detail::unreorder(mono, ord),
                       Word{ctx, detail::factor_upper_unipotent(u2, ctx, ord)}};
  return out;
}

struct MonoSplit {
  std::vector<int> perm;
  Matrix sigma;
  Scalar d0;
  Vec d;
  Matrix diag;
};

/// μ = σ·d with σ a δ-commuting permutation and d ∈ DO.
inline MonoSplit mo_split(const Matrix& mu, const FormContext& ctx) {
  if (!is_monomial_orthogonal(mu, ctx)) throw Error(ErrorKind::NotMonomial, "input is not monomial orthogonal");
  int dd = ctx.dim();
  MonoSplit out;
  out.perm.assign(dd, 0);
  Vec diag_entries(dd);
  for (int k = 1; k <= dd; ++k)
    for (int r = 1; r <= dd; ++r)
      if (!is_zero(mu(r, k))) {
        out.perm[k - 1] = r;
        diag_entries[k - 1] = mu(r, k);
      }
  out.sigma = perm_matrix(out.perm, ctx);
  int s = ctx.odd ? 1 : 0;
  out.d0 = ctx.odd ? diag_entries[0] : one(ctx.ring);
  for (int i = 1; i <= ctx.n; ++i) out.d.push_back(diag_entries[s + i - 1]);
  out.diag = diag_orthogonal(out.d0, out.d, ctx);
  return out;
}

inline Scalar lift_scalar(const Scalar& x, Ring r) { return lift_from_residue(x, r); }

inline Scalar lift_sign(const Scalar& x, Ring r) {
  if (x == one(x.ring())) return one(r);
  if (x == -one(x.ring())) return -one(r);
  throw Error(ErrorKind::NotAUnitResidue, "d0 is not +-1");
}

inline GenLabel lift_letter(const GenLabel& g, Ring r) {
  GenLabel h = g;
  switch (g.fam) {
    case Family::PERM: break;
    case Family::DIAG:
      h.d0 = lift_sign(g.d0, r);
      h.d.clear();
      for (const auto& x : g.d) {
        Scalar y = lift_scalar(x, r);
        if (!is_unit(y)) throw Error(ErrorKind::NotAUnitResidue, "diagonal entry does not lift to a unit");
        h.d.push_back(y);
      }
      break;
    case Family::THETA: throw Error(ErrorKind::UnsupportedRing, "theta letters do not lift");
    default: h.z = lift_scalar(g.z, r);
  }
  return h;
}

inline Word lift_word(const Word& w, Ring r) {
  Word out{with_ring(w.ctx, r), {}};
  for (const auto& g : w.letters) out.letters.push_back(lift_letter(g, r));
  return out;
}

inline Matrix lift_perm(const std::vector<int>& image, const FormContext& ctx) { return perm_matrix(image, ctx); }

inline Matrix lift_diag(const Scalar& d0, const Vec& d, const FormContext& ctx) {
  GenLabel g = lift_letter(GenLabel::Diag(d0, d), ctx.ring);
  return diag_orthogonal(g.d0, g.d, ctx);
}

inline Matrix lift_monomial(const Matrix& mu, const FormContext& residue_ctx, const FormContext& ctx) {
  MonoSplit s = mo_split(mu, residue_ctx);
  return lift_perm(s.perm, ctx) * lift_diag(s.d0, s.d, ctx);
}

struct LocalDecomposition {
  Word tau1;
  Matrix mu;
  Word tau2;
  Matrix residual;
};

/// α = eval(τ₁)·μ·eval(τ₂)·residual with residual ≡ I mod 𝔪.
inline LocalDecomposition local_decompose(const Matrix& alpha, const FormContext& ctx) {
  Ring r = ctx.ring;
  if (!r.is_local()) throw Error(ErrorKind::UnsupportedRing, r.name() + " is not a supported local ring");
  if (!is_orthogonal(alpha, ctx)) throw Error(ErrorKind::NotOrthogonal, "input is not orthogonal");
  Ring k = residue_field(r);
  FormContext kctx = with_ring(ctx, k);
  Matrix red = map_entries(alpha, k, [](const Scalar& x) { return reduce_mod_max(x); });
  TmtDecomposition t = tmt_decompose(red, kctx);
  LocalDecomposition out;
  out.tau1 = lift_word(t.tau1, r);
  out.tau2 = lift_word(t.tau2, r);
  out.mu = lift_monomial(t.mu, kctx, ctx);
  out.residual = orth_inverse(eval_word(out.tau2), ctx) * orth_inverse(out.mu, ctx) *
                 orth_inverse(eval_word(out.tau1), ctx) * alpha;
  if (!is_orthogonal(out.residual, ctx) || !in_congruence(out.residual, Ideal::maximal(r)))
    throw Error(ErrorKind::EliminationStalled, "residual is not congruent to I");
  return out;
}

struct ThetaResult {
  Matrix conj;
  bool polynomial = false;
};

/// θ^{dir}·β·θ^{−dir} over R[X,X⁻¹], θ = diag(X·1_m, 1).
inline ThetaResult theta_conjugate(const Matrix& beta, int dir, const FormContext& ctx, int m = -1) {
  Ring r = ctx.ring;
  if (r.kind() != RingKind::Polynomial && r.kind() != RingKind::Laurent)
    throw Error(ErrorKind::UnsupportedRing, "theta conjugation needs R[X] or R[X,X^-1]");
  if (dir != 1 && dir != -1) throw Error(ErrorKind::BadIndex, "direction must be +-1");
  if (!is_orthogonal(beta, ctx)) throw Error(ErrorKind::NotOrthogonal, "input is not orthogonal");
  if (m < 0) m = ctx.n + 1;
  Ring l = Ring::laurent(r.base());
  ThetaResult out{Matrix(l, beta.dim()), true};
  auto weight = [&](int k) { return k <= m ? 1 : 0; };
  for (int i = 1; i <= beta.dim(); ++i)
    for (int j = 1; j <= beta.dim(); ++j) {
      Scalar x = embed(beta(i, j), l) * monomial(l, one(l.base()), dir * (weight(i) - weight(j)));
      if (!is_zero(x) && exponent_range(x).first < 0) out.polynomial = false;
      out.conj(i, j) = x;
    }
  return out;
}

inline ThetaResult theta_conjugate(const Word& w, int dir) { return theta_conjugate(eval_word(w), dir, w.ctx); }

struct ThetaTransvectionCheck {
  ThetaResult result;
  bool identity_holds = false;
  std::string detail;
};

/// θ·E_{v,w}(X·f)·θ⁻¹ against E_{θv,θw}(f) for constant v, w.
inline ThetaTransvectionCheck theta_transvection_check(const Vec& v, const Vec& w, const Scalar& f,
                                                       const FormContext& ctx) {
  Ring r = ctx.ring;
  Scalar xf = variable(r) * f;
  ThetaTransvectionCheck out{theta_conjugate(transvection(v, w, xf, ctx), 1, ctx), false, ""};
  Ring l = Ring::laurent(r.base());
  FormContext lctx = with_ring(ctx, l);
  Matrix th = theta(lctx, ctx.n + 1);
  Vec lv, lw;
  for (const auto& x : v) lv.push_back(embed(x, l));
  for (const auto& x : w) lw.push_back(embed(x, l));
  try {
    Matrix rhs = transvection(th * lv, th * lw, embed(f, l), lctx);
    out.identity_holds = rhs == out.result.conj;
    if (!out.identity_holds) out.detail = "theta-conjugate differs from E_{theta v, theta w}(f)";
  } catch (const Error& e) {
    out.detail = e.what();
  }
  return out;
}

struct BlockCorrection {
  bool shape = false;
  bool alternating = false;
  bool identity = false;
};

/// β₀ = [[a₁₁,0,a₁₃],[a₂₁,a₂₂,a₂₃],[0,0,a₃₃]]: θβ₀θ⁻¹ = β₀·[[1,0,(X−1)a₁₁a₁₃],[0,I,(1−X)a₂₃ᵀa₃₃],[0,0,I]].
inline BlockCorrection block_correction_check(const Matrix& b0, const FormContext& ctx) {
  int n = ctx.n;
  Ring r = ctx.ring;
  BlockCorrection out;
  bool shape = true;
  for (int i = 2; i <= n + 1; ++i) {
    if (!is_zero(b0(1, i))) shape = false;
    for (int j = 1; j <= n + 1; ++j)
      if (!is_zero(b0(n + i, j))) shape = false;
  }
  out.shape = shape;
  if (!shape) return out;
  Matrix a23 = submatrix(b0, 2, n + 2, n), a33 = submatrix(b0, n + 2, n + 2, n);
  Matrix s = a23.transpose() * a33;
  out.alternating = is_alternating(s);
  Scalar x = variable(r), u = one(r);
  Matrix corr = Matrix::identity(r, ctx.dim());
  for (int j = 1; j <= n; ++j) {
    corr(1, n + 1 + j) = (x - u) * b0(1, 1) * b0(1, n + 1 + j);
    for (int i = 1; i <= n; ++i) corr(1 + i, n + 1 + j) = (u - x) * s(i, j);
  }
  ThetaResult t = theta_conjugate(b0, 1, ctx);
  out.identity = t.conj == embed(b0 * corr, t.conj.ring());
  return out;
}

struct HorrocksClaim {
  Matrix alpha0;
  Word word;
};

struct HorrocksInstance {
  Matrix alpha;
  Matrix beta;
  Word witness;
  std::optional<HorrocksClaim> claim;
};

struct HorrocksVerdict {
  bool alpha_orthogonal = false;
  bool beta_orthogonal = false;
  bool witness_matches = false;
  std::optional<bool> alpha0_constant_orthogonal;
  std::optional<bool> claim_matches;
  bool accept = false;
  std::string failed;
};

/// Certificate check: α ∈ O(R[X]), β ∈ O(R[X⁻¹]), eval(witness) = αβ⁻¹, and optionally α = α₀·eval(word).
inline HorrocksVerdict check_horrocks_instance(const HorrocksInstance& inst) {
  Ring pr = inst.alpha.ring();
  if (pr.kind() != RingKind::Polynomial) throw Error(ErrorKind::RingMismatch, "alpha must be over R[X]");
  Ring base = pr.base();
  Ring lr = Ring::laurent(base);
  if (inst.beta.ring() != lr) throw Error(ErrorKind::RingMismatch, "beta must be over R[X,X^-1]");
  if (inst.witness.ctx.ring != lr) throw Error(ErrorKind::RingMismatch, "witness must be over R[X,X^-1]");
  int d = inst.alpha.dim();
  if (d % 2 == 0 || inst.beta.dim() != d || inst.witness.ctx.dim() != d || !inst.witness.ctx.odd)
    throw Error(ErrorKind::IndexOutOfRange, "dimensions disagree");
  int n = (d - 1) / 2;
  for (const auto& g : inst.witness.letters)
    if (!is_elementary(g.fam)) throw Error(ErrorKind::NonElementaryLetter, std::string("witness letter ") + family_name(g.fam));
  FormContext pctx = build_form(n, pr), lctx = build_form(n, lr);
  HorrocksVerdict v;
  v.alpha_orthogonal = is_orthogonal(inst.alpha, pctx);
  bool inverse_poly = true;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      if (!is_zero(inst.beta(i, j)) && exponent_range(inst.beta(i, j)).second > 0) inverse_poly = false;
  v.beta_orthogonal = inverse_poly && is_orthogonal(inst.beta, lctx);
  v.witness_matches = eval_word(inst.witness) == embed(inst.alpha, lr) * orth_inverse(inst.beta, lctx);
  v.accept = v.alpha_orthogonal && v.beta_orthogonal && v.witness_matches;
  if (inst.claim) {
    const auto& c = *inst.claim;
    if (c.alpha0.ring() != base || c.word.ctx.ring != pr || c.alpha0.dim() != d || c.word.ctx.dim() != d)
      throw Error(ErrorKind::RingMismatch, "claim must be (matrix over R, word over R[X])");
    for (const auto& g : c.word.letters)
      if (!is_elementary(g.fam)) throw Error(ErrorKind::NonElementaryLetter, std::string("claim letter ") + family_name(g.fam));
    v.alpha0_constant_orthogonal = is_orthogonal(c.alpha0, build_form(n, base));
    v.claim_matches = embed(c.alpha0, pr) * eval_word(c.word) == inst.alpha;
    v.accept = v.accept && *v.alpha0_constant_orthogonal && *v.claim_matches;
  }
  if (!v.alpha_orthogonal)
    v.failed = "a";
  else if (!v.beta_orthogonal)
    v.failed = "b";
  else if (!v.witness_matches)
    v.failed = "c";
  else if (v.alpha0_constant_orthogonal && !*v.alpha0_constant_orthogonal)
    v.failed = "d";
  else if (v.claim_matches && !*v.claim_matches)
    v.failed = "e";
  return v;
}

}  // namespace orthgen
