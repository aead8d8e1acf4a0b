#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "quadratic_space.hpp"
#include "rings.hpp"

namespace orthgen {

enum class Family { F1, F2, F3, F4, F5, OE, PERM, DIAG, THETA };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
    case Family::F4: return "F4";
    case Family::F5: return "F5";
    case Family::OE: return "OE";
    case Family::PERM: return "PERM";
    case Family::DIAG: return "DIAG";
    case Family::THETA: return "THETA";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::OE, Family::PERM,
                   Family::DIAG, Family::THETA})
    if (s == family_name(f)) return f;
  throw Error(ErrorKind::ParseError, "unknown generator family '" + s + "'");
}

inline bool is_elementary(Family f) {
  return f == Family::F1 || f == Family::F2 || f == Family::F3 || f == Family::F4 || f == Family::F5;
}

inline bool is_single_index(Family f) { return f == Family::F1 || f == Family::F2; }

/// One off-identity entry of a generator formula.
struct Term {
  int row;
  int col;
  Scalar value;
};

/// Negates term `term` of family `family`; used to mutation-test the identity suite.
struct SignFlip {
  Family family;
  int term;
};

inline int term_count(Family f) { return is_single_index(f) ? 3 : 2; }

namespace detail {
inline void check_f_indices(Family fam, int i, int j, const FormContext& ctx) {
  if (!ctx.odd) throw Error(ErrorKind::BadIndex, "F generators live in odd dimension");
  if (!is_elementary(fam)) throw Error(ErrorKind::BadIndex, "not an F family");
  int n = ctx.n;
  if (i < 1 || i > n) throw Error(ErrorKind::BadIndex, "i = " + std::to_string(i) + " outside 1.." + std::to_string(n));
  if (!is_single_index(fam)) {
    if (j < 1 || j > n) throw Error(ErrorKind::BadIndex, "j = " + std::to_string(j) + " outside 1.." + std::to_string(n));
    if (i == j) throw Error(ErrorKind::BadIndex, "i and j must differ");
  }
}
}  // namespace detail

inline std::vector<Term> f_terms(Family fam, int i, int j, const Scalar& z, const FormContext& ctx) {
  detail::check_f_indices(fam, i, j, ctx);
  if (z.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, z.ring().name() + " vs " + ctx.ring.name());
  int n = ctx.n;
  Scalar two = from_int(ctx.ring, 2);
  switch (fam) {
    case Family::F1: return {{1, n + i + 1, z}, {i + 1, 1, -(two * z)}, {i + 1, n + i + 1, -(z * z)}};
    case Family::F2: return {{1, i + 1, z}, {n + i + 1, 1, -(two * z)}, {n + i + 1, i + 1, -(z * z)}};
    case Family::F3: return {{i + 1, j + 1, z}, {n + j + 1, n + i + 1, -z}};
    case Family::F4: return {{i + 1, n + j + 1, z}, {j + 1, n + i + 1, -z}};
    case Family::F5: return {{n + i + 1, j + 1, z}, {n + j + 1, i + 1, -z}};
    default: throw Error(ErrorKind::BadIndex, "not an F family");
  }
}

inline Matrix gen_F(Family fam, int i, int j, const Scalar& z, const FormContext& ctx,
                    const SignFlip* flip = nullptr) {
  auto terms = f_terms(fam, i, j, z, ctx);
  Matrix m = Matrix::identity(ctx.ring, ctx.dim());
  for (std::size_t t = 0; t < terms.size(); ++t) {
    bool neg = flip && flip->family == fam && flip->term == static_cast<int>(t);
    m(terms[t].row, terms[t].col) += neg ? -terms[t].value : terms[t].value;
  }
  return m;
}

inline Matrix gen_oe(int i, int j, const Scalar& z, const FormContext& ctx) {
  if (ctx.odd) throw Error(ErrorKind::BadIndex, "oe generators live in even dimension");
  int d = ctx.dim();
  if (i < 1 || j < 1 || i > d || j > d || i == j)
    throw Error(ErrorKind::BadIndex, "oe indices must satisfy 1 <= i != j <= 2n");
  if (j == ctx.delta(i)) throw Error(ErrorKind::BadIndex, "oe_{i,delta(i)} is not a generator");
  if (z.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, z.ring().name() + " vs " + ctx.ring.name());
  Matrix m = Matrix::identity(ctx.ring, d);
  m(i, j) += z;
  m(ctx.delta(j), ctx.delta(i)) -= z;
  return m;
}

/// Image array (1-based): π(k) = image[k-1].
inline void check_permutation(const std::vector<int>& image, const FormContext& ctx) {
  int d = ctx.dim();
  if (static_cast<int>(image.size()) != d) throw Error(ErrorKind::BadIndex, "permutation length is not the dimension");
  std::vector<bool> seen(d + 1, false);
  for (int x : image) {
    if (x < 1 || x > d || seen[x]) throw Error(ErrorKind::BadIndex, "not a permutation");
    seen[x] = true;
  }
  for (int k = 1; k <= d; ++k)
    if (image[ctx.delta(k) - 1] != ctx.delta(image[k - 1]))
      throw Error(ErrorKind::NotDeltaCommuting, "permutation does not commute with delta at " + std::to_string(k));
}

inline std::vector<int> perm_inverse(const std::vector<int>& image) {
  std::vector<int> out(image.size());
  for (std::size_t k = 0; k < image.size(); ++k) out[image[k] - 1] = static_cast<int>(k) + 1;
  return out;
}

/// σ_π with σ_π·e_k = e_{π(k)}.
inline Matrix perm_matrix(const std::vector<int>& image, const FormContext& ctx) {
  check_permutation(image, ctx);
  Matrix m(ctx.ring, ctx.dim());
  for (int k = 1; k <= ctx.dim(); ++k) m(image[k - 1], k) = one(ctx.ring);
  return m;
}

inline std::vector<int> identity_perm(int d) {
  std::vector<int> p(d);
  for (int k = 0; k < d; ++k) p[k] = k + 1;
  return p;
}

/// diag(d₀, d₁..d_n, d₁⁻¹..d_n⁻¹); in even dimension d₀ is ignored.
inline Matrix diag_orthogonal(const Scalar& d0, const Vec& d, const FormContext& ctx) {
  if (static_cast<int>(d.size()) != ctx.n) throw Error(ErrorKind::BadIndex, "diagonal needs n entries");
  int s = ctx.odd ? 1 : 0;
  Matrix m(ctx.ring, ctx.dim());
  if (ctx.odd) {
    if (d0.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, "d0 ring");
    if (d0 * d0 != one(ctx.ring)) throw Error(ErrorKind::BadSign, "d0^2 != 1");
    m(1, 1) = d0;
  }
  for (int i = 1; i <= ctx.n; ++i) {
    const Scalar& x = d[i - 1];
    if (x.ring() != ctx.ring) throw Error(ErrorKind::RingMismatch, "diagonal entry ring");
    m(s + i, s + i) = x;
    m(s + ctx.n + i, s + ctx.n + i) = inv(x);
  }
  return m;
}

/// diag(X^e·1_m, 1_{dim−m}).
inline Matrix theta(const FormContext& ctx, int m, int e = 1) {
  Ring r = ctx.ring;
  if (r.kind() != RingKind::Polynomial && r.kind() != RingKind::Laurent)
    throw Error(ErrorKind::UnsupportedRing, "theta needs R[X] or R[X,X^-1]");
  if (m < 0 || m > ctx.dim()) throw Error(ErrorKind::BadIndex, "theta block size");
  Matrix t = Matrix::identity(r, ctx.dim());
  Scalar x = monomial(r, one(r.base()), e);
  for (int k = 1; k <= m; ++k) t(k, k) = x;
  return t;
}

/// O_{2n+1} -> O_{2n+3}: a new hyperbolic pair at positions n+2 and 2n+3.
inline Matrix embed_odd(const Matrix& a, const FormContext& ctx) {
  if (!is_orthogonal(a, ctx)) throw Error(ErrorKind::NotOrthogonal, "embed_odd needs an orthogonal input");
  int n = ctx.n;
  auto pos = [&](int k) { return k <= n + 1 ? k : k + 1; };
  Matrix m = Matrix::identity(ctx.ring, 2 * n + 3);
  for (int i = 1; i <= ctx.dim(); ++i)
    for (int j = 1; j <= ctx.dim(); ++j) m(pos(i), pos(j)) = a(i, j);
  return m;
}

/// 1 ⊥ β for a 2n×2n block β.
inline Matrix one_perp(const Matrix& b) {
  Matrix m(b.ring(), b.dim() + 1);
  m(1, 1) = one(b.ring());
  set_block(m, 2, 2, b);
  return m;
}

/// Symbolic generator with exponent ±1.
struct GenLabel {
  Family fam = Family::F1;
  int i = 0;
  int j = 0;
  Scalar z;
  std::vector<int> perm;
  Scalar d0;
  Vec d;
  int m = 0;
  int exp = 1;

  static GenLabel F(Family f, int i, int j, Scalar z) {
    GenLabel g;
    g.fam = f;
    g.i = i;
    g.j = j;
    g.z = std::move(z);
    return g;
  }
  static GenLabel F1(int i, Scalar z) { return F(Family::F1, i, 0, std::move(z)); }
  static GenLabel F2(int i, Scalar z) { return F(Family::F2, i, 0, std::move(z)); }
  static GenLabel OE(int i, int j, Scalar z) { return F(Family::OE, i, j, std::move(z)); }
  static GenLabel Perm(std::vector<int> image) {
    GenLabel g;
    g.fam = Family::PERM;
    g.perm = std::move(image);
    return g;
  }
  static GenLabel Diag(Scalar d0, Vec d) {
    GenLabel g;
    g.fam = Family::DIAG;
    g.d0 = std::move(d0);
    g.d = std::move(d);
    return g;
  }
  static GenLabel Theta(int m) {
    GenLabel g;
    g.fam = Family::THETA;
    g.m = m;
    return g;
  }

  bool operator==(const GenLabel& o) const {
    if (fam != o.fam || exp != o.exp) return false;
    switch (fam) {
      case Family::PERM: return perm == o.perm;
      case Family::DIAG: return d0 == o.d0 && d == o.d;
      case Family::THETA: return m == o.m;
      default: return i == o.i && (is_single_index(fam) || j == o.j) && z == o.z;
    }
  }
  bool operator!=(const GenLabel& o) const { return !(*this == o); }
};

inline GenLabel inverse(GenLabel g) {
  g.exp = -g.exp;
  return g;
}

inline Matrix letter_matrix(const GenLabel& g, const FormContext& ctx, const SignFlip* flip = nullptr) {
  if (g.exp != 1 && g.exp != -1) throw Error(ErrorKind::BadIndex, "exponent must be +1 or -1");
  switch (g.fam) {
    case Family::OE: return gen_oe(g.i, g.j, g.exp == 1 ? g.z : -g.z, ctx);
    case Family::PERM: return perm_matrix(g.exp == 1 ? g.perm : perm_inverse(g.perm), ctx);
    case Family::DIAG: {
      if (g.exp == 1) return diag_orthogonal(ctx.odd ? g.d0 : one(ctx.ring), g.d, ctx);
      Vec dinv;
      for (const auto& x : g.d) dinv.push_back(inv(x));
      return diag_orthogonal(ctx.odd ? g.d0 : one(ctx.ring), dinv, ctx);
    }
    case Family::THETA: return theta(ctx, g.m, g.exp);
    default: return gen_F(g.fam, g.i, g.j, g.exp == 1 ? g.z : -g.z, ctx, flip);
  }
}

/// A certificate: the left-to-right product of its letters.
struct Word {
  FormContext ctx;
  std::vector<GenLabel> letters;

  bool operator==(const Word& o) const {
    return ctx.n == o.ctx.n && ctx.odd == o.ctx.odd && ctx.ring == o.ctx.ring && letters == o.letters;
  }
};

inline Matrix eval_word(const Word& w, const SignFlip* flip = nullptr) {
  Matrix m = Matrix::identity(w.ctx.ring, w.ctx.dim());
  for (const auto& g : w.letters) m = m * letter_matrix(g, w.ctx, flip);
  return m;
}

inline Word word_inverse(const Word& w) {
  Word out{w.ctx, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(inverse(*it));
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

/// ∏ aᵢbᵢ rewritten as ∏ rᵢbᵢrᵢ⁻¹ · ∏ aᵢ with rᵢ = a₁⋯aᵢ.
inline Word word_shuffle(const std::vector<std::pair<Word, Word>>& pairs, const FormContext& ctx) {
  Word out{ctx, {}};
  Word r{ctx, {}};
  for (const auto& [a, b] : pairs) {
    r = concat(r, a);
    if (b.letters.empty()) continue;
    out = concat(out, r);
    out = concat(out, b);
    out = concat(out, word_inverse(r));
  }
  return concat(out, r);
}

/// Interleaved single-letter form a₁ b₁ a₂ b₂ ⋯.
inline Word word_shuffle(const Word& w) {
  if (w.letters.size() % 2 != 0) throw Error(ErrorKind::OddLength, "interleaved word has odd length");
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t k = 0; k < w.letters.size(); k += 2)
    pairs.push_back({Word{w.ctx, {w.letters[k]}}, Word{w.ctx, {w.letters[k + 1]}}});
  return word_shuffle(pairs, w.ctx);
}

enum class CommutatorConvention { ABAinvBinv, AinvBinvAB };

/// [a,b] = a·b·a⁻¹·b⁻¹ (default) for orthogonal a, b.
inline Matrix commutator(const Matrix& a, const Matrix& b, const FormContext& ctx,
                         CommutatorConvention conv = CommutatorConvention::ABAinvBinv) {
  Matrix ai = orth_inverse(a, ctx), bi = orth_inverse(b, ctx);
  return conv == CommutatorConvention::ABAinvBinv ? a * b * ai * bi : ai * bi * a * b;
}

}  // namespace orthgen
