#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "matrix.hpp"
#include "quadratic_space.hpp"
#include "rings.hpp"

namespace orthgen {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag, std::uint64_t k) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ULL;
  return splitmix64(splitmix64(seed ^ h) + k);
}

/// Portable seeded source: raw mt19937_64 output mapped by modulo.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  bool coin() { return gen_() & 1; }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Small random element; polynomial kinds get degree <= deg.
inline Scalar random_scalar(Ring r, Rng& g, int deg = 2) {
  switch (r.kind()) {
    case RingKind::Rational: {
      mpq_class q(static_cast<long>(g.range(-6, 6)), static_cast<unsigned long>(g.range(1, 3)));
      return Scalar::make_rational(q);
    }
    case RingKind::PrimeField:
    case RingKind::Modular: return Scalar::make_residue(r, g.range(0, r.modulus() - 1));
    case RingKind::Truncated: {
      std::vector<Scalar> c;
      for (int k = 0; k < r.length(); ++k) c.push_back(random_scalar(r.base(), g));
      return Scalar::make_coeffs(r, 0, c);
    }
    case RingKind::Polynomial: {
      std::vector<Scalar> c;
      int d = static_cast<int>(g.range(0, deg));
      for (int k = 0; k <= d; ++k) c.push_back(random_scalar(r.base(), g));
      return Scalar::make_coeffs(r, 0, c);
    }
    case RingKind::Laurent: {
      std::vector<Scalar> c;
      int d = static_cast<int>(g.range(0, deg));
      for (int k = 0; k <= d; ++k) c.push_back(random_scalar(r.base(), g));
      return Scalar::make_coeffs(r, g.range(-deg, 0), c);
    }
  }
  return zero(r);
}

inline Scalar random_nonzero(Ring r, Rng& g, int deg = 2) {
  for (;;) {
    Scalar x = random_scalar(r, g, deg);
    if (!is_zero(x)) return x;
  }
}

/// Random unit; for polynomial kinds a nonzero constant unit.
inline Scalar random_unit(Ring r, Rng& g) {
  if (r.kind() == RingKind::Polynomial || r.kind() == RingKind::Laurent) return embed(random_unit(r.base(), g), r);
  for (;;) {
    Scalar x = random_scalar(r, g);
    if (is_unit(x)) return x;
  }
}

/// Random element whose square vanishes: zero in fields and R[X], p^⌈k/2⌉·c in Z/p^k, t^⌈e/2⌉·c in k[t]/(t^e).
inline Scalar random_square_zero(Ring r, Rng& g) {
  switch (r.kind()) {
    case RingKind::Modular: {
      std::int64_t step = 1;
      for (int i = 0; i < (r.exponent() + 1) / 2; ++i) step *= r.prime();
      return Scalar::make_residue(r, step * g.range(0, r.modulus() / step - 1));
    }
    case RingKind::Truncated:
      return monomial(r, random_scalar(r.base(), g), (r.length() + 1) / 2);
    default: return zero(r);
  }
}

inline Vec random_vec(Ring r, int len, Rng& g, int deg = 2) {
  Vec v;
  for (int i = 0; i < len; ++i) v.push_back(random_scalar(r, g, deg));
  return v;
}

inline Matrix random_alternating(Ring r, int n, Rng& g, int deg = 2) {
  Matrix a(r, n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      a(i, j) = random_scalar(r, g, deg);
      a(j, i) = -a(i, j);
    }
  return a;
}

inline Matrix random_unipotent(Ring r, int n, bool upper, Rng& g, int deg = 2) {
  Matrix a = Matrix::identity(r, n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (upper)
        a(i, j) = random_scalar(r, g, deg);
      else
        a(j, i) = random_scalar(r, g, deg);
    }
  return a;
}

/// δ-commuting permutation: a random permutation of the pairs, each optionally swapped.
inline std::vector<int> random_delta_perm(const FormContext& ctx, Rng& g) {
  int n = ctx.n, s = ctx.odd ? 1 : 0;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[g.range(0, i)]);
  std::vector<int> p = identity_perm(ctx.dim());
  for (int i = 1; i <= n; ++i) {
    int t = order[i - 1];
    bool sw = g.coin();
    p[s + i - 1] = sw ? s + n + t : s + t;
    p[s + n + i - 1] = sw ? s + t : s + n + t;
  }
  return p;
}

inline GenLabel random_f_letter(const FormContext& ctx, Rng& g, int deg = 2) {
  int n = ctx.n;
  Family fams[] = {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5};
  Family f = (n == 1) ? fams[g.range(0, 1)] : fams[g.range(0, 4)];
  int i = static_cast<int>(g.range(1, n));
  int j = 0;
  if (!is_single_index(f)) {
    j = static_cast<int>(g.range(1, n - 1));
    if (j >= i) ++j;
  }
  return GenLabel::F(f, i, j, random_scalar(ctx.ring, g, deg));
}

inline Word random_eo_word(const FormContext& ctx, int len, Rng& g, int deg = 2) {
  Word w{ctx, {}};
  for (int k = 0; k < len; ++k) w.letters.push_back(random_f_letter(ctx, g, deg));
  return w;
}

inline Matrix random_monomial(const FormContext& ctx, Rng& g) {
  Vec d;
  for (int i = 0; i < ctx.n; ++i) d.push_back(random_unit(ctx.ring, g));
  Scalar d0 = g.coin() ? one(ctx.ring) : -one(ctx.ring);
  return perm_matrix(random_delta_perm(ctx, g), ctx) * diag_orthogonal(d0, d, ctx);
}

/// A random orthogonal matrix: EO word of the given length times a monomial.
inline Matrix random_orthogonal(const FormContext& ctx, Rng& g, int len = 8, int deg = 2) {
  return eval_word(random_eo_word(ctx, len, g, deg)) * random_monomial(ctx, g);
}

}  // namespace orthgen
