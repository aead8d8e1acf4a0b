#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decompose.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "quadratic_space.hpp"
#include "random.hpp"
#include "transvections.hpp"

namespace orthgen {

struct SuiteOptions {
  const SignFlip* flip = nullptr;
  CommutatorConvention conv = CommutatorConvention::ABAinvBinv;
  bool parallel = true;
  bool timing = false;
};

/// Everything a checker needs for one sample.
struct SampleEnv {
  FormContext ctx;
  Rng rng;
  const SuiteOptions* opt;
  std::size_t index;

  Ring ring() const { return ctx.ring; }
  int n() const { return ctx.n; }
  Matrix F(Family f, int i, int j, const Scalar& z) const { return gen_F(f, i, j, z, ctx, opt->flip); }
  Matrix F1(int i, const Scalar& z) const { return F(Family::F1, i, 0, z); }
  Matrix F2(int i, const Scalar& z) const { return F(Family::F2, i, 0, z); }
  Matrix comm(const Matrix& a, const Matrix& b) const { return commutator(a, b, ctx, opt->conv); }
  Scalar q(std::int64_t a, std::int64_t b = 1) const { return from_rational(ctx.ring, mpq_class(a, b)); }
};

using CheckFn = std::optional<json> (*)(SampleEnv&);

enum class SampleDomain { BaseRings, PolyRings, RankTwo };

struct SuiteItem {
  std::string_view id;
  std::string_view description;
  SampleDomain domain;
  CheckFn check;
};

namespace suite_detail {

inline json failure(std::string reason, json inputs = json::object()) {
  return json{{"reason", std::move(reason)}, {"inputs", std::move(inputs)}};
}

inline Vec column(const Matrix& a, int k) {
  Vec v;
  for (int i = 1; i <= a.dim(); ++i) v.push_back(a(i, k));
  return v;
}

inline Vec lin_comb(const Matrix& g, const std::vector<std::pair<int, Scalar>>& terms, Ring r) {
  Vec y = zero_vec(r, g.dim());
  for (const auto& [k, c] : terms) y[k - 1] = y[k - 1] + c;
  return g * y;
}

/// Frame data for the transvection laws: u isotropic, v ⟂ u, w ⟂ span(u, u2) with u, u2 totally isotropic.
struct LawData {
  Matrix g;
  Vec u, u2, v, w;
  Scalar a;
};

inline LawData law_data(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  LawData d;
  d.g = random_orthogonal(env.ctx, env.rng, 4);
  d.u = column(d.g, 2);
  std::vector<std::pair<int, Scalar>> iso, gen, perp;
  for (int k = 2; k <= n + 1; ++k) iso.push_back({k, random_scalar(r, env.rng)});
  iso.push_back({2, one(r)});
  for (int k = 1; k <= env.ctx.dim(); ++k)
    if (k != n + 2) gen.push_back({k, random_scalar(r, env.rng)});
  for (int k = 1; k <= n + 1; ++k) perp.push_back({k, random_scalar(r, env.rng)});
  d.u2 = lin_comb(d.g, iso, r);
  d.v = lin_comb(d.g, gen, r);
  d.w = lin_comb(d.g, perp, r);
  d.a = random_scalar(r, env.rng);
  return d;
}

inline std::optional<json> law_check(const std::vector<LawResult>& res, const std::string& law, json inputs) {
  for (const auto& l : res)
    if (l.law == law) {
      if (!l.applicable) return failure("sampler produced an input outside the law's hypotheses", inputs);
      if (!l.holds) return failure("law " + law + " fails" + (l.detail.empty() ? "" : ": " + l.detail), inputs);
      return std::nullopt;
    }
  return failure("law " + law + " not evaluated", inputs);
}

inline json vec_inputs(const LawData& d) {
  return json{{"u", vec_to_json(d.u)}, {"u2", vec_to_json(d.u2)}, {"v", vec_to_json(d.v)},
              {"w", vec_to_json(d.w)}, {"a", to_json(d.a)}};
}

inline std::optional<json> law_i(SampleEnv& env) {
  auto d = law_data(env);
  Matrix none = Matrix::identity(env.ring(), env.ctx.dim());
  return law_check(transvection_laws(d.u, d.v, d.w, d.a, d.a, none, one(env.ring()), env.ctx), "i", vec_inputs(d));
}

inline std::optional<json> law_ii(SampleEnv& env) {
  auto d = law_data(env);
  Matrix none = Matrix::identity(env.ring(), env.ctx.dim());
  return law_check(transvection_laws(d.u, d.v, d.w, d.a, d.a, none, one(env.ring()), env.ctx), "ii", vec_inputs(d));
}

inline std::optional<json> law_iii(SampleEnv& env) {
  auto d = law_data(env);
  Matrix none = Matrix::identity(env.ring(), env.ctx.dim());
  // v and w both lie in u^⊥.
  return law_check(transvection_laws(d.u, d.v, d.w, d.a, d.a, none, one(env.ring()), env.ctx), "iii", vec_inputs(d));
}

inline std::optional<json> law_iv(SampleEnv& env) {
  auto d = law_data(env);
  Matrix none = Matrix::identity(env.ring(), env.ctx.dim());
  return law_check(transvection_laws(d.u, d.u2, d.w, d.a, d.a, none, one(env.ring()), env.ctx), "iv", vec_inputs(d));
}

inline std::optional<json> law_v(SampleEnv& env) {
  auto d = law_data(env);
  Ring r = env.ring();
  int n = env.n();
  Scalar c = random_unit(r, env.rng);
  Matrix s = Matrix::identity(r, env.ctx.dim());
  s(1, 1) = c;
  for (int k = 2; k <= n + 1; ++k) s(k, k) = c * c;
  Matrix alpha = random_orthogonal(env.ctx, env.rng, 3) * s * random_orthogonal(env.ctx, env.rng, 3);
  Scalar b = random_scalar(r, env.rng);
  json in = vec_inputs(d);
  in["alpha"] = to_json(alpha);
  in["multiplier"] = to_json(c * c);
  return law_check(transvection_laws(d.u, d.v, d.w, d.a, b, alpha, c * c, env.ctx), "v", in);
}

inline std::pair<int, int> distinct_pair(SampleEnv& env) {
  int n = env.n();
  int i = static_cast<int>(env.rng.range(1, n));
  int j = static_cast<int>(env.rng.range(1, n - 1));
  if (j >= i) ++j;
  return {i, j};
}

inline std::optional<json> commutator_relations(SampleEnv& env) {
  auto [i, j] = distinct_pair(env);
  Scalar z = random_scalar(env.ring(), env.rng);
  Scalar h = env.q(1, 2);
  json in{{"i", i}, {"j", j}, {"z", to_json(z)}};
  if (env.F(Family::F3, i, j, z) != env.comm(env.F1(i, z), env.F2(j, -h)))
    return failure("F3_{ij}(z) != [F1_i(z), F2_j(-1/2)]", in);
  if (env.F(Family::F4, i, j, z) != env.comm(env.F1(j, z), env.F1(i, h)))
    return failure("F4_{ij}(z) != [F1_j(z), F1_i(1/2)]", in);
  if (env.F(Family::F5, i, j, z) != env.comm(env.F2(j, z), env.F2(i, h)))
    return failure("F5_{ij}(z) != [F2_j(z), F2_i(1/2)]", in);
  return std::nullopt;
}

inline std::optional<json> embed_relations(SampleEnv& env) {
  int n = env.n();
  auto [i, j] = distinct_pair(env);
  Scalar z = random_scalar(env.ring(), env.rng);
  FormContext even = build_even_form(n, env.ring());
  json in{{"i", i}, {"j", j}, {"z", to_json(z)}};
  int lo = std::min(i, j), hi = std::max(i, j);
  if (one_perp(gen_oe(lo, hi, z, even)) != env.F(Family::F3, lo, hi, z)) return failure("1 + oe_{ij} != F3_{ij}", in);
  if (one_perp(gen_oe(i, n + j, z, even)) != env.F(Family::F4, i, j, z)) return failure("1 + oe_{i,n+j} != F4_{ij}", in);
  if (one_perp(gen_oe(n + i, j, z, even)) != env.F(Family::F5, i, j, z)) return failure("1 + oe_{n+i,j} != F5_{ij}", in);
  if (one_perp(gen_oe(n + j, n + i, z, even)) != env.F(Family::F3, i, j, -z))
    return failure("1 + oe_{n+j,n+i}(z) != F3_{ij}(-z)", in);
  if (one_perp(gen_oe(lo, hi, z, even)) != env.comm(env.F1(lo, z), env.F2(hi, -env.q(1, 2))))
    return failure("1 + oe_{ij}(z) != [F1_i(z), F2_j(-1/2)]", in);
  return std::nullopt;
}

inline std::optional<json> block_embedding(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  bool local = r.kind() == RingKind::Modular;
  Matrix g = Matrix::identity(r, n);
  Word w{env.ctx, {}};
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = distinct_pair(env);
    Scalar z = local ? from_int(r, r.prime()) * random_scalar(r, env.rng) : random_scalar(r, env.rng);
    Matrix e = Matrix::identity(r, n);
    e(i, j) = z;
    g = g * e;
    w.letters.push_back(GenLabel::F(Family::F3, i, j, z));
  }
  Matrix blk(r, env.ctx.dim());
  blk(1, 1) = one(r);
  set_block(blk, 2, 2, g);
  set_block(blk, n + 2, n + 2, inverse(g).transpose());
  json in{{"gamma", to_json(g)}};
  if (!is_orthogonal(blk, env.ctx)) return failure("block(1, g, g^-T) is not orthogonal", in);
  if (eval_word(w, env.opt->flip) != blk) return failure("F3 word does not evaluate to the block", in);
  if (local && !in_congruence(blk, Ideal::maximal(r))) return failure("block is not congruent to I mod m", in);
  for (bool upper : {true, false}) {
    Matrix t = random_unipotent(r, n, upper, env.rng);
    Word fw = factor_unipotent(t, upper, env.ctx);
    if (eval_word(fw, env.opt->flip) != to_block(t, Matrix(r, n), upper))
      return failure(std::string("factor_unipotent round trip fails, upper=") + (upper ? "1" : "0"), json{{"gamma", to_json(t)}});
  }
  return std::nullopt;
}

inline std::optional<json> alternating_product(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  Matrix a = random_alternating(r, n, env.rng);
  for (bool upper : {true, false}) {
    Matrix blk = to_block(Matrix::identity(r, n), a, upper);
    if (eval_word(factor_alt(a, upper, env.ctx), env.opt->flip) != blk)
      return failure(std::string("alternating product fails, upper=") + (upper ? "1" : "0"), json{{"a", to_json(a)}});
    if (!is_orthogonal(blk, env.ctx)) return failure("alternating block is not orthogonal", json{{"a", to_json(a)}});
  }
  return std::nullopt;
}

inline std::optional<json> three_factor_split(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  SplitVector w{random_square_zero(r, env.rng), random_vec(r, n, env.rng), zero_vec(r, n)};
  Matrix a = random_alternating(r, n, env.rng), b = random_alternating(r, n, env.rng);
  SplitVector v;
  v.v0 = random_square_zero(r, env.rng);
  v.vdp = a * w.vp;
  v.vp = b * v.vdp;
  Scalar x = random_scalar(r, env.rng);
  auto tau = random_delta_perm(env.ctx, env.rng);
  Matrix st = perm_matrix(tau, env.ctx);
  Vec vs = st * v.to_vec(), ws = st * w.to_vec();
  json in{{"v", vec_to_json(vs)}, {"w", vec_to_json(ws)}, {"x", to_json(x)}};
  auto pi = normalize_permutation(ws, env.ctx);
  Matrix sp = perm_matrix(pi, env.ctx);
  SplitVector v2 = SplitVector::from_vec(sp * vs, n), w2 = SplitVector::from_vec(sp * ws, n);
  if (!is_zero(w2.vdp)) return failure("normalization left w'' != 0", in);
  Split3 s = transvection_split3(TransvectionSpec{v2, w2, x}, env.ctx);
  Matrix prod = s.m1 * s.m2 * s.m3;
  if (prod != transvection(v2.to_vec(), w2.to_vec(), x, env.ctx)) return failure("M1 M2 M3 != E_{v,w}(x)", in);
  if (sp.transpose() * prod * sp != transvection(vs, ws, x, env.ctx)) return failure("permutation transport fails", in);
  Matrix lr = submatrix(s.m1, n + 2, n + 2, n);
  for (int p = 1; p <= n; ++p)
    for (int q = 1; q <= n; ++q)
      if (lr(p, q) != (p == q ? one(r) : zero(r)) + x * v2.vdp[p - 1] * w2.vp[q - 1])
        return failure("M1 lower-right block != I + x v'' w'^T", in);
  return std::nullopt;
}

inline std::optional<json> pair_split_identity(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  SplitVector v;
  v.v0 = random_square_zero(r, env.rng);
  v.vdp = random_vec(r, n, env.rng);
  int k = static_cast<int>(env.rng.range(1, n));
  v.vdp[k - 1] = random_unit(r, env.rng);
  v.vp = random_alternating(r, n, env.rng) * v.vdp;
  SplitVector w;
  w.v0 = is_zero(v.v0) ? random_scalar(r, env.rng) : random_square_zero(r, env.rng);
  w.vdp = random_vec(r, n, env.rng);
  w.vp = random_vec(r, n, env.rng);
  w.vp[k - 1] = zero(r);
  Scalar need = -dot(v.vp, w.vdp) - dot(v.vdp, w.vp);
  w.vp[k - 1] = need * inv(v.vdp[k - 1]);
  Vec c = random_vec(r, n + 1, env.rng);
  Scalar x1 = random_scalar(r, env.rng);
  json in{{"v", to_json(v)}, {"w", to_json(w)}, {"c", vec_to_json(c)}, {"x1", to_json(x1)}};
  PairSplit ps = pair_split(v, w, c, env.ctx);
  Vec vv = v.to_vec(), wy = scale(ps.y, w.to_vec());
  if (add(ps.pair.w1.to_vec(), ps.pair.w2.to_vec()) != wy) return failure("w1 + w2 != w y", in);
  if (!is_zero(bilinear_phi(vv, ps.pair.w1.to_vec(), env.ctx))) return failure("phi(v, w1) != 0", in);
  Matrix lhs = transvection(vv, wy, x1, env.ctx);
  if (lhs != transvection(vv, w.to_vec(), x1 * ps.y, env.ctx)) return failure("E_{v,wy}(x1) != E_{v,w}(x1 y)", in);
  if (lhs != transvection(vv, ps.pair.w1.to_vec(), x1, env.ctx) * transvection(vv, ps.pair.w2.to_vec(), x1, env.ctx))
    return failure("E_{v,wy}(x1) != E_{v,w1}(x1) E_{v,w2}(x1)", in);
  return std::nullopt;
}

inline std::optional<json> rank_two_conjugation(SampleEnv& env) {
  Ring r = env.ring();
  Scalar b = random_unit(r, env.rng), bi = inv(b);
  Matrix d = diag_orthogonal(one(r), {b, bi}, env.ctx);
  Matrix s = perm_matrix({1, 2, 5, 4, 3}, env.ctx);
  Matrix lhs = diag_orthogonal(one(r), {b * b, one(r)}, env.ctx);
  if (lhs != d * s * d * s.transpose()) return failure("diag(1,b^2,1,b^-2,1) != D s D s^-1", json{{"b", to_json(b)}});
  return std::nullopt;
}

inline std::optional<json> squared_commutators(SampleEnv& env) {
  Ring r = env.ring();
  Scalar h = env.q(1, 2);
  for (int pass = 0; pass < 2; ++pass) {
    Scalar z = pass == 0 ? random_nonzero(r, env.rng) : zero(r);
    Scalar zz = h * z * z;
    Matrix H2 = env.F1(2, z), H3 = env.F1(3, z);
    Matrix H4 = env.F2(1, -h), H5 = env.F2(2, -h), H6 = env.F2(3, -h);
    auto inv_of = [&](const Matrix& m) { return orth_inverse(m, env.ctx); };
    auto sq = [](const Matrix& m) { return m * m; };
    json in{{"z", to_json(z)}};
    if (env.F2(1, z) != sq(env.comm(H3, env.comm(H4, H6)) * inv_of(env.comm(env.F1(3, -zz), H4))))
      return failure("F2_1(z) identity fails", in);
    if (env.F2(2, z) != sq(env.comm(H3, env.comm(H5, H6)) * inv_of(env.comm(env.F1(3, -zz), H5))))
      return failure("F2_2(z) identity fails", in);
    if (env.F2(3, z) != sq(env.comm(env.F1(2, zz), H6) * inv_of(env.comm(H2, env.comm(H5, H6)))))
      return failure("F2_3(z) identity fails", in);
  }
  return std::nullopt;
}

inline std::optional<json> shuffle_identity(SampleEnv& env) {
  Word w = random_eo_word(env.ctx, 8, env.rng);
  Word s = word_shuffle(w);
  if (eval_word(s, env.opt->flip) != eval_word(w, env.opt->flip)) return failure("shuffled word evaluates differently", json{{"word", to_json(w)}});
  return std::nullopt;
}

/// v = α·e_{i+1} (F1) or α·e_{n+i+1} (F2), w = −α·e₁ for a constant orthogonal α.
inline std::optional<json> theta_transvection(SampleEnv& env) {
  Ring pr = env.ring();
  Ring base = pr.base();
  int n = env.n();
  FormContext bctx = build_form(n, base);
  Matrix frame = random_orthogonal(bctx, env.rng, 4);
  Matrix a = embed(frame, pr);
  bool first = env.rng.coin();
  int i = static_cast<int>(env.rng.range(1, n));
  Scalar f = random_scalar(pr, env.rng, 3);
  Vec v = suite_detail::column(a, first ? i + 1 : n + i + 1);
  Vec w = scale(-one(pr), suite_detail::column(a, 1));
  json in{{"alpha", to_json(frame)}, {"family", first ? "F1" : "F2"}, {"i", i}, {"f", to_json(f)}};
  Matrix xf_gen = env.F(first ? Family::F1 : Family::F2, i, 0, variable(pr) * f);
  Matrix beta = a * xf_gen * orth_inverse(a, env.ctx);
  if (beta != transvection(v, w, variable(pr) * f, env.ctx)) return failure("alpha F(Xf) alpha^-1 != E_{v,w}(Xf)", in);
  ThetaTransvectionCheck t = theta_transvection_check(v, w, f, env.ctx);
  if (!t.result.polynomial) return failure("theta-conjugate has negative powers of X", in);
  if (!t.identity_holds) return failure("theta E_{v,w}(Xf) theta^-1 != E_{theta v, theta w}(f): " + t.detail, in);
  return std::nullopt;
}

inline std::optional<json> block_correction(SampleEnv& env) {
  Ring pr = env.ring();
  int n = env.n();
  Matrix g = Matrix::identity(pr, n), gi = Matrix::identity(pr, n);
  for (int k = 0; k < 4; ++k) {
    auto [i, j] = distinct_pair(env);
    Scalar z = random_scalar(pr, env.rng, 3);
    Matrix e = Matrix::identity(pr, n), ei = Matrix::identity(pr, n);
    e(i, j) = z;
    ei(i, j) = -z;
    g = g * e;
    gi = ei * gi;
  }
  Vec d;
  for (int k = 0; k < n; ++k) d.push_back(random_unit(pr, env.rng));
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) {
      g(k, j) = g(k, j) * d[j - 1];
      gi(j, k) = gi(j, k) * inv(d[j - 1]);
    }
  }
  Matrix s = random_alternating(pr, n, env.rng, 3);
  Matrix b0(pr, env.ctx.dim());
  b0(1, 1) = env.rng.coin() ? one(pr) : -one(pr);
  set_block(b0, 2, 2, g);
  set_block(b0, 2, n + 2, g * s);
  set_block(b0, n + 2, n + 2, gi.transpose());
  json in{{"beta0", to_json(b0)}};
  if (!is_orthogonal(b0, env.ctx)) return failure("sampled beta0 is not orthogonal", in);
  BlockCorrection c = block_correction_check(b0, env.ctx);
  if (!c.shape) return failure("beta0 shape rejected", in);
  if (!c.alternating) return failure("a23^T a33 is not alternating", in);
  if (!c.identity) return failure("theta beta0 theta^-1 != beta0 * correction", in);
  if (!theta_conjugate(b0, 1, env.ctx).polynomial) return failure("theta-conjugate of beta0 is not polynomial", in);
  return std::nullopt;
}

inline std::optional<json> diagonal_conjugation(SampleEnv& env) {
  Ring r = env.ring();
  int n = env.n();
  Scalar d0 = env.rng.coin() ? one(r) : -one(r);
  Vec d;
  for (int k = 0; k < n; ++k) d.push_back(random_unit(r, env.rng));
  Matrix dm = diag_orthogonal(d0, d, env.ctx);
  Matrix dinv = orth_inverse(dm, env.ctx);
  int i = static_cast<int>(env.rng.range(1, n));
  Scalar z = random_scalar(r, env.rng), h = env.q(1, 2);
  const Scalar& di = d[i - 1];
  json in{{"d0", to_json(d0)}, {"d", vec_to_json(d)}, {"i", i}, {"z", to_json(z)}};
  if (dm * env.F1(i, z) * dinv != env.F1(i, d0 * di * z)) return failure("D F1_i(z) D^-1 != F1_i(d0 d_i z)", in);
  if (dm * env.F2(i, h) * dinv != env.F2(i, h * d0 * inv(di))) return failure("D F2_i(1/2) D^-1 != F2_i(d0 d_i^-1 / 2)", in);
  if (dm * env.F2(i, z) * dinv != env.F2(i, z * d0 * inv(di))) return failure("D F2_i(z) D^-1 != F2_i(d0 d_i^-1 z)", in);
  return std::nullopt;
}

}  // namespace suite_detail

inline constexpr std::array<std::string_view, 17> kSuiteIds = {
    "C4.13", "D2.7.comm", "L2.3.i", "L2.3.ii", "L2.3.iii", "L2.3.iv", "L2.3.v", "L4.16", "L4.6",
    "L5.1",  "L5.4",      "L5.6",   "R5.2",    "S3.2.embed", "T4.1", "T4.2",   "T4.8"};

inline constexpr std::array<SuiteItem, 17> kSuiteItems = {{
    {"C4.13", "rank-two conjugation diag(1,b^2,1,b^-2,1) = D s D s^-1 with s the (3 5) swap", SampleDomain::RankTwo,
     suite_detail::rank_two_conjugation},
    {"D2.7.comm", "F3, F4, F5 as commutators of F1/F2 letters", SampleDomain::BaseRings, suite_detail::commutator_relations},
    {"L2.3.i", "transvections are orthogonal and E_{u,u} = I", SampleDomain::BaseRings, suite_detail::law_i},
    {"L2.3.ii", "parameter shift E_{u,v}(a) = E_{ua,v}(1) = E_{u,va}(1)", SampleDomain::BaseRings, suite_detail::law_ii},
    {"L2.3.iii", "additivity in the second argument", SampleDomain::BaseRings, suite_detail::law_iii},
    {"L2.3.iv", "alternation and E_{u,w}E_{v,w} = E_{u+v,w}E_{u,v}(-q(w))", SampleDomain::BaseRings, suite_detail::law_iv},
    {"L2.3.v", "similitude conjugation alpha E_{u,v}(b) alpha^-1 = E_{au,av}(b/m)", SampleDomain::BaseRings, suite_detail::law_v},
    {"L4.16", "squared-commutator expressions for F2_1, F2_2, F2_3 (z random and z = 0)", SampleDomain::BaseRings,
     suite_detail::squared_commutators},
    {"L4.6", "three-factor split of E_{v,w}(x) after permutation normalization", SampleDomain::BaseRings,
     suite_detail::three_factor_split},
    {"L5.1", "theta-conjugate of a framed transvection E(Xf) equals E_{theta v, theta w}(f)", SampleDomain::PolyRings,
     suite_detail::theta_transvection},
    {"L5.4", "block correction factor for theta-conjugation and a23^T a33 alternating", SampleDomain::PolyRings,
     suite_detail::block_correction},
    {"L5.6", "diagonal conjugation of F1_i(z) and F2_i(1/2) with the d0 factor", SampleDomain::BaseRings,
     suite_detail::diagonal_conjugation},
    {"R5.2", "word shuffle prod a_i b_i = prod r_i b_i r_i^-1 prod a_i", SampleDomain::BaseRings, suite_detail::shuffle_identity},
    {"S3.2.embed", "1 + oe_{pq}(z) equals the matching F3/F4/F5 letter", SampleDomain::BaseRings, suite_detail::embed_relations},
    {"T4.1", "block(1, g, g^-T) orthogonal, F3 word, congruence, unipotent factorization", SampleDomain::BaseRings,
     suite_detail::block_embedding},
    {"T4.2", "alternating blocks as F4/F5 products", SampleDomain::BaseRings, suite_detail::alternating_product},
    {"T4.8", "pair split E_{v,wy}(x1) = E_{v,w1}(x1) E_{v,w2}(x1)", SampleDomain::BaseRings, suite_detail::pair_split_identity},
}};

namespace suite_detail {
constexpr bool registry_matches() {
  for (std::size_t k = 0; k < kSuiteIds.size(); ++k) {
    if (kSuiteItems[k].id != kSuiteIds[k]) return false;
    for (std::size_t m = k + 1; m < kSuiteIds.size(); ++m)
      if (kSuiteIds[k] == kSuiteIds[m]) return false;
  }
  return true;
}
}  // namespace suite_detail

static_assert(kSuiteIds.size() == kSuiteItems.size(), "suite id list drifted from the registry");
static_assert(suite_detail::registry_matches(), "suite id list drifted from the registry");

inline const SuiteItem& find_item(std::string_view id) {
  for (const auto& it : kSuiteItems)
    if (it.id == id) return it;
  throw Error(ErrorKind::UnknownItem, "unknown suite item '" + std::string(id) + "'");
}

inline std::vector<Ring> sample_rings(SampleDomain d) {
  if (d == SampleDomain::PolyRings) return {Ring::parse("poly:Q"), Ring::parse("poly:Fp:5")};
  return {Ring::rational(), Ring::prime_field(3), Ring::prime_field(5), Ring::prime_field(7), Ring::modular(3, 2),
          Ring::modular(5, 2)};
}

/// Deterministic ring and rank for sample k.
inline SampleEnv make_env(const SuiteItem& item, std::uint64_t seed, std::size_t k, const SuiteOptions& opt) {
  auto rings = sample_rings(item.domain);
  Ring r = rings[k % rings.size()];
  int n = item.domain == SampleDomain::RankTwo ? 2 : 3 + static_cast<int>((k / rings.size()) % 3);
  return SampleEnv{build_form(n, r), Rng(mix_seed(seed, std::string(item.id), k)), &opt, k};
}

/// Runs one sample; the payload re-runs to the same failure.
inline std::optional<json> run_sample(std::string_view id, std::uint64_t seed, std::size_t k,
                                      const SuiteOptions& opt = {}) {
  const SuiteItem& item = find_item(id);
  SampleEnv env = make_env(item, seed, k, opt);
  std::optional<json> res;
  try {
    res = item.check(env);
  } catch (const Error& e) {
    res = suite_detail::failure(std::string("exception: ") + e.what());
  }
  if (res) {
    (*res)["sample"] = k;
    (*res)["ring"] = env.ring().name();
    (*res)["n"] = env.n();
  }
  return res;
}

struct ItemReport {
  std::string id;
  std::size_t samples = 0;
  std::vector<json> failures;
  double elapsed_ms = 0;
};

struct SuiteReport {
  std::vector<ItemReport> items;
  std::uint64_t seed = 0;

  std::size_t failure_count() const {
    std::size_t c = 0;
    for (const auto& it : items) c += it.failures.size();
    return c;
  }
};

inline ItemReport run_item(const SuiteItem& item, std::uint64_t seed, std::size_t samples, const SuiteOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  ItemReport rep{std::string(item.id), samples, {}, 0};
  for (std::size_t k = 0; k < samples; ++k)
    if (auto f = run_sample(item.id, seed, k, opt)) rep.failures.push_back(*f);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// selection: item ids, or {"all"}.
inline SuiteReport run_suite(const std::vector<std::string>& selection, std::uint64_t seed, std::size_t samples,
                             const SuiteOptions& opt = {}) {
  if (selection.empty()) throw Error(ErrorKind::UnknownItem, "empty selection");
  std::vector<const SuiteItem*> chosen;
  if (selection.size() == 1 && selection[0] == "all") {
    for (const auto& it : kSuiteItems) chosen.push_back(&it);
  } else {
    for (const auto& id : selection) chosen.push_back(&find_item(id));
  }
  SuiteReport rep;
  rep.seed = seed;
  if (samples == 0) return rep;
  if (opt.parallel) {
    std::vector<std::future<ItemReport>> jobs;
    for (const auto* it : chosen) jobs.push_back(std::async(std::launch::async, run_item, std::cref(*it), seed, samples, std::cref(opt)));
    for (auto& j : jobs) rep.items.push_back(j.get());
  } else {
    for (const auto* it : chosen) rep.items.push_back(run_item(*it, seed, samples, opt));
  }
  std::sort(rep.items.begin(), rep.items.end(), [](const ItemReport& a, const ItemReport& b) { return a.id < b.id; });
  return rep;
}

inline json to_json(const SuiteReport& rep, bool timing = false) {
  json items = json::array();
  for (const auto& it : rep.items) {
    json j{{"id", it.id}, {"samples", it.samples}, {"failures", it.failures}};
    if (timing) j["elapsed_ms"] = it.elapsed_ms;
    items.push_back(j);
  }
  return json{{"items", items}, {"seed", rep.seed}};
}

struct MutationOutcome {
  SignFlip flip;
  bool detected = false;
};

/// Flips each generator term in turn; every flip must break D2.7.comm or T4.2.
inline std::vector<MutationOutcome> mutation_self_test(std::uint64_t seed, std::size_t samples) {
  std::vector<MutationOutcome> out;
  for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5})
    for (int t = 0; t < term_count(f); ++t) {
      SignFlip flip{f, t};
      SuiteOptions opt;
      opt.flip = &flip;
      opt.parallel = false;
      SuiteReport r = run_suite({"D2.7.comm", "T4.2"}, seed, samples, opt);
      out.push_back({flip, r.failure_count() > 0});
    }
  return out;
}

}  // namespace orthgen
