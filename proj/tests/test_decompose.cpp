#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "orthgen/decompose.hpp"
#include "orthgen/random.hpp"

using namespace orthgen;

namespace {

Ring Q() { return Ring::rational(); }
Scalar lq(std::int64_t a, std::int64_t b = 1) { return Scalar::make_rational(mpq_class(a, b)); }

template <class F>
void expect_error(ErrorKind k, F&& f) {
  try {
    f();
    FAIL() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), k) << e.what();
  }
}

Word embed_word(const Word& w, Ring r) {
  Word out{with_ring(w.ctx, r), {}};
  for (auto g : w.letters) {
    g.z = embed(g.z, r);
    out.letters.push_back(g);
  }
  return out;
}

bool to_letters_only(const Word& w) {
  for (const auto& g : w.letters) {
    if (g.fam == Family::F1) continue;
    if ((g.fam == Family::F3 || g.fam == Family::F4) && g.i < g.j) continue;
    return false;
  }
  return true;
}

void check_tmt(const Matrix& alpha, const FormContext& ctx) {
  TmtDecomposition t = tmt_decompose(alpha, ctx);
  ASSERT_EQ(eval_word(t.tau1) * t.mu * eval_word(t.tau2), alpha);
  ASSERT_TRUE(is_monomial_orthogonal(t.mu, ctx));
  ASSERT_TRUE(to_letters_only(t.tau1));
  ASSERT_TRUE(to_letters_only(t.tau2));
}

}  // namespace

TEST(Decompose, UnipotentIdentityGivesEmptyWord) {
  FormContext c = build_form(3, Q());
  EXPECT_TRUE(factor_unipotent(Matrix::identity(Q(), 3), true, c).letters.empty());
  EXPECT_TRUE(factor_unipotent(Matrix::identity(Q(), 3), false, c).letters.empty());
}

TEST(Decompose, UnipotentLetterOrder) {
  FormContext c = build_form(3, Q());
  Matrix g = fixtures::from_rows(Q(), {{1, 1, 2}, {0, 1, 3}, {0, 0, 1}});
  Word w = factor_unipotent(g, true, c);
  std::vector<GenLabel> want{GenLabel::F(Family::F3, 1, 3, lq(2)), GenLabel::F(Family::F3, 2, 3, lq(3)),
                             GenLabel::F(Family::F3, 1, 2, lq(1))};
  EXPECT_EQ(w.letters, want);
  EXPECT_EQ(eval_word(w), to_block(g, Matrix(Q(), 3), true));
}

TEST(Decompose, UnipotentRandomRoundTrip) {
  Rng g(31);
  Ring f5 = Ring::parse("Fp:5");
  FormContext c = build_form(4, f5);
  for (int k = 0; k < 100; ++k) {
    bool upper = k % 2 == 0;
    Matrix u = random_unipotent(f5, 4, upper, g);
    ASSERT_EQ(eval_word(factor_unipotent(u, upper, c)), to_block(u, Matrix(f5, 4), upper));
  }
  expect_error(ErrorKind::NotUnipotent, [&] { factor_unipotent(fixtures::from_rows(f5, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), true, c); });
  expect_error(ErrorKind::NotUnipotent, [&] { factor_unipotent(Matrix::identity(f5, 3), true, c); });
}

TEST(Decompose, AlternatingExamples) {
  FormContext c = build_form(3, Q());
  EXPECT_TRUE(factor_alt(Matrix(Q(), 3), true, c).letters.empty());
  Matrix a(Q(), 3);
  a(1, 2) = lq(7);
  a(2, 1) = lq(-7);
  Word w = factor_alt(a, true, c);
  ASSERT_EQ(w.letters.size(), 1u);
  EXPECT_EQ(w.letters[0], GenLabel::F(Family::F4, 1, 2, lq(7)));
  EXPECT_EQ(eval_word(w), to_block(Matrix::identity(Q(), 3), a, true));
  Matrix s = a;
  s(2, 1) = lq(7);
  expect_error(ErrorKind::NotAlternating, [&] { factor_alt(s, true, c); });
}

TEST(Decompose, AlternatingRandomRoundTrip) {
  Rng g(37);
  FormContext c = build_form(4, Q());
  for (int k = 0; k < 100; ++k) {
    Matrix a = random_alternating(Q(), 4, g);
    ASSERT_EQ(eval_word(factor_alt(a, true, c)), to_block(Matrix::identity(Q(), 4), a, true));
    ASSERT_EQ(eval_word(factor_alt(a, false, c)), to_block(Matrix::identity(Q(), 4), a, false));
  }
}

TEST(Decompose, BlockOfDimensionSix) {
  FormContext c = build_form(3, Q());
  Matrix a = one_perp(fixtures::to6({}));
  Word w = factor_to(a, c);
  EXPECT_EQ(w.letters.size(), 6u);
  EXPECT_EQ(eval_word(w), a);
  for (const auto& g : w.letters) EXPECT_TRUE(g.fam == Family::F3 || g.fam == Family::F4);
}

TEST(Decompose, LowerBlockOfDimensionSix) {
  FormContext c = build_form(3, Q());
  auto f = fixtures::to6_prime_factors({});
  Matrix a = one_perp(f[0] * f[1]);
  Word w = factor_to(a, c, false);
  EXPECT_EQ(w.letters.size(), 6u);
  EXPECT_EQ(eval_word(w), a);
  for (const auto& g : w.letters) EXPECT_TRUE(g.fam == Family::F3 || g.fam == Family::F5);
}

TEST(Decompose, BlockRandomAndRejects) {
  Rng g(41);
  for (Ring r : {Q(), Ring::parse("Zpk:3:2"), Ring::parse("poly:Fp:5")}) {
    FormContext c = build_form(3, r);
    for (int k = 0; k < 30; ++k) {
      Matrix u = random_unipotent(r, 3, true, g), s = random_alternating(r, 3, g);
      Matrix a = to_block(u, u * s, true);
      ASSERT_TRUE(is_orthogonal(a, c)) << r.name();
      ASSERT_EQ(eval_word(factor_to(a, c)), a) << r.name();
      Matrix l = random_unipotent(r, 3, false, g);
      Matrix b = to_block(l, s * l, false);
      ASSERT_EQ(eval_word(factor_to(b, c, false)), b) << r.name();
    }
  }
  FormContext c = build_form(3, Q());
  Matrix a = one_perp(fixtures::to6({}));
  a(1, 1) = lq(2);
  expect_error(ErrorKind::NotTOShape, [&] { factor_to(a, c); });
  expect_error(ErrorKind::NotTOShape, [&] { factor_to(gen_F(Family::F1, 1, 0, lq(1), c), c); });
  expect_error(ErrorKind::NotTOShape, [&] { factor_to(gen_F(Family::F5, 1, 2, lq(1), c), c); });
  expect_error(ErrorKind::NotTOShape, [&] { factor_to(Matrix::identity(Q(), 5), c); });
}

TEST(Decompose, TmtTrivialInputs) {
  Ring f5 = Ring::parse("Fp:5");
  FormContext c = build_form(3, f5);
  TmtDecomposition t = tmt_decompose(Matrix::identity(f5, 7), c);
  EXPECT_TRUE(t.tau1.letters.empty());
  EXPECT_TRUE(t.tau2.letters.empty());
  EXPECT_EQ(t.mu, Matrix::identity(f5, 7));
  Rng g(3);
  Matrix m = random_monomial(c, g);
  TmtDecomposition s = tmt_decompose(m, c);
  EXPECT_TRUE(s.tau1.letters.empty());
  EXPECT_TRUE(s.tau2.letters.empty());
  EXPECT_EQ(s.mu, m);
}

TEST(Decompose, TmtRandomWords) {
  Rng g(43);
  Ring f5 = Ring::parse("Fp:5");
  FormContext c = build_form(3, f5);
  for (int k = 0; k < 50; ++k) check_tmt(eval_word(random_eo_word(c, 40, g)) * random_monomial(c, g), c);
  Ring f3 = Ring::parse("Fp:3");
  FormContext c9 = build_form(4, f3);
  for (int k = 0; k < 20; ++k) check_tmt(random_orthogonal(c9, g, 30), c9);
}

TEST(Decompose, TmtSmallAndRationalRanks) {
  Rng g(47);
  for (Ring r : {Q(), Ring::parse("Fp:3"), Ring::parse("Fp:7")})
    for (int n : {1, 2, 3, 4}) {
      FormContext c = build_form(n, r);
      for (int k = 0; k < 10; ++k) check_tmt(random_orthogonal(c, g, 12), c);
    }
}

TEST(Decompose, TmtRejects) {
  FormContext z9 = build_form(3, Ring::parse("Zpk:3:2"));
  expect_error(ErrorKind::UnsupportedRing, [&] { tmt_decompose(Matrix::identity(z9.ring, 7), z9); });
  FormContext c = build_form(3, Q());
  expect_error(ErrorKind::NotOrthogonal, [&] { tmt_decompose(elementary(Q(), 7, 1, 2, lq(1)), c); });
}

TEST(Decompose, MonomialSplit) {
  Ring q = Q();
  FormContext c = build_form(2, q);
  Matrix d = diag_orthogonal(lq(-1), {lq(2), lq(3)}, c);
  MonoSplit s = mo_split(d, c);
  EXPECT_EQ(s.perm, identity_perm(5));
  EXPECT_EQ(s.diag, d);
  EXPECT_EQ(s.d0, lq(-1));
  Rng g(53);
  FormContext c3 = build_form(3, q);
  for (int k = 0; k < 20; ++k) {
    std::vector<int> p = random_delta_perm(c3, g);
    MonoSplit t = mo_split(perm_matrix(p, c3), c3);
    ASSERT_EQ(t.perm, p);
    ASSERT_EQ(t.diag, Matrix::identity(q, 7));
    Matrix m = random_monomial(c3, g);
    MonoSplit u = mo_split(m, c3);
    ASSERT_EQ(u.sigma * u.diag, m);
  }
  Matrix cross = perm_matrix({1, 4, 3, 2, 5}, c) * diag_orthogonal(lq(1), {lq(2), lq(1)}, c);
  EXPECT_EQ(cross(4, 2), lq(2));
  EXPECT_EQ(cross(2, 4), lq(1, 2));
  MonoSplit x = mo_split(cross, c);
  EXPECT_EQ(x.perm, (std::vector<int>{1, 4, 3, 2, 5}));
  EXPECT_EQ(x.sigma * x.diag, cross);
  expect_error(ErrorKind::NotMonomial, [&] { mo_split(gen_F(Family::F1, 1, 0, lq(1), c), c); });
}

TEST(Decompose, LiftWordAndDiagonal) {
  Ring f3 = Ring::parse("Fp:3"), z9 = Ring::parse("Zpk:3:2");
  FormContext c3 = build_form(3, f3), c9 = build_form(3, z9);
  Word w{c3, {GenLabel::F1(1, from_int(f3, 2))}};
  Word lw = lift_word(w, z9);
  EXPECT_EQ(eval_word(lw), gen_F(Family::F1, 1, 0, from_int(z9, 2), c9));
  Ring f5 = Ring::parse("Fp:5"), z25 = Ring::parse("Zpk:5:2");
  FormContext c5 = build_form(2, f5), c25 = build_form(2, z25);
  Matrix ld = lift_diag(one(f5), {from_int(f5, 2), from_int(f5, 3)}, c25);
  EXPECT_TRUE(is_orthogonal(ld, c25));
  EXPECT_EQ(map_entries(ld, f5, [](const Scalar& x) { return reduce_mod_max(x); }),
            diag_orthogonal(one(f5), {from_int(f5, 2), from_int(f5, 3)}, c5));
  expect_error(ErrorKind::NotAUnitResidue, [&] { lift_diag(from_int(f5, 2), {one(f5), one(f5)}, c25); });
}

TEST(Decompose, LocalTrivialAndCongruent) {
  Ring z9 = Ring::parse("Zpk:3:2");
  FormContext c = build_form(3, z9);
  LocalDecomposition t = local_decompose(Matrix::identity(z9, 7), c);
  EXPECT_TRUE(t.tau1.letters.empty());
  EXPECT_TRUE(t.tau2.letters.empty());
  EXPECT_EQ(t.mu, Matrix::identity(z9, 7));
  EXPECT_EQ(t.residual, Matrix::identity(z9, 7));
  Matrix a = gen_F(Family::F1, 1, 0, from_int(z9, 3), c) * gen_F(Family::F4, 1, 2, from_int(z9, 6), c);
  LocalDecomposition s = local_decompose(a, c);
  EXPECT_TRUE(s.tau1.letters.empty());
  EXPECT_TRUE(s.tau2.letters.empty());
  EXPECT_EQ(s.mu, Matrix::identity(z9, 7));
  EXPECT_EQ(s.residual, a);
}

TEST(Decompose, LocalRandom) {
  Rng g(59);
  for (Ring r : {Ring::parse("Zpk:5:2"), Ring::parse("Zpk:3:2"), Ring::parse("trunc:F3:3")}) {
    FormContext c = build_form(3, r);
    Ideal m = Ideal::maximal(r);
    for (int k = 0; k < 30; ++k) {
      Matrix a = random_orthogonal(c, g, 20);
      LocalDecomposition t = local_decompose(a, c);
      ASSERT_EQ(eval_word(t.tau1) * t.mu * eval_word(t.tau2) * t.residual, a) << r.name();
      ASSERT_TRUE(is_orthogonal(t.residual, c)) << r.name();
      ASSERT_TRUE(in_congruence(t.residual, m)) << r.name();
      ASSERT_TRUE(is_monomial_orthogonal(t.mu, c)) << r.name();
    }
  }
  FormContext pq = build_form(2, Ring::parse("poly:Q"));
  expect_error(ErrorKind::UnsupportedRing, [&] { local_decompose(Matrix::identity(pq.ring, 5), pq); });
}

TEST(Decompose, ThetaConjugateIdentity) {
  Ring pq = Ring::parse("poly:Q");
  FormContext c = build_form(3, pq);
  ThetaResult t = theta_conjugate(Matrix::identity(pq, 7), 1, c);
  EXPECT_TRUE(t.polynomial);
  EXPECT_EQ(t.conj, Matrix::identity(Ring::laurent(Q()), 7));
  ThetaResult b = theta_conjugate(gen_F(Family::F3, 1, 2, one(pq), c), -1, c);
  EXPECT_TRUE(b.polynomial);
  ThetaResult u = theta_conjugate(gen_F(Family::F4, 1, 2, one(pq), c), -1, c);
  EXPECT_FALSE(u.polynomial);
  expect_error(ErrorKind::UnsupportedRing, [&] { theta_conjugate(Matrix::identity(Q(), 7), 1, build_form(3, Q())); });
  expect_error(ErrorKind::BadIndex, [&] { theta_conjugate(Matrix::identity(pq, 7), 2, c); });
}

TEST(Decompose, ThetaTransvectionWithZeroFirstCoordinates) {
  Ring pq = Ring::parse("poly:Q");
  FormContext c = build_form(3, pq);
  Scalar f = one(pq) + variable(pq);
  ThetaTransvectionCheck t = theta_transvection_check(unit_vec(pq, 7, 2), unit_vec(pq, 7, 3), f, c);
  EXPECT_TRUE(t.result.polynomial);
  EXPECT_TRUE(t.identity_holds) << t.detail;
}

TEST(Decompose, ThetaTransvectionWithFirstCoordinate) {
  // θ multiplies q on e_1 by X² but the hyperbolic pairing by X, so a nonzero first coordinate breaks the identity.
  Ring pq = Ring::parse("poly:Q");
  FormContext c = build_form(3, pq);
  Vec v = unit_vec(pq, 7, 2), w = scale(-one(pq), unit_vec(pq, 7, 1));
  Scalar f = one(pq) + variable(pq);
  ThetaTransvectionCheck t = theta_transvection_check(v, w, f, c);
  EXPECT_TRUE(t.result.polynomial);
  EXPECT_FALSE(t.identity_holds);
  EXPECT_FALSE(t.detail.empty());
  FormContext lc = with_ring(c, Ring::laurent(Q()));
  EXPECT_FALSE(is_orthogonal(t.result.conj, lc));
}

TEST(Decompose, BlockCorrectionInstance) {
  Ring pq = Ring::parse("poly:Q");
  FormContext c = build_form(2, pq);
  Scalar x = variable(pq), u = one(pq);
  Matrix g = Matrix::identity(pq, 2), s(pq, 2);
  g(1, 2) = x;
  s(1, 2) = u + x;
  s(2, 1) = -(u + x);
  Matrix b0(pq, 5);
  b0(1, 1) = -u;
  set_block(b0, 2, 2, g);
  set_block(b0, 2, 4, g * s);
  set_block(b0, 4, 4, unipotent_inverse(g).transpose());
  ASSERT_TRUE(is_orthogonal(b0, c));
  BlockCorrection r = block_correction_check(b0, c);
  EXPECT_TRUE(r.shape);
  EXPECT_TRUE(r.alternating);
  EXPECT_TRUE(r.identity);
  Matrix bad = b0;
  bad(1, 2) = u;
  EXPECT_FALSE(block_correction_check(bad, c).shape);
}

TEST(Decompose, HorrocksAccepts) {
  Ring pq = Ring::parse("poly:Q"), lq_ring = Ring::laurent(Q());
  FormContext pc = build_form(2, pq), lc = build_form(2, lq_ring);
  HorrocksInstance triv{Matrix::identity(pq, 5), Matrix::identity(lq_ring, 5), Word{lc, {}}, std::nullopt};
  EXPECT_TRUE(check_horrocks_instance(triv).accept);
  Rng g(61);
  for (int k = 0; k < 10; ++k) {
    Word w = random_eo_word(pc, 6, g);
    Matrix alpha = eval_word(w);
    HorrocksInstance inst{alpha, Matrix::identity(lq_ring, 5), embed_word(w, lq_ring),
                          HorrocksClaim{Matrix::identity(Q(), 5), w}};
    HorrocksVerdict v = check_horrocks_instance(inst);
    ASSERT_TRUE(v.accept) << v.failed;
    ASSERT_TRUE(v.claim_matches.value_or(false));
    Matrix k0 = random_orthogonal(build_form(2, Q()), g, 4);
    HorrocksInstance conj{alpha * embed(k0, pq), embed(k0, lq_ring), embed_word(w, lq_ring), std::nullopt};
    ASSERT_TRUE(check_horrocks_instance(conj).accept);
  }
}

TEST(Decompose, HorrocksRejects) {
  Ring pq = Ring::parse("poly:Q"), lq_ring = Ring::laurent(Q());
  FormContext pc = build_form(2, pq);
  Rng g(67);
  Word w = random_eo_word(pc, 6, g);
  Matrix alpha = eval_word(w);
  HorrocksInstance inst{alpha, Matrix::identity(lq_ring, 5), embed_word(w, lq_ring), std::nullopt};
  HorrocksInstance bad_witness = inst;
  bad_witness.witness.letters[2].z = bad_witness.witness.letters[2].z + one(lq_ring);
  HorrocksVerdict v = check_horrocks_instance(bad_witness);
  EXPECT_FALSE(v.accept);
  EXPECT_EQ(v.failed, "c");
  HorrocksInstance bad_alpha = inst;
  bad_alpha.alpha(1, 2) = bad_alpha.alpha(1, 2) + one(pq);
  EXPECT_EQ(check_horrocks_instance(bad_alpha).failed, "a");
  HorrocksInstance bad_beta = inst;
  bad_beta.beta = embed(gen_F(Family::F1, 1, 0, variable(pq), pc), lq_ring);
  EXPECT_EQ(check_horrocks_instance(bad_beta).failed, "b");
  HorrocksInstance bad_claim = inst;
  bad_claim.claim = HorrocksClaim{Matrix::identity(Q(), 5), Word{pc, {}}};
  HorrocksVerdict vc = check_horrocks_instance(bad_claim);
  EXPECT_FALSE(vc.accept);
  EXPECT_EQ(vc.failed, "e");
  HorrocksInstance theta_letter = inst;
  theta_letter.witness.letters.push_back(GenLabel::Theta(3));
  expect_error(ErrorKind::NonElementaryLetter, [&] { check_horrocks_instance(theta_letter); });
}
