#pragma once

#include <string>
#include <vector>

#include "decompose.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "matrix.hpp"
#include "quadratic_space.hpp"
#include "transvections.hpp"

namespace orthgen {

using json = nlohmann::json;

namespace detail {
[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}
}  // namespace detail

inline json to_json(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational: return x.rational().get_str();
    case RingKind::PrimeField:
    case RingKind::Modular: return json{{"mod", r.modulus()}, {"val", x.residue()}};
    default: {
      json c = json::array();
      for (const auto& y : x.coeffs()) c.push_back(to_json(y));
      if (r.kind() == RingKind::Laurent) return json{{"offset", x.offset()}, {"coeffs", c}};
      return json{{"coeffs", c}};
    }
  }
}

inline Scalar scalar_from_json(const json& j, Ring r) {
  switch (r.kind()) {
    case RingKind::Rational: {
      if (j.is_number_integer()) return from_int(r, j.get<std::int64_t>());
      if (!j.is_string()) detail::parse_fail("rational must be a string \"a/b\"");
      mpq_class q;
      try {
        q = mpq_class(j.get<std::string>());
      } catch (const std::exception&) {
        detail::parse_fail("bad rational '" + j.get<std::string>() + "'");
      }
      if (q.get_den() == 0) detail::parse_fail("zero denominator");
      return Scalar::make_rational(q);
    }
    case RingKind::PrimeField:
    case RingKind::Modular: {
      std::int64_t m = detail::get_int(detail::field(j, "mod"), "mod");
      std::int64_t v = detail::get_int(detail::field(j, "val"), "val");
      if (m != r.modulus()) detail::parse_fail("modulus " + std::to_string(m) + " does not match " + r.name());
      if (v < 0 || v >= m) detail::parse_fail("residue out of range");
      return Scalar::make_residue(r, v);
    }
    default: {
      const json& c = detail::field(j, "coeffs");
      if (!c.is_array()) detail::parse_fail("coeffs must be an array");
      std::vector<Scalar> cs;
      for (const auto& y : c) cs.push_back(scalar_from_json(y, r.base()));
      std::int64_t off = 0;
      if (r.kind() == RingKind::Laurent) off = detail::get_int(detail::field(j, "offset"), "offset");
      if (r.kind() == RingKind::Truncated && static_cast<int>(cs.size()) != r.length())
        detail::parse_fail("truncated value needs exactly " + std::to_string(r.length()) + " coefficients");
      return Scalar::make_coeffs(r, off, std::move(cs));
    }
  }
}

/// CLI scalar literal: a rational "a/b" mapped into the ring, or a JSON encoding.
inline Scalar parse_scalar_literal(const std::string& s, Ring r) {
  if (!s.empty() && (s[0] == '{' || s[0] == '"' || s[0] == '[')) {
    json j;
    try {
      j = json::parse(s);
    } catch (const std::exception&) {
      detail::parse_fail("bad scalar JSON '" + s + "'");
    }
    return scalar_from_json(j, r);
  }
  mpq_class q;
  try {
    q = mpq_class(s);
  } catch (const std::exception&) {
    detail::parse_fail("bad scalar literal '" + s + "'");
  }
  if (q.get_den() == 0) detail::parse_fail("zero denominator");
  q.canonicalize();
  return from_rational(r, q);
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 1; i <= m.dim(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.dim(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return json{{"ring", m.ring().name()}, {"dim", m.dim()}, {"entries", rows}};
}

inline Ring ring_from_json(const json& j) {
  if (!j.is_string()) detail::parse_fail("ring must be a string");
  return Ring::parse(j.get<std::string>());
}

inline Matrix matrix_from_json(const json& j) {
  Ring r = ring_from_json(detail::field(j, "ring"));
  std::int64_t d = detail::get_int(detail::field(j, "dim"), "dim");
  const json& e = detail::field(j, "entries");
  if (d < 1 || !e.is_array() || static_cast<std::int64_t>(e.size()) != d) detail::parse_fail("entries must have dim rows");
  Matrix m(r, static_cast<int>(d));
  for (int i = 1; i <= d; ++i) {
    const json& row = e[i - 1];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != d) detail::parse_fail("matrix is not square");
    for (int k = 1; k <= d; ++k) m(i, k) = scalar_from_json(row[k - 1], r);
  }
  return m;
}

inline json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Vec vec_from_json(const json& j, Ring r, std::size_t len) {
  if (!j.is_array() || j.size() != len) detail::parse_fail("vector has the wrong length");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x, r));
  return v;
}

inline json to_json(const SplitVector& v) {
  return json{{"n", v.vp.size()}, {"v0", to_json(v.v0)}, {"vp", vec_to_json(v.vp)}, {"vdp", vec_to_json(v.vdp)}};
}

inline SplitVector splitvector_from_json(const json& j, Ring r) {
  std::int64_t n = detail::get_int(detail::field(j, "n"), "n");
  if (n < 1) detail::parse_fail("n must be positive");
  SplitVector s;
  s.v0 = scalar_from_json(detail::field(j, "v0"), r);
  s.vp = vec_from_json(detail::field(j, "vp"), r, static_cast<std::size_t>(n));
  s.vdp = vec_from_json(detail::field(j, "vdp"), r, static_cast<std::size_t>(n));
  return s;
}

inline json to_json(const TransvectionSpec& t) {
  return json{{"ring", t.x.ring().name()}, {"v", to_json(t.v)}, {"w", to_json(t.w)}, {"x", to_json(t.x)}};
}

inline TransvectionSpec transvection_from_json(const json& j) {
  Ring r = ring_from_json(detail::field(j, "ring"));
  TransvectionSpec t{splitvector_from_json(detail::field(j, "v"), r), splitvector_from_json(detail::field(j, "w"), r),
                     scalar_from_json(detail::field(j, "x"), r)};
  if (t.v.vp.size() != t.w.vp.size()) detail::parse_fail("v and w have different n");
  return t;
}

inline json to_json(const GenLabel& g) {
  json l{{"fam", family_name(g.fam)}, {"exp", g.exp}};
  switch (g.fam) {
    case Family::PERM: l["perm"] = g.perm; break;
    case Family::DIAG:
      l["d0"] = to_json(g.d0);
      l["d"] = vec_to_json(g.d);
      break;
    case Family::THETA: l["m"] = g.m; break;
    default:
      l["i"] = g.i;
      if (!is_single_index(g.fam)) l["j"] = g.j;
      l["z"] = to_json(g.z);
  }
  return l;
}

inline json to_json(const Word& w) {
  json letters = json::array();
  for (const auto& g : w.letters) letters.push_back(to_json(g));
  json out{{"n", w.ctx.n}, {"ring", w.ctx.ring.name()}, {"letters", letters}};
  if (!w.ctx.odd) out["form"] = "even";
  return out;
}

inline GenLabel letter_from_json(const json& j, const FormContext& ctx) {
  const json& f = detail::field(j, "fam");
  if (!f.is_string()) detail::parse_fail("fam must be a string");
  GenLabel g;
  g.fam = parse_family(f.get<std::string>());
  g.exp = j.contains("exp") ? static_cast<int>(detail::get_int(j.at("exp"), "exp")) : 1;
  if (g.exp != 1 && g.exp != -1) detail::parse_fail("exp must be 1 or -1");
  Ring r = ctx.ring;
  switch (g.fam) {
    case Family::PERM: {
      const json& p = detail::field(j, "perm");
      if (!p.is_array()) detail::parse_fail("perm must be an array");
      for (const auto& x : p) g.perm.push_back(static_cast<int>(detail::get_int(x, "perm entry")));
      check_permutation(g.perm, ctx);
      break;
    }
    case Family::DIAG:
      g.d0 = ctx.odd ? scalar_from_json(detail::field(j, "d0"), r) : one(r);
      g.d = vec_from_json(detail::field(j, "d"), r, static_cast<std::size_t>(ctx.n));
      break;
    case Family::THETA: g.m = static_cast<int>(detail::get_int(detail::field(j, "m"), "m")); break;
    default:
      g.i = static_cast<int>(detail::get_int(detail::field(j, "i"), "i"));
      if (!is_single_index(g.fam)) g.j = static_cast<int>(detail::get_int(detail::field(j, "j"), "j"));
      g.z = scalar_from_json(detail::field(j, "z"), r);
  }
  return g;
}

inline Word word_from_json(const json& j) {
  std::int64_t n = detail::get_int(detail::field(j, "n"), "n");
  Ring r = ring_from_json(detail::field(j, "ring"));
  bool odd = true;
  if (j.contains("form")) {
    if (j.at("form") == "even")
      odd = false;
    else if (j.at("form") != "odd")
      detail::parse_fail("form must be \"odd\" or \"even\"");
  }
  if (n < 1) detail::parse_fail("n must be positive");
  Word w{build_form(static_cast<int>(n), r, odd), {}};
  const json& ls = detail::field(j, "letters");
  if (!ls.is_array()) detail::parse_fail("letters must be an array");
  for (const auto& l : ls) w.letters.push_back(letter_from_json(l, w.ctx));
  return w;
}

inline json to_json(const TmtDecomposition& t) {
  return json{{"tau1", to_json(t.tau1)}, {"mu", to_json(t.mu)}, {"tau2", to_json(t.tau2)}};
}

inline json to_json(const LocalDecomposition& t) {
  return json{{"tau1", to_json(t.tau1)}, {"mu", to_json(t.mu)}, {"tau2", to_json(t.tau2)}, {"residual", to_json(t.residual)}};
}

inline TmtDecomposition tmt_from_json(const json& j) {
  return TmtDecomposition{word_from_json(detail::field(j, "tau1")), matrix_from_json(detail::field(j, "mu")),
                          word_from_json(detail::field(j, "tau2"))};
}

inline LocalDecomposition local_from_json(const json& j) {
  return LocalDecomposition{word_from_json(detail::field(j, "tau1")), matrix_from_json(detail::field(j, "mu")),
                            word_from_json(detail::field(j, "tau2")), matrix_from_json(detail::field(j, "residual"))};
}

inline json to_json(const HorrocksInstance& h) {
  json out{{"alpha", to_json(h.alpha)}, {"beta", to_json(h.beta)}, {"witness", to_json(h.witness)}, {"claim", nullptr}};
  if (h.claim) out["claim"] = json{{"alpha0", to_json(h.claim->alpha0)}, {"word", to_json(h.claim->word)}};
  return out;
}

inline HorrocksInstance horrocks_from_json(const json& j) {
  HorrocksInstance h{matrix_from_json(detail::field(j, "alpha")), matrix_from_json(detail::field(j, "beta")),
                     word_from_json(detail::field(j, "witness")), std::nullopt};
  if (j.contains("claim") && !j.at("claim").is_null()) {
    const json& c = j.at("claim");
    h.claim = HorrocksClaim{matrix_from_json(detail::field(c, "alpha0")), word_from_json(detail::field(c, "word"))};
  }
  return h;
}

inline json to_json(const HorrocksVerdict& v) {
  json checks{{"alpha_orthogonal", v.alpha_orthogonal},
              {"beta_orthogonal", v.beta_orthogonal},
              {"witness_matches", v.witness_matches}};
  if (v.alpha0_constant_orthogonal) checks["alpha0_constant_orthogonal"] = *v.alpha0_constant_orthogonal;
  if (v.claim_matches) checks["claim_matches"] = *v.claim_matches;
  json out{{"accept", v.accept}, {"checks", checks}};
  if (!v.failed.empty()) out["failed"] = v.failed;
  return out;
}

/// Parses text, mapping library errors to ParseError.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace orthgen
