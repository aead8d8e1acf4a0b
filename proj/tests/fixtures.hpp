#pragma once

#include <array>

#include "orthgen/orthgen.hpp"

namespace fixtures {

using namespace orthgen;

inline Matrix from_rows(Ring r, const std::vector<std::vector<std::int64_t>>& rows) {
  Matrix m(r, static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j)
      m(static_cast<int>(i) + 1, static_cast<int>(j) + 1) = from_int(r, rows[i][j]);
  return m;
}

struct Params {
  std::int64_t a = 1, b = 2, c = 3, p = 5, q = 7, r = 11;
};

/// Upper block matrix A in dimension 6 with γ = [[1,a,b],[0,1,c],[0,0,1]].
inline Matrix to6(const Params& s, Ring ring = Ring::rational()) {
  auto [a, b, c, p, q, r] = s;
  return from_rows(ring, {{1, a, b, b * q + a * p - a * c * q, b * r + c * q - p, -a * r - q},
                          {0, 1, c, p, c * r, -r},
                          {0, 0, 1, q, r, 0},
                          {0, 0, 0, 1, 0, 0},
                          {0, 0, 0, -a, 1, 0},
                          {0, 0, 0, a * c - b, -c, 1}});
}

/// The two displayed factors of A: block(γ, γ^-T) and [[I, γ⁻¹δ],[0, I]].
inline std::array<Matrix, 2> to6_factors(const Params& s, Ring ring = Ring::rational()) {
  auto [a, b, c, p, q, r] = s;
  return {from_rows(ring, {{1, a, b, 0, 0, 0},
                           {0, 1, c, 0, 0, 0},
                           {0, 0, 1, 0, 0, 0},
                           {0, 0, 0, 1, 0, 0},
                           {0, 0, 0, -a, 1, 0},
                           {0, 0, 0, a * c - b, -c, 1}}),
          from_rows(ring, {{1, 0, 0, 0, c * q - p, -q},
                           {0, 1, 0, -c * q + p, 0, -r},
                           {0, 0, 1, q, r, 0},
                           {0, 0, 0, 1, 0, 0},
                           {0, 0, 0, 0, 1, 0},
                           {0, 0, 0, 0, 0, 1}})};
}

/// The two displayed factors of the lower variant: [[I,0],[δγ⁻¹, I]] and block(γ, γ^-T), γ lower.
inline std::array<Matrix, 2> to6_prime_factors(const Params& s, Ring ring = Ring::rational()) {
  auto [a, b, c, p, q, r] = s;
  return {from_rows(ring, {{1, 0, 0, 0, 0, 0},
                           {0, 1, 0, 0, 0, 0},
                           {0, 0, 1, 0, 0, 0},
                           {0, -c * q + p, q, 1, 0, 0},
                           {c * q - p, 0, r, 0, 1, 0},
                           {-q, -r, 0, 0, 0, 1}}),
          from_rows(ring, {{1, 0, 0, 0, 0, 0},
                           {a, 1, 0, 0, 0, 0},
                           {b, c, 1, 0, 0, 0},
                           {0, 0, 0, 1, -a, a * c - b},
                           {0, 0, 0, 0, 1, -c},
                           {0, 0, 0, 0, 0, 1}})};
}

inline Word oe_word(const FormContext& even, const std::vector<std::tuple<int, int, std::int64_t>>& letters) {
  Word w{even, {}};
  for (auto [i, j, z] : letters) w.letters.push_back(GenLabel::OE(i, j, from_int(even.ring, z)));
  return w;
}

/// oe_{13}(b) oe_{23}(c) oe_{12}(a) oe_{15}(cq-p) oe_{16}(-q) oe_{26}(-r).
inline Word to6_word(const FormContext& even, const Params& s) {
  auto [a, b, c, p, q, r] = s;
  return oe_word(even, {{1, 3, b}, {2, 3, c}, {1, 2, a}, {1, 5, c * q - p}, {1, 6, -q}, {2, 6, -r}});
}

/// The printed lower word oe_{51}(cq-p) oe_{61}(-q) oe_{62}(-r) oe_{31}(b) oe_{32}(c) oe_{21}(a).
inline Word to6_prime_printed_word(const FormContext& even, const Params& s) {
  auto [a, b, c, p, q, r] = s;
  return oe_word(even, {{5, 1, c * q - p}, {6, 1, -q}, {6, 2, -r}, {3, 1, b}, {3, 2, c}, {2, 1, a}});
}

/// Same letters with the last three reversed, which reproduces the displayed product.
inline Word to6_prime_word(const FormContext& even, const Params& s) {
  auto [a, b, c, p, q, r] = s;
  return oe_word(even, {{5, 1, c * q - p}, {6, 1, -q}, {6, 2, -r}, {2, 1, a}, {3, 1, b}, {3, 2, c}});
}

}  // namespace fixtures
