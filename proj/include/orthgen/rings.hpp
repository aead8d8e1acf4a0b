#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orthgen {

enum class ErrorKind {
  NotAUnit,
  RingMismatch,
  UnsupportedRing,
  IndexOutOfRange,
  BadIndex,
  NotDeltaCommuting,
  BadSign,
  NotOrthogonal,
  OddLength,
  HypothesisViolated,
  NotOrthogonalPair,
  BadWitness,
  NotUnipotent,
  NotAlternating,
  NotTOShape,
  NotMonomial,
  NotAUnitResidue,
  NonElementaryLetter,
  UnknownItem,
  ParseError,
  EliminationStalled,
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotDeltaCommuting: return "NotDeltaCommuting";
    case ErrorKind::BadSign: return "BadSign";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::OddLength: return "OddLength";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotOrthogonalPair: return "NotOrthogonalPair";
    case ErrorKind::BadWitness: return "BadWitness";
    case ErrorKind::NotUnipotent: return "NotUnipotent";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::NotTOShape: return "NotTOShape";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::NotAUnitResidue: return "NotAUnitResidue";
    case ErrorKind::NonElementaryLetter: return "NonElementaryLetter";
    case ErrorKind::UnknownItem: return "UnknownItem";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EliminationStalled: return "EliminationStalled";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class RingKind { Rational, PrimeField, Modular, Truncated, Polynomial, Laurent };

namespace detail {

struct RingData {
  RingKind kind = RingKind::Rational;
  std::int64_t p = 0;
  int k = 1;
  std::int64_t modulus = 0;
  int e = 0;
  const RingData* base = nullptr;
  std::string name;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline const RingData* intern(RingData d) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<RingData>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(d.name);
  if (it != table.end()) return it->second.get();
  auto owned = std::make_unique<RingData>(std::move(d));
  const RingData* out = owned.get();
  table.emplace(out->name, std::move(owned));
  return out;
}

inline int depth(const RingData* d) { return d->base ? 1 + depth(d->base) : 1; }

}  // namespace detail

/// Handle to an interned ring descriptor. Equal rings share one descriptor.
class Ring {
 public:
  Ring() : d_(rational().d_) {}

  static Ring rational() {
    static const detail::RingData* q = [] {
      detail::RingData d;
      d.kind = RingKind::Rational;
      d.name = "Q";
      return detail::intern(d);
    }();
    return Ring(q);
  }

  static Ring prime_field(std::int64_t p) {
    if (!detail::is_prime(p) || p == 2)
      throw Error(ErrorKind::UnsupportedRing, "F_p needs an odd prime, got " + std::to_string(p));
    detail::RingData d;
    d.kind = RingKind::PrimeField;
    d.p = p;
    d.modulus = p;
    d.name = "Fp:" + std::to_string(p);
    return Ring(detail::intern(d));
  }

  static Ring modular(std::int64_t p, int k) {
    if (!detail::is_prime(p) || p == 2)
      throw Error(ErrorKind::UnsupportedRing, "Z/p^k needs an odd prime, got " + std::to_string(p));
    if (k < 1) throw Error(ErrorKind::UnsupportedRing, "Z/p^k needs k >= 1");
    if (k == 1) return prime_field(p);
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i) {
      if (m > (std::int64_t(1) << 62) / p)
        throw Error(ErrorKind::UnsupportedRing, "modulus too large");
      m *= p;
    }
    detail::RingData d;
    d.kind = RingKind::Modular;
    d.p = p;
    d.k = k;
    d.modulus = m;
    d.name = "Zpk:" + std::to_string(p) + ":" + std::to_string(k);
    return Ring(detail::intern(d));
  }

  static Ring truncated(Ring base, int e) {
    if (!base.is_field())
      throw Error(ErrorKind::UnsupportedRing, "truncated ring needs a field base");
    if (e < 1) throw Error(ErrorKind::UnsupportedRing, "truncation length must be >= 1");
    detail::RingData d;
    d.kind = RingKind::Truncated;
    d.p = base.d_->p;
    d.e = e;
    d.base = base.d_;
    d.name = "trunc:" + base.name() + ":" + std::to_string(e);
    return Ring(detail::intern(d));
  }

  static Ring polynomial(Ring base) { return structural(RingKind::Polynomial, "poly:", base); }
  static Ring laurent(Ring base) { return structural(RingKind::Laurent, "laurent:", base); }

  /// Grammar: Q | Fp:p | F<p> | Zpk:p:k | trunc:<base>:e | poly:<base> | laurent:<base>.
  static Ring parse(const std::string& s) {
    auto to_int = [&](const std::string& t) -> std::int64_t {
      if (t.empty()) throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
      std::size_t pos = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(t, &pos);
      } catch (...) {
        throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
      }
      if (pos != t.size()) throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
      return v;
    };
    auto starts = [&](const char* pre) { return s.rfind(pre, 0) == 0; };
    if (s == "Q") return rational();
    if (starts("Fp:")) return prime_field(to_int(s.substr(3)));
    if (starts("Zpk:")) {
      auto rest = s.substr(4);
      auto c = rest.find(':');
      if (c == std::string::npos) throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
      return modular(to_int(rest.substr(0, c)), static_cast<int>(to_int(rest.substr(c + 1))));
    }
    if (starts("trunc:")) {
      auto rest = s.substr(6);
      auto c = rest.rfind(':');
      if (c == std::string::npos) throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
      return truncated(parse(rest.substr(0, c)), static_cast<int>(to_int(rest.substr(c + 1))));
    }
    if (starts("poly:")) return polynomial(parse(s.substr(5)));
    if (starts("laurent:")) return laurent(parse(s.substr(8)));
    if (s.size() > 1 && s[0] == 'F' && s[1] >= '0' && s[1] <= '9') return prime_field(to_int(s.substr(1)));
    throw Error(ErrorKind::ParseError, "bad ring string '" + s + "'");
  }

  RingKind kind() const { return d_->kind; }
  const std::string& name() const { return d_->name; }
  std::int64_t modulus() const { return d_->modulus; }
  std::int64_t prime() const { return d_->p; }
  int exponent() const { return d_->k; }
  int length() const { return d_->e; }
  bool has_base() const { return d_->base != nullptr; }
  Ring base() const {
    if (!d_->base) throw Error(ErrorKind::UnsupportedRing, name() + " has no coefficient ring");
    return Ring(d_->base);
  }
  bool is_field() const { return kind() == RingKind::Rational || kind() == RingKind::PrimeField; }
  bool is_residue_kind() const { return kind() == RingKind::PrimeField || kind() == RingKind::Modular; }
  /// Local rings with a principal maximal ideal: fields, Z/p^k, k[t]/(t^e).
  bool is_local() const {
    return is_field() || kind() == RingKind::Modular || kind() == RingKind::Truncated;
  }
  bool has_variable() const {
    return kind() == RingKind::Truncated || kind() == RingKind::Polynomial || kind() == RingKind::Laurent;
  }

  bool operator==(const Ring& o) const { return d_ == o.d_; }
  bool operator!=(const Ring& o) const { return d_ != o.d_; }

 private:
  explicit Ring(const detail::RingData* d) : d_(d) {}

  static Ring structural(RingKind kind, const char* prefix, Ring base) {
    if (base.has_base())
      throw Error(ErrorKind::UnsupportedRing, "nesting depth is limited to 2");
    detail::RingData d;
    d.kind = kind;
    d.p = base.d_->p;
    d.base = base.d_;
    d.name = std::string(prefix) + base.name();
    return Ring(detail::intern(d));
  }

  const detail::RingData* d_;
};

class Scalar;

namespace detail {
struct Coeffs {
  std::int64_t offset = 0;
  std::vector<Scalar> c;
};
}  // namespace detail

/// Exact ring element in canonical form.
class Scalar {
 public:
  Scalar() : ring_(Ring::rational()), v_(mpq_class(0)) {}

  static Scalar make_rational(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.v_ = std::move(q);
    return s;
  }

  static Scalar make_residue(Ring r, std::int64_t v) {
    if (!r.is_residue_kind()) throw Error(ErrorKind::RingMismatch, r.name() + " has no residues");
    Scalar s;
    s.ring_ = r;
    std::int64_t m = r.modulus();
    v %= m;
    if (v < 0) v += m;
    s.v_ = v;
    return s;
  }

  /// Canonicalizes: polynomial trims the top, truncated pads to e, Laurent trims both ends.
  static Scalar make_coeffs(Ring r, std::int64_t offset, std::vector<Scalar> c);

  Ring ring() const { return ring_; }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  std::int64_t residue() const { return std::get<std::int64_t>(v_); }
  const std::vector<Scalar>& coeffs() const { return std::get<detail::Coeffs>(v_).c; }
  std::int64_t offset() const { return std::get<detail::Coeffs>(v_).offset; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  Ring ring_;
  std::variant<std::int64_t, mpq_class, detail::Coeffs> v_;
};

inline Scalar zero(Ring r);
inline Scalar one(Ring r);
inline bool is_zero(const Scalar& x);
inline Scalar operator+(const Scalar& a, const Scalar& b);
inline Scalar operator-(const Scalar& a, const Scalar& b);
inline Scalar operator-(const Scalar& a);
inline Scalar operator*(const Scalar& a, const Scalar& b);

inline Scalar Scalar::make_coeffs(Ring r, std::int64_t offset, std::vector<Scalar> c) {
  if (!r.has_variable()) throw Error(ErrorKind::RingMismatch, r.name() + " has no coefficient vector");
  Ring b = r.base();
  for (const auto& x : c)
    if (x.ring() != b) throw Error(ErrorKind::RingMismatch, "coefficient ring differs from " + b.name());
  Scalar s;
  s.ring_ = r;
  switch (r.kind()) {
    case RingKind::Truncated:
      if (offset != 0) throw Error(ErrorKind::RingMismatch, "truncated values have no offset");
      if (static_cast<int>(c.size()) > r.length()) c.resize(r.length());
      while (static_cast<int>(c.size()) < r.length()) c.push_back(zero(b));
      break;
    case RingKind::Polynomial:
      if (offset != 0) throw Error(ErrorKind::RingMismatch, "polynomials have no offset");
      while (!c.empty() && is_zero(c.back())) c.pop_back();
      break;
    default: {
      while (!c.empty() && is_zero(c.back())) c.pop_back();
      std::size_t lead = 0;
      while (lead < c.size() && is_zero(c[lead])) ++lead;
      c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
      offset += static_cast<std::int64_t>(lead);
      if (c.empty()) offset = 0;
    }
  }
  s.v_ = detail::Coeffs{offset, std::move(c)};
  return s;
}

inline bool Scalar::operator==(const Scalar& o) const {
  if (ring_ != o.ring_) return false;
  if (v_.index() != o.v_.index()) return false;
  if (auto p = std::get_if<std::int64_t>(&v_)) return *p == std::get<std::int64_t>(o.v_);
  if (auto q = std::get_if<mpq_class>(&v_)) return *q == std::get<mpq_class>(o.v_);
  const auto& a = std::get<detail::Coeffs>(v_);
  const auto& b = std::get<detail::Coeffs>(o.v_);
  return a.offset == b.offset && a.c == b.c;
}

namespace detail {

inline void same_ring(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring())
    throw Error(ErrorKind::RingMismatch, a.ring().name() + " vs " + b.ring().name());
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

}  // namespace detail

inline Scalar zero(Ring r) {
  switch (r.kind()) {
    case RingKind::Rational: return Scalar::make_rational(0);
    case RingKind::PrimeField:
    case RingKind::Modular: return Scalar::make_residue(r, 0);
    default: return Scalar::make_coeffs(r, 0, {});
  }
}

inline Scalar from_int(Ring r, std::int64_t v) {
  switch (r.kind()) {
    case RingKind::Rational: return Scalar::make_rational(mpq_class(static_cast<long>(v)));
    case RingKind::PrimeField:
    case RingKind::Modular: return Scalar::make_residue(r, v);
    default: return Scalar::make_coeffs(r, 0, {from_int(r.base(), v)});
  }
}

inline Scalar one(Ring r) { return from_int(r, 1); }

inline bool is_zero(const Scalar& x) {
  switch (x.ring().kind()) {
    case RingKind::Rational: return x.rational() == 0;
    case RingKind::PrimeField:
    case RingKind::Modular: return x.residue() == 0;
    case RingKind::Truncated:
      for (const auto& c : x.coeffs())
        if (!is_zero(c)) return false;
      return true;
    default: return x.coeffs().empty();
  }
}

/// Value c·X^k (or c·t^k in a truncated ring) for a coefficient-ring scalar c.
inline Scalar monomial(Ring r, const Scalar& c, std::int64_t k) {
  if (!r.has_variable()) throw Error(ErrorKind::UnsupportedRing, r.name() + " has no variable");
  if (k < 0 && r.kind() != RingKind::Laurent)
    throw Error(ErrorKind::NotAUnit, "negative power of the variable in " + r.name());
  if (r.kind() == RingKind::Laurent) return Scalar::make_coeffs(r, k, {c});
  std::vector<Scalar> v(static_cast<std::size_t>(k), zero(r.base()));
  v.push_back(c);
  return Scalar::make_coeffs(r, 0, std::move(v));
}

inline Scalar variable(Ring r) { return monomial(r, one(r.base()), 1); }

/// Coefficient of X^k (0 outside the support).
inline Scalar coeff(const Scalar& x, std::int64_t k) {
  Ring b = x.ring().base();
  std::int64_t idx = k - x.offset();
  if (idx < 0 || idx >= static_cast<std::int64_t>(x.coeffs().size())) return zero(b);
  return x.coeffs()[static_cast<std::size_t>(idx)];
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
  detail::same_ring(a, b);
  Ring r = a.ring();
  switch (r.kind()) {
    case RingKind::Rational: return Scalar::make_rational(a.rational() + b.rational());
    case RingKind::PrimeField:
    case RingKind::Modular: {
      std::int64_t m = r.modulus();
      std::int64_t s = a.residue() + b.residue();
      if (s >= m) s -= m;
      return Scalar::make_residue(r, s);
    }
    default: {
      if (a.coeffs().empty()) return b;
      if (b.coeffs().empty()) return a;
      std::int64_t lo = std::min(a.offset(), b.offset());
      std::int64_t hi = std::max(a.offset() + static_cast<std::int64_t>(a.coeffs().size()),
                                 b.offset() + static_cast<std::int64_t>(b.coeffs().size()));
      std::vector<Scalar> c;
      c.reserve(static_cast<std::size_t>(hi - lo));
      for (std::int64_t k = lo; k < hi; ++k) c.push_back(coeff(a, k) + coeff(b, k));
      return Scalar::make_coeffs(r, lo, std::move(c));
    }
  }
}

inline Scalar operator-(const Scalar& a) {
  Ring r = a.ring();
  switch (r.kind()) {
    case RingKind::Rational: return Scalar::make_rational(-a.rational());
    case RingKind::PrimeField:
    case RingKind::Modular: return Scalar::make_residue(r, a.residue() == 0 ? 0 : r.modulus() - a.residue());
    default: {
      std::vector<Scalar> c;
      c.reserve(a.coeffs().size());
      for (const auto& x : a.coeffs()) c.push_back(-x);
      return Scalar::make_coeffs(r, a.offset(), std::move(c));
    }
  }
}

inline Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

inline Scalar operator*(const Scalar& a, const Scalar& b) {
  detail::same_ring(a, b);
  Ring r = a.ring();
  switch (r.kind()) {
    case RingKind::Rational: return Scalar::make_rational(a.rational() * b.rational());
    case RingKind::PrimeField:
    case RingKind::Modular:
      return Scalar::make_residue(r, detail::mulmod(a.residue(), b.residue(), r.modulus()));
    default: {
      const auto& x = a.coeffs();
      const auto& y = b.coeffs();
      Ring base = r.base();
      if (x.empty() || y.empty()) return zero(r);
      std::size_t len = x.size() + y.size() - 1;
      if (r.kind() == RingKind::Truncated) len = std::min<std::size_t>(len, static_cast<std::size_t>(r.length()));
      std::vector<Scalar> c(len, zero(base));
      for (std::size_t i = 0; i < x.size() && i < len; ++i) {
        if (is_zero(x[i])) continue;
        for (std::size_t j = 0; j < y.size() && i + j < len; ++j) c[i + j] = c[i + j] + x[i] * y[j];
      }
      return Scalar::make_coeffs(r, a.offset() + b.offset(), std::move(c));
    }
  }
}

inline Scalar& operator+=(Scalar& a, const Scalar& b) { return a = a + b; }
inline Scalar& operator-=(Scalar& a, const Scalar& b) { return a = a - b; }
inline Scalar& operator*=(Scalar& a, const Scalar& b) { return a = a * b; }

namespace detail {

inline std::optional<std::int64_t> inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, b = a;
  while (b != 0) {
    std::int64_t q = g / b;
    std::int64_t t = g - q * b;
    g = b;
    b = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) return std::nullopt;
  x %= m;
  if (x < 0) x += m;
  return x;
}

inline bool nilpotent(const Scalar& x);

}  // namespace detail

inline bool is_unit(const Scalar& x);

/// Inverse of a unit. Throws NotAUnit otherwise.
inline Scalar inv(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational:
      if (x.rational() == 0) throw Error(ErrorKind::NotAUnit, "0 in Q");
      return Scalar::make_rational(1 / x.rational());
    case RingKind::PrimeField:
    case RingKind::Modular: {
      auto v = detail::inv_mod(x.residue(), r.modulus());
      if (!v) throw Error(ErrorKind::NotAUnit, std::to_string(x.residue()) + " in " + r.name());
      return Scalar::make_residue(r, *v);
    }
    case RingKind::Truncated: {
      const auto& c = x.coeffs();
      if (is_zero(c[0])) throw Error(ErrorKind::NotAUnit, "constant term vanishes in " + r.name());
      Ring b = r.base();
      std::vector<Scalar> out(c.size(), zero(b));
      Scalar b0 = inv(c[0]);
      out[0] = b0;
      for (std::size_t k = 1; k < c.size(); ++k) {
        Scalar s = zero(b);
        for (std::size_t j = 1; j <= k; ++j) s += c[j] * out[k - j];
        out[k] = -(b0 * s);
      }
      return Scalar::make_coeffs(r, 0, std::move(out));
    }
    default: {
      // a·X^m + N with a a unit and N nilpotent: invert by a finite geometric series.
      const auto& c = x.coeffs();
      std::optional<std::size_t> unit_at;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (detail::nilpotent(c[i])) continue;
        if (unit_at || !is_unit(c[i])) throw Error(ErrorKind::NotAUnit, "not a unit in " + r.name());
        unit_at = i;
      }
      if (!unit_at) throw Error(ErrorKind::NotAUnit, "not a unit in " + r.name());
      std::int64_t m = x.offset() + static_cast<std::int64_t>(*unit_at);
      if (r.kind() == RingKind::Polynomial && m != 0) throw Error(ErrorKind::NotAUnit, "not a unit in " + r.name());
      Scalar s = monomial(r, inv(c[*unit_at]), -m);
      Scalar t = s * x - one(r);  // nilpotent
      Scalar term = one(r), sum = zero(r);
      for (int guard = 0; !is_zero(term); ++guard) {
        if (guard > 4096) throw Error(ErrorKind::NotAUnit, "series did not terminate in " + r.name());
        sum += term;
        term = -(term * t);
      }
      return sum * s;
    }
  }
}

inline bool is_unit(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational: return x.rational() != 0;
    case RingKind::PrimeField:
    case RingKind::Modular: return detail::inv_mod(x.residue(), r.modulus()).has_value();
    case RingKind::Truncated: return !is_zero(x.coeffs()[0]);
    default:
      try {
        (void)inv(x);
        return true;
      } catch (const Error&) {
        return false;
      }
  }
}

inline bool detail::nilpotent(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational:
    case RingKind::PrimeField: return is_zero(x);
    case RingKind::Modular: return x.residue() % r.prime() == 0;
    case RingKind::Truncated: return is_zero(x.coeffs()[0]);
    default:
      for (const auto& c : x.coeffs())
        if (!nilpotent(c)) return false;
      return true;
  }
}

inline Scalar scalar_inv(const Scalar& x) { return inv(x); }

inline Scalar pow(const Scalar& x, std::int64_t e) {
  if (e < 0) return pow(inv(x), -e);
  Scalar result = one(x.ring()), b = x;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

/// Image of q = a/b under Z -> R; b must map to a unit.
inline Scalar from_rational(Ring r, const mpq_class& q) {
  if (r.kind() == RingKind::Rational) return Scalar::make_rational(q);
  auto reduce = [&](const mpz_class& z) -> Scalar {
    if (r.is_residue_kind()) {
      mpz_class m(static_cast<long>(r.modulus()));
      mpz_class v = z % m;
      if (v < 0) v += m;
      return Scalar::make_residue(r, v.get_si());
    }
    Ring b = r.base();
    if (b.kind() == RingKind::Rational) return Scalar::make_coeffs(r, 0, {Scalar::make_rational(mpq_class(z))});
    mpz_class m(static_cast<long>(b.modulus()));
    mpz_class v = z % m;
    if (v < 0) v += m;
    return Scalar::make_coeffs(r, 0, {Scalar::make_residue(b, v.get_si())});
  };
  Scalar den = reduce(q.get_den());
  if (!is_unit(den)) throw Error(ErrorKind::NotAUnit, "denominator of " + q.get_str() + " in " + r.name());
  return reduce(q.get_num()) * inv(den);
}

inline Scalar half(Ring r) { return inv(from_int(r, 2)); }

/// Constant embedding of a coefficient-ring scalar, or polynomial -> Laurent.
inline Scalar embed(const Scalar& x, Ring target) {
  if (x.ring() == target) return x;
  if (target.has_variable() && target.base() == x.ring()) return Scalar::make_coeffs(target, 0, {x});
  if (target.kind() == RingKind::Laurent && x.ring().kind() == RingKind::Polynomial &&
      x.ring().base() == target.base())
    return Scalar::make_coeffs(target, 0, x.coeffs());
  throw Error(ErrorKind::RingMismatch, "cannot embed " + x.ring().name() + " into " + target.name());
}

/// Laurent value -> polynomial when no negative exponents occur.
inline std::optional<Scalar> to_polynomial(const Scalar& x) {
  if (x.ring().kind() != RingKind::Laurent) throw Error(ErrorKind::RingMismatch, "expected a Laurent value");
  Ring p = Ring::polynomial(x.ring().base());
  if (x.coeffs().empty()) return zero(p);
  if (x.offset() < 0) return std::nullopt;
  std::vector<Scalar> c(static_cast<std::size_t>(x.offset()), zero(p.base()));
  c.insert(c.end(), x.coeffs().begin(), x.coeffs().end());
  return Scalar::make_coeffs(p, 0, std::move(c));
}

/// Lowest and highest exponent present (0,0 for zero).
inline std::pair<std::int64_t, std::int64_t> exponent_range(const Scalar& x) {
  if (x.coeffs().empty()) return {0, 0};
  std::size_t first = 0;
  while (is_zero(x.coeffs()[first])) ++first;
  return {x.offset() + static_cast<std::int64_t>(first),
          x.offset() + static_cast<std::int64_t>(x.coeffs().size()) - 1};
}

/// x = nonneg + neg with nonneg in R[X] and neg supported on negative exponents.
inline std::pair<Scalar, Scalar> laurent_parts(const Scalar& x) {
  Ring l = x.ring();
  if (l.kind() != RingKind::Laurent) throw Error(ErrorKind::RingMismatch, "laurent_parts needs a Laurent value");
  Ring p = Ring::polynomial(l.base());
  std::vector<Scalar> pos, neg;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    std::int64_t k = x.offset() + static_cast<std::int64_t>(i);
    if (k >= 0) {
      while (static_cast<std::int64_t>(pos.size()) < k) pos.push_back(zero(l.base()));
      pos.push_back(x.coeffs()[i]);
    } else {
      neg.push_back(x.coeffs()[i]);
    }
  }
  return {Scalar::make_coeffs(p, 0, std::move(pos)), Scalar::make_coeffs(l, x.offset(), std::move(neg))};
}

enum class IdealKind { Zero, Maximal, XMultiples, ExtendedMaximal };

struct Ideal {
  IdealKind kind = IdealKind::Zero;
  Ring ring;

  static Ideal zero_ideal(Ring r) { return {IdealKind::Zero, r}; }
  static Ideal maximal(Ring r) {
    if (!r.is_local()) throw Error(ErrorKind::UnsupportedRing, r.name() + " is not a supported local ring");
    return {IdealKind::Maximal, r};
  }
  static Ideal x_multiples(Ring r) {
    if (r.kind() != RingKind::Polynomial) throw Error(ErrorKind::UnsupportedRing, "X-multiples live in R[X]");
    return {IdealKind::XMultiples, r};
  }
  static Ideal extended_maximal(Ring r) {
    if ((r.kind() != RingKind::Polynomial && r.kind() != RingKind::Laurent) || !r.base().is_local())
      throw Error(ErrorKind::UnsupportedRing, "extended maximal ideal needs R[X] or R[X,X^-1] over a local ring");
    return {IdealKind::ExtendedMaximal, r};
  }
};

inline bool in_maximal(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational:
    case RingKind::PrimeField: return is_zero(x);
    case RingKind::Modular: return x.residue() % r.prime() == 0;
    case RingKind::Truncated: return is_zero(x.coeffs()[0]);
    default: throw Error(ErrorKind::UnsupportedRing, r.name() + " is not local");
  }
}

inline bool ideal_member(const Scalar& x, const Ideal& I) {
  if (x.ring() != I.ring) throw Error(ErrorKind::RingMismatch, x.ring().name() + " vs ideal in " + I.ring.name());
  switch (I.kind) {
    case IdealKind::Zero: return is_zero(x);
    case IdealKind::Maximal: return in_maximal(x);
    case IdealKind::XMultiples: return is_zero(coeff(x, 0));
    case IdealKind::ExtendedMaximal:
      for (const auto& c : x.coeffs())
        if (!in_maximal(c)) return false;
      return true;
  }
  return false;
}

/// Residue field k = R/m of a supported local ring.
inline Ring residue_field(Ring r) {
  switch (r.kind()) {
    case RingKind::Rational:
    case RingKind::PrimeField: return r;
    case RingKind::Modular: return Ring::prime_field(r.prime());
    case RingKind::Truncated: return r.base();
    default: throw Error(ErrorKind::UnsupportedRing, r.name() + " is not local");
  }
}

inline Scalar reduce_mod_max(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational:
    case RingKind::PrimeField: return x;
    case RingKind::Modular: return Scalar::make_residue(residue_field(r), x.residue());
    case RingKind::Truncated: return x.coeffs()[0];
    default: throw Error(ErrorKind::UnsupportedRing, r.name() + " is not local");
  }
}

/// Canonical preimage of a residue-field element.
inline Scalar lift_from_residue(const Scalar& x, Ring r) {
  if (x.ring() != residue_field(r)) throw Error(ErrorKind::RingMismatch, x.ring().name() + " is not the residue field of " + r.name());
  switch (r.kind()) {
    case RingKind::Rational:
    case RingKind::PrimeField: return x;
    case RingKind::Modular: return Scalar::make_residue(r, x.residue());
    case RingKind::Truncated: return Scalar::make_coeffs(r, 0, {x});
    default: throw Error(ErrorKind::UnsupportedRing, r.name() + " is not local");
  }
}

inline std::string to_string(const Scalar& x) {
  Ring r = x.ring();
  switch (r.kind()) {
    case RingKind::Rational: return x.rational().get_str();
    case RingKind::PrimeField:
    case RingKind::Modular: return std::to_string(x.residue());
    default: {
      std::string var = r.kind() == RingKind::Truncated ? "t" : "X";
      std::string out;
      for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
        if (is_zero(x.coeffs()[i])) continue;
        std::int64_t k = x.offset() + static_cast<std::int64_t>(i);
        if (!out.empty()) out += " + ";
        out += "(" + to_string(x.coeffs()[i]) + ")";
        if (k != 0) out += "*" + var + "^" + std::to_string(k);
      }
      return out.empty() ? "0" : out;
    }
  }
}

}  // namespace orthgen
