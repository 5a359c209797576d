#pragma once

// Exact coefficient fields: the rationals, prime fields F_p and quadratic
// fields Q(sqrt(m)). Scalar is the runtime-tagged value used as a series
// coefficient; arithmetic between different fields is rejected.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "mns/error.hpp"

namespace mns {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rational parse(std::string_view text);

  BigInt numerator() const { return v_.get_num(); }
  BigInt denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
  Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p/q", with "/q" omitted when q = 1.
  std::string to_string() const;

 private:
  mpq_class v_;
};

/// Exact r^k; k may be negative when r != 0.
Rational rational_power(const Rational& r, long k);

/// Deterministic Miller-Rabin on 64-bit integers.
bool is_prime(std::int64_t n);

class PrimeFieldElement {
 public:
  PrimeFieldElement(std::int64_t value, std::int64_t modulus);

  static PrimeFieldElement parse(std::string_view text);

  std::int64_t residue() const { return residue_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return residue_ == 0; }

  PrimeFieldElement operator-() const { return {p_ - residue_, p_}; }
  PrimeFieldElement inverse() const;
  friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b);
  friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b);
  friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b);
  friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b);
  friend bool operator==(const PrimeFieldElement&, const PrimeFieldElement&) = default;
  friend auto operator<=>(const PrimeFieldElement&, const PrimeFieldElement&) = default;

  /// "r mod p".
  std::string to_string() const;

 private:
  std::int64_t residue_;
  std::int64_t p_;
};

/// u + v*sqrt(m) with m square-free and m != 0, 1.
class QuadraticElement {
 public:
  QuadraticElement(Rational u, Rational v, std::int64_t radicand);

  static QuadraticElement parse(std::string_view text);

  const Rational& rational_part() const { return u_; }
  const Rational& radical_part() const { return v_; }
  std::int64_t radicand() const { return m_; }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

  /// u^2 - m v^2; nonzero for nonzero elements since m is not a square.
  Rational norm() const;
  QuadraticElement conjugate() const { return {u_, -v_, m_}; }

  QuadraticElement operator-() const { return {-u_, -v_, m_}; }
  QuadraticElement inverse() const;
  friend QuadraticElement operator+(const QuadraticElement& a, const QuadraticElement& b);
  friend QuadraticElement operator-(const QuadraticElement& a, const QuadraticElement& b);
  friend QuadraticElement operator*(const QuadraticElement& a, const QuadraticElement& b);
  friend QuadraticElement operator/(const QuadraticElement& a, const QuadraticElement& b);
  friend bool operator==(const QuadraticElement&, const QuadraticElement&) = default;
  friend auto operator<=>(const QuadraticElement&, const QuadraticElement&) = default;

  /// "u+v*sqrt(m)", written "u-|v|*sqrt(m)" when v < 0.
  std::string to_string() const;

 private:
  Rational u_;
  Rational v_;
  std::int64_t m_;
};

bool is_square_free(std::int64_t m);

/// Field automorphisms available to a crossed-product action. The set is
/// {identity} for Q and F_p and {identity, conjugation} for Q(sqrt(m)).
enum class Automorphism : std::uint8_t { identity, conjugation };

inline Automorphism compose(Automorphism a, Automorphism b) {
  return a == b ? Automorphism::identity : Automorphism::conjugation;
}

class Scalar;

/// Descriptor of one of the three supported field kinds.
struct Field {
  enum class Kind : std::uint8_t { rational, prime, quadratic };

  Kind kind = Kind::rational;
  std::int64_t parameter = 0;  // p for F_p, m for Q(sqrt(m)); unused for Q

  static Field rationals() { return {}; }
  static Field prime(std::int64_t p);
  static Field quadratic(std::int64_t m);
  /// "Q", "Fp:<p>" or "Qsqrt:<m>".
  static Field parse(std::string_view text);

  std::string id() const;
  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(long value) const;
  Scalar from_rational(const Rational& value) const;
  /// Parses a coefficient string in this field's text form.
  Scalar parse_scalar(std::string_view text) const;
  bool supports(Automorphism a) const {
    return a == Automorphism::identity || kind == Kind::quadratic;
  }

  friend bool operator==(const Field&, const Field&) = default;
};

class Scalar {
 public:
  using Value = std::variant<Rational, PrimeFieldElement, QuadraticElement>;

  Scalar(Rational r) : v_(std::move(r)) {}            // NOLINT(google-explicit-constructor)
  Scalar(PrimeFieldElement e) : v_(std::move(e)) {}   // NOLINT(google-explicit-constructor)
  Scalar(QuadraticElement e) : v_(std::move(e)) {}    // NOLINT(google-explicit-constructor)

  /// Parses any of the three text forms, inferring the field.
  static Scalar parse(std::string_view text);

  Field field() const;
  const Value& value() const { return v_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar apply(Automorphism a) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  std::string to_string() const;

 private:
  Value v_;
};

enum class FieldOp : std::uint8_t { add, sub, mul, div };

/// Checked binary arithmetic on scalars of the same field.
Scalar field_arithmetic(const Scalar& a, const Scalar& b, FieldOp op);

}  // namespace mns
