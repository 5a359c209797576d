#include "mns/scalars.hpp"

#include <charconv>
#include <cstdlib>
#include <regex>

namespace mns {

namespace {

std::int64_t parse_int64(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("not an integer: '" + std::string(text) + "'");
  return value;
}

BigInt parse_bigint(std::string_view text) {
  static const std::regex kInt(R"([+-]?[0-9]+)");
  std::string s(text);
  if (!std::regex_match(s, kInt)) throw ParseError("not an integer: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t mod_pow(std::int64_t base, std::uint64_t e, std::int64_t p) {
  std::int64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

[[noreturn]] void mixed_fields(const Scalar& a, const Scalar& b) {
  throw PreconditionError("mixed fields: " + a.field().id() + " and " + b.field().id());
}

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s), BigInt(1));
  BigInt den = parse_bigint(std::string_view(s).substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(parse_bigint(std::string_view(s).substr(0, slash)), den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw PreconditionError("division by zero");
  return Rational(mpq_class(a.v_ / b.v_));
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational rational_power(const Rational& r, long k) {
  if (k < 0) {
    if (r.is_zero()) throw PreconditionError("zero raised to a negative power");
    return rational_power(r.inverse(), -k);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(num, den);
}

// ------------------------------------------------------------- prime field

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = mod_pow(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

PrimeFieldElement::PrimeFieldElement(std::int64_t value, std::int64_t modulus) : p_(modulus) {
  if (!is_prime(modulus)) throw PreconditionError("modulus " + std::to_string(modulus) + " is not prime");
  residue_ = value % modulus;
  if (residue_ < 0) residue_ += modulus;
}

PrimeFieldElement PrimeFieldElement::parse(std::string_view text) {
  std::string s = trim(text);
  auto pos = s.find(" mod ");
  if (pos == std::string::npos) throw ParseError("expected 'r mod p': '" + s + "'");
  try {
    return {parse_int64(trim(s.substr(0, pos))), parse_int64(trim(s.substr(pos + 5)))};
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (residue_ == 0) throw PreconditionError("division by zero");
  return {mod_pow(residue_, static_cast<std::uint64_t>(p_ - 2), p_), p_};
}

namespace {
void require_same_modulus(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  if (a.modulus() != b.modulus())
    throw PreconditionError("mixed fields: Fp:" + std::to_string(a.modulus()) + " and Fp:" +
                            std::to_string(b.modulus()));
}
}  // namespace

PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  require_same_modulus(a, b);
  std::int64_t s = a.residue_ + b.residue_;
  return {s >= a.p_ ? s - a.p_ : s, a.p_};
}

PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  require_same_modulus(a, b);
  return {a.residue_ - b.residue_, a.p_};
}

PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  require_same_modulus(a, b);
  return {mod_mul(a.residue_, b.residue_, a.p_), a.p_};
}

PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) {
  require_same_modulus(a, b);
  return a * b.inverse();
}

std::string PrimeFieldElement::to_string() const {
  return std::to_string(residue_) + " mod " + std::to_string(p_);
}

// --------------------------------------------------------- quadratic field

bool is_square_free(std::int64_t m) {
  if (m == 0) return false;
  std::int64_t a = m < 0 ? -m : m;
  for (std::int64_t q = 2; q * q <= a; ++q) {
    if (a % (q * q) == 0) return false;
  }
  return true;
}

QuadraticElement::QuadraticElement(Rational u, Rational v, std::int64_t radicand)
    : u_(std::move(u)), v_(std::move(v)), m_(radicand) {
  if (radicand == 1 || !is_square_free(radicand))
    throw PreconditionError("radicand " + std::to_string(radicand) + " is not a square-free integer != 0, 1");
}

QuadraticElement QuadraticElement::parse(std::string_view text) {
  static const std::regex kForm(R"(\s*(?:([+-]?[0-9]+(?:/[0-9]+)?)\s*([+-]))?\s*([+-]?[0-9]+(?:/[0-9]+)?)\s*\*\s*sqrt\(\s*([+-]?[0-9]+)\s*\)\s*)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kForm)) throw ParseError("expected 'u+v*sqrt(m)': '" + s + "'");
  Rational v = Rational::parse(m[3].str());
  if (m[2].str() == "-") v = -v;
  try {
    return {m[1].matched ? Rational::parse(m[1].str()) : Rational(0), v, parse_int64(m[4].str())};
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Rational QuadraticElement::norm() const { return u_ * u_ - Rational(m_) * v_ * v_; }

QuadraticElement QuadraticElement::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  Rational n = norm();
  return {u_ / n, -v_ / n, m_};
}

namespace {
void require_same_radicand(const QuadraticElement& a, const QuadraticElement& b) {
  if (a.radicand() != b.radicand())
    throw PreconditionError("mixed fields: Qsqrt:" + std::to_string(a.radicand()) + " and Qsqrt:" +
                            std::to_string(b.radicand()));
}
}  // namespace

QuadraticElement operator+(const QuadraticElement& a, const QuadraticElement& b) {
  require_same_radicand(a, b);
  return {a.u_ + b.u_, a.v_ + b.v_, a.m_};
}

QuadraticElement operator-(const QuadraticElement& a, const QuadraticElement& b) {
  require_same_radicand(a, b);
  return {a.u_ - b.u_, a.v_ - b.v_, a.m_};
}

QuadraticElement operator*(const QuadraticElement& a, const QuadraticElement& b) {
  require_same_radicand(a, b);
  return {a.u_ * b.u_ + a.v_ * b.v_ * Rational(a.m_), a.u_ * b.v_ + b.u_ * a.v_, a.m_};
}

QuadraticElement operator/(const QuadraticElement& a, const QuadraticElement& b) {
  require_same_radicand(a, b);
  return a * b.inverse();
}

std::string QuadraticElement::to_string() const {
  std::string sign = v_.sign() < 0 ? "-" : "+";
  Rational abs_v = v_.sign() < 0 ? -v_ : v_;
  return u_.to_string() + sign + abs_v.to_string() + "*sqrt(" + std::to_string(m_) + ")";
}

// ------------------------------------------------------------------- Field

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
  return {Kind::prime, p};
}

Field Field::quadratic(std::int64_t m) {
  if (m == 1 || !is_square_free(m))
    throw PreconditionError("radicand " + std::to_string(m) + " is not a square-free integer != 0, 1");
  return {Kind::quadratic, m};
}

Field Field::parse(std::string_view text) {
  std::string s = trim(text);
  try {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) return prime(parse_int64(s.substr(3)));
    if (s.rfind("Qsqrt:", 0) == 0) return quadratic(parse_int64(s.substr(6)));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown field '" + s + "' (expected Q, Fp:<p> or Qsqrt:<m>)");
}

std::string Field::id() const {
  switch (kind) {
    case Kind::rational: return "Q";
    case Kind::prime: return "Fp:" + std::to_string(parameter);
    case Kind::quadratic: return "Qsqrt:" + std::to_string(parameter);
  }
  return {};
}

Scalar Field::zero() const { return from_integer(0); }
Scalar Field::one() const { return from_integer(1); }

Scalar Field::from_integer(long value) const { return from_rational(Rational(value)); }

Scalar Field::from_rational(const Rational& value) const {
  switch (kind) {
    case Kind::rational: return value;
    case Kind::prime: {
      BigInt num = value.numerator() % BigInt(parameter);
      BigInt den = value.denominator() % BigInt(parameter);
      if (den == 0) throw PreconditionError("denominator vanishes in " + id());
      return PrimeFieldElement(num.get_si(), parameter) / PrimeFieldElement(den.get_si(), parameter);
    }
    case Kind::quadratic: return QuadraticElement(value, Rational(0), parameter);
  }
  return value;
}

Scalar Field::parse_scalar(std::string_view text) const {
  Scalar s = [&]() -> Scalar {
    switch (kind) {
      case Kind::rational: return Rational::parse(text);
      case Kind::prime:
        if (std::string_view(text).find("mod") == std::string_view::npos)
          return from_rational(Rational::parse(text));
        return PrimeFieldElement::parse(text);
      case Kind::quadratic:
        if (std::string_view(text).find("sqrt") == std::string_view::npos)
          return from_rational(Rational::parse(text));
        return QuadraticElement::parse(text);
    }
    return Rational::parse(text);
  }();
  if (s.field() != *this)
    throw ParseError("scalar '" + std::string(text) + "' is not in " + id());
  return s;
}

// ------------------------------------------------------------------ Scalar

Scalar Scalar::parse(std::string_view text) {
  if (text.find("sqrt") != std::string_view::npos) return QuadraticElement::parse(text);
  if (text.find("mod") != std::string_view::npos) return PrimeFieldElement::parse(text);
  return Rational::parse(text);
}

Field Scalar::field() const {
  return std::visit(
      [](const auto& x) -> Field {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) return Field::rationals();
        else if constexpr (std::is_same_v<T, PrimeFieldElement>) return {Field::Kind::prime, x.modulus()};
        else return {Field::Kind::quadratic, x.radicand()};
      },
      v_);
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& x) { return x.is_zero(); }, v_);
}

bool Scalar::is_one() const { return *this == field().one(); }

Scalar Scalar::operator-() const {
  return std::visit([](const auto& x) -> Scalar { return -x; }, v_);
}

Scalar Scalar::inverse() const {
  return std::visit([](const auto& x) -> Scalar { return x.inverse(); }, v_);
}

Scalar Scalar::apply(Automorphism a) const {
  if (a == Automorphism::identity) return *this;
  if (const auto* q = std::get_if<QuadraticElement>(&v_)) return q->conjugate();
  throw PreconditionError("conjugation is not an automorphism of " + field().id());
}

namespace {
template <typename Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.value().index() != b.value().index()) mixed_fields(a, b);
  return std::visit(
      [&](const auto& x) -> Scalar {
        using T = std::decay_t<decltype(x)>;
        return op(x, std::get<T>(b.value()));
      },
      a.value());
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

std::string Scalar::to_string() const {
  return std::visit([](const auto& x) { return x.to_string(); }, v_);
}

Scalar field_arithmetic(const Scalar& a, const Scalar& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::sub: return a - b;
    case FieldOp::mul: return a * b;
    case FieldOp::div: return a / b;
  }
  return a;
}

}  // namespace mns
