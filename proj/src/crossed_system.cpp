#include "mns/crossed_system.hpp"

namespace mns {

CrossedSystem::CrossedSystem(std::string id, Field field, std::optional<Group> group, Action sigma, Twisting tau)
    : id_(std::move(id)),
      field_(field),
      group_(std::move(group)),
      sigma_(std::move(sigma)),
      tau_(std::move(tau)),
      trivial_(!sigma_ && !tau_) {
  if (!trivial_ && (!sigma_ || !tau_)) throw PreconditionError("crossed system '" + id_ + "' needs both sigma and tau");
}

std::shared_ptr<const CrossedSystem> CrossedSystem::trivial(const Field& field) {
  std::string id = field == Field::rationals() ? "trivial" : "trivial:" + field.id();
  return std::make_shared<CrossedSystem>(id, field, std::nullopt, nullptr, nullptr);
}

namespace {

const AbelianElement& z_coords(const Element& g) { return std::get<AbelianElement>(g); }

Scalar sign_power(const Field& f, std::int64_t e) { return f.from_integer(e % 2 == 0 ? 1 : -1); }

Scalar quadratic_unit_power(std::int64_t e) {
  QuadraticElement base(Rational(1), Rational(1), 2);
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  QuadraticElement result(Rational(1), Rational(0), 2);
  for (std::int64_t i = 0; i < e; ++i) result = result * base;
  return result;
}

}  // namespace

CrossedSystemPtr crossed_registry(const std::string& id) {
  if (id == "trivial") return CrossedSystem::trivial(Field::rationals());
  if (id.rfind("trivial:", 0) == 0) return CrossedSystem::trivial(Field::parse(id.substr(8)));

  if (id == "z2-sign-twist") {
    Field q = Field::rationals();
    return std::make_shared<CrossedSystem>(
        id, q, Group::abelian(2), [](const Element&) { return Automorphism::identity; },
        [q](const Element& x, const Element& y) {
          return sign_power(q, z_coords(x).coords[1] * z_coords(y).coords[0]);
        });
  }
  if (id == "quadratic-conj-Z") {
    Field k = Field::quadratic(2);
    return std::make_shared<CrossedSystem>(
        id, k, Group::abelian(1),
        [](const Element& x) {
          return z_coords(x).coords[0] % 2 == 0 ? Automorphism::identity : Automorphism::conjugation;
        },
        [k](const Element&, const Element&) { return k.one(); });
  }
  if (id == "quadratic-conj-z2-twist") {
    Field k = Field::quadratic(2);
    return std::make_shared<CrossedSystem>(
        id, k, Group::abelian(2),
        [](const Element& x) {
          return z_coords(x).coords[0] % 2 == 0 ? Automorphism::identity : Automorphism::conjugation;
        },
        [k](const Element& x, const Element& y) {
          return sign_power(k, z_coords(x).coords[1] * z_coords(y).coords[0]);
        });
  }
  if (id == "quadratic-unit-twist-Z") {
    return std::make_shared<CrossedSystem>(
        id, Field::quadratic(2), Group::abelian(1), [](const Element&) { return Automorphism::identity; },
        [](const Element& x, const Element& y) {
          return quadratic_unit_power(z_coords(x).coords[0] * z_coords(y).coords[0]);
        });
  }
  throw ParseError("unknown crossed system '" + id + "'");
}

std::vector<std::string> crossed_registry_ids() {
  return {"trivial", "z2-sign-twist", "quadratic-conj-Z", "quadratic-conj-z2-twist", "quadratic-unit-twist-Z"};
}

}  // namespace mns
