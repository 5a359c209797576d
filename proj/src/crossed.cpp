#include "mns/crossed.hpp"

#include <algorithm>

#include "mns/regroup.hpp"

namespace mns {

namespace {

std::vector<Element> abelian_box(int rank, std::int64_t radius) {
  std::vector<Element> out;
  std::vector<std::int64_t> c(static_cast<std::size_t>(rank), -radius);
  while (true) {
    out.emplace_back(AbelianElement{c});
    std::size_t i = 0;
    while (i < c.size() && c[i] == radius) c[i++] = -radius;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

// Small fixed panel of elements on which every triple is checked.
std::vector<Element> element_panel(const Group& g) {
  switch (g.kind()) {
    case Group::Kind::heisenberg: {
      std::vector<Element> out;
      for (std::int64_t a = -1; a <= 1; ++a)
        for (std::int64_t b = -1; b <= 1; ++b)
          for (std::int64_t c = -1; c <= 1; ++c) out.emplace_back(HeisenbergElement{a, b, c});
      return out;
    }
    case Group::Kind::abelian: return abelian_box(g.rank(), g.rank() <= 2 ? 2 : 1);
    case Group::Kind::semidirect:
    case Group::Kind::wreath: {
      auto gens = g.designated_generators();
      std::vector<Element> out{g.identity()};
      for (const Element& x : gens) {
        out.push_back(x);
        out.push_back(inverse(x));
      }
      out.push_back(multiply(gens[0], gens[1]));
      out.push_back(multiply(gens[1], inverse(gens[0])));
      return out;
    }
    case Group::Kind::free_monoid: {
      std::vector<Element> out{g.identity()};
      for (const auto& kv : enumerate_monoid(g.designated_generators(), 2)) out.push_back(kv.first);
      return out;
    }
  }
  return {};
}

Scalar generic_scalar(const Field& f) {
  switch (f.kind) {
    case Field::Kind::quadratic: return QuadraticElement(Rational(1, 2), Rational(-2, 3), f.parameter);
    case Field::Kind::prime: return f.from_integer(2);
    case Field::Kind::rational: return Rational(-2, 3);
  }
  return f.one();
}

// Checks both identities on one triple; returns the failed identity's name.
std::string check_triple(const CrossedSystem& s, const Element& x, const Element& y, const Element& z,
                         const Scalar& r) {
  const Element xy = multiply(x, y);
  const Scalar lhs = s.tau(xy, z) * s.tau(x, y).apply(s.sigma(z));
  const Scalar rhs = s.tau(x, multiply(y, z)) * s.tau(y, z);
  if (!(lhs == rhs)) return "cocycle";
  const Scalar t = s.tau(x, y);
  if (t.is_zero() || t.field() != s.field()) return "twisting-unit";
  const Scalar acted = r.apply(s.sigma(x)).apply(s.sigma(y));
  if (!(acted == t.inverse() * r.apply(s.sigma(xy)) * t)) return "action";
  return {};
}

}  // namespace

// ------------------------------------------------------------------ validity

CrossedCheckReport check_crossed_system(const CrossedSystem& system, const Group& group, std::size_t sample_count,
                                        std::uint64_t seed) {
  if (!system.applies_to(group))
    throw PreconditionError("crossed system '" + system.id() + "' is not defined on " + group.id());
  CrossedCheckReport report;
  const Element id = group.identity();
  const Scalar r = generic_scalar(system.field());

  auto fail = [&](std::string what, std::vector<Element> witness) {
    report.valid = false;
    report.violated = std::move(what);
    report.witness = std::move(witness);
    return report;
  };

  if (system.sigma(id) != Automorphism::identity) return fail("normalization", {id});
  const std::vector<Element> panel = element_panel(group);
  for (const Element& x : panel) {
    if (!system.field().supports(system.sigma(x))) return fail("action-range", {x});
    if (!system.tau(id, x).is_one() || !system.tau(x, id).is_one()) return fail("normalization", {x});
  }
  for (const Element& x : panel)
    for (const Element& y : panel)
      for (const Element& z : panel) {
        ++report.triples_checked;
        if (auto bad = check_triple(system, x, y, z, r); !bad.empty()) return fail(bad, {x, y, z});
      }

  std::mt19937_64 rng(seed);
  const int radius = group.kind() == Group::Kind::free_monoid ? 4 : 3;
  for (std::size_t i = 0; i < sample_count; ++i) {
    Element x = group.random_element(rng, radius);
    Element y = group.random_element(rng, radius);
    Element z = group.random_element(rng, radius);
    Scalar rs = random_scalar(system.field(), rng);
    ++report.triples_checked;
    if (!system.tau(id, x).is_one() || !system.tau(x, id).is_one()) return fail("normalization", {x});
    if (auto bad = check_triple(system, x, y, z, rs.is_zero() ? r : rs); !bad.empty()) return fail(bad, {x, y, z});
  }
  return report;
}

CrossedCheckReport check_crossed_system(const CrossedSystem& system, std::size_t sample_count, std::uint64_t seed) {
  return check_crossed_system(system, system.group().value_or(Group::heisenberg()), sample_count, seed);
}

CrossedSystemPtr diagonal_change(const CrossedSystemPtr& system, const DiagonalMap& map) {
  const Group probe = system->group().value_or(Group::heisenberg());
  if (!map.d(probe.identity()).is_one()) throw PreconditionError("diagonal change requires d(1) = 1");
  auto base = system;
  auto d = map.d;
  auto sigma = [base](const Element& x) { return base->sigma(x); };
  auto tau = [base, d](const Element& x, const Element& y) {
    return d(multiply(x, y)).inverse() * base->tau(x, y) * d(x).apply(base->sigma(y)) * d(y);
  };
  return std::make_shared<CrossedSystem>(system->id() + "/diag:" + map.name, system->field(), system->group(), sigma,
                                         tau);
}

Series to_original_basis(const Series& f, const DiagonalMap& map, const SeriesContext& original) {
  Series out(original);
  for (const auto& [x, a] : f.terms()) out.add_term(x, map.d(x) * a);
  return out;
}

Series to_changed_basis(const Series& f, const DiagonalMap& map, const SeriesContext& changed) {
  Series out(changed);
  for (const auto& [x, a] : f.terms()) out.add_term(x, map.d(x).inverse() * a);
  return out;
}

// ----------------------------------------------------------------- quotients

bool NormalSubgroup::contains(const Element& g) const {
  return group.owns(g) && project(g) == quotient.identity();
}

NormalSubgroup NormalSubgroup::heisenberg_center() {
  return {"heis/center", Group::heisenberg(), Monoid::heisenberg_center(), Group::abelian(2),
          [](const Element& g) -> Element {
            const auto& h = std::get<HeisenbergElement>(g);
            return AbelianElement{{h.a, h.b}};
          }};
}

NormalSubgroup NormalSubgroup::semidirect_base(const Rational& ratio) {
  Group g = Group::semidirect(ratio);
  return {g.id() + "/base", g, Monoid::semidirect_base(ratio), Group::abelian(1),
          [](const Element& e) -> Element { return AbelianElement{{std::get<SemidirectElement>(e).n}}; }};
}

NormalSubgroup NormalSubgroup::abelian_last_factor(int rank) {
  if (rank < 2) throw PreconditionError("Z^k / last factor needs k >= 2");
  Group g = Group::abelian(rank);
  return {g.id() + "/last", g, Monoid::abelian_last_factor(rank), Group::abelian(rank - 1),
          [](const Element& e) -> Element {
            auto c = std::get<AbelianElement>(e).coords;
            c.pop_back();
            return AbelianElement{c};
          }};
}

NormalSubgroup NormalSubgroup::lookup(const std::string& id) {
  Monoid m = [&] {
    try {
      return Monoid::parse(id);
    } catch (const ParseError&) {
      throw PreconditionError("unsupported normal subgroup '" + id + "'");
    }
  }();
  switch (m.part()) {
    case Monoid::Part::heisenberg_center: return heisenberg_center();
    case Monoid::Part::semidirect_base: return semidirect_base(m.group().ratio());
    case Monoid::Part::abelian_last_factor: return abelian_last_factor(m.group().rank());
    case Monoid::Part::positive: break;
  }
  throw PreconditionError("unsupported normal subgroup '" + id + "'");
}

Transversal Transversal::standard(const NormalSubgroup& n) {
  switch (n.group.kind()) {
    case Group::Kind::heisenberg:
      return {"standard", [](const Element& alpha) -> Element {
                const auto& c = std::get<AbelianElement>(alpha).coords;
                return HeisenbergElement{c.at(0), c.at(1), 0};
              }};
    case Group::Kind::semidirect: {
      Rational r = n.group.ratio();
      return {"standard", [r](const Element& alpha) -> Element {
                return SemidirectElement{Rational(0), std::get<AbelianElement>(alpha).coords.at(0), r};
              }};
    }
    case Group::Kind::abelian:
      return {"standard", [](const Element& alpha) -> Element {
                auto c = std::get<AbelianElement>(alpha).coords;
                c.push_back(0);
                return AbelianElement{c};
              }};
    default: break;
  }
  throw PreconditionError("no standard transversal for " + n.id);
}

QuotientSystem::QuotientSystem(CrossedSystemPtr base, NormalSubgroup subgroup, Transversal transversal)
    : base_(std::move(base)), subgroup_(std::move(subgroup)), transversal_(std::move(transversal)) {
  if (!base_->applies_to(subgroup_.group))
    throw PreconditionError("crossed system '" + base_->id() + "' does not act on " + subgroup_.group.id());
  const Element one = subgroup_.quotient.identity();
  if (!(representative(one) == subgroup_.group.identity()))
    throw PreconditionError("transversal '" + transversal_.name + "' does not send the identity coset to 1");
  // Distinct cosets must get representatives in distinct cosets, i.e. every
  // representative projects back to its own coset.
  for (const Element& alpha : abelian_box(subgroup_.quotient.rank(), 3)) {
    Element rep = representative(alpha);
    if (!subgroup_.group.owns(rep) || !(project(rep) == alpha))
      throw PreconditionError("transversal '" + transversal_.name + "' is not a transversal: coset " +
                              to_string(alpha) + " represented by " + to_string(rep));
  }
}

std::string QuotientSystem::id() const { return base_->id() + "|" + subgroup_.id + "|" + transversal_.name; }

Element QuotientSystem::correction(const Element& alpha, const Element& beta) const {
  const Element ab = multiply(alpha, beta);
  Element n = multiply(inverse(representative(ab)), multiply(representative(alpha), representative(beta)));
  if (!subgroup_.contains(n)) throw std::logic_error("correction element outside N");
  return n;
}

SeriesContext QuotientSystem::group_context(int degree) const {
  return {Monoid::positive(subgroup_.group), degree, base_};
}

SeriesContext QuotientSystem::subgroup_context(int degree) const { return {subgroup_.monoid, degree, base_}; }

SeriesContext QuotientSystem::quotient_context(int degree) const {
  return {Monoid::positive(subgroup_.quotient), degree, CrossedSystem::trivial(base_->field())};
}

Series QuotientSystem::tau_tilde(const Element& alpha, const Element& beta, int degree) const {
  const Element n = correction(alpha, beta);
  const Element rep_ab = representative(multiply(alpha, beta));
  Scalar c = base_->tau(rep_ab, n).inverse() * base_->tau(representative(alpha), representative(beta));
  return Series::monomial(subgroup_context(degree), n, c);
}

Series QuotientSystem::sigma_tilde(const Element& alpha, const Series& y) const {
  // nbar r xbar = xbar mbar tau(x, m)^-1 tau(n, x) r^sigma(x),  m = x^-1 n x
  const Element x = representative(alpha);
  const Element x_inv = inverse(x);
  const Automorphism act = base_->sigma(x);
  Series out(y.context());
  for (const auto& [n, r] : y.terms()) {
    Element m = multiply(multiply(x_inv, n), x);
    out.add_term(m, base_->tau(x, m).inverse() * base_->tau(n, x) * r.apply(act));
  }
  return out;
}

QuotientSystemPtr quotient_system(const CrossedSystemPtr& base, const NormalSubgroup& subgroup,
                                  const Transversal& transversal) {
  return std::make_shared<const QuotientSystem>(base, subgroup, transversal);
}

// ---------------------------------------------------------------- morphisms

Series induced_map(const Series& f, const ScalarMorphism& phi, const GroupMorphism& eta, const SeriesContext& target) {
  Series out(target);
  for (const auto& [x, a] : f.terms()) out.add_term(eta.eta(x), phi.phi(a));
  return out;
}

MorphismReport check_morphism_extension(const ScalarMorphism& phi, const GroupMorphism& eta,
                                        const SeriesContext& source, const SeriesContext& target,
                                        std::size_t samples, std::uint64_t seed) {
  MorphismReport report;
  std::mt19937_64 rng(seed);
  const CrossedSystem& s1 = *source.crossed;
  const CrossedSystem& s2 = *target.crossed;
  auto note = [&](bool& flag, std::string msg) {
    if (flag && report.first_violation.empty()) report.first_violation = std::move(msg);
    flag = false;
  };
  for (std::size_t i = 0; i < samples; ++i) {
    Element x = random_monoid_element(source.monoid, rng, source.degree);
    Element y = random_monoid_element(source.monoid, rng, source.degree);
    Scalar r = random_scalar(source.field(), rng);
    ++report.samples;
    if (!(phi.phi(r.apply(s1.sigma(x))) == phi.phi(r).apply(s2.sigma(eta.eta(x)))))
      note(report.action_condition, "action condition fails at x=" + to_string(x) + ", r=" + r.to_string());
    if (!(phi.phi(s1.tau(x, y)) == s2.tau(eta.eta(x), eta.eta(y))))
      note(report.twisting_condition, "twisting condition fails at (" + to_string(x) + ", " + to_string(y) + ")");
  }
  if (!report.action_condition || !report.twisting_condition) return report;
  for (std::size_t i = 0; i < samples; ++i) {
    Series f = random_series(source, rng, 4, false);
    Series g = random_series(source, rng, 4, false);
    Series lhs = induced_map(f * g, phi, eta, target);
    Series rhs = induced_map(f, phi, eta, target) * induced_map(g, phi, eta, target);
    if (!(lhs == rhs)) note(report.multiplicative, "Phi(fg) != Phi(f)Phi(g) for f=" + f.to_text());
  }
  return report;
}

Series augmentation_image(const Series& f, const QuotientSystemPtr& q) {
  if (q->subgroup().monoid.part() == Monoid::Part::abelian_last_factor)
    throw PreconditionError("augmentation needs N of weight 0; " + q->subgroup().id + " is graded");
  RegroupedSeries rf = regroup(f, q);
  Series out(q->quotient_context(f.degree()));
  for (const auto& [alpha, s] : rf.cosets()) {
    Scalar sum = q->base().field().zero();
    for (const auto& kv : s.terms()) sum += kv.second;
    out.add_term(alpha, sum);
  }
  return out;
}

MorphismReport check_morphism_extension(const QuotientSystemPtr& qp, int degree, std::size_t samples,
                                        std::uint64_t seed) {
  const QuotientSystem& q = *qp;
  MorphismReport report;
  std::mt19937_64 rng(seed);
  const Field& field = q.base().field();
  auto epsilon = [&](const Series& s) {
    Scalar sum = field.zero();
    for (const auto& kv : s.terms()) sum += kv.second;
    return sum;
  };
  auto note = [&](bool& flag, std::string msg) {
    if (flag && report.first_violation.empty()) report.first_violation = std::move(msg);
    flag = false;
  };
  const SeriesContext nctx = q.subgroup_context(degree);
  const Monoid qmonoid = Monoid::positive(q.subgroup().quotient);
  for (std::size_t i = 0; i < samples; ++i) {
    Element alpha = random_monoid_element(qmonoid, rng, degree);
    Element beta = random_monoid_element(qmonoid, rng, degree);
    Series s = random_series(nctx, rng, 3, false);
    ++report.samples;
    if (!(epsilon(q.sigma_tilde(alpha, s)) == epsilon(s)))
      note(report.action_condition, "epsilon(s^sigma~(" + to_string(alpha) + ")) != epsilon(s)");
    if (!epsilon(q.tau_tilde(alpha, beta, degree)).is_one())
      note(report.twisting_condition,
           "epsilon(tau~(" + to_string(alpha) + ", " + to_string(beta) + ")) != 1");
  }
  if (!report.action_condition || !report.twisting_condition) return report;
  const SeriesContext gctx = q.group_context(degree);
  for (std::size_t i = 0; i < samples; ++i) {
    Series f = random_series(gctx, rng, 4, false);
    Series g = random_series(gctx, rng, 4, false);
    if (!(augmentation_image(f * g, qp) == augmentation_image(f, qp) * augmentation_image(g, qp)))
      note(report.multiplicative, "Phi(fg) != Phi(f)Phi(g) for f=" + f.to_text());
  }
  return report;
}

Series good_preimage(const Series& a, const QuotientSystem& q) {
  if (!(a.context() == q.quotient_context(a.degree())))
    throw PreconditionError("good_preimage: series is not over " + q.subgroup().quotient.id());
  Series out(q.group_context(a.degree()));
  for (const auto& [alpha, c] : a.terms()) out.add_term(q.representative(alpha), c);
  return out;
}

// ----------------------------------------------------------------- sampling

Scalar random_scalar(const Field& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  switch (field.kind) {
    case Field::Kind::rational: return Rational(num(rng), den(rng));
    case Field::Kind::prime: {
      std::uniform_int_distribution<std::int64_t> res(0, field.parameter - 1);
      return PrimeFieldElement(res(rng), field.parameter);
    }
    case Field::Kind::quadratic: {
      long u = num(rng), du = den(rng), v = num(rng), dv = den(rng);
      return QuadraticElement(Rational(u, du), Rational(v, dv), field.parameter);
    }
  }
  return field.zero();
}

Element random_monoid_element(const Monoid& monoid, std::mt19937_64& rng, int max_weight) {
  const Group& g = monoid.group();
  std::uniform_int_distribution<int> wdist(0, std::max(0, max_weight));
  std::uniform_int_distribution<std::int64_t> small(-3, 3);
  switch (monoid.part()) {
    case Monoid::Part::heisenberg_center: return HeisenbergElement{0, 0, small(rng)};
    case Monoid::Part::semidirect_base:
      return SemidirectElement{Rational(small(rng)) * rational_power(g.ratio(), small(rng) % 3), 0, g.ratio()};
    case Monoid::Part::abelian_last_factor: {
      AbelianElement e{std::vector<std::int64_t>(static_cast<std::size_t>(g.rank()), 0)};
      e.coords.back() = wdist(rng);
      return e;
    }
    case Monoid::Part::positive: break;
  }
  const auto gens = g.designated_generators();
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Element x = g.identity();
  for (int len = wdist(rng); len > 0; --len) x = multiply(x, gens[pick(rng)]);
  std::bernoulli_distribution extra(0.3);
  if (g.kind() == Group::Kind::heisenberg && extra(rng)) x = multiply(x, HeisenbergElement{0, 0, small(rng)});
  if (g.kind() == Group::Kind::semidirect && extra(rng))
    x = multiply(SemidirectElement{Rational(small(rng)), 0, g.ratio()}, x);
  return x;
}

Series random_series(const SeriesContext& ctx, std::mt19937_64& rng, int max_terms, bool unit_identity) {
  Series s(ctx);
  std::uniform_int_distribution<int> count(1, std::max(1, max_terms));
  const Element id = ctx.monoid.group().identity();
  for (int i = count(rng); i > 0; --i) {
    Element x = random_monoid_element(ctx.monoid, rng, ctx.degree);
    if (unit_identity && weight(x) == 0) continue;
    s.add_term(x, random_scalar(ctx.field(), rng));
  }
  if (unit_identity) {
    Scalar u = random_scalar(ctx.field(), rng);
    while (u.is_zero()) u = random_scalar(ctx.field(), rng);
    s.add_term(id, u);
  }
  return s;
}

}  // namespace mns
