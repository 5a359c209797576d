#include <random>

#include "doctest.h"
#include "mns/crossed.hpp"
#include "mns/error.hpp"
#include "mns/regroup.hpp"
#include "mns/series.hpp"

using namespace mns;

namespace {

Element H(long a, long b, long c) { return HeisenbergElement{a, b, c}; }
Element Z2(long a, long b) { return AbelianElement{{a, b}}; }

SeriesContext heis(int D, const Field& f = Field::rationals()) {
  return {Monoid::positive(Group::heisenberg()), D, CrossedSystem::trivial(f)};
}

/// Direct evaluation of sum_{y,z} (yz)bar tau(y,z) a_y^sigma(z) b_z over all
/// stored pairs, truncating only at the end.
Series naive_multiply(const Series& f, const Series& g) {
  const CrossedSystem& s = *f.context().crossed;
  std::map<Element, Scalar, ElementLess> acc;
  for (const auto& [y, a] : f.terms())
    for (const auto& [z, b] : g.terms()) {
      const Element yz = multiply(y, z);
      const Scalar c = s.tau(y, z) * a.apply(s.sigma(z)) * b;
      auto it = acc.find(yz);
      if (it == acc.end())
        acc.emplace(yz, c);
      else
        it->second = it->second + c;
    }
  Series out(f.context());
  for (const auto& [x, c] : acc)
    if (weight(x) <= f.degree() && !c.is_zero()) out.add_term(x, c);
  return out;
}

std::vector<SeriesContext> contexts(int D) {
  return {heis(D), heis(D, Field::prime(5)),
          {Monoid::positive(Group::abelian(2)), D, crossed_registry("z2-sign-twist")},
          {Monoid::positive(Group::abelian(1)), D, crossed_registry("quadratic-conj-Z")},
          {Monoid::positive(Group::abelian(2)), D, crossed_registry("quadratic-conj-z2-twist")},
          {Monoid::positive(Group::semidirect(Rational(2))), D, CrossedSystem::trivial(Field::rationals())},
          {Monoid::positive(Group::wreath()), D, CrossedSystem::trivial(Field::rationals())},
          {Monoid::positive(Group::free_monoid(2)), D, CrossedSystem::trivial(Field::rationals())}};
}

}  // namespace

TEST_CASE("addition examples") {
  const SeriesContext c = heis(3);
  const Series x = Series::monomial(c, H(1, 0, 0), Rational(1)), y = Series::monomial(c, H(0, 1, 0), Rational(1));
  const Series one = Series::one(c);
  CHECK((one + x) + (one - x) == Series::constant(c, Rational(2)));
  CHECK(x + Series::zero(c) == x);
  const Series s = (x + y) + y;
  CHECK(s.coefficient(H(1, 0, 0)) == Scalar(Rational(1)));
  CHECK(s.coefficient(H(0, 1, 0)) == Scalar(Rational(2)));
  CHECK_THROWS_AS(x + Series::one(heis(4)), PreconditionError);
}

TEST_CASE("multiplication examples") {
  const SeriesContext c = heis(2);
  const Series x = Series::monomial(c, H(1, 0, 0), Rational(1)), y = Series::monomial(c, H(0, 1, 0), Rational(1));
  CHECK(x * y == Series::monomial(c, H(1, 1, 1), Rational(1)));
  CHECK(y * x == Series::monomial(c, H(1, 1, 0), Rational(1)));
  CHECK(x * Series::one(c) == x);

  const SeriesContext t{Monoid::positive(Group::abelian(2)), 2, crossed_registry("z2-sign-twist")};
  const Series X = Series::monomial(t, Z2(1, 0), Rational(1)), Y = Series::monomial(t, Z2(0, 1), Rational(1));
  CHECK(Y * X == Series::monomial(t, Z2(1, 1), Rational(-1)));
  CHECK(X * Y == Series::monomial(t, Z2(1, 1), Rational(1)));
}

TEST_CASE("inversion examples") {
  const SeriesContext f{Monoid::positive(Group::free_monoid(1)), 3, CrossedSystem::trivial(Field::rationals())};
  Series one_minus_x = Series::one(f);
  one_minus_x.add_term(FreeMonoidWord{{0}, 1}, Rational(-1));
  const Series inv = series_invert(one_minus_x);
  CHECK(inv.to_text() == "monoid=free:1 D=3 crossed=trivial\n0\t1\t1\n1\ta\t1\n2\taa\t1\n3\taaa\t1\n");

  CHECK(series_invert(Series::one(heis(4))) == Series::one(heis(4)));
  Series u = Series::one(heis(2));
  u.add_term(H(1, 0, 0), Rational(1));
  Series expect = Series::one(heis(2));
  expect.add_term(H(1, 0, 0), Rational(-1));
  expect.add_term(H(2, 0, 0), Rational(1));
  CHECK(series_invert(u) == expect);

  CHECK_THROWS_WITH_AS(series_invert(Series::monomial(heis(2), H(1, 0, 0), Rational(1))), doctest::Contains("no truncated inverse"),
                       PreconditionError);
}

TEST_CASE("ring axioms, inversion and the naive product on random series") {
  for (const SeriesContext& ctx : contexts(4)) {
    CAPTURE(ctx.header());
    std::mt19937_64 rng(101);
    for (int i = 0; i < 25; ++i) {
      const Series f = random_series(ctx, rng, 5, false), g = random_series(ctx, rng, 5, false),
                   h = random_series(ctx, rng, 5, false);
      CHECK(f * g == naive_multiply(f, g));
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f + g) * h == f * h + g * h);
      CHECK(Series::parse_text(f.to_text()) == f);
      const Series u = random_series(ctx, rng, 5, true);
      const Series ui = series_invert(u);
      CHECK(u * ui == Series::one(ctx));
      CHECK(ui * u == Series::one(ctx));
    }
  }
}

TEST_CASE("truncation coherence") {
  std::mt19937_64 rng(7);
  for (const SeriesContext& hi : contexts(5)) {
    const SeriesContext lo{hi.monoid, 3, hi.crossed};
    for (int i = 0; i < 20; ++i) {
      const Series f = random_series(hi, rng, 6, false), g = random_series(hi, rng, 6, false);
      CHECK((f * g).truncate(3) == f.truncate(3) * g.truncate(3));
    }
    CHECK_THROWS_AS(Series::one(lo).truncate(4), PreconditionError);
  }
}

TEST_CASE("summable sums") {
  const SeriesContext c{Monoid::positive(Group::free_monoid(1)), 4, CrossedSystem::trivial(Field::rationals())};
  const Element x1 = FreeMonoidWord{{0}, 1}, x2 = FreeMonoidWord{{0, 0}, 1};
  const Series s = summable_sum({Series::one(c), Series::monomial(c, x1, Rational(1)), Series::monomial(c, x2, Rational(1))});
  CHECK(s.size() == 3);
  std::mt19937_64 rng(9);
  for (const SeriesContext& ctx : contexts(3)) {
    const Series f = random_series(ctx, rng, 4, false);
    CHECK(summable_sum({f, series_negate(f)}).is_zero());
    std::vector<Series> fs, hs, prods;
    for (int i = 0; i < 3; ++i) {
      fs.push_back(random_series(ctx, rng, 3, false));
      hs.push_back(random_series(ctx, rng, 3, false));
    }
    for (const Series& a : fs)
      for (const Series& b : hs) prods.push_back(a * b);
    CHECK(summable_sum(fs) * summable_sum(hs) == summable_sum(prods));
    const Scalar r = random_scalar(ctx.field(), rng);
    CHECK(series_scale(summable_sum(fs), r) ==
          summable_sum({series_scale(fs[0], r), series_scale(fs[1], r), series_scale(fs[2], r)}));
  }
}

TEST_CASE("trivial twist coincides with the untwisted product") {
  std::mt19937_64 rng(4);
  const SeriesContext plain = heis(4);
  const auto twisted_trivial = std::make_shared<CrossedSystem>(
      "explicit-trivial", Field::rationals(), std::nullopt, [](const Element&) { return Automorphism::identity; },
      [](const Element&, const Element&) { return Scalar(Rational(1)); });
  const SeriesContext t{plain.monoid, 4, twisted_trivial};
  for (int i = 0; i < 30; ++i) {
    const Series f = random_series(plain, rng, 5, false), g = random_series(plain, rng, 5, false);
    Series ft(t), gt(t);
    for (const auto& [x, c] : f.terms()) ft.add_term(x, c);
    for (const auto& [x, c] : g.terms()) gt.add_term(x, c);
    CHECK((ft * gt).terms() == (f * g).terms());
  }
}

TEST_CASE("text format") {
  const Series s = Series::parse_text("monoid=heis D=3 crossed=trivial\n1\tH(0,1,0)\t-1/2\n0\tH(0,0,0)\t1\n");
  CHECK(s.to_text() == "monoid=heis D=3 crossed=trivial\n0\tH(0,0,0)\t1\n1\tH(0,1,0)\t-1/2\n");
  CHECK_THROWS_AS(Series::parse_text("monoid=heis D=3 crossed=trivial\n2\tH(0,1,0)\t1\n"), ParseError);
  CHECK_THROWS_AS(Series::parse_text("monoid=heis D=1 crossed=trivial\n2\tH(1,1,0)\t1\n"), ParseError);
  CHECK_THROWS_AS(Series::parse_text("monoid=heis D=3 crossed=trivial\n1\tH(1,0,0)\t1\n1\tH(1,0,0)\t2\n"), ParseError);
  CHECK_THROWS_AS(Series::parse_text("monoid=heis D=3 crossed=trivial\n1\tH(1,0,0)\t0\n"), ParseError);
  CHECK_THROWS_AS(Series::parse_text("monoid=heis D=3 crossed=nope\n"), ParseError);
  const Series q = Series::parse_text("monoid=z:1 D=2 crossed=quadratic-conj-Z\n1\tZ(1)\t1-1*sqrt(2)\n");
  CHECK(Series::parse_text(q.to_text()) == q);
  CHECK_THROWS_AS(Series::monomial(heis(2), H(1, 0, 0), Scalar::parse("1 mod 5")), PreconditionError);
}

TEST_CASE("regroup examples and round trips") {
  const auto q = quotient_system(CrossedSystem::trivial(Field::rationals()), NormalSubgroup::heisenberg_center(),
                                 Transversal::standard(NormalSubgroup::heisenberg_center()));
  const SeriesContext c = q->group_context(3);
  Series f(c);
  f.add_term(H(1, 0, 0), Rational(1));
  f.add_term(H(0, 0, 1), Rational(1));
  const RegroupedSeries rf = regroup(f, q);
  CHECK(rf.cosets().size() == 2);
  CHECK(rf.coefficient(AbelianElement{{1, 0}}) == Series::one(q->subgroup_context(3)));
  CHECK(rf.coefficient(AbelianElement{{0, 0}}) == Series::monomial(q->subgroup_context(3), H(0, 0, 1), Rational(1)));
  CHECK(flatten(rf) == f);

  const Series n = Series::monomial(c, H(0, 0, -2), Rational(3));
  const RegroupedSeries rn = regroup(n, q);
  CHECK(rn.cosets().size() == 1);
  CHECK(rn.cosets().begin()->first == Element(AbelianElement{{0, 0}}));

  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const Series g = random_series(c, rng, 6, false), h = random_series(c, rng, 6, false);
    CHECK(flatten(regroup(g, q)) == g);
    CHECK(regroup(flatten(regroup(g, q)), q) == regroup(g, q));
    CHECK(regrouped_add(regroup(g, q), regroup(h, q)) == regroup(g + h, q));
    CHECK(flatten(regrouped_multiply(regroup(g, q), regroup(h, q))) == g * h);
  }
  CHECK_THROWS_AS(NormalSubgroup::lookup("wreath/lamps"), PreconditionError);
}
