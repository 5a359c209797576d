#include <random>

#include "doctest.h"
#include "mns/classify.hpp"
#include "mns/error.hpp"
#include "mns/groups.hpp"
#include "oracles.hpp"

using namespace mns;

namespace {

const std::vector<Group>& all_groups() {
  static const std::vector<Group> gs{Group::heisenberg(), Group::semidirect(Rational(2)),
                                     Group::semidirect(Rational(1, 3)), Group::wreath(), Group::abelian(3)};
  return gs;
}

Element H(long a, long b, long c) { return HeisenbergElement{a, b, c}; }
Element B(const Rational& h, long n) { return SemidirectElement{h, n, Rational(2)}; }

}  // namespace

TEST_CASE("heisenberg products agree with the matrix oracle") {
  CHECK(to_string(multiply(H(1, 0, 0), H(0, 1, 0))) == "H(1,1,1)");
  CHECK(to_string(multiply(H(0, 1, 0), H(1, 0, 0))) == "H(1,1,0)");
  std::mt19937_64 rng(5);
  const Group g = Group::heisenberg();
  for (int i = 0; i < 300; ++i) {
    const auto x = std::get<HeisenbergElement>(g.random_element(rng, 6));
    const auto y = std::get<HeisenbergElement>(g.random_element(rng, 6));
    const auto p = std::get<HeisenbergElement>(multiply(x, y));
    CHECK(oracle::mat_mul(oracle::heis_matrix(x.a, x.b, x.c), oracle::heis_matrix(y.a, y.b, y.c)) ==
          oracle::heis_matrix(p.a, p.b, p.c));
  }
}

TEST_CASE("semidirect products agree with the affine oracle") {
  CHECK(multiply(B(1, 1), B(0, 1)) == B(1, 2));
  CHECK(multiply(B(0, 1), B(1, 1)) == B(2, 2));
  std::mt19937_64 rng(6);
  for (const Rational r : {Rational(2), Rational(5, 2), Rational(1, 3)}) {
    const Group g = Group::semidirect(r);
    const mpq_class rq(r.numerator(), r.denominator());
    for (int i = 0; i < 200; ++i) {
      const auto x = std::get<SemidirectElement>(g.random_element(rng, 4));
      const auto y = std::get<SemidirectElement>(g.random_element(rng, 4));
      const auto p = std::get<SemidirectElement>(multiply(x, y));
      const auto expect = oracle::affine_mul(oracle::bs_affine(mpq_class(x.h.numerator(), x.h.denominator()), x.n, rq),
                                             oracle::bs_affine(mpq_class(y.h.numerator(), y.h.denominator()), y.n, rq));
      const auto got = oracle::bs_affine(mpq_class(p.h.numerator(), p.h.denominator()), p.n, rq);
      CHECK(cmp(expect.scale, got.scale) == 0);
      CHECK(cmp(expect.shift, got.shift) == 0);
    }
  }
}

TEST_CASE("wreath products agree with the Laurent matrix oracle") {
  std::mt19937_64 rng(7);
  const Group g = Group::wreath();
  auto mat = [](const WreathElement& w) {
    return oracle::wreath_matrix(std::map<long long, long long>(w.f.begin(), w.f.end()), w.n);
  };
  for (int i = 0; i < 200; ++i) {
    const auto x = std::get<WreathElement>(g.random_element(rng, 3));
    const auto y = std::get<WreathElement>(g.random_element(rng, 3));
    CHECK(oracle::laurent_mat_equal(oracle::laurent_mat_mul(mat(x), mat(y)),
                                    mat(std::get<WreathElement>(multiply(x, y)))));
  }
}

TEST_CASE("comparison examples") {
  CHECK(group_compare(H(0, 0, 1), H(0, 1, 0)) == std::strong_ordering::less);
  const Group w = Group::wreath();
  CHECK(group_compare(w.parse_element("W({0:1},0)"), w.parse_element("W({},1)")) == std::strong_ordering::less);
  CHECK(group_compare(w.parse_element("W({0:-1,3:1},0)"), w.parse_element("W({5:-1},0)")) ==
        std::strong_ordering::greater);
  CHECK_THROWS_AS(group_compare(H(0, 0, 0), B(0, 0)), PreconditionError);
  CHECK_THROWS_AS(multiply(B(0, 0), SemidirectElement{Rational(0), 0, Rational(3)}), PreconditionError);
}

TEST_CASE("bi-invariance, inverses and canonical forms on random elements") {
  for (const Group& g : all_groups()) {
    CAPTURE(g.id());
    std::mt19937_64 rng(17);
    for (int i = 0; i < 400; ++i) {
      const Element x = g.random_element(rng, 3), y = g.random_element(rng, 3), z = g.random_element(rng, 3);
      const auto c = group_compare(x, y);
      CHECK(group_compare(multiply(z, x), multiply(z, y)) == c);
      CHECK(group_compare(multiply(x, z), multiply(y, z)) == c);
      CHECK(multiply(x, inverse(x)) == g.identity());
      CHECK(multiply(inverse(x), x) == g.identity());
      CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
      CHECK(g.parse_element(to_string(x)) == x);
    }
  }
}

TEST_CASE("weights") {
  CHECK(weight(H(2, 3, 4)) == 5);
  CHECK(weight(B(1, 1)) == 1);
  CHECK(weight(Group::wreath().parse_element("W({0:2,1:1},3)")) == 6);
  CHECK_THROWS_AS(weight(H(-1, 0, 0)), PreconditionError);
  CHECK_THROWS_AS(weight(Group::wreath().parse_element("W({0:-1},3)")), PreconditionError);
  for (const Group& g : {Group::heisenberg(), Group::semidirect(Rational(2)), Group::wreath()}) {
    const auto gens = g.designated_generators();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < 100; ++i) {
      Element a = g.identity(), b = g.identity();
      for (int k = 0; k < 5; ++k) a = multiply(a, gens[pick(rng)]);
      for (int k = 0; k < 4; ++k) b = multiply(b, gens[pick(rng)]);
      CHECK(weight(multiply(a, b)) == weight(a) + weight(b));
      CHECK(weight(a) == 5);
    }
  }
}

TEST_CASE("heisenberg centrality and commutator") {
  const Element x = H(1, 0, 0), y = H(0, 1, 0), z = H(0, 0, 1);
  CHECK(commutator(x, y) == z);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Element g = Group::heisenberg().random_element(rng, 5);
    CHECK(multiply(g, z) == multiply(z, g));
  }
}

TEST_CASE("enumerate_monoid examples") {
  const auto gens = Group::heisenberg().designated_generators();
  const auto e2 = enumerate_monoid(gens, 2);
  CHECK(e2.size() == 7);
  std::size_t words = 0;
  for (const auto& [k, ws] : e2) words += ws.size();
  CHECK(words == 7);
  CHECK(e2.count(H(1, 1, 1)) == 1);
  CHECK(e2.count(H(1, 1, 0)) == 1);

  const auto e4 = enumerate_monoid(gens, 4);
  const auto& ws = e4.at(H(2, 2, 2));
  REQUIRE(ws.size() == 2);
  CHECK(word_to_string(ws[0]) == "xyyx");
  CHECK(word_to_string(ws[1]) == "yxxy");

  const auto b3 = enumerate_monoid(Group::semidirect(Rational(2)).designated_generators(), 3);
  std::size_t weight3 = 0;
  for (const auto& [k, v] : b3)
    if (weight(k) == 3) weight3 += v.size() == 1;
  CHECK(weight3 == 8);

  CHECK_THROWS_AS(enumerate_monoid({H(-1, 0, 0)}, 2), PreconditionError);
  CHECK_THROWS_AS(enumerate_monoid({H(0, 0, 1)}, 2), PreconditionError);
}

TEST_CASE("order types") {
  const auto h = classify_order_type(Group::heisenberg());
  CHECK(h.type == 1);
  CHECK(h.witness_verified);
  for (const auto& j : h.jumps) CHECK(j.central);

  const auto b = classify_order_type(Group::semidirect(Rational(2)));
  CHECK(b.type == 2);
  CHECK(b.witness_verified);
  bool has_ratio = false;
  for (const auto& j : b.jumps)
    if (!j.central && j.action_ratio && *j.action_ratio == Rational(2)) has_ratio = true;
  CHECK(has_ratio);

  const auto w = classify_order_type(Group::wreath());
  CHECK(w.type == 3);
  CHECK(w.witness_verified);
  CHECK(w.convex_subgroup == "B_0");
  CHECK(w.shrunk_subgroup == "B_-1");
  REQUIRE(w.conjugator);
  CHECK(to_string(*w.conjugator) == "W({},-1)");
  CHECK_THROWS_AS(classify_order_type(Group::abelian(2)), PreconditionError);
}

TEST_CASE("wreath convexity of B_0 on sampled sandwiches") {
  const Group g = Group::wreath();
  const ConvexSubgroup b0 = wreath_lamp_subgroup(0);
  std::mt19937_64 rng(31);
  std::vector<Element> members;
  while (members.size() < 60) {
    const Element e = g.random_element(rng, 2);
    if (b0.contains(e)) members.push_back(e);
  }
  int sandwiches = 0;
  for (int i = 0; i < 3000; ++i) {
    const Element u = members[rng() % members.size()], v = members[rng() % members.size()];
    const Element x = g.random_element(rng, 2);
    if (group_compare(u, x) == std::strong_ordering::less && group_compare(x, v) == std::strong_ordering::less) {
      ++sandwiches;
      CHECK(b0.contains(x));
    }
  }
  CHECK(sandwiches > 0);
}

TEST_CASE("element strings") {
  const Group b = Group::parse("bs12");
  CHECK(b.id() == "bs:2");
  CHECK(to_string(b.parse_element("B(1/1,1)")) == "B(1,1)@r=2");
  CHECK_THROWS_AS(b.parse_element("B(1,1)@r=3"), ParseError);
  CHECK(to_string(Group::wreath().parse_element("W({3:1,-2:4},0)")) == "W({-2:4,3:1},0)");
  CHECK_THROWS_AS(Group::parse("sl2"), ParseError);
  CHECK_THROWS_AS(Group::heisenberg().parse_element("H(1,2)"), ParseError);
}
