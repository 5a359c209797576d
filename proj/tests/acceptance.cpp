// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "mns/classify.hpp"
#include "mns/crossed.hpp"
#include "mns/freeness.hpp"
#include "mns/magnus.hpp"
#include "mns/regroup.hpp"
#include "oracles.hpp"

using namespace mns;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.note = what;
    }
  }
  void within(double elapsed_ms, double limit_ms, const std::string& what) {
    require(elapsed_ms < limit_ms, what + " took " + std::to_string(static_cast<long>(elapsed_ms)) + " ms, limit " +
                                       std::to_string(static_cast<long>(limit_ms)) + " ms");
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return ms_since(t0);
}

mpq_class q(const Rational& r) { return mpq_class(r.numerator(), r.denominator()); }

// ---------------------------------------------------------------------------

Outcome bi_invariance() {
  Check c;
  for (const Group& g : {Group::heisenberg(), Group::semidirect(Rational(2)), Group::wreath()}) {
    std::mt19937_64 rng(1000);
    bool all = true;
    const double t = timed([&] {
      for (int i = 0; i < 1000; ++i) {
        const Element x = g.random_element(rng, 4), y = g.random_element(rng, 4), z = g.random_element(rng, 4);
        const auto o = group_compare(x, y);
        all = all && group_compare(multiply(z, x), multiply(z, y)) == o &&
              group_compare(multiply(x, z), multiply(y, z)) == o;
      }
    });
    c.require(all, "bi-invariance fails on " + g.id());
    c.within(t, 1000, g.id());
  }
  return c.result();
}

Outcome magnus_injectivity() {
  Check c;
  InjectivityReport rep;
  const double t = timed([&] { rep = verify_magnus_injectivity(2, 4, 4); });
  c.require(rep.words == 161, "expected 161 reduced words, got " + std::to_string(rep.words));
  c.require(rep.injective() && rep.distinct_images == 161, "degree-4 images collide");
  std::set<oracle::NCPoly> images;
  for (const FreeWord& w : enumerate_reduced_words(2, 4)) images.insert(oracle::magnus(w.to_string(), 4));
  c.require(images.size() == 161, "oracle images collide");
  c.within(t, 5000, "magnus");
  return c.result();
}

Outcome monoid_collisions() {
  Check c;
  FreenessReport bs;
  const auto gens = Group::semidirect(Rational(2)).designated_generators();
  double t = timed([&] { bs = free_monoid_check(gens, 12); });
  c.require(bs.verdict == Verdict::verified, "BS(1,2) {tx,x} not verified at L=12");
  c.require(bs.details["words"] == 8191 && bs.details["distinct_elements"] == 8191, "expected 8191 distinct elements");
  c.within(t, 5000, "BS(1,2) L=12");
  // independent hashing of affine-map forms
  std::set<std::pair<mpq_class, mpq_class>> seen;
  std::vector<oracle::Affine> level{{1, 0}};
  const oracle::Affine tx = oracle::bs_affine(1, 1, 2), x = oracle::bs_affine(0, 1, 2);
  seen.insert({1, 0});
  for (int len = 1; len <= 12; ++len) {
    std::vector<oracle::Affine> next;
    for (const auto& a : level)
      for (const auto& g : {tx, x}) {
        next.push_back(oracle::affine_mul(a, g));
        seen.insert({next.back().scale, next.back().shift});
      }
    level = std::move(next);
  }
  c.require(seen.size() == 8191, "affine oracle finds collisions");

  FreenessReport h;
  t = timed([&] { h = free_monoid_check(Group::heisenberg().designated_generators(), 4); });
  c.require(h.verdict == Verdict::counterexample, "Heisenberg {x,y} reported free at L=4");
  c.require(h.witness["words"] == nlohmann::ordered_json::array({"xyyx", "yxxy"}), "wrong Heisenberg witness");
  c.require(oracle::mat_mul(oracle::mat_mul(oracle::heis_matrix(1, 0, 0), oracle::heis_matrix(0, 1, 0)),
                            oracle::mat_mul(oracle::heis_matrix(0, 1, 0), oracle::heis_matrix(1, 0, 0))) ==
                oracle::mat_mul(oracle::mat_mul(oracle::heis_matrix(0, 1, 0), oracle::heis_matrix(1, 0, 0)),
                                oracle::mat_mul(oracle::heis_matrix(1, 0, 0), oracle::heis_matrix(0, 1, 0))),
            "matrix oracle disagrees on xyyx = yxxy");
  c.within(t, 1000, "Heisenberg L=4");
  return c.result();
}

Outcome wreath_freeness() {
  Check c;
  const Type3Generators g = type3_generators(Group::wreath());
  c.require(g.steps_verified, "type-3 construction steps fail");
  FreenessReport rep;
  const double t = timed([&] { rep = free_monoid_check({g.positive_a, g.positive_b}, 10); });
  c.require(rep.verdict == Verdict::verified, "wreath {delta_0, t} not verified at L=10");
  c.require(rep.details["distinct_elements"] == 2047, "expected 2047 distinct elements");
  std::vector<oracle::LaurentMat> all{oracle::wreath_matrix({}, 0)};
  std::vector<oracle::LaurentMat> level = all;
  const auto a = oracle::wreath_matrix({{0, 1}}, 0), tt = oracle::wreath_matrix({}, 1);
  for (int len = 1; len <= 10; ++len) {
    std::vector<oracle::LaurentMat> next;
    for (const auto& m : level)
      for (const auto& s : {a, tt}) next.push_back(oracle::laurent_mat_mul(m, s));
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::set<std::pair<oracle::Laurent, long long>> forms;
  for (const auto& m : all) forms.insert({m.m[0][1], m.m[0][0].begin()->first});
  c.require(forms.size() == 2047, "Laurent oracle finds collisions");
  c.within(t, 10000, "wreath L=10");
  return c.result();
}

Outcome digit_sums() {
  Check c;
  const double t = timed([&] {
    for (auto [p, qq] : {std::pair{2L, 1L}, {3L, 1L}, {5L, 2L}, {7L, 3L}}) {
      const Rational r(p, qq);
      const auto rep = digit_sum_check(r, 12);
      c.require(rep.verdict == Verdict::verified, "r=" + r.to_string() + " not verified at N=12");
      c.require(rep.details["sums"] == 8191, "expected 8191 sums");
      c.require(digit_sum_check(r.inverse(), 12).verdict == rep.verdict, "r and 1/r disagree at r=" + r.to_string());
      c.require(oracle::digit_sums_distinct(p, qq, 12), "integer oracle finds a collision at r=" + r.to_string());
    }
    const auto one = digit_sum_check(Rational(1), 12);
    c.require(one.verdict == Verdict::counterexample, "r=1 not a counterexample");
    c.require(one.witness["S1"] == nlohmann::ordered_json::array({0}) &&
                  one.witness["S2"] == nlohmann::ordered_json::array({1}),
              "r=1 witness is not ({0},{1})");
  });
  c.within(t, 10000, "digit sums");
  return c.result();
}

Outcome pingpong() {
  Check c;
  FreenessReport rep;
  const double t = timed([&] { rep = pingpong_check(Rational(2), Rational(1), 8); });
  c.require(rep.verdict == Verdict::verified, "ping-pong fails at r=2, t=1, L=8");
  c.require(rep.details["points"] == 511, "expected 511 reached points");
  c.within(t, 2000, "ping-pong");
  return c.result();
}

Outcome series_inverse_assoc() {
  Check c;
  const std::vector<SeriesContext> ctxs{
      {Monoid::positive(Group::heisenberg()), 6, CrossedSystem::trivial(Field::rationals())},
      {Monoid::positive(Group::abelian(2)), 6, crossed_registry("z2-sign-twist")},
      {Monoid::positive(Group::abelian(1)), 6, crossed_registry("quadratic-conj-Z")}};
  const double t = timed([&] {
    for (const SeriesContext& ctx : ctxs) {
      std::mt19937_64 rng(700);
      const Series one = Series::one(ctx);
      for (int i = 0; i < 100; ++i) {
        const Series f = random_series(ctx, rng, 6, true);
        const Series fi = series_invert(f);
        c.require(f * fi == one && fi * f == one, "f f^-1 != 1 in " + ctx.header());
      }
      for (int i = 0; i < 100; ++i) {
        const Series f = random_series(ctx, rng, 5, false), g = random_series(ctx, rng, 5, false),
                     h = random_series(ctx, rng, 5, false);
        c.require((f * g) * h == f * (g * h), "associativity fails in " + ctx.header());
      }
    }
  });
  c.within(t, 30000, "series");
  return c.result();
}

Outcome regroup_quotient() {
  Check c;
  const auto center = NormalSubgroup::heisenberg_center();
  const auto base = NormalSubgroup::semidirect_base(Rational(2));
  const double t = timed([&] {
    for (const auto& n : {center, base}) {
      const auto q = quotient_system(CrossedSystem::trivial(Field::rationals()), n, Transversal::standard(n));
      const SeriesContext ctx = q->group_context(6);
      std::mt19937_64 rng(800);
      for (int i = 0; i < 100; ++i) {
        const Series f = random_series(ctx, rng, 6, false), g = random_series(ctx, rng, 6, false);
        const RegroupedSeries rf = regroup(f, q), rg = regroup(g, q);
        c.require(flatten(rf) == f, "flatten(regroup f) != f over " + q->id());
        c.require(flatten(regrouped_multiply(rf, rg)) == f * g, "regroup not multiplicative over " + q->id());
      }
    }
    const auto q = quotient_system(CrossedSystem::trivial(Field::rationals()), center, Transversal::standard(center));
    for (long a1 = -3; a1 <= 3; ++a1)
      for (long b1 = -3; b1 <= 3; ++b1)
        for (long a2 = -3; a2 <= 3; ++a2)
          for (long b2 = -3; b2 <= 3; ++b2) {
            const Series expect = Series::monomial(q->subgroup_context(6), HeisenbergElement{0, 0, a1 * b2}, Rational(1));
            c.require(q->tau_tilde(AbelianElement{{a1, b1}}, AbelianElement{{a2, b2}}, 6) == expect,
                      "tau~ differs from z^(a1 b2)");
          }
  });
  c.within(t, 30000, "regroup");
  return c.result();
}

Outcome crossed_validity() {
  Check c;
  const double t = timed([&] {
    for (const std::string& id : crossed_registry_ids())
      c.require(check_crossed_system(*crossed_registry(id), 500, 9).valid, id + " reported invalid");
    const CrossedSystemPtr sign = crossed_registry("z2-sign-twist");
    auto coords = [](const Element& x) { return std::get<AbelianElement>(x).coords; };
    const Field f = sign->field();
    const std::vector<DiagonalMap> maps{
        {"one", [=](const Element&) { return f.one(); }},
        {"sign-a", [=](const Element& x) { return f.from_integer(coords(x)[0] % 2 == 0 ? 1 : -1); }},
        {"two-pow", [=](const Element& x) { return f.from_rational(rational_power(Rational(2), coords(x)[0])); }},
        {"affine", [=](const Element& x) {
           const long s = coords(x)[0] * coords(x)[0] + coords(x)[1] * coords(x)[1];
           return s == 0 ? f.one() : f.from_integer(1 + s);
         }},
        {"mixed", [=](const Element& x) {
           const long a = coords(x)[0], b = coords(x)[1];
           return a == 0 && b == 0 ? f.one() : f.from_rational(Rational(3 + a * a, 2 + b * b));
         }}};
    for (const DiagonalMap& d : maps)
      c.require(check_crossed_system(*diagonal_change(sign, d), 500, 9).valid, "diagonal map " + d.name + " invalid");
    const auto corrupted = std::make_shared<CrossedSystem>(
        "corrupted", f, sign->group(), [sign](const Element& x) { return sign->sigma(x); },
        [sign](const Element& x, const Element& y) {
          const Scalar v = sign->tau(x, y);
          return x == Element(AbelianElement{{0, 1}}) && y == Element(AbelianElement{{1, 0}}) ? -v : v;
        });
    const auto rep = check_crossed_system(*corrupted, 500, 9);
    c.require(!rep.valid && rep.violated == "cocycle", "corrupted twisting not caught");
  });
  c.within(t, 5000, "crossed validity");
  return c.result();
}

Outcome heisenberg_units() {
  Check c;
  const double t = timed([&] {
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
      bool verified = false;
      for (int D = 6; D <= 10 && !verified; ++D) {
        const SeriesContext ctx{Monoid::positive(Group::heisenberg()), D, CrossedSystem::trivial(f)};
        const auto [u, v] = type1_unit_generators(ctx, f.one(), f.one());
        const FreenessReport rep = group_algebra_independence({u, v}, 3, D);
        verified = rep.verdict == Verdict::verified && rep.details["rank"] == 53;
        c.require(rep.verdict != Verdict::counterexample, "genuine dependency over " + f.id());
      }
      c.require(verified, "rank 53 not reached over " + f.id() + " by D=10");
    }
  });
  c.within(t, 120000, "Heisenberg units");
  return c.result();
}

Outcome augmentation() {
  Check c;
  const double t = timed([&] {
    const auto center = NormalSubgroup::heisenberg_center();
    const auto q = quotient_system(CrossedSystem::trivial(Field::rationals()), center, Transversal::standard(center));
    std::mt19937_64 rng(1100);
    for (int i = 0; i < 100; ++i) {
      const Series a = random_series(q->quotient_context(6), rng, 6, false);
      c.require(augmentation_image(good_preimage(a, *q), q) == a, "Phi(good preimage) != A");
    }
    const SeriesContext g = q->group_context(6);
    for (int i = 0; i < 100; ++i) {
      const Series f = random_series(g, rng, 5, false), h = random_series(g, rng, 5, false);
      c.require(augmentation_image(f * h, q) == augmentation_image(f, q) * augmentation_image(h, q),
                "Phi not multiplicative");
    }
    c.require(check_morphism_extension(q, 6, 100, 11).holds(), "extension conditions fail for Phi");
  });
  c.within(t, 5000, "augmentation");
  return c.result();
}

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(MNS_BINARY) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_determinism() {
  Check c;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("mns-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path series = dir / "f.mns";
  std::ofstream(series) << "monoid=heis D=4 crossed=trivial\n0\tH(0,0,0)\t2\n1\tH(1,0,0)\t1\n1\tH(0,1,0)\t-1/3\n";
  const std::vector<std::string> commands{
      "verify-monoid --group bs12 --gens \"B(1/1,1),B(0/1,1)\" --L 12 --seed 5",
      "verify-monoid --group heis --gens \"H(1,0,0),H(0,1,0)\" --L 4 --seed 5",
      "classify --group wreath --seed 5",
      "classify --group heis --seed 5",
      "verify-group-algebra --group heis --c 1 --d 1 --L 3 --D 6 --seed 5",
      "digit-sum --r 5/2 --N 12 --seed 5",
      "magnus --words \"ab,ba\" --D 4 --seed 5",
      "expand --series-file " + series.string() + " --invert --seed 5",
      "check-crossed --system z2-sign-twist --samples 1000 --seed 7",
      "pingpong --r 2 --t 1 --L 8 --seed 5"};
  const std::regex elapsed(R"("elapsed_ms": [0-9.eE+-]+,?)");
  for (const std::string& cmd : commands) {
    const auto a = run_binary(cmd), b = run_binary(cmd);
    c.require(a.first == b.first && a.first >= 0 && a.first <= 3, "unexpected exit for: " + cmd);
    c.require(!a.second.empty(), "no output for: " + cmd);
    c.require(std::regex_replace(a.second, elapsed, "") == std::regex_replace(b.second, elapsed, ""),
              "outputs differ for: " + cmd);
    const auto ta = run_binary(cmd + " --format text"), tb = run_binary(cmd + " --format text");
    c.require(ta.second == tb.second, "text outputs differ for: " + cmd);
  }
  fs::remove_all(dir);
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bi-invariance on 1000 random triples per group", bi_invariance},
      {"Magnus images of the 161 reduced words of length <= 4 are distinct", magnus_injectivity},
      {"BS(1,2) {tx,x} free at L=12; Heisenberg collision (xyyx, yxxy) at L=4", monoid_collisions},
      {"wreath {delta_0, t} free at L=10", wreath_freeness},
      {"digit sums for r in {2,3,5/2,7/3}, r=1 counterexample, r vs 1/r", digit_sums},
      {"ping-pong at r=2, t=1, L=8", pingpong},
      {"inverses and associativity in three crossed contexts at D=6", series_inverse_assoc},
      {"regroup round trip, multiplicativity and tau~ panel", regroup_quotient},
      {"crossed-system validity, diagonal changes, corrupted twisting", crossed_validity},
      {"Heisenberg units rank 53 at L=3 over Q and F5", heisenberg_units},
      {"augmentation of good preimages and multiplicativity", augmentation},
      {"CLI reports byte-identical across runs", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const long ms = static_cast<long>(ms_since(t0));
    std::cout << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << " (" << ms << " ms) "
              << criteria[i].first;
    if (!o.ok) std::cout << " -- " << o.note;
    std::cout << "\n";
    failures += !o.ok;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? 0 : 1;
}
