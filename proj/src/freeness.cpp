#include "mns/freeness.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "mns/classify.hpp"
#include "mns/linalg.hpp"

namespace mns {

using nlohmann::ordered_json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified-up-to-bound";
    case Verdict::counterexample: return "counterexample";
    case Verdict::inconclusive: return "inconclusive-at-D";
  }
  return "?";
}

namespace {

Element evaluate_generator_word(const std::vector<Element>& gens, const GeneratorWord& w) {
  Element e = group_of(gens.front()).identity();
  for (std::size_t i : w) e = multiply(e, gens[i]);
  return e;
}

bool shortlex_less(const GeneratorWord& a, const GeneratorWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

FreenessReport free_monoid_check(const std::vector<Element>& generators, int max_length) {
  if (generators.size() < 2) throw PreconditionError("free_monoid_check needs at least two generators");
  const Group group = group_of(generators.front());
  for (const Element& g : generators)
    if (!group.owns(g)) throw PreconditionError("generator " + to_string(g) + " is not in " + group.id());

  const MonoidEnumeration elements = enumerate_monoid(generators, max_length);
  FreenessReport report;
  report.kind = "monoid";
  report.bounds.L = max_length;

  std::size_t words = 0;
  std::optional<std::pair<GeneratorWord, GeneratorWord>> best;
  for (const auto& [elem, ws] : elements) {
    words += ws.size();
    if (ws.size() < 2) continue;
    std::pair<GeneratorWord, GeneratorWord> cand{ws[0], ws[1]};
    if (!best || shortlex_less(cand.first, best->first) ||
        (cand.first == best->first && shortlex_less(cand.second, best->second)))
      best = cand;
  }

  ordered_json gens = ordered_json::array();
  for (const Element& g : generators) gens.push_back(to_string(g));
  report.details["group"] = group.id();
  report.details["generators"] = gens;
  report.details["words"] = words;
  report.details["distinct_elements"] = elements.size();

  if (best) {
    const Element u = evaluate_generator_word(generators, best->first);
    const Element v = evaluate_generator_word(generators, best->second);
    if (group_compare(u, v) != std::strong_ordering::equal)
      throw std::logic_error("monoid collision witness does not re-verify");
    report.verdict = Verdict::counterexample;
    report.witness = {{"words", {word_to_string(best->first), word_to_string(best->second)}},
                      {"element", to_string(u)}};
  }
  return report;
}

Rational digit_sum(const Rational& r, const std::vector<int>& exponents) {
  Rational s(0);
  for (int i : exponents) s = s + rational_power(r, i);
  return s;
}

FreenessReport digit_sum_check(const Rational& r, int max_exponent) {
  if (r.sign() <= 0) throw PreconditionError("digit sums need r > 0");
  if (max_exponent < 0) throw PreconditionError("negative maximal exponent");
  if (max_exponent > kDigitSumMaxExponent)
    throw GuardError("digit-sum bound N=" + std::to_string(max_exponent) + " exceeds " +
                     std::to_string(kDigitSumMaxExponent));

  const std::size_t count = std::size_t{1} << (max_exponent + 1);
  std::vector<Rational> powers;
  for (int i = 0; i <= max_exponent; ++i) powers.push_back(rational_power(r, i));
  std::vector<Rational> sums(count);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + powers[low];
  }

  std::vector<std::uint32_t> order(count - 1);
  std::iota(order.begin(), order.end(), 1u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sums[a] < sums[b]; });

  // among colliding pairs, the one whose larger mask is smallest
  std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
  for (std::size_t i = 0; i + 1 < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && sums[order[j]] == sums[order[i]]) ++j;
    if (j - i >= 2) {
      std::vector<std::uint32_t> group(order.begin() + i, order.begin() + j);
      std::sort(group.begin(), group.end());
      if (!best || group[1] < best->second) best = std::make_pair(group[0], group[1]);
    }
    i = j;
  }

  FreenessReport report;
  report.kind = "digit-sum";
  report.bounds.N = max_exponent;
  report.details["r"] = r.to_string();
  report.details["sums"] = count - 1;
  if (best) {
    auto subset = [](std::uint32_t mask) {
      std::vector<int> s;
      for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) s.push_back(i);
      return s;
    };
    const std::vector<int> s1 = subset(best->first), s2 = subset(best->second);
    const Rational v1 = digit_sum(r, s1), v2 = digit_sum(r, s2);
    if (v1 != v2) throw std::logic_error("digit-sum collision does not re-verify");
    report.verdict = Verdict::counterexample;
    report.witness = {{"S1", s1}, {"S2", s2}, {"sum", v1.to_string()}};
  }
  return report;
}

bool pingpong_membership(const SemidirectElement& g, const Rational& t) {
  const Rational s = g.h / t;
  if (s.denominator() != 1 || s.sign() <= 0) return false;
  const BigInt base = g.ratio.numerator();
  BigInt n = s.numerator();
  while (n != 0) {
    const BigInt digit = n % base;
    if (digit > 1) return false;
    n /= base;
  }
  return true;
}

FreenessReport pingpong_check(const Rational& r, const Rational& t, int max_length) {
  if (r.denominator() != 1 || r < Rational(2)) throw PreconditionError("membership oracle requires integer ratio");
  if (t.is_zero()) throw PreconditionError("ping-pong needs t != 0");
  if (max_length < 0) throw PreconditionError("negative word length bound");

  const Element tx = SemidirectElement{t, 1, r};
  const Element x = SemidirectElement{Rational(0), 1, r};
  const Element seed = SemidirectElement{t, 0, r};
  const std::vector<Element> gens{tx, x};

  FreenessReport report;
  report.kind = "ping-pong";
  report.bounds.L = max_length;
  report.details["r"] = r.to_string();
  report.details["t"] = t.to_string();
  report.details["generators"] = {to_string(tx), to_string(x)};
  report.details["seed"] = to_string(seed);

  auto fail = [&](const GeneratorWord& w, const Element& e, const std::string& reason) {
    report.verdict = Verdict::counterexample;
    report.witness = {{"word", word_to_string(w)}, {"element", to_string(e)}, {"reason", reason}};
  };

  // p applied to the seed means the product p * seed
  std::map<Element, GeneratorWord, ElementLess> image_of[2];
  std::vector<std::pair<Element, GeneratorWord>> level{{seed, {}}};
  if (!pingpong_membership(std::get<SemidirectElement>(seed), t)) {
    fail({}, seed, "seed not in A");
    return report;
  }
  std::size_t reached = 1;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::pair<Element, GeneratorWord>> next;
    for (const auto& [point, word] : level) {
      for (std::size_t i = 0; i < 2; ++i) {
        GeneratorWord w{i};
        w.insert(w.end(), word.begin(), word.end());
        Element e = multiply(gens[i], point);
        const auto& s = std::get<SemidirectElement>(e);
        if (!pingpong_membership(s, t)) {
          fail(w, e, "image not in A");
          return report;
        }
        const bool digit0 = ((s.h / t).numerator() % r.numerator()) == 1;
        if (digit0 != (i == 0)) {
          fail(w, e, i == 0 ? "tx-image without digit 1 at position 0" : "x-image with digit 1 at position 0");
          return report;
        }
        image_of[i].emplace(e, w);
        next.emplace_back(std::move(e), std::move(w));
        ++reached;
      }
    }
    level = std::move(next);
  }
  for (const auto& [e, w] : image_of[0]) {
    auto it = image_of[1].find(e);
    if (it != image_of[1].end()) {
      fail(w, e, "txA and xA meet (also reached by " + word_to_string(it->second) + ")");
      return report;
    }
  }
  report.details["points"] = reached;
  return report;
}

Type2Generators type2_generators(const Group& group, const Rational& t) {
  if (group.kind() != Group::Kind::semidirect) throw PreconditionError("type-2 generators need a BS(1,r) group");
  if (t.is_zero()) throw PreconditionError("type-2 generators need t != 0");
  const Rational r = group.ratio();
  if (r == Rational(1)) throw PreconditionError("r = 1: the group is abelian and has no free pair");
  Type2Generators out;
  Rational rn = r;
  while (!(rn >= Rational(2) || rn <= Rational(1, 2))) {
    rn = rn * r;
    ++out.power;
  }
  out.tx = SemidirectElement{t, out.power, r};
  out.x = SemidirectElement{Rational(0), out.power, r};
  return out;
}

Type3Generators type3_generators(const Group& group) {
  if (group.kind() != Group::Kind::wreath) throw PreconditionError("type-3 generators need the wreath group");
  const ConvexSubgroup c = wreath_lamp_subgroup(0), shrunk = wreath_lamp_subgroup(-1);
  Type3Generators out;
  out.b = inverse(WreathElement{{}, 1});
  out.a = WreathElement{{{0, -1}}, 0};
  const Element one = group.identity();

  bool ok = c.contains(out.a) && !shrunk.contains(out.a);
  ok = ok && group_compare(out.a, one) == std::strong_ordering::less &&
       group_compare(out.b, one) == std::strong_ordering::less;
  const Element b_inv = inverse(out.b);
  for (std::int64_t lo = -3; lo <= 0; ++lo)
    for (std::int64_t v = -2; v <= 2; ++v) {
      if (v == 0) continue;
      const Element lamp = WreathElement{{{lo, v}, {lo - 2, 1}}, 0};
      const Element conj = multiply(multiply(out.b, lamp), b_inv);
      ok = ok && c.contains(lamp) && shrunk.contains(conj);
    }
  out.positive_a = inverse(out.a);
  out.positive_b = inverse(out.b);
  out.steps_verified = ok;
  return out;
}

std::pair<Series, Series> type1_unit_generators(const SeriesContext& ctx, const Scalar& c, const Scalar& d) {
  if (ctx.monoid.group().kind() != Group::Kind::heisenberg)
    throw PreconditionError("type-1 unit generators need a Heisenberg context");
  if (c.is_zero() || d.is_zero()) throw PreconditionError("type-1 unit generators need nonzero scalars");
  Series u = Series::one(ctx), v = Series::one(ctx);
  u.add_term(HeisenbergElement{1, 0, 0}, c);
  v.add_term(HeisenbergElement{0, 1, 0}, d);
  return {u, v};
}

std::vector<Series> evaluate_words(const std::vector<Series>& units, const std::vector<FreeWord>& words) {
  if (units.empty()) throw PreconditionError("no units");
  const SeriesContext& ctx = units.front().context();
  std::vector<Series> inverses;
  for (const Series& u : units) {
    if (!(u.context() == ctx)) throw PreconditionError("units do not share a series context");
    if (u.coefficient(ctx.monoid.group().identity()).is_zero())
      throw PreconditionError("unit has a zero identity coefficient");
    inverses.push_back(series_invert(u));
  }
  std::map<FreeWord, Series> cache;
  cache.emplace(FreeWord(static_cast<int>(units.size())), Series::one(ctx));
  std::vector<Series> out;
  out.reserve(words.size());
  for (const FreeWord& w : words) {
    if (w.alphabet() != static_cast<int>(units.size())) throw PreconditionError("word alphabet does not match the units");
    // prefixes first; reduced words have reduced prefixes
    for (std::size_t len = 1; len <= w.length(); ++len) {
      std::vector<Letter> pre(w.letters().begin(), w.letters().begin() + len);
      FreeWord p = word_reduce(w.alphabet(), pre);
      if (cache.count(p)) continue;
      std::vector<Letter> parent(pre.begin(), pre.end() - 1);
      const Letter& l = pre.back();
      const Series& factor = l.sign > 0 ? units[l.symbol] : inverses[l.symbol];
      cache.emplace(p, cache.at(word_reduce(w.alphabet(), parent)) * factor);
    }
    out.push_back(cache.at(w));
  }
  return out;
}

FreenessReport group_algebra_independence(const std::vector<Series>& units, int max_length, int degree) {
  if (units.empty()) throw PreconditionError("no units");
  if (degree < 0 || degree > units.front().degree())
    throw PreconditionError("degree must lie in [0, " + std::to_string(units.front().degree()) + "]");
  std::vector<Series> truncated;
  for (const Series& u : units) truncated.push_back(u.truncate(degree));
  const SeriesContext& ctx = truncated.front().context();
  const Field field = ctx.field();

  const std::vector<FreeWord> words = enumerate_reduced_words(static_cast<int>(units.size()), max_length);
  const std::vector<Series> images = evaluate_words(truncated, words);

  // columns by (weight, element string)
  std::map<std::pair<std::int64_t, std::string>, std::size_t> columns;
  for (const Series& s : images)
    for (const auto& [x, c] : s.terms()) columns.emplace(std::make_pair(weight(x), to_string(x)), 0);
  std::map<std::string, std::size_t> index_of;
  std::size_t next = 0;
  for (auto& [key, idx] : columns) {
    idx = next++;
    index_of[key.second] = idx;
  }
  Matrix rows(images.size(), std::vector<Scalar>(columns.size(), field.zero()));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (const auto& [x, c] : images[i].terms()) rows[i][index_of.at(to_string(x))] = c;

  FreenessReport report;
  report.kind = "group-algebra";
  report.bounds.L = max_length;
  report.bounds.D = degree;
  const std::size_t rank = matrix_rank(rows, field);
  report.details["context"] = ctx.header();
  report.details["words"] = words.size();
  report.details["columns"] = columns.size();
  report.details["rank"] = rank;
  if (rank == words.size()) return report;

  // Positive words of length <= D have untruncated images, so a dependency
  // among them is genuine. Look there first.
  std::vector<std::size_t> exact_rows;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (!words[i].uses_inverses() && static_cast<int>(words[i].length()) <= degree) exact_rows.push_back(i);
  Matrix exact;
  for (std::size_t i : exact_rows) exact.push_back(rows[i]);
  std::vector<Scalar> dep(words.size(), field.zero());
  bool genuine = false;
  if (const EliminationResult e = eliminate(exact, field); e.dependency) {
    for (std::size_t k = 0; k < exact_rows.size(); ++k) dep[exact_rows[k]] = (*e.dependency)[k];
    genuine = true;
  } else {
    const EliminationResult all = eliminate(rows, field);
    if (all.rank != rank || !all.dependency) throw std::logic_error("elimination methods disagree on the rank");
    dep = *all.dependency;
  }

  Series check(ctx);
  ordered_json combination = ordered_json::array();
  for (std::size_t i = 0; i < dep.size(); ++i) {
    if (dep[i].is_zero()) continue;
    check = check + series_scale(images[i], dep[i]);
    combination.push_back({{"word", words[i].to_string()}, {"coefficient", dep[i].to_string()}});
  }
  if (!check.is_zero()) throw std::logic_error("dependency vector does not re-verify");
  report.verdict = genuine ? Verdict::counterexample : Verdict::inconclusive;
  report.witness = {{"combination", combination}, {"rank", rank}};
  return report;
}

}  // namespace mns
