#include "mns/classify.hpp"

#include <algorithm>
#include <random>

namespace mns {

namespace {

bool is_identity(const Element& g) { return g == group_of(g).identity(); }

ConvexSubgroup trivial_subgroup() {
  return {"{1}", [](const Element& g) { return is_identity(g); }};
}

ConvexSubgroup whole_group(const Group& group) {
  return {"G", [group](const Element& g) { return group.owns(g); }};
}

// Samples a member of the subgroup by rejection from a projection of a
// random element; every built-in subgroup is a coordinate slice.
Element sample_member(const Group& group, const std::string& tag, std::mt19937_64& rng, int radius) {
  Element g = group.random_element(rng, radius);
  if (tag == "{1}") return group.identity();
  if (tag == "G") return g;
  if (auto* h = std::get_if<HeisenbergElement>(&g)) {
    if (tag == "Z(H)") return HeisenbergElement{0, 0, h->c};
    if (tag == "{(0,b,c)}") return HeisenbergElement{0, h->b, h->c};
  }
  if (auto* s = std::get_if<SemidirectElement>(&g)) {
    if (tag == "H") return SemidirectElement{s->h, 0, s->ratio};
  }
  if (auto* w = std::get_if<WreathElement>(&g)) {
    if (tag == "lamps") return WreathElement{w->f, 0};
    if (tag.rfind("B_", 0) == 0) {
      std::int64_t k = std::stoll(tag.substr(2));
      WreathElement out;
      for (const auto& [i, v] : w->f) out.f[std::min(i, k)] += v;
      std::erase_if(out.f, [](const auto& kv) { return kv.second == 0; });
      return out;
    }
  }
  return group.identity();
}

struct Checker {
  OrderTypeReport& report;
  void expect(bool ok, const std::string& what) {
    ++report.samples_checked;
    if (!ok && report.failures.size() < 8) report.failures.push_back(what);
  }
};

// A subgroup S is convex iff every g outside S lies on one side of all of S.
void check_convex(const Group& group, const ConvexSubgroup& s, std::mt19937_64& rng, std::size_t samples,
                  Checker& check) {
  for (std::size_t i = 0; i < samples; ++i) {
    Element g = group.random_element(rng, 4);
    if (s.contains(g)) continue;
    int side = 0;
    for (int j = 0; j < 16; ++j) {
      Element u = sample_member(group, s.tag, rng, j < 8 ? 4 : 60);
      int c = group_compare(g, u) < 0 ? -1 : 1;
      if (side == 0) side = c;
      if (c != side) {
        check.expect(false, to_string(g) + " lies between elements of " + s.tag);
        break;
      }
    }
    check.expect(true, "");
  }
}

void check_jump(const Group& group, const ConvexSubgroup& lower, const ConvexSubgroup& upper,
                ConvexJumpDescriptor& jump, const std::optional<Element>& conjugator, std::mt19937_64& rng,
                std::size_t samples, Checker& check) {
  bool all_central = true;
  for (std::size_t i = 0; i < samples; ++i) {
    Element h = sample_member(group, upper.tag, rng, 5);
    Element g = group.random_element(rng, 5);
    check.expect(upper.contains(h) && lower.contains(group.identity()), "sampled member outside " + upper.tag);
    check.expect(upper.contains(multiply(multiply(g, h), inverse(g))), upper.tag + " not normal");
    if (!lower.contains(commutator(h, g))) all_central = false;
  }
  if (jump.central) {
    check.expect(all_central, "jump (" + jump.lower + "," + jump.upper + ") has a non-central commutator");
    return;
  }
  check.expect(!all_central || conjugator.has_value(), "jump declared non-central but no witness");
  if (conjugator && jump.action_ratio) {
    // Conjugation by the witness scales H/N by the declared ratio.
    for (std::size_t i = 0; i < samples; ++i) {
      Element h = sample_member(group, upper.tag, rng, 5);
      Element c = multiply(multiply(*conjugator, h), inverse(*conjugator));
      const auto& hs = std::get<SemidirectElement>(h);
      const auto& cs = std::get<SemidirectElement>(c);
      check.expect(cs.n == 0 && cs.h == *jump.action_ratio * hs.h, "conjugator does not act by the ratio");
    }
    check.expect(*jump.action_ratio != Rational(1), "action ratio is 1");
  }
}

}  // namespace

ConvexSubgroup wreath_lamp_subgroup(std::int64_t k) {
  return {"B_" + std::to_string(k), [k](const Element& g) {
            const auto* w = std::get_if<WreathElement>(&g);
            return w && w->n == 0 && (w->f.empty() || w->f.rbegin()->first <= k);
          }};
}

std::vector<ConvexSubgroup> convex_chain(const Group& group) {
  switch (group.kind()) {
    case Group::Kind::heisenberg:
      return {trivial_subgroup(),
              {"Z(H)",
               [](const Element& g) {
                 const auto* h = std::get_if<HeisenbergElement>(&g);
                 return h && h->a == 0 && h->b == 0;
               }},
              {"{(0,b,c)}",
               [](const Element& g) {
                 const auto* h = std::get_if<HeisenbergElement>(&g);
                 return h && h->a == 0;
               }},
              whole_group(group)};
    case Group::Kind::semidirect:
      return {trivial_subgroup(),
              {"H",
               [group](const Element& g) {
                 return group.owns(g) && std::get<SemidirectElement>(g).n == 0;
               }},
              whole_group(group)};
    case Group::Kind::wreath:
      return {trivial_subgroup(), wreath_lamp_subgroup(-1), wreath_lamp_subgroup(0), wreath_lamp_subgroup(1),
              {"lamps",
               [](const Element& g) {
                 const auto* w = std::get_if<WreathElement>(&g);
                 return w && w->n == 0;
               }},
              whole_group(group)};
    default:
      throw PreconditionError("no order-type table for " + group.id());
  }
}

OrderTypeReport classify_order_type(const Group& group, std::uint64_t seed, std::size_t samples) {
  OrderTypeReport report;
  report.group_id = group.id();
  std::mt19937_64 rng(seed);
  Checker check{report};
  std::vector<ConvexSubgroup> chain = convex_chain(group);

  for (const ConvexSubgroup& s : chain) check_convex(group, s, rng, samples / 4 + 1, check);

  switch (group.kind()) {
    case Group::Kind::heisenberg: {
      report.type = 1;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        ConvexJumpDescriptor jump{group.id(), chain[i].tag, chain[i + 1].tag, true, std::nullopt};
        check_jump(group, chain[i], chain[i + 1], jump, std::nullopt, rng, samples, check);
        report.jumps.push_back(jump);
      }
      // x^-1 y^-1 x y generates the center
      check.expect(commutator(HeisenbergElement{1, 0, 0}, HeisenbergElement{0, 1, 0}) == Element(HeisenbergElement{0, 0, 1}),
                   "[x,y] is not z");
      break;
    }
    case Group::Kind::semidirect: {
      report.type = 2;
      Element x = SemidirectElement{Rational(0), 1, group.ratio()};
      check.expect(group.ratio() != Rational(1), "ratio 1 gives an abelian group (type 1)");
      ConvexJumpDescriptor low{group.id(), "{1}", "H", false, group.ratio()};
      check_jump(group, chain[0], chain[1], low, x, rng, samples, check);
      ConvexJumpDescriptor high{group.id(), "H", "G", true, std::nullopt};
      check_jump(group, chain[1], chain[2], high, std::nullopt, rng, samples, check);
      report.jumps = {low, high};
      report.conjugator = x;
      break;
    }
    case Group::Kind::wreath: {
      report.type = 3;
      ConvexSubgroup c = wreath_lamp_subgroup(0);
      ConvexSubgroup shrunk = wreath_lamp_subgroup(-1);
      Element b = WreathElement{{}, -1};
      report.convex_subgroup = c.tag;
      report.shrunk_subgroup = shrunk.tag;
      report.conjugator = b;
      for (std::size_t i = 0; i < samples; ++i) {
        Element u = sample_member(group, c.tag, rng, 5);
        Element conj = multiply(multiply(b, u), inverse(b));
        check.expect(shrunk.contains(conj), "b C b^-1 not inside B_-1");
        // and conversely every element of B_-1 is b u b^-1 for u = b^-1 v b in C
        Element v = sample_member(group, shrunk.tag, rng, 5);
        check.expect(c.contains(multiply(multiply(inverse(b), v), b)), "B_-1 not inside b C b^-1");
      }
      check.expect(c.contains(WreathElement{{{0, -1}}, 0}) && !shrunk.contains(WreathElement{{{0, -1}}, 0}),
                   "-delta_0 does not separate C from b C b^-1");
      break;
    }
    default:
      break;
  }
  report.witness_verified = report.failures.empty();
  return report;
}

}  // namespace mns
