#include "mns/groups.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace mns {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw PreconditionError("integer overflow in group arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw PreconditionError("integer overflow in group arithmetic");
  return r;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("not an integer: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string strip(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::strong_ordering to_ordering(int c) {
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

[[noreturn]] void mixed_instances(const Element& g, const Element& h) {
  throw PreconditionError("mixed group instances: " + to_string(g) + " and " + to_string(h));
}

bool same_instance(const Element& g, const Element& h) {
  if (g.index() != h.index()) return false;
  if (const auto* x = std::get_if<SemidirectElement>(&g)) return x->ratio == std::get<SemidirectElement>(h).ratio;
  if (const auto* x = std::get_if<AbelianElement>(&g))
    return x->coords.size() == std::get<AbelianElement>(h).coords.size();
  if (const auto* x = std::get_if<FreeMonoidWord>(&g)) return x->alphabet == std::get<FreeMonoidWord>(h).alphabet;
  return true;
}

// Wreath order: sign of (f1 - f2) at the largest index where they differ.
int compare_lamps(const std::map<std::int64_t, std::int64_t>& f1, const std::map<std::int64_t, std::int64_t>& f2) {
  auto i = f1.rbegin();
  auto j = f2.rbegin();
  while (i != f1.rend() || j != f2.rend()) {
    if (j == f2.rend() || (i != f1.rend() && i->first > j->first)) return i->second > 0 ? 1 : -1;
    if (i == f1.rend() || j->first > i->first) return j->second > 0 ? -1 : 1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

std::strong_ordering order_same_instance(const Element& g, const Element& h) {
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(h);
        if constexpr (std::is_same_v<T, HeisenbergElement>) {
          if (auto c = x.a <=> y.a; c != 0) return c;
          if (auto c = x.b <=> y.b; c != 0) return c;
          return x.c <=> y.c;
        } else if constexpr (std::is_same_v<T, SemidirectElement>) {
          if (auto c = x.n <=> y.n; c != 0) return c;
          return x.h <=> y.h;
        } else if constexpr (std::is_same_v<T, WreathElement>) {
          if (auto c = x.n <=> y.n; c != 0) return c;
          return to_ordering(compare_lamps(x.f, y.f));
        } else if constexpr (std::is_same_v<T, AbelianElement>) {
          return x.coords <=> y.coords;
        } else {
          if (auto c = x.letters.size() <=> y.letters.size(); c != 0) return c;
          return x.letters <=> y.letters;
        }
      },
      g);
}

}  // namespace

bool ElementLess::operator()(const Element& x, const Element& y) const {
  if (x.index() != y.index()) return x.index() < y.index();
  if (!same_instance(x, y)) {
    if (const auto* s = std::get_if<SemidirectElement>(&x)) return s->ratio < std::get<SemidirectElement>(y).ratio;
    if (const auto* s = std::get_if<AbelianElement>(&x))
      return s->coords.size() < std::get<AbelianElement>(y).coords.size();
    return std::get<FreeMonoidWord>(x).alphabet < std::get<FreeMonoidWord>(y).alphabet;
  }
  return order_same_instance(x, y) < 0;
}

// ------------------------------------------------------------------- Group

Group Group::semidirect(Rational ratio) {
  if (ratio.sign() <= 0) throw PreconditionError("semidirect ratio must be positive (order preservation)");
  Group g(Kind::semidirect);
  g.ratio_ = std::move(ratio);
  return g;
}

Group Group::abelian(int rank) {
  if (rank < 1) throw PreconditionError("abelian rank must be >= 1");
  Group g(Kind::abelian);
  g.rank_ = rank;
  return g;
}

Group Group::free_monoid(int alphabet) {
  if (alphabet < 1 || alphabet > 26) throw PreconditionError("free monoid alphabet must be in [1, 26]");
  Group g(Kind::free_monoid);
  g.rank_ = alphabet;
  return g;
}

Group Group::parse(std::string_view id_text) {
  std::string id = strip(id_text);
  try {
    if (id == "heis") return heisenberg();
    if (id == "wreath") return wreath();
    if (id == "bs12") return semidirect(Rational(2));
    if (id.rfind("bs:", 0) == 0) return semidirect(Rational::parse(id.substr(3)));
    if (id.rfind("z:", 0) == 0) return abelian(static_cast<int>(parse_int(id.substr(2))));
    if (id.rfind("free:", 0) == 0) return free_monoid(static_cast<int>(parse_int(id.substr(5))));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown group '" + id + "'");
}

std::string Group::id() const {
  switch (kind_) {
    case Kind::heisenberg: return "heis";
    case Kind::semidirect: return "bs:" + ratio_.to_string();
    case Kind::wreath: return "wreath";
    case Kind::abelian: return "z:" + std::to_string(rank_);
    case Kind::free_monoid: return "free:" + std::to_string(rank_);
  }
  return {};
}

Element Group::identity() const {
  switch (kind_) {
    case Kind::heisenberg: return HeisenbergElement{};
    case Kind::semidirect: return SemidirectElement{Rational(0), 0, ratio_};
    case Kind::wreath: return WreathElement{};
    case Kind::abelian: return AbelianElement{std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0)};
    case Kind::free_monoid: return FreeMonoidWord{{}, rank_};
  }
  return HeisenbergElement{};
}

bool Group::owns(const Element& g) const { return same_instance(identity(), g); }

Group group_of(const Element& g) {
  return std::visit(
      [](const auto& x) -> Group {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HeisenbergElement>) return Group::heisenberg();
        else if constexpr (std::is_same_v<T, SemidirectElement>) return Group::semidirect(x.ratio);
        else if constexpr (std::is_same_v<T, WreathElement>) return Group::wreath();
        else if constexpr (std::is_same_v<T, AbelianElement>) return Group::abelian(static_cast<int>(x.coords.size()));
        else return Group::free_monoid(x.alphabet);
      },
      g);
}

Element Group::parse_element(std::string_view text_view) const {
  std::string text = strip(text_view);
  std::smatch m;
  switch (kind_) {
    case Kind::heisenberg: {
      static const std::regex re(R"(H\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\))");
      if (!std::regex_match(text, m, re)) break;
      return HeisenbergElement{parse_int(m[1].str()), parse_int(m[2].str()), parse_int(m[3].str())};
    }
    case Kind::semidirect: {
      static const std::regex re(R"(B\(\s*([+-]?\d+(?:/\d+)?)\s*,\s*([+-]?\d+)\s*\)(?:@r=([+-]?\d+(?:/\d+)?))?)");
      if (!std::regex_match(text, m, re)) break;
      if (m[3].matched && Rational::parse(m[3].str()) != ratio_)
        throw ParseError("element '" + text + "' does not belong to " + id());
      return SemidirectElement{Rational::parse(m[1].str()), parse_int(m[2].str()), ratio_};
    }
    case Kind::wreath: {
      static const std::regex re(R"(W\(\s*\{([^}]*)\}\s*,\s*([+-]?\d+)\s*\))");
      if (!std::regex_match(text, m, re)) break;
      WreathElement w;
      w.n = parse_int(m[2].str());
      std::string body = strip(m[1].str());
      if (!body.empty()) {
        for (const std::string& entry : split(body, ',')) {
          auto colon = entry.find(':');
          if (colon == std::string::npos) throw ParseError("bad lamp entry '" + entry + "'");
          std::int64_t index = parse_int(strip(entry.substr(0, colon)));
          std::int64_t value = parse_int(strip(entry.substr(colon + 1)));
          if (w.f.count(index)) throw ParseError("duplicate lamp index in '" + text + "'");
          if (value != 0) w.f[index] = value;
        }
      }
      return w;
    }
    case Kind::abelian: {
      if (text.size() < 3 || text.rfind("Z(", 0) != 0 || text.back() != ')') break;
      AbelianElement e;
      for (const std::string& part : split(text.substr(2, text.size() - 3), ','))
        e.coords.push_back(parse_int(strip(part)));
      if (static_cast<int>(e.coords.size()) != rank_) throw ParseError("wrong rank in '" + text + "'");
      return e;
    }
    case Kind::free_monoid: {
      FreeMonoidWord w{{}, rank_};
      if (text == "1") return w;
      for (char ch : text) {
        if (ch < 'a' || ch >= 'a' + rank_) throw ParseError("letter outside alphabet in '" + text + "'");
        w.letters.push_back(static_cast<std::uint8_t>(ch - 'a'));
      }
      if (w.letters.empty()) break;
      return w;
    }
  }
  throw ParseError("cannot parse '" + text + "' as an element of " + id());
}

std::vector<Element> Group::designated_generators() const {
  switch (kind_) {
    case Kind::heisenberg: return {HeisenbergElement{1, 0, 0}, HeisenbergElement{0, 1, 0}};
    case Kind::semidirect: return {SemidirectElement{Rational(1), 1, ratio_}, SemidirectElement{Rational(0), 1, ratio_}};
    case Kind::wreath: return {WreathElement{{{0, 1}}, 0}, WreathElement{{}, 1}};
    case Kind::abelian:
    case Kind::free_monoid: {
      std::vector<Element> gens;
      for (int i = 0; i < rank_; ++i) {
        if (kind_ == Kind::abelian) {
          AbelianElement e{std::vector<std::int64_t>(static_cast<std::size_t>(rank_), 0)};
          e.coords[static_cast<std::size_t>(i)] = 1;
          gens.emplace_back(e);
        } else {
          gens.emplace_back(FreeMonoidWord{{static_cast<std::uint8_t>(i)}, rank_});
        }
      }
      return gens;
    }
  }
  return {};
}

Element Group::random_element(std::mt19937_64& rng, int radius) const {
  std::uniform_int_distribution<std::int64_t> coord(-radius, radius);
  switch (kind_) {
    case Kind::heisenberg: return HeisenbergElement{coord(rng), coord(rng), coord(rng)};
    case Kind::semidirect: {
      // Products of the generators x and t = (1, 0) reach exactly the
      // elements with h in Z[1/r]; sample as t^k x^n1 t^j x^n2.
      Element g = identity();
      for (int i = 0; i < 3; ++i) {
        g = multiply(g, power(SemidirectElement{Rational(1), 0, ratio_}, coord(rng)));
        g = multiply(g, power(SemidirectElement{Rational(0), 1, ratio_}, coord(rng)));
      }
      return g;
    }
    case Kind::wreath: {
      WreathElement w;
      std::uniform_int_distribution<int> count(0, 3);
      for (int i = count(rng); i > 0; --i) {
        std::int64_t v = coord(rng);
        if (v != 0) w.f[coord(rng)] = v;
      }
      w.n = coord(rng);
      return w;
    }
    case Kind::abelian: {
      AbelianElement e;
      for (int i = 0; i < rank_; ++i) e.coords.push_back(coord(rng));
      return e;
    }
    case Kind::free_monoid: {
      std::uniform_int_distribution<int> length(0, radius);
      std::uniform_int_distribution<int> letter(0, rank_ - 1);
      FreeMonoidWord w{{}, rank_};
      for (int i = length(rng); i > 0; --i) w.letters.push_back(static_cast<std::uint8_t>(letter(rng)));
      return w;
    }
  }
  return identity();
}

// -------------------------------------------------------------- arithmetic

Element multiply(const Element& g, const Element& h) {
  if (!same_instance(g, h)) mixed_instances(g, h);
  return std::visit(
      [&](const auto& x) -> Element {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(h);
        if constexpr (std::is_same_v<T, HeisenbergElement>) {
          return HeisenbergElement{checked_add(x.a, y.a), checked_add(x.b, y.b),
                                   checked_add(checked_add(x.c, y.c), checked_mul(x.a, y.b))};
        } else if constexpr (std::is_same_v<T, SemidirectElement>) {
          return SemidirectElement{x.h + rational_power(x.ratio, x.n) * y.h, checked_add(x.n, y.n), x.ratio};
        } else if constexpr (std::is_same_v<T, WreathElement>) {
          WreathElement out{x.f, checked_add(x.n, y.n)};
          for (const auto& [i, v] : y.f) {
            std::int64_t& slot = out.f[checked_add(i, x.n)];
            slot = checked_add(slot, v);
            if (slot == 0) out.f.erase(checked_add(i, x.n));
          }
          return out;
        } else if constexpr (std::is_same_v<T, AbelianElement>) {
          AbelianElement out = x;
          for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = checked_add(out.coords[i], y.coords[i]);
          return out;
        } else {
          FreeMonoidWord out = x;
          out.letters.insert(out.letters.end(), y.letters.begin(), y.letters.end());
          return out;
        }
      },
      g);
}

Element inverse(const Element& g) {
  return std::visit(
      [](const auto& x) -> Element {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HeisenbergElement>) {
          return HeisenbergElement{-x.a, -x.b, checked_mul(x.a, x.b) - x.c};
        } else if constexpr (std::is_same_v<T, SemidirectElement>) {
          return SemidirectElement{-(rational_power(x.ratio, -x.n) * x.h), -x.n, x.ratio};
        } else if constexpr (std::is_same_v<T, WreathElement>) {
          // (f, n)^-1 = (-shift_{-n} f, -n)
          WreathElement out{{}, -x.n};
          for (const auto& [i, v] : x.f) out.f[i - x.n] = -v;
          return out;
        } else if constexpr (std::is_same_v<T, AbelianElement>) {
          AbelianElement out = x;
          for (auto& c : out.coords) c = -c;
          return out;
        } else {
          if (!x.letters.empty()) throw PreconditionError("free monoid words have no inverses");
          return x;
        }
      },
      g);
}

Element commutator(const Element& x, const Element& y) {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

Element power(const Element& g, std::int64_t k) {
  Element base = k < 0 ? inverse(g) : g;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Element result = group_of(g).identity();
  while (e) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

std::strong_ordering group_compare(const Element& g, const Element& h) {
  if (!same_instance(g, h)) mixed_instances(g, h);
  return order_same_instance(g, h);
}

bool in_graded_monoid(const Element& g) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HeisenbergElement>) return x.a >= 0 && x.b >= 0;
        else if constexpr (std::is_same_v<T, SemidirectElement>) return x.n >= 0;
        else if constexpr (std::is_same_v<T, WreathElement>)
          return x.n >= 0 && std::all_of(x.f.begin(), x.f.end(), [](const auto& kv) { return kv.second > 0; });
        else if constexpr (std::is_same_v<T, AbelianElement>)
          return std::all_of(x.coords.begin(), x.coords.end(), [](std::int64_t c) { return c >= 0; });
        else return true;
      },
      g);
}

std::int64_t weight(const Element& g) {
  if (!in_graded_monoid(g)) throw PreconditionError(to_string(g) + " lies outside the graded monoid");
  return std::visit(
      [](const auto& x) -> std::int64_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HeisenbergElement>) return x.a + x.b;
        else if constexpr (std::is_same_v<T, SemidirectElement>) return x.n;
        else if constexpr (std::is_same_v<T, WreathElement>) {
          std::int64_t w = x.n;
          for (const auto& kv : x.f) w = checked_add(w, kv.second);
          return w;
        } else if constexpr (std::is_same_v<T, AbelianElement>) {
          std::int64_t w = 0;
          for (std::int64_t c : x.coords) w = checked_add(w, c);
          return w;
        } else {
          return static_cast<std::int64_t>(x.letters.size());
        }
      },
      g);
}

std::string to_string(const Element& g) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HeisenbergElement>) {
          return "H(" + std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) + ")";
        } else if constexpr (std::is_same_v<T, SemidirectElement>) {
          return "B(" + x.h.to_string() + "," + std::to_string(x.n) + ")@r=" + x.ratio.to_string();
        } else if constexpr (std::is_same_v<T, WreathElement>) {
          std::string s = "W({";
          bool first = true;
          for (const auto& [i, v] : x.f) {
            if (!first) s += ",";
            s += std::to_string(i) + ":" + std::to_string(v);
            first = false;
          }
          return s + "}," + std::to_string(x.n) + ")";
        } else if constexpr (std::is_same_v<T, AbelianElement>) {
          std::string s = "Z(";
          for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + std::to_string(x.coords[i]);
          return s + ")";
        } else {
          if (x.letters.empty()) return "1";
          std::string s;
          for (auto l : x.letters) s += static_cast<char>('a' + l);
          return s;
        }
      },
      g);
}

// ------------------------------------------------------------------ Monoid

Monoid Monoid::parse(std::string_view id_text) {
  std::string id = strip(id_text);
  auto slash = id.find('/');
  Group g = Group::parse(id.substr(0, slash));
  if (slash == std::string::npos) return positive(g);
  std::string part = id.substr(slash + 1);
  if (part == "center" && g.kind() == Group::Kind::heisenberg) return heisenberg_center();
  if (part == "base" && g.kind() == Group::Kind::semidirect) return semidirect_base(g.ratio());
  if (part == "last" && g.kind() == Group::Kind::abelian) return abelian_last_factor(g.rank());
  throw ParseError("unknown monoid '" + id + "'");
}

std::string Monoid::id() const {
  switch (part_) {
    case Part::positive: return group_.id();
    case Part::heisenberg_center: return group_.id() + "/center";
    case Part::semidirect_base: return group_.id() + "/base";
    case Part::abelian_last_factor: return group_.id() + "/last";
  }
  return {};
}

bool Monoid::contains(const Element& g) const {
  if (!group_.owns(g) || !in_graded_monoid(g)) return false;
  switch (part_) {
    case Part::positive: return true;
    case Part::heisenberg_center: {
      const auto& h = std::get<HeisenbergElement>(g);
      return h.a == 0 && h.b == 0;
    }
    case Part::semidirect_base: return std::get<SemidirectElement>(g).n == 0;
    case Part::abelian_last_factor: {
      const auto& c = std::get<AbelianElement>(g).coords;
      return std::all_of(c.begin(), c.end() - 1, [](std::int64_t v) { return v == 0; });
    }
  }
  return false;
}

// ------------------------------------------------------------- enumeration

std::string word_to_string(const GeneratorWord& w) {
  static const char* kNames = "xyzuvw";
  std::string s;
  for (std::size_t i : w) s += i < 6 ? std::string(1, kNames[i]) : "g" + std::to_string(i);
  return s.empty() ? "1" : s;
}

MonoidEnumeration enumerate_monoid(const std::vector<Element>& generators, int max_length) {
  if (generators.empty()) throw PreconditionError("no generators");
  if (max_length < 0) throw PreconditionError("negative word length bound");
  const Element id = group_of(generators.front()).identity();
  for (const Element& g : generators) {
    if (group_compare(id, g) != std::strong_ordering::less)
      throw PreconditionError("generator " + to_string(g) + " is not positive");
    if (!in_graded_monoid(g) || weight(g) < 1)
      throw PreconditionError("generator " + to_string(g) + " does not have positive weight");
  }

  MonoidEnumeration result;
  std::vector<std::pair<Element, GeneratorWord>> level{{id, {}}};
  result[id].push_back({});
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::pair<Element, GeneratorWord>> next;
    next.reserve(level.size() * generators.size());
    for (const auto& [elem, word] : level) {
      for (std::size_t i = 0; i < generators.size(); ++i) {
        GeneratorWord w = word;
        w.push_back(i);
        Element e = multiply(elem, generators[i]);
        result[e].push_back(w);
        next.emplace_back(std::move(e), std::move(w));
      }
    }
    level = std::move(next);
  }
  return result;
}

}  // namespace mns
