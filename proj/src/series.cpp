#include "mns/series.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace mns {

namespace {

void require_same_context(const Series& f, const Series& g, const char* op) {
  if (!(f.context() == g.context()))
    throw PreconditionError(std::string(op) + ": mismatched series contexts '" + f.context().header() + "' and '" +
                            g.context().header() + "'");
}

}  // namespace

// ------------------------------------------------------------------ context

SeriesContext::SeriesContext(Monoid m, int d, CrossedSystemPtr c)
    : monoid(std::move(m)), degree(d), crossed(std::move(c)) {
  if (degree < 0) throw PreconditionError("negative truncation degree");
  if (!crossed) throw PreconditionError("series context without a crossed system");
  if (!crossed->applies_to(monoid.group()))
    throw PreconditionError("crossed system '" + crossed->id() + "' does not act on " + monoid.group().id());
  if (monoid.group().kind() == Group::Kind::free_monoid && !crossed->is_trivial())
    throw PreconditionError("free monoid series only support the trivial crossed system");
}

std::string SeriesContext::header() const {
  return "monoid=" + monoid.id() + " D=" + std::to_string(degree) + " crossed=" + crossed->id();
}

SeriesContext SeriesContext::parse_header(std::string_view line) {
  static const std::regex re(R"(monoid=(\S+) D=([0-9]+) crossed=(\S+))");
  std::string s(line);
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("bad series header '" + s + "'");
  try {
    return {Monoid::parse(m[1].str()), std::stoi(m[2].str()), crossed_registry(m[3].str())};
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

// ------------------------------------------------------------------- Series

Series Series::one(const SeriesContext& ctx) { return constant(ctx, ctx.field().one()); }

Series Series::constant(const SeriesContext& ctx, const Scalar& c) {
  return monomial(ctx, ctx.monoid.group().identity(), c);
}

Series Series::monomial(const SeriesContext& ctx, const Element& x, const Scalar& c) {
  Series s(ctx);
  s.add_term(x, c);
  return s;
}

Scalar Series::coefficient(const Element& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? ctx_.field().zero() : it->second;
}

void Series::add_term(const Element& x, const Scalar& c) {
  if (!ctx_.monoid.contains(x))
    throw PreconditionError(to_string(x) + " is outside the support monoid " + ctx_.monoid.id());
  if (c.field() != ctx_.field())
    throw PreconditionError("coefficient " + c.to_string() + " is not in " + ctx_.field().id());
  if (weight(x) > ctx_.degree || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Series Series::truncate(int new_degree) const {
  if (new_degree > ctx_.degree)
    throw PreconditionError("cannot raise truncation degree from " + std::to_string(ctx_.degree) + " to " +
                            std::to_string(new_degree));
  Series out(SeriesContext(ctx_.monoid, new_degree, ctx_.crossed));
  for (const auto& [x, c] : terms_) {
    if (weight(x) <= new_degree) out.terms_.emplace(x, c);
  }
  return out;
}

std::int64_t Series::max_weight() const {
  std::int64_t w = -1;
  for (const auto& kv : terms_) w = std::max(w, weight(kv.first));
  return w;
}

std::string Series::to_text() const {
  struct Line {
    std::int64_t w;
    std::string element;
    std::string coefficient;
  };
  std::vector<Line> lines;
  lines.reserve(terms_.size());
  for (const auto& [x, c] : terms_) lines.push_back({weight(x), to_string(x), c.to_string()});
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return std::tie(a.w, a.element) < std::tie(b.w, b.element); });
  std::string out = ctx_.header() + "\n";
  for (const Line& l : lines) out += std::to_string(l.w) + "\t" + l.element + "\t" + l.coefficient + "\n";
  return out;
}

Series Series::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty series text");
  Series s(SeriesContext::parse_header(line));
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected three tab-separated fields");
    std::int64_t w = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + t1, w);
    if (ec != std::errc{} || ptr != line.data() + t1) throw ParseError("line " + std::to_string(line_no) + ": bad weight");
    Element x = s.ctx_.monoid.group().parse_element(line.substr(t1 + 1, t2 - t1 - 1));
    Scalar c = s.ctx_.field().parse_scalar(line.substr(t2 + 1));
    if (!s.ctx_.monoid.contains(x)) throw ParseError("line " + std::to_string(line_no) + ": element outside the monoid");
    if (weight(x) != w) throw ParseError("line " + std::to_string(line_no) + ": weight does not match element");
    if (w > s.ctx_.degree) throw ParseError("line " + std::to_string(line_no) + ": weight exceeds D");
    if (c.is_zero()) throw ParseError("line " + std::to_string(line_no) + ": zero coefficient");
    if (s.terms_.count(x)) throw ParseError("line " + std::to_string(line_no) + ": duplicate element");
    s.terms_.emplace(std::move(x), std::move(c));
  }
  return s;
}

// --------------------------------------------------------------- arithmetic

Series series_add(const Series& f, const Series& g) {
  require_same_context(f, g, "series_add");
  Series out = f;
  for (const auto& [x, c] : g.terms()) out.add_term(x, c);
  return out;
}

Series series_negate(const Series& f) {
  Series out(f.context());
  for (const auto& [x, c] : f.terms()) out.add_term(x, -c);
  return out;
}

Series series_subtract(const Series& f, const Series& g) { return series_add(f, series_negate(g)); }

Series series_scale(const Series& f, const Scalar& c) {
  Series out(f.context());
  for (const auto& [x, a] : f.terms()) out.add_term(x, a * c);
  return out;
}

Series series_multiply(const Series& f, const Series& g) {
  require_same_context(f, g, "series_multiply");
  const SeriesContext& ctx = f.context();
  const CrossedSystem& system = *ctx.crossed;

  struct Right {
    const Element* z;
    const Scalar* b;
    std::int64_t w;
    Automorphism act;
  };
  std::vector<Right> right;
  right.reserve(g.size());
  for (const auto& [z, b] : g.terms()) right.push_back({&z, &b, weight(z), system.sigma(z)});

  Series out(ctx);
  for (const auto& [y, a] : f.terms()) {
    const std::int64_t wy = weight(y);
    for (const Right& r : right) {
      if (wy + r.w > ctx.degree) continue;
      Scalar c = a.apply(r.act) * *r.b;
      if (!system.is_trivial()) c = system.tau(y, *r.z) * c;
      out.add_term(multiply(y, *r.z), c);
    }
  }
  return out;
}

Series series_invert(const Series& f) {
  const SeriesContext& ctx = f.context();
  const Element id = ctx.monoid.group().identity();
  for (const auto& [x, c] : f.terms()) {
    if (weight(x) == 0 && !(x == id))
      throw PreconditionError("no truncated inverse: weight-0 part is not a scalar (term at " + to_string(x) + ")");
  }
  Scalar u = f.coefficient(id);
  if (u.is_zero()) throw PreconditionError("no truncated inverse: zero identity coefficient");

  // f u^-1 = 1 - n with n of positive weight, so (f u^-1)^-1 = sum_k n^k and
  // f^-1 = u^-1 (f u^-1)^-1.
  const Series u_inv = Series::constant(ctx, u.inverse());
  const Series normalized = series_multiply(f, u_inv);
  const Series n = series_subtract(Series::one(ctx), normalized);
  Series geometric = Series::one(ctx);
  for (int k = 0; k < ctx.degree; ++k) geometric = series_add(Series::one(ctx), series_multiply(n, geometric));
  return series_multiply(u_inv, geometric);
}

Series summable_sum(const std::vector<Series>& family) {
  if (family.empty()) throw PreconditionError("summable_sum of an empty family has no context");
  Series out(family.front().context());
  for (const Series& f : family) {
    require_same_context(out, f, "summable_sum");
    for (const auto& [x, c] : f.terms()) out.add_term(x, c);
  }
  return out;
}

}  // namespace mns
