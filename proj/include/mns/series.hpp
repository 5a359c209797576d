#pragma once

// Truncated Malcev-Neumann series: finitely many terms xbar a_x supported on
// a graded monoid, keeping only weights <= D. Because the weight is additive
// and nonnegative on the monoid, no product of discarded terms can land at
// weight <= D, so every stored coefficient is exact.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mns/crossed_system.hpp"
#include "mns/groups.hpp"
#include "mns/scalars.hpp"

namespace mns {

struct SeriesContext {
  Monoid monoid;
  int degree = 0;
  CrossedSystemPtr crossed;

  SeriesContext(Monoid m, int d, CrossedSystemPtr c);

  const Field& field() const { return crossed->field(); }
  /// "monoid=<id> D=<int> crossed=<id>"
  std::string header() const;
  static SeriesContext parse_header(std::string_view line);

  friend bool operator==(const SeriesContext& a, const SeriesContext& b) {
    return a.degree == b.degree && a.monoid == b.monoid && a.crossed->id() == b.crossed->id();
  }
};

class Series {
 public:
  using Terms = std::map<Element, Scalar, ElementLess>;

  explicit Series(SeriesContext ctx) : ctx_(std::move(ctx)) {}

  static Series zero(const SeriesContext& ctx) { return Series(ctx); }
  static Series one(const SeriesContext& ctx);
  static Series constant(const SeriesContext& ctx, const Scalar& c);
  static Series monomial(const SeriesContext& ctx, const Element& x, const Scalar& c);

  const SeriesContext& context() const { return ctx_; }
  int degree() const { return ctx_.degree; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Element& x) const;
  /// Adds c to the coefficient of x. Terms of weight > D are dropped;
  /// elements outside the support monoid are rejected.
  void add_term(const Element& x, const Scalar& c);

  /// The same series viewed at a lower truncation degree.
  Series truncate(int degree) const;
  /// Highest weight among stored terms (-1 for the zero series).
  std::int64_t max_weight() const;

  /// Header line plus one "weight<TAB>element<TAB>coefficient" line per
  /// term, sorted by (weight, element string).
  std::string to_text() const;
  static Series parse_text(std::string_view text);

  friend bool operator==(const Series& a, const Series& b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

 private:
  SeriesContext ctx_;
  Terms terms_;
};

Series series_add(const Series& f, const Series& g);
Series series_subtract(const Series& f, const Series& g);
Series series_negate(const Series& f);
/// f * c with the scalar on the right (termwise, since 1bar is the unit).
Series series_scale(const Series& f, const Scalar& c);

/// Sparse twisted convolution:
///   (xbar a)(ybar b) = (xy)bar tau(x,y) a^sigma(y) b
Series series_multiply(const Series& f, const Series& g);

/// Two-sided inverse up to degree D. Requires the weight-0 part of f to be
/// a nonzero scalar multiple of the identity.
Series series_invert(const Series& f);

/// Termwise sum of a finite family sharing one context.
Series summable_sum(const std::vector<Series>& family);

inline Series operator+(const Series& f, const Series& g) { return series_add(f, g); }
inline Series operator-(const Series& f, const Series& g) { return series_subtract(f, g); }
inline Series operator*(const Series& f, const Series& g) { return series_multiply(f, g); }

}  // namespace mns
