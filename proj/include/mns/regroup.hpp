#pragma once

// A series over G rewritten as a series over G/N with coefficients in the
// N-series ring: f = sum_alpha alphabar f_alpha, alphabar = xbar_alpha.

#include <map>

#include "mns/crossed.hpp"
#include "mns/series.hpp"

namespace mns {

class RegroupedSeries {
 public:
  using Cosets = std::map<Element, Series, ElementLess>;

  RegroupedSeries(QuotientSystemPtr q, int degree) : q_(std::move(q)), degree_(degree) {}

  const QuotientSystem& system() const { return *q_; }
  const QuotientSystemPtr& system_ptr() const { return q_; }
  int degree() const { return degree_; }
  const Cosets& cosets() const { return cosets_; }
  /// The N-series attached to a coset (zero if absent).
  Series coefficient(const Element& alpha) const;

  /// Adds s (an N-series) to the coefficient of alpha, dropping N-terms whose
  /// total weight w(x_alpha) + w(n) exceeds D.
  void add(const Element& alpha, const Series& s);

  friend bool operator==(const RegroupedSeries& a, const RegroupedSeries& b) {
    return a.q_->id() == b.q_->id() && a.degree_ == b.degree_ && a.cosets_ == b.cosets_;
  }

 private:
  QuotientSystemPtr q_;
  int degree_;
  Cosets cosets_;
};

/// x = x_alpha n gives xbar a = alphabar nbar tau(x_alpha, n)^-1 a.
RegroupedSeries regroup(const Series& f, const QuotientSystemPtr& q);
/// Inverse of regroup.
Series flatten(const RegroupedSeries& rf);

RegroupedSeries regrouped_add(const RegroupedSeries& a, const RegroupedSeries& b);
/// A B = sum_alpha alphabar ( sum_{beta gamma = alpha} tau~(beta,gamma) f_beta^sigma~(gamma) g_gamma ).
RegroupedSeries regrouped_multiply(const RegroupedSeries& a, const RegroupedSeries& b);

}  // namespace mns
