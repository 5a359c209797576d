#include "mns/regroup.hpp"

namespace mns {

namespace {

void require_same(const RegroupedSeries& a, const RegroupedSeries& b) {
  if (a.system().id() != b.system().id() || a.degree() != b.degree())
    throw PreconditionError("mismatched regrouped series contexts");
}

}  // namespace

Series RegroupedSeries::coefficient(const Element& alpha) const {
  auto it = cosets_.find(alpha);
  return it == cosets_.end() ? Series::zero(q_->subgroup_context(degree_)) : it->second;
}

void RegroupedSeries::add(const Element& alpha, const Series& s) {
  if (!(s.context() == q_->subgroup_context(degree_)))
    throw PreconditionError("coset coefficient has the wrong context: " + s.context().header());
  const std::int64_t base = weight(q_->representative(alpha));
  auto it = cosets_.try_emplace(alpha, q_->subgroup_context(degree_)).first;
  for (const auto& [n, c] : s.terms()) {
    if (base + weight(n) <= degree_) it->second.add_term(n, c);
  }
  if (it->second.is_zero()) cosets_.erase(it);
}

RegroupedSeries regroup(const Series& f, const QuotientSystemPtr& q) {
  if (!(f.context() == q->group_context(f.degree())))
    throw PreconditionError("regroup: series context '" + f.context().header() + "' does not match " + q->id());
  const CrossedSystem& base = q->base();
  RegroupedSeries out(q, f.degree());
  const SeriesContext nctx = q->subgroup_context(f.degree());
  for (const auto& [x, a] : f.terms()) {
    Element alpha = q->project(x);
    Element rep = q->representative(alpha);
    Element n = multiply(inverse(rep), x);
    out.add(alpha, Series::monomial(nctx, n, base.tau(rep, n).inverse() * a));
  }
  return out;
}

Series flatten(const RegroupedSeries& rf) {
  const QuotientSystem& q = rf.system();
  Series out(q.group_context(rf.degree()));
  for (const auto& [alpha, s] : rf.cosets()) {
    Element rep = q.representative(alpha);
    for (const auto& [n, c] : s.terms()) out.add_term(multiply(rep, n), q.base().tau(rep, n) * c);
  }
  return out;
}

RegroupedSeries regrouped_add(const RegroupedSeries& a, const RegroupedSeries& b) {
  require_same(a, b);
  RegroupedSeries out = a;
  for (const auto& [alpha, s] : b.cosets()) out.add(alpha, s);
  return out;
}

RegroupedSeries regrouped_multiply(const RegroupedSeries& a, const RegroupedSeries& b) {
  require_same(a, b);
  const QuotientSystem& q = a.system();
  const int degree = a.degree();
  RegroupedSeries out(a.system_ptr(), degree);
  for (const auto& [beta, f] : a.cosets()) {
    const std::int64_t wb = weight(q.representative(beta));
    for (const auto& [gamma, g] : b.cosets()) {
      if (wb + weight(q.representative(gamma)) > degree) continue;
      Series term = q.tau_tilde(beta, gamma, degree) * q.sigma_tilde(gamma, f) * g;
      out.add(multiply(beta, gamma), term);
    }
  }
  return out;
}

}  // namespace mns
