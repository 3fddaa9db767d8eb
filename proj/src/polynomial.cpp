#include "psqm/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace psqm {

std::string to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::PQ:
      return "pq";
    case Ordering::QP:
      return "qp";
    case Ordering::Weyl:
      return "weyl";
  }
  return "?";
}

OrderedPolynomial OrderedPolynomial::monomial(Ordering ordering, unsigned m, unsigned r,
                                              ExactScalar coefficient) {
  OrderedPolynomial p(ordering);
  p.add_term({m, r}, coefficient);
  return p;
}

OrderedPolynomial OrderedPolynomial::constant(Ordering ordering, ExactScalar value) {
  return monomial(ordering, 0, 0, std::move(value));
}

unsigned OrderedPolynomial::max_total_degree() const {
  // Terms are sorted by descending total degree.
  return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

ExactScalar OrderedPolynomial::coefficient(unsigned m, unsigned r) const {
  auto it = terms_.find({m, r});
  return it == terms_.end() ? ExactScalar() : it->second;
}

void OrderedPolynomial::add_term(Monomial monomial, const ExactScalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OrderedPolynomial OrderedPolynomial::retagged(Ordering ordering) const {
  OrderedPolynomial out(ordering);
  out.terms_ = terms_;
  return out;
}

OrderedPolynomial OrderedPolynomial::operator-() const {
  OrderedPolynomial out(ordering_);
  for (const auto& [mono, c] : terms_) out.terms_.emplace(mono, -c);
  return out;
}

void OrderedPolynomial::check_tag(const OrderedPolynomial& other) const {
  if (other.ordering_ != ordering_)
    throw std::invalid_argument("cannot combine " + to_string(ordering_) + " and " +
                                to_string(other.ordering_) + " polynomials termwise");
}

OrderedPolynomial& OrderedPolynomial::operator+=(const OrderedPolynomial& other) {
  check_tag(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

OrderedPolynomial& OrderedPolynomial::operator-=(const OrderedPolynomial& other) {
  check_tag(other);
  for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
  return *this;
}

OrderedPolynomial& OrderedPolynomial::operator*=(const ExactScalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, c] : terms_) c *= factor;
  return *this;
}

ExactScalar LadderPolynomial::coefficient(unsigned j, unsigned k) const {
  auto it = terms_.find({j, k});
  return it == terms_.end() ? ExactScalar() : it->second;
}

void LadderPolynomial::add_term(LadderMonomial monomial, const ExactScalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

}  // namespace psqm
