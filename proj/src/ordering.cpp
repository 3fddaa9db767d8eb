#include "psqm/ordering.hpp"

#include <algorithm>
#include <stdexcept>

namespace psqm::ordering {

namespace {

ExactScalar integer(const mpz_class& z) { return ExactScalar(Rational(z)); }

const ExactScalar& half_i() {
  static const ExactScalar kHalfI = ExactScalar::i() * ExactScalar::rational(1, 2);
  return kHalfI;
}

// m! r! / ((m-k)! (r-k)! k!) = k! C(m,k) C(r,k)
ExactScalar reorder_coefficient(unsigned k, unsigned m, unsigned r) {
  return integer(factorial(k) * binomial(m, k) * binomial(r, k));
}

// sum_l base^l l! C(m,l) C(r,l) X^{m-l, r-l} under tag `out`
OrderedPolynomial weyl_series(const ExactScalar& base, unsigned m, unsigned r, Ordering out) {
  OrderedPolynomial p(out);
  for (unsigned l = 0; l <= std::min(m, r); ++l) p.add_term({m - l, r - l}, weyl_coefficient(base, l, m, r));
  return p;
}

OrderedPolynomial reorder_series(const ExactScalar& unit, unsigned m, unsigned r, Ordering out, unsigned k_min) {
  OrderedPolynomial p(out);
  for (unsigned k = k_min; k <= std::min(m, r); ++k)
    p.add_term({m - k, r - k}, reorder_coefficient(k, m, r) * unit.pow(k));
  return p;
}

}  // namespace

CommutativePoly2 CommutativePoly2::monomial(unsigned i, unsigned j, ExactScalar coefficient) {
  CommutativePoly2 p;
  p.add_term(i, j, coefficient);
  return p;
}

ExactScalar CommutativePoly2::coefficient(unsigned i, unsigned j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? ExactScalar() : it->second;
}

void CommutativePoly2::add_term(unsigned i, unsigned j, const ExactScalar& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CommutativePoly2& CommutativePoly2::operator+=(const CommutativePoly2& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

CommutativePoly2& CommutativePoly2::operator*=(const ExactScalar& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= factor;
  return *this;
}

CommutativePoly2 CommutativePoly2::scaled_arguments(const ExactScalar& a, const ExactScalar& b) const {
  CommutativePoly2 out;
  for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c * a.pow(key.first) * b.pow(key.second));
  return out;
}

ExactScalar CommutativePoly2::evaluate(const ExactScalar& t, const ExactScalar& s) const {
  ExactScalar sum;
  for (const auto& [key, c] : terms_) sum += c * t.pow(key.first) * s.pow(key.second);
  return sum;
}

std::complex<double> CommutativePoly2::evaluate(std::complex<double> t, std::complex<double> s) const {
  std::complex<double> sum = 0.0;
  for (const auto& [key, c] : terms_)
    sum += c.to_complex() * std::pow(t, static_cast<int>(key.first)) * std::pow(s, static_cast<int>(key.second));
  return sum;
}

std::string CommutativePoly2::to_string(const char* t_name, const char* s_name) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Key, const ExactScalar*>> sorted;
  for (const auto& [key, c] : terms_) sorted.emplace_back(key, &c);
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    unsigned da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    return da != db ? da > db : a.first.first > b.first.first;
  });
  std::string out;
  for (const auto& [key, c] : sorted) {
    if (!out.empty()) out += " + ";
    out += "(" + c->to_string() + ")";
    if (key.first) out += std::string("*") + t_name + "^" + std::to_string(key.first);
    if (key.second) out += std::string("*") + s_name + "^" + std::to_string(key.second);
  }
  return out;
}

CommutativePoly2 hermite_two_var(unsigned m, unsigned r) {
  CommutativePoly2 h;
  const mpz_class mr = factorial(m) * factorial(r);
  for (unsigned l = 0; l <= std::min(m, r); ++l) {
    mpz_class den = factorial(l) * factorial(m - l) * factorial(r - l);
    mpz_class num = l % 2 == 0 ? mpz_class(mr) : mpz_class(-mr);
    h.add_term(m - l, r - l, ExactScalar(make_rational(num, den)));
  }
  return h;
}

CommutativePoly2 hermite_form_qp_to_weyl(unsigned m, unsigned r) {
  const ExactScalar root2 = ExactScalar::sqrt2();
  const ExactScalar i = ExactScalar::i();
  ExactScalar prefactor = root2.inverse().pow(m + r) * (-i).pow(r);
  return hermite_two_var(m, r).scaled_arguments(root2, i * root2) * prefactor;
}

CommutativePoly2 hermite_form_pq_to_weyl(unsigned m, unsigned r) {
  const ExactScalar root2 = ExactScalar::sqrt2();
  const ExactScalar i = ExactScalar::i();
  ExactScalar prefactor = root2.inverse().pow(m + r) * i.pow(r);
  return hermite_two_var(m, r).scaled_arguments(root2, -i * root2) * prefactor;
}

ExactScalar weyl_coefficient(const ExactScalar& base, unsigned l, unsigned m, unsigned r) {
  return base.pow(l) * integer(factorial(l) * binomial(r, l) * binomial(m, l));
}

OrderedPolynomial weyl_to_pq(unsigned m, unsigned r) { return weyl_series(half_i(), m, r, Ordering::PQ); }

OrderedPolynomial weyl_to_qp(unsigned m, unsigned r) { return weyl_series(-half_i(), m, r, Ordering::QP); }

OrderedPolynomial qp_to_weyl(unsigned m, unsigned r) { return weyl_series(half_i(), m, r, Ordering::Weyl); }

OrderedPolynomial pq_to_weyl(unsigned m, unsigned r) { return weyl_series(-half_i(), m, r, Ordering::Weyl); }

OrderedPolynomial qp_to_pq(unsigned m, unsigned r) { return reorder_series(ExactScalar::i(), m, r, Ordering::PQ, 0); }

OrderedPolynomial pq_to_qp(unsigned m, unsigned r) { return reorder_series(-ExactScalar::i(), m, r, Ordering::QP, 0); }

OrderedPolynomial commutator_closed_form(unsigned m, unsigned r, Ordering variant) {
  switch (variant) {
    case Ordering::PQ:
      return reorder_series(ExactScalar::i(), m, r, Ordering::PQ, 1);
    case Ordering::QP:
      // Q^m P^r - P^r Q^m with P^r Q^m from pq_to_qp: the k >= 1 tail enters negated.
      return -reorder_series(-ExactScalar::i(), m, r, Ordering::QP, 1);
    case Ordering::Weyl:
      break;
  }
  throw std::invalid_argument("commutator closed forms exist for PQ and QP order only");
}

OrderedPolynomial p_plus_q_power(unsigned n, Ordering target) {
  OrderedPolynomial out(target);
  for (unsigned l = 0; l <= n; ++l) {
    ExactScalar outer = integer(binomial(n, l));
    if (target == Ordering::Weyl) {
      out.add_term({l, n - l}, outer);
      continue;
    }
    // PQ: P^{l-k} Q^{n-l-k} with (i/2)^k; QP: Q^{l-k} P^{n-l-k} with (-i/2)^k.
    const ExactScalar base = target == Ordering::PQ ? half_i() : -half_i();
    for (unsigned k = 0; k <= std::min(l, n - l); ++k) {
      ExactScalar c = outer * weyl_coefficient(base, k, l, n - l);
      if (target == Ordering::PQ) {
        out.add_term({n - l - k, l - k}, c);
      } else {
        out.add_term({l - k, n - l - k}, c);
      }
    }
  }
  return out;
}

OrderedPolynomial convert(const OrderedPolynomial& p, Ordering target) {
  const Ordering from = p.ordering();
  if (from == target) return p;
  OrderedPolynomial (*map)(unsigned, unsigned) = nullptr;
  if (from == Ordering::PQ) map = target == Ordering::QP ? pq_to_qp : pq_to_weyl;
  if (from == Ordering::QP) map = target == Ordering::PQ ? qp_to_pq : qp_to_weyl;
  if (from == Ordering::Weyl) map = target == Ordering::PQ ? weyl_to_pq : weyl_to_qp;
  OrderedPolynomial out(target);
  for (const auto& [mono, c] : p.terms()) out += map(mono.m, mono.r) * c;
  return out;
}

CommutativePoly2 symbol_of(const OrderedPolynomial& p) {
  CommutativePoly2 out;
  for (const auto& [mono, c] : p.terms()) out.add_term(mono.m, mono.r, c);
  return out;
}

OrderedPolynomial weyl_from_symbol(const CommutativePoly2& symbol) {
  OrderedPolynomial out(Ordering::Weyl);
  for (const auto& [key, c] : symbol.terms()) out.add_term({key.first, key.second}, c);
  return out;
}

}  // namespace psqm::ordering
