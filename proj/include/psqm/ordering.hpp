#pragma once

// Closed-form conversions among P-Q, Q-P and Weyl ordering of Q^m P^r,
// generated from two-variable Hermite polynomial coefficients over exact
// scalars. opalg's rewriting is the independent check for every map here.

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "psqm/exact_scalar.hpp"
#include "psqm/polynomial.hpp"

namespace psqm::ordering {

/// Commutative polynomial in two variables (t, s); key (i, j) is t^i s^j.
/// No stored coefficient is zero.
class CommutativePoly2 {
 public:
  using Key = std::pair<unsigned, unsigned>;
  using Terms = std::map<Key, ExactScalar>;

  static CommutativePoly2 monomial(unsigned i, unsigned j, ExactScalar coefficient = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExactScalar coefficient(unsigned i, unsigned j) const;
  void add_term(unsigned i, unsigned j, const ExactScalar& coefficient);

  CommutativePoly2& operator+=(const CommutativePoly2& other);
  CommutativePoly2& operator*=(const ExactScalar& factor);
  friend CommutativePoly2 operator+(CommutativePoly2 a, const CommutativePoly2& b) { return a += b; }
  friend CommutativePoly2 operator*(CommutativePoly2 a, const ExactScalar& s) { return a *= s; }
  friend bool operator==(const CommutativePoly2&, const CommutativePoly2&) = default;

  /// p(a t, b s).
  CommutativePoly2 scaled_arguments(const ExactScalar& a, const ExactScalar& b) const;
  /// Exact value at (t, s).
  ExactScalar evaluate(const ExactScalar& t, const ExactScalar& s) const;
  std::complex<double> evaluate(std::complex<double> t, std::complex<double> s) const;

  /// "c*t^i*s^j + ..." in descending total degree, for diagnostics.
  std::string to_string(const char* t_name = "t", const char* s_name = "s") const;

 private:
  Terms terms_;
};

/// H_{m,r}(t, s) = sum_{l <= min(m,r)} m! r! (-1)^l / (l! (m-l)! (r-l)!) t^{m-l} s^{r-l}.
CommutativePoly2 hermite_two_var(unsigned m, unsigned r);

/// Literal Hermite forms of the Weyl images, before any coefficient
/// reduction:
///   Q^m P^r -> (1/sqrt2)^{m+r} (-i)^r H_{m,r}(sqrt2 t, i sqrt2 s)
///   P^r Q^m -> (1/sqrt2)^{m+r} ( i)^r H_{m,r}(sqrt2 t, -i sqrt2 s)
/// with t standing for Q and s for P inside the Weyl symbol.
CommutativePoly2 hermite_form_qp_to_weyl(unsigned m, unsigned r);
CommutativePoly2 hermite_form_pq_to_weyl(unsigned m, unsigned r);

/// Coefficient base^l l! C(m,l) C(r,l) shared by the Weyl conversions.
ExactScalar weyl_coefficient(const ExactScalar& base, unsigned l, unsigned m, unsigned r);

OrderedPolynomial weyl_to_pq(unsigned m, unsigned r);
OrderedPolynomial weyl_to_qp(unsigned m, unsigned r);
OrderedPolynomial qp_to_weyl(unsigned m, unsigned r);
OrderedPolynomial pq_to_weyl(unsigned m, unsigned r);
OrderedPolynomial qp_to_pq(unsigned m, unsigned r);
OrderedPolynomial pq_to_qp(unsigned m, unsigned r);

/// [Q^m, P^r] written in PQ or QP order from the k >= 1 tail of the
/// corresponding reordering sum.
OrderedPolynomial commutator_closed_form(unsigned m, unsigned r, Ordering variant);

/// (P + Q)^n: Weyl target gives sum_l C(n,l) weyl{Q^l P^(n-l)}; PQ and QP
/// targets substitute the Weyl-to-PQ / Weyl-to-QP formulas termwise.
OrderedPolynomial p_plus_q_power(unsigned n, Ordering target);

/// Operator-equal polynomial under `target`, extended linearly over the six
/// monomial maps. Identity when the tags already match.
OrderedPolynomial convert(const OrderedPolynomial& p, Ordering target);

/// Commutative symbol of a polynomial: term (m, r) becomes t^m s^r.
CommutativePoly2 symbol_of(const OrderedPolynomial& p);
/// Weyl polynomial whose symbol is `symbol`.
OrderedPolynomial weyl_from_symbol(const CommutativePoly2& symbol);

}  // namespace psqm::ordering
