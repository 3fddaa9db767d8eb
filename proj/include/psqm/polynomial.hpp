#pragma once

#include <compare>
#include <map>
#include <string>

#include "psqm/exact_scalar.hpp"

namespace psqm {

/// How the monomials of an OrderedPolynomial are to be read as operators.
enum class Ordering {
  PQ,    ///< term (m, r) means P^r Q^m
  QP,    ///< term (m, r) means Q^m P^r
  Weyl,  ///< term (m, r) means the symmetrized product of m Q's and r P's
};

std::string to_string(Ordering ordering);

/// Exponent pair of Q^m P^r.
struct Monomial {
  unsigned m = 0;  ///< power of Q
  unsigned r = 0;  ///< power of P

  unsigned total_degree() const { return m + r; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Render order: descending total degree, then descending power of Q.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
    return a.m > b.m;
  }
};

/// Finite linear combination of Q/P monomials under one ordering tag. No
/// stored coefficient is zero.
class OrderedPolynomial {
 public:
  using Terms = std::map<Monomial, ExactScalar, MonomialOrder>;

  explicit OrderedPolynomial(Ordering ordering = Ordering::PQ) : ordering_(ordering) {}

  static OrderedPolynomial monomial(Ordering ordering, unsigned m, unsigned r,
                                    ExactScalar coefficient = 1);
  static OrderedPolynomial constant(Ordering ordering, ExactScalar value);

  Ordering ordering() const { return ordering_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned max_total_degree() const;

  /// Coefficient of (m, r); zero when absent.
  ExactScalar coefficient(unsigned m, unsigned r) const;
  void add_term(Monomial monomial, const ExactScalar& coefficient);

  /// Same terms under a different tag. This is a relabelling, not a
  /// conversion; use ordering::convert for an operator-equal change of tag.
  OrderedPolynomial retagged(Ordering ordering) const;

  OrderedPolynomial operator-() const;
  OrderedPolynomial& operator+=(const OrderedPolynomial& other);
  OrderedPolynomial& operator-=(const OrderedPolynomial& other);
  OrderedPolynomial& operator*=(const ExactScalar& factor);

  friend OrderedPolynomial operator+(OrderedPolynomial a, const OrderedPolynomial& b) { return a += b; }
  friend OrderedPolynomial operator-(OrderedPolynomial a, const OrderedPolynomial& b) { return a -= b; }
  friend OrderedPolynomial operator*(OrderedPolynomial a, const ExactScalar& s) { return a *= s; }
  friend OrderedPolynomial operator*(const ExactScalar& s, OrderedPolynomial a) { return a *= s; }

  /// Structural equality: same tag and identical terms. Operator equality
  /// across tags is opalg::poly_equal.
  friend bool operator==(const OrderedPolynomial& a, const OrderedPolynomial& b) {
    return a.ordering_ == b.ordering_ && a.terms_ == b.terms_;
  }

 private:
  void check_tag(const OrderedPolynomial& other) const;

  Ordering ordering_;
  Terms terms_;
};

enum class LadderOrdering {
  Normal,      ///< term (j, k) means (a^dag)^j a^k
  Antinormal,  ///< term (j, k) means a^k (a^dag)^j
};

/// Exponent pair of a ladder monomial: j powers of a^dag, k powers of a.
struct LadderMonomial {
  unsigned j = 0;
  unsigned k = 0;
  friend bool operator==(const LadderMonomial&, const LadderMonomial&) = default;
};

struct LadderMonomialOrder {
  bool operator()(const LadderMonomial& a, const LadderMonomial& b) const {
    if (a.j + a.k != b.j + b.k) return a.j + a.k > b.j + b.k;
    return a.j > b.j;
  }
};

class LadderPolynomial {
 public:
  using Terms = std::map<LadderMonomial, ExactScalar, LadderMonomialOrder>;

  explicit LadderPolynomial(LadderOrdering ordering = LadderOrdering::Normal) : ordering_(ordering) {}

  LadderOrdering ordering() const { return ordering_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExactScalar coefficient(unsigned j, unsigned k) const;
  void add_term(LadderMonomial monomial, const ExactScalar& coefficient);

  friend bool operator==(const LadderPolynomial& a, const LadderPolynomial& b) {
    return a.ordering_ == b.ordering_ && a.terms_ == b.terms_;
  }

 private:
  LadderOrdering ordering_;
  Terms terms_;
};

}  // namespace psqm
