#pragma once

// Noncommutative polynomials in (Q, P) and (a, a^dag), reduced to canonical
// order by literal rewriting under [Q, P] = i and [a, a^dag] = 1. This is the
// brute-force reference that every closed-form conversion is checked against.

#include <map>
#include <stdexcept>
#include <string>

#include "psqm/free_expression.hpp"
#include "psqm/polynomial.hpp"

namespace psqm::opalg {

/// A product of letters read left to right: 'Q', 'P', 'a' (annihilation)
/// and 'A' (creation).
using Word = std::string;
using WordPolynomial = std::map<Word, ExactScalar>;

/// Raised when an expression contains symbols the operation cannot handle.
class UnsupportedSymbol : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work done by one normal_order call.
struct RewriteStats {
  std::size_t rule_applications = 0;  ///< over all branches
  std::size_t longest_path = 0;       ///< most rule applications along one branch
};

/// Rewrites every word so that all `first` letters stand left of all
/// `second` letters, by repeatedly replacing the leftmost `second first` pair
/// with `first second + commutator`, where commutator = [second, first].
WordPolynomial normal_order(const WordPolynomial& input, char first, char second,
                            const ExactScalar& commutator, RewriteStats* stats = nullptr);

/// Word-level product, no reordering.
WordPolynomial multiply(const WordPolynomial& a, const WordPolynomial& b);
void accumulate(WordPolynomial& into, const WordPolynomial& add, const ExactScalar& scale = 1);

/// Expands the tree into words without any reordering. Ordering blocks are
/// expanded through to_words(). Exponential in the expression size; meant
/// for small oracle inputs.
WordPolynomial expand_words(const FreeExpression& e);

/// Operator words of a tagged polynomial. Weyl terms become the average over
/// every distinct arrangement of their m Q's and r P's.
WordPolynomial to_words(const OrderedPolynomial& p);

/// Average of all C(m+r, m) distinct words with m Q's and r P's.
WordPolynomial symmetrized_word(unsigned m, unsigned r);

/// Reads words already in P-before-Q (or Q-before-P) order as a tagged
/// polynomial. Throws std::invalid_argument if a word is out of order.
OrderedPolynomial from_ordered_words(const WordPolynomial& words, Ordering ordering);

/// Q and P to the left/right canonical order. Throws UnsupportedSymbol when
/// a ladder symbol is present.
OrderedPolynomial rewrite_to_pq(const FreeExpression& e);
OrderedPolynomial rewrite_to_qp(const FreeExpression& e);
OrderedPolynomial rewrite_words(const WordPolynomial& words, Ordering target);

/// Substitutes Q = (a + a^dag)/sqrt2, P = (a - a^dag)/(sqrt2 i) and normal
/// orders. Ladder symbols already present are kept as they are.
LadderPolynomial substitute_ladder(const FreeExpression& e);

/// Replaces a = (Q + iP)/sqrt2 and a^dag = (Q - iP)/sqrt2.
FreeExpression substitute_canonical(const FreeExpression& e);

/// [x, y] in PQ order.
OrderedPolynomial commutator(const FreeExpression& x, const FreeExpression& y);

/// PQ canonical form of any tagged polynomial, computed by rewriting only.
OrderedPolynomial canonical_pq(const OrderedPolynomial& p);

/// Operator equality, decided on PQ canonical forms.
bool poly_equal(const OrderedPolynomial& x, const OrderedPolynomial& y);

/// Formal adjoint: words reversed, coefficients conjugated. PQ and QP swap
/// tags; Weyl stays Weyl.
OrderedPolynomial adjoint(const OrderedPolynomial& p);

FreeExpression to_expression(const OrderedPolynomial& p);
FreeExpression to_expression(const LadderPolynomial& p);

}  // namespace psqm::opalg
