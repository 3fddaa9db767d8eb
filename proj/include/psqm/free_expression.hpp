#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "psqm/exact_scalar.hpp"
#include "psqm/polynomial.hpp"

namespace psqm {

enum class Symbol { Q, P, A, Adag };

/// Surface spelling of a symbol: "Q", "P", "a", "adag".
const char* symbol_name(Symbol s);
bool is_ladder(Symbol s);

/// Unreduced expression tree over Q, P, a, a^dag and exact scalars.
/// Products keep their factor order. Nodes are immutable and shared.
class FreeExpression {
 public:
  struct Sum;
  struct Product;
  struct Power;
  struct Negate;
  using Node = std::variant<ExactScalar, Symbol, Sum, Product, Power, Negate, OrderedPolynomial>;

  FreeExpression();  // scalar zero

  static FreeExpression scalar(ExactScalar value);
  static FreeExpression symbol(Symbol s);
  static FreeExpression sum(std::vector<FreeExpression> terms);
  static FreeExpression product(std::vector<FreeExpression> factors);
  static FreeExpression power(FreeExpression base, unsigned exponent);
  static FreeExpression negate(FreeExpression operand);
  /// An ordering block: a polynomial read under its tag.
  static FreeExpression ordered(OrderedPolynomial poly);

  const Node& node() const;

  bool contains_ladder() const;
  bool contains_canonical() const;

  /// Debug rendering in the exprio surface syntax (fully parenthesised).
  std::string to_string() const;

  friend FreeExpression operator+(const FreeExpression& a, const FreeExpression& b);
  friend FreeExpression operator-(const FreeExpression& a, const FreeExpression& b);
  friend FreeExpression operator*(const FreeExpression& a, const FreeExpression& b);

 private:
  explicit FreeExpression(Node node);
  std::shared_ptr<const Node> node_;
};

struct FreeExpression::Sum {
  std::vector<FreeExpression> terms;
};
struct FreeExpression::Product {
  std::vector<FreeExpression> factors;
};
struct FreeExpression::Power {
  FreeExpression base;
  unsigned exponent = 0;
};
struct FreeExpression::Negate {
  FreeExpression operand;
};

inline const FreeExpression::Node& FreeExpression::node() const { return *node_; }

}  // namespace psqm
