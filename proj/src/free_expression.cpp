#include "psqm/free_expression.hpp"

#include <type_traits>

namespace psqm {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::Q:
      return "Q";
    case Symbol::P:
      return "P";
    case Symbol::A:
      return "a";
    case Symbol::Adag:
      return "adag";
  }
  return "?";
}

bool is_ladder(Symbol s) { return s == Symbol::A || s == Symbol::Adag; }

FreeExpression::FreeExpression() : node_(std::make_shared<const Node>(ExactScalar())) {}

FreeExpression::FreeExpression(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

FreeExpression FreeExpression::scalar(ExactScalar value) { return FreeExpression(Node(std::move(value))); }

FreeExpression FreeExpression::symbol(Symbol s) { return FreeExpression(Node(s)); }

FreeExpression FreeExpression::sum(std::vector<FreeExpression> terms) {
  return FreeExpression(Node(Sum{std::move(terms)}));
}

FreeExpression FreeExpression::product(std::vector<FreeExpression> factors) {
  return FreeExpression(Node(Product{std::move(factors)}));
}

FreeExpression FreeExpression::power(FreeExpression base, unsigned exponent) {
  return FreeExpression(Node(Power{std::move(base), exponent}));
}

FreeExpression FreeExpression::negate(FreeExpression operand) {
  return FreeExpression(Node(Negate{std::move(operand)}));
}

FreeExpression FreeExpression::ordered(OrderedPolynomial poly) { return FreeExpression(Node(std::move(poly))); }

namespace {

template <typename Pred>
bool any_symbol(const FreeExpression& e, Pred pred) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Symbol>) {
          return pred(n);
        } else if constexpr (std::is_same_v<T, FreeExpression::Sum>) {
          for (const auto& t : n.terms)
            if (any_symbol(t, pred)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, FreeExpression::Product>) {
          for (const auto& f : n.factors)
            if (any_symbol(f, pred)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, FreeExpression::Power>) {
          return any_symbol(n.base, pred);
        } else if constexpr (std::is_same_v<T, FreeExpression::Negate>) {
          return any_symbol(n.operand, pred);
        } else if constexpr (std::is_same_v<T, OrderedPolynomial>) {
          // Ordering blocks hold Q/P only.
          return !n.is_zero() && pred(Symbol::Q);
        } else {
          return false;
        }
      },
      e.node());
}

std::string ordered_debug(const OrderedPolynomial& p) {
  std::string out = to_string(p.ordering()) + "{";
  bool first = true;
  for (const auto& [mono, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")";
    if (mono.m) out += "*Q^" + std::to_string(mono.m);
    if (mono.r) out += "*P^" + std::to_string(mono.r);
  }
  return out + (first ? "0}" : "}");
}

}  // namespace

bool FreeExpression::contains_ladder() const {
  return any_symbol(*this, [](Symbol s) { return is_ladder(s); });
}

bool FreeExpression::contains_canonical() const {
  return any_symbol(*this, [](Symbol s) { return !is_ladder(s); });
}

std::string FreeExpression::to_string() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExactScalar>) {
          return "(" + n.to_string() + ")";
        } else if constexpr (std::is_same_v<T, Symbol>) {
          return symbol_name(n);
        } else if constexpr (std::is_same_v<T, Sum>) {
          std::string out = "(";
          for (std::size_t k = 0; k < n.terms.size(); ++k) {
            if (k) out += " + ";
            out += n.terms[k].to_string();
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, Product>) {
          std::string out = "(";
          for (std::size_t k = 0; k < n.factors.size(); ++k) {
            if (k) out += "*";
            out += n.factors[k].to_string();
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, Power>) {
          return n.base.to_string() + "^" + std::to_string(n.exponent);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + n.operand.to_string() + ")";
        } else {
          return ordered_debug(n);
        }
      },
      node());
}

FreeExpression operator+(const FreeExpression& a, const FreeExpression& b) { return FreeExpression::sum({a, b}); }

FreeExpression operator-(const FreeExpression& a, const FreeExpression& b) {
  return FreeExpression::sum({a, FreeExpression::negate(b)});
}

FreeExpression operator*(const FreeExpression& a, const FreeExpression& b) {
  return FreeExpression::product({a, b});
}

}  // namespace psqm
