#pragma once

// Surface syntax for operator expressions:
//
//   expr    := term (('+' | '-') term)*
//   term    := '-'? factor ('*' factor)*
//   factor  := primary ('^' uint)?
//   primary := scalar | symbol | '(' expr ')' | block
//   block   := ('pq{' | 'qp{' | 'weyl{') expr '}'
//   scalar  := integer | integer '/' integer | 'i' | 'r2'
//   symbol  := 'Q' | 'P' | 'a' | 'adag'
//
// Products outside a block keep their order. Inside a block Q and P commute
// and the block is read under its ordering tag.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psqm/free_expression.hpp"
#include "psqm/polynomial.hpp"

namespace psqm::exprio {

/// Byte range [begin, end) in the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind {
  Symbol,
  Integer,
  Rational,
  ImaginaryUnit,
  Sqrt2,
  Plus,
  Minus,
  Star,
  Caret,
  LParen,
  RParen,
  OrderingOpen,
  CloseBrace,
  End,
};

const char* describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  Span span;
  std::string_view text;
  Symbol symbol = Symbol::Q;          // Symbol tokens
  Ordering ordering = Ordering::PQ;   // OrderingOpen tokens
  Rational value;                     // Integer and Rational tokens
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, Span span, std::vector<std::string> expected = {});

  const std::string& message() const { return message_; }
  Span span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

  /// Multi-line diagnostic: message, the offending line and a caret marker.
  std::string render(std::string_view source) const;

 private:
  std::string message_;
  Span span_;
  std::vector<std::string> expected_;
};

/// Splits text into tokens, ending with a single End token.
std::vector<Token> tokenize(std::string_view text);

/// Exponents and block degrees above these limits are rejected.
inline constexpr unsigned kMaxExponent = 1000;
inline constexpr unsigned kMaxBlockDegree = 256;
inline constexpr std::size_t kMaxNesting = 256;

FreeExpression parse(std::string_view text);

/// Parses text and reads it as a polynomial under `ordering`: a lone block
/// with that tag is returned as is, anything else is rewritten (Q/P only).
OrderedPolynomial parse_polynomial(std::string_view text, Ordering ordering);

/// "P^2*Q^2 + 2*i*P*Q + -1/2"; Weyl polynomials are wrapped in "weyl{...}".
std::string render(const OrderedPolynomial& p);
/// "adag^2*a + ..." for normal order, "a*adag^2 + ..." for antinormal.
std::string render(const LadderPolynomial& p);

/// JSON syntax tree, for tooling.
std::string to_json(const FreeExpression& e);
/// {"ordering": ..., "terms": [{"m", "r", "coefficient"}], "text": render(p)}
std::string to_json(const OrderedPolynomial& p);

}  // namespace psqm::exprio
