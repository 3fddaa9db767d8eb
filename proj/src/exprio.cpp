#include "psqm/exprio.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"
#include "psqm/opalg.hpp"
#include "psqm/ordering.hpp"

namespace psqm::exprio {

const char* describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Symbol:
      return "symbol";
    case TokenKind::Integer:
      return "integer";
    case TokenKind::Rational:
      return "rational";
    case TokenKind::ImaginaryUnit:
      return "'i'";
    case TokenKind::Sqrt2:
      return "'r2'";
    case TokenKind::Plus:
      return "'+'";
    case TokenKind::Minus:
      return "'-'";
    case TokenKind::Star:
      return "'*'";
    case TokenKind::Caret:
      return "'^'";
    case TokenKind::LParen:
      return "'('";
    case TokenKind::RParen:
      return "')'";
    case TokenKind::OrderingOpen:
      return "ordering block";
    case TokenKind::CloseBrace:
      return "'}'";
    case TokenKind::End:
      return "end of input";
  }
  return "?";
}

ParseError::ParseError(std::string message, Span span, std::vector<std::string> expected)
    : std::runtime_error(message), message_(std::move(message)), span_(span), expected_(std::move(expected)) {}

std::string ParseError::render(std::string_view source) const {
  const std::size_t begin = std::min(span_.begin, source.size());
  std::size_t line_start = 0, line_no = 1;
  for (std::size_t k = 0; k < begin; ++k) {
    if (source[k] == '\n') {
      line_start = k + 1;
      ++line_no;
    }
  }
  std::size_t line_end = source.find('\n', begin);
  if (line_end == std::string_view::npos) line_end = source.size();

  std::ostringstream os;
  os << "parse error at " << line_no << ':' << (begin - line_start + 1) << ": " << message_;
  if (!expected_.empty()) {
    os << " (expected ";
    for (std::size_t k = 0; k < expected_.size(); ++k) os << (k ? ", " : "") << expected_[k];
    os << ')';
  }
  os << '\n' << "  " << source.substr(line_start, line_end - line_start) << '\n' << "  ";
  os << std::string(begin - line_start, ' ');
  std::size_t width = std::max<std::size_t>(1, std::min(span_.end, line_end) - begin);
  os << std::string(width, '^');
  return os.str();
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

Token make(TokenKind kind, std::string_view text, std::size_t begin, std::size_t end) {
  Token t;
  t.kind = kind;
  t.span = {begin, end};
  t.text = text.substr(begin, end - begin);
  return t;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t k = 0;
  const std::size_t n = text.size();
  while (k < n) {
    const char c = text[k];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++k;
      continue;
    }
    const std::size_t begin = k;
    if (is_digit(c)) {
      while (k < n && is_digit(text[k])) ++k;
      mpz_class num(std::string(text.substr(begin, k - begin)), 10);
      if (k < n && text[k] == '/') {
        std::size_t den_begin = k + 1;
        std::size_t e = den_begin;
        while (e < n && is_digit(text[e])) ++e;
        if (e == den_begin) throw ParseError("rational needs a denominator", {k, k + 1}, {"integer"});
        mpz_class den(std::string(text.substr(den_begin, e - den_begin)), 10);
        if (den == 0) throw ParseError("zero denominator", {begin, e});
        k = e;
        if (k < n && is_word_char(text[k])) {
          std::size_t w = k;
          while (w < n && is_word_char(text[w])) ++w;
          throw ParseError("number runs into identifier", {begin, w}, {"'*'"});
        }
        Token t = make(TokenKind::Rational, text, begin, k);
        t.value = make_rational(num, den);
        out.push_back(std::move(t));
        continue;
      }
      if (k < n && is_word_char(text[k])) {
        std::size_t w = k;
        while (w < n && is_word_char(text[w])) ++w;
        throw ParseError("number runs into identifier", {begin, w}, {"'*'"});
      }
      Token t = make(TokenKind::Integer, text, begin, k);
      t.value = Rational(num);
      out.push_back(std::move(t));
      continue;
    }
    if (is_word_char(c)) {
      while (k < n && is_word_char(text[k])) ++k;
      std::string_view word = text.substr(begin, k - begin);
      if (k < n && text[k] == '{') {
        Token t = make(TokenKind::OrderingOpen, text, begin, k + 1);
        if (word == "pq") {
          t.ordering = Ordering::PQ;
        } else if (word == "qp") {
          t.ordering = Ordering::QP;
        } else if (word == "weyl") {
          t.ordering = Ordering::Weyl;
        } else {
          throw ParseError("unknown ordering '" + std::string(word) + "'", {begin, k + 1},
                           {"'pq{'", "'qp{'", "'weyl{'"});
        }
        ++k;
        out.push_back(std::move(t));
        continue;
      }
      Token t = make(TokenKind::Symbol, text, begin, k);
      if (word == "Q") {
        t.symbol = Symbol::Q;
      } else if (word == "P") {
        t.symbol = Symbol::P;
      } else if (word == "a") {
        t.symbol = Symbol::A;
      } else if (word == "adag") {
        t.symbol = Symbol::Adag;
      } else if (word == "i") {
        t.kind = TokenKind::ImaginaryUnit;
      } else if (word == "r2") {
        t.kind = TokenKind::Sqrt2;
      } else {
        throw ParseError("unknown identifier '" + std::string(word) + "'", {begin, k},
                         {"Q", "P", "a", "adag", "i", "r2"});
      }
      out.push_back(std::move(t));
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+':
        kind = TokenKind::Plus;
        break;
      case '-':
        kind = TokenKind::Minus;
        break;
      case '*':
        kind = TokenKind::Star;
        break;
      case '^':
        kind = TokenKind::Caret;
        break;
      case '(':
        kind = TokenKind::LParen;
        break;
      case ')':
        kind = TokenKind::RParen;
        break;
      case '}':
        kind = TokenKind::CloseBrace;
        break;
      default: {
        // Report whole UTF-8 sequences rather than a lone lead byte.
        std::size_t e = k + 1;
        while (e < n && (static_cast<unsigned char>(text[e]) & 0xC0) == 0x80) ++e;
        throw ParseError("unexpected character", {begin, e});
      }
    }
    out.push_back(make(kind, text, begin, k + 1));
    ++k;
  }
  out.push_back(make(TokenKind::End, text, n, n));
  return out;
}

namespace {

// Commutative value of a block subexpression.
OrderedPolynomial block_product(const OrderedPolynomial& x, const OrderedPolynomial& y) {
  OrderedPolynomial out(x.ordering());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) out.add_term({a.m + b.m, a.r + b.r}, ca * cb);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

  FreeExpression parse_all() {
    FreeExpression e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(message, peek().span, std::move(expected));
  }

  void expect_end() {
    if (peek().kind == TokenKind::End) return;
    if (peek().kind == TokenKind::RParen) fail("unmatched ')'", {"operator", "end of input"});
    if (peek().kind == TokenKind::CloseBrace) fail("unmatched '}'", {"operator", "end of input"});
    fail("missing operator before " + std::string(describe(peek().kind)), {"'+'", "'-'", "'*'", "'^'"});
  }

  struct DepthGuard {
    std::size_t& depth;
    DepthGuard(std::size_t& d, Span span) : depth(d) {
      if (++depth > kMaxNesting) throw ParseError("nesting too deep", span);
    }
    ~DepthGuard() { --depth; }
  };

  // Free (noncommutative) mode.

  FreeExpression expr() {
    std::vector<FreeExpression> terms{term()};
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      bool minus = advance().kind == TokenKind::Minus;
      FreeExpression t = term();
      terms.push_back(minus ? FreeExpression::negate(t) : t);
    }
    return terms.size() == 1 ? terms.front() : FreeExpression::sum(std::move(terms));
  }

  FreeExpression term() {
    bool negative = false;
    if (peek().kind == TokenKind::Minus) {
      advance();
      negative = true;
    }
    std::vector<FreeExpression> factors{factor()};
    while (peek().kind == TokenKind::Star) {
      advance();
      factors.push_back(factor());
    }
    FreeExpression t = factors.size() == 1 ? factors.front() : FreeExpression::product(std::move(factors));
    return negative ? FreeExpression::negate(t) : t;
  }

  FreeExpression factor() {
    FreeExpression base = primary();
    if (peek().kind != TokenKind::Caret) return base;
    advance();
    return FreeExpression::power(base, exponent());
  }

  unsigned exponent() {
    if (peek().kind != TokenKind::Integer) fail("exponent must be a non-negative integer", {"integer"});
    const Token& t = advance();
    if (cmp(t.value, kMaxExponent) > 0)
      throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), t.span);
    return static_cast<unsigned>(t.value.get_num().get_ui());
  }

  FreeExpression primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer:
      case TokenKind::Rational:
        advance();
        return FreeExpression::scalar(ExactScalar(t.value));
      case TokenKind::ImaginaryUnit:
        advance();
        return FreeExpression::scalar(ExactScalar::i());
      case TokenKind::Sqrt2:
        advance();
        return FreeExpression::scalar(ExactScalar::sqrt2());
      case TokenKind::Symbol:
        advance();
        return FreeExpression::symbol(t.symbol);
      case TokenKind::LParen: {
        DepthGuard guard(depth_, t.span);
        advance();
        FreeExpression inner = expr();
        close(TokenKind::RParen, t);
        return inner;
      }
      case TokenKind::OrderingOpen: {
        DepthGuard guard(depth_, t.span);
        advance();
        OrderedPolynomial p = block_expr(t.ordering);
        close(TokenKind::CloseBrace, t);
        return FreeExpression::ordered(std::move(p));
      }
      default:
        fail(peek().kind == TokenKind::End ? "unexpected end of input"
                                           : "unexpected " + std::string(describe(peek().kind)),
             {"scalar", "symbol", "'('", "ordering block"});
    }
  }

  void close(TokenKind kind, const Token& opener) {
    if (peek().kind == kind) {
      advance();
      return;
    }
    std::string what = kind == TokenKind::RParen ? "')'" : "'}'";
    if (peek().kind == TokenKind::End)
      throw ParseError("unclosed " + std::string(describe(opener.kind)), opener.span, {what});
    fail("expected " + what, {what, "operator"});
  }

  // Block (commutative) mode.

  OrderedPolynomial block_expr(Ordering tag) {
    OrderedPolynomial acc = block_term(tag);
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      bool minus = advance().kind == TokenKind::Minus;
      OrderedPolynomial t = block_term(tag);
      if (minus) {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  OrderedPolynomial block_term(Ordering tag) {
    bool negative = false;
    if (peek().kind == TokenKind::Minus) {
      advance();
      negative = true;
    }
    Span start = peek().span;
    OrderedPolynomial acc = block_factor(tag);
    while (peek().kind == TokenKind::Star) {
      advance();
      OrderedPolynomial f = block_factor(tag);
      check_degree(acc.max_total_degree() + f.max_total_degree(), {start.begin, peek().span.begin});
      acc = block_product(acc, f);
    }
    return negative ? -acc : acc;
  }

  OrderedPolynomial block_factor(Ordering tag) {
    Span start = peek().span;
    OrderedPolynomial base = block_primary(tag);
    if (peek().kind != TokenKind::Caret) return base;
    advance();
    unsigned n = exponent();
    check_degree(static_cast<unsigned long>(base.max_total_degree()) * n, {start.begin, tokens_[pos_ - 1].span.end});
    OrderedPolynomial out = OrderedPolynomial::constant(tag, 1);
    for (unsigned k = 0; k < n; ++k) out = block_product(out, base);
    return out;
  }

  void check_degree(unsigned long degree, Span span) const {
    if (degree > kMaxBlockDegree)
      throw ParseError("ordering block degree exceeds " + std::to_string(kMaxBlockDegree), span);
  }

  OrderedPolynomial block_primary(Ordering tag) {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer:
      case TokenKind::Rational:
        advance();
        return OrderedPolynomial::constant(tag, ExactScalar(t.value));
      case TokenKind::ImaginaryUnit:
        advance();
        return OrderedPolynomial::constant(tag, ExactScalar::i());
      case TokenKind::Sqrt2:
        advance();
        return OrderedPolynomial::constant(tag, ExactScalar::sqrt2());
      case TokenKind::Symbol:
        if (is_ladder(t.symbol))
          throw ParseError("ladder symbol '" + std::string(t.text) + "' inside an ordering block", t.span,
                           {"Q", "P"});
        advance();
        return t.symbol == Symbol::Q ? OrderedPolynomial::monomial(tag, 1, 0)
                                     : OrderedPolynomial::monomial(tag, 0, 1);
      case TokenKind::LParen: {
        DepthGuard guard(depth_, t.span);
        advance();
        OrderedPolynomial inner = block_expr(tag);
        close(TokenKind::RParen, t);
        return inner;
      }
      case TokenKind::OrderingOpen:
        throw ParseError("ordering blocks cannot be nested", t.span);
      default:
        fail(peek().kind == TokenKind::End ? "unexpected end of input"
                                           : "unexpected " + std::string(describe(peek().kind)),
             {"scalar", "Q", "P", "'('"});
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

std::string coefficient_prefix(const ExactScalar& c) {
  if (c.is_one()) return "";
  if (c == ExactScalar(-1)) return "-";
  if (c.nonzero_components() > 1) return "(" + c.to_string() + ")*";
  return c.to_string() + "*";
}

std::string power_text(const char* name, unsigned n) {
  if (n == 0) return "";
  return n == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(n);
}

std::string join_word(const std::string& left, const std::string& right) {
  if (left.empty()) return right;
  if (right.empty()) return left;
  return left + "*" + right;
}

std::string render_term(const ExactScalar& c, const std::string& word) {
  if (word.empty()) return c.to_string();
  return coefficient_prefix(c) + word;
}

}  // namespace

FreeExpression parse(std::string_view text) { return Parser(text).parse_all(); }

OrderedPolynomial parse_polynomial(std::string_view text, Ordering ordering) {
  FreeExpression e = parse(text);
  if (const auto* block = std::get_if<OrderedPolynomial>(&e.node()); block && block->ordering() == ordering)
    return *block;
  if (e.contains_ladder())
    throw ParseError("ladder symbols cannot be read as a Q/P polynomial", {0, text.size()});
  switch (ordering) {
    case Ordering::PQ:
      return opalg::rewrite_to_pq(e);
    case Ordering::QP:
      return opalg::rewrite_to_qp(e);
    case Ordering::Weyl:
      return ordering::convert(opalg::rewrite_to_pq(e), Ordering::Weyl);
  }
  return OrderedPolynomial(ordering);
}

std::string render(const OrderedPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string body;
  for (const auto& [mono, c] : p.terms()) {
    if (!body.empty()) body += " + ";
    std::string q = power_text("Q", mono.m), pp = power_text("P", mono.r);
    body += render_term(c, p.ordering() == Ordering::PQ ? join_word(pp, q) : join_word(q, pp));
  }
  return p.ordering() == Ordering::Weyl ? "weyl{" + body + "}" : body;
}

std::string render(const LadderPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string body;
  for (const auto& [mono, c] : p.terms()) {
    if (!body.empty()) body += " + ";
    std::string up = power_text("adag", mono.j), down = power_text("a", mono.k);
    body += render_term(c, p.ordering() == LadderOrdering::Normal ? join_word(up, down) : join_word(down, up));
  }
  return body;
}

namespace {

nlohmann::json polynomial_json(const OrderedPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, c] : p.terms())
    terms.push_back({{"m", mono.m}, {"r", mono.r}, {"coefficient", c.to_string()}});
  return {{"ordering", to_string(p.ordering())}, {"terms", terms}, {"text", render(p)}};
}

nlohmann::json expression_json(const FreeExpression& e) {
  return std::visit(
      [](const auto& n) -> nlohmann::json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExactScalar>) {
          return {{"type", "scalar"}, {"value", n.to_string()}};
        } else if constexpr (std::is_same_v<T, Symbol>) {
          return {{"type", "symbol"}, {"name", symbol_name(n)}};
        } else if constexpr (std::is_same_v<T, FreeExpression::Sum>) {
          nlohmann::json terms = nlohmann::json::array();
          for (const auto& t : n.terms) terms.push_back(expression_json(t));
          return {{"type", "sum"}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, FreeExpression::Product>) {
          nlohmann::json factors = nlohmann::json::array();
          for (const auto& f : n.factors) factors.push_back(expression_json(f));
          return {{"type", "product"}, {"factors", factors}};
        } else if constexpr (std::is_same_v<T, FreeExpression::Power>) {
          return {{"type", "power"}, {"base", expression_json(n.base)}, {"exponent", n.exponent}};
        } else if constexpr (std::is_same_v<T, FreeExpression::Negate>) {
          return {{"type", "negate"}, {"operand", expression_json(n.operand)}};
        } else {
          nlohmann::json j = polynomial_json(n);
          j["type"] = "ordered";
          return j;
        }
      },
      e.node());
}

}  // namespace

std::string to_json(const FreeExpression& e) { return expression_json(e).dump(); }

std::string to_json(const OrderedPolynomial& p) { return polynomial_json(p).dump(); }

}  // namespace psqm::exprio
