#include "psqm/opalg.hpp"

#include <algorithm>
#include <tuple>
#include <type_traits>

namespace psqm::opalg {

namespace {

const ExactScalar& imag_unit() {
  static const ExactScalar kI = ExactScalar::i();
  return kI;
}

// Pending words are processed longest first and, within a length, most
// out-of-order first. Every word a rewrite step produces is either shorter
// or has one inversion fewer, so all parents of a word are handled before
// it and each word is expanded exactly once.
struct PendingKey {
  std::size_t length;
  std::size_t inversions;
  Word word;

  friend bool operator<(const PendingKey& a, const PendingKey& b) {
    return std::tie(b.length, b.inversions, a.word) < std::tie(a.length, a.inversions, b.word);
  }
};

struct PendingValue {
  ExactScalar coefficient;
  std::size_t depth = 0;
};

std::size_t count_inversions(const Word& w, char first, char second) {
  std::size_t seconds = 0, inversions = 0;
  for (char c : w) {
    if (c == second) {
      ++seconds;
    } else if (c == first) {
      inversions += seconds;
    }
  }
  return inversions;
}

void add_word(WordPolynomial& into, const Word& w, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = into.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) into.erase(it);
  }
}

WordPolynomial scaled(const WordPolynomial& p, const ExactScalar& s) {
  WordPolynomial out;
  if (s.is_zero()) return out;
  for (const auto& [w, c] : p) out.emplace(w, c * s);
  return out;
}

struct Rule {
  char first;
  char second;
  ExactScalar commutator;
};

Rule rule_for(Ordering target) {
  switch (target) {
    case Ordering::PQ:
      return {'P', 'Q', imag_unit()};  // QP -> PQ + i
    case Ordering::QP:
      return {'Q', 'P', -imag_unit()};  // PQ -> QP - i
    case Ordering::Weyl:
      break;
  }
  throw std::invalid_argument("rewriting targets PQ or QP order only");
}

const Rule& normal_rule() {
  static const Rule kNormal{'A', 'a', ExactScalar(1)};  // a adag -> adag a + 1
  return kNormal;
}

WordPolynomial substitute_letters(const WordPolynomial& words, char letter, const WordPolynomial& replacement) {
  WordPolynomial out;
  for (const auto& [w, c] : words) {
    WordPolynomial acc{{Word(), c}};
    for (char ch : w) {
      if (ch == letter) {
        acc = multiply(acc, replacement);
      } else {
        WordPolynomial next;
        for (const auto& [aw, ac] : acc) add_word(next, aw + ch, ac);
        acc = std::move(next);
      }
    }
    accumulate(out, acc);
  }
  return out;
}

const WordPolynomial& q_in_ladder() {
  static const WordPolynomial kQ = [] {
    ExactScalar h = ExactScalar::sqrt2().inverse();
    return WordPolynomial{{"a", h}, {"A", h}};
  }();
  return kQ;
}

const WordPolynomial& p_in_ladder() {
  // P = (a - adag) / (sqrt2 i) = (-i/sqrt2) a + (i/sqrt2) adag
  static const WordPolynomial kP = [] {
    ExactScalar h = imag_unit() * ExactScalar::sqrt2().inverse();
    return WordPolynomial{{"a", -h}, {"A", h}};
  }();
  return kP;
}

// Normal form of e in the order fixed by `rule`, multiplying normal forms of
// subtrees so intermediate word counts stay small. `leaf` maps symbols and
// ordering blocks to words.
template <typename Leaf>
WordPolynomial reduce(const FreeExpression& e, const Rule& rule, const Leaf& leaf) {
  auto order = [&](const WordPolynomial& w) { return normal_order(w, rule.first, rule.second, rule.commutator); };
  return std::visit(
      [&](const auto& n) -> WordPolynomial {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExactScalar>) {
          WordPolynomial out;
          add_word(out, Word(), n);
          return out;
        } else if constexpr (std::is_same_v<T, Symbol> || std::is_same_v<T, OrderedPolynomial>) {
          return order(leaf(n));
        } else if constexpr (std::is_same_v<T, FreeExpression::Sum>) {
          WordPolynomial out;
          for (const auto& t : n.terms) accumulate(out, reduce(t, rule, leaf));
          return out;
        } else if constexpr (std::is_same_v<T, FreeExpression::Negate>) {
          return scaled(reduce(n.operand, rule, leaf), ExactScalar(-1));
        } else if constexpr (std::is_same_v<T, FreeExpression::Product>) {
          WordPolynomial acc{{Word(), ExactScalar(1)}};
          for (const auto& f : n.factors) {
            acc = order(multiply(acc, reduce(f, rule, leaf)));
            if (acc.empty()) break;
          }
          return acc;
        } else {
          static_assert(std::is_same_v<T, FreeExpression::Power>);
          WordPolynomial base = reduce(n.base, rule, leaf);
          WordPolynomial acc{{Word(), ExactScalar(1)}};
          for (unsigned k = 0; k < n.exponent; ++k) acc = order(multiply(acc, base));
          return acc;
        }
      },
      e.node());
}

WordPolynomial canonical_leaf(const Symbol& s) {
  if (is_ladder(s)) throw UnsupportedSymbol(std::string("ladder symbol '") + symbol_name(s) + "' in a Q/P expression");
  return {{Word(1, s == Symbol::Q ? 'Q' : 'P'), ExactScalar(1)}};
}

WordPolynomial canonical_leaf(const OrderedPolynomial& p) { return to_words(p); }

struct CanonicalLeaf {
  WordPolynomial operator()(const Symbol& s) const { return canonical_leaf(s); }
  WordPolynomial operator()(const OrderedPolynomial& p) const { return canonical_leaf(p); }
};

struct LadderLeaf {
  WordPolynomial operator()(const Symbol& s) const {
    switch (s) {
      case Symbol::Q:
        return q_in_ladder();
      case Symbol::P:
        return p_in_ladder();
      case Symbol::A:
        return {{"a", ExactScalar(1)}};
      case Symbol::Adag:
        return {{"A", ExactScalar(1)}};
    }
    return {};
  }
  WordPolynomial operator()(const OrderedPolynomial& p) const {
    WordPolynomial w = to_words(p);
    w = substitute_letters(w, 'Q', q_in_ladder());
    return substitute_letters(w, 'P', p_in_ladder());
  }
};

}  // namespace

WordPolynomial normal_order(const WordPolynomial& input, char first, char second, const ExactScalar& commutator,
                            RewriteStats* stats) {
  std::map<PendingKey, PendingValue> pending;
  auto push = [&](const Word& w, const ExactScalar& c, std::size_t depth) {
    if (c.is_zero()) return;
    PendingKey key{w.size(), count_inversions(w, first, second), w};
    auto [it, inserted] = pending.try_emplace(std::move(key), PendingValue{c, depth});
    if (!inserted) {
      it->second.coefficient += c;
      it->second.depth = std::max(it->second.depth, depth);
    }
  };
  for (const auto& [w, c] : input) {
    for (char ch : w)
      if (ch != first && ch != second)
        throw std::invalid_argument(std::string("letter '") + ch + "' outside the rewriting alphabet");
    push(w, c, 0);
  }

  const Word pattern{second, first};
  WordPolynomial done;
  RewriteStats local;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key().word;
    const PendingValue& v = node.mapped();
    if (v.coefficient.is_zero()) continue;
    std::size_t pos = w.find(pattern);
    if (pos == Word::npos) {
      add_word(done, w, v.coefficient);
      local.longest_path = std::max(local.longest_path, v.depth);
      continue;
    }
    ++local.rule_applications;
    Word swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    push(swapped, v.coefficient, v.depth + 1);
    Word contracted = w.substr(0, pos) + w.substr(pos + 2);
    push(contracted, v.coefficient * commutator, v.depth + 1);
  }
  if (stats) *stats = local;
  return done;
}

WordPolynomial multiply(const WordPolynomial& a, const WordPolynomial& b) {
  WordPolynomial out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) add_word(out, wa + wb, ca * cb);
  return out;
}

void accumulate(WordPolynomial& into, const WordPolynomial& add, const ExactScalar& scale) {
  for (const auto& [w, c] : add) add_word(into, w, c * scale);
}

WordPolynomial expand_words(const FreeExpression& e) {
  return std::visit(
      [&](const auto& n) -> WordPolynomial {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExactScalar>) {
          WordPolynomial out;
          add_word(out, Word(), n);
          return out;
        } else if constexpr (std::is_same_v<T, Symbol>) {
          static constexpr char kLetter[] = {'Q', 'P', 'a', 'A'};
          return {{Word(1, kLetter[static_cast<int>(n)]), ExactScalar(1)}};
        } else if constexpr (std::is_same_v<T, OrderedPolynomial>) {
          return to_words(n);
        } else if constexpr (std::is_same_v<T, FreeExpression::Sum>) {
          WordPolynomial out;
          for (const auto& t : n.terms) accumulate(out, expand_words(t));
          return out;
        } else if constexpr (std::is_same_v<T, FreeExpression::Negate>) {
          return scaled(expand_words(n.operand), ExactScalar(-1));
        } else if constexpr (std::is_same_v<T, FreeExpression::Product>) {
          WordPolynomial acc{{Word(), ExactScalar(1)}};
          for (const auto& f : n.factors) acc = multiply(acc, expand_words(f));
          return acc;
        } else {
          WordPolynomial base = expand_words(n.base);
          WordPolynomial acc{{Word(), ExactScalar(1)}};
          for (unsigned k = 0; k < n.exponent; ++k) acc = multiply(acc, base);
          return acc;
        }
      },
      e.node());
}

WordPolynomial symmetrized_word(unsigned m, unsigned r) {
  Word w = Word(r, 'P') + Word(m, 'Q');  // sorted: 'P' < 'Q'
  ExactScalar weight(make_rational(mpz_class(1), binomial(m + r, m)));
  WordPolynomial out;
  do {
    out.emplace(w, weight);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

WordPolynomial to_words(const OrderedPolynomial& p) {
  WordPolynomial out;
  for (const auto& [mono, c] : p.terms()) {
    switch (p.ordering()) {
      case Ordering::PQ:
        add_word(out, Word(mono.r, 'P') + Word(mono.m, 'Q'), c);
        break;
      case Ordering::QP:
        add_word(out, Word(mono.m, 'Q') + Word(mono.r, 'P'), c);
        break;
      case Ordering::Weyl:
        accumulate(out, symmetrized_word(mono.m, mono.r), c);
        break;
    }
  }
  return out;
}

OrderedPolynomial from_ordered_words(const WordPolynomial& words, Ordering ordering) {
  if (ordering == Ordering::Weyl) throw std::invalid_argument("words cannot be read as Weyl symbols");
  const char first = ordering == Ordering::PQ ? 'P' : 'Q';
  OrderedPolynomial out(ordering);
  for (const auto& [w, c] : words) {
    std::size_t lead = w.find_first_not_of(first);
    if (lead == Word::npos) lead = w.size();
    unsigned leading = static_cast<unsigned>(lead);
    unsigned trailing = static_cast<unsigned>(w.size() - lead);
    const char second = first == 'P' ? 'Q' : 'P';
    if (w.find_first_not_of(second, lead) != Word::npos)
      throw std::invalid_argument("word '" + w + "' is not in " + to_string(ordering) + " order");
    if (ordering == Ordering::PQ) {
      out.add_term({trailing, leading}, c);
    } else {
      out.add_term({leading, trailing}, c);
    }
  }
  return out;
}

OrderedPolynomial rewrite_words(const WordPolynomial& words, Ordering target) {
  Rule rule = rule_for(target);
  return from_ordered_words(normal_order(words, rule.first, rule.second, rule.commutator), target);
}

OrderedPolynomial rewrite_to_pq(const FreeExpression& e) {
  Rule rule = rule_for(Ordering::PQ);
  return from_ordered_words(reduce(e, rule, CanonicalLeaf{}), Ordering::PQ);
}

OrderedPolynomial rewrite_to_qp(const FreeExpression& e) {
  Rule rule = rule_for(Ordering::QP);
  return from_ordered_words(reduce(e, rule, CanonicalLeaf{}), Ordering::QP);
}

LadderPolynomial substitute_ladder(const FreeExpression& e) {
  WordPolynomial words = reduce(e, normal_rule(), LadderLeaf{});
  LadderPolynomial out(LadderOrdering::Normal);
  for (const auto& [w, c] : words) {
    auto creators = static_cast<unsigned>(std::count(w.begin(), w.end(), 'A'));
    out.add_term({creators, static_cast<unsigned>(w.size()) - creators}, c);
  }
  return out;
}

FreeExpression substitute_canonical(const FreeExpression& e) {
  return std::visit(
      [&](const auto& n) -> FreeExpression {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Symbol>) {
          if (!is_ladder(n)) return e;
          ExactScalar h = ExactScalar::sqrt2().inverse();
          ExactScalar ih = imag_unit() * h;
          auto q = FreeExpression::product({FreeExpression::scalar(h), FreeExpression::symbol(Symbol::Q)});
          auto p = FreeExpression::product(
              {FreeExpression::scalar(n == Symbol::A ? ih : -ih), FreeExpression::symbol(Symbol::P)});
          return FreeExpression::sum({q, p});
        } else if constexpr (std::is_same_v<T, FreeExpression::Sum>) {
          std::vector<FreeExpression> terms;
          for (const auto& t : n.terms) terms.push_back(substitute_canonical(t));
          return FreeExpression::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, FreeExpression::Product>) {
          std::vector<FreeExpression> factors;
          for (const auto& f : n.factors) factors.push_back(substitute_canonical(f));
          return FreeExpression::product(std::move(factors));
        } else if constexpr (std::is_same_v<T, FreeExpression::Power>) {
          return FreeExpression::power(substitute_canonical(n.base), n.exponent);
        } else if constexpr (std::is_same_v<T, FreeExpression::Negate>) {
          return FreeExpression::negate(substitute_canonical(n.operand));
        } else {
          return e;
        }
      },
      e.node());
}

OrderedPolynomial commutator(const FreeExpression& x, const FreeExpression& y) {
  return rewrite_to_pq(x * y - y * x);
}

OrderedPolynomial canonical_pq(const OrderedPolynomial& p) {
  if (p.ordering() == Ordering::PQ) return p;
  return rewrite_words(to_words(p), Ordering::PQ);
}

bool poly_equal(const OrderedPolynomial& x, const OrderedPolynomial& y) {
  return canonical_pq(x) == canonical_pq(y);
}

OrderedPolynomial adjoint(const OrderedPolynomial& p) {
  Ordering tag = p.ordering();
  if (tag == Ordering::PQ) {
    tag = Ordering::QP;
  } else if (tag == Ordering::QP) {
    tag = Ordering::PQ;
  }
  OrderedPolynomial out(tag);
  for (const auto& [mono, c] : p.terms()) out.add_term(mono, c.conj());
  return out;
}

FreeExpression to_expression(const OrderedPolynomial& p) { return FreeExpression::ordered(p); }

FreeExpression to_expression(const LadderPolynomial& p) {
  std::vector<FreeExpression> terms;
  for (const auto& [mono, c] : p.terms()) {
    std::vector<FreeExpression> factors{FreeExpression::scalar(c)};
    auto creators = FreeExpression::power(FreeExpression::symbol(Symbol::Adag), mono.j);
    auto annihilators = FreeExpression::power(FreeExpression::symbol(Symbol::A), mono.k);
    if (p.ordering() == LadderOrdering::Normal) {
      factors.push_back(creators);
      factors.push_back(annihilators);
    } else {
      factors.push_back(annihilators);
      factors.push_back(creators);
    }
    terms.push_back(FreeExpression::product(std::move(factors)));
  }
  return FreeExpression::sum(std::move(terms));
}

}  // namespace psqm::opalg
