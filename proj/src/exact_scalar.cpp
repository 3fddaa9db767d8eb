#include "psqm/exact_scalar.hpp"

#include <array>
#include <cctype>
#include <ostream>
#include <vector>

namespace psqm {

namespace {

// Bits of working precision for to_complex(); comfortably above double.
constexpr mp_bitcnt_t kFloatBits = 256;

struct Gaussian {
  Rational re, im;
};

Gaussian gmul(const Gaussian& a, const Gaussian& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    return end;
  };
  std::size_t num_end = digits(pos);
  if (num_end == pos) throw std::invalid_argument("expected digits in '" + std::string(text) + "'");
  mpz_class num(std::string(text.substr(pos, num_end - pos)));
  mpz_class den = 1;
  if (num_end < text.size()) {
    if (text[num_end] != '/') throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != text.size())
      throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    den = mpz_class(std::string(text.substr(num_end + 1)));
  }
  if (negative) num = -num;
  return make_rational(num, den);
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ExactScalar::ExactScalar(long integer) : ra_(integer) {}

ExactScalar::ExactScalar(Rational re) : ra_(std::move(re)) {}

ExactScalar::ExactScalar(Rational ra, Rational ia, Rational rb, Rational ib)
    : ra_(std::move(ra)), ia_(std::move(ia)), rb_(std::move(rb)), ib_(std::move(ib)) {}

ExactScalar ExactScalar::i() { return ExactScalar(0, 1); }

ExactScalar ExactScalar::sqrt2() { return ExactScalar(0, 0, 1, 0); }

ExactScalar ExactScalar::rational(long num, long den) { return ExactScalar(make_rational(num, den)); }

bool ExactScalar::is_zero() const { return ra_ == 0 && ia_ == 0 && rb_ == 0 && ib_ == 0; }

bool ExactScalar::is_one() const { return ra_ == 1 && ia_ == 0 && rb_ == 0 && ib_ == 0; }

bool ExactScalar::is_rational() const { return ia_ == 0 && rb_ == 0 && ib_ == 0; }

int ExactScalar::nonzero_components() const {
  return (ra_ != 0) + (ia_ != 0) + (rb_ != 0) + (ib_ != 0);
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(-ra_, -ia_, -rb_, -ib_); }

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  ra_ += o.ra_;
  ia_ += o.ia_;
  rb_ += o.rb_;
  ib_ += o.ib_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  ra_ -= o.ra_;
  ia_ -= o.ia_;
  rb_ -= o.rb_;
  ib_ -= o.ib_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  // (A + B r2)(C + D r2) = (AC + 2BD) + (AD + BC) r2
  const Gaussian a{ra_, ia_}, b{rb_, ib_}, c{o.ra_, o.ia_}, d{o.rb_, o.ib_};
  Gaussian ac = gmul(a, c), bd = gmul(b, d), ad = gmul(a, d), bc = gmul(b, c);
  ra_ = ac.re + 2 * bd.re;
  ia_ = ac.im + 2 * bd.im;
  rb_ = ad.re + bc.re;
  ib_ = ad.im + bc.im;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  return a.ra_ == b.ra_ && a.ia_ == b.ia_ && a.rb_ == b.rb_ && a.ib_ == b.ib_;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  // 1/(A + B r2) = (A - B r2) / (A^2 - 2 B^2); the norm g is a Gaussian
  // rational, non-zero because r2 is irrational over Q(i).
  const Gaussian a{ra_, ia_}, b{rb_, ib_};
  Gaussian a2 = gmul(a, a), b2 = gmul(b, b);
  Gaussian g{a2.re - 2 * b2.re, a2.im - 2 * b2.im};
  Rational mod2 = g.re * g.re + g.im * g.im;
  Gaussian ginv{g.re / mod2, -g.im / mod2};
  Gaussian na = gmul(a, ginv);
  Gaussian nb = gmul(Gaussian{-b.re, -b.im}, ginv);
  return ExactScalar(na.re, na.im, nb.re, nb.im);
}

ExactScalar ExactScalar::conj() const { return ExactScalar(ra_, -ia_, rb_, -ib_); }

ExactScalar ExactScalar::pow(unsigned exponent) const {
  ExactScalar result(1);
  ExactScalar base = *this;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent != 0) base *= base;
  }
  return result;
}

std::complex<double> ExactScalar::to_complex() const {
  mpf_class root2(2, kFloatBits);
  root2 = sqrt(root2);
  mpf_class re(ra_, kFloatBits), im(ia_, kFloatBits);
  re += mpf_class(rb_, kFloatBits) * root2;
  im += mpf_class(ib_, kFloatBits) * root2;
  return {re.get_d(), im.get_d()};
}

std::string ExactScalar::to_string() const {
  static const std::array<const char*, 4> kSuffix = {"", "i", "r2", "i*r2"};
  const std::array<const Rational*, 4> parts = {&ra_, &ia_, &rb_, &ib_};
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Rational& c = *parts[k];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += c.get_str();
    } else if (c == 1) {
      out += kSuffix[k];
    } else if (c == -1) {
      out += '-';
      out += kSuffix[k];
    } else {
      out += c.get_str();
      out += '*';
      out += kSuffix[k];
    }
  }
  return out.empty() ? "0" : out;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty scalar text");
  ExactScalar out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    std::string_view term = text.substr(start, plus == std::string_view::npos ? plus : plus - start);
    if (term.empty()) throw std::invalid_argument("empty term in '" + std::string(text) + "'");

    // Split "coef*suffix" where suffix is one of i, r2, i*r2.
    bool has_i = false, has_r2 = false;
    std::string_view head = term;
    auto strip = [&](std::string_view suffix) {
      if (head.size() >= suffix.size() && head.substr(head.size() - suffix.size()) == suffix) {
        head.remove_suffix(suffix.size());
        return true;
      }
      return false;
    };
    if (strip("i*r2")) {
      has_i = has_r2 = true;
    } else if (strip("r2")) {
      has_r2 = true;
    } else if (strip("i")) {
      has_i = true;
    }
    Rational coef = 1;
    if (has_i || has_r2) {
      if (head.empty()) {
        coef = 1;
      } else if (head == "-") {
        coef = -1;
      } else {
        if (head.back() != '*') throw std::invalid_argument("bad scalar term '" + std::string(term) + "'");
        head.remove_suffix(1);
        coef = parse_rational(head);
      }
    } else {
      coef = parse_rational(head);
    }
    if (has_i && has_r2) {
      out.ib_ += coef;
    } else if (has_r2) {
      out.rb_ += coef;
    } else if (has_i) {
      out.ia_ += coef;
    } else {
      out.ra_ += coef;
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

mpz_class factorial(unsigned n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace psqm
