#pragma once

// Reference computations for the tests. Nothing here calls the library's
// rewriting, conversion or quadrature code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "psqm/exact_scalar.hpp"
#include "psqm/polynomial.hpp"

namespace oracle {

using psqm::ExactScalar;
using Key = std::pair<unsigned, unsigned>;  // (m, r): powers of Q and P
using Poly = std::map<Key, ExactScalar>;

inline void add(Poly& p, Key k, const ExactScalar& c) {
  auto [it, fresh] = p.emplace(k, c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

// Normal form with every P left of every Q, built by right multiplication:
//   P^r Q^m . Q = P^r Q^(m+1)
//   P^r Q^m . P = P^(r+1) Q^m + i m P^r Q^(m-1)
inline Poly pq_times(const Poly& x, char letter) {
  Poly out;
  for (const auto& [k, c] : x) {
    auto [m, r] = k;
    if (letter == 'Q') {
      add(out, {m + 1, r}, c);
    } else {
      add(out, {m, r + 1}, c);
      if (m > 0) add(out, {m - 1, r}, c * ExactScalar::i() * ExactScalar(static_cast<long>(m)));
    }
  }
  return out;
}

// Normal form with every Q left of every P:
//   Q^m P^r . P = Q^m P^(r+1)
//   Q^m P^r . Q = Q^(m+1) P^r - i r Q^m P^(r-1)
inline Poly qp_times(const Poly& x, char letter) {
  Poly out;
  for (const auto& [k, c] : x) {
    auto [m, r] = k;
    if (letter == 'P') {
      add(out, {m, r + 1}, c);
    } else {
      add(out, {m + 1, r}, c);
      if (r > 0) add(out, {m, r - 1}, -(c * ExactScalar::i() * ExactScalar(static_cast<long>(r))));
    }
  }
  return out;
}

inline Poly word(const std::string& letters, bool pq) {
  Poly p{{{0, 0}, ExactScalar(1)}};
  for (char c : letters) p = pq ? pq_times(p, c) : qp_times(p, c);
  return p;
}

inline Poly combine(const std::vector<std::pair<std::string, ExactScalar>>& terms, bool pq) {
  Poly out;
  for (const auto& [w, c] : terms)
    for (const auto& [k, v] : word(w, pq)) add(out, k, v * c);
  return out;
}

// Average over every arrangement of m Q's and r P's.
inline Poly symmetrized(unsigned m, unsigned r, bool pq) {
  std::string letters = std::string(r, 'P') + std::string(m, 'Q');
  std::vector<std::pair<std::string, ExactScalar>> terms;
  do {
    terms.emplace_back(letters, ExactScalar(1));
  } while (std::next_permutation(letters.begin(), letters.end()));
  Poly sum = combine(terms, pq);
  const ExactScalar scale = ExactScalar(static_cast<long>(terms.size())).inverse();
  for (auto& [k, c] : sum) c *= scale;
  return sum;
}

inline Poly from(const psqm::OrderedPolynomial& p) {
  Poly out;
  for (const auto& [mono, c] : p.terms()) add(out, {mono.m, mono.r}, c);
  return out;
}

// Weyl-tagged polynomial as a PQ normal form.
inline Poly weyl_in_pq(const psqm::OrderedPolynomial& p) {
  Poly out;
  for (const auto& [mono, c] : p.terms())
    for (const auto& [k, v] : symmetrized(mono.m, mono.r, true)) add(out, k, v * c);
  return out;
}

// Truncated-basis matrices built directly from <n-1|a|n> = sqrt(n).
struct Ladder {
  Eigen::MatrixXcd a, adag, q, p;
  explicit Ladder(int n) : a(Eigen::MatrixXcd::Zero(n, n)) {
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    adag = a.adjoint();
    q = (a + adag) / std::numbers::sqrt2;
    p = (a - adag) / (std::numbers::sqrt2 * std::complex<double>(0, 1));
  }
};

inline Eigen::MatrixXcd power(const Eigen::MatrixXcd& m, unsigned n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (unsigned k = 0; k < n; ++k) out = out * m;
  return out;
}

// psi_n(x) from the explicit Hermite polynomial sum; fine for n <= 12.
inline double hermite_function(int n, double x) {
  double h = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    double term = std::tgamma(n + 1) / (std::tgamma(k + 1) * std::tgamma(n - 2 * k + 1)) * std::pow(2 * x, n - 2 * k);
    h += (k % 2 ? -term : term);
  }
  return h * std::exp(-x * x / 2) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1) * std::sqrt(std::numbers::pi));
}

// Transform of x^m y^r read off the generating function
// iint exp(a u + b v + 2iuv) du dv / pi = exp(i a b / 2):
//   sum_k C(m,k) C(r,k) k! (i/2)^k t^(m-k) s^(r-k)
inline std::map<Key, ExactScalar> monomial_transform(unsigned m, unsigned r) {
  std::map<Key, ExactScalar> out;
  const ExactScalar half_i = ExactScalar::i() * ExactScalar::rational(1, 2);
  for (unsigned k = 0; k <= std::min(m, r); ++k) {
    mpz_class c = psqm::binomial(m, k) * psqm::binomial(r, k) * psqm::factorial(k);
    out.emplace(Key{m - k, r - k}, ExactScalar(psqm::Rational(c)) * half_i.pow(k));
  }
  return out;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261019);
  return engine;
}

inline ExactScalar random_scalar(int spread = 7) {
  std::uniform_int_distribution<long> num(-spread, spread), den(1, spread);
  auto q = [&] { return psqm::make_rational(num(rng()), den(rng())); };
  return ExactScalar(q(), q(), q(), q());
}

inline std::string random_word(std::size_t length, const std::string& alphabet = "QP") {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string w;
  for (std::size_t k = 0; k < length; ++k) w += alphabet[pick(rng())];
  return w;
}

// Random text from the expression grammar; `depth` bounds the nesting.
inline std::string random_expression(int depth) {
  static const char* const atoms[] = {"Q", "P", "a", "adag", "i", "r2", "3", "2/5", "0"};
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 5 : 0), atom(0, std::size(atoms) - 1), small(0, 4);
  switch (kind(rng())) {
    case 1:
      return random_expression(depth - 1) + " + " + random_expression(depth - 1);
    case 2:
      return random_expression(depth - 1) + "*" + random_expression(depth - 1);
    case 3:
      return "(" + random_expression(depth - 1) + ")^" + std::to_string(small(rng()));
    case 4:
      return "-" + random_expression(depth - 1);
    case 5: {
      static const char* const tags[] = {"pq{", "qp{", "weyl{"};
      static const char* const canon[] = {"Q", "P", "Q^2", "1/2", "i"};
      std::string body = canon[small(rng())];
      for (int k = small(rng()); k > 0; --k) body += std::string(k % 2 ? " + " : "*") + canon[small(rng())];
      return tags[small(rng()) % 3] + body + "}";
    }
    default:
      return atoms[atom(rng())];
  }
}

}  // namespace oracle
