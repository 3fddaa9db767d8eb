#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "psqm/phasexform.hpp"
#include "support/oracle.hpp"

using namespace psqm;
using ordering::CommutativePoly2;
using xform::Complex;
using xform::SampledField;

namespace {

Complex gaussian(double q, double p) { return std::exp(-q * q - p * p); }

Complex gaussian_image(double q, double p) {
  return std::exp(Complex(-(q * q + p * p) / 2.0, p * q)) / std::numbers::sqrt2;
}

SampledField field(const std::function<Complex(double, double)>& fn, double w = 8.0, int n = 400) {
  return SampledField::sample(-w, w, -w, w, n, n, fn);
}

double central_error(const SampledField& got, const std::function<Complex(double, double)>& want) {
  double worst = 0.0;
  for (int a = got.nq / 4; a < got.nq - got.nq / 4; ++a)
    for (int b = got.np / 4; b < got.np - got.np / 4; ++b)
      worst = std::max(worst, std::abs(got.at(a, b) - want(got.q_at(a), got.p_at(b))));
  return worst;
}

CommutativePoly2 from_oracle(const std::map<oracle::Key, ExactScalar>& terms) {
  CommutativePoly2 out;
  for (const auto& [k, c] : terms) out.add_term(k.first, k.second, c);
  return out;
}

}  // namespace

TEST(Forward, GaussianAtPoints) {
  SampledField h = field(gaussian);
  std::vector<xform::Point> pts{{0, 0}, {1, 1}, {-0.7, 1.9}};
  std::vector<Complex> g = xform::forward_transform_at(h, pts);
  EXPECT_NEAR(std::abs(g[0] - 1 / std::numbers::sqrt2), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(g[1] - std::exp(Complex(-1, 1)) / std::numbers::sqrt2), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(g[2] - gaussian_image(-0.7, 1.9)), 0.0, 1e-6);
}

TEST(Forward, GridMatchesPointEvaluation) {
  SampledField h = field(gaussian, 6.0, 121);
  xform::TransformResult g = xform::forward_transform(h);
  EXPECT_TRUE(g.reliable);
  std::vector<xform::Point> pts{{h.q_at(30), h.p_at(77)}, {h.q_at(60), h.p_at(60)}};
  std::vector<Complex> at = xform::forward_transform_at(h, pts);
  EXPECT_NEAR(std::abs(at[0] - g.field.at(30, 77)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(at[1] - g.field.at(60, 60)), 0.0, 1e-12);
  EXPECT_LT(central_error(g.field, gaussian_image), 1e-6);
}

TEST(Forward, UnityIsFixedSymbolically) {
  EXPECT_EQ(xform::forward_polynomial(CommutativePoly2::monomial(0, 0)), CommutativePoly2::monomial(0, 0));
  EXPECT_EQ(xform::inverse_polynomial(CommutativePoly2::monomial(0, 0)), CommutativePoly2::monomial(0, 0));
}

TEST(Forward, UndecayedInputIsFlagged) {
  SampledField h = field([](double, double) { return Complex(1.0); }, 2.0, 20);
  xform::TransformResult g = xform::forward_transform(h);
  EXPECT_FALSE(g.reliable);
  EXPECT_FALSE(g.warning.empty());
}

TEST(Inverse, GaussianPairAndRoundTrip) {
  SampledField g = field(gaussian_image);
  EXPECT_LT(central_error(xform::inverse_transform(g).field, gaussian), 1e-5);

  SampledField h = field(gaussian);
  EXPECT_LT(central_error(xform::inverse_transform(xform::forward_transform(h).field).field, gaussian), 1e-5);

  auto poly_gauss = [](double q, double p) { return Complex(q * q - p, q * p) * std::exp(-q * q - p * p); };
  SampledField hp = field(poly_gauss);
  EXPECT_LT(central_error(xform::inverse_transform(xform::forward_transform(hp).field).field, poly_gauss), 1e-5);
}

TEST(Inverse, Linearity) {
  SampledField g1 = field(gaussian_image, 6.0, 90);
  SampledField g2 = field([](double q, double p) { return std::exp(Complex(-q * q - 2 * p * p, q)); }, 6.0, 90);
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  SampledField mix = g1;
  for (std::size_t k = 0; k < mix.values.size(); ++k) mix.values[k] = a * g1.values[k] + b * g2.values[k];
  SampledField lhs = xform::inverse_transform(mix).field;
  SampledField r1 = xform::inverse_transform(g1).field, r2 = xform::inverse_transform(g2).field;
  for (std::size_t k = 0; k < lhs.values.size(); ++k)
    EXPECT_NEAR(std::abs(lhs.values[k] - (a * r1.values[k] + b * r2.values[k])), 0.0, 1e-12);
}

TEST(Parseval, Examples) {
  xform::ParsevalResult g = xform::parseval_check(field(gaussian));
  EXPECT_NEAR(g.lhs, 0.5, 1e-8);
  EXPECT_NEAR(g.rhs, 0.5, 1e-5);

  xform::ParsevalResult z = xform::parseval_check(field([](double, double) { return Complex(0.0); }, 4.0, 16));
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs, 0.0);

  xform::ParsevalResult s = xform::parseval_check(
      field([](double q, double p) { return std::exp(-(p - 1) * (p - 1) - (q + 1) * (q + 1)); }));
  EXPECT_NEAR(s.lhs, 0.5, 1e-5);
  EXPECT_NEAR(s.rhs, 0.5, 1e-5);
}

TEST(Symbolic, MonomialExamples) {
  const ExactScalar half_i = ExactScalar::i() * ExactScalar::rational(1, 2);
  EXPECT_EQ(xform::monomial_forward(0, 0), CommutativePoly2::monomial(0, 0));
  EXPECT_EQ(xform::monomial_forward(1, 1), CommutativePoly2::monomial(1, 1) + CommutativePoly2::monomial(0, 0, half_i));
  EXPECT_EQ(xform::monomial_forward(2, 0), CommutativePoly2::monomial(2, 0));
  EXPECT_EQ(xform::inverse_polynomial(xform::monomial_forward(1, 1)), CommutativePoly2::monomial(1, 1));
  EXPECT_EQ(xform::inverse_polynomial(xform::monomial_forward(3, 2)), CommutativePoly2::monomial(3, 2));
  EXPECT_EQ(xform::monomial_inverse(0, 0), CommutativePoly2::monomial(0, 0));
}

TEST(Symbolic, MatchesGeneratingFunction) {
  for (unsigned m = 0; m <= 8; ++m)
    for (unsigned r = 0; r <= 8; ++r) {
      EXPECT_EQ(xform::monomial_forward(m, r), from_oracle(oracle::monomial_transform(m, r))) << m << "," << r;
      EXPECT_EQ(xform::forward_polynomial(xform::monomial_inverse(m, r)), CommutativePoly2::monomial(m, r));
    }
}

TEST(Symbolic, DerivativeExamples) {
  const ExactScalar two_i = ExactScalar(2) * ExactScalar::i();
  EXPECT_EQ(xform::derivative_representation_raw(1, 1),
            CommutativePoly2::monomial(1, 1, -4) + CommutativePoly2::monomial(0, 0, -two_i));
  EXPECT_EQ(xform::derivative_representation(1, 1), xform::monomial_forward(1, 1));
  // one derivative in t gives -2is; one in s gives -2it
  EXPECT_EQ(xform::derivative_representation_raw(0, 1), CommutativePoly2::monomial(0, 1, -two_i));
  EXPECT_EQ(xform::derivative_representation(0, 1), CommutativePoly2::monomial(0, 1));
  EXPECT_EQ(xform::derivative_representation_raw(1, 0), CommutativePoly2::monomial(1, 0, -two_i));
  EXPECT_EQ(xform::derivative_representation(1, 0), CommutativePoly2::monomial(1, 0));
  EXPECT_EQ(xform::derivative_representation(0, 0), CommutativePoly2::monomial(0, 0));
}

TEST(Symbolic, DerivativeEqualsForward) {
  for (unsigned m = 0; m <= 8; ++m)
    for (unsigned r = 0; r <= 8; ++r)
      EXPECT_EQ(xform::derivative_representation(m, r), xform::monomial_forward(m, r)) << m << "," << r;
}

TEST(Csv, RoundTrip) {
  SampledField f = field([](double q, double p) { return Complex(q * 0.1, -p / 3.0); }, 1.5, 5);
  f.q_min = -1.25;
  SampledField back = xform::from_csv(xform::to_csv(f));
  EXPECT_EQ(back.q_min, f.q_min);
  EXPECT_EQ(back.p_max, f.p_max);
  EXPECT_EQ(back.nq, f.nq);
  EXPECT_EQ(back.np, f.np);
  EXPECT_EQ(back.values, f.values);
  EXPECT_EQ(xform::to_csv(f).substr(0, 23), "qmin,qmax,pmin,pmax,nq,");
}

TEST(Csv, Errors) {
  auto error_at = [](const std::string& text) -> std::pair<int, int> {
    try {
      xform::from_csv(text);
    } catch (const xform::CsvError& e) {
      return {e.row(), e.column()};
    }
    return {-1, -1};
  };
  EXPECT_EQ(error_at("").first, 1);
  EXPECT_EQ(error_at("0,1,0,1,2,2\n1,0\n2,0\n3,x\n4,0\n"), std::make_pair(4, 2));
  EXPECT_EQ(error_at("0,1,0,1,2,2\n1,0\n2,0\n3,0\n").first, 5);
  EXPECT_NE(error_at("0,1,0,1,1,2\n1,0\n2,0\n").first, -1);
  EXPECT_NE(error_at("0,1,0,1,2,2\n1,0\n2,0\n3,0\n4,0\n5,0\n").first, -1);
  EXPECT_EQ(error_at("0,1,0,1,2,2\n1,0\n2,0\n3,0\n4,0\n"), std::make_pair(-1, -1));
}

TEST(Csv, Json) {
  SampledField f = field(gaussian, 1.0, 2);
  std::string j = xform::to_json(f);
  EXPECT_NE(j.find("\"nq\""), std::string::npos);
  EXPECT_NE(j.find("\"re\""), std::string::npos);
}

TEST(Validate, RejectsBadGrids) {
  SampledField f;
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f = field(gaussian, 1.0, 3);
  f.values.pop_back();
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f = field(gaussian, 1.0, 3);
  f.q_max = f.q_min;
  EXPECT_THROW(f.validate(), std::invalid_argument);
}
