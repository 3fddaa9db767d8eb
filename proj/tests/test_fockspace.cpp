#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "psqm/fockspace.hpp"
#include "psqm/ordering.hpp"
#include "support/oracle.hpp"

using namespace psqm;
using fock::Complex;
using fock::Matrix;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const double kInvPi = 1.0 / std::numbers::pi;

}  // namespace

TEST(Ladder, Entries) {
  auto [a, adag] = fock::build_ladder(3);
  EXPECT_EQ(a.reliable_dim, 2);
  Matrix want = Matrix::Zero(3, 3);
  want(0, 1) = 1.0;
  want(1, 2) = std::sqrt(2.0);
  EXPECT_EQ(a.entries, want);
  EXPECT_EQ(adag.entries, Matrix(want.adjoint()));
  EXPECT_THROW(fock::build_ladder(1), std::invalid_argument);
}

TEST(Ladder, CommutatorAndVacuum) {
  const int n = 12;
  auto [a, adag] = fock::build_ladder(n);
  Matrix c = a.entries * adag.entries - adag.entries * a.entries;
  EXPECT_LT(max_abs(c.topLeftCorner(n - 1, n - 1) - Matrix::Identity(n - 1, n - 1)), 1e-13);
  EXPECT_EQ(max_abs(a.entries * fock::number_state(0, n)), 0.0);
}

TEST(CanonicalPair, Entries) {
  auto [q2, p2] = fock::build_qp(2);
  EXPECT_DOUBLE_EQ(q2.entries(0, 1).real(), 1 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(q2.entries(1, 0).real(), 1 / std::sqrt(2.0));

  auto [q, p] = fock::build_qp(10);
  EXPECT_NEAR(std::abs((q.entries * q.entries)(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_LT(max_abs(q.entries - q.entries.adjoint()), 1e-15);
  EXPECT_LT(max_abs(p.entries - p.entries.adjoint()), 1e-15);
  Matrix c = q.entries * p.entries - p.entries * q.entries;
  EXPECT_LT(max_abs(c.topLeftCorner(9, 9) - Complex(0, 1) * Matrix::Identity(9, 9)), 1e-13);

  oracle::Ladder ref(10);
  EXPECT_LT(max_abs(q.entries - ref.q), 1e-15);
  EXPECT_LT(max_abs(p.entries - ref.p), 1e-15);
}

TEST(Coherent, Components) {
  fock::Vector vac = fock::coherent_state(0.0, 16);
  EXPECT_EQ(vac, fock::number_state(0, 16));

  const Complex beta(0.6, 0.8);
  fock::Vector v = fock::coherent_state(beta, 64);
  auto [a, adag] = fock::build_ladder(64);
  fock::Vector av = a.entries * v;
  EXPECT_LT((av.head(60) - beta * v.head(60)).cwiseAbs().maxCoeff(), 1e-8);

  for (Complex b : {Complex(2, 0), Complex(0, -2), Complex(1.2, 1.6)})
    EXPECT_NEAR(fock::coherent_state(b, 64).norm(), 1.0, 1e-10);

  // first components by hand
  EXPECT_NEAR(std::abs(v(2) - std::exp(-0.5) * beta * beta / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_THROW(fock::coherent_state(Complex(3, 0), 16), fock::TruncationError);
}

TEST(WignerOperator, Origin) {
  fock::FockMatrix d = fock::wigner_operator({0.0, 0.0}, 32);
  EXPECT_EQ(d.reliable_dim, 32);
  Matrix want = Matrix::Zero(32, 32);
  for (int n = 0; n < 32; ++n) want(n, n) = (n % 2 ? -kInvPi : kInvPi);
  EXPECT_LT(max_abs(d.entries - want), 1e-15);
}

TEST(WignerOperator, HermitianAndReliableDim) {
  fock::FockMatrix d = fock::wigner_operator({0.7, -0.4}, 64);
  EXPECT_LT(max_abs(d.entries - d.entries.adjoint()), 1e-12);
  const double alpha2 = (0.49 + 0.16) / 2;
  EXPECT_EQ(d.reliable_dim, 64 - static_cast<int>(std::ceil(8 * alpha2)));
  EXPECT_THROW(fock::wigner_operator({3.0, 3.0}, 32), fock::TruncationError);
}

TEST(WignerOperator, CoherentExpectation) {
  const Complex beta(0.6, -0.5);
  fock::Vector v = fock::coherent_state(beta, 64);
  const double qb = std::sqrt(2.0) * beta.real(), pb = std::sqrt(2.0) * beta.imag();
  for (fock::PhasePoint pt : {fock::PhasePoint{0.3, 0.2}, fock::PhasePoint{-1.0, 0.9}, fock::PhasePoint{1.2, -1.3}}) {
    fock::FockMatrix d = fock::wigner_operator(pt, 64);
    Complex got = v.dot(d.entries * v);
    double want = kInvPi * std::exp(-(pt.q - qb) * (pt.q - qb) - (pt.p - pb) * (pt.p - pb));
    EXPECT_NEAR(std::abs(got - want), 0.0, 1e-6);
  }
}

TEST(WignerOperator, BlockMatchesMatrixExponential) {
  for (fock::PhasePoint pt : {fock::PhasePoint{0.5, -0.3}, fock::PhasePoint{-0.9, 0.6}}) {
    fock::FockMatrix d = fock::wigner_operator(pt, 64);
    EXPECT_LT(max_abs(d.block(8) - fock::wigner_block(pt, 8)), 1e-9);
  }
}

TEST(Displacement, UnitaryRows) {
  Matrix d = fock::displacement_rows(Complex(1.5, -2.0), 6, fock::displacement_columns(Complex(1.5, -2.0), 6));
  Matrix g = d * d.adjoint();
  EXPECT_LT(max_abs(g - Matrix::Identity(6, 6)), 1e-10);
}

TEST(Evaluate, Examples) {
  const int n = 32;
  OrderedPolynomial pq(Ordering::PQ);
  pq.add_term({1, 1}, 1);
  pq.add_term({0, 0}, ExactScalar::i());
  fock::FockMatrix lhs = fock::evaluate(pq, n);
  fock::FockMatrix rhs = fock::evaluate(OrderedPolynomial::monomial(Ordering::QP, 1, 1), n);
  EXPECT_EQ(lhs.reliable_dim, n - 2);
  EXPECT_LT(max_abs(lhs.block(lhs.reliable_dim) - rhs.block(lhs.reliable_dim)), 1e-12);

  oracle::Ladder ref(n);
  fock::FockMatrix c = fock::evaluate(ordering::qp_to_pq(2, 2), n);
  Matrix direct = oracle::power(ref.q, 2) * oracle::power(ref.p, 2);
  EXPECT_LT(max_abs(c.block(c.reliable_dim) - direct.topLeftCorner(c.reliable_dim, c.reliable_dim)), 1e-10);

  fock::FockMatrix zero = fock::evaluate(OrderedPolynomial(Ordering::PQ), n);
  EXPECT_EQ(max_abs(zero.entries), 0.0);
  EXPECT_THROW(fock::evaluate(OrderedPolynomial::monomial(Ordering::Weyl, 1, 1), n), std::logic_error);
}

TEST(WignerFunction, Vacuum) {
  fock::FockMatrix rho = fock::pure_density(fock::number_state(0, 32));
  std::vector<fock::PhasePoint> origin{{0.0, 0.0}};
  EXPECT_NEAR(std::abs(fock::wigner_function(rho, origin)[0] - kInvPi), 0.0, 1e-12);
}

TEST(WignerFunction, CoherentStateIsRealGaussian) {
  const Complex beta(-0.5, 0.5);
  fock::FockMatrix rho = fock::pure_density(fock::coherent_state(beta, 64));
  std::vector<fock::PhasePoint> pts;
  for (double q = -3; q <= 3; q += 0.5)
    for (double p = -3; p <= 3; p += 0.5) pts.push_back({q, p});
  std::vector<Complex> w = fock::wigner_function(rho, pts);
  const double qb = std::sqrt(2.0) * beta.real(), pb = std::sqrt(2.0) * beta.imag();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double want = kInvPi * std::exp(-std::pow(pts[k].q - qb, 2) - std::pow(pts[k].p - pb, 2));
    EXPECT_NEAR(w[k].real(), want, 1e-6);
    EXPECT_NEAR(w[k].imag(), 0.0, 1e-8);
  }
}

TEST(WignerFunction, RejectsBadDensity) {
  fock::FockMatrix rho = fock::pure_density(fock::number_state(0, 8));
  rho.entries(0, 0) = 2.0;
  std::vector<fock::PhasePoint> origin{{0.0, 0.0}};
  EXPECT_THROW(fock::wigner_function(rho, origin), fock::InputError);
  rho.entries(0, 0) = 1.0;
  rho.entries(0, 1) = Complex(0, 0.1);
  EXPECT_THROW(fock::wigner_function(rho, origin), fock::InputError);
}

TEST(WignerFunction, Normalization) {
  fock::FockMatrix rho = fock::pure_density(fock::coherent_state(Complex(0.3, -0.4), 48));
  EXPECT_NEAR(fock::wigner_integral(rho, {{-6, 6, 0.1}, {-6, 6, 0.1}}), 1.0, 1e-4);
}

TEST(HermiteFunctions, MatchExplicitSum) {
  for (double x : {-3.5, -1.0, 0.0, 0.4, 2.2}) {
    Eigen::VectorXd psi = fock::hermite_functions(x, 12);
    for (int n = 0; n < 12; ++n) EXPECT_NEAR(psi(n), oracle::hermite_function(n, x), 1e-12) << n << " " << x;
  }
}

TEST(Marginals, QAxisAtOrigin) {
  fock::MarginalResult res = fock::marginal_check(fock::Axis::Q, 0.0, 64);
  EXPECT_NEAR(res.numeric(0, 0).real(), 1 / std::sqrt(std::numbers::pi), 1e-6);
  EXPECT_NEAR(std::abs(res.numeric(0, 1)), 0.0, 1e-6);
  EXPECT_LT(res.max_error, 1e-6);
}

TEST(Marginals, PAxis) {
  fock::MarginalResult res = fock::marginal_check(fock::Axis::P, 0.0, 64);
  EXPECT_NEAR(res.numeric(0, 0).real(), 1 / std::sqrt(std::numbers::pi), 1e-6);
  fock::MarginalResult off = fock::marginal_check(fock::Axis::P, 1.0, 64);
  // i^m psi_m(x) (-i)^n psi_n(x)
  EXPECT_NEAR(std::abs(off.analytic(1, 0) - Complex(0, 1) * oracle::hermite_function(1, 1.0) * oracle::hermite_function(0, 1.0)),
              0.0, 1e-12);
  EXPECT_LT(off.max_error, 1e-6);
}

TEST(Quantize, ConstantSymbolGivesIdentity) {
  std::vector<ordering::CommutativePoly2> symbols{ordering::CommutativePoly2::monomial(0, 0),
                                                  ordering::CommutativePoly2::monomial(1, 0)};
  std::vector<Matrix> got = fock::quantize(symbols, {{-7, 7, 0.1}, {-7, 7, 0.1}}, 4);
  EXPECT_LT(max_abs(got[0] - Matrix::Identity(4, 4)), 1e-6);
  oracle::Ladder ref(8);
  EXPECT_LT(max_abs(got[1] - ref.q.topLeftCorner(4, 4)), 1e-6);
}

TEST(Export, CsvAndJson) {
  auto [a, adag] = fock::build_ladder(2);
  std::string csv = fock::to_csv(a);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rows,cols,reliable_dim");
  EXPECT_NE(csv.find("\n2,2,1\n"), std::string::npos) << csv;
  EXPECT_NE(fock::to_json(a).find("reliable_dim"), std::string::npos);
}
