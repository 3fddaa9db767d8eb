#include "psqm/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "psqm/exprio.hpp"
#include "psqm/fockspace.hpp"
#include "psqm/opalg.hpp"
#include "psqm/ordering.hpp"
#include "psqm/phasexform.hpp"

namespace psqm::verify {

void Check::exact(bool equal, const std::string& label, const std::string& got, const std::string& want) {
  ++cases;
  if (equal) return;
  if (mismatches++ == 0) {
    computed = got;
    oracle = want;
    where = label;
  }
  passed = false;
}

void Check::numeric(double error, const std::string& label, const std::string& got, const std::string& want) {
  ++cases;
  const bool ok = error <= tolerance;  // NaN fails
  if (!ok) {
    ++mismatches;
    passed = false;
  }
  if (cases == 1 || error > max_error || std::isnan(error)) {
    max_error = std::isnan(error) ? error : std::max(max_error, error);
    computed = got;
    oracle = want;
    where = label;
  }
}

bool SuiteReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::size_t SuiteReport::mismatches() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.mismatches;
  return n;
}

namespace {

using opalg::Word;
using opalg::WordPolynomial;
using ordering::CommutativePoly2;
using Complex = std::complex<double>;

std::string pair_label(unsigned m, unsigned r) { return "(" + std::to_string(m) + "," + std::to_string(r) + ")"; }

std::string format(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string format(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

WordPolynomial single_word(const Word& w) { return {{w, ExactScalar(1)}}; }

Word qp_word(unsigned m, unsigned r) { return std::string(m, 'Q') + std::string(r, 'P'); }
Word pq_word(unsigned m, unsigned r) { return std::string(r, 'P') + std::string(m, 'Q'); }

FreeExpression symbol_power(Symbol s, unsigned n) { return FreeExpression::power(FreeExpression::symbol(s), n); }

void exact_poly(Check& c, const OrderedPolynomial& got, const OrderedPolynomial& want, const std::string& label) {
  const bool equal = got == want;
  c.exact(equal, label, equal ? std::string() : exprio::render(got), equal ? std::string() : exprio::render(want));
}

void exact_symbol(Check& c, const CommutativePoly2& got, const CommutativePoly2& want, const std::string& label) {
  const bool equal = got == want;
  c.exact(equal, label, equal ? std::string() : got.to_string(), equal ? std::string() : want.to_string());
}

double max_abs_diff(const fock::Matrix& a, const fock::Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Worst entry of a - b, formatted for the report.
std::pair<std::string, std::string> worst_entry(const fock::Matrix& a, const fock::Matrix& b) {
  Eigen::Index i = 0, j = 0;
  (a - b).cwiseAbs().maxCoeff(&i, &j);
  std::string at = "[" + std::to_string(i) + "," + std::to_string(j) + "] ";
  return {at + format(a(i, j)), at + format(b(i, j))};
}

void numeric_matrix(Check& c, const fock::Matrix& got, const fock::Matrix& want, const std::string& label) {
  auto [g, w] = worst_entry(got, want);
  c.numeric(max_abs_diff(got, want), label, g, w);
}

}  // namespace

std::vector<Check> ordering_checks(unsigned max_degree) {
  Check weyl_pq{"weyl->pq"}, weyl_qp{"weyl->qp"}, qp_weyl{"qp->weyl"}, pq_weyl{"pq->weyl"}, qp_pq{"qp->pq"},
      pq_qp{"pq->qp"}, forms{"hermite forms"}, round_trip{"render/parse round trip"};

  auto check_render = [&](const OrderedPolynomial& p, const std::string& label) {
    OrderedPolynomial back(p.ordering());
    std::string text = exprio::render(p);
    try {
      back = exprio::parse_polynomial(text, p.ordering());
    } catch (const std::exception& e) {
      round_trip.exact(false, label, e.what(), text);
      return;
    }
    round_trip.exact(back == p, label, exprio::render(back), text);
  };

  for (unsigned m = 0; m <= max_degree; ++m) {
    for (unsigned r = 0; r <= max_degree; ++r) {
      const std::string label = pair_label(m, r);
      const WordPolynomial weyl_words = opalg::symmetrized_word(m, r);
      const OrderedPolynomial qp_in_pq = opalg::rewrite_words(single_word(qp_word(m, r)), Ordering::PQ);
      const OrderedPolynomial pq_in_pq = opalg::rewrite_words(single_word(pq_word(m, r)), Ordering::PQ);

      OrderedPolynomial a = ordering::weyl_to_pq(m, r);
      exact_poly(weyl_pq, a, opalg::rewrite_words(weyl_words, Ordering::PQ), label);
      OrderedPolynomial b = ordering::weyl_to_qp(m, r);
      exact_poly(weyl_qp, b, opalg::rewrite_words(weyl_words, Ordering::QP), label);
      OrderedPolynomial c = ordering::qp_to_weyl(m, r);
      exact_poly(qp_weyl, opalg::canonical_pq(c), qp_in_pq, label);
      OrderedPolynomial d = ordering::pq_to_weyl(m, r);
      exact_poly(pq_weyl, opalg::canonical_pq(d), pq_in_pq, label);
      OrderedPolynomial e = ordering::qp_to_pq(m, r);
      exact_poly(qp_pq, e, qp_in_pq, label);
      OrderedPolynomial f = ordering::pq_to_qp(m, r);
      exact_poly(pq_qp, f, opalg::rewrite_words(single_word(pq_word(m, r)), Ordering::QP), label);

      exact_symbol(forms, ordering::hermite_form_qp_to_weyl(m, r), ordering::symbol_of(c), label + " qp");
      exact_symbol(forms, ordering::hermite_form_pq_to_weyl(m, r), ordering::symbol_of(d), label + " pq");

      for (const auto* p : {&a, &b, &c, &d, &e, &f}) check_render(*p, label + " " + exprio::render(*p));
    }
  }
  return {weyl_pq, weyl_qp, qp_weyl, pq_weyl, qp_pq, pq_qp, forms, round_trip};
}

std::vector<Check> commutator_checks(unsigned max_degree) {
  Check pq{"[Q^m,P^r] pq form"}, qp{"[Q^m,P^r] qp form"}, agree{"pq and qp forms agree"}, unit{"[Q,P] = i"};
  for (unsigned m = 0; m <= max_degree; ++m) {
    for (unsigned r = 0; r <= max_degree; ++r) {
      const std::string label = pair_label(m, r);
      FreeExpression qm = symbol_power(Symbol::Q, m), pr = symbol_power(Symbol::P, r);
      exact_poly(pq, ordering::commutator_closed_form(m, r, Ordering::PQ), opalg::commutator(qm, pr), label);
      const OrderedPolynomial in_qp = ordering::commutator_closed_form(m, r, Ordering::QP);
      exact_poly(qp, in_qp, opalg::rewrite_to_qp(qm * pr - pr * qm), label);
      exact_poly(agree, opalg::canonical_pq(in_qp), ordering::commutator_closed_form(m, r, Ordering::PQ), label);
    }
  }
  exact_poly(unit, opalg::commutator(FreeExpression::symbol(Symbol::Q), FreeExpression::symbol(Symbol::P)),
             OrderedPolynomial::constant(Ordering::PQ, ExactScalar::i()), "(1,1)");
  std::vector<Check> out{pq, qp, agree, unit};
  for (auto& c : binomial_checks(max_degree)) out.push_back(std::move(c));
  return out;
}

std::vector<Check> binomial_checks(unsigned max_n) {
  Check weyl{"(P+Q)^n weyl"}, pq{"(P+Q)^n pq"}, qp{"(P+Q)^n qp"};
  const FreeExpression sum = FreeExpression::symbol(Symbol::P) + FreeExpression::symbol(Symbol::Q);
  for (unsigned n = 0; n <= max_n; ++n) {
    const std::string label = "n=" + std::to_string(n);
    const FreeExpression power = FreeExpression::power(sum, n);
    const OrderedPolynomial in_pq = opalg::rewrite_to_pq(power);
    exact_poly(pq, ordering::p_plus_q_power(n, Ordering::PQ), in_pq, label);
    exact_poly(qp, ordering::p_plus_q_power(n, Ordering::QP), opalg::rewrite_to_qp(power), label);
    exact_poly(weyl, opalg::canonical_pq(ordering::p_plus_q_power(n, Ordering::Weyl)), in_pq, label);
  }
  return {weyl, pq, qp};
}

std::vector<Check> hermite_checks(unsigned max_degree) {
  Check derivative{"derivative form = hermite form"}, inverse{"inverse after forward"}, samples{"reference values"};
  for (unsigned m = 0; m <= max_degree; ++m) {
    for (unsigned r = 0; r <= max_degree; ++r) {
      const std::string label = pair_label(m, r);
      const CommutativePoly2 forward = xform::monomial_forward(m, r);
      exact_symbol(derivative, xform::derivative_representation(m, r), forward, label);
      exact_symbol(inverse, xform::inverse_polynomial(forward), CommutativePoly2::monomial(m, r), label);
    }
  }
  const ExactScalar i = ExactScalar::i();
  CommutativePoly2 h11 = CommutativePoly2::monomial(1, 1) + CommutativePoly2::monomial(0, 0, -1);
  CommutativePoly2 h21 = CommutativePoly2::monomial(2, 1) + CommutativePoly2::monomial(1, 0, -2);
  CommutativePoly2 f11 = CommutativePoly2::monomial(1, 1) + CommutativePoly2::monomial(0, 0, i * ExactScalar::rational(1, 2));
  CommutativePoly2 raw11 = CommutativePoly2::monomial(1, 1, -4) + CommutativePoly2::monomial(0, 0, ExactScalar(-2) * i);
  exact_symbol(samples, ordering::hermite_two_var(1, 1), h11, "H(1,1)");
  exact_symbol(samples, ordering::hermite_two_var(2, 1), h21, "H(2,1)");
  exact_symbol(samples, xform::monomial_forward(0, 0), CommutativePoly2::monomial(0, 0), "forward (0,0)");
  exact_symbol(samples, xform::monomial_forward(1, 1), f11, "forward (1,1)");
  exact_symbol(samples, xform::monomial_forward(2, 0), CommutativePoly2::monomial(2, 0), "forward (2,0)");
  exact_symbol(samples, xform::derivative_representation_raw(1, 1), raw11, "raw derivative (1,1)");
  return {derivative, inverse, samples};
}

std::vector<Check> wigner_checks(int dim) {
  constexpr int kBlock = 8;
  Check marg_q{"q marginal"}, marg_p{"p marginal"}, vacuum{"vacuum marginal at 0"};
  marg_q.tolerance = marg_p.tolerance = vacuum.tolerance = 1e-6;
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    for (auto axis : {fock::Axis::Q, fock::Axis::P}) {
      fock::MarginalResult res = fock::marginal_check(axis, x, dim);
      Check& c = axis == fock::Axis::Q ? marg_q : marg_p;
      numeric_matrix(c, res.numeric, res.analytic, "x=" + format(x));
      if (axis == fock::Axis::Q && x == 0.0) {
        const double want = 1.0 / std::sqrt(std::numbers::pi);
        vacuum.numeric(std::abs(res.numeric(0, 0) - want), "x=0", format(res.numeric(0, 0)), format(want));
      }
    }
  }

  Check weyl{"weyl quantization"}, pq_symbol{"pq symbol quantization"};
  weyl.tolerance = pq_symbol.tolerance = 1e-3;
  std::vector<CommutativePoly2> symbols;
  std::vector<fock::Matrix> expected;
  std::vector<std::string> labels;
  for (unsigned deg = 0; deg <= 4; ++deg) {
    for (unsigned m = 0; m <= deg; ++m) {
      const unsigned r = deg - m;
      symbols.push_back(CommutativePoly2::monomial(m, r));
      expected.push_back(fock::evaluate(ordering::weyl_to_pq(m, r), dim).block(kBlock));
      labels.push_back("weyl " + pair_label(m, r));
    }
  }
  const std::size_t weyl_count = symbols.size();
  for (unsigned deg = 0; deg <= 3; ++deg) {
    for (unsigned m = 0; m <= deg; ++m) {
      const unsigned r = deg - m;
      symbols.push_back(ordering::symbol_of(ordering::pq_to_weyl(m, r)));
      expected.push_back(fock::evaluate(OrderedPolynomial::monomial(Ordering::PQ, m, r), dim).block(kBlock));
      labels.push_back("P^r Q^m " + pair_label(m, r));
    }
  }
  const fock::PhaseGrid grid{{-7.0, 7.0, 0.02}, {-7.0, 7.0, 0.02}};
  std::vector<fock::Matrix> got = fock::quantize(symbols, grid, kBlock);
  for (std::size_t k = 0; k < symbols.size(); ++k)
    numeric_matrix(k < weyl_count ? weyl : pq_symbol, got[k], expected[k], labels[k]);

  Check coherent{"coherent state wigner function"}, norm{"wigner normalization"}, route{"expm route agreement"};
  coherent.tolerance = 1e-6;
  norm.tolerance = 1e-4;
  route.tolerance = 1e-8;
  const std::vector<Complex> betas{{0.0, 0.0}, {1.0, 0.0}, {0.6, 0.8}, {-0.5, 0.5}};
  std::vector<fock::PhasePoint> points;
  for (int a = 0; a <= 24; ++a)
    for (int b = 0; b <= 24; ++b) points.push_back({-3.0 + 0.25 * a, -3.0 + 0.25 * b});
  for (Complex beta : betas) {
    fock::FockMatrix rho = fock::pure_density(fock::coherent_state(beta, dim));
    std::vector<Complex> w = fock::wigner_function(rho, points);
    const double qb = std::numbers::sqrt2 * beta.real(), pb = std::numbers::sqrt2 * beta.imag();
    double worst = -1.0;
    std::string got_text, want_text;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double dq = points[k].q - qb, dp = points[k].p - pb;
      const double want = std::exp(-dq * dq - dp * dp) / std::numbers::pi;
      const double err = std::abs(w[k] - want);
      if (err > worst || std::isnan(err)) {
        worst = err;
        got_text = format(w[k]);
        want_text = format(want);
      }
    }
    coherent.numeric(worst, "beta=" + format(beta), got_text, want_text);
  }
  {
    const Complex beta(0.6, 0.8);
    const double total =
        fock::wigner_integral(fock::pure_density(fock::coherent_state(beta, dim)), {{-6, 6, 0.05}, {-6, 6, 0.05}});
    norm.numeric(std::abs(total - 1.0), "beta=" + format(beta), format(total), "1");
  }
  for (fock::PhasePoint pt : {fock::PhasePoint{0.5, -0.3}, fock::PhasePoint{-1.0, 0.7}}) {
    fock::FockMatrix op = fock::wigner_operator(pt, dim);
    const int n = std::min(op.reliable_dim, kBlock);
    numeric_matrix(route, op.block(n), fock::wigner_block(pt, n), "(" + format(pt.q) + "," + format(pt.p) + ")");
  }
  return {marg_q, marg_p, vacuum, weyl, pq_symbol, coherent, norm, route};
}

namespace {

Complex gaussian(double q, double p) { return std::exp(-q * q - p * p); }

Complex gaussian_image(double q, double p) {
  return std::exp(Complex(-(q * q + p * p) / 2.0, p * q)) / std::numbers::sqrt2;
}

void field_check(Check& c, const xform::SampledField& got, const std::function<Complex(double, double)>& want,
                 const std::string& label) {
  // central half of the grid
  double worst = -1.0;
  std::string g, w;
  for (int a = got.nq / 4; a < got.nq - got.nq / 4; ++a) {
    for (int b = got.np / 4; b < got.np - got.np / 4; ++b) {
      const Complex target = want(got.q_at(a), got.p_at(b));
      const double err = std::abs(got.at(a, b) - target);
      if (err > worst || std::isnan(err)) {
        worst = err;
        g = format(got.at(a, b));
        w = format(target);
      }
    }
  }
  c.numeric(worst, label, g, w);
}

void point_check(Check& c, const std::vector<xform::Point>& points, const std::vector<Complex>& got,
                 const std::function<Complex(double, double)>& want, const std::string& label) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Complex target = want(points[k].q, points[k].p);
    c.numeric(std::abs(got[k] - target), label + " at (" + format(points[k].q) + "," + format(points[k].p) + ")",
              format(got[k]), format(target));
  }
}

}  // namespace

std::vector<Check> transform_checks() {
  constexpr double kHalf = 8.0;
  constexpr int kSamples = 400;
  auto sample = [&](const std::function<Complex(double, double)>& fn) {
    return xform::SampledField::sample(-kHalf, kHalf, -kHalf, kHalf, kSamples, kSamples, fn);
  };

  std::vector<xform::Point> points{{0.0, 0.0}, {1.0, 1.0}};
  for (double q : {-2.0, -0.7, 0.4, 1.5})
    for (double p : {-1.2, 0.3, 2.0}) points.push_back({q, p});

  Check pair{"gaussian pair"}, inverse_pair{"inverse gaussian pair"}, round{"round trip"};
  Check parseval{"parseval"}, unity{"transform of unity"}, regularized{"regularized monomials"};
  pair.tolerance = 1e-6;
  inverse_pair.tolerance = round.tolerance = parseval.tolerance = 1e-5;
  regularized.tolerance = 1e-2;

  const xform::SampledField h = sample(gaussian);
  point_check(pair, points, xform::forward_transform_at(h, points), gaussian_image, "G");
  const xform::SampledField g = sample(gaussian_image);
  point_check(inverse_pair, points, xform::inverse_transform_at(g, points), gaussian, "h");

  auto poly_gaussian = [](double q, double p) { return (1.0 + q * p - 0.5 * q * q) * std::exp(-q * q - p * p); };
  for (const auto& [name, fn] : std::vector<std::pair<std::string, std::function<Complex(double, double)>>>{
           {"gaussian", gaussian}, {"polynomial times gaussian", poly_gaussian}}) {
    const xform::SampledField in = sample(fn);
    const xform::TransformResult fwd = xform::forward_transform(in);
    const xform::TransformResult back = xform::inverse_transform(fwd.field);
    field_check(round, back.field, fn, name);
    if (!fwd.reliable || !back.reliable) round.numeric(INFINITY, name, fwd.warning + back.warning, "decayed input");
  }

  {
    xform::ParsevalResult pr = xform::parseval_check(h);
    parseval.numeric(std::abs(pr.lhs - 0.5), "gaussian lhs", format(pr.lhs), "0.5");
    parseval.numeric(std::abs(pr.rhs - 0.5), "gaussian rhs", format(pr.rhs), "0.5");
    xform::ParsevalResult shifted = xform::parseval_check(sample([](double q, double p) {
      return std::exp(-(p - 1) * (p - 1) - (q + 1) * (q + 1));
    }));
    parseval.numeric(std::abs(shifted.lhs - 0.5), "shifted lhs", format(shifted.lhs), "0.5");
    parseval.numeric(std::abs(shifted.rhs - shifted.lhs), "shifted rhs", format(shifted.rhs), format(shifted.lhs));
  }

  exact_symbol(unity, xform::forward_polynomial(CommutativePoly2::monomial(0, 0)), CommutativePoly2::monomial(0, 0),
               "1");
  exact_symbol(unity, xform::inverse_polynomial(CommutativePoly2::monomial(0, 0)), CommutativePoly2::monomial(0, 0),
               "1 inverse");

  // x^m y^r exp(-eps (x^2 + y^2)) at three eps, extrapolated to eps -> 0.
  std::vector<xform::Point> lattice;
  for (double q : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double p : {-1.0, -0.5, 0.0, 0.5, 1.0}) lattice.push_back({q, p});
  const double eps[3] = {0.02, 0.01, 0.005};
  const double weights[3] = {1.0 / 3.0, -2.0, 8.0 / 3.0};
  for (unsigned deg = 0; deg <= 3; ++deg) {
    for (unsigned m = 0; m <= deg; ++m) {
      const unsigned r = deg - m;
      std::vector<Complex> extrapolated(lattice.size(), 0.0);
      for (int k = 0; k < 3; ++k) {
        const double e = eps[k];
        const double half = std::sqrt(36.0 / e);
        const double step = 0.7 * std::sqrt(e);
        const int n = static_cast<int>(std::ceil(2.0 * half / step)) + 1;
        xform::GridSpec grid{-half, half, -half, half, n, n};
        auto fn = [m, r, e](double q, double p) -> Complex {
          return std::pow(q, m) * std::pow(p, r) * std::exp(-e * (q * q + p * p));
        };
        std::vector<Complex> v = xform::forward_transform_at(fn, grid, lattice);
        for (std::size_t j = 0; j < lattice.size(); ++j) extrapolated[j] += weights[k] * v[j];
      }
      const CommutativePoly2 exact = xform::monomial_forward(m, r);
      double worst = -1.0;
      std::string got, want;
      for (std::size_t j = 0; j < lattice.size(); ++j) {
        const Complex target = exact.evaluate(Complex(lattice[j].q), Complex(lattice[j].p));
        const double err = std::abs(extrapolated[j] - target);
        if (err > worst || std::isnan(err)) {
          worst = err;
          got = format(extrapolated[j]);
          want = format(target);
        }
      }
      regularized.numeric(worst, pair_label(m, r), got, want);
    }
  }
  return {pair, inverse_pair, round, parseval, unity, regularized};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"orderings", "commutators", "hermite", "wigner", "transform"};
  return names;
}

SuiteReport run_suite(std::string_view name, const Options& options) {
  if (options.max_degree > 8) throw ResourceError("--max-degree must be at most 8");
  if (options.dim < 16 || options.dim > 128) throw ResourceError("--dim must be between 16 and 128");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(name);
  if (name == "orderings") {
    report.checks = ordering_checks(options.max_degree);
  } else if (name == "commutators") {
    report.checks = commutator_checks(options.max_degree);
  } else if (name == "hermite") {
    report.checks = hermite_checks(options.max_degree);
  } else if (name == "wigner") {
    report.checks = wigner_checks(options.dim);
  } else if (name == "transform") {
    report.checks = transform_checks();
  } else {
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string to_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j{{"name", c.name},
                     {"passed", c.passed},
                     {"cases", c.cases},
                     {"mismatches", c.mismatches},
                     {"max_error", std::isfinite(c.max_error) ? nlohmann::json(c.max_error) : nlohmann::json(nullptr)},
                     {"tolerance", c.tolerance}};
    if (!c.passed || c.tolerance > 0) {
      j["computed"] = c.computed;
      j["oracle"] = c.oracle;
      j["where"] = c.where;
    }
    checks.push_back(std::move(j));
  }
  nlohmann::json out{{"suite", report.suite},
                     {"status", report.passed() ? "ok" : "mismatch"},
                     {"mismatches", report.mismatches()},
                     {"seconds", report.seconds},
                     {"checks", checks}};
  return out.dump(2);
}

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  cases=" << c.cases << " mismatches=" << c.mismatches;
    if (c.tolerance > 0) os << " max_error=" << format(c.max_error) << " tol=" << format(c.tolerance);
    os << '\n';
    if (!c.passed) os << "  at " << c.where << "\n    computed: " << c.computed << "\n    oracle:   " << c.oracle << '\n';
  }
  os << report.suite << ": " << (report.passed() ? "ok" : "mismatch") << " (" << report.mismatches()
     << " mismatches, " << format(report.seconds) << " s)\n";
  return os.str();
}

}  // namespace psqm::verify
