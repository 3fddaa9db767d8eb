#include "psqm/fockspace.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"
#include "parallel.hpp"

namespace psqm::fock {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int N) {
  if (N < 2) throw std::invalid_argument("Fock dimension must be at least 2, got " + std::to_string(N));
}

Matrix parity(int N) {
  Matrix pi = Matrix::Zero(N, N);
  for (int n = 0; n < N; ++n) pi(n, n) = n % 2 == 0 ? 1.0 : -1.0;
  return pi;
}

// Complex coefficients of a symbol, flattened for the quadrature loop.
struct NumericTerm {
  unsigned i;
  unsigned j;
  Complex c;
};

std::vector<NumericTerm> flatten(const ordering::CommutativePoly2& symbol) {
  std::vector<NumericTerm> out;
  for (const auto& [key, c] : symbol.terms()) out.push_back({key.first, key.second, c.to_complex()});
  return out;
}

Complex evaluate_terms(const std::vector<NumericTerm>& terms, double q, double p) {
  Complex sum = 0.0;
  for (const auto& t : terms) sum += t.c * std::pow(q, t.i) * std::pow(p, t.j);
  return sum;
}

void check_density(const FockMatrix& rho) {
  const Matrix& m = rho.entries;
  if (m.rows() != m.cols() || m.rows() < 1) throw InputError("density matrix must be square and non-empty");
  double hermitian_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (hermitian_defect > 1e-8) throw InputError("density matrix is not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > 1e-8) throw InputError("density matrix trace differs from 1");
}

}  // namespace

Complex PhasePoint::alpha() const { return Complex(q, p) / std::numbers::sqrt2; }

std::pair<FockMatrix, FockMatrix> build_ladder(int N) {
  require_dim(N);
  Matrix a = Matrix::Zero(N, N);
  for (int n = 1; n < N; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix adag = a.adjoint();
  return {FockMatrix{std::move(a), N - 1}, FockMatrix{std::move(adag), N - 1}};
}

std::pair<FockMatrix, FockMatrix> build_qp(int N) {
  auto [a, adag] = build_ladder(N);
  const double s = std::numbers::sqrt2;
  Matrix q = (a.entries + adag.entries) / s;
  Matrix p = (a.entries - adag.entries) / (s * Complex(0.0, 1.0));
  return {FockMatrix{std::move(q), N - 1}, FockMatrix{std::move(p), N - 1}};
}

Vector coherent_state(Complex beta, int N) {
  require_dim(N);
  const double b2 = std::norm(beta);
  if (b2 > N / 4.0)
    throw TruncationError("coherent state with |beta|^2 = " + std::to_string(b2) + " needs more than " +
                          std::to_string(N) + " levels");
  Vector v(N);
  v(0) = std::exp(-b2 / 2.0);
  for (int n = 1; n < N; ++n) v(n) = v(n - 1) * beta / std::sqrt(static_cast<double>(n));
  return v;
}

Vector number_state(int n, int N) {
  require_dim(N);
  if (n < 0 || n >= N) throw std::out_of_range("number state outside the basis");
  Vector v = Vector::Zero(N);
  v(n) = 1.0;
  return v;
}

FockMatrix pure_density(const Vector& v) {
  return FockMatrix{v * v.adjoint(), static_cast<int>(v.size())};
}

FockMatrix wigner_operator(PhasePoint pt, int N) {
  require_dim(N);
  const Complex alpha = pt.alpha();
  const int corrupted = static_cast<int>(std::ceil(8.0 * std::norm(alpha)));
  if (corrupted >= N)
    throw TruncationError("|alpha|^2 = " + std::to_string(std::norm(alpha)) + " too large for dimension " +
                          std::to_string(N));
  auto [a, adag] = build_ladder(N);
  Matrix generator = alpha * adag.entries - std::conj(alpha) * a.entries;
  Matrix d = generator.exp();
  Matrix delta = d * parity(N) * d.adjoint() / kPi;
  // Hermitian by construction up to rounding; symmetrize so it is exact.
  delta = (delta + delta.adjoint()).eval() / 2.0;
  return FockMatrix{std::move(delta), N - corrupted};
}

int displacement_columns(Complex alpha, int rows) {
  const double reach = std::sqrt(static_cast<double>(rows)) + std::abs(alpha);
  return static_cast<int>(std::ceil(reach * reach + 12.0 * reach + 40.0));
}

Matrix displacement_rows(Complex alpha, int rows, int cols) {
  Matrix d(rows, cols);
  const Complex alpha_conj = std::conj(alpha);
  d(0, 0) = std::exp(-std::norm(alpha) / 2.0);
  for (int j = 1; j < rows; ++j) d(j, 0) = d(j - 1, 0) * alpha / std::sqrt(static_cast<double>(j));
  for (int n = 1; n < cols; ++n) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    d(0, n) = -alpha_conj * d(0, n - 1) * inv;
    for (int j = 1; j < rows; ++j)
      d(j, n) = (std::sqrt(static_cast<double>(j)) * d(j - 1, n - 1) - alpha_conj * d(j, n - 1)) * inv;
  }
  return d;
}

Matrix wigner_block(PhasePoint pt, int rows) {
  if (rows < 1) throw std::invalid_argument("wigner_block needs at least one row");
  const Complex alpha = pt.alpha();
  const int cols = displacement_columns(alpha, rows);
  Matrix d = displacement_rows(alpha, rows, cols);
  Matrix signed_d = d;
  for (int n = 1; n < cols; n += 2) signed_d.col(n) *= -1.0;
  return signed_d * d.adjoint() / kPi;
}

FockMatrix evaluate(const OrderedPolynomial& poly, int N) {
  require_dim(N);
  if (poly.ordering() == Ordering::Weyl)
    throw std::logic_error("evaluate() takes PQ or QP polynomials; convert Weyl input first");
  const int degree = static_cast<int>(poly.max_total_degree());
  if (degree >= N) throw TruncationError("polynomial degree exceeds the Fock dimension");
  auto [q, p] = build_qp(N);
  std::vector<Matrix> q_pow{Matrix::Identity(N, N)}, p_pow{Matrix::Identity(N, N)};
  for (int k = 1; k <= degree; ++k) {
    q_pow.push_back(q_pow.back() * q.entries);
    p_pow.push_back(p_pow.back() * p.entries);
  }
  Matrix out = Matrix::Zero(N, N);
  for (const auto& [mono, c] : poly.terms()) {
    const Matrix& qm = q_pow[mono.m];
    const Matrix& pr = p_pow[mono.r];
    out += c.to_complex() * (poly.ordering() == Ordering::PQ ? Matrix(pr * qm) : Matrix(qm * pr));
  }
  return FockMatrix{std::move(out), N - degree};
}

std::vector<Complex> wigner_function(const FockMatrix& rho, std::span<const PhasePoint> grid) {
  check_density(rho);
  const int N = rho.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.entries);
  const Eigen::VectorXd& weights = eig.eigenvalues();
  std::vector<int> kept;
  for (int k = 0; k < N; ++k)
    if (std::abs(weights(k)) > 1e-15) kept.push_back(k);

  std::vector<Complex> out(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t idx) {
    const Complex alpha = grid[idx].alpha();
    const int cols = displacement_columns(alpha, N);
    Matrix d = displacement_rows(alpha, N, cols);
    double w = 0.0;
    for (int k : kept) {
      Vector y = d.adjoint() * eig.eigenvectors().col(k);
      double parity_sum = 0.0;
      for (int n = 0; n < cols; ++n) parity_sum += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(y(n));
      w += weights(k) * parity_sum;
    }
    out[idx] = Complex(w / kPi, 0.0);
  });
  return out;
}

int MidpointRule::count() const {
  if (!(hi > lo) || !(step > 0.0)) throw std::invalid_argument("midpoint rule needs hi > lo and step > 0");
  return std::max(1, static_cast<int>(std::lround((hi - lo) / step)));
}

double MidpointRule::width() const { return (hi - lo) / count(); }

double MidpointRule::node(int k) const { return lo + (k + 0.5) * width(); }

std::vector<Matrix> quantize(std::span<const ordering::CommutativePoly2> symbols, const PhaseGrid& grid, int block) {
  std::vector<std::vector<NumericTerm>> numeric;
  for (const auto& s : symbols) numeric.push_back(flatten(s));
  const int nq = grid.q.count(), np = grid.p.count();

  // rows[k][s]: integral over p at q-node k for symbol s
  std::vector<std::vector<Matrix>> rows(nq);
  detail::parallel_for(static_cast<std::size_t>(nq), [&](std::size_t k) {
    const double q = grid.q.node(static_cast<int>(k));
    std::vector<Matrix> acc(symbols.size(), Matrix::Zero(block, block));
    for (int l = 0; l < np; ++l) {
      const double p = grid.p.node(l);
      Matrix delta = wigner_block({q, p}, block);
      for (std::size_t s = 0; s < numeric.size(); ++s) acc[s] += evaluate_terms(numeric[s], q, p) * delta;
    }
    rows[k] = std::move(acc);
  });

  const double area = grid.q.width() * grid.p.width();
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    std::vector<Matrix> per_row;
    per_row.reserve(nq);
    for (const auto& r : rows) per_row.push_back(r[s]);
    out.push_back(detail::pairwise_sum(per_row, 0, per_row.size()) * area);
  }
  return out;
}

double wigner_integral(const FockMatrix& rho, const PhaseGrid& grid) {
  const int nq = grid.q.count(), np = grid.p.count();
  std::vector<PhasePoint> points;
  points.reserve(static_cast<std::size_t>(nq) * np);
  for (int k = 0; k < nq; ++k)
    for (int l = 0; l < np; ++l) points.push_back({grid.q.node(k), grid.p.node(l)});
  std::vector<Complex> w = wigner_function(rho, points);
  std::vector<double> row_sums(nq);
  for (int k = 0; k < nq; ++k) {
    std::vector<double> row(np);
    for (int l = 0; l < np; ++l) row[l] = w[static_cast<std::size_t>(k) * np + l].real();
    row_sums[k] = detail::pairwise_sum(row, 0, row.size());
  }
  return detail::pairwise_sum(row_sums, 0, row_sums.size()) * grid.q.width() * grid.p.width();
}

Eigen::VectorXd hermite_functions(double x, int count) {
  Eigen::VectorXd psi(count);
  if (count == 0) return psi;
  psi(0) = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  if (count > 1) psi(1) = std::numbers::sqrt2 * x * psi(0);
  for (int k = 2; k < count; ++k)
    psi(k) = std::sqrt(2.0 / k) * x * psi(k - 1) - std::sqrt((k - 1.0) / k) * psi(k - 2);
  return psi;
}

MarginalResult marginal_check(Axis axis, double value, int N, const MarginalOptions& options) {
  require_dim(N);
  if (std::abs(value) > 4.0) throw InputError("marginal value must satisfy |value| <= 4");
  const int block = std::min(options.block, N);
  MidpointRule rule{-options.half_width, options.half_width, options.step};
  const int n = rule.count();
  std::vector<Matrix> samples(n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    const double y = rule.node(static_cast<int>(k));
    samples[k] = wigner_block(axis == Axis::Q ? PhasePoint{value, y} : PhasePoint{y, value}, block);
  });
  MarginalResult result;
  result.numeric = detail::pairwise_sum(samples, 0, samples.size()) * rule.width();

  Eigen::VectorXd psi = hermite_functions(value, block);
  Vector amplitude(block);  // <m|x>
  for (int m = 0; m < block; ++m) {
    // <m|q> = psi_m(q);  <m|p> = conj((-i)^m psi_m(p)) = i^m psi_m(p)
    Complex phase = axis == Axis::Q ? Complex(1.0) : std::pow(Complex(0.0, 1.0), m);
    amplitude(m) = phase * psi(m);
  }
  result.analytic = amplitude * amplitude.adjoint();
  result.max_error = (result.numeric - result.analytic).cwiseAbs().maxCoeff();
  return result;
}

std::string to_csv(const FockMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "rows,cols,reliable_dim\n" << m.entries.rows() << ',' << m.entries.cols() << ',' << m.reliable_dim << '\n';
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c)
      os << m.entries(r, c).real() << ',' << m.entries(r, c).imag() << '\n';
  return os.str();
}

std::string to_json(const FockMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.entries.rows();
  j["cols"] = m.entries.cols();
  j["reliable_dim"] = m.reliable_dim;
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      rr.push_back(m.entries(r, c).real());
      ir.push_back(m.entries(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

}  // namespace psqm::fock
