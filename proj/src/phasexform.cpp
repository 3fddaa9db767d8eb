#include "psqm/phasexform.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "parallel.hpp"

namespace psqm::xform {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using ordering::CommutativePoly2;

constexpr double kPi = std::numbers::pi;

Complex unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

GridSpec spec_of(const SampledField& f) { return {f.q_min, f.q_max, f.p_min, f.p_max, f.nq, f.np}; }

double grid_dq(const GridSpec& g) { return (g.q_max - g.q_min) / (g.nq - 1); }
double grid_dp(const GridSpec& g) { return (g.p_max - g.p_min) / (g.np - 1); }

// G[a,b] = (w/pi) e^{s 2i p_b q_a} sum_{a',b'} H[a',b'] e^{-s 2i p_b q_a'} e^{-s 2i p_b' q_a}
// with H[a',b'] = h[a',b'] e^{s 2i p_b' q_a'}; s = +1 forward, -1 inverse.
SampledField chirp_transform(const SampledField& in, double sign) {
  const int nq = in.nq, np = in.np;
  CMatrix chirped(nq, np);
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < np; ++b) chirped(a, b) = in.at(a, b) * unit_phase(sign * 2.0 * in.p_at(b) * in.q_at(a));

  CMatrix p_kernel(np, nq);  // [b, a'] = e^{-s 2i p_b q_a'}
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < nq; ++a) p_kernel(b, a) = unit_phase(-sign * 2.0 * in.p_at(b) * in.q_at(a));
  CMatrix q_kernel = p_kernel.transpose();  // [a, b'] = e^{-s 2i q_a p_b'}

  CMatrix t = p_kernel * chirped;             // [b, b']
  CMatrix g = q_kernel * t.transpose();       // [a, b]
  const double weight = in.dq() * in.dp() / kPi;

  SampledField out = in;
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < np; ++b) out.at(a, b) = weight * unit_phase(sign * 2.0 * in.p_at(b) * in.q_at(a)) * g(a, b);
  return out;
}

TransformResult checked_transform(const SampledField& in, double sign) {
  in.validate();
  TransformResult result{chirp_transform(in, sign), true, {}};
  const double edge = boundary_magnitude(in);
  if (edge >= kBoundaryDecay) {
    result.reliable = false;
    std::ostringstream os;
    os << "input does not decay at the grid boundary (max |value| = " << edge << ")";
    result.warning = os.str();
  }
  return result;
}

// Streams rows of the chirped field; for each distinct output q keeps the
// partial sums Z[a', c] = sum_b' H[a', b'] e^{-s 2i p_b' q_c}.
template <typename Sampler>
std::vector<Complex> transform_points(const Sampler& sample, const GridSpec& g, std::span<const Point> points,
                                      double sign) {
  std::vector<double> qs;
  for (const auto& pt : points) qs.push_back(pt.q);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  const int nc = static_cast<int>(qs.size());
  const double dq = grid_dq(g), dp = grid_dp(g);

  // Z is nq x nc; rows are independent.
  CMatrix z(g.nq, nc);
  detail::parallel_for(static_cast<std::size_t>(g.nq), [&](std::size_t row) {
    const int a = static_cast<int>(row);
    const double qa = g.q_min + a * dq;
    std::vector<Complex> step(nc), phase(nc), acc(nc, 0.0);
    for (int c = 0; c < nc; ++c) {
      // e^{s 2i p_b (q_a - q_c)} advanced by a constant ratio in b
      step[c] = unit_phase(sign * 2.0 * dp * (qa - qs[c]));
      phase[c] = unit_phase(sign * 2.0 * g.p_min * (qa - qs[c]));
    }
    for (int b = 0; b < g.np; ++b) {
      const Complex hv = sample(a, b);
      for (int c = 0; c < nc; ++c) {
        acc[c] += hv * phase[c];
        phase[c] *= step[c];
      }
    }
    for (int c = 0; c < nc; ++c) z(a, c) = acc[c];
  });

  const double weight = dq * dp / kPi;
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    const int c = static_cast<int>(std::lower_bound(qs.begin(), qs.end(), pt.q) - qs.begin());
    Complex sum = 0.0;
    for (int a = 0; a < g.nq; ++a) sum += z(a, c) * unit_phase(-sign * 2.0 * pt.p * (g.q_min + a * dq));
    out.push_back(weight * unit_phase(sign * 2.0 * pt.p * pt.q) * sum);
  }
  return out;
}

void check_grid(const GridSpec& g) {
  if (g.nq < 2 || g.np < 2) throw std::invalid_argument("grid needs at least 2 samples per axis");
  for (double v : {g.q_min, g.q_max, g.p_min, g.p_max})
    if (!std::isfinite(v)) throw std::invalid_argument("grid bounds must be finite");
  if (!(g.q_max > g.q_min) || !(g.p_max > g.p_min)) throw std::invalid_argument("grid bounds need max > min");
}

// d/dt or d/ds of p(t,s) e^{-2ist}, divided by e^{-2ist}.
CommutativePoly2 differentiate(const CommutativePoly2& p, bool wrt_t) {
  const ExactScalar minus_two_i = ExactScalar(-2) * ExactScalar::i();
  CommutativePoly2 out;
  for (const auto& [key, c] : p.terms()) {
    auto [i, j] = key;
    unsigned power = wrt_t ? i : j;
    if (power > 0) {
      if (wrt_t) {
        out.add_term(i - 1, j, c * ExactScalar(static_cast<long>(power)));
      } else {
        out.add_term(i, j - 1, c * ExactScalar(static_cast<long>(power)));
      }
    }
    // the exponential contributes -2i s (d/dt) or -2i t (d/ds)
    if (wrt_t) {
      out.add_term(i, j + 1, c * minus_two_i);
    } else {
      out.add_term(i + 1, j, c * minus_two_i);
    }
  }
  return out;
}

}  // namespace

SampledField SampledField::sample(double q_min, double q_max, double p_min, double p_max, int nq, int np,
                                  const std::function<Complex(double, double)>& fn) {
  SampledField f{q_min, q_max, p_min, p_max, nq, np, {}};
  check_grid(spec_of(f));
  f.values.resize(static_cast<std::size_t>(nq) * np);
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < np; ++b) f.at(a, b) = fn(f.q_at(a), f.p_at(b));
  return f;
}

void SampledField::validate() const {
  check_grid(spec_of(*this));
  if (values.size() != static_cast<std::size_t>(nq) * np)
    throw std::invalid_argument("field has " + std::to_string(values.size()) + " values, expected " +
                                std::to_string(static_cast<std::size_t>(nq) * np));
}

double boundary_magnitude(const SampledField& f) {
  double edge = 0.0;
  for (int a = 0; a < f.nq; ++a) edge = std::max({edge, std::abs(f.at(a, 0)), std::abs(f.at(a, f.np - 1))});
  for (int b = 0; b < f.np; ++b) edge = std::max({edge, std::abs(f.at(0, b)), std::abs(f.at(f.nq - 1, b))});
  return edge;
}

TransformResult forward_transform(const SampledField& h) { return checked_transform(h, 1.0); }

TransformResult inverse_transform(const SampledField& g) { return checked_transform(g, -1.0); }

std::vector<Complex> forward_transform_at(const SampledField& h, std::span<const Point> points) {
  h.validate();
  return transform_points([&](int a, int b) { return h.at(a, b); }, spec_of(h), points, 1.0);
}

std::vector<Complex> inverse_transform_at(const SampledField& g, std::span<const Point> points) {
  g.validate();
  return transform_points([&](int a, int b) { return g.at(a, b); }, spec_of(g), points, -1.0);
}

std::vector<Complex> forward_transform_at(const std::function<Complex(double, double)>& h, const GridSpec& grid,
                                          std::span<const Point> points) {
  check_grid(grid);
  const double dq = grid_dq(grid), dp = grid_dp(grid);
  return transform_points([&](int a, int b) { return h(grid.q_min + a * dq, grid.p_min + b * dp); }, grid, points,
                          1.0);
}

ParsevalResult parseval_check(const SampledField& h) {
  h.validate();
  auto norm = [](const SampledField& f) {
    std::vector<double> rows(f.nq);
    for (int a = 0; a < f.nq; ++a) {
      std::vector<double> row(f.np);
      for (int b = 0; b < f.np; ++b) row[b] = std::norm(f.at(a, b));
      rows[a] = detail::pairwise_sum(row, 0, row.size());
    }
    return detail::pairwise_sum(rows, 0, rows.size()) * f.dq() * f.dp() / kPi;
  };
  SampledField g = chirp_transform(h, 1.0);
  return {norm(h), norm(g)};
}

CommutativePoly2 monomial_forward(unsigned m, unsigned r) {
  const ExactScalar root2 = ExactScalar::sqrt2(), i = ExactScalar::i();
  return ordering::hermite_two_var(m, r).scaled_arguments(root2, i * root2) * (root2.inverse().pow(m + r) * (-i).pow(r));
}

CommutativePoly2 monomial_inverse(unsigned m, unsigned r) {
  const ExactScalar root2 = ExactScalar::sqrt2(), i = ExactScalar::i();
  return ordering::hermite_two_var(m, r).scaled_arguments(root2, -i * root2) * (root2.inverse().pow(m + r) * i.pow(r));
}

CommutativePoly2 forward_polynomial(const CommutativePoly2& h) {
  CommutativePoly2 out;
  for (const auto& [key, c] : h.terms()) out += monomial_forward(key.first, key.second) * c;
  return out;
}

CommutativePoly2 inverse_polynomial(const CommutativePoly2& g) {
  CommutativePoly2 out;
  for (const auto& [key, c] : g.terms()) out += monomial_inverse(key.first, key.second) * c;
  return out;
}

CommutativePoly2 derivative_representation_raw(unsigned m, unsigned r) {
  CommutativePoly2 p = CommutativePoly2::monomial(0, 0);
  for (unsigned k = 0; k < m; ++k) p = differentiate(p, false);
  for (unsigned k = 0; k < r; ++k) p = differentiate(p, true);
  return p;
}

CommutativePoly2 derivative_representation(unsigned m, unsigned r) {
  const ExactScalar minus_two_i = ExactScalar(-2) * ExactScalar::i();
  return derivative_representation_raw(m, r) * minus_two_i.pow(m + r).inverse();
}

CsvError::CsvError(const std::string& what, int row, int column)
    : std::runtime_error("line " + std::to_string(row) + (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + what),
      row_(row),
      column_(column) {}

std::string to_csv(const SampledField& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "qmin,qmax,pmin,pmax,nq,np\n";
  os << f.q_min << ',' << f.q_max << ',' << f.p_min << ',' << f.p_max << ',' << f.nq << ',' << f.np << '\n';
  for (const auto& v : f.values) os << v.real() << ',' << v.imag() << '\n';
  return os.str();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, int row, int column) {
  std::string s(trim(text));
  if (s.empty()) throw CsvError("empty number", row, column);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw CsvError("not a number: '" + s + "'", row, column);
  }
  if (used != s.size()) throw CsvError("not a number: '" + s + "'", row, column);
  return v;
}

int parse_count(std::string_view text, int row, int column) {
  double v = parse_double(text, row, column);
  if (v != std::floor(v) || v < 0 || v > 1e8) throw CsvError("not a sample count", row, column);
  return static_cast<int>(v);
}

}  // namespace

SampledField from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw CsvError("empty input", 1, 0);

  std::size_t header = 0;
  if (trim(lines[0]) == "qmin,qmax,pmin,pmax,nq,np") header = 1;
  if (lines.size() <= header) throw CsvError("missing grid header values", static_cast<int>(header + 1), 0);
  auto fields = split_fields(lines[header]);
  const int header_row = static_cast<int>(header + 1);
  if (fields.size() != 6) throw CsvError("grid header needs 6 fields", header_row, 0);

  SampledField f;
  f.q_min = parse_double(fields[0], header_row, 1);
  f.q_max = parse_double(fields[1], header_row, 2);
  f.p_min = parse_double(fields[2], header_row, 3);
  f.p_max = parse_double(fields[3], header_row, 4);
  f.nq = parse_count(fields[4], header_row, 5);
  f.np = parse_count(fields[5], header_row, 6);
  try {
    check_grid(spec_of(f));
  } catch (const std::invalid_argument& e) {
    throw CsvError(e.what(), header_row, 0);
  }

  const std::size_t expected = static_cast<std::size_t>(f.nq) * f.np;
  const std::size_t available = lines.size() - header - 1;
  if (available != expected)
    throw CsvError("expected " + std::to_string(expected) + " sample lines, found " + std::to_string(available),
                   static_cast<int>(header + 2 + std::min(available, expected)), 0);
  f.values.reserve(expected);
  for (std::size_t k = 0; k < expected; ++k) {
    const int row = static_cast<int>(header + 2 + k);
    auto cell = split_fields(lines[header + 1 + k]);
    if (cell.size() != 2) throw CsvError("sample needs 're,im'", row, 0);
    f.values.emplace_back(parse_double(cell[0], row, 1), parse_double(cell[1], row, 2));
  }
  return f;
}

std::string to_json(const SampledField& f) {
  nlohmann::json j;
  j["qmin"] = f.q_min;
  j["qmax"] = f.q_max;
  j["pmin"] = f.p_min;
  j["pmax"] = f.p_max;
  j["nq"] = f.nq;
  j["np"] = f.np;
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (const auto& v : f.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

}  // namespace psqm::xform
