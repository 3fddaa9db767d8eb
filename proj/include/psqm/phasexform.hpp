#pragma once

// The c-number two-fold transform
//   G(p, q) = (1/pi) iint h(p', q') exp(2i (p - p')(q - q')) dq' dp'
// and its inverse (kernel exp(-2i (p - p')(q - q'))), numerically on sampled
// grids and symbolically on monomials.

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psqm/ordering.hpp"

namespace psqm::xform {

using Complex = std::complex<double>;

/// Samples on the inclusive grid q_a = q_min + a (q_max - q_min)/(nq - 1),
/// p_b likewise; values are row-major with q the slow index.
struct SampledField {
  double q_min = 0.0, q_max = 0.0, p_min = 0.0, p_max = 0.0;
  int nq = 0, np = 0;
  std::vector<Complex> values;

  /// Samples fn(q, p) on the grid.
  static SampledField sample(double q_min, double q_max, double p_min, double p_max, int nq, int np,
                             const std::function<Complex(double q, double p)>& fn);

  double dq() const { return (q_max - q_min) / (nq - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double q_at(int a) const { return q_min + a * dq(); }
  double p_at(int b) const { return p_min + b * dp(); }
  Complex& at(int a, int b) { return values[static_cast<std::size_t>(a) * np + b]; }
  const Complex& at(int a, int b) const { return values[static_cast<std::size_t>(a) * np + b]; }

  /// Throws std::invalid_argument unless nq, np >= 2, the bounds are finite
  /// with max > min, and values.size() == nq * np.
  void validate() const;
};

/// Largest |value| on the outermost ring of samples.
double boundary_magnitude(const SampledField& f);

/// Samples below this magnitude at the boundary count as decayed.
inline constexpr double kBoundaryDecay = 1e-10;

struct TransformResult {
  SampledField field;
  bool reliable = true;  ///< false when the input did not decay at its boundary
  std::string warning;
};

/// Direct double quadrature with uniform cell weights dq dp, evaluated on the
/// input grid. The kernel is split into chirps,
///   exp(2ipq) exp(-2ipq') exp(-2ip'q) exp(2ip'q'),
/// so the sum is two dense matrix products.
TransformResult forward_transform(const SampledField& h);
TransformResult inverse_transform(const SampledField& g);

struct Point {
  double q = 0.0;
  double p = 0.0;
};

/// Same quadrature as forward/inverse_transform, evaluated at arbitrary
/// points.
std::vector<Complex> forward_transform_at(const SampledField& h, std::span<const Point> points);
std::vector<Complex> inverse_transform_at(const SampledField& g, std::span<const Point> points);

/// Grid description for a field given as a function; samples are generated
/// on the fly so very large grids need no storage.
struct GridSpec {
  double q_min = 0.0, q_max = 0.0, p_min = 0.0, p_max = 0.0;
  int nq = 0, np = 0;
};
std::vector<Complex> forward_transform_at(const std::function<Complex(double q, double p)>& h, const GridSpec& grid,
                                          std::span<const Point> points);

struct ParsevalResult {
  double lhs = 0.0;  ///< iint |h|^2 / pi
  double rhs = 0.0;  ///< iint |G|^2 / pi
};

/// Both norms by quadrature on h's grid; G is forward_transform(h).
ParsevalResult parseval_check(const SampledField& h);

/// Symbolic transform of x^m y^r (x paired with t = q, y with s = p):
/// (1/sqrt2)^{m+r} (-i)^r H_{m,r}(sqrt2 t, i sqrt2 s).
ordering::CommutativePoly2 monomial_forward(unsigned m, unsigned r);
/// Symbolic inverse transform of t^m s^r:
/// (1/sqrt2)^{m+r} (i)^r H_{m,r}(sqrt2 x, -i sqrt2 y).
ordering::CommutativePoly2 monomial_inverse(unsigned m, unsigned r);
/// Linear extensions of the two maps above; the constant 1 maps to 1.
ordering::CommutativePoly2 forward_polynomial(const ordering::CommutativePoly2& h);
ordering::CommutativePoly2 inverse_polynomial(const ordering::CommutativePoly2& g);

/// exp(2ist) (d/dt)^r (d/ds)^m exp(-2ist) as an exact polynomial in (t, s),
/// before normalization.
ordering::CommutativePoly2 derivative_representation_raw(unsigned m, unsigned r);
/// The raw derivative form times (-2i)^{-(m+r)}; equals monomial_forward.
ordering::CommutativePoly2 derivative_representation(unsigned m, unsigned r);

/// Malformed SampledField text; row and column are 1-based positions in the
/// input (column 0 when the whole line is at fault).
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, int row, int column);
  int row() const { return row_; }
  int column() const { return column_; }

 private:
  int row_;
  int column_;
};

/// Header "qmin,qmax,pmin,pmax,nq,np", a line with those six values, then
/// nq*np lines "re,im" in row-major q-then-p order.
std::string to_csv(const SampledField& f);
SampledField from_csv(std::string_view text);
std::string to_json(const SampledField& f);

}  // namespace psqm::xform
