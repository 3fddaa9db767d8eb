#pragma once

// Truncated Fock-space matrices for Q, P, a, a^dag, the Wigner operator and
// Wigner functions. This is the numeric ground truth for the phase-space
// identities; it shares no code with the symbolic conversions.

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "psqm/ordering.hpp"
#include "psqm/polynomial.hpp"

namespace psqm::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// The requested state or operator does not fit the truncated basis.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density matrix or other input violates a stated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense operator on span{|0>, ..., |N-1>}. Only the top-left
/// reliable_dim x reliable_dim block is claimed to match the untruncated
/// operator.
struct FockMatrix {
  Matrix entries;
  int reliable_dim = 0;

  int dim() const { return static_cast<int>(entries.rows()); }
  /// Top-left n x n block of the entries.
  Matrix block(int n) const { return entries.topLeftCorner(n, n); }
};

/// Phase-space point in hbar = 1 units.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  /// alpha = (q + i p) / sqrt2
  Complex alpha() const;
};

/// Annihilation a(n-1, n) = sqrt(n) and its adjoint. Requires N >= 2.
std::pair<FockMatrix, FockMatrix> build_ladder(int N);
/// Q = (a + a^dag)/sqrt2, P = (a - a^dag)/(sqrt2 i).
std::pair<FockMatrix, FockMatrix> build_qp(int N);

/// Number-basis components exp(-|beta|^2/2) beta^n / sqrt(n!). Throws
/// TruncationError unless |beta|^2 <= N/4.
Vector coherent_state(Complex beta, int N);
/// |n>
Vector number_state(int n, int N);
/// |v><v|
FockMatrix pure_density(const Vector& v);

/// (1/pi) D(alpha) Pi D(alpha)^dag with D the matrix exponential of the
/// truncated generator alpha a^dag - alpha* a and Pi = diag((-1)^n).
/// reliable_dim = N - ceil(8 |alpha|^2). Throws TruncationError when that
/// leaves no reliable row.
FockMatrix wigner_operator(PhasePoint pt, int N);

/// Rows [0, rows) of the untruncated displacement operator, columns
/// [0, cols): entry (j, n) = <j| D(alpha) |n>, generated column by column
/// from D|n> = (a^dag - alpha*) D|n-1> / sqrt(n) starting at the coherent
/// state D|0> = |alpha>.
Matrix displacement_rows(Complex alpha, int rows, int cols);
/// Number of displacement columns wigner_block sums for `rows` rows.
int displacement_columns(Complex alpha, int rows);

/// Top-left rows x rows block of the Wigner operator without truncation
/// error: (1/pi) sum_n (-1)^n <j|D|n><n|D^dag|k>, summed until the
/// displaced number states have no weight left.
Matrix wigner_block(PhasePoint pt, int rows);

/// Matrix of a PQ- or QP-tagged polynomial, term by term from powers of the
/// truncated Q and P. reliable_dim = N - max total degree. Weyl input must
/// be converted first (std::logic_error).
FockMatrix evaluate(const OrderedPolynomial& poly, int N);

/// W(q, p) = Tr[rho Delta(q, p)] at each grid point. rho must be Hermitian
/// with unit trace (within 1e-8), otherwise InputError.
std::vector<Complex> wigner_function(const FockMatrix& rho, std::span<const PhasePoint> grid);

/// Uniform midpoint rule on [lo, hi] with cells of width close to `step`.
struct MidpointRule {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;

  int count() const;
  double width() const;  ///< actual cell width (hi - lo) / count()
  double node(int k) const;
};

struct PhaseGrid {
  MidpointRule q;
  MidpointRule p;
};

/// For each symbol w: top-left block of  integral w(q, p) Delta(q, p) dq dp
/// over the grid, by the midpoint rule. All symbols share one pass over the
/// grid; rows of the grid are reduced pairwise so the result does not depend
/// on the thread count.
std::vector<Matrix> quantize(std::span<const ordering::CommutativePoly2> symbols, const PhaseGrid& grid,
                             int block);

/// Midpoint-rule integral of W over the grid.
double wigner_integral(const FockMatrix& rho, const PhaseGrid& grid);

/// Harmonic-oscillator eigenfunctions psi_0(x) .. psi_{count-1}(x) by the
/// normalized three-term recurrence.
Eigen::VectorXd hermite_functions(double x, int count);

enum class Axis { Q, P };

struct MarginalResult {
  Matrix numeric;
  Matrix analytic;
  double max_error = 0.0;
};

struct MarginalOptions {
  int block = 8;
  double half_width = 12.0;
  double step = 0.01;
};

/// Integrates Delta over the other variable at fixed q (Axis::Q) or fixed p
/// (Axis::P) and compares with the projector |x><x|, whose number-basis
/// entries are psi_m(x) psi_n(x) for position and
/// i^m psi_m(x) (-i)^n psi_n(x) for momentum. Requires |value| <= 4.
MarginalResult marginal_check(Axis axis, double value, int N, const MarginalOptions& options = {});

/// Writes `rows x cols` header then one "re,im" line per entry, row-major.
std::string to_csv(const FockMatrix& m);
std::string to_json(const FockMatrix& m);

}  // namespace psqm::fock
