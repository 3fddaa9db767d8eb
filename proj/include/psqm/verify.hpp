#pragma once

// Self-check suites: each closed form is compared with an independent route
// (literal rewriting, truncated Fock matrices or direct quadrature).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace psqm::verify {

struct Check {
  Check() = default;
  explicit Check(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  double max_error = 0.0;  ///< 0 for exact checks
  double tolerance = 0.0;  ///< 0 for exact checks
  std::string computed;    ///< worst or first failing case
  std::string oracle;
  std::string where;       ///< which case `computed` and `oracle` belong to

  /// Records one exact comparison.
  void exact(bool equal, const std::string& label, const std::string& got, const std::string& want);
  /// Records one numeric comparison against the tolerance.
  void numeric(double error, const std::string& label, const std::string& got, const std::string& want);
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  std::size_t mismatches() const;
};

struct Options {
  unsigned max_degree = 6;
  int dim = 64;
};

/// Options outside the guarded range (max_degree <= 8, 16 <= dim <= 128).
class ResourceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite. Throws std::invalid_argument for an unknown name and
/// ResourceError for out-of-range options.
SuiteReport run_suite(std::string_view name, const Options& options);

/// Six closed-form conversions against rewriting of the defining words,
/// the literal Hermite forms, and parse/render round trips, for m, r <= max_degree.
std::vector<Check> ordering_checks(unsigned max_degree);
/// Closed-form [Q^m, P^r] in both orders against rewriting, m, r <= max_degree.
std::vector<Check> commutator_checks(unsigned max_degree);
/// (P + Q)^n closed forms against expansion and rewriting, n <= max_n.
std::vector<Check> binomial_checks(unsigned max_n);
/// Derivative and Hermite forms of the monomial transform, m, r <= max_degree.
std::vector<Check> hermite_checks(unsigned max_degree);
/// Marginals and quantization of the Wigner operator, coherent-state Wigner
/// functions, on a dim-level Fock space.
std::vector<Check> wigner_checks(int dim);
/// Gaussian transform pair, round trips, Parseval and regularized monomials.
std::vector<Check> transform_checks();

std::string to_json(const SuiteReport& report);
std::string to_text(const SuiteReport& report);

}  // namespace psqm::verify
