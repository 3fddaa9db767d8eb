// psqm: ordering conversions, commutators, verification suites and the
// phase-space transform from the command line.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <cmath>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "psqm/exprio.hpp"
#include "psqm/opalg.hpp"
#include "psqm/ordering.hpp"
#include "psqm/phasexform.hpp"
#include "psqm/verify.hpp"

using json = nlohmann::json;
using namespace psqm;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Ordering ordering_from(const std::string& name) {
  if (name == "pq") return Ordering::PQ;
  if (name == "qp") return Ordering::QP;
  return Ordering::Weyl;
}

FreeExpression parse_canonical(const std::string& text) {
  FreeExpression e = exprio::parse(text);
  return e.contains_ladder() ? opalg::substitute_canonical(e) : e;
}

OrderedPolynomial to_ordering(const FreeExpression& e, Ordering target) {
  if (const auto* block = std::get_if<OrderedPolynomial>(&e.node())) return ordering::convert(*block, target);
  OrderedPolynomial pq = opalg::rewrite_to_pq(e);
  return target == Ordering::PQ ? pq : ordering::convert(pq, target);
}

json polynomial_json(const OrderedPolynomial& p) { return json::parse(exprio::to_json(p)); }

json ladder_json(const LadderPolynomial& p) {
  json terms = json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({{"j", mono.j}, {"k", mono.k}, {"coefficient", c.to_string()}});
  return {{"ordering", p.ordering() == LadderOrdering::Normal ? "normal" : "antinormal"},
          {"terms", terms},
          {"text", exprio::render(p)}};
}

int report_error(const std::string& command, bool as_json, const std::string& kind, const std::string& message,
                 const exprio::ParseError* parse_error = nullptr, const std::string& source = {}) {
  if (as_json) {
    json err{{"kind", kind}, {"message", message}};
    if (parse_error) {
      err["span"] = {{"begin", parse_error->span().begin}, {"end", parse_error->span().end}};
      err["expected"] = parse_error->expected();
      err["rendered"] = parse_error->render(source);
    }
    std::cout << json{{"command", command}, {"status", "error"}, {"error", err}}.dump(2) << '\n';
  } else if (parse_error) {
    std::cerr << parse_error->render(source) << '\n';
  } else {
    std::cerr << "error: " << message << '\n';
  }
  return kUsage;
}

// Runs fn, turning library exceptions into exit code 2. `sources` lists the
// texts a ParseError may point into, in argument order.
template <typename Fn>
int guarded(const std::string& command, bool as_json, const std::vector<std::string>& sources, Fn&& fn) {
  try {
    return fn();
  } catch (const exprio::ParseError& e) {
    // The parse error belongs to the first source that fails to parse.
    for (const auto& s : sources) {
      try {
        exprio::parse(s);
      } catch (const exprio::ParseError& mine) {
        return report_error(command, as_json, "parse", mine.what(), &mine, s);
      }
    }
    return report_error(command, as_json, "semantic", e.what());
  } catch (const xform::CsvError& e) {
    return report_error(command, as_json, "input", e.what());
  } catch (const verify::ResourceError& e) {
    return report_error(command, as_json, "resource", e.what());
  } catch (const InputError& e) {
    return report_error(command, as_json, "input", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error(command, as_json, "input", e.what());
  } catch (const std::domain_error& e) {
    return report_error(command, as_json, "input", e.what());
  }
}

void print_polynomial(const std::string& command, const std::string& input, const FreeExpression& parsed,
                      const json& result, bool as_json) {
  if (as_json) {
    json out{{"command", command}, {"status", "ok"}, {"input", input}, {"result", result}};
    out["input_ast"] = json::parse(exprio::to_json(parsed));
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << result["text"].get<std::string>() << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact operator-ordering algebra and phase-space checks"};
  app.require_subcommand(1);

  std::string format = "text";
  bool as_json = false;
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--json", as_json, "Same as --format json");
  };

  std::string expr_text, target = "pq";
  auto* convert = app.add_subcommand("convert", "Rewrite an expression in pq, qp or weyl order");
  convert->add_option("expr", expr_text, "Expression")->required();
  convert->add_option("--to", target, "Target ordering")->check(CLI::IsMember({"pq", "qp", "weyl"}));
  add_output_flags(convert);

  std::string x_text, y_text;
  auto* commutator = app.add_subcommand("commutator", "Print [x, y] in pq order");
  commutator->add_option("x", x_text, "Left operand")->required();
  commutator->add_option("y", y_text, "Right operand")->required();
  add_output_flags(commutator);

  unsigned power = 1;
  std::string expand_target = "weyl";
  auto* expand = app.add_subcommand("expand", "Raise an expression to a power and order the result");
  expand->add_option("expr", expr_text, "Expression")->required();
  expand->add_option("--power", power, "Exponent")->check(CLI::Range(0u, 64u));
  expand->add_option("--to", expand_target, "Target ordering")
      ->check(CLI::IsMember({"pq", "qp", "weyl", "normal"}));
  add_output_flags(expand);

  std::string suite;
  verify::Options options;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--max-degree", options.max_degree, "Largest m, r (at most 8)");
  verify_cmd->add_option("--dim", options.dim, "Fock space dimension (16..128)");
  add_output_flags(verify_cmd);

  std::string input_path, out_path;
  bool gaussian = false, inverse = false, parseval = false;
  double half_width = 8.0;
  int samples = 400;
  auto* transform = app.add_subcommand("transform", "Apply the phase-space transform to a sampled field");
  auto* input_opt = transform->add_option("--input", input_path, "Field as CSV");
  auto* gaussian_opt = transform->add_flag("--gaussian", gaussian, "Use exp(-p^2 - q^2)");
  input_opt->excludes(gaussian_opt);
  transform->add_flag("--inverse", inverse, "Apply the inverse transform");
  transform->add_flag("--parseval", parseval, "Print both norms");
  transform->add_option("--out", out_path, "Write the transformed field as CSV");
  transform->add_option("--half-width", half_width, "Gaussian grid is [-w, w]^2")->check(CLI::PositiveNumber);
  transform->add_option("--samples", samples, "Gaussian grid samples per axis")->check(CLI::Range(2, 4000));
  add_output_flags(transform);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  as_json = as_json || format == "json";

  if (*convert) {
    return guarded("convert", as_json, {expr_text}, [&] {
      FreeExpression e = parse_canonical(expr_text);
      print_polynomial("convert", expr_text, e, polynomial_json(to_ordering(e, ordering_from(target))), as_json);
      return kOk;
    });
  }

  if (*commutator) {
    return guarded("commutator", as_json, {x_text, y_text}, [&] {
      FreeExpression x = parse_canonical(x_text), y = parse_canonical(y_text);
      OrderedPolynomial c = opalg::commutator(x, y);
      print_polynomial("commutator", x_text + " , " + y_text, x * y - y * x, polynomial_json(c), as_json);
      return kOk;
    });
  }

  if (*expand) {
    return guarded("expand", as_json, {expr_text}, [&] {
      FreeExpression parsed = exprio::parse(expr_text);
      json result;
      if (expand_target == "normal") {
        result = ladder_json(opalg::substitute_ladder(FreeExpression::power(parsed, power)));
      } else {
        FreeExpression e = parsed.contains_ladder() ? opalg::substitute_canonical(parsed) : parsed;
        OrderedPolynomial base = to_ordering(e, Ordering::PQ);
        OrderedPolynomial raised = opalg::rewrite_to_pq(FreeExpression::power(FreeExpression::ordered(base), power));
        result = polynomial_json(ordering::convert(raised, ordering_from(expand_target)));
      }
      print_polynomial("expand", expr_text, parsed, result, as_json);
      return kOk;
    });
  }

  if (*verify_cmd) {
    return guarded("verify", as_json, {}, [&] {
      verify::SuiteReport report = verify::run_suite(suite, options);
      if (as_json) {
        json out = json::parse(verify::to_json(report));
        out["command"] = "verify";
        std::cout << out.dump(2) << '\n';
      } else {
        std::cout << verify::to_text(report);
      }
      return report.passed() ? kOk : kMismatch;
    });
  }

  if (*transform) {
    return guarded("transform", as_json, {}, [&] {
      if (input_path.empty() && !gaussian) throw InputError("give --input FILE or --gaussian");
      xform::SampledField field =
          gaussian ? xform::SampledField::sample(-half_width, half_width, -half_width, half_width, samples, samples,
                                                 [](double q, double p) { return std::exp(-q * q - p * p); })
                   : xform::from_csv(read_file(input_path));
      field.validate();
      xform::TransformResult result = inverse ? xform::inverse_transform(field) : xform::forward_transform(field);
      if (!result.reliable) std::cerr << "warning: " << result.warning << '\n';

      json out{{"command", "transform"},
               {"status", "ok"},
               {"direction", inverse ? "inverse" : "forward"},
               {"grid",
                {{"qmin", field.q_min},
                 {"qmax", field.q_max},
                 {"pmin", field.p_min},
                 {"pmax", field.p_max},
                 {"nq", field.nq},
                 {"np", field.np}}},
               {"reliable", result.reliable}};
      if (!result.reliable) out["warning"] = result.warning;
      if (parseval) {
        xform::ParsevalResult pr = xform::parseval_check(field);
        out["parseval"] = {{"lhs", pr.lhs}, {"rhs", pr.rhs}};
        if (!as_json) std::cout << std::setprecision(12) << "lhs " << pr.lhs << "\nrhs " << pr.rhs << '\n';
      }
      if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw InputError("cannot write '" + out_path + "'");
        file << xform::to_csv(result.field);
        out["output"] = out_path;
      }
      if (as_json) {
        std::cout << out.dump(2) << '\n';
      } else if (out_path.empty() && !parseval) {
        std::cout << xform::to_csv(result.field);
      }
      return kOk;
    });
  }
  return kUsage;
}
