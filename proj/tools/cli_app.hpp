#pragma once

// Command-line front end. Exit codes:
//   0 success, 2 usage or parse error, 3 walk verification failure,
//   4 grid/quadrature resolution insufficient, 5 membership or PSD failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "schoenberg/schoenberg.hpp"

namespace schoenberg::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_usage = 2,
  exit_walk_mismatch = 3,
  exit_resolution = 4,
  exit_check_failed = 5,
};

class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts a decimal number, "pi", "pi/<x>" or "<x>*pi".
inline double parse_angle(const std::string& text) {
  constexpr double pi = std::numbers::pi;
  auto number = [&](std::string_view s) {
    try {
      return parse_double(s);
    } catch (const sequence_file_error&) {
      throw usage_error("invalid angle '" + text + "'");
    }
  };
  if (text == "pi") return pi;
  if (text.rfind("pi/", 0) == 0) return pi / number(std::string_view(text).substr(3));
  if (text.size() > 3 && text.compare(text.size() - 3, 3, "*pi") == 0)
    return number(std::string_view(text).substr(0, text.size() - 3)) * pi;
  return number(text);
}

inline void emit_sequence(const AnySeq& seq, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-")
    out << serialize_sequence(seq);
  else
    write_sequence_file(output, seq);
}

inline std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

struct CoeffsArgs {
  std::string parity;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::string format = "text";
};

inline int cmd_coeffs(const CoeffsArgs& a, std::ostream& out) {
  const Parity parity = a.parity == "odd" ? Parity::odd_target : Parity::even_target;
  const WalkWeights row = walk_weights(parity, a.n, a.k);
  std::vector<std::string> exact;
  std::vector<std::string> approx;
  for (const auto& w : row.weights) {
    exact.push_back(to_string(w));
    approx.push_back(format_double(to_double(w)));
  }
  const Rational total = row_total(row);
  if (a.format == "json") {
    nlohmann::json j{{"parity", to_string(parity)},
                     {"n", a.n},
                     {"k", a.k},
                     {"target_dimension", row.target_dimension()},
                     {"exact", exact},
                     {"float", approx},
                     {"sum", to_string(total)}};
    out << j.dump(2) << "\n";
  } else if (a.format == "csv") {
    std::vector<std::string> header;
    for (std::size_t i = 0; i < exact.size(); ++i) header.push_back("w" + std::to_string(i));
    out << join(header, ",") << "\n" << join(exact, ",") << "\n" << join(approx, ",") << "\n";
  } else {
    out << join(exact, ", ") << "\n" << join(approx, ", ") << "\n";
    out << "sum: " << to_string(total) << "\n";
  }
  return exit_ok;
}

struct WalkArgs {
  std::string input;
  int k = 0;
  std::string method = "closed";
  std::string output;
};

inline int cmd_walk(const WalkArgs& a, std::ostream& out, std::ostream& err) {
  const AnySeq input = read_sequence_file(a.input);
  return std::visit(
      [&](const auto& seq) -> int {
        if (seq.n_max() < static_cast<std::size_t>(2 * a.k))
          throw usage_error("walk: n_max = " + std::to_string(seq.n_max()) +
                            " is too short for k = " + std::to_string(a.k) + " (needs 2k)");
        if (a.method != "recursive" && seq.dimension != 1 && seq.dimension != 2)
          throw usage_error("walk: closed form needs dimension 1 or 2, got " +
                            std::to_string(seq.dimension));
        if (a.method == "recursive") {
          emit_sequence(walk_recursive(seq, a.k), a.output, out);
          return exit_ok;
        }
        auto closed = walk_closed_form(seq, a.k);
        if (a.method == "closed") {
          emit_sequence(closed, a.output, out);
          return exit_ok;
        }
        const auto recursive = walk_recursive(seq, a.k);
        const WalkComparison cmp = compare_walk_paths(closed, recursive);
        emit_sequence(closed, a.output, out);
        std::ostream& report = (a.output.empty() || a.output == "-") ? err : out;
        report << "max_discrepancy: " << format_double(cmp.max_discrepancy) << "\n";
        report << "paths_agree: " << (cmp.equivalent ? "true" : "false") << "\n";
        return cmp.equivalent ? exit_ok : exit_walk_mismatch;
      },
      input);
}

struct ModelParamArgs {
  double epsilon = 1.0;
  double c = 1.0;
  std::optional<double> c0;

  ModelParams params() const { return {epsilon, c, c0}; }
};

struct ExtractArgs {
  std::string model;
  std::string samples;
  int dim = 1;
  std::size_t n_max = 0;
  std::optional<std::size_t> grid;
  std::optional<int> order;
  std::string output;
  ModelParamArgs model_params;
};

inline std::vector<double> read_samples(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw sequence_file_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("samples") || !j["samples"].is_array())
    throw sequence_file_error("sample file needs a \"samples\" array");
  std::vector<double> out;
  for (const auto& v : j["samples"]) {
    if (v.is_number())
      out.push_back(v.get<double>());
    else if (v.is_string())
      out.push_back(parse_double(v.get<std::string>()));
    else
      throw sequence_file_error("samples must be numbers");
  }
  return out;
}

inline std::size_t default_grid(std::size_t n_max) { return std::max<std::size_t>(2 * n_max + 1, 16385); }
inline int default_order(std::size_t n_max) { return static_cast<int>(std::max<std::size_t>(2 * n_max + 2, 512)); }

inline int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  FloatSeq result;
  if (!a.samples.empty()) {
    const auto samples = read_samples(a.samples);
    result = a.dim == 1 ? extract_fourier_samples(samples, a.n_max)
                        : extract_legendre_samples(samples, a.n_max);
  } else {
    if (!find_model(a.model)) throw usage_error("unknown model '" + a.model + "'");
    const SphericalModel model = make_model(a.model, a.model_params.params());
    result = a.dim == 1 ? extract_fourier(model, a.n_max, a.grid.value_or(default_grid(a.n_max)))
                        : extract_legendre(model, a.n_max, a.order.value_or(default_order(a.n_max)));
  }
  emit_sequence(result, a.output, out);
  return exit_ok;
}

struct EvalArgs {
  std::string input;
  std::vector<std::string> thetas;
};

inline int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const FloatSeq seq = std::visit([](const auto& s) { return to_float(s); }, read_sequence_file(a.input));
  std::vector<double> thetas;
  for (const auto& t : a.thetas) {
    const double theta = parse_angle(t);
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw usage_error("theta " + t + " outside [0, pi]");
    thetas.push_back(theta);
  }
  out << "theta,psi\n";
  for (double theta : thetas) out << format_double(theta) << "," << format_double(evaluate_series(seq, theta)) << "\n";
  return exit_ok;
}

struct VerifyArgs {
  std::string input;
  bool strict = false;
  bool gram = false;
  std::optional<int> dimension;
  std::size_t points = 30;
  std::uint64_t seed = 0;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const AnySeq input = read_sequence_file(a.input);
  const MembershipReport r = std::visit([&](const auto& s) { return check_membership(s, a.strict); }, input);
  out << "dimension: " << r.dimension << "\n";
  out << "n_max: " << r.n_max << "\n";
  out << "nonnegative: " << (r.nonnegative() ? "pass" : "fail") << "\n";
  for (const auto& [n, v] : r.negative_entries)
    out << "  negative entry at n = " << n << ": " << format_double(v) << "\n";
  out << "coefficient_sum: " << format_double(r.coefficient_sum) << "\n";
  out << "normalization_defect: " << format_double(r.normalization_defect) << "\n";
  out << "sum_within_bound: " << (r.sum_within_bound() ? "pass" : "fail") << "\n";
  out << "positive_even_entries: " << r.even_positive << "\n";
  out << "positive_odd_entries: " << r.odd_positive << "\n";
  out << "strict_evidence: " << (r.strict_evidence() ? "pass" : "fail")
      << (r.strict ? "" : " (informational)") << "\n";
  bool ok = r.pass();
  if (a.gram) {
    const FloatSeq seq = std::visit([](const auto& s) { return to_float(s); }, input);
    const int dim = a.dimension.value_or(seq.dimension);
    const GramReport g = gram_psd_check(model_from_series(seq), dim, a.points, a.seed);
    out << "gram_dimension: " << g.dimension << "\n";
    out << "gram_points: " << g.point_count << "\n";
    out << "gram_seed: " << g.seed << "\n";
    out << "gram_generator: " << g.generator << "\n";
    out << "gram_min_eigenvalue: " << format_double(g.min_eigen_estimate) << "\n";
    out << "gram_tolerance: " << format_double(g.tolerance) << "\n";
    out << "psd_pass: " << (g.psd_pass ? "true" : "false") << "\n";
    ok = ok && g.psd_pass;
  }
  out << "result: " << (ok ? "pass" : "fail") << "\n";
  return ok ? exit_ok : exit_check_failed;
}

struct ModelArgs {
  std::string name;
  std::size_t n_max = 0;
  std::optional<int> walked_k;
  bool closed_form = false;
  std::optional<int> dim;
  std::string output;
  ModelParamArgs model_params;
};

inline int cmd_model(const ModelArgs& a, std::ostream& out) {
  const ModelEntry* entry = find_model(a.name);
  if (!entry) throw usage_error("unknown model '" + a.name + "'");
  if (a.dim && a.name != "one" && a.name != "cos")
    throw usage_error("--dim only applies to the models 'one' and 'cos'");
  if (a.closed_form && !a.walked_k) throw usage_error("--closed-form requires --walked-k");
  if (a.closed_form && a.name != "example31")
    throw usage_error("--closed-form is only available for example31");
  if (a.name == "example31" && a.n_max < 1) throw usage_error("example31 needs --n-max >= 1");
  if (a.closed_form) {
    emit_sequence(example_walked_closed_form(a.n_max, *a.walked_k), a.output, out);
    return exit_ok;
  }
  FloatSeq seq = model_sequence(a.name, a.model_params.params(), a.n_max, a.dim);
  if (a.walked_k) {
    if (seq.n_max() < static_cast<std::size_t>(2 * *a.walked_k))
      throw usage_error("--n-max too small to walk by k = " + std::to_string(*a.walked_k));
    if (seq.dimension != 1 && seq.dimension != 2)
      throw usage_error("walks start from dimension 1 or 2");
    seq = walk_closed_form(seq, *a.walked_k);
  }
  emit_sequence(seq, a.output, out);
  return exit_ok;
}

inline void add_model_params(CLI::App* sub, ModelParamArgs& p) {
  sub->add_option("--epsilon", p.epsilon, "hs: decay excess epsilon > 0")->check(CLI::PositiveNumber);
  sub->add_option("--c", p.c, "hs: limit c of c_n (constant rule)")->check(CLI::PositiveNumber);
  sub->add_option("--c0", p.c0, "hs: c_0 (defaults to c)")->check(CLI::PositiveNumber);
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Dimension walks for Schoenberg coefficients of isotropic positive definite functions on spheres",
               "schoenberg"};
  app.require_subcommand(1);

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Print the exact walk weight row for (n, k)");
  c->add_option("--parity", coeffs.parity, "odd: Fourier -> d = 2k+1, even: Legendre -> d = 2k+2")
      ->required()
      ->check(CLI::IsMember({"odd", "even"}));
  c->add_option("--n", coeffs.n, "coefficient index n >= 0")->required()->check(CLI::NonNegativeNumber);
  c->add_option("--k", coeffs.k, "half the dimension jump, k >= 1")->required()->check(CLI::PositiveNumber);
  c->add_option("--format", coeffs.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  WalkArgs walk;
  auto* w = app.add_subcommand("walk", "Walk a coefficient file up by 2k dimensions");
  w->add_option("--input", walk.input, "sequence file")->required();
  w->add_option("--k", walk.k, "half the dimension jump, k >= 1")->required()->check(CLI::PositiveNumber);
  w->add_option("--method", walk.method, "closed, recursive or both")
      ->check(CLI::IsMember({"closed", "recursive", "both"}));
  w->add_option("--output", walk.output, "output file (stdout if omitted)");

  ExtractArgs extract;
  auto* e = app.add_subcommand("extract", "Extract Fourier (d=1) or Legendre (d=2) coefficients");
  auto* model_opt = e->add_option("--model", extract.model, "registered model name");
  auto* samples_opt = e->add_option("--samples", extract.samples,
                                    "JSON file {\"samples\": [...]} on the uniform grid j*pi/(M-1)");
  model_opt->excludes(samples_opt);
  e->add_option("--dim", extract.dim, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  e->add_option("--n-max", extract.n_max, "highest coefficient index")->required();
  e->add_option("--grid", extract.grid, "trapezoid grid size for d = 1");
  e->add_option("--order", extract.order, "Gauss-Legendre order for d = 2");
  e->add_option("--output", extract.output, "output file (stdout if omitted)");
  add_model_params(e, extract.model_params);

  EvalArgs eval;
  auto* v = app.add_subcommand("eval", "Evaluate the series of a coefficient file");
  v->add_option("--input", eval.input, "sequence file")->required();
  v->add_option("--theta", eval.thetas, "angles in [0, pi]; accepts pi, pi/x, x*pi")->required();

  VerifyArgs verify;
  auto* r = app.add_subcommand("verify", "Check coefficient nonnegativity/normalization, optionally a Gram matrix");
  r->add_option("--input", verify.input, "sequence file")->required();
  r->add_flag("--strict", verify.strict, "fail without positive even and odd entries");
  r->add_flag("--gram", verify.gram, "also run a positive-semidefiniteness spot check");
  r->add_option("--dimension", verify.dimension, "sphere dimension for --gram (default: file dimension)")
      ->check(CLI::PositiveNumber);
  r->add_option("--points", verify.points, "points for --gram")->check(CLI::Range(2, 2000));
  r->add_option("--seed", verify.seed, "seed for --gram");

  ModelArgs model;
  auto* m = app.add_subcommand("model", "Write the coefficient sequence of a named model");
  m->add_option("name", model.name, "example31, hs, one or cos")->required();
  m->add_option("--n-max", model.n_max, "highest coefficient index")->required();
  m->add_option("--walked-k", model.walked_k, "walk the sequence up by 2k dimensions")->check(CLI::PositiveNumber);
  m->add_flag("--closed-form", model.closed_form, "example31: use the Beta closed form for the walk");
  m->add_option("--dim", model.dim, "dimension for 'one' and 'cos'")->check(CLI::PositiveNumber);
  m->add_option("--output", model.output, "output file (stdout if omitted)");
  add_model_params(m, model.model_params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (c->parsed()) return cmd_coeffs(coeffs, out);
    if (w->parsed()) return cmd_walk(walk, out, err);
    if (e->parsed()) {
      if (extract.model.empty() && extract.samples.empty())
        throw usage_error("extract needs --model or --samples");
      return cmd_extract(extract, out);
    }
    if (v->parsed()) return cmd_eval(eval, out);
    if (r->parsed()) return cmd_verify(verify, out);
    if (m->parsed()) return cmd_model(model, out);
  } catch (const resolution_error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_resolution;
  } catch (const sequence_file_error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_usage;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}

}  // namespace schoenberg::cli
