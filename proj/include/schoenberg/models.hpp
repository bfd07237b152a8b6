#pragma once

// Concrete coefficient families:
//  - "example31": Fourier cosine coefficients b_{n,1} = 6/(pi^2 n^2), b_{0,1} = 0,
//    whose walked coefficients have the Beta-function closed form
//      b_{n,2k+1} = 3k(n+k) B(n/2,k)^2 / (n pi^2 (n+2k)^2 B(n,2k)).
//  - "hs": Legendre coefficients b_{n,2} = c(n)(2n+1)/2 with
//    c(n) = c_n / n^{2+eps}, c(0) = c_0.
// plus a log-log decay fit used as a fractal-index diagnostic.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schoenberg/dimension_walk.hpp"
#include "schoenberg/exactnum.hpp"
#include "schoenberg/series.hpp"
#include "schoenberg/walk_coeffs.hpp"

namespace schoenberg {

inline constexpr double example_scale = 6.0 / (std::numbers::pi * std::numbers::pi);

/// 1/n^2 for n >= 1 and 0 at n = 0; b_{n,1} = example_scale * profile[n].
/// Walks are linear, so walking this exact profile and scaling afterwards
/// keeps the whole computation rational.
inline ExactSeq example_fourier_profile(std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("example_fourier_profile: n_max must be >= 1");
  std::vector<Rational> v(n_max + 1);
  v[0] = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    v[n] = Rational(1, nn * nn);
  }
  return ExactSeq(1, std::move(v));
}

inline FloatSeq example_fourier_seq(std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("example_fourier_seq: n_max must be >= 1");
  std::vector<double> v(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    v[n] = example_scale / (nn * nn);
  }
  return FloatSeq(1, std::move(v));
}

/// psi for the example: sum_{n>=1} cos(n theta)/n^2 = pi^2/6 - pi theta/2 + theta^2/4
/// on [0, pi], hence psi(theta) = 1 - 3 theta/pi + 3 theta^2/(2 pi^2).
inline double example_psi(double theta) {
  constexpr double pi = std::numbers::pi;
  return 1.0 - 3.0 * theta / pi + 1.5 * theta * theta / (pi * pi);
}

/// pi^2 * b_{n,2k+1} as an exact rational, from the Beta closed form.
inline Rational example_closed_form_exact_part(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("example_closed_form: requires n >= 1 and k >= 1");
  const Rational b_half = beta_exact(Rational(n, 2), Rational(k));
  const Rational b_full = beta_exact(Rational(n), Rational(2 * k));
  return Rational(3 * k * (n + k)) * b_half * b_half /
         (Rational(n * (n + 2 * k) * (n + 2 * k)) * b_full);
}

/// b_{n,2k+1} for the example via the Beta closed form. Exact rational
/// arithmetic up to n = 1000, log-Beta floats beyond.
inline double example_closed_form(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("example_closed_form: requires n >= 1 and k >= 1");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  if (n <= 1000) return to_double(example_closed_form_exact_part(n, k)) / pi2;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double log_value = std::log(3.0 * kd * (nd + kd)) + 2.0 * log_beta(0.5 * nd, kd) -
                           std::log(nd) - 2.0 * std::log(nd + 2.0 * kd) - log_beta(nd, 2.0 * kd);
  return std::exp(log_value) / pi2;
}

/// b_{0,2k+1} for the example: sum_{i>=1} a_i(0,k) * 6/(pi^2 (2i)^2).
inline double example_zero_coefficient(std::int64_t k) {
  const WalkWeights row = odd_weights(0, k);
  Rational sum = 0;
  for (std::int64_t i = 1; i <= k; ++i) sum += row.weights[static_cast<std::size_t>(i)] / (4 * i * i);
  return example_scale * to_double(sum);
}

/// b_{n,2k+1}, n = 0..n_max, from the closed form (no truncation loss).
inline FloatSeq example_walked_closed_form(std::size_t n_max, std::int64_t k) {
  std::vector<double> v(n_max + 1);
  v[0] = example_zero_coefficient(k);
  for (std::size_t n = 1; n <= n_max; ++n) v[n] = example_closed_form(static_cast<std::int64_t>(n), k);
  return FloatSeq(static_cast<int>(2 * k + 1), std::move(v));
}

/// Parameters of a Hitczenko-Stein coefficient family. Without a table,
/// c_n is the constant c (so lambda1 = lambda2 = c).
struct HSModelSpec {
  double epsilon = 1.0;
  double c0 = 1.0;
  double c = 1.0;
  std::vector<double> cn_table;  // c_1, c_2, ...; entries past the table use c
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  static HSModelSpec constant(double epsilon, double c, std::optional<double> c0 = std::nullopt) {
    HSModelSpec s;
    s.epsilon = epsilon;
    s.c = c;
    s.c0 = c0.value_or(c);
    s.lambda1 = c;
    s.lambda2 = c;
    return s;
  }

  double cn(std::size_t n) const {
    return n >= 1 && n <= cn_table.size() ? cn_table[n - 1] : c;
  }

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("HSModelSpec: epsilon must be positive");
    if (!(c0 > 0.0)) throw std::invalid_argument("HSModelSpec: c0 must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("HSModelSpec: limit c must be positive");
    if (!(lambda1 > 0.0) || lambda2 < lambda1)
      throw std::invalid_argument("HSModelSpec: bounds must satisfy 0 < lambda1 <= lambda2");
    if (c < lambda1 || c > lambda2) throw std::invalid_argument("HSModelSpec: limit c outside bounds");
    for (std::size_t i = 0; i < cn_table.size(); ++i)
      if (!(cn_table[i] >= lambda1 && cn_table[i] <= lambda2))
        throw std::invalid_argument("HSModelSpec: c_" + std::to_string(i + 1) + " outside bounds");
  }
};

/// b_{0,2} = c_0/2,  b_{n,2} = c_n / n^{2+eps} * (2n+1)/2.
inline FloatSeq hs_model_seq(const HSModelSpec& spec, std::size_t n_max) {
  spec.validate();
  std::vector<double> v(n_max + 1);
  v[0] = 0.5 * spec.c0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    v[n] = spec.cn(n) / std::pow(nn, 2.0 + spec.epsilon) * (2.0 * nn + 1.0) / 2.0;
  }
  return FloatSeq(2, std::move(v));
}

struct FractalIndexEstimate {
  double slope = 0.0;  // least-squares slope of log b_n against log n
  double gamma = 0.0;  // -slope - 1
  /// The decay correspondence only covers gamma in the open interval (0, 1).
  bool in_unit_interval() const { return gamma > 0.0 && gamma < 1.0; }
};

/// Fits b_n ~ n^{-gamma-1} over n_lo..n_hi (inclusive).
template <Coefficient T>
FractalIndexEstimate fractal_index_estimate(const CoeffSeq<T>& seq, std::size_t n_lo,
                                            std::size_t n_hi) {
  if (seq.dimension != 1) throw std::invalid_argument("fractal_index_estimate: needs a d = 1 sequence");
  if (n_lo < 1 || n_hi <= n_lo || n_hi > seq.n_max())
    throw std::invalid_argument("fractal_index_estimate: need 1 <= n_lo < n_hi <= n_max");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    const double b = to_double_value(seq.values[n]);
    if (!(b > 0.0))
      throw std::domain_error("fractal_index_estimate: nonpositive entry at n = " + std::to_string(n));
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(b));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FractalIndexEstimate est;
  est.slope = sxy / sxx;
  est.gamma = -est.slope - 1.0;
  return est;
}

// ---------------------------------------------------------------------------
// Named model registry used by the command-line tool.

struct ModelParams {
  double epsilon = 1.0;
  double c = 1.0;
  std::optional<double> c0;
};

struct ModelEntry {
  std::string_view name;
  std::string_view description;
  int native_dimension;
};

inline constexpr ModelEntry model_entries[] = {
    {"example31", "b_{n,1} = 6/(pi^2 n^2), b_{0,1} = 0", 1},
    {"hs", "b_{n,2} = c_n (2n+1) / (2 n^{2+eps}), b_{0,2} = c_0/2", 2},
    {"one", "psi(theta) = 1", 1},
    {"cos", "psi(theta) = cos(theta)", 1},
};

inline const ModelEntry* find_model(std::string_view name) {
  for (const auto& e : model_entries)
    if (e.name == name) return &e;
  return nullptr;
}

/// Series truncation used to evaluate the hs model's psi.
inline constexpr std::size_t hs_evaluation_terms = 4096;

inline SphericalModel make_model(std::string_view name, const ModelParams& params = {}) {
  SphericalModel m;
  m.name = std::string(name);
  if (name == "example31") {
    m.evaluator = example_psi;
    m.coefficient_oracle = [](std::size_t n, int d) -> std::optional<double> {
      if (d % 2 == 0) return std::nullopt;
      if (d == 1) {
        if (n == 0) return 0.0;
        const double nn = static_cast<double>(n);
        return example_scale / (nn * nn);
      }
      const std::int64_t k = (d - 1) / 2;
      if (n == 0) return example_zero_coefficient(k);
      return example_closed_form(static_cast<std::int64_t>(n), k);
    };
  } else if (name == "hs") {
    const HSModelSpec spec = HSModelSpec::constant(params.epsilon, params.c, params.c0);
    auto seq = std::make_shared<const FloatSeq>(hs_model_seq(spec, hs_evaluation_terms));
    m.evaluator = [seq](double theta) { return evaluate_series(*seq, theta); };
    m.coefficient_oracle = [seq](std::size_t n, int d) -> std::optional<double> {
      if (d != 2 || n >= seq->values.size()) return std::nullopt;
      return seq->values[n];
    };
  } else if (name == "one") {
    m.evaluator = [](double) { return 1.0; };
    m.coefficient_oracle = [](std::size_t n, int) -> std::optional<double> { return n == 0 ? 1.0 : 0.0; };
  } else if (name == "cos") {
    m.evaluator = [](double theta) { return std::cos(theta); };
    m.coefficient_oracle = [](std::size_t n, int) -> std::optional<double> { return n == 1 ? 1.0 : 0.0; };
  } else {
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
  }
  return m;
}

/// Coefficient sequence of a registered model at its native dimension
/// (or at `dimension` for the dimension-free models "one" and "cos").
inline FloatSeq model_sequence(std::string_view name, const ModelParams& params, std::size_t n_max,
                               std::optional<int> dimension = std::nullopt) {
  if (name == "example31") return example_fourier_seq(n_max);
  if (name == "hs") return hs_model_seq(HSModelSpec::constant(params.epsilon, params.c, params.c0), n_max);
  if (name == "one" || name == "cos") {
    const std::size_t m = name == "one" ? 0 : 1;
    if (m > n_max) throw std::invalid_argument("model_sequence: n_max too small for 'cos'");
    return delta_sequence<double>(dimension.value_or(1), n_max, m);
  }
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

}  // namespace schoenberg
