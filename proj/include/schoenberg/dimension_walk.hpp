#pragma once

// Truncated Schoenberg coefficient sequences and the walks between them:
// the step recursions (d -> d+2) and the closed-form jump (d -> d+2k).
//
// Walks shorten: an output entry n needs inputs n, n+2, ..., n+2k, so a
// sequence known up to N yields a walked sequence known up to N - 2k.
// Nothing beyond the input truncation is ever extrapolated.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "schoenberg/exactnum.hpp"
#include "schoenberg/parallel.hpp"
#include "schoenberg/walk_coeffs.hpp"

namespace schoenberg {

enum class NumericKind { exact, floating };

template <class T>
concept Coefficient = std::same_as<T, Rational> || std::same_as<T, double>;

template <Coefficient T>
inline constexpr NumericKind kind_of = std::is_same_v<T, Rational> ? NumericKind::exact
                                                                   : NumericKind::floating;

/// b_{0,d}, ..., b_{N,d}.
template <Coefficient T>
struct CoeffSeq {
  int dimension = 1;
  std::vector<T> values;

  CoeffSeq() = default;
  CoeffSeq(int dim, std::vector<T> vals) : dimension(dim), values(std::move(vals)) {
    if (dimension < 1) throw std::invalid_argument("CoeffSeq: dimension must be positive");
    if (values.empty()) throw std::invalid_argument("CoeffSeq: empty sequence");
    if constexpr (std::is_same_v<T, double>) {
      for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("CoeffSeq: non-finite value");
    }
  }

  std::size_t n_max() const { return values.size() - 1; }
  static constexpr NumericKind kind() { return kind_of<T>; }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;
};

using ExactSeq = CoeffSeq<Rational>;
using FloatSeq = CoeffSeq<double>;
using AnySeq = std::variant<ExactSeq, FloatSeq>;

/// e_m at dimension d with entries 0..n_max.
template <Coefficient T>
CoeffSeq<T> delta_sequence(int dimension, std::size_t n_max, std::size_t m) {
  std::vector<T> v(n_max + 1, T(0));
  v.at(m) = T(1);
  return CoeffSeq<T>(dimension, std::move(v));
}

inline FloatSeq to_float(const ExactSeq& seq) {
  std::vector<double> v;
  v.reserve(seq.values.size());
  for (const auto& r : seq.values) v.push_back(to_double(r));
  return FloatSeq(seq.dimension, std::move(v));
}

inline FloatSeq to_float(const FloatSeq& seq) { return seq; }

namespace detail {

template <Coefficient T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>)
    return r;
  else
    return to_double(r);
}

// Coefficients (c_same, c_next) with b_{n,d+2} = c_same b_{n,d} - c_next b_{n+2,d}.
inline std::pair<Rational, Rational> step_coefficients(std::int64_t n, std::int64_t d) {
  if (d == 1) {
    if (n == 0) return {Rational(1), Rational(1, 2)};
    return {Rational(n + 1, 2), Rational(n + 1, 2)};
  }
  return {Rational((n + d - 1) * (n + d), d * (2 * n + d - 1)),
          Rational((n + 1) * (n + 2), d * (2 * n + d + 3))};
}

}  // namespace detail

/// One recursion step d -> d+2. For d = 1:
///   b_{0,3} = b_{0,1} - b_{2,1}/2,  b_{n,3} = (n+1)(b_{n,1} - b_{n+2,1})/2;
/// for d >= 2:
///   b_{n,d+2} = (n+d-1)(n+d)/(d(2n+d-1)) b_{n,d} - (n+1)(n+2)/(d(2n+d+3)) b_{n+2,d}.
template <Coefficient T>
CoeffSeq<T> step_up(const CoeffSeq<T>& seq) {
  if (seq.n_max() < 2) throw std::invalid_argument("step_up: sequence needs n_max >= 2");
  const std::size_t out_len = seq.values.size() - 2;
  std::vector<T> out(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    auto [same, next] = detail::step_coefficients(static_cast<std::int64_t>(n), seq.dimension);
    out[n] = detail::from_rational<T>(same) * seq.values[n] -
             detail::from_rational<T>(next) * seq.values[n + 2];
  }
  return CoeffSeq<T>(seq.dimension + 2, std::move(out));
}

/// k recursion steps.
template <Coefficient T>
CoeffSeq<T> walk_recursive(const CoeffSeq<T>& seq, int k) {
  if (k < 1) throw std::invalid_argument("walk_recursive: k must be at least 1");
  if (seq.n_max() < static_cast<std::size_t>(2 * k))
    throw std::invalid_argument("walk_recursive: n_max must be at least 2k");
  CoeffSeq<T> cur = seq;
  for (int s = 0; s < k; ++s) cur = step_up(cur);
  return cur;
}

/// Closed-form jump from d = 1 (Fourier cosine) or d = 2 (Legendre) to
/// d + 2k: entry n is sum_i w_i(n,k) * values[n + 2i].
template <Coefficient T>
CoeffSeq<T> walk_closed_form(const CoeffSeq<T>& seq, int k) {
  if (seq.dimension != 1 && seq.dimension != 2)
    throw std::invalid_argument("walk_closed_form: starting dimension must be 1 or 2, got " +
                                std::to_string(seq.dimension));
  if (k < 1) throw std::invalid_argument("walk_closed_form: k must be at least 1");
  if (seq.n_max() < static_cast<std::size_t>(2 * k))
    throw std::invalid_argument("walk_closed_form: n_max must be at least 2k");
  const Parity parity = seq.dimension == 1 ? Parity::odd_target : Parity::even_target;
  const std::size_t out_len = seq.values.size() - 2 * static_cast<std::size_t>(k);
  std::vector<T> out(out_len, T(0));
  parallel_for(out_len, [&](std::size_t n) {
    const WalkWeights row = walk_weights(parity, static_cast<std::int64_t>(n), k);
    T acc(0);
    for (std::size_t i = 0; i < row.weights.size(); ++i)
      acc += detail::from_rational<T>(row.weights[i]) * seq.values[n + 2 * i];
    out[n] = std::move(acc);
  });
  return CoeffSeq<T>(seq.dimension + 2 * k, std::move(out));
}

inline double to_double_value(const Rational& r) { return to_double(r); }
inline double to_double_value(double x) { return x; }

/// Relative agreement used for float-mode path comparisons.
inline bool float_close(double a, double b, double rel = 1e-12, double abs_floor = 1e-15) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

struct WalkComparison {
  bool equivalent = false;
  /// Largest per-entry |closed - recursive| / max(|closed|, |recursive|)
  /// (absolute difference where both are zero).
  double max_discrepancy = 0.0;
};

template <Coefficient T>
WalkComparison compare_walk_paths(const CoeffSeq<T>& closed, const CoeffSeq<T>& recursive) {
  WalkComparison cmp{true, 0.0};
  if (closed.dimension != recursive.dimension || closed.values.size() != recursive.values.size())
    return {false, INFINITY};
  for (std::size_t n = 0; n < closed.values.size(); ++n) {
    const double a = to_double_value(closed.values[n]);
    const double b = to_double_value(recursive.values[n]);
    const double scale = std::max(std::abs(a), std::abs(b));
    const double diff = std::abs(a - b);
    cmp.max_discrepancy = std::max(cmp.max_discrepancy, scale > 0 ? diff / scale : diff);
    if constexpr (std::is_same_v<T, Rational>) {
      if (closed.values[n] != recursive.values[n]) cmp.equivalent = false;
    } else {
      if (!float_close(a, b)) cmp.equivalent = false;
    }
  }
  return cmp;
}

/// Closed-form walk vs k-fold recursion: exact equality for exact input,
/// relative 1e-12 (absolute floor 1e-15) per entry for float input.
template <Coefficient T>
bool verify_walk_equivalence(const CoeffSeq<T>& seq, int k) {
  return compare_walk_paths(walk_closed_form(seq, k), walk_recursive(seq, k)).equivalent;
}

/// Checks the n = 0 entry of step_up against
///   b_{0,d+2} = b_{0,d} - 2/(d(d+3)) b_{2,d}.
template <Coefficient T>
bool zero_row_identity_check(const CoeffSeq<T>& seq) {
  if (seq.n_max() < 2) throw std::invalid_argument("zero_row_identity_check: n_max must be >= 2");
  const Rational coeff(2, static_cast<std::int64_t>(seq.dimension) * (seq.dimension + 3));
  const T expected = seq.values[0] - detail::from_rational<T>(coeff) * seq.values[2];
  const T stepped = step_up(seq).values[0];
  if constexpr (std::is_same_v<T, Rational>)
    return expected == stepped;
  else
    return float_close(expected, stepped);
}

/// Indices of strictly negative entries. Walks do not preserve
/// nonnegativity in general; this only records where it fails.
template <Coefficient T>
std::vector<std::size_t> negative_entries(const CoeffSeq<T>& seq, double tolerance = 0.0) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < seq.values.size(); ++n) {
    if constexpr (std::is_same_v<T, Rational>) {
      if (seq.values[n] < 0) out.push_back(n);
    } else {
      if (seq.values[n] < -tolerance) out.push_back(n);
    }
  }
  return out;
}

}  // namespace schoenberg
