#pragma once

// Gegenbauer series on [0, pi]: evaluation, coefficient extraction by
// quadrature, and numerical membership checks for the class of isotropic
// positive definite functions on S^d.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "schoenberg/dimension_walk.hpp"
#include "schoenberg/exactnum.hpp"
#include "schoenberg/parallel.hpp"

namespace schoenberg {

/// Raised when a grid or quadrature order cannot resolve the requested
/// number of coefficients.
class resolution_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Correlation function psi on [0, pi], optionally with known Schoenberg
/// coefficients b_{n,d}.
struct SphericalModel {
  std::string name;
  std::function<double(double)> evaluator;
  std::function<std::optional<double>(std::size_t n, int d)> coefficient_oracle;

  double operator()(double theta) const { return evaluator(theta); }
};

namespace detail {

inline void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("theta must lie in [0, pi], got " + std::to_string(theta));
}

// Normalized Gegenbauer recurrence R_n = alpha_n x R_{n-1} - beta_n R_{n-2},
// R_n = C_n^lambda(x) / C_n^lambda(1), valid for lambda > 0.
inline double gegenbauer_alpha(std::size_t n, double lambda) {
  const double nn = static_cast<double>(n);
  return 2.0 * (nn + lambda - 1.0) / (nn + 2.0 * lambda - 1.0);
}
inline double gegenbauer_beta(std::size_t n, double lambda) {
  const double nn = static_cast<double>(n);
  return (nn - 1.0) / (nn + 2.0 * lambda - 1.0);
}

}  // namespace detail

/// C_n^{(d-1)/2}(cos theta) / C_n^{(d-1)/2}(1): cos(n theta) for d = 1,
/// P_n(cos theta) for d = 2.
inline double normalized_basis(int d, std::size_t n, double theta) {
  if (d < 1) throw std::invalid_argument("normalized_basis: d must be positive");
  detail::check_theta(theta);
  if (d == 1) return std::cos(static_cast<double>(n) * theta);
  if (n == 0) return 1.0;
  const double lambda = 0.5 * (d - 1);
  const double x = std::cos(theta);
  double prev = 1.0;
  double cur = x;
  for (std::size_t m = 2; m <= n; ++m) {
    const double next =
        detail::gegenbauer_alpha(m, lambda) * x * cur - detail::gegenbauer_beta(m, lambda) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// psi(theta) = sum_n b_{n,d} C_n(cos theta)/C_n(1). Direct cosine sum for
/// d = 1, backward Clenshaw recurrence for d >= 2.
inline double evaluate_series(const FloatSeq& seq, double theta) {
  detail::check_theta(theta);
  const auto& b = seq.values;
  if (seq.dimension == 1) {
    double sum = 0.0;
    for (std::size_t n = 0; n < b.size(); ++n) sum += b[n] * std::cos(static_cast<double>(n) * theta);
    return sum;
  }
  const double lambda = 0.5 * (seq.dimension - 1);
  const double x = std::cos(theta);
  // y_j = b_j + alpha_{j+1} x y_{j+1} - beta_{j+2} y_{j+2}. Since R_0 = 1 and
  // R_1 = alpha_1 x R_0 (alpha_1 = 1), the sum collapses to psi = y_0.
  double y1 = 0.0;
  double y2 = 0.0;
  for (std::size_t j = b.size(); j-- > 0;) {
    const double y0 = b[j] + detail::gegenbauer_alpha(j + 1, lambda) * x * y1 -
                      detail::gegenbauer_beta(j + 2, lambda) * y2;
    y2 = y1;
    y1 = y0;
  }
  return y1;
}

inline double evaluate_series(const ExactSeq& seq, double theta) {
  return evaluate_series(to_float(seq), theta);
}

/// Exact value at theta = 0, where every normalized basis function is 1.
inline Rational evaluate_series_at_zero(const ExactSeq& seq) {
  Rational sum = 0;
  for (const auto& v : seq.values) sum += v;
  return sum;
}

/// Model whose evaluator is the truncated series itself; the oracle
/// returns the stored coefficients at the sequence's own dimension.
inline SphericalModel model_from_series(FloatSeq seq, std::string name = "series") {
  auto shared = std::make_shared<const FloatSeq>(std::move(seq));
  SphericalModel m;
  m.name = std::move(name);
  m.evaluator = [shared](double theta) { return evaluate_series(*shared, theta); };
  m.coefficient_oracle = [shared](std::size_t n, int d) -> std::optional<double> {
    if (d != shared->dimension) return std::nullopt;
    return n < shared->values.size() ? shared->values[n] : 0.0;
  };
  return m;
}

/// Fourier cosine coefficients from samples of psi on the uniform grid
/// theta_j = j pi / (M-1), j = 0..M-1, by the composite trapezoid rule.
inline FloatSeq extract_fourier_samples(std::span<const double> samples, std::size_t n_max) {
  const std::size_t grid = samples.size();
  if (grid < 2 * n_max + 1)
    throw resolution_error("extract_fourier: grid of " + std::to_string(grid) +
                           " points cannot resolve n_max = " + std::to_string(n_max) +
                           " (needs at least " + std::to_string(2 * n_max + 1) + ")");
  const std::size_t intervals = grid - 1;
  const double h = std::numbers::pi / static_cast<double>(intervals);
  std::vector<double> out(n_max + 1, 0.0);
  parallel_for(n_max + 1, [&](std::size_t n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < grid; ++j) {
      // cos(n j pi / L) evaluated on the reduced angle to keep arguments small
      const std::size_t phase = (n * j) % (2 * intervals);
      const double c = std::cos(static_cast<double>(phase) * h);
      const double w = (j == 0 || j == intervals) ? 0.5 : 1.0;
      sum += w * samples[j] * c;
    }
    out[n] = (n == 0 ? 1.0 : 2.0) * sum / static_cast<double>(intervals);
  });
  return FloatSeq(1, std::move(out));
}

/// b_{0,1} = (1/pi) int psi,  b_{n,1} = (2/pi) int psi(theta) cos(n theta).
inline FloatSeq extract_fourier(const SphericalModel& model, std::size_t n_max,
                                std::size_t grid_size) {
  if (grid_size < 2 * n_max + 1)
    throw resolution_error("extract_fourier: grid_size must be at least 2 n_max + 1");
  std::vector<double> samples(grid_size);
  const double h = std::numbers::pi / static_cast<double>(grid_size - 1);
  for (std::size_t j = 0; j < grid_size; ++j)
    samples[j] = model(j + 1 == grid_size ? std::numbers::pi : static_cast<double>(j) * h);
  return extract_fourier_samples(samples, n_max);
}

/// Gauss-Legendre nodes (increasing) and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

inline QuadratureRule gauss_legendre_rule(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order must be at least 1");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(static_cast<std::size_t>(order), 0.0);
  rule.weights.assign(static_cast<std::size_t>(order), 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= order; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_legendre_rule: Newton iteration did not converge");
    // derivative at the converged node
    {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= order; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    const auto lo = static_cast<std::size_t>(i);
    rule.nodes[hi] = x;
    rule.nodes[lo] = -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  return rule;
}

/// b_{n,2} = (2n+1)/2 int_{-1}^{1} psi(arccos x) P_n(x) dx by Gauss-Legendre.
inline FloatSeq extract_legendre(const SphericalModel& model, std::size_t n_max, int order) {
  if (order < 1 || static_cast<std::size_t>(order) < n_max + 1)
    throw resolution_error("extract_legendre: quadrature order " + std::to_string(order) +
                           " cannot resolve n_max = " + std::to_string(n_max) +
                           " (needs at least " + std::to_string(n_max + 1) + ")");
  const QuadratureRule rule = gauss_legendre_rule(order);
  std::vector<double> psi(rule.nodes.size());
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    psi[j] = model(std::acos(std::clamp(rule.nodes[j], -1.0, 1.0)));
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double x = rule.nodes[j];
    const double wpsi = rule.weights[j] * psi[j];
    double p0 = 1.0;
    double p1 = x;
    out[0] += wpsi;
    if (n_max >= 1) out[1] += wpsi * x;
    for (std::size_t n = 2; n <= n_max; ++n) {
      const double nn = static_cast<double>(n);
      const double p2 = ((2.0 * nn - 1.0) * x * p1 - (nn - 1.0) * p0) / nn;
      out[n] += wpsi * p2;
      p0 = p1;
      p1 = p2;
    }
  }
  for (std::size_t n = 0; n <= n_max; ++n) out[n] *= (2.0 * static_cast<double>(n) + 1.0) / 2.0;
  return FloatSeq(2, std::move(out));
}

/// Legendre coefficients from uniform-grid samples theta_j = j pi/(M-1),
/// using the trapezoid rule on (2n+1)/2 int_0^pi psi P_n(cos) sin.
/// Second-order accurate only; prefer extract_legendre when psi is known.
inline FloatSeq extract_legendre_samples(std::span<const double> samples, std::size_t n_max) {
  const std::size_t grid = samples.size();
  if (grid < 2 * n_max + 1)
    throw resolution_error("extract_legendre: grid of " + std::to_string(grid) +
                           " points cannot resolve n_max = " + std::to_string(n_max));
  const std::size_t intervals = grid - 1;
  const double h = std::numbers::pi / static_cast<double>(intervals);
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t j = 1; j < intervals; ++j) {  // sin vanishes at both ends
    const double theta = static_cast<double>(j) * h;
    const double x = std::cos(theta);
    const double wpsi = h * std::sin(theta) * samples[j];
    double p0 = 1.0;
    double p1 = x;
    out[0] += wpsi;
    if (n_max >= 1) out[1] += wpsi * x;
    for (std::size_t n = 2; n <= n_max; ++n) {
      const double nn = static_cast<double>(n);
      const double p2 = ((2.0 * nn - 1.0) * x * p1 - (nn - 1.0) * p0) / nn;
      out[n] += wpsi * p2;
      p0 = p1;
      p1 = p2;
    }
  }
  for (std::size_t n = 0; n <= n_max; ++n) out[n] *= (2.0 * static_cast<double>(n) + 1.0) / 2.0;
  return FloatSeq(2, std::move(out));
}

struct MembershipReport {
  static constexpr double negativity_tolerance = 1e-12;
  static constexpr double normalization_tolerance = 1e-9;

  int dimension = 1;
  std::size_t n_max = 0;
  std::vector<std::pair<std::size_t, double>> negative_entries;
  double coefficient_sum = 0.0;
  /// |sum b - 1|; the tail beyond n_max is not included.
  double normalization_defect = 0.0;
  std::size_t even_positive = 0;
  std::size_t odd_positive = 0;
  bool strict = false;

  bool nonnegative() const { return negative_entries.empty(); }
  /// The truncated sum may fall short of 1 (missing tail) but may not exceed it.
  bool sum_within_bound() const { return coefficient_sum <= 1.0 + normalization_tolerance; }
  /// Necessary evidence only: strict positive definiteness needs infinitely
  /// many positive even and odd coefficients, which no truncation can show.
  bool strict_evidence() const { return even_positive > 0 && odd_positive > 0; }
  bool pass() const { return nonnegative() && sum_within_bound() && (!strict || strict_evidence()); }
};

template <Coefficient T>
MembershipReport check_membership(const CoeffSeq<T>& seq, bool strict) {
  MembershipReport r;
  r.dimension = seq.dimension;
  r.n_max = seq.n_max();
  r.strict = strict;
  for (std::size_t n = 0; n < seq.values.size(); ++n) {
    const double v = to_double_value(seq.values[n]);
    r.coefficient_sum += v;
    if (v < -MembershipReport::negativity_tolerance) r.negative_entries.emplace_back(n, v);
    if (v > 0.0) ++(n % 2 == 0 ? r.even_positive : r.odd_positive);
  }
  if constexpr (std::is_same_v<T, Rational>) {
    Rational s = 0;
    for (const auto& v : seq.values) s += v;
    r.coefficient_sum = to_double(s);
    r.normalization_defect = to_double(abs(s - 1));
  } else {
    r.normalization_defect = std::abs(r.coefficient_sum - 1.0);
  }
  return r;
}

struct GramReport {
  std::size_t point_count = 0;
  int dimension = 0;
  double min_eigen_estimate = 0.0;
  double tolerance = 0.0;
  bool psd_pass = false;
  std::uint64_t seed = 0;
  std::string generator = "mt19937_64";
};

/// Pseudo-random points on S^dimension (unit vectors in R^{dimension+1}),
/// rejecting near-duplicates so every pair is pairwise distinct.
inline std::vector<Eigen::VectorXd> sample_sphere(int dimension, std::size_t count,
                                                  std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("sample_sphere: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    Eigen::VectorXd v(dimension + 1);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
    const double norm = v.norm();
    if (norm < 1e-12) continue;
    v /= norm;
    const bool duplicate = std::any_of(pts.begin(), pts.end(), [&](const Eigen::VectorXd& p) {
      return p.dot(v) > 1.0 - 1e-12;
    });
    if (!duplicate) pts.push_back(std::move(v));
  }
  return pts;
}

/// Spot check of the positive definiteness condition
///   sum_i sum_j a_i a_j psi(theta(x_i, x_j)) >= 0
/// on one seeded random point set: the smallest eigenvalue of the Gram
/// matrix must be at least -1e-9 * point_count.
inline GramReport gram_psd_check(const SphericalModel& model, int dimension,
                                 std::size_t point_count, std::uint64_t seed) {
  if (dimension < 1) throw std::invalid_argument("gram_psd_check: dimension must be positive");
  if (point_count < 2) throw std::invalid_argument("gram_psd_check: need at least 2 points");
  const auto pts = sample_sphere(dimension, point_count, seed);
  const auto m = static_cast<Eigen::Index>(point_count);
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    gram(i, i) = model(0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      const double inner = std::clamp(pts[i].dot(pts[j]), -1.0, 1.0);
      gram(i, j) = gram(j, i) = model(std::acos(inner));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gram_psd_check: eigen solver failed");
  GramReport r;
  r.point_count = point_count;
  r.dimension = dimension;
  r.seed = seed;
  r.min_eigen_estimate = solver.eigenvalues().minCoeff();
  r.tolerance = 1e-9 * static_cast<double>(point_count);
  r.psd_pass = r.min_eigen_estimate >= -r.tolerance;
  return r;
}

}  // namespace schoenberg
