#pragma once

// Exact rational arithmetic and the combinatorial functions the coefficient
// formulas are assembled from: double factorials, rising factorials
// (Pochhammer symbols), binomials and the Beta function.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace schoenberg {

using Integer = boost::multiprecision::cpp_int;

/// Signed arbitrary-precision rational, always in lowest terms with a
/// positive denominator. Division by zero throws std::overflow_error.
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline bool is_half_integer(const Rational& r) { return denominator_of(r) == 2; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q", or "p" when the value is an integer.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Exact value twice_value / 2; covers arguments such as n + 1/2 and n + k + 3/2.
class HalfInteger {
public:
  explicit HalfInteger(Integer twice_value) : twice_(std::move(twice_value)) {}

  /// whole + 1/2
  static HalfInteger plus_half(const Integer& whole) { return HalfInteger(2 * whole + 1); }
  static HalfInteger from_integer(const Integer& whole) { return HalfInteger(2 * whole); }

  const Integer& twice_value() const { return twice_; }
  Rational value() const { return Rational(twice_, Integer(2)); }

  HalfInteger operator+(std::int64_t offset) const { return HalfInteger(twice_ + 2 * offset); }

  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;

private:
  Integer twice_;
};

/// (2k-1)!! = 1 * 3 * ... * (2k-1); equals 1 for k = 0.
inline Rational double_factorial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("double_factorial: negative argument");
  Integer prod = 1;
  for (std::int64_t i = 1; i <= k; ++i) prod *= 2 * i - 1;
  return Rational(prod);
}

inline Integer factorial(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("factorial: negative argument");
  Integer prod = 1;
  for (std::int64_t i = 2; i <= m; ++i) prod *= i;
  return prod;
}

/// Rising factorial x (x+1) ... (x+m-1); the empty product is 1.
inline Rational pochhammer(const Rational& x, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("pochhammer: negative length");
  Rational prod = 1;
  Rational term = x;
  for (std::int64_t j = 0; j < m; ++j) {
    prod *= term;
    term += 1;
  }
  return prod;
}

/// Half-integer rising factorial, accumulated over twice-values and divided
/// by 2^m once at the end.
inline Rational pochhammer(const HalfInteger& x, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("pochhammer: negative length");
  Integer num = 1;
  Integer term = x.twice_value();
  for (std::int64_t j = 0; j < m; ++j) {
    num *= term;
    term += 2;
  }
  Integer den = 1;
  den <<= static_cast<unsigned>(m);
  return Rational(num, den);
}

/// C(a, b); zero when b < 0 or b > a.
inline Rational binomial(std::int64_t a, std::int64_t b) {
  if (a < 0) throw std::invalid_argument("binomial: negative upper argument");
  if (b < 0 || b > a) return Rational(0);
  b = std::min(b, a - b);
  Integer result = 1;
  for (std::int64_t j = 1; j <= b; ++j) {
    result *= a - b + j;
    result /= j;  // exact: result is C(a-b+j, j) here
  }
  return Rational(result);
}

/// (x)_k (x+k)_l == (x)_{k+l}, evaluated exactly.
inline bool pochhammer_split_identity(const Rational& x, std::int64_t k, std::int64_t l) {
  return pochhammer(x, k) * pochhammer(x + k, l) == pochhammer(x, k + l);
}

/// Both sides of Frisch's alternating binomial-reciprocal sum:
///   sum_{i=0}^k (-1)^i C(k,i) / C(b+i, c)  ==  c/(k+c) / C(k+b, b-c).
/// The left side is summed term by term; the right side is the closed form.
inline std::pair<Rational, Rational> frisch_identity_sides(std::int64_t k, std::int64_t b,
                                                           std::int64_t c) {
  if (k < 0) throw std::invalid_argument("frisch_identity_sides: k must be nonnegative");
  if (c < 1 || b < c) throw std::invalid_argument("frisch_identity_sides: requires b >= c >= 1");
  Rational lhs = 0;
  for (std::int64_t i = 0; i <= k; ++i) {
    Rational term = binomial(k, i) / binomial(b + i, c);
    lhs += (i % 2 == 0) ? term : Rational(-term);
  }
  Rational rhs = Rational(c, k + c) / binomial(k + b, b - c);
  return {lhs, rhs};
}

/// Exact Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y).
///
/// Supported when one argument is a positive integer m and the other a
/// positive integer or half-integer x; then B = (m-1)! / (x)_m and no
/// Gamma value at a half-integer is ever formed. Two half-integers give a
/// multiple of pi and are rejected with std::domain_error.
inline Rational beta_exact(const Rational& x, const Rational& y) {
  if (x <= 0 || y <= 0) throw std::domain_error("beta_exact: arguments must be positive");
  auto supported = [](const Rational& r) { return is_integer(r) || is_half_integer(r); };
  if (!supported(x) || !supported(y))
    throw std::domain_error("beta_exact: arguments must be integers or half-integers");
  const Rational* whole = nullptr;
  const Rational* other = nullptr;
  if (is_integer(y)) {
    whole = &y;
    other = &x;
  } else if (is_integer(x)) {
    whole = &x;
    other = &y;
  } else {
    throw std::domain_error("beta_exact: B(half-integer, half-integer) is not rational");
  }
  const auto m = numerator_of(*whole).convert_to<std::int64_t>();
  return Rational(factorial(m - 1)) / pochhammer(*other, m);
}

namespace detail {

// Stirling remainder lgamma(x) - [(x-1/2)log x - x + log sqrt(2 pi)] for x >= 10.
inline double stirling_correction(double x) {
  const double x2 = 1.0 / (x * x);
  // B_{2m} / (2m (2m-1)), m = 1..8
  constexpr double c[] = {1.0 / 12.0,      -1.0 / 360.0,        1.0 / 1260.0,
                          -1.0 / 1680.0,   1.0 / 1188.0,        -691.0 / 360360.0,
                          1.0 / 156.0,     -3617.0 / 122400.0};
  double sum = 0.0;
  for (int m = 7; m >= 0; --m) sum = sum * x2 + c[m];
  return sum / x;
}

}  // namespace detail

/// log B(x, y) for positive x, y. Large arguments go through the Stirling
/// series so that the large lgamma terms cancel analytically rather than in
/// floating point.
inline double log_beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("log_beta: arguments must be positive");
  const double p = std::min(x, y);
  const double q = std::max(x, y);
  constexpr double log_sqrt_2pi = 0.918938533204672741780329736406;
  if (p >= 10.0) {
    const double corr = detail::stirling_correction(p) + detail::stirling_correction(q) -
                        detail::stirling_correction(p + q);
    return -0.5 * std::log(q) + log_sqrt_2pi + corr + (p - 0.5) * std::log(p / (p + q)) +
           q * std::log1p(-p / (p + q));
  }
  if (q >= 10.0) {
    const double corr = detail::stirling_correction(q) - detail::stirling_correction(p + q);
    return std::lgamma(p) + corr + p - p * std::log(p + q) +
           (q - 0.5) * std::log1p(-p / (p + q));
  }
  return std::log(std::tgamma(p) * (std::tgamma(q) / std::tgamma(p + q)));
}

inline double beta_float(double x, double y) {
  const double p = std::min(x, y);
  const double q = std::max(x, y);
  if (p > 0.0 && q < 10.0) return std::tgamma(p) * (std::tgamma(q) / std::tgamma(p + q));
  return std::exp(log_beta(x, y));
}

}  // namespace schoenberg
