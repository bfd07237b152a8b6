#pragma once

// Closed-form weights of the dimension walk.
//
// Odd targets (Fourier cosine input, d = 1):
//   b_{n,2k+1} = sum_{i=0}^k a_i(n,k) b_{n+2i,1}
//   a_i(n,k) = (-1)^i / 2^k C(k,i) (n+k)(n+2i) / (2k-1)!! * (n+1)_{2k-1} / (n+i)_{k+1}
//   with a_0(0,k) = 1.
//
// Even targets (Legendre input, d = 2):
//   b_{n,2k+2} = sum_{i=0}^k u_i(n,k) b_{n+2i,2}
//   u_i(n,k) = (-1)^i (2k-1)!!/2^k C(k,i) C(2k+n,n) / [(n+i+1/2)_{k-i} (n+k+3/2)_i]

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "schoenberg/exactnum.hpp"

namespace schoenberg {

enum class Parity { odd_target, even_target };

inline const char* to_string(Parity p) { return p == Parity::odd_target ? "odd" : "even"; }

/// Row (w_0, ..., w_k) of walk weights for a fixed coefficient index n and
/// dimension jump 2k.
struct WalkWeights {
  std::int64_t n = 0;
  std::int64_t k = 0;
  Parity parity = Parity::odd_target;
  std::vector<Rational> weights;

  /// Dimension of the coefficients the row produces.
  std::int64_t target_dimension() const {
    return (parity == Parity::odd_target ? 1 : 2) + 2 * k;
  }

  friend bool operator==(const WalkWeights&, const WalkWeights&) = default;
};

namespace detail {

inline void check_walk_args(std::int64_t n, std::int64_t k, const char* who) {
  if (n < 0) throw std::invalid_argument(std::string(who) + ": n must be nonnegative");
  if (k < 1) throw std::invalid_argument(std::string(who) + ": k must be at least 1");
}

inline Rational signed_term(std::int64_t i, Rational value) {
  if (i % 2 != 0) value = -value;
  return value;
}

inline WalkWeights compute_odd_weights(std::int64_t n, std::int64_t k) {
  WalkWeights row{n, k, Parity::odd_target, {}};
  row.weights.reserve(static_cast<std::size_t>(k + 1));
  Integer two_pow_k = 1;
  two_pow_k <<= static_cast<unsigned>(k);
  // common factor (n+k)(n+1)_{2k-1} / (2^k (2k-1)!!)
  const Rational common =
      Rational(n + k) * pochhammer(Rational(n + 1), 2 * k - 1) / (double_factorial(k) * two_pow_k);
  for (std::int64_t i = 0; i <= k; ++i) {
    if (i == 0 && n == 0) {
      row.weights.emplace_back(1);
      continue;
    }
    Rational w = common * binomial(k, i) * Rational(n + 2 * i) / pochhammer(Rational(n + i), k + 1);
    row.weights.push_back(signed_term(i, std::move(w)));
  }
  return row;
}

inline WalkWeights compute_even_weights(std::int64_t n, std::int64_t k) {
  WalkWeights row{n, k, Parity::even_target, {}};
  row.weights.reserve(static_cast<std::size_t>(k + 1));
  Integer two_pow_k = 1;
  two_pow_k <<= static_cast<unsigned>(k);
  const Rational common = double_factorial(k) * binomial(2 * k + n, n) / Rational(two_pow_k);
  for (std::int64_t i = 0; i <= k; ++i) {
    const Rational den = pochhammer(HalfInteger::plus_half(n + i), k - i) *
                         pochhammer(HalfInteger::plus_half(n + k + 1), i);
    row.weights.push_back(signed_term(i, common * binomial(k, i) / den));
  }
  return row;
}

// Rows are immutable once computed; the cache only ever grows.
class WeightCache {
public:
  template <class Compute>
  WalkWeights get(std::int64_t n, std::int64_t k, Parity parity, Compute&& compute) {
    const Key key{n, k, parity};
    {
      std::shared_lock lock(mutex_);
      if (auto it = rows_.find(key); it != rows_.end()) return it->second;
    }
    WalkWeights row = compute(n, k);
    std::unique_lock lock(mutex_);
    return rows_.try_emplace(key, std::move(row)).first->second;
  }

  static WeightCache& instance() {
    static WeightCache cache;
    return cache;
  }

private:
  using Key = std::tuple<std::int64_t, std::int64_t, Parity>;
  std::shared_mutex mutex_;
  std::map<Key, WalkWeights> rows_;
};

}  // namespace detail

/// a_0(n,k), ..., a_k(n,k): weights taking Fourier cosine coefficients
/// b_{n,1}, b_{n+2,1}, ..., b_{n+2k,1} to b_{n,2k+1}.
inline WalkWeights odd_weights(std::int64_t n, std::int64_t k) {
  detail::check_walk_args(n, k, "odd_weights");
  return detail::WeightCache::instance().get(n, k, Parity::odd_target,
                                             detail::compute_odd_weights);
}

/// u_0(n,k), ..., u_k(n,k): weights taking Legendre coefficients
/// b_{n,2}, ..., b_{n+2k,2} to b_{n,2k+2}.
inline WalkWeights even_weights(std::int64_t n, std::int64_t k) {
  detail::check_walk_args(n, k, "even_weights");
  return detail::WeightCache::instance().get(n, k, Parity::even_target,
                                             detail::compute_even_weights);
}

inline WalkWeights walk_weights(Parity parity, std::int64_t n, std::int64_t k) {
  return parity == Parity::odd_target ? odd_weights(n, k) : even_weights(n, k);
}

/// Simplified endpoint forms of the odd weights (n >= 1):
///   a_0(n,k) = (n+k)_k / (2^k (2k-1)!!),  a_k(n,k) = (-1/2)^k (n+1)_k / (2k-1)!!
inline std::pair<Rational, Rational> odd_weight_endpoints(std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("odd_weight_endpoints: n must be at least 1");
  if (k < 1) throw std::invalid_argument("odd_weight_endpoints: k must be at least 1");
  Integer two_pow_k = 1;
  two_pow_k <<= static_cast<unsigned>(k);
  const Rational scale = double_factorial(k) * two_pow_k;
  Rational first = pochhammer(Rational(n + k), k) / scale;
  Rational last = detail::signed_term(k, pochhammer(Rational(n + 1), k) / scale);
  return {std::move(first), std::move(last)};
}

/// Exact sum of an odd-target row: 1/2 when n = 0 and 0 otherwise.
/// No closed form is claimed for even-target rows, which are rejected.
inline Rational weight_row_sum(const WalkWeights& w) {
  if (w.parity != Parity::odd_target)
    throw std::invalid_argument("weight_row_sum: only defined for odd-target rows");
  Rational sum = 0;
  for (const auto& x : w.weights) sum += x;
  return sum;
}

/// Plain sum of any row, with no claim attached. Used for reporting.
inline Rational row_total(const WalkWeights& w) {
  Rational sum = 0;
  for (const auto& x : w.weights) sum += x;
  return sum;
}

}  // namespace schoenberg
