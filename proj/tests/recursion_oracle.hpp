#pragma once

// Test-only oracle: iterates the step recursions symbolically, treating the
// starting coefficients b_{m,d0} as formal symbols. Each b_{n,d} is a map
// m -> coefficient of b_{m,d0}. Written straight from the recursions and
// independent of the library's walk code.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "schoenberg/exactnum.hpp"

namespace oracle {

using schoenberg::Rational;
using Combination = std::map<std::int64_t, Rational>;

class SymbolicRecursion {
public:
  explicit SymbolicRecursion(int start_dimension) : start_(start_dimension) {}

  /// b_{n,d} as a combination of b_{m,start}; d - start must be even and >= 0.
  const Combination& coefficient(std::int64_t n, int d) {
    auto key = std::make_pair(n, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Combination result;
    if (d == start_) {
      result[n] = Rational(1);
    } else {
      const int prev = d - 2;
      Rational c_same;
      Rational c_next;
      if (prev == 1) {
        // b_{0,3} = b_{0,1} - 1/2 b_{2,1};  b_{n,3} = 1/2 (n+1)(b_{n,1} - b_{n+2,1})
        c_same = n == 0 ? Rational(1) : Rational(n + 1) / 2;
        c_next = n == 0 ? Rational(1, 2) : Rational(n + 1) / 2;
      } else {
        const Rational dd(prev);
        const Rational nn(n);
        c_same = (nn + dd - 1) * (nn + dd) / (dd * (2 * nn + dd - 1));
        c_next = (nn + 1) * (nn + 2) / (dd * (2 * nn + dd + 3));
      }
      const Combination lower_same = coefficient(n, prev);
      const Combination lower_next = coefficient(n + 2, prev);
      for (const auto& [m, c] : lower_same) result[m] += c_same * c;
      for (const auto& [m, c] : lower_next) result[m] -= c_next * c;
      std::erase_if(result, [](const auto& kv) { return kv.second == 0; });
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

  /// Coefficients of b_{n,start}, b_{n+2,start}, ..., b_{n+2k,start} in b_{n,start+2k}.
  std::vector<Rational> row(std::int64_t n, int k) {
    const Combination& c = coefficient(n, start_ + 2 * k);
    std::vector<Rational> out;
    for (int i = 0; i <= k; ++i) {
      auto it = c.find(n + 2 * i);
      out.push_back(it == c.end() ? Rational(0) : it->second);
    }
    return out;
  }

  /// True when b_{n,start+2k} uses only b_{n+2i,start}, 0 <= i <= k.
  bool row_support_ok(std::int64_t n, int k) {
    for (const auto& [m, c] : coefficient(n, start_ + 2 * k))
      if (m < n || m > n + 2 * k || (m - n) % 2 != 0) return false;
    return true;
  }

private:
  int start_;
  std::map<std::pair<std::int64_t, int>, Combination> memo_;
};

}  // namespace oracle
