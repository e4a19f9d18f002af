#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// the library except for the Int alias.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "coprime/arith.hpp"

namespace oracle {

using coprime::Int;

inline bool prime_by_trial(Int m) {
  if (m < 2) return false;
  for (Int d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline std::vector<Int> primes_up_to(Int limit) {
  std::vector<Int> out;
  for (Int m = 2; m <= limit; ++m) {
    if (prime_by_trial(m)) out.push_back(m);
  }
  return out;
}

inline std::vector<Int> first_n_primes(std::size_t count) {
  std::vector<Int> out;
  for (Int m = 2; out.size() < count; ++m) {
    if (prime_by_trial(m)) out.push_back(m);
  }
  return out;
}

inline Int primorial(int k) {
  Int p = 1;
  for (Int q : first_n_primes(static_cast<std::size_t>(k))) p *= q;
  return p;
}

inline bool in_F(int k, Int m) { return std::gcd(m, primorial(k)) != 1; }

inline Int count_E(int k, Int n) {
  Int c = 0;
  for (Int m = 1; m <= n; ++m) c += in_F(k, m) ? 1 : 0;
  return c;
}

inline std::vector<Int> E(int k, Int n) {
  std::vector<Int> out;
  for (Int m = 1; m <= n; ++m) {
    if (in_F(k, m)) out.push_back(m);
  }
  return out;
}

inline bool pairwise_coprime(const std::vector<Int>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (std::gcd(v[i], v[j]) != 1) return false;
    }
  }
  return true;
}

namespace detail {
inline bool clique_dfs(const std::vector<Int>& s, std::size_t from, std::size_t size,
                       std::vector<Int>& cur) {
  if (cur.size() == size) return true;
  for (std::size_t i = from; i < s.size(); ++i) {
    bool ok = true;
    for (Int c : cur) ok = ok && std::gcd(c, s[i]) == 1;
    if (!ok) continue;
    cur.push_back(s[i]);
    if (clique_dfs(s, i + 1, size, cur)) return true;
    cur.pop_back();
  }
  return false;
}
}  // namespace detail

/// Lexicographically least pairwise coprime subset of the given size.
inline std::optional<std::vector<Int>> least_clique(std::vector<Int> s, std::size_t size) {
  std::sort(s.begin(), s.end());
  std::vector<Int> cur;
  if (detail::clique_dfs(s, 0, size, cur)) return cur;
  return std::nullopt;
}

/// Clique numbers of the coprimality graph on every subset of [1, N], indexed
/// by bitmask (bit i-1 for integer i).
class SubsetTable {
 public:
  explicit SubsetTable(int N) : N_(N), omega_(std::size_t{1} << N) {
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(N));
    for (int i = 1; i <= N; ++i) {
      for (int j = 1; j <= N; ++j) {
        if (i != j && std::gcd(i, j) == 1) nbr[i - 1] |= 1u << (j - 1);
      }
    }
    for (std::uint32_t s = 1; s < omega_.size(); ++s) {
      const int v = std::countr_zero(s);
      const std::uint32_t rest = s & (s - 1);
      omega_[s] = std::max<std::uint8_t>(omega_[rest], 1 + omega_[rest & nbr[v]]);
    }
  }

  struct Answer {
    int f = 0;
    std::vector<std::vector<Int>> maximum_sets;  // lexicographic
  };

  /// f(n,k) and every maximum admissible subset of [1, n].
  Answer solve(int n, int k) const {
    Answer a;
    std::vector<std::uint32_t> best;
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t s = 0; s < end; ++s) {
      if (omega_[s] > k) continue;
      const int c = std::popcount(s);
      if (c > a.f) {
        a.f = c;
        best.clear();
      }
      if (c == a.f) best.push_back(s);
    }
    for (auto s : best) {
      std::vector<Int> m;
      for (int i = 1; i <= n; ++i) {
        if (s >> (i - 1) & 1) m.push_back(i);
      }
      a.maximum_sets.push_back(std::move(m));
    }
    std::sort(a.maximum_sets.begin(), a.maximum_sets.end());
    return a;
  }

  int N() const { return N_; }

 private:
  int N_;
  std::vector<std::uint8_t> omega_;
};

}  // namespace oracle
