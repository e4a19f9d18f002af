#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace coprime {

using Int = std::int64_t;

/// Inclusive integer interval [lo, hi]. Bounds may be negative.
struct Window {
  Int lo = 0;
  Int hi = 0;

  Window() = default;
  Window(Int lo_, Int hi_);

  Int size() const { return hi - lo + 1; }
  bool contains(Int m) const { return m >= lo && m <= hi; }

  friend bool operator==(const Window&, const Window&) = default;
};

/// The first k+2 primes and the primorial of the first k of them.
///
/// Every derived set in the library (F_k, E(n,k), T_k) is anchored on a
/// basis. The primorial is kept exact in 64 bits, which caps k at 15.
class PrimeBasis {
 public:
  static constexpr int kMaxK = 15;

  explicit PrimeBasis(int k);

  int k() const { return k_; }
  const std::vector<Int>& primes() const { return primes_; }
  /// 1-based, p(1) == 2.
  Int p(int i) const { return primes_.at(static_cast<std::size_t>(i - 1)); }
  Int primorial() const { return primorial_; }

  /// The k base primes p_1..p_k.
  std::vector<Int> base_primes() const;

  friend bool operator==(const PrimeBasis&, const PrimeBasis&) = default;

 private:
  int k_;
  std::vector<Int> primes_;
  Int primorial_;
};

/// All primes <= limit, ascending. Empty for limit < 2.
std::vector<Int> sieve_primes(Int limit);

/// The first `count` primes.
std::vector<Int> first_primes(std::size_t count);

PrimeBasis make_basis(int k);

bool is_prime(Int m);

/// True iff one of p_1..p_k divides m. Zero is in F_k.
bool in_F_k(const PrimeBasis& basis, Int m);

/// |E(n,k)| = #{1 <= m <= n : m in F_k}.
Int count_E(const PrimeBasis& basis, Int n);

/// Members of E(n,k), ascending.
std::vector<Int> list_E(const PrimeBasis& basis, Int n);

/// Residues in [-p_{k+1}+1, P_k - p_{k+1}] coprime to P_k, ascending.
std::vector<Int> compute_T_k(const PrimeBasis& basis);

/// The window [-p_{k+1}+1, P_k - p_{k+1}] that T_k is drawn from.
Window residue_window(const PrimeBasis& basis);

/// Largest prime dividing |m|; nullopt for m in {-1, 0, 1}.
std::optional<Int> largest_prime_factor(Int m);

/// Distinct primes dividing |m|, ascending. Empty for m in {-1, 0, 1}.
std::vector<Int> prime_support(Int m);

/// Product of the distinct primes dividing |m|; 1 for |m| == 1, 0 for 0.
Int radical(Int m);

}  // namespace coprime
