#include "coprime/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coprime {

Window::Window(Int lo_, Int hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) {
    throw std::invalid_argument("window lower bound " + std::to_string(lo) +
                                " exceeds upper bound " + std::to_string(hi));
  }
}

std::vector<Int> sieve_primes(Int limit) {
  std::vector<Int> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (Int i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    if (i > limit / i) continue;
    for (Int j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return primes;
}

std::vector<Int> first_primes(std::size_t count) {
  if (count == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6
  double n = static_cast<double>(std::max<std::size_t>(count, 6));
  auto limit = static_cast<Int>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  auto primes = sieve_primes(limit);
  while (primes.size() < count) {
    limit *= 2;
    primes = sieve_primes(limit);
  }
  primes.resize(count);
  return primes;
}

PrimeBasis::PrimeBasis(int k) : k_(k), primorial_(1) {
  if (k < 1) throw std::invalid_argument("basis requires k >= 1, got " + std::to_string(k));
  if (k > kMaxK) {
    throw std::out_of_range("primorial of the first " + std::to_string(k) +
                            " primes does not fit in 64 bits (k <= " +
                            std::to_string(kMaxK) + ")");
  }
  primes_ = first_primes(static_cast<std::size_t>(k) + 2);
  for (int i = 0; i < k; ++i) primorial_ *= primes_[static_cast<std::size_t>(i)];
  if (!(p(k + 2) < 2 * p(k + 1))) {
    throw std::logic_error("Bertrand check p_{k+2} < 2 p_{k+1} failed");
  }
}

std::vector<Int> PrimeBasis::base_primes() const {
  return {primes_.begin(), primes_.begin() + k_};
}

PrimeBasis make_basis(int k) { return PrimeBasis(k); }

bool is_prime(Int m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (Int d = 3; d <= m / d; d += 2) {
    if (m % d == 0) return false;
  }
  return true;
}

bool in_F_k(const PrimeBasis& basis, Int m) {
  for (int i = 1; i <= basis.k(); ++i) {
    if (m % basis.p(i) == 0) return true;
  }
  return false;
}

Int count_E(const PrimeBasis& basis, Int n) {
  Int count = 0;
  for (Int m = 1; m <= n; ++m) count += in_F_k(basis, m) ? 1 : 0;
  return count;
}

std::vector<Int> list_E(const PrimeBasis& basis, Int n) {
  std::vector<Int> out;
  for (Int m = 1; m <= n; ++m) {
    if (in_F_k(basis, m)) out.push_back(m);
  }
  return out;
}

Window residue_window(const PrimeBasis& basis) {
  const Int next = basis.p(basis.k() + 1);
  return {-next + 1, basis.primorial() - next};
}

std::vector<Int> compute_T_k(const PrimeBasis& basis) {
  const Window w = residue_window(basis);
  std::vector<Int> out;
  for (Int a = w.lo; a <= w.hi; ++a) {
    if (std::gcd(a, basis.primorial()) == 1) out.push_back(a);
  }
  return out;
}

std::vector<Int> prime_support(Int m) {
  std::vector<Int> out;
  if (m < 0) m = -m;
  if (m <= 1) return out;
  for (Int d = 2; d <= m / d; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::optional<Int> largest_prime_factor(Int m) {
  auto support = prime_support(m);
  if (support.empty()) return std::nullopt;
  return support.back();
}

Int radical(Int m) {
  if (m == 0) return 0;
  Int r = 1;
  for (Int q : prime_support(m)) r *= q;
  return r;
}

}  // namespace coprime
