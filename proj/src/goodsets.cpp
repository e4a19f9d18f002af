#include "coprime/goodsets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace coprime {

namespace {

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<Int> sorted_distinct(std::span<const Int> elements) {
  std::vector<Int> v(elements.begin(), elements.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument("good-set elements must be distinct");
  }
  return v;
}

// Returns the smallest prime of the difference that breaks coprimality of
// P_k*l + lo and P_k*l + hi for some admissible l, if any.
std::optional<Int> offending_prime(const PrimeBasis& basis, Int lo, Int hi,
                                   const std::optional<CongruenceCondition>& cond) {
  for (Int q : prime_support(hi - lo)) {
    if (basis.primorial() % q == 0) {
      // P_k*l + a ≡ a (mod q); lo ≡ hi (mod q) since q divides the difference
      if (lo % q == 0) return q;
    } else if (cond && cond->prime() == q) {
      // P_k*l + lo ≡ (P_k*l + anchor) + (lo - anchor) (mod q)
      const Int shift = mod(lo - cond->anchor(), q);
      const bool ok = cond->divides() ? shift != 0 : shift == 0;
      if (!ok) return q;
    } else {
      // P_k*l + lo runs through every residue mod q as l varies
      return q;
    }
  }
  return std::nullopt;
}

GoodSetVerdict check_pairs(const PrimeBasis& basis, std::span<const Int> elements,
                           const std::optional<CongruenceCondition>& cond, GoodStatus pass) {
  auto v = sorted_distinct(elements);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (auto q = offending_prime(basis, v[i], v[j], cond)) {
        return {GoodStatus::not_l_good, FailingPair{v[i], v[j], *q}};
      }
    }
  }
  return {pass, std::nullopt};
}

void require_good(const PrimeBasis& basis, const std::vector<Int>& block, Int a) {
  auto verdict = is_good_set(basis, block);
  if (!verdict.passed()) {
    const auto& f = *verdict.failing_pair;
    throw ConsistencyError("generated block for a=" + std::to_string(a) + " is not good: pair (" +
                           std::to_string(f.lo) + ", " + std::to_string(f.hi) + "), prime " +
                           std::to_string(f.prime));
  }
}

}  // namespace

CongruenceCondition::CongruenceCondition(const PrimeBasis& basis, Int prime, bool divides,
                                         Int anchor)
    : prime_(prime), divides_(divides), anchor_(anchor) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("condition modulus " + std::to_string(prime) + " is not prime");
  }
  if (basis.primorial() % prime == 0) {
    throw std::invalid_argument("condition modulus " + std::to_string(prime) + " divides P_" +
                                std::to_string(basis.k()) + "; the condition is constant in l");
  }
}

bool CongruenceCondition::holds(const PrimeBasis& basis, Int l) const {
  const Int r = mod(mod(basis.primorial(), prime_) * mod(l, prime_) + mod(anchor_, prime_), prime_);
  return (r == 0) == divides_;
}

bool CongruenceCondition::complements(const CongruenceCondition& other) const {
  return prime_ == other.prime_ && divides_ != other.divides_ &&
         mod(anchor_ - other.anchor_, prime_) == 0;
}

std::string CongruenceCondition::describe(const PrimeBasis& basis) const {
  return std::to_string(prime_) + (divides_ ? " | " : " !| ") + std::to_string(basis.primorial()) +
         "l" + (anchor_ < 0 ? " - " : " + ") + std::to_string(anchor_ < 0 ? -anchor_ : anchor_);
}

std::string to_string(GoodStatus status) {
  switch (status) {
    case GoodStatus::good:
      return "good";
    case GoodStatus::l_good_under_condition:
      return "l-good";
    case GoodStatus::not_l_good:
      return "not-l-good";
  }
  return "?";
}

GoodSetVerdict is_good_set(const PrimeBasis& basis, std::span<const Int> elements) {
  if (elements.empty()) throw std::invalid_argument("good-set check needs at least one element");
  return check_pairs(basis, elements, std::nullopt, GoodStatus::good);
}

GoodSetVerdict is_l_good_under(const PrimeBasis& basis, std::span<const Int> elements,
                               const std::optional<CongruenceCondition>& cond) {
  if (elements.empty()) throw std::invalid_argument("l-good check needs at least one element");
  if (cond) {
    // revalidates conditions built for another basis
    CongruenceCondition(basis, cond->prime(), cond->divides(), cond->anchor());
  }
  return check_pairs(basis, elements, cond, GoodStatus::l_good_under_condition);
}

std::vector<GeneratedEntry> lemma1_entries(const PrimeBasis& basis) {
  std::vector<Int> negated;
  for (int i = basis.k(); i >= 1; --i) negated.push_back(-basis.p(i));
  std::vector<GeneratedEntry> out;
  for (Int a : {Int{-1}, Int{1}}) {
    std::vector<Int> block = negated;
    block.push_back(-1);
    if (a == 1) block.push_back(1);
    require_good(basis, block, a);
    out.push_back({a, {block}});
  }
  return out;
}

std::vector<GeneratedEntry> lemma2_entries(const PrimeBasis& basis) {
  const int k = basis.k();
  std::vector<Int> base = basis.base_primes();
  std::vector<GeneratedEntry> out;

  std::vector<Int> first = base;
  first.push_back(basis.p(k + 1));
  require_good(basis, first, basis.p(k + 1));
  out.push_back({basis.p(k + 1), {first}});

  std::vector<Int> second = base;
  if (is_prime(basis.p(k + 2) - 2)) second.front() = basis.p(1) * basis.p(1);
  second.push_back(basis.p(k + 1));
  second.push_back(basis.p(k + 2));
  require_good(basis, second, basis.p(k + 2));
  out.push_back({basis.p(k + 2), {second}});
  return out;
}

}  // namespace coprime
