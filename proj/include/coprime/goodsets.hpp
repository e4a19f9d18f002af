#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coprime/arith.hpp"

namespace coprime {

/// "q | P_k*l + anchor" (divides) or "q ∤ P_k*l + anchor", a constraint on l.
/// The modulus must be a prime not dividing P_k, otherwise the condition
/// does not depend on l.
class CongruenceCondition {
 public:
  CongruenceCondition(const PrimeBasis& basis, Int prime, bool divides, Int anchor);

  Int prime() const { return prime_; }
  bool divides() const { return divides_; }
  Int anchor() const { return anchor_; }

  /// Whether the condition holds for a concrete l.
  bool holds(const PrimeBasis& basis, Int l) const;
  /// Same prime, opposite sense, congruent anchors.
  bool complements(const CongruenceCondition& other) const;

  std::string describe(const PrimeBasis& basis) const;

  friend bool operator==(const CongruenceCondition&, const CongruenceCondition&) = default;

 private:
  Int prime_;
  bool divides_;
  Int anchor_;
};

enum class GoodStatus { good, l_good_under_condition, not_l_good };

std::string to_string(GoodStatus status);

struct FailingPair {
  Int lo;
  Int hi;
  Int prime;

  friend bool operator==(const FailingPair&, const FailingPair&) = default;
};

struct GoodSetVerdict {
  GoodStatus status = GoodStatus::good;
  std::optional<FailingPair> failing_pair;

  bool passed() const { return status != GoodStatus::not_l_good; }
};

/// Good set: no pair shares a base prime, and every pairwise difference is
/// p_k-smooth. The first failing pair (ascending order) is reported.
GoodSetVerdict is_good_set(const PrimeBasis& basis, std::span<const Int> elements);

/// Symbolic l-goodness: {P_k*l + a : a in S} pairwise coprime for every l
/// satisfying `cond` (every l when absent). Decided prime by prime over the
/// pairwise differences.
GoodSetVerdict is_l_good_under(const PrimeBasis& basis, std::span<const Int> elements,
                               const std::optional<CongruenceCondition>& cond);

/// A block family for one residue a, merged U ∪ S blocks.
struct GeneratedEntry {
  Int a;
  std::vector<std::vector<Int>> blocks;
};

/// Residues -1 and 1: U = {-p_k,...,-p_1}, S = {-1} or {-1, 1}.
/// Throws ConsistencyError if a generated block is not good.
std::vector<GeneratedEntry> lemma1_entries(const PrimeBasis& basis);

/// Residues p_{k+1} and p_{k+2}, using p_1^2 in place of p_1 when
/// p_{k+2} - 2 is prime. Throws ConsistencyError on a non-good block.
std::vector<GeneratedEntry> lemma2_entries(const PrimeBasis& basis);

/// An arithmetic self-check failed; signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coprime
