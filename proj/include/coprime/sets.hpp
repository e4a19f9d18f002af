#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coprime/arith.hpp"

namespace coprime {

/// A finite set of integers over a window, stored as one bit per integer.
/// Values are immutable; `with`/`without` return modified copies.
class CandidateSet {
 public:
  explicit CandidateSet(Window window);
  CandidateSet(Window window, std::span<const Int> members);

  /// The window is [min, max] of the members ([0, 0] when empty).
  static CandidateSet of(std::span<const Int> members);
  static CandidateSet of(std::initializer_list<Int> members);
  /// Every integer of the window.
  static CandidateSet full(Window window);

  const Window& window() const { return window_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(Int m) const;
  std::vector<Int> members() const;

  CandidateSet with(Int m) const;
  CandidateSet without(Int m) const;

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  Window window_;
  std::vector<bool> mask_;
  std::size_t size_ = 0;
};

/// E(n,k) = F_k ∩ [1,n] as a set over the window [1,n].
CandidateSet E_set(const PrimeBasis& basis, Int n);

struct CliqueWitness {
  std::vector<Int> elements;  // ascending, pairwise coprime

  friend bool operator==(const CliqueWitness&, const CliqueWitness&) = default;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  std::optional<CliqueWitness> witness;
};

bool is_pairwise_coprime(std::span<const Int> elements);

/// Lexicographically least pairwise coprime subset of `set` of the given
/// size, or nullopt if none exists.
std::optional<CliqueWitness> find_coprime_clique(const CandidateSet& set, int size);

/// Admissible iff `set` holds no k+1 pairwise coprime members.
AdmissibilityVerdict is_admissible(const CandidateSet& set, int k);

}  // namespace coprime
