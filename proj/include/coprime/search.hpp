#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/sets.hpp"

namespace coprime {

struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000'000;
  std::int64_t max_ms = 300'000;
};

struct SearchOptions {
  SearchBudget budget;
  bool enumerate = false;
  std::size_t cap = 10'000;
};

enum class SearchStatus { complete, budget_exceeded };

/// Result of an exact f(n,k) computation.
///
/// When `status` is budget_exceeded, `f_value` is the best admissible size
/// found and `upper_bound` the bound proven so far; the two coincide only
/// for a complete run.
struct SearchOutcome {
  Int n = 0;
  int k = 0;
  SearchStatus status = SearchStatus::complete;
  Int f_value = 0;
  Int upper_bound = 0;
  Int E_size = 0;
  /// Canonical (lexicographic) order. When truncated, holds the first `cap`
  /// sets reached by the search.
  std::vector<CandidateSet> maximum_sets;
  bool enumerated = false;
  bool truncated = false;
  bool matches_E = false;
  /// nullopt when enumeration was off, truncated at cap 1, or incomplete.
  std::optional<bool> E_is_unique_maximum;

  // diagnostics
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
};

/// Exact f(n,k) by branch and bound over prime-support classes.
SearchOutcome exact_f(Int n, int k, const SearchOptions& options = {});

enum class RangeMode { value_only, uniqueness };

std::string to_string(RangeMode mode);
std::string to_string(SearchStatus status);

struct RangeReport {
  int k = 0;
  Int n_lo = 0;
  Int n_hi = 0;
  RangeMode mode = RangeMode::value_only;
  std::vector<SearchOutcome> per_n;  // ascending n

  bool budget_exceeded() const;
  /// f(n,k) == |E(n,k)| for every n.
  bool all_match_E() const;
  /// E(n,k) is the unique maximum for every n (uniqueness mode only).
  bool all_unique() const;
};

/// Runs exact_f for every n in [n_lo, n_hi]. Uniqueness mode enumerates
/// with cap 2, enough to decide whether E is the only maximum set.
RangeReport check_range(int k, Int n_lo, Int n_hi, RangeMode mode,
                        const SearchBudget& budget = {}, int threads = 1);

}  // namespace coprime
