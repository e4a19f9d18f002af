#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/conj2.hpp"
#include "coprime/json.hpp"
#include "coprime/sets.hpp"

namespace coprime {

// ---------------------------------------------------------------------------
// Counting arguments over a partition of [1,n] into pairwise coprime classes.

struct SchemeClass {
  enum class Kind { primes_and_one, explicit_list };

  Kind kind = Kind::explicit_list;
  std::vector<Int> elements;  // explicit classes only
  std::string label;

  /// Members within [1, n], ascending.
  std::vector<Int> restricted(Int n) const;
};

/// Pairwise coprime classes plus the residual class F_k \ Y, where
/// Y = (union of the classes) ∩ F_k.
class PartitionScheme {
 public:
  PartitionScheme(int k, std::vector<SchemeClass> classes);

  int k() const { return k_; }
  const std::vector<SchemeClass>& classes() const { return classes_; }
  /// Y, ascending.
  const std::vector<Int>& excluded() const { return excluded_; }

 private:
  int k_;
  std::vector<SchemeClass> classes_;
  std::vector<Int> excluded_;
};

/// The k=3 classes {primes, 1}, {4,9,25,77}, {8,27,55,49} and the k=4
/// classes {primes, 1}, {121,49,25,9,4}, {143,133,115,51,32},
/// {187,91,125,27,8}, {169,77,85,81,16}.
PartitionScheme builtin_scheme(int k);

/// The printed Y for k=4 that builtin_scheme(4) must reproduce.
std::vector<Int> reference_excluded_k4();

struct ClassContribution {
  std::string label;
  std::vector<Int> members;  // class ∩ [1,n]
  Int bound = 0;             // min(|class ∩ [1,n]|, k)
  bool pairwise_coprime = true;
};

struct CountingReport {
  int k = 0;
  Int n = 0;
  std::vector<Int> uncovered;  // integers of [1,n] in no class and not in F_k
  std::vector<ClassContribution> ledger;
  Int sum_bound = 0;
  Int excluded_in_range = 0;  // |Y ∩ [1,n]|
  Int slack = 0;              // excluded_in_range - sum_bound
  bool passed = false;
  std::string failure;
};

/// Pass means every admissible A ⊆ [1,n] has |A| <= |E(n,k)|.
CountingReport verify_counting(const PartitionScheme& scheme, Int n);

// ---------------------------------------------------------------------------
// The k=4 uniqueness chain for 49 <= n <= 199.

struct ChainStep {
  std::string name;
  bool passed = false;
  std::string detail;
  ordered_json ledger;
};

struct UniquenessChainReport {
  Int n = 0;
  std::vector<ChainStep> steps;
  bool passed = false;
};

/// Throws std::out_of_range outside [49, 199].
UniquenessChainReport verify_uniqueness_chain_k4(Int n);
/// Same steps without the range guard, for probing the boundary.
UniquenessChainReport evaluate_uniqueness_chain_k4(Int n);

// ---------------------------------------------------------------------------
// A(p_k^2 - 1, k) = (E(p_k^2 - 1, k) \ {p_k}) ∪ {p_{k+1}}.

struct RemarkReport {
  int k = 0;
  Int n = 0;
  CandidateSet set{Window{0, 0}};
  Int E_size = 0;
  bool admissible = false;
  std::optional<CliqueWitness> witness;
  bool size_matches = false;
  bool differs_from_E = false;
  bool passed = false;
};

/// Builds and self-checks the construction; throws ConsistencyError if a
/// check fails.
RemarkReport remark_counterexample(const PrimeBasis& basis);

// ---------------------------------------------------------------------------
// Assembly of base-range evidence and a Conjecture 2 certificate.

enum class EvidenceGrade { value, uniqueness };

std::string to_string(EvidenceGrade grade);

struct BaseEvidence {
  Int n = 0;
  EvidenceGrade grade = EvidenceGrade::value;
  std::string source;
  bool passed = false;
};

struct TheoremComponent {
  std::string name;
  bool passed = false;
  std::optional<std::pair<Int, Int>> range;
  std::string detail;
};

struct TheoremCertificate {
  std::string claim;
  int k = 0;
  Int n0 = 0;
  Int l0 = 0;
  Int base_top = 0;  // P_k * l0 - p_{k+1}
  std::vector<TheoremComponent> components;
  bool passed = false;
  std::string failure;
};

/// Asserts: for all n >= n0, an admissible A ⊆ [1,n] with |A| >= |E(n,k)|
/// equals E(n,k). Needs uniqueness-grade evidence for every n in
/// [n0, P_k*l0 - p_{k+1}], a nonempty such range, and a passing
/// certificate valid from l0 on.
TheoremCertificate assemble_theorem(std::string claim, int k, Int n0, Int l0,
                                    const Conjecture2Certificate& conj2,
                                    const std::vector<BaseEvidence>& base,
                                    std::vector<TheoremComponent> extra = {});

ordered_json to_json(const CountingReport& report);
ordered_json to_json(const UniquenessChainReport& report);
ordered_json to_json(const RemarkReport& report);
ordered_json to_json(const TheoremCertificate& cert);

}  // namespace coprime
