#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/goodsets.hpp"
#include "coprime/json.hpp"
#include "coprime/tables.hpp"

namespace coprime {

struct SubCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Outcome of checking one block family against residue a. Sub-checks run
/// in a fixed order: precondition, split, range, disjointness, block-size,
/// l-good (one per block), coverage. `failure` names the first one failing.
struct EntryVerdict {
  Int a = 0;
  std::optional<CongruenceCondition> condition;
  Int b = 0;
  std::vector<Block> blocks;
  std::vector<int> u_sizes;
  std::vector<Int> coverage;  // T_k ∩ [b, a]
  std::vector<SubCheck> checks;
  bool passed = false;
  std::string failure;
};

EntryVerdict verify_entry(const PrimeBasis& basis, Int a,
                          const std::optional<CongruenceCondition>& condition,
                          const std::vector<Block>& blocks);

inline EntryVerdict verify_entry(const PrimeBasis& basis, Int a, const CaseEntry& entry) {
  return verify_entry(basis, a, entry.condition, entry.blocks);
}

/// Which argument settles a residue.
enum class ResidueRule { base, lemma1, lemma2, lemma3_skip, table };

std::string to_string(ResidueRule rule);

struct ResidueRecord {
  Int a = 0;
  ResidueRule rule = ResidueRule::table;
  std::vector<EntryVerdict> entries;
  bool passed = false;
  std::string detail;
};

struct Conjecture2Certificate {
  int k = 0;
  /// Verdicts hold for every l >= l_min (split into congruence classes
  /// where an entry is conditioned).
  Int l_min = 1;
  std::vector<ResidueRecord> records;  // ascending a over the residue window
  std::vector<std::string> notes;
  bool passed = false;
};

/// Walks every residue of [-p_{k+1}+1, P_k - p_{k+1}] in order.
Conjecture2Certificate verify_conjecture2(const PrimeBasis& basis, const CaseTable& table,
                                          int threads = 1);

ordered_json to_json(const EntryVerdict& verdict, const PrimeBasis& basis);
ordered_json to_json(const ResidueRecord& record, const PrimeBasis& basis);
ordered_json to_json(const Conjecture2Certificate& cert);

/// Re-runs every entry of a serialized record from its embedded blocks and
/// returns whether the recomputed verdicts match the recorded ones.
bool reverify_record(const PrimeBasis& basis, const ordered_json& record);

}  // namespace coprime
