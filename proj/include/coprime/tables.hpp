#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coprime/arith.hpp"
#include "coprime/goodsets.hpp"
#include "coprime/json.hpp"

namespace coprime {

/// Merged U ∪ S block. The split into U (base-prime multiples) and S
/// (residues coprime to P_k) is recomputed, never stored.
struct Block {
  std::vector<Int> elements;

  friend bool operator==(const Block&, const Block&) = default;
};

/// One block family, valid for each residue in a_values (under the
/// condition on l, when present).
struct CaseEntry {
  std::vector<Int> a_values;
  std::optional<CongruenceCondition> condition;
  std::vector<Block> blocks;
  std::string provenance;

  friend bool operator==(const CaseEntry&, const CaseEntry&) = default;
};

struct CaseTable {
  int k = 0;
  std::vector<CaseEntry> entries;

  /// Entries whose a_values contain a, in table order.
  std::vector<const CaseEntry*> entries_for(Int a) const;

  friend bool operator==(const CaseTable&, const CaseTable&) = default;
};

class TableError : public std::runtime_error {
 public:
  enum class Kind { parse, invariant, unsupported };

  TableError(Kind kind, std::string location, const std::string& message);

  Kind kind() const { return kind_; }
  const std::string& location() const { return location_; }

 private:
  Kind kind_;
  std::string location_;
};

/// The embedded k=3 and k=4 tables.
CaseTable builtin_table(int k);

CaseTable load_table(const std::filesystem::path& path);
CaseTable parse_table(std::string_view text);

/// Structural invariants only: a_values in T_k, well-formed blocks,
/// complementary condition pairs, coverage of T_k above p_{k+2}.
void validate_table(const CaseTable& table);

ordered_json table_to_json(const CaseTable& table);
std::string serialize_table(const CaseTable& table);

}  // namespace coprime
