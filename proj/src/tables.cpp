#include "coprime/tables.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "embedded_tables.hpp"

namespace coprime {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw TableError(TableError::Kind::parse, where, what);
}

[[noreturn]] void invariant_fail(const std::string& where, const std::string& what) {
  throw TableError(TableError::Kind::invariant, where, what);
}

const ordered_json& field(const ordered_json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) parse_fail(where, std::string("missing field \"") + name + "\"");
  return *it;
}

Int integer(const ordered_json& v, const std::string& where) {
  // floats such as 13.0 or 1e1 are rejected
  if (!v.is_number_integer()) parse_fail(where, "expected an integer literal");
  return v.get<Int>();
}

std::vector<Int> integer_list(const ordered_json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of integers");
  std::vector<Int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::optional<CongruenceCondition> parse_condition(const PrimeBasis& basis, const ordered_json& v,
                                                   const std::string& where) {
  if (v.is_null()) return std::nullopt;
  const ordered_json* obj = &v;
  if (v.is_array()) {
    // a list is accepted for forward compatibility, but conjunctions are not
    if (v.empty()) return std::nullopt;
    if (v.size() > 1) {
      invariant_fail(where, "conjunctions of congruence conditions are not supported");
    }
    obj = &v[0];
  }
  Int prime = integer(field(*obj, "prime", where), where + ".prime");
  const auto& div = field(*obj, "divides", where);
  if (!div.is_boolean()) parse_fail(where + ".divides", "expected a boolean");
  Int anchor = integer(field(*obj, "anchor", where), where + ".anchor");
  try {
    return CongruenceCondition(basis, prime, div.get<bool>(), anchor);
  } catch (const std::invalid_argument& e) {
    invariant_fail(where, e.what());
  }
}

}  // namespace

TableError::TableError(Kind kind, std::string location, const std::string& message)
    : std::runtime_error((location.empty() ? "" : location + ": ") + message),
      kind_(kind),
      location_(std::move(location)) {}

std::vector<const CaseEntry*> CaseTable::entries_for(Int a) const {
  std::vector<const CaseEntry*> out;
  for (const auto& e : entries) {
    if (std::binary_search(e.a_values.begin(), e.a_values.end(), a)) out.push_back(&e);
  }
  return out;
}

CaseTable parse_table(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    parse_fail("", e.what());
  }
  CaseTable table;
  const Int k = integer(field(doc, "k", "$"), "$.k");
  if (k < 1 || k > PrimeBasis::kMaxK) invariant_fail("$.k", "k out of supported range");
  table.k = static_cast<int>(k);
  const PrimeBasis basis(table.k);

  const auto& entries = field(doc, "entries", "$");
  if (!entries.is_array()) parse_fail("$.entries", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "$.entries[" + std::to_string(i) + "]";
    const auto& e = entries[i];
    CaseEntry entry;
    entry.a_values = integer_list(field(e, "a_values", where), where + ".a_values");
    entry.condition = parse_condition(basis, field(e, "condition", where), where + ".condition");
    const auto& blocks = field(e, "blocks", where);
    if (!blocks.is_array()) parse_fail(where + ".blocks", "expected an array of blocks");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      entry.blocks.push_back(
          {integer_list(blocks[b], where + ".blocks[" + std::to_string(b) + "]")});
    }
    const auto& prov = field(e, "provenance", where);
    if (!prov.is_string()) parse_fail(where + ".provenance", "expected a string");
    entry.provenance = prov.get<std::string>();
    table.entries.push_back(std::move(entry));
  }
  validate_table(table);
  return table;
}

void validate_table(const CaseTable& table) {
  if (table.k < 1 || table.k > PrimeBasis::kMaxK) {
    invariant_fail("$.k", "k out of supported range");
  }
  const PrimeBasis basis(table.k);
  const auto t_k = compute_T_k(basis);
  const std::set<Int> residues(t_k.begin(), t_k.end());

  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const std::string where = "$.entries[" + std::to_string(i) + "]";
    const auto& e = table.entries[i];
    if (e.a_values.empty()) invariant_fail(where + ".a_values", "must be nonempty");
    for (std::size_t j = 0; j < e.a_values.size(); ++j) {
      const Int a = e.a_values[j];
      const std::string at = where + ".a_values[" + std::to_string(j) + "]";
      if (j > 0 && a <= e.a_values[j - 1]) invariant_fail(at, "a_values must be strictly ascending");
      if (!residues.count(a)) {
        invariant_fail(at, "a_value " + std::to_string(a) + " is not in T_" +
                               std::to_string(table.k));
      }
    }
    if (e.blocks.empty()) invariant_fail(where + ".blocks", "must be nonempty");
    for (std::size_t b = 0; b < e.blocks.size(); ++b) {
      const std::string at = where + ".blocks[" + std::to_string(b) + "]";
      auto sorted = e.blocks[b].elements;
      if (sorted.empty()) invariant_fail(at, "block must be nonempty");
      std::sort(sorted.begin(), sorted.end());
      if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        invariant_fail(at, "duplicate element " + std::to_string(*dup));
      }
    }
  }

  // Per residue: one unconditioned entry, or a complementary pair.
  std::map<Int, std::vector<std::size_t>> by_a;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    for (Int a : table.entries[i].a_values) by_a[a].push_back(i);
  }
  for (const auto& [a, idx] : by_a) {
    const std::string where = "a=" + std::to_string(a);
    std::size_t conditioned = 0;
    for (auto i : idx) conditioned += table.entries[i].condition ? 1 : 0;
    if (conditioned == 0) {
      if (idx.size() > 1) invariant_fail(where, "more than one unconditioned entry");
      continue;
    }
    if (idx.size() != 2 || conditioned != 2 ||
        !table.entries[idx[0]].condition->complements(*table.entries[idx[1]].condition)) {
      invariant_fail(where, "conditions are not mutually exclusive and jointly exhaustive");
    }
  }

  const Int floor = basis.p(table.k + 2);
  for (Int a : t_k) {
    if (a > floor && !by_a.count(a)) {
      invariant_fail("$.entries", "residue " + std::to_string(a) + " of T_" +
                                      std::to_string(table.k) + " has no entry");
    }
  }
}

CaseTable builtin_table(int k) {
  switch (k) {
    case 3:
      return parse_table(detail::kEmbeddedTableK3);
    case 4:
      return parse_table(detail::kEmbeddedTableK4);
    default:
      throw TableError(TableError::Kind::unsupported, "",
                       "no builtin case table for k=" + std::to_string(k));
  }
}

CaseTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TableError(TableError::Kind::parse, path.string(), "cannot open table file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

ordered_json table_to_json(const CaseTable& table) {
  ordered_json doc;
  doc["k"] = table.k;
  doc["entries"] = ordered_json::array();
  for (const auto& e : table.entries) {
    ordered_json entry;
    entry["a_values"] = e.a_values;
    if (e.condition) {
      entry["condition"] = {{"prime", e.condition->prime()},
                            {"divides", e.condition->divides()},
                            {"anchor", e.condition->anchor()}};
    } else {
      entry["condition"] = nullptr;
    }
    entry["blocks"] = ordered_json::array();
    for (const auto& b : e.blocks) entry["blocks"].push_back(b.elements);
    entry["provenance"] = e.provenance;
    doc["entries"].push_back(std::move(entry));
  }
  return doc;
}

std::string serialize_table(const CaseTable& table) { return dump_json(table_to_json(table)); }

}  // namespace coprime
