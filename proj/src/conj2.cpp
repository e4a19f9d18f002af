#include "coprime/conj2.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace coprime {

namespace {

std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

void add_check(EntryVerdict& v, std::string name, bool passed, std::string detail = {}) {
  v.checks.push_back({std::move(name), passed, std::move(detail)});
}

}  // namespace

EntryVerdict verify_entry(const PrimeBasis& basis, Int a,
                          const std::optional<CongruenceCondition>& condition,
                          const std::vector<Block>& blocks) {
  EntryVerdict v;
  v.a = a;
  v.condition = condition;
  v.blocks = blocks;
  const int k = basis.k();
  const Window window = residue_window(basis);
  const auto t_k = compute_T_k(basis);
  const std::set<Int> residues(t_k.begin(), t_k.end());

  // precondition
  {
    std::string detail;
    if (!residues.count(a)) {
      detail = "a=" + std::to_string(a) + " is not in T_" + std::to_string(k);
    } else if (blocks.empty()) {
      detail = "no blocks";
    } else if (condition) {
      try {
        CongruenceCondition(basis, condition->prime(), condition->divides(), condition->anchor());
      } catch (const std::invalid_argument& e) {
        detail = e.what();
      }
    }
    for (std::size_t i = 0; detail.empty() && i < blocks.size(); ++i) {
      auto sorted = blocks[i].elements;
      std::sort(sorted.begin(), sorted.end());
      if (sorted.empty()) {
        detail = "block " + std::to_string(i + 1) + " is empty";
      } else if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        detail = "block " + std::to_string(i + 1) + " repeats an element";
      }
    }
    add_check(v, "precondition", detail.empty(), detail);
  }

  // (1) split into U (multiples of a base prime) and S (coprime to P_k)
  std::vector<std::vector<Int>> us(blocks.size());
  std::vector<std::vector<Int>> ss(blocks.size());
  {
    std::string detail;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (Int x : blocks[i].elements) {
        if (in_F_k(basis, x)) {
          us[i].push_back(x);
        } else {
          ss[i].push_back(x);
          if (detail.empty() && !residues.count(x)) {
            detail = "S-element " + std::to_string(x) + " of block " + std::to_string(i + 1) +
                     " is not in T_" + std::to_string(k);
          }
        }
      }
    }
    add_check(v, "split", detail.empty(), detail);
  }

  // (2) window floor b and range of the U-parts
  {
    Int b = a;
    for (const auto& blk : blocks) {
      for (Int x : blk.elements) b = std::min(b, x);
    }
    v.b = b;
    std::string detail;
    if (!(b < a)) {
      detail = "b=" + std::to_string(b) + " is not below a";
    } else if (b < window.lo) {
      detail = "b=" + std::to_string(b) + " is below the residue window";
    }
    for (std::size_t i = 0; detail.empty() && i < us.size(); ++i) {
      for (Int x : us[i]) {
        if (x < b || x > a) {
          detail = "U-element " + std::to_string(x) + " of block " + std::to_string(i + 1) +
                   " lies outside [" + std::to_string(b) + ", " + std::to_string(a) + "]";
          break;
        }
      }
    }
    add_check(v, "range", detail.empty(), detail);
  }

  // (3) U-parts pairwise disjoint
  {
    std::string detail;
    std::set<Int> seen;
    for (std::size_t i = 0; detail.empty() && i < us.size(); ++i) {
      for (Int x : us[i]) {
        if (!seen.insert(x).second) {
          detail = "U-element " + std::to_string(x) + " appears in more than one block";
          break;
        }
      }
    }
    add_check(v, "disjointness", detail.empty(), detail);
  }

  // (4) |U_i| in {k-1, k}
  {
    std::string detail;
    for (std::size_t i = 0; i < us.size(); ++i) {
      const int size = static_cast<int>(us[i].size());
      v.u_sizes.push_back(size);
      if (detail.empty() && size != k && size != k - 1) {
        detail = "block " + std::to_string(i + 1) + " has |U|=" + std::to_string(size);
      }
    }
    add_check(v, "block-size", detail.empty(), detail);
  }

  // (5) l-goodness of U_i ∪ S_i, with a adjoined when |U_i| = k-1
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string name = "l-good[" + std::to_string(i + 1) + "]";
    std::vector<Int> members = blocks[i].elements;
    if (members.empty()) {
      add_check(v, name, false, "empty block");
      continue;
    }
    if (static_cast<int>(us[i].size()) == k - 1) {
      if (std::find(ss[i].begin(), ss[i].end(), a) != ss[i].end()) {
        add_check(v, name, false, "|U|=k-1 but a lies in S");
        continue;
      }
      members.push_back(a);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      add_check(v, name, false, "repeated element");
      continue;
    }
    std::string detail;
    bool ok = false;
    try {
      auto verdict = is_l_good_under(basis, members, condition);
      ok = verdict.passed();
      if (!ok) {
        const auto& f = *verdict.failing_pair;
        detail = "pair (" + std::to_string(f.lo) + ", " + std::to_string(f.hi) + ") prime " +
                 std::to_string(f.prime);
      }
    } catch (const std::invalid_argument& e) {
      detail = e.what();
    }
    add_check(v, name, ok, detail);
  }

  // (6) coverage: T_k ∩ [b, a] ⊆ ∪ S_i
  {
    std::set<Int> covered;
    for (const auto& s : ss) covered.insert(s.begin(), s.end());
    std::vector<Int> missing;
    for (Int t : t_k) {
      if (t < v.b || t > a) continue;
      v.coverage.push_back(t);
      if (!covered.count(t)) missing.push_back(t);
    }
    add_check(v, "coverage", missing.empty(),
              missing.empty() ? "" : "uncovered residues " + join(missing));
  }

  v.passed = std::all_of(v.checks.begin(), v.checks.end(), [](const SubCheck& c) { return c.passed; });
  for (const auto& c : v.checks) {
    if (!c.passed) {
      v.failure = c.name + ": " + c.detail;
      break;
    }
  }
  return v;
}

std::string to_string(ResidueRule rule) {
  switch (rule) {
    case ResidueRule::base:
      return "base";
    case ResidueRule::lemma1:
      return "lemma1";
    case ResidueRule::lemma2:
      return "lemma2";
    case ResidueRule::lemma3_skip:
      return "lemma3-skip";
    case ResidueRule::table:
      return "table";
  }
  return "?";
}

namespace {

ResidueRecord generated_record(const PrimeBasis& basis, Int a, ResidueRule rule) {
  ResidueRecord rec;
  rec.a = a;
  rec.rule = rule;
  try {
    auto entries = rule == ResidueRule::lemma1 ? lemma1_entries(basis) : lemma2_entries(basis);
    for (const auto& e : entries) {
      if (e.a != a) continue;
      std::vector<Block> blocks;
      for (const auto& b : e.blocks) blocks.push_back({b});
      rec.entries.push_back(verify_entry(basis, a, std::nullopt, blocks));
    }
  } catch (const ConsistencyError& e) {
    rec.detail = e.what();
    return rec;
  }
  rec.passed = !rec.entries.empty() && rec.entries.front().passed;
  if (!rec.passed && !rec.entries.empty()) rec.detail = rec.entries.front().failure;
  return rec;
}

ResidueRecord table_record(const PrimeBasis& basis, const CaseTable& table, Int a) {
  ResidueRecord rec;
  rec.a = a;
  rec.rule = ResidueRule::table;
  auto entries = table.entries_for(a);
  if (entries.empty()) {
    rec.detail = "missing table entry for a=" + std::to_string(a);
    return rec;
  }
  for (const auto* e : entries) rec.entries.push_back(verify_entry(basis, a, *e));

  std::size_t conditioned = 0;
  for (const auto* e : entries) conditioned += e->condition ? 1 : 0;
  bool exhaustive = false;
  if (conditioned == 0) {
    exhaustive = entries.size() == 1;
  } else if (entries.size() == 2 && conditioned == 2) {
    exhaustive = entries[0]->condition->complements(*entries[1]->condition);
  }
  if (!exhaustive) {
    rec.detail = "conditions for a=" + std::to_string(a) + " not exhaustive";
    return rec;
  }
  for (const auto& v : rec.entries) {
    if (!v.passed) {
      rec.detail = v.failure;
      return rec;
    }
  }
  rec.passed = true;
  return rec;
}

}  // namespace

Conjecture2Certificate verify_conjecture2(const PrimeBasis& basis, const CaseTable& table,
                                          int threads) {
  if (table.k != basis.k()) {
    throw std::invalid_argument("table is for k=" + std::to_string(table.k) + ", basis has k=" +
                                std::to_string(basis.k()));
  }
  Conjecture2Certificate cert;
  cert.k = basis.k();
  const int k = basis.k();
  const Window window = residue_window(basis);
  const auto t_k = compute_T_k(basis);
  const std::set<Int> residues(t_k.begin(), t_k.end());
  const Int next1 = basis.p(k + 1);
  const Int next2 = basis.p(k + 2);

  const auto count = static_cast<std::size_t>(window.size());
  cert.records.resize(count);
  auto settle = [&](std::size_t i) {
    const Int a = window.lo + static_cast<Int>(i);
    ResidueRecord rec;
    if (a == window.lo) {
      rec.a = a;
      rec.rule = ResidueRule::base;
      rec.passed = in_F_k(basis, a);
      rec.detail = rec.passed ? "a in F_k, so |B ∩ [a, a]| <= 1 = |F_k ∩ [a, a]|"
                              : "window floor is not in F_k";
    } else if (!residues.count(a)) {
      rec.a = a;
      rec.rule = ResidueRule::lemma3_skip;
      rec.passed = in_F_k(basis, a);
      rec.detail = rec.passed ? "a in F_k" : "a outside both T_k and F_k";
    } else if (a == -1 || a == 1) {
      rec = generated_record(basis, a, ResidueRule::lemma1);
    } else if (a == next1 || a == next2) {
      rec = generated_record(basis, a, ResidueRule::lemma2);
    } else {
      rec = table_record(basis, table, a);
    }
    cert.records[i] = std::move(rec);
  };

  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) settle(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) settle(i);
      });
    }
  }

  cert.passed = std::all_of(cert.records.begin(), cert.records.end(),
                            [](const ResidueRecord& r) { return r.passed; });
  cert.notes.push_back("verdicts are uniform in l >= 1; conditioned residues are split into "
                       "complementary congruence classes of l");
  cert.notes.push_back("residues p_{k+1}=" + std::to_string(next1) + " and p_{k+2}=" +
                       std::to_string(next2) +
                       " use the prime-block construction (lemma2), not the table");
  return cert;
}

ordered_json to_json(const EntryVerdict& v, const PrimeBasis& basis) {
  ordered_json j;
  j["a"] = v.a;
  if (v.condition) {
    j["condition"] = {{"prime", v.condition->prime()},
                      {"divides", v.condition->divides()},
                      {"anchor", v.condition->anchor()},
                      {"text", v.condition->describe(basis)}};
  } else {
    j["condition"] = nullptr;
  }
  j["b"] = v.b;
  j["blocks"] = ordered_json::array();
  for (const auto& b : v.blocks) j["blocks"].push_back(b.elements);
  j["u_sizes"] = v.u_sizes;
  j["coverage"] = v.coverage;
  j["checks"] = ordered_json::array();
  for (const auto& c : v.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.passed;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["checks"].push_back(std::move(cj));
  }
  j["status"] = v.passed ? "pass" : "fail";
  if (!v.passed) j["failure"] = v.failure;
  return j;
}

ordered_json to_json(const ResidueRecord& r, const PrimeBasis& basis) {
  ordered_json j;
  j["a"] = r.a;
  j["rule"] = to_string(r.rule);
  j["status"] = r.passed ? "pass" : "fail";
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["entries"] = ordered_json::array();
  for (const auto& e : r.entries) j["entries"].push_back(to_json(e, basis));
  return j;
}

ordered_json to_json(const Conjecture2Certificate& cert) {
  const PrimeBasis basis(cert.k);
  ordered_json j;
  j["claim"] = "conjecture2";
  j["k"] = cert.k;
  j["status"] = cert.passed ? "pass" : "fail";
  j["l_min"] = cert.l_min;
  j["notes"] = cert.notes;
  j["records"] = ordered_json::array();
  for (const auto& r : cert.records) j["records"].push_back(to_json(r, basis));
  return j;
}

bool reverify_record(const PrimeBasis& basis, const ordered_json& record) {
  const Int a = record.at("a").get<Int>();
  for (const auto& e : record.at("entries")) {
    std::optional<CongruenceCondition> cond;
    if (!e.at("condition").is_null()) {
      const auto& c = e.at("condition");
      cond = CongruenceCondition(basis, c.at("prime").get<Int>(), c.at("divides").get<bool>(),
                                 c.at("anchor").get<Int>());
    }
    std::vector<Block> blocks;
    for (const auto& b : e.at("blocks")) blocks.push_back({b.get<std::vector<Int>>()});
    auto v = verify_entry(basis, a, cond, blocks);
    if (v.passed != (e.at("status") == "pass")) return false;
    if (v.b != e.at("b").get<Int>()) return false;
  }
  return true;
}

}  // namespace coprime
