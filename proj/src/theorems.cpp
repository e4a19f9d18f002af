#include "coprime/theorems.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coprime {

std::vector<Int> SchemeClass::restricted(Int n) const {
  std::vector<Int> out;
  if (kind == Kind::primes_and_one) {
    if (n >= 1) out.push_back(1);
    for (Int p : sieve_primes(n)) out.push_back(p);
    return out;
  }
  for (Int x : elements) {
    if (x >= 1 && x <= n) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartitionScheme::PartitionScheme(int k, std::vector<SchemeClass> classes)
    : k_(k), classes_(std::move(classes)) {
  const PrimeBasis basis(k);
  int intensional = 0;
  std::set<Int> y;
  for (const auto& c : classes_) {
    if (c.kind == SchemeClass::Kind::primes_and_one) {
      if (++intensional > 1) {
        throw std::invalid_argument("the primes-and-one class may appear only once");
      }
      for (Int p : basis.base_primes()) y.insert(p);
      continue;
    }
    if (!is_pairwise_coprime(c.elements)) {
      throw std::invalid_argument("class " + c.label + " is not pairwise coprime");
    }
    for (Int x : c.elements) {
      if (in_F_k(basis, x)) y.insert(x);
    }
  }
  excluded_.assign(y.begin(), y.end());
}

PartitionScheme builtin_scheme(int k) {
  using K = SchemeClass::Kind;
  switch (k) {
    case 3:
      return PartitionScheme(3, {{K::primes_and_one, {}, "H1"},
                                 {K::explicit_list, {4, 9, 25, 77}, "H2"},
                                 {K::explicit_list, {8, 27, 55, 49}, "H3"}});
    case 4: {
      PartitionScheme scheme(4, {{K::primes_and_one, {}, "W1"},
                                 {K::explicit_list, {121, 49, 25, 9, 4}, "W2"},
                                 {K::explicit_list, {143, 133, 115, 51, 32}, "W3"},
                                 {K::explicit_list, {187, 91, 125, 27, 8}, "W4"},
                                 {K::explicit_list, {169, 77, 85, 81, 16}, "W5"}});
      auto reference = reference_excluded_k4();
      std::sort(reference.begin(), reference.end());
      if (scheme.excluded() != reference) {
        throw ConsistencyError("derived Y for k=4 differs from the reference list");
      }
      return scheme;
    }
    default:
      throw std::invalid_argument("no builtin partition scheme for k=" + std::to_string(k));
  }
}

std::vector<Int> reference_excluded_k4() {
  return {2, 3, 5, 7, 49, 25, 9, 4, 133, 115, 51, 32, 91, 125, 27, 8, 77, 85, 81, 16};
}

CountingReport verify_counting(const PartitionScheme& scheme, Int n) {
  const PrimeBasis basis(scheme.k());
  const int k = scheme.k();
  CountingReport r;
  r.k = k;
  r.n = n;

  std::set<Int> in_classes;
  for (const auto& c : scheme.classes()) {
    ClassContribution cc;
    cc.label = c.label;
    cc.members = c.restricted(n);
    cc.pairwise_coprime = is_pairwise_coprime(cc.members);
    cc.bound = std::min<Int>(static_cast<Int>(cc.members.size()), k);
    in_classes.insert(cc.members.begin(), cc.members.end());
    r.sum_bound += cc.bound;
    r.ledger.push_back(std::move(cc));
  }
  for (Int m = 1; m <= n; ++m) {
    if (!in_classes.count(m) && !in_F_k(basis, m)) r.uncovered.push_back(m);
  }
  for (Int y : scheme.excluded()) r.excluded_in_range += (y >= 1 && y <= n) ? 1 : 0;
  r.slack = r.excluded_in_range - r.sum_bound;

  if (!r.uncovered.empty()) {
    r.failure = "coverage: " + std::to_string(r.uncovered.front()) +
                " lies in no class and outside F_k";
  } else if (auto bad = std::find_if(r.ledger.begin(), r.ledger.end(),
                                     [](const ClassContribution& c) { return !c.pairwise_coprime; });
             bad != r.ledger.end()) {
    r.failure = "class " + bad->label + " is not pairwise coprime within [1,n]";
  } else if (r.slack < 0) {
    r.failure = "bound: sum of class bounds " + std::to_string(r.sum_bound) + " exceeds |Y ∩ [1,n]| = " +
                std::to_string(r.excluded_in_range);
  }
  r.passed = r.failure.empty();
  return r;
}

UniquenessChainReport evaluate_uniqueness_chain_k4(Int n) {
  UniquenessChainReport rep;
  rep.n = n;
  const PrimeBasis basis(4);
  const std::vector<Int> squares = {121, 49, 25, 9, 4};
  const std::vector<Int> outsiders = {11, 121, 143, 187};

  // s1: the counting bound is tight and both W1 and W2 saturate at 4
  {
    ChainStep s{"s1", false, {}, {}};
    auto counting = verify_counting(builtin_scheme(4), n);
    const bool tight = counting.passed && counting.slack == 0;
    const bool saturated = counting.ledger.size() >= 2 && counting.ledger[0].bound == 4 &&
                           counting.ledger[1].bound == 4;
    s.passed = tight && saturated;
    s.ledger = {{"slack", counting.slack},
                {"counting_pass", counting.passed},
                {"W1_bound", counting.ledger[0].bound},
                {"W2_bound", counting.ledger[1].bound}};
    if (!tight) s.detail = "counting bound not tight";
    else if (!saturated) s.detail = "W1 or W2 holds fewer than 4 members in [1,n]";
    rep.steps.push_back(std::move(s));
  }
  // s2: integers coprime to 2310 are coprime to every W2 element
  {
    ChainStep s{"s2", true, {}, {}};
    for (Int m = 1; m <= n && s.passed; ++m) {
      if (std::gcd(m, Int{2310}) != 1) continue;
      for (Int w : squares) {
        if (std::gcd(m, w) != 1) {
          s.passed = false;
          s.detail = std::to_string(m) + " shares a factor with " + std::to_string(w);
          break;
        }
      }
    }
    rep.steps.push_back(std::move(s));
  }
  // s3: the integers coprime to 210 but not to 2310
  {
    ChainStep s{"s3", false, {}, {}};
    std::vector<Int> found;
    std::vector<Int> expected;
    for (Int m = 1; m <= n; ++m) {
      if (std::gcd(m, Int{210}) == 1 && std::gcd(m, Int{2310}) > 1) found.push_back(m);
    }
    for (Int x : outsiders) {
      if (x <= n) expected.push_back(x);
    }
    s.passed = found == expected;
    s.ledger = {{"set", found}};
    if (!s.passed) s.detail = "unexpected integers coprime to 210 with factor 11";
    rep.steps.push_back(std::move(s));
  }
  // s4: dropping p from {2,3,5,7,11} and adding p^2, 13p, 17p or 19p
  // leaves five pairwise coprime integers
  {
    ChainStep s{"s4", true, {}, ordered_json::array()};
    for (Int p : {2, 3, 5, 7}) {
      for (Int y : {p * p, 13 * p, 17 * p, 19 * p}) {
        std::vector<Int> five;
        for (Int q : {2, 3, 5, 7, 11}) {
          if (q != p) five.push_back(q);
        }
        five.push_back(y);
        if (!is_pairwise_coprime(five)) {
          s.passed = false;
          s.detail = "p=" + std::to_string(p) + ", y=" + std::to_string(y);
        }
      }
    }
    rep.steps.push_back(std::move(s));
  }
  // s5: |{11,121,143,187} ∩ [1,n]| < |{p,p^2,13p,17p,19p} ∩ [1,n]|, the
  // right side lying inside F_4
  {
    ChainStep s{"s5", true, {}, ordered_json::array()};
    Int lhs = 0;
    for (Int x : outsiders) lhs += x <= n ? 1 : 0;
    for (Int p : {2, 3, 5, 7}) {
      Int rhs = 0;
      bool inside = true;
      for (Int y : {p, p * p, 13 * p, 17 * p, 19 * p}) {
        inside = inside && in_F_k(basis, y);
        rhs += y <= n ? 1 : 0;
      }
      const bool ok = inside && lhs < rhs;
      s.ledger.push_back({{"p", p}, {"outsiders", lhs}, {"removed", rhs}, {"holds", ok}});
      if (!ok && s.passed) {
        s.passed = false;
        s.detail = "p=" + std::to_string(p) + ": " + std::to_string(lhs) + " < " +
                   std::to_string(rhs) + " is false";
      }
    }
    rep.steps.push_back(std::move(s));
  }
  rep.passed = std::all_of(rep.steps.begin(), rep.steps.end(),
                           [](const ChainStep& s) { return s.passed; });
  return rep;
}

UniquenessChainReport verify_uniqueness_chain_k4(Int n) {
  if (n < 49 || n > 199) {
    throw std::out_of_range("uniqueness chain applies to 49 <= n <= 199, got n=" +
                            std::to_string(n));
  }
  return evaluate_uniqueness_chain_k4(n);
}

RemarkReport remark_counterexample(const PrimeBasis& basis) {
  const int k = basis.k();
  RemarkReport r;
  r.k = k;
  r.n = basis.p(k) * basis.p(k) - 1;
  const CandidateSet e = E_set(basis, r.n);
  r.E_size = static_cast<Int>(e.size());
  r.set = e.without(basis.p(k)).with(basis.p(k + 1));
  auto verdict = is_admissible(r.set, k);
  r.admissible = verdict.admissible;
  r.witness = verdict.witness;
  r.size_matches = static_cast<Int>(r.set.size()) == r.E_size;
  r.differs_from_E = !(r.set == e);
  r.passed = r.admissible && r.size_matches && r.differs_from_E;
  if (!r.passed) {
    throw ConsistencyError("remark construction failed its self-check for k=" +
                           std::to_string(k));
  }
  return r;
}

std::string to_string(EvidenceGrade grade) {
  return grade == EvidenceGrade::value ? "value" : "uniqueness";
}

TheoremCertificate assemble_theorem(std::string claim, int k, Int n0, Int l0,
                                    const Conjecture2Certificate& conj2,
                                    const std::vector<BaseEvidence>& base,
                                    std::vector<TheoremComponent> extra) {
  const PrimeBasis basis(k);
  TheoremCertificate cert;
  cert.claim = std::move(claim);
  cert.k = k;
  cert.n0 = n0;
  cert.l0 = l0;
  cert.base_top = basis.primorial() * l0 - basis.p(k + 1);

  {
    TheoremComponent c{"conjecture2", false, std::nullopt, {}};
    const Window w = residue_window(basis);
    c.range = std::make_pair(w.lo, w.hi);
    if (conj2.k != k) {
      c.detail = "certificate is for k=" + std::to_string(conj2.k);
    } else if (!conj2.passed) {
      c.detail = "certificate fails";
    } else if (conj2.l_min > l0) {
      c.detail = "certificate holds only for l >= " + std::to_string(conj2.l_min);
    } else {
      c.passed = true;
      c.detail = "holds for all l >= " + std::to_string(conj2.l_min);
    }
    cert.components.push_back(std::move(c));
  }
  {
    // The induction step at m > top reuses the claim at P_k*l - p_{k+1} >= top,
    // so top itself must already lie in the verified range.
    TheoremComponent c{"splice", cert.base_top >= n0, std::make_pair(n0, cert.base_top), {}};
    c.detail = c.passed ? "base range reaches P_k*l0 - p_{k+1} = " + std::to_string(cert.base_top)
                        : "P_k*l0 - p_{k+1} = " + std::to_string(cert.base_top) +
                              " is below n0; the induction has no base";
    cert.components.push_back(std::move(c));
  }
  {
    TheoremComponent c{"base-range", true, std::make_pair(n0, cert.base_top), {}};
    for (Int n = n0; n <= cert.base_top; ++n) {
      auto it = std::find_if(base.begin(), base.end(), [&](const BaseEvidence& e) {
        return e.n == n && e.grade == EvidenceGrade::uniqueness && e.passed;
      });
      if (it == base.end()) {
        c.passed = false;
        c.detail = "n=" + std::to_string(n) + " missing";
        break;
      }
    }
    if (c.passed) {
      std::set<std::string> sources;
      for (const auto& e : base) sources.insert(e.source);
      for (const auto& s : sources) c.detail += (c.detail.empty() ? "" : ", ") + s;
    }
    cert.components.push_back(std::move(c));
  }
  for (auto& c : extra) cert.components.push_back(std::move(c));

  for (const auto& c : cert.components) {
    if (!c.passed) {
      cert.failure = c.name + ": " + c.detail;
      break;
    }
  }
  cert.passed = cert.failure.empty();
  return cert;
}

ordered_json to_json(const CountingReport& r) {
  ordered_json j;
  j["claim"] = "counting";
  j["k"] = r.k;
  j["n"] = r.n;
  j["status"] = r.passed ? "pass" : "fail";
  j["ledger"] = ordered_json::array();
  for (const auto& c : r.ledger) {
    j["ledger"].push_back({{"class", c.label},
                           {"size", c.members.size()},
                           {"bound", c.bound},
                           {"pairwise_coprime", c.pairwise_coprime}});
  }
  j["sum_bound"] = r.sum_bound;
  j["excluded_in_range"] = r.excluded_in_range;
  j["slack"] = r.slack;
  if (!r.uncovered.empty()) j["uncovered"] = r.uncovered;
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

ordered_json to_json(const UniquenessChainReport& r) {
  ordered_json j;
  j["claim"] = "uniqueness-chain-k4";
  j["n"] = r.n;
  j["status"] = r.passed ? "pass" : "fail";
  j["steps"] = ordered_json::array();
  for (const auto& s : r.steps) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["pass"] = s.passed;
    if (!s.detail.empty()) sj["detail"] = s.detail;
    if (!s.ledger.is_null() && !s.ledger.empty()) sj["ledger"] = s.ledger;
    j["steps"].push_back(std::move(sj));
  }
  return j;
}

ordered_json to_json(const RemarkReport& r) {
  ordered_json j;
  j["claim"] = "remark";
  j["k"] = r.k;
  j["n"] = r.n;
  j["status"] = r.passed ? "pass" : "fail";
  j["set"] = r.set.members();
  j["size"] = r.set.size();
  j["E_size"] = r.E_size;
  j["admissible"] = r.admissible;
  j["differs_from_E"] = r.differs_from_E;
  if (r.witness) j["witness"] = r.witness->elements;
  return j;
}

ordered_json to_json(const TheoremCertificate& cert) {
  ordered_json j;
  j["claim"] = cert.claim;
  j["k"] = cert.k;
  j["n0"] = cert.n0;
  j["l0"] = cert.l0;
  j["base_top"] = cert.base_top;
  j["status"] = cert.passed ? "pass" : "fail";
  if (!cert.failure.empty()) j["failure"] = cert.failure;
  j["components"] = ordered_json::array();
  for (const auto& c : cert.components) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.passed ? "pass" : "fail";
    if (c.range) cj["range"] = {c.range->first, c.range->second};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["components"].push_back(std::move(cj));
  }
  return j;
}

}  // namespace coprime
