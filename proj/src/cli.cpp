#include "coprime/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "coprime/conj2.hpp"
#include "coprime/scanner.hpp"
#include "coprime/search.hpp"
#include "coprime/tables.hpp"
#include "coprime/theorems.hpp"

namespace coprime {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  ordered_json doc;
  int code = exit_code::ok;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* pass_fail(bool b) { return b ? "pass" : "fail"; }

ordered_json unique_json(const std::optional<bool>& u) {
  return u ? ordered_json(*u) : ordered_json(nullptr);
}

ordered_json outcome_json(const SearchOutcome& o, bool with_sets) {
  ordered_json j;
  j["n"] = o.n;
  j["k"] = o.k;
  j["status"] = to_string(o.status);
  j["f"] = o.f_value;
  j["upper_bound"] = o.upper_bound;
  j["E_size"] = o.E_size;
  j["matches_E"] = o.matches_E;
  j["enumerated"] = o.enumerated;
  j["truncated"] = o.truncated;
  j["E_is_unique_maximum"] = unique_json(o.E_is_unique_maximum);
  if (with_sets && o.enumerated) {
    j["maximum_set_count"] = o.maximum_sets.size();
    j["maximum_sets"] = ordered_json::array();
    for (const auto& s : o.maximum_sets) j["maximum_sets"].push_back(s.members());
  }
  return j;
}

// A claim about one n settled by search: f = |E|, plus uniqueness when asked.
bool search_claim_holds(const SearchOutcome& o, RangeMode mode) {
  if (!o.matches_E) return false;
  return mode == RangeMode::value_only || o.E_is_unique_maximum.value_or(false);
}

bool search_claim_falsified(const SearchOutcome& o, RangeMode mode) {
  if (o.status != SearchStatus::complete) return false;
  if (!o.matches_E) return true;
  return mode == RangeMode::uniqueness && o.E_is_unique_maximum == false;
}

ordered_json range_json(const RangeReport& r, bool& falsified, bool& budget) {
  ordered_json j;
  j["command"] = "range";
  j["k"] = r.k;
  j["from"] = r.n_lo;
  j["to"] = r.n_hi;
  j["mode"] = to_string(r.mode);
  j["per_n"] = ordered_json::array();
  falsified = false;
  budget = r.budget_exceeded();
  for (const auto& o : r.per_n) {
    j["per_n"].push_back(outcome_json(o, false));
    falsified = falsified || search_claim_falsified(o, r.mode);
  }
  j["status"] = falsified ? "fail" : budget ? "budget-exceeded" : "pass";
  return j;
}

std::uint64_t total_nodes(const RangeReport& r) {
  std::uint64_t n = 0;
  for (const auto& o : r.per_n) n += o.nodes_explored;
  return n;
}

PrimeBasis basis_for(int k) {
  try {
    return PrimeBasis(k);
  } catch (const std::exception& e) {
    throw UsageError("--k: " + std::string(e.what()));
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

// ---------------------------------------------------------------------------

struct FArgs {
  Int n = 0;
  int k = 0;
  bool enumerate = false;
  std::size_t cap = 10'000;
  std::optional<std::int64_t> budget_ms;
  std::optional<std::uint64_t> budget_nodes;
};

Result cmd_f(const FArgs& a) {
  basis_for(a.k);
  require(a.n >= 1 && a.n <= 1024, "--n must lie in [1, 1024]");
  require(a.cap >= 1, "--cap must be positive");
  SearchOptions opt;
  opt.enumerate = a.enumerate;
  opt.cap = a.cap;
  if (a.budget_ms) opt.budget.max_ms = *a.budget_ms;
  if (a.budget_nodes) opt.budget.max_nodes = *a.budget_nodes;

  const auto o = exact_f(a.n, a.k, opt);
  Result r;
  r.doc["command"] = "f";
  const ordered_json body = outcome_json(o, true);
  for (auto it = body.begin(); it != body.end(); ++it) r.doc[it.key()] = it.value();
  r.doc["diagnostics"] = {{"nodes_explored", o.nodes_explored}, {"elapsed_ms", o.elapsed_ms}};
  r.code = o.status == SearchStatus::complete ? exit_code::ok : exit_code::budget;
  return r;
}

struct RangeArgs {
  int k = 0;
  Int from = 0;
  Int to = 0;
  std::string mode = "value";
};

Result cmd_range(const RangeArgs& a, int threads) {
  basis_for(a.k);
  require(a.from >= 1 && a.from <= a.to && a.to <= 1024, "need 1 <= --from <= --to <= 1024");
  const RangeMode mode = a.mode == "uniqueness" ? RangeMode::uniqueness : RangeMode::value_only;
  const auto t0 = Clock::now();
  const auto report = check_range(a.k, a.from, a.to, mode, {}, threads);
  bool falsified = false;
  bool budget = false;
  Result r;
  r.doc = range_json(report, falsified, budget);
  r.doc["diagnostics"] = {
      {"threads", threads}, {"nodes_explored", total_nodes(report)}, {"elapsed_ms", ms_since(t0)}};
  r.code = falsified ? exit_code::falsified : budget ? exit_code::budget : exit_code::ok;
  return r;
}

Result cmd_conj2(int k, const std::string& table_path, int threads) {
  const PrimeBasis basis = basis_for(k);
  CaseTable table;
  try {
    table = table_path.empty() ? builtin_table(k) : load_table(table_path);
  } catch (const TableError& e) {
    throw UsageError(e.what());
  }
  require(table.k == k, "table is for k=" + std::to_string(table.k) + ", not k=" + std::to_string(k));
  const auto t0 = Clock::now();
  const auto cert = verify_conjecture2(basis, table, threads);
  Result r;
  r.doc = to_json(cert);
  r.doc["diagnostics"] = {{"threads", threads}, {"elapsed_ms", ms_since(t0)}};
  r.code = cert.passed ? exit_code::ok : exit_code::falsified;
  return r;
}

struct SpanArgs {
  int k = 0;
  Int from = 0;
  Int to = 0;
};

Result cmd_counting(const SpanArgs& a) {
  require(a.k == 3 || a.k == 4, "--k must be 3 or 4");
  require(a.from >= 1 && a.from <= a.to, "need 1 <= --from <= --to");
  const auto t0 = Clock::now();
  const auto scheme = builtin_scheme(a.k);
  Result r;
  r.doc["claim"] = "counting";
  r.doc["k"] = a.k;
  r.doc["from"] = a.from;
  r.doc["to"] = a.to;
  r.doc["reports"] = ordered_json::array();
  bool all = true;
  for (Int n = a.from; n <= a.to; ++n) {
    const auto rep = verify_counting(scheme, n);
    all = all && rep.passed;
    r.doc["reports"].push_back(to_json(rep));
  }
  r.doc["status"] = pass_fail(all);
  r.doc["diagnostics"] = {{"elapsed_ms", ms_since(t0)}};
  r.code = all ? exit_code::ok : exit_code::falsified;
  return r;
}

Result cmd_chain(Int from, Int to) {
  require(from >= 49 && from <= to && to <= 199, "need 49 <= --from <= --to <= 199");
  const auto t0 = Clock::now();
  Result r;
  r.doc["claim"] = "uniqueness-chain-k4";
  r.doc["from"] = from;
  r.doc["to"] = to;
  r.doc["reports"] = ordered_json::array();
  bool all = true;
  for (Int n = from; n <= to; ++n) {
    const auto rep = verify_uniqueness_chain_k4(n);
    all = all && rep.passed;
    r.doc["reports"].push_back(to_json(rep));
  }
  r.doc["status"] = pass_fail(all);
  r.doc["diagnostics"] = {{"elapsed_ms", ms_since(t0)}};
  r.code = all ? exit_code::ok : exit_code::falsified;
  return r;
}

ordered_json base_json(const std::vector<BaseEvidence>& base) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : base) {
    arr.push_back({{"n", e.n},
                   {"grade", to_string(e.grade)},
                   {"source", e.source},
                   {"status", pass_fail(e.passed)}});
  }
  return arr;
}

int theorem_code(const TheoremCertificate& cert, bool budget) {
  if (cert.passed) return exit_code::ok;
  return budget ? exit_code::budget : exit_code::falsified;
}

// Base range 55..83 by exhaustive search; 83 = P_3*3 - p_4.
Result theorem1(int threads) {
  const auto t0 = Clock::now();
  const PrimeBasis basis(3);
  const auto conj2 = verify_conjecture2(basis, builtin_table(3), threads);
  const auto search = check_range(3, 55, 83, RangeMode::uniqueness, {}, threads);

  std::vector<BaseEvidence> base;
  for (const auto& o : search.per_n) {
    base.push_back({o.n, EvidenceGrade::uniqueness, "search",
                    o.status == SearchStatus::complete &&
                        search_claim_holds(o, RangeMode::uniqueness)});
  }
  const auto cert = assemble_theorem("theorem1", 3, 55, 3, conj2, base);

  bool falsified = false;
  bool budget = false;
  Result r;
  r.doc = to_json(cert);
  r.doc["subcertificates"] = {{"conjecture2", to_json(conj2)},
                              {"base", base_json(base)},
                              {"search", range_json(search, falsified, budget)}};
  r.doc["diagnostics"] = {{"threads", threads},
                          {"nodes_explored", total_nodes(search)},
                          {"elapsed_ms", ms_since(t0)}};
  r.code = theorem_code(cert, budget);
  return r;
}

// Base range 49..199 by counting plus the uniqueness chain; 199 = P_4 - p_5.
Result theorem2(int threads) {
  const auto t0 = Clock::now();
  const PrimeBasis basis(4);
  const auto conj2 = verify_conjecture2(basis, builtin_table(4), threads);
  const auto scheme = builtin_scheme(4);

  std::vector<TheoremComponent> extra;
  ordered_json counting = ordered_json::array();
  std::vector<bool> counted(200, false);
  {
    TheoremComponent c{"counting", true, std::make_pair(Int{7}, Int{199}), {}};
    for (Int n = 7; n <= 199; ++n) {
      const auto rep = verify_counting(scheme, n);
      counted[static_cast<std::size_t>(n)] = rep.passed;
      counting.push_back({{"n", n}, {"slack", rep.slack}, {"status", pass_fail(rep.passed)}});
      if (!rep.passed && c.passed) {
        c.passed = false;
        c.detail = "n=" + std::to_string(n) + ": " + rep.failure;
      }
    }
    if (c.passed) c.detail = "f(n,4) = |E(n,4)| for 7 <= n <= 199";
    extra.push_back(std::move(c));
  }

  std::vector<BaseEvidence> base;
  ordered_json chain = ordered_json::array();
  for (Int n = 49; n <= 199; ++n) {
    const auto rep = verify_uniqueness_chain_k4(n);
    chain.push_back({{"n", n}, {"status", pass_fail(rep.passed)}});
    base.push_back({n, EvidenceGrade::uniqueness, "counting+uniqueness-chain-k4",
                    rep.passed && counted[static_cast<std::size_t>(n)]});
  }

  const auto search = check_range(4, 7, 199, RangeMode::uniqueness, {}, threads);
  {
    TheoremComponent c{"search-cross-check", true, std::make_pair(Int{7}, Int{199}), {}};
    for (const auto& o : search.per_n) {
      const bool unique_expected = o.n >= 49;
      const bool ok = o.status == SearchStatus::complete && o.matches_E &&
                      (!unique_expected || o.E_is_unique_maximum == true) &&
                      counted[static_cast<std::size_t>(o.n)];
      if (!ok) {
        c.passed = false;
        c.detail = "n=" + std::to_string(o.n) + " disagrees with the counting argument";
        break;
      }
    }
    if (c.passed) c.detail = "search agrees with counting on 7..199 and with the chain on 49..199";
    extra.push_back(std::move(c));
  }
  {
    const auto rep = verify_counting(scheme, 199);
    extra.push_back({"conjecture1-k4", rep.passed, std::make_pair(Int{199}, Int{199}),
                     rep.passed ? "f(P_4 - p_5, 4) = |E(199,4)|" : rep.failure});
  }

  const auto cert = assemble_theorem("theorem2", 4, 49, 1, conj2, base, std::move(extra));

  bool falsified = false;
  bool budget = false;
  Result r;
  r.doc = to_json(cert);
  r.doc["subcertificates"] = {{"conjecture2", to_json(conj2)},
                              {"base", base_json(base)},
                              {"counting", counting},
                              {"uniqueness_chain", chain},
                              {"search", range_json(search, falsified, budget)}};
  r.doc["diagnostics"] = {{"threads", threads},
                          {"nodes_explored", total_nodes(search)},
                          {"elapsed_ms", ms_since(t0)}};
  r.code = theorem_code(cert, budget);
  return r;
}

Result cmd_remark(int k) {
  const PrimeBasis basis = basis_for(k);
  const auto t0 = Clock::now();
  Result r;
  r.doc = to_json(remark_counterexample(basis));
  r.doc["diagnostics"] = {{"elapsed_ms", ms_since(t0)}};
  return r;
}

Result cmd_scan(Int t_max) {
  require(t_max >= 1, "--t-max must be positive");
  const auto t0 = Clock::now();
  Result r;
  r.doc["command"] = "scan-h";
  r.doc["t_max"] = t_max;
  r.doc["hits"] = ordered_json::array();
  const auto hits = scan_H(t_max);
  for (const auto& h : hits) r.doc["hits"].push_back(to_json(h));
  r.doc["hit_count"] = hits.size();
  r.doc["diagnostics"] = {{"elapsed_ms", ms_since(t0)}};
  return r;
}

// ---------------------------------------------------------------------------
// Text rendering, always from the JSON document.

std::string render_sets(const ordered_json& sets) {
  std::ostringstream os;
  for (const auto& s : sets) os << "  " << s.dump() << '\n';
  return os.str();
}

std::string render_text(const ordered_json& d) {
  std::ostringstream os;
  const std::string kind = d.contains("command") ? d["command"].get<std::string>()
                                                 : d["claim"].get<std::string>();
  if (kind == "f") {
    os << "f(" << d["n"] << "," << d["k"] << ") = " << d["f"] << "  |E| = " << d["E_size"]
       << "  status " << d["status"].get<std::string>() << '\n';
    if (d["status"] != "complete") os << "upper bound " << d["upper_bound"] << '\n';
    if (d.contains("maximum_sets")) {
      os << d["maximum_set_count"] << " maximum set(s)"
         << (d["truncated"].get<bool>() ? " (truncated)" : "") << ":\n"
         << render_sets(d["maximum_sets"]);
    }
  } else if (kind == "range") {
    os << "k=" << d["k"] << " n=" << d["from"] << ".." << d["to"] << " mode "
       << d["mode"].get<std::string>() << ": " << d["status"].get<std::string>() << '\n';
    for (const auto& o : d["per_n"]) {
      os << std::setw(6) << o["n"].get<Int>() << "  f=" << o["f"] << "  |E|=" << o["E_size"];
      if (!o["E_is_unique_maximum"].is_null()) {
        os << "  unique=" << (o["E_is_unique_maximum"].get<bool>() ? "yes" : "no");
      }
      if (o["status"] != "complete") os << "  " << o["status"].get<std::string>();
      os << '\n';
    }
  } else if (kind == "conjecture2") {
    os << "conjecture2 k=" << d["k"] << ": " << d["status"].get<std::string>() << " ("
       << d["records"].size() << " records)\n";
    for (const auto& rec : d["records"]) {
      os << std::setw(6) << rec["a"].get<Int>() << "  " << std::left << std::setw(12)
         << rec["rule"].get<std::string>() << std::right << rec["status"].get<std::string>();
      if (rec.contains("detail")) os << "  " << rec["detail"].get<std::string>();
      os << '\n';
    }
    for (const auto& note : d["notes"]) os << "note: " << note.get<std::string>() << '\n';
  } else if (kind == "counting" && d.contains("reports")) {
    os << "counting k=" << d["k"] << " n=" << d["from"] << ".." << d["to"] << ": "
       << d["status"].get<std::string>() << '\n';
    for (const auto& rep : d["reports"]) {
      os << std::setw(6) << rep["n"].get<Int>() << "  sum=" << rep["sum_bound"]
         << "  |Y|=" << rep["excluded_in_range"] << "  slack=" << rep["slack"] << "  "
         << rep["status"].get<std::string>();
      if (rep.contains("failure")) os << "  " << rep["failure"].get<std::string>();
      os << '\n';
    }
  } else if (kind == "uniqueness-chain-k4") {
    os << "uniqueness chain k=4 n=" << d["from"] << ".." << d["to"] << ": "
       << d["status"].get<std::string>() << '\n';
    for (const auto& rep : d["reports"]) {
      os << std::setw(6) << rep["n"].get<Int>() << "  " << rep["status"].get<std::string>();
      for (const auto& s : rep["steps"]) {
        if (!s["pass"].get<bool>()) {
          os << "  " << s["name"].get<std::string>() << ": " << s.value("detail", "");
        }
      }
      os << '\n';
    }
  } else if (kind == "theorem1" || kind == "theorem2") {
    os << kind << " k=" << d["k"] << " n0=" << d["n0"] << " l0=" << d["l0"]
       << " base top=" << d["base_top"] << ": " << d["status"].get<std::string>() << '\n';
    for (const auto& c : d["components"]) {
      os << "  " << std::left << std::setw(20) << c["name"].get<std::string>() << std::right
         << c["status"].get<std::string>();
      if (c.contains("range")) os << "  [" << c["range"][0] << "," << c["range"][1] << "]";
      if (c.contains("detail")) os << "  " << c["detail"].get<std::string>();
      os << '\n';
    }
    if (d.contains("failure")) os << "failure: " << d["failure"].get<std::string>() << '\n';
  } else if (kind == "remark") {
    os << "remark k=" << d["k"] << " n=" << d["n"] << ": " << d["status"].get<std::string>()
       << "  size " << d["size"] << " = |E|  admissible=" << d["admissible"] << '\n'
       << "  " << d["set"].dump() << '\n';
  } else if (kind == "scan-h") {
    os << "condition (H) for t <= " << d["t_max"] << ": " << d["hit_count"] << " hit(s)\n";
    for (const auto& h : d["hits"]) {
      os << "  t=" << h["t"] << "  p_t=" << h["p_t"] << "  p_t+7=" << h["p_t+7"]
         << "  p_t+8=" << h["p_t+8"] << "  p_t+9=" << h["p_t+9"] << '\n';
    }
  } else {
    os << d.dump(2) << '\n';
  }
  return os.str();
}

}  // namespace

ordered_json without_diagnostics(ordered_json doc) {
  if (doc.is_object()) doc.erase("diagnostics");
  return doc;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise coprime extremal sets: exact search and certificate checks", "coprime"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "text";
  std::string out_path;
  int threads = 1;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to FILE instead of stdout");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  app.set_help_all_flag("--help-all");

  FArgs fa;
  auto* f = app.add_subcommand("f", "Exact f(n,k) by branch and bound");
  f->add_option("--n", fa.n)->required();
  f->add_option("--k", fa.k)->required();
  f->add_flag("--enumerate", fa.enumerate, "List every maximum admissible set");
  f->add_option("--cap", fa.cap, "Stop enumerating after this many sets");
  f->add_option("--budget-ms", fa.budget_ms)->check(CLI::PositiveNumber);
  f->add_option("--budget-nodes", fa.budget_nodes)->check(CLI::PositiveNumber);

  RangeArgs ra;
  auto* range = app.add_subcommand("range", "Compare f(n,k) with |E(n,k)| over a range of n");
  range->add_option("--k", ra.k)->required();
  range->add_option("--from", ra.from)->required();
  range->add_option("--to", ra.to)->required();
  range->add_option("--mode", ra.mode)->check(CLI::IsMember({"value", "uniqueness"}));

  auto* verify = app.add_subcommand("verify", "Check a claim and emit its certificate");
  verify->require_subcommand(1);

  int c2_k = 0;
  std::string c2_table;
  auto* conj2 = verify->add_subcommand("conjecture2", "Residue-by-residue block-family check");
  conj2->add_option("--k", c2_k)->required();
  conj2->add_option("--table", c2_table, "Case table JSON (defaults to the builtin one)");

  SpanArgs ca;
  auto* counting = verify->add_subcommand("counting", "Partition counting bound per n");
  counting->add_option("--k", ca.k)->required();
  counting->add_option("--from", ca.from)->required();
  counting->add_option("--to", ca.to)->required();

  Int u_from = 0;
  Int u_to = 0;
  auto* chain = verify->add_subcommand("uniqueness-k4", "Uniqueness chain for k=4");
  chain->add_option("--from", u_from)->required();
  chain->add_option("--to", u_to)->required();

  int which = 0;
  auto* theorem = verify->add_subcommand("theorem", "Full pipeline and assembly");
  theorem->add_option("--which", which)->required()->check(CLI::IsMember({1, 2}));

  int rk = 0;
  auto* remark = app.add_subcommand("remark", "The A(p_k^2 - 1, k) construction");
  remark->add_option("--k", rk)->required();

  Int t_max = 0;
  auto* scan = app.add_subcommand("scan-h", "Scan prime indices for condition (H)");
  scan->add_option("--t-max", t_max)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_code::ok : exit_code::usage;
  }

  Result result;
  std::ofstream file;
  try {
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      require(static_cast<bool>(file), "--out: cannot open " + out_path);
    }
    if (f->parsed()) {
      result = cmd_f(fa);
    } else if (range->parsed()) {
      result = cmd_range(ra, threads);
    } else if (conj2->parsed()) {
      result = cmd_conj2(c2_k, c2_table, threads);
    } else if (counting->parsed()) {
      result = cmd_counting(ca);
    } else if (chain->parsed()) {
      result = cmd_chain(u_from, u_to);
    } else if (theorem->parsed()) {
      result = which == 1 ? theorem1(threads) : theorem2(threads);
    } else if (remark->parsed()) {
      result = cmd_remark(rk);
    } else if (scan->parsed()) {
      result = cmd_scan(t_max);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::internal;
  }

  std::ostream& sink = out_path.empty() ? out : file;
  sink << (format == "json" ? dump_json(result.doc) : render_text(result.doc));
  sink.flush();
  if (!sink) {
    err << "internal error: failed writing output\n";
    return exit_code::internal;
  }
  return result.code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"coprime"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coprime
