#include "coprime/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "bits.hpp"

namespace coprime {

namespace {

using detail::Bits;
using Clock = std::chrono::steady_clock;

// Branch and bound over squarefree-kernel classes of [1,n].
//
// Two reductions keep the tree small, both valid for every maximum set:
//  - integers with equal prime support are interchangeable and never
//    coprime to each other, so a maximum set takes a support class wholly
//    or not at all;
//  - if x is in a maximum set then so is every y <= n whose support
//    contains supp(x) (supp(x) nonempty): a clique through y can swap y
//    for x. Including a class therefore includes all its super-supports,
//    and excluding one excludes all its nonempty sub-supports.
// The upper bound covers the remaining integers by pairwise coprime
// cliques; a clique contributes at most k members, and at most k - u when
// u universal integers (1 and primes above n/2) are already chosen.
template <std::size_t W>
class Solver {
  using B = Bits<W>;

 public:
  Solver(Int n, int k, const SearchOptions& options)
      : n_(n), k_(k), opt_(options), base_(first_primes(static_cast<std::size_t>(k))) {
    build_numbers();
    build_groups();
  }

  SearchOutcome run() {
    SearchOutcome out;
    out.n = n_;
    out.k = k_;
    out.enumerated = opt_.enumerate;
    start_ = Clock::now();

    B e_mask;
    Int e_size = 0;
    for (Int m = 1; m <= n_; ++m) {
      if (in_base(m)) {
        e_mask.set(static_cast<std::size_t>(m - 1));
        ++e_size;
      }
    }
    out.E_size = e_size;
    best_ = e_size;
    if (!opt_.enumerate) found_.push_back(e_mask);

    State root;
    dfs(root, 0);

    out.nodes_explored = nodes_;
    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    out.status = stopped_ ? SearchStatus::budget_exceeded : SearchStatus::complete;
    out.f_value = best_;
    out.upper_bound = stopped_ ? std::max(best_, root_bound_) : best_;
    out.truncated = truncated_;

    std::vector<std::vector<Int>> lists;
    for (const auto& mask : found_) {
      std::vector<Int> members;
      mask.for_each([&](std::size_t i) { members.push_back(static_cast<Int>(i) + 1); });
      lists.push_back(std::move(members));
    }
    std::sort(lists.begin(), lists.end());
    for (const auto& l : lists) out.maximum_sets.emplace_back(Window{1, n_}, l);

    out.matches_E = !stopped_ && best_ == e_size;
    if (opt_.enumerate && !stopped_) {
      if (truncated_) {
        if (opt_.cap >= 2) out.E_is_unique_maximum = false;
      } else {
        out.E_is_unique_maximum = found_.size() == 1 && found_.front() == e_mask;
      }
    }
    return out;
  }

 private:
  struct State {
    B chosen;    // groups
    B excluded;  // groups
    Int weight = 0;
  };

  bool in_base(Int m) const {
    return std::any_of(base_.begin(), base_.end(), [m](Int p) { return m % p == 0; });
  }

  static std::size_t idx(Int m) { return static_cast<std::size_t>(m - 1); }

  void build_numbers() {
    adj_num_.assign(static_cast<std::size_t>(n_), B{});
    for (Int a = 1; a <= n_; ++a) {
      for (Int b = a + 1; b <= n_; ++b) {
        if (std::gcd(a, b) == 1) {
          adj_num_[idx(a)].set(idx(b));
          adj_num_[idx(b)].set(idx(a));
        }
      }
    }
    for (Int m = 1; m <= n_; ++m) {
      if (m == 1 || is_prime(m)) seed_num_.set(idx(m));
      if (m == 1 || (is_prime(m) && 2 * m > n_)) universal_num_.set(idx(m));
    }
    // Composites coprime to the base primes open cliques first; base
    // multiples follow, fewest distinct base primes first, so that each
    // clique tends to collect one member per base prime.
    std::vector<std::pair<std::pair<int, Int>, Int>> keyed;
    for (Int m = 2; m <= n_; ++m) {
      if (seed_num_.test(idx(m))) continue;
      int base_count = 0;
      for (Int p : base_) base_count += (m % p == 0) ? 1 : 0;
      keyed.push_back({{base_count, m}, m});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [key, m] : keyed) cover_order_.push_back(idx(m));
  }

  void build_groups() {
    std::vector<Int> kernels;
    for (Int s = 1; s <= n_; ++s) {
      if (radical(s) == s) kernels.push_back(s);
    }
    const std::size_t g_count = kernels.size();
    if (g_count > B::kCapacity) throw std::logic_error("too many support classes");
    kernel_ = kernels;
    weight_.assign(g_count, 0);
    members_.assign(g_count, B{});
    adj_g_.assign(g_count, B{});
    up_g_.assign(g_count, B{});
    down_g_.assign(g_count, B{});
    colour_g_.assign(g_count, B{});

    std::vector<std::size_t> group_of_kernel(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t g = 0; g < g_count; ++g) group_of_kernel[static_cast<std::size_t>(kernels[g])] = g;
    for (Int m = 1; m <= n_; ++m) {
      auto g = group_of_kernel[static_cast<std::size_t>(radical(m))];
      members_[g].set(idx(m));
      ++weight_[g];
    }
    std::vector<Int> primes = sieve_primes(n_);
    for (std::size_t g = 0; g < g_count; ++g) {
      const Int s = kernels[g];
      for (std::size_t h = 0; h < g_count; ++h) {
        const Int t = kernels[h];
        if (h != g && std::gcd(s, t) == 1) adj_g_[g].set(h);
        if (s == 1) continue;
        if (t % s == 0) up_g_[g].set(h);
        if (t > 1 && s % t == 0) down_g_[g].set(h);
      }
      if (s == 1) {
        up_g_[g].set(g);
        down_g_[g].set(g);
        colour_g_[g].set(0);
      } else {
        auto p = prime_support(s).front();
        auto pos = std::lower_bound(primes.begin(), primes.end(), p) - primes.begin();
        colour_g_[g].set(static_cast<std::size_t>(pos) + 1);
      }
      all_g_.set(g);
    }
    // Kernels ascending: primes and small supports carry the largest
    // closures, so deciding them first fixes most of the set early.
    for (std::size_t g = 0; g < g_count; ++g) branch_order_.push_back(g);
  }

  int colour_count(const B& cand) const {
    B colours;
    cand.for_each([&](std::size_t g) { colours |= colour_g_[g]; });
    return colours.count();
  }

  bool has_clique(const B& cand, int need) const {
    if (need <= 0) return true;
    if (cand.count() < need || colour_count(cand) < need) return false;
    if (need == 1) return true;
    for (std::size_t wi = 0; wi < W; ++wi) {
      for (auto bits = cand.w[wi]; bits; bits &= bits - 1) {
        auto g = wi * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        B next = cand.above(g) & adj_g_[g];
        if (has_clique(next, need - 1)) return true;
      }
    }
    return false;
  }

  bool feasible(const State& s, std::size_t g) const {
    return !has_clique(s.chosen & adj_g_[g], k_);
  }

  void forward_check(State& s) const {
    B undecided = all_g_;
    undecided.and_not(s.chosen);
    undecided.and_not(s.excluded);
    undecided.for_each([&](std::size_t u) {
      if (s.excluded.test(u)) return;
      if (!feasible(s, u)) s.excluded |= down_g_[u];
    });
  }

  bool include(State& s, std::size_t g) const {
    if (!feasible(s, g)) return false;
    if (up_g_[g].intersects(s.excluded)) return false;
    B added = up_g_[g];
    added.and_not(s.chosen);
    s.chosen |= added;
    added.for_each([&](std::size_t h) { s.weight += weight_[h]; });
    forward_check(s);
    return true;
  }

  void exclude(State& s, std::size_t g) const { s.excluded |= down_g_[g]; }

  Int bound(const State& s) {
    B cand_groups = all_g_;
    cand_groups.and_not(s.excluded);
    B cand;
    cand_groups.for_each([&](std::size_t g) { cand |= members_[g]; });
    const Int total = cand.count();

    B chosen_nums;
    s.chosen.for_each([&](std::size_t g) { chosen_nums |= members_[g]; });
    const int universal_chosen = (chosen_nums & universal_num_).count();
    const int cap = std::max(0, k_ - universal_chosen);

    Int ub = std::min<Int>((cand & seed_num_).count(), k_);
    cover_cn_.clear();
    cover_cnt_.clear();
    for (auto i : cover_order_) {
      if (!cand.test(i)) continue;
      bool placed = false;
      for (std::size_t c = 0; c < cover_cn_.size(); ++c) {
        if (cover_cn_[c].test(i)) {
          cover_cn_[c] &= adj_num_[i];
          ++cover_cnt_[c];
          placed = true;
          break;
        }
      }
      if (!placed) {
        cover_cn_.push_back(adj_num_[i]);
        cover_cnt_.push_back(1);
      }
    }
    for (int c : cover_cnt_) ub += std::min(c, cap);
    return std::min(ub, total);
  }

  std::ptrdiff_t next_undecided(const State& s) const {
    for (auto g : branch_order_) {
      if (!s.chosen.test(g) && !s.excluded.test(g)) return static_cast<std::ptrdiff_t>(g);
    }
    return -1;
  }

  void record(const State& s) {
    B mask;
    s.chosen.for_each([&](std::size_t g) { mask |= members_[g]; });
    if (s.weight > best_) {
      best_ = s.weight;
      found_.clear();
      truncated_ = false;
      found_.push_back(mask);
    } else if (s.weight == best_ && opt_.enumerate) {
      if (found_.size() < opt_.cap) {
        found_.push_back(mask);
      } else {
        truncated_ = true;
      }
    }
  }

  bool out_of_budget() {
    if (nodes_ > opt_.budget.max_nodes) return true;
    if ((nodes_ & 1023U) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
      if (ms > opt_.budget.max_ms) return true;
    }
    return false;
  }

  void dfs(State& s, int depth) {
    if (stopped_) return;
    ++nodes_;
    if (out_of_budget()) {
      stopped_ = true;
      return;
    }
    const Int ub = bound(s);
    if (depth == 0) root_bound_ = ub;
    // With a full cap only strictly better sets matter.
    const bool collect = opt_.enumerate && !truncated_;
    if (collect ? ub < best_ : ub <= best_) return;
    auto g = next_undecided(s);
    if (g < 0) {
      record(s);
      return;
    }
    auto gi = static_cast<std::size_t>(g);
    {
      State t = s;
      if (include(t, gi)) dfs(t, depth + 1);
    }
    {
      State t = s;
      exclude(t, gi);
      dfs(t, depth + 1);
    }
  }

  Int n_;
  int k_;
  SearchOptions opt_;
  std::vector<Int> base_;

  std::vector<B> adj_num_;
  B seed_num_;
  B universal_num_;
  std::vector<std::size_t> cover_order_;

  std::vector<Int> kernel_;
  std::vector<Int> weight_;
  std::vector<B> members_;
  std::vector<B> adj_g_;
  std::vector<B> up_g_;
  std::vector<B> down_g_;
  std::vector<B> colour_g_;
  B all_g_;
  std::vector<std::size_t> branch_order_;

  std::vector<B> cover_cn_;
  std::vector<int> cover_cnt_;

  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  bool truncated_ = false;
  Int best_ = 0;
  Int root_bound_ = 0;
  std::vector<B> found_;
};

template <std::size_t W>
SearchOutcome solve(Int n, int k, const SearchOptions& options) {
  return Solver<W>(n, k, options).run();
}

}  // namespace

SearchOutcome exact_f(Int n, int k, const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("exact_f requires n >= 1");
  if (k < 1) throw std::invalid_argument("exact_f requires k >= 1");
  if (options.cap < 1) throw std::invalid_argument("enumeration cap must be positive");
  if (n <= 128) return solve<2>(n, k, options);
  if (n <= 256) return solve<4>(n, k, options);
  if (n <= 512) return solve<8>(n, k, options);
  if (n <= 1024) return solve<16>(n, k, options);
  throw std::out_of_range("exact_f supports n <= 1024");
}

std::string to_string(RangeMode mode) {
  return mode == RangeMode::value_only ? "value" : "uniqueness";
}

std::string to_string(SearchStatus status) {
  return status == SearchStatus::complete ? "complete" : "budget-exceeded";
}

bool RangeReport::budget_exceeded() const {
  return std::any_of(per_n.begin(), per_n.end(), [](const SearchOutcome& o) {
    return o.status == SearchStatus::budget_exceeded;
  });
}

bool RangeReport::all_match_E() const {
  return std::all_of(per_n.begin(), per_n.end(),
                     [](const SearchOutcome& o) { return o.matches_E; });
}

bool RangeReport::all_unique() const {
  return std::all_of(per_n.begin(), per_n.end(), [](const SearchOutcome& o) {
    return o.E_is_unique_maximum.value_or(false);
  });
}

RangeReport check_range(int k, Int n_lo, Int n_hi, RangeMode mode,
                        const SearchBudget& budget, int threads) {
  if (n_lo > n_hi) throw std::invalid_argument("empty range: from > to");
  if (n_lo < 1) throw std::invalid_argument("range must start at n >= 1");
  RangeReport report;
  report.k = k;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.mode = mode;
  const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
  report.per_n.resize(count);

  SearchOptions options;
  options.budget = budget;
  options.enumerate = mode == RangeMode::uniqueness;
  options.cap = 2;

  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      report.per_n[i] = exact_f(n_lo + static_cast<Int>(i), k, options);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t) pool.emplace_back(work);
  }
  return report;
}

}  // namespace coprime
