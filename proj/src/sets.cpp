#include "coprime/sets.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coprime {

CandidateSet::CandidateSet(Window window)
    : window_(window), mask_(static_cast<std::size_t>(window.size()), false) {}

CandidateSet::CandidateSet(Window window, std::span<const Int> members)
    : CandidateSet(window) {
  for (Int m : members) {
    if (!window_.contains(m)) {
      throw std::out_of_range("member " + std::to_string(m) + " outside window [" +
                              std::to_string(window_.lo) + ", " +
                              std::to_string(window_.hi) + "]");
    }
    auto bit = mask_[static_cast<std::size_t>(m - window_.lo)];
    if (!bit) {
      bit = true;
      ++size_;
    }
  }
}

CandidateSet CandidateSet::of(std::span<const Int> members) {
  if (members.empty()) return CandidateSet(Window{0, 0});
  auto [lo, hi] = std::minmax_element(members.begin(), members.end());
  return CandidateSet(Window{*lo, *hi}, members);
}

CandidateSet CandidateSet::of(std::initializer_list<Int> members) {
  return of(std::span<const Int>(members.begin(), members.size()));
}

CandidateSet CandidateSet::full(Window window) {
  CandidateSet s(window);
  s.mask_.assign(s.mask_.size(), true);
  s.size_ = s.mask_.size();
  return s;
}

bool CandidateSet::contains(Int m) const {
  return window_.contains(m) && mask_[static_cast<std::size_t>(m - window_.lo)];
}

std::vector<Int> CandidateSet::members() const {
  std::vector<Int> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(window_.lo + static_cast<Int>(i));
  }
  return out;
}

CandidateSet CandidateSet::with(Int m) const {
  CandidateSet copy = *this;
  if (!window_.contains(m)) {
    throw std::out_of_range("member " + std::to_string(m) + " outside window");
  }
  auto bit = copy.mask_[static_cast<std::size_t>(m - window_.lo)];
  if (!bit) {
    bit = true;
    ++copy.size_;
  }
  return copy;
}

CandidateSet CandidateSet::without(Int m) const {
  CandidateSet copy = *this;
  if (!contains(m)) return copy;
  copy.mask_[static_cast<std::size_t>(m - window_.lo)] = false;
  --copy.size_;
  return copy;
}

CandidateSet E_set(const PrimeBasis& basis, Int n) {
  auto members = list_E(basis, n);
  return CandidateSet(Window{1, std::max<Int>(n, 1)}, members);
}

bool is_pairwise_coprime(std::span<const Int> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (std::gcd(elements[i], elements[j]) != 1) return false;
    }
  }
  return true;
}

namespace {

using Row = std::vector<std::uint64_t>;

// Depth-first search over candidates in ascending order, so the first
// clique found is the lexicographically least one. Candidates sharing a
// colour are pairwise non-coprime, so the number of distinct colours among
// the candidates bounds how far a clique can still grow.
class CliqueSearch {
 public:
  CliqueSearch(std::vector<Int> elements, int target)
      : elems_(std::move(elements)), target_(target) {
    const std::size_t n = elems_.size();
    words_ = (n + 63) / 64;
    adj_.assign(n, Row(words_, 0));
    colour_.resize(n);
    std::map<Int, int> colour_ids;
    for (std::size_t i = 0; i < n; ++i) {
      const Int x = elems_[i];
      // ±1 are coprime to everything; each gets its own colour.
      Int key = (x == 1 || x == -1) ? -(x + 3) : (x == 0 ? 0 : prime_support(x).front());
      colour_[i] = colour_ids.emplace(key, static_cast<int>(colour_ids.size())).first->second;
      for (std::size_t j = 0; j < i; ++j) {
        if (std::gcd(x, elems_[j]) == 1) {
          adj_[i][j / 64] |= std::uint64_t{1} << (j % 64);
          adj_[j][i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
    colour_seen_.assign(colour_ids.size(), 0);
  }

  std::optional<CliqueWitness> run() {
    Row all(words_, 0);
    for (std::size_t i = 0; i < elems_.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
    if (extend(all)) {
      CliqueWitness w;
      for (auto i : chosen_) w.elements.push_back(elems_[i]);
      return w;
    }
    return std::nullopt;
  }

 private:
  int colour_bound(const Row& cand) {
    ++stamp_;
    int distinct = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      for (auto bits = cand[w]; bits; bits &= bits - 1) {
        auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        auto c = static_cast<std::size_t>(colour_[i]);
        if (colour_seen_[c] != stamp_) {
          colour_seen_[c] = stamp_;
          ++distinct;
        }
      }
    }
    return distinct;
  }

  bool extend(const Row& cand) {
    const int need = target_ - static_cast<int>(chosen_.size());
    if (need == 0) return true;
    if (colour_bound(cand) < need) return false;
    for (std::size_t w = 0; w < words_; ++w) {
      for (auto bits = cand[w]; bits; bits &= bits - 1) {
        auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        Row next(words_, 0);
        // only later candidates, keeping the enumeration ascending
        for (std::size_t v = 0; v < words_; ++v) next[v] = cand[v] & adj_[i][v];
        for (std::size_t v = 0; v <= w; ++v) {
          next[v] &= v < w ? 0 : ~std::uint64_t{0} << (i % 64) << 1;
        }
        chosen_.push_back(i);
        if (extend(next)) return true;
        chosen_.pop_back();
      }
    }
    return false;
  }

  std::vector<Int> elems_;
  int target_;
  std::size_t words_ = 0;
  std::vector<Row> adj_;
  std::vector<int> colour_;
  std::vector<std::uint64_t> colour_seen_;
  std::uint64_t stamp_ = 0;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<CliqueWitness> find_coprime_clique(const CandidateSet& set, int size) {
  if (size < 1) throw std::invalid_argument("clique size must be positive");
  // Members with identical prime support are interchangeable and mutually
  // non-coprime; the smallest representative suffices for the least clique.
  std::vector<Int> reps;
  std::map<Int, bool> seen_support;
  for (Int m : set.members()) {
    if (m == 0 || m == 1 || m == -1) {
      reps.push_back(m);
      continue;
    }
    if (seen_support.emplace(radical(m), true).second) reps.push_back(m);
  }
  if (static_cast<int>(reps.size()) < size) return std::nullopt;
  return CliqueSearch(std::move(reps), size).run();
}

AdmissibilityVerdict is_admissible(const CandidateSet& set, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  AdmissibilityVerdict v;
  v.witness = find_coprime_clique(set, k + 1);
  v.admissible = !v.witness.has_value();
  return v;
}

}  // namespace coprime
