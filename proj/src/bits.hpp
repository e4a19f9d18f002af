#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace coprime::detail {

// Fixed-capacity bitset with cheap copies, used on the hot search paths.
template <std::size_t W>
struct Bits {
  static constexpr std::size_t kCapacity = W * 64;
  std::array<std::uint64_t, W> w{};

  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1U; }

  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  /// Bits strictly above position i.
  Bits above(std::size_t i) const {
    Bits r = *this;
    const std::size_t word = i / 64;
    for (std::size_t j = 0; j < word; ++j) r.w[j] = 0;
    r.w[word] &= ~std::uint64_t{0} << (i % 64) << 1;
    return r;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < W; ++i) w[i] |= o.w[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < W; ++i) w[i] &= o.w[i];
    return *this;
  }
  Bits& and_not(const Bits& o) {
    for (std::size_t i = 0; i < W; ++i) w[i] &= ~o.w[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend bool operator==(const Bits&, const Bits&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i) {
      for (auto x = w[i]; x; x &= x - 1) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      }
    }
  }
  /// Index of the lowest set bit, or kCapacity when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < W; ++i) {
      if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    }
    return kCapacity;
  }
};

}  // namespace coprime::detail
