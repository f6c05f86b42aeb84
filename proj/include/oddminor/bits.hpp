#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace oddminor::bits {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t nbits) noexcept {
  return (nbits + kWordBits - 1) / kWordBits;
}

inline bool test(std::span<const Word> row, std::size_t i) noexcept {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline void set(std::span<Word> row, std::size_t i) noexcept {
  row[i / kWordBits] |= Word{1} << (i % kWordBits);
}

inline void reset(std::span<Word> row, std::size_t i) noexcept {
  row[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

inline std::size_t count(std::span<const Word> row) noexcept {
  std::size_t c = 0;
  for (Word w : row) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) noexcept {
  const std::size_t k = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < k; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline std::size_t count_common(std::span<const Word> a, std::span<const Word> b) noexcept {
  const std::size_t k = a.size() < b.size() ? a.size() : b.size();
  std::size_t c = 0;
  for (std::size_t i = 0; i < k; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// Calls f(index) for every set bit, in increasing order.
template <class F>
void for_each(std::span<const Word> row, F&& f) {
  for (std::size_t wi = 0; wi < row.size(); ++wi) {
    Word w = row[wi];
    while (w) {
      const int b = std::countr_zero(w);
      f(wi * kWordBits + static_cast<std::size_t>(b));
      w &= w - 1;
    }
  }
}

/// Like for_each but stops as soon as f returns true. Returns whether it stopped.
template <class F>
bool any_of(std::span<const Word> row, F&& f) {
  for (std::size_t wi = 0; wi < row.size(); ++wi) {
    Word w = row[wi];
    while (w) {
      const int b = std::countr_zero(w);
      if (f(wi * kWordBits + static_cast<std::size_t>(b))) return true;
      w &= w - 1;
    }
  }
  return false;
}

}  // namespace oddminor::bits
