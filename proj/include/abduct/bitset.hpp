#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace abduct {

/// Fixed-size bit vector packed into 64-bit words. Coverage sets index
/// examples with these; the greedy cover loop lives on count_and_not.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bit_count)
      : bits_(bit_count), words_((bit_count + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  /// |this & ~other|: how many of our bits are not already in `other`.
  std::size_t count_and_not(const Bitset& other) const {
    check_size(other);
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      total += static_cast<std::size_t>(std::popcount(words_[i] & ~other.words_[i]));
    return total;
  }

  void or_with(const Bitset& other) {
    check_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void check_size(const Bitset& other) const {
    if (bits_ != other.bits_) throw std::invalid_argument("bitset size mismatch");
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace abduct
