#pragma once

// Packed binary vectors over GF(2).
//
// Positions are 0-based in the API. The text form is a string of '0'/'1'
// where the leftmost character is position 0 (index 1 in 1-based notation).

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logzono/errors.hpp"

namespace logzono {

class BitVec {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitVec() = default;

  explicit BitVec(std::size_t len, bool value = false)
      : len_(len), words_(word_count(len), value ? ~word_type{0} : word_type{0}) {
    clear_padding();
  }

  static BitVec zeros(std::size_t len) { return BitVec(len, false); }
  static BitVec ones(std::size_t len) { return BitVec(len, true); }

  static BitVec from_string(std::string_view text) {
    BitVec v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch == '1') {
        v.set(i, true);
      } else if (ch != '0') {
        throw FormatError("invalid bitstring character '" + std::string(1, ch) + "' in \"" +
                          std::string(text) + "\"");
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / word_bits] >> (i % word_bits)) & 1U;
  }
  bool operator[](std::size_t i) const noexcept { return get(i); }

  void set(std::size_t i, bool value) noexcept {
    const word_type mask = word_type{1} << (i % word_bits);
    if (value) {
      words_[i / word_bits] |= mask;
    } else {
      words_[i / word_bits] &= ~mask;
    }
  }

  void flip(std::size_t i) noexcept { words_[i / word_bits] ^= word_type{1} << (i % word_bits); }

  bool any() const noexcept {
    for (word_type w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  bool none() const noexcept { return !any(); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (word_type w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::span<const word_type> words() const noexcept { return words_; }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  BitVec& operator^=(const BitVec& other) {
    require_same_size(other, "xor");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  BitVec& operator&=(const BitVec& other) {
    require_same_size(other, "and");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  BitVec& operator|=(const BitVec& other) {
    require_same_size(other, "or");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  /// Complement in place; padding stays zero.
  BitVec& invert() noexcept {
    for (word_type& w : words_) w = ~w;
    clear_padding();
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
  friend BitVec operator~(BitVec a) { return a.invert(); }

  friend bool operator==(const BitVec& a, const BitVec& b) noexcept {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }

  /// Lexicographic order on the text form; shorter vectors sort first.
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) noexcept {
    if (a.len_ != b.len_) return a.len_ <=> b.len_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const word_type diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        const word_type low = diff & (~diff + 1);
        return (a.words_[i] & low) != 0 ? std::strong_ordering::greater
                                        : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(len_);
    for (word_type w : words_) h ^= std::hash<word_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  static std::size_t word_count(std::size_t len) noexcept { return (len + word_bits - 1) / word_bits; }

  void clear_padding() noexcept {
    const std::size_t tail = len_ % word_bits;
    if (tail != 0 && !words_.empty()) words_.back() &= (word_type{1} << tail) - 1;
  }

  void require_same_size(const BitVec& other, const char* op) const {
    if (len_ != other.len_) {
      throw DimensionError(std::string(op) + ": length " + std::to_string(len_) + " vs " +
                           std::to_string(other.len_));
    }
  }

  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

inline BitVec bit_xor(const BitVec& a, const BitVec& b) { return a ^ b; }
inline BitVec bit_and(const BitVec& a, const BitVec& b) { return a & b; }
inline BitVec bit_or(const BitVec& a, const BitVec& b) { return a | b; }
inline BitVec bit_not(const BitVec& a) { return ~a; }
inline BitVec bit_nand(const BitVec& a, const BitVec& b) { return ~(a & b); }
inline BitVec bit_nor(const BitVec& a, const BitVec& b) { return ~(a | b); }
inline BitVec bit_xnor(const BitVec& a, const BitVec& b) { return ~(a ^ b); }

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

}  // namespace logzono
