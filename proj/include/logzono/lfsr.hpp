#pragma once

// Linear feedback shift registers over bits or scalar logical zonotopes, and
// key recovery by zonotope containment pruning.
//
// Register convention (1-based cells A[1..l]): at each clock the output is
// the XOR of the output taps, the feedback is the XOR of the feedback taps,
// every cell moves one index up (A[l] falls off) and A[1] takes the feedback.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"
#include "logzono/zonotope.hpp"

namespace logzono {

struct LfsrSpec {
  std::size_t length = 60;
  std::vector<std::size_t> feedback{60, 59, 58, 14};
  std::vector<std::size_t> output{60, 59};

  /// 60 cells, feedback A[60]^A[59]^A[58]^A[14], output A[60]^A[59].
  static LfsrSpec standard() { return {}; }

  /// Same tap layout as standard() for another length; the low feedback
  /// tap is scaled proportionally (14 at length 60).
  static LfsrSpec scaled(std::size_t length) {
    if (length < 4) throw std::invalid_argument("LfsrSpec::scaled needs length >= 4");
    const std::size_t low = std::max<std::size_t>(1, (14 * length + 30) / 60);
    return {length, {length, length - 1, length - 2, low}, {length, length - 1}};
  }

  void validate() const {
    if (length == 0) throw std::invalid_argument("LFSR length must be positive");
    auto check = [this](const std::vector<std::size_t>& taps, const char* what) {
      if (taps.empty()) throw std::invalid_argument(std::string(what) + " taps are empty");
      for (std::size_t t : taps) {
        if (t < 1 || t > length) {
          throw std::invalid_argument(std::string(what) + " tap " + std::to_string(t) + " outside [1, " +
                                      std::to_string(length) + "]");
        }
      }
    };
    check(feedback, "feedback");
    check(output, "output");
  }

  friend bool operator==(const LfsrSpec&, const LfsrSpec&) = default;
};

inline bool cell_xor(bool a, bool b) { return a != b; }

/// Scalar cells stay at one generator at most.
inline LogicalZonotope cell_xor(const LogicalZonotope& a, const LogicalZonotope& b) {
  return reduce_scalar(mink_xor(a, b));
}

/// First `len` output cells of the register loaded with `key` (key[0] is A[1]).
template <class Cell>
std::vector<Cell> lfsr_keystream(const LfsrSpec& spec, std::span<const Cell> key, std::size_t len) {
  spec.validate();
  if (key.size() != spec.length) {
    throw DimensionError("lfsr_keystream: key has " + std::to_string(key.size()) + " cells, register has " +
                         std::to_string(spec.length));
  }
  const std::size_t l = spec.length;
  std::vector<Cell> reg(key.begin(), key.end());
  std::size_t head = 0;  // physical slot of A[1]
  auto cell = [&](std::size_t tap) -> Cell { return reg[(head + tap - 1) % l]; };
  auto fold = [&](const std::vector<std::size_t>& taps) {
    Cell acc = cell(taps.front());
    for (std::size_t i = 1; i < taps.size(); ++i) acc = cell_xor(acc, cell(taps[i]));
    return acc;
  };

  std::vector<Cell> out;
  out.reserve(len);
  for (std::size_t t = 0; t < len; ++t) {
    out.push_back(fold(spec.output));
    Cell fb = fold(spec.feedback);
    head = (head + l - 1) % l;
    reg[head] = std::move(fb);
  }
  return out;
}

/// Bit-level keystream; agrees with the generic version on concrete keys.
inline BitVec lfsr_keystream(const LfsrSpec& spec, const BitVec& key, std::size_t len) {
  spec.validate();
  const std::size_t l = spec.length;
  if (key.size() != l) {
    throw DimensionError("lfsr_keystream: key has " + std::to_string(key.size()) + " bits, register has " +
                         std::to_string(l));
  }
  std::vector<char> keycells(l);
  for (std::size_t i = 0; i < l; ++i) keycells[i] = key[i] ? 1 : 0;
  BitVec out(len);
  std::size_t head = 0;
  auto fold = [&](const std::vector<std::size_t>& taps) {
    char acc = 0;
    for (std::size_t t : taps) acc ^= keycells[(head + t - 1) % l];
    return acc;
  };
  for (std::size_t t = 0; t < len; ++t) {
    out.set(t, fold(spec.output) != 0);
    const char fb = fold(spec.feedback);
    head = (head + l - 1) % l;
    keycells[head] = fb;
  }
  return out;
}

struct CipherInstance {
  BitVec message;
  BitVec ciphertext;
};

inline CipherInstance encrypt(const LfsrSpec& spec, const BitVec& key, const BitVec& message) {
  return {message, lfsr_keystream(spec, key, message.size()) ^ message};
}

/// Random key and message from a seeded generator; returns the key too.
inline std::pair<BitVec, CipherInstance> random_instance(const LfsrSpec& spec, std::size_t message_len,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  BitVec key(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) key.set(i, coin(rng));
  BitVec message(message_len);
  for (std::size_t i = 0; i < message_len; ++i) message.set(i, coin(rng));
  return {key, encrypt(spec, key, message)};
}

class SearchFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ComboOutcome { NotTried, Pruned, Rejected, Verified };

struct KeySearchOptions {
  /// Number of leading key bits fixed by the outer enumeration.
  std::size_t seed_bits = 2;
};

struct KeySearchReport {
  BitVec key;
  std::size_t combo = 0;
  /// One entry per assignment of the seed bits; bit j of the assignment
  /// (most significant first) goes to A[j+1].
  std::vector<ComboOutcome> outcomes;
  std::size_t keystream_runs = 0;
};

namespace detail {

/// True when every ciphertext bit lies in its zonotope keystream ⊕ message.
inline bool ciphertext_consistent(const LfsrSpec& spec, const std::vector<LogicalZonotope>& key,
                                  const CipherInstance& inst) {
  const std::vector<LogicalZonotope> stream =
      lfsr_keystream<LogicalZonotope>(spec, key, inst.message.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const LogicalZonotope cipher_cell = mink_xor(stream[i], LogicalZonotope::bit(inst.message[i]));
    if (!contains(cipher_cell, BitVec(1, inst.ciphertext[i]))) return false;
  }
  return true;
}

}  // namespace detail

/// Recovers a key that reproduces `inst`. Cells beyond the seed bits start
/// as the zonotope enclosing {0, 1}; each is then fixed to 0 and flipped to 1
/// when the ciphertext falls outside the resulting zonotopes.
inline KeySearchReport key_search(const LfsrSpec& spec, const CipherInstance& inst, const KeySearchOptions& options = {}) {
  spec.validate();
  if (inst.message.size() != inst.ciphertext.size()) {
    throw DimensionError("key_search: message and ciphertext lengths differ");
  }
  const std::size_t l = spec.length;
  const std::size_t seed = std::min(options.seed_bits, l);
  if (seed >= 63) throw std::invalid_argument("key_search: too many seed bits");
  const std::vector<BitVec> both{BitVec(1, false), BitVec(1, true)};
  const LogicalZonotope unknown = enclose_points(both);

  KeySearchReport report;
  const std::size_t combos = std::size_t{1} << seed;
  report.outcomes.assign(combos, ComboOutcome::NotTried);
  for (std::size_t combo = 0; combo < combos; ++combo) {
    std::vector<LogicalZonotope> key(l, unknown);
    for (std::size_t j = 0; j < seed; ++j) key[j] = LogicalZonotope::bit(((combo >> (seed - 1 - j)) & 1U) != 0);
    ++report.keystream_runs;
    if (!detail::ciphertext_consistent(spec, key, inst)) {
      report.outcomes[combo] = ComboOutcome::Pruned;
      continue;
    }
    for (std::size_t j = seed; j < l; ++j) {
      key[j] = LogicalZonotope::bit(false);
      ++report.keystream_runs;
      if (!detail::ciphertext_consistent(spec, key, inst)) key[j] = LogicalZonotope::bit(true);
    }
    BitVec candidate(l);
    for (std::size_t j = 0; j < l; ++j) candidate.set(j, key[j].center()[0]);
    if ((lfsr_keystream(spec, candidate, inst.message.size()) ^ inst.message) == inst.ciphertext) {
      report.outcomes[combo] = ComboOutcome::Verified;
      report.key = std::move(candidate);
      report.combo = combo;
      return report;
    }
    report.outcomes[combo] = ComboOutcome::Rejected;
  }
  throw SearchFailed("no key candidate reproduces the ciphertext (" + std::to_string(inst.message.size()) +
                     " message bits for a " + std::to_string(l) + "-bit register)");
}

}  // namespace logzono
