#pragma once

// Logical zonotopes: sets { c ⊕ g_1 β_1 ⊕ ... ⊕ g_γ β_γ : β ∈ {0,1}^γ }
// over binary vectors, with Minkowski logical operations on the generators.
//
// XOR, NOT and XNOR are exact. AND, NAND, OR and NOR return an enclosure of
// the pointwise result whose generator count is γ1 + γ2 + γ1·γ2.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logzono/bitmatrix.hpp"
#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"

namespace logzono {

/// Default cap on the generator count for anything that enumerates 2^γ points.
inline constexpr std::size_t kDefaultGammaCap = 20;

struct EnumerationLimits {
  std::size_t gamma_cap = kDefaultGammaCap;
};

class LogicalZonotope {
 public:
  LogicalZonotope() = default;

  explicit LogicalZonotope(BitVec center, std::vector<BitVec> generators = {})
      : center_(std::move(center)), generators_(std::move(generators)) {
    for (const BitVec& g : generators_) {
      if (g.size() != center_.size()) {
        throw DimensionError("generator length " + std::to_string(g.size()) +
                             " differs from center length " + std::to_string(center_.size()));
      }
    }
  }

  /// {c}
  static LogicalZonotope point(BitVec c) { return LogicalZonotope(std::move(c)); }

  /// The scalar zonotope <0, {1}> holding both bits.
  static LogicalZonotope full_bit() { return LogicalZonotope(BitVec(1, false), {BitVec(1, true)}); }
  static LogicalZonotope bit(bool b) { return LogicalZonotope(BitVec(1, b)); }

  std::size_t dim() const noexcept { return center_.size(); }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const BitVec& center() const noexcept { return center_; }
  const std::vector<BitVec>& generators() const noexcept { return generators_; }

  friend bool operator==(const LogicalZonotope&, const LogicalZonotope&) = default;

 private:
  BitVec center_;
  std::vector<BitVec> generators_;
};

namespace detail {

inline void require_same_dim(const LogicalZonotope& a, const LogicalZonotope& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": zonotope dimensions " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

inline void require_within_cap(std::size_t gamma, const EnumerationLimits& limits) {
  if (gamma > limits.gamma_cap) throw CapacityError("gamma cap", limits.gamma_cap, gamma);
}

inline void sort_unique(std::vector<BitVec>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

/// All points c ⊕ Gβ, enumerated in Gray-code order, sorted and deduplicated.
inline std::vector<BitVec> enumerate_points(const BitVec& center, std::span<const BitVec> gens) {
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  std::vector<BitVec> points;
  points.reserve(static_cast<std::size_t>(total));
  BitVec current = center;
  points.push_back(current);
  for (std::uint64_t i = 1; i < total; ++i) {
    current ^= gens[static_cast<std::size_t>(std::countr_zero(i))];
    points.push_back(current);
  }
  sort_unique(points);
  return points;
}

}  // namespace detail

/// Every point of the zonotope, sorted lexicographically and deduplicated.
inline std::vector<BitVec> evaluate_points(const LogicalZonotope& z, const EnumerationLimits& limits = {}) {
  detail::require_within_cap(z.num_generators(), limits);
  return detail::enumerate_points(z.center(), z.generators());
}

inline LogicalZonotope mink_xor(const LogicalZonotope& a, const LogicalZonotope& b) {
  detail::require_same_dim(a, b, "mink_xor");
  std::vector<BitVec> gens;
  gens.reserve(a.num_generators() + b.num_generators());
  gens.insert(gens.end(), a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return LogicalZonotope(a.center() ^ b.center(), std::move(gens));
}

inline LogicalZonotope mink_not(const LogicalZonotope& z) { return LogicalZonotope(~z.center(), z.generators()); }

inline LogicalZonotope mink_xnor(const LogicalZonotope& a, const LogicalZonotope& b) {
  return mink_not(mink_xor(a, b));
}

/// Generators are laid out as [c1∧g2_j ...] ++ [c2∧g1_i ...] ++ [g1_i∧g2_j ...]
/// (i outer, j inner).
inline LogicalZonotope mink_and(const LogicalZonotope& a, const LogicalZonotope& b) {
  detail::require_same_dim(a, b, "mink_and");
  const auto& g1 = a.generators();
  const auto& g2 = b.generators();
  std::vector<BitVec> gens;
  gens.reserve(g1.size() + g2.size() + g1.size() * g2.size());
  for (const BitVec& g : g2) gens.push_back(a.center() & g);
  for (const BitVec& g : g1) gens.push_back(b.center() & g);
  for (const BitVec& gi : g1) {
    for (const BitVec& gj : g2) gens.push_back(gi & gj);
  }
  return LogicalZonotope(a.center() & b.center(), std::move(gens));
}

inline LogicalZonotope mink_nand(const LogicalZonotope& a, const LogicalZonotope& b) {
  return mink_not(mink_and(a, b));
}

inline LogicalZonotope mink_or(const LogicalZonotope& a, const LogicalZonotope& b) {
  return mink_nand(mink_not(a), mink_not(b));
}

inline LogicalZonotope mink_nor(const LogicalZonotope& a, const LogicalZonotope& b) {
  return mink_not(mink_or(a, b));
}

/// Membership by solving G·β = x ⊕ c over GF(2); no enumeration.
inline bool contains(const LogicalZonotope& z, const BitVec& x) {
  if (x.size() != z.dim()) {
    throw DimensionError("contains: point length " + std::to_string(x.size()) + " vs zonotope dimension " +
                         std::to_string(z.dim()));
  }
  BitVec target = x ^ z.center();
  if (target.none()) return true;
  if (z.num_generators() == 0) return false;
  BitMatrix g(z.dim(), z.num_generators());
  for (std::size_t j = 0; j < z.num_generators(); ++j) {
    const BitVec& gen = z.generators()[j];
    for (std::size_t i = 0; i < z.dim(); ++i) {
      if (gen[i]) g.set(i, j, true);
    }
  }
  return gf2_solve(g, target).has_value();
}

/// Center s_1, generators s_i ⊕ s_1 for i = 2..p. Contains every input point.
inline LogicalZonotope enclose_points(std::span<const BitVec> points) {
  if (points.empty()) throw EmptyInputError("enclose_points: no points given");
  const BitVec& c = points.front();
  std::vector<BitVec> gens;
  gens.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != c.size()) {
      throw DimensionError("enclose_points: point " + std::to_string(i) + " has length " +
                           std::to_string(points[i].size()) + ", expected " + std::to_string(c.size()));
    }
    gens.push_back(points[i] ^ c);
  }
  return LogicalZonotope(c, std::move(gens));
}

/// Drops generators, scanning in index order, whenever the drop leaves the
/// evaluated point set unchanged. The center is kept.
inline LogicalZonotope reduce(const LogicalZonotope& z, const EnumerationLimits& limits = {}) {
  detail::require_within_cap(z.num_generators(), limits);
  const std::vector<BitVec> reference = detail::enumerate_points(z.center(), z.generators());
  std::vector<BitVec> kept = z.generators();
  std::size_t pos = 0;  // position of the original generator i inside `kept`
  for (std::size_t i = 0; i < z.num_generators(); ++i) {
    std::vector<BitVec> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
    if (detail::enumerate_points(z.center(), trial) == reference) {
      kept = std::move(trial);
    } else {
      ++pos;
    }
  }
  return LogicalZonotope(z.center(), std::move(kept));
}

/// Reduction for one-dimensional zonotopes. The point set is either {c} or
/// {0,1}, so at most one generator is needed; gives the same result as reduce().
inline LogicalZonotope reduce_scalar(const LogicalZonotope& z) {
  if (z.dim() != 1) throw DimensionError("reduce_scalar: dimension " + std::to_string(z.dim()) + " is not 1");
  const bool spans = std::any_of(z.generators().begin(), z.generators().end(),
                                 [](const BitVec& g) { return g.any(); });
  if (!spans) return LogicalZonotope(z.center());
  return LogicalZonotope(z.center(), {BitVec(1, true)});
}

/// Component `i` of an n-dimensional zonotope as a scalar zonotope sharing
/// the generator indices.
inline LogicalZonotope project(const LogicalZonotope& z, std::size_t i) {
  if (i >= z.dim()) throw DimensionError("project: component " + std::to_string(i) + " out of range");
  std::vector<BitVec> gens;
  gens.reserve(z.num_generators());
  for (const BitVec& g : z.generators()) gens.emplace_back(1, g[i]);
  return LogicalZonotope(BitVec(1, z.center()[i]), std::move(gens));
}

}  // namespace logzono
