#pragma once

// Brute-force point sets. Every Minkowski operation here is the pointwise
// definition applied to all pairs, which is what the zonotope operations
// are checked against.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"
#include "logzono/zonotope.hpp"

namespace logzono {

/// Deduplicated points of a fixed dimension in lexicographic order.
class ExplicitSet {
 public:
  explicit ExplicitSet(std::size_t dim, std::vector<BitVec> points = {}) : dim_(dim), points_(std::move(points)) {
    for (const BitVec& p : points_) {
      if (p.size() != dim_) {
        throw DimensionError("point of length " + std::to_string(p.size()) + " in set of dimension " +
                             std::to_string(dim_));
      }
    }
    detail::sort_unique(points_);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<BitVec>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(const BitVec& x) const { return std::binary_search(points_.begin(), points_.end(), x); }

  bool is_subset_of(const ExplicitSet& other) const {
    return dim_ == other.dim_ && std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
  }

  friend bool operator==(const ExplicitSet&, const ExplicitSet&) = default;

 private:
  std::size_t dim_;
  std::vector<BitVec> points_;
};

enum class LogicOp { Xor, And, Or, Nand, Nor, Xnor };

inline std::string_view to_string(LogicOp op) {
  switch (op) {
    case LogicOp::Xor: return "xor";
    case LogicOp::And: return "and";
    case LogicOp::Or: return "or";
    case LogicOp::Nand: return "nand";
    case LogicOp::Nor: return "nor";
    case LogicOp::Xnor: return "xnor";
  }
  return "?";
}

inline std::optional<LogicOp> parse_logic_op(std::string_view name) {
  for (LogicOp op : {LogicOp::Xor, LogicOp::And, LogicOp::Or, LogicOp::Nand, LogicOp::Nor, LogicOp::Xnor}) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

inline BitVec apply_pointwise(LogicOp op, const BitVec& a, const BitVec& b) {
  switch (op) {
    case LogicOp::Xor: return bit_xor(a, b);
    case LogicOp::And: return bit_and(a, b);
    case LogicOp::Or: return bit_or(a, b);
    case LogicOp::Nand: return bit_nand(a, b);
    case LogicOp::Nor: return bit_nor(a, b);
    case LogicOp::Xnor: return bit_xnor(a, b);
  }
  return a;
}

/// { z1 op z2 : z1 ∈ s1, z2 ∈ s2 }
inline ExplicitSet oracle_op(LogicOp op, const ExplicitSet& s1, const ExplicitSet& s2) {
  if (s1.dim() != s2.dim()) {
    throw DimensionError("oracle_op: set dimensions " + std::to_string(s1.dim()) + " vs " + std::to_string(s2.dim()));
  }
  std::vector<BitVec> out;
  out.reserve(s1.size() * s2.size());
  for (const BitVec& a : s1) {
    for (const BitVec& b : s2) out.push_back(apply_pointwise(op, a, b));
  }
  return ExplicitSet(s1.dim(), std::move(out));
}

inline ExplicitSet oracle_not(const ExplicitSet& s) {
  std::vector<BitVec> out;
  out.reserve(s.size());
  for (const BitVec& a : s) out.push_back(~a);
  return ExplicitSet(s.dim(), std::move(out));
}

inline ExplicitSet evaluate(const LogicalZonotope& z, const EnumerationLimits& limits = {}) {
  return ExplicitSet(z.dim(), evaluate_points(z, limits));
}

/// Minkowski operation on zonotopes, dispatched by tag.
inline LogicalZonotope mink_op(LogicOp op, const LogicalZonotope& a, const LogicalZonotope& b) {
  switch (op) {
    case LogicOp::Xor: return mink_xor(a, b);
    case LogicOp::And: return mink_and(a, b);
    case LogicOp::Or: return mink_or(a, b);
    case LogicOp::Nand: return mink_nand(a, b);
    case LogicOp::Nor: return mink_nor(a, b);
    case LogicOp::Xnor: return mink_xnor(a, b);
  }
  return a;
}

}  // namespace logzono
