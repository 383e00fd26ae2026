#pragma once

// Logical matrix zonotopes { C ⊕ G_1 β_1 ⊕ ... ⊕ G_γ β_γ } and their
// Minkowski semi-tensor product.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "logzono/bitmatrix.hpp"
#include "logzono/zonotope.hpp"

namespace logzono {

class LogicalMatrixZonotope {
 public:
  explicit LogicalMatrixZonotope(BitMatrix center, std::vector<BitMatrix> generators = {})
      : center_(std::move(center)), generators_(std::move(generators)) {
    for (const BitMatrix& g : generators_) {
      if (g.rows() != center_.rows() || g.cols() != center_.cols()) {
        throw DimensionError("generator shape " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                             " differs from center shape " + std::to_string(center_.rows()) + "x" +
                             std::to_string(center_.cols()));
      }
    }
  }

  std::size_t rows() const noexcept { return center_.rows(); }
  std::size_t cols() const noexcept { return center_.cols(); }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const BitMatrix& center() const noexcept { return center_; }
  const std::vector<BitMatrix>& generators() const noexcept { return generators_; }

  friend bool operator==(const LogicalMatrixZonotope&, const LogicalMatrixZonotope&) = default;

 private:
  BitMatrix center_;
  std::vector<BitMatrix> generators_;
};

/// All member matrices, sorted and deduplicated.
inline std::vector<BitMatrix> evaluate_matrix(const LogicalMatrixZonotope& z, const EnumerationLimits& limits = {}) {
  detail::require_within_cap(z.num_generators(), limits);
  const std::uint64_t total = std::uint64_t{1} << z.num_generators();
  std::vector<BitMatrix> out;
  out.reserve(static_cast<std::size_t>(total));
  BitMatrix current = z.center();
  out.push_back(current);
  for (std::uint64_t i = 1; i < total; ++i) {
    current ^= z.generators()[static_cast<std::size_t>(std::countr_zero(i))];
    out.push_back(current);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Center C1⋉C2; generators [C1⋉G2_j ...] ++ [G1_i⋉C2 ...] ++ [G1_i⋉G2_j ...].
inline LogicalMatrixZonotope mink_stp(const LogicalMatrixZonotope& a, const LogicalMatrixZonotope& b) {
  const auto& g1 = a.generators();
  const auto& g2 = b.generators();
  std::vector<BitMatrix> gens;
  gens.reserve(g1.size() + g2.size() + g1.size() * g2.size());
  for (const BitMatrix& g : g2) gens.push_back(stp(a.center(), g));
  for (const BitMatrix& g : g1) gens.push_back(stp(g, b.center()));
  for (const BitMatrix& gi : g1) {
    for (const BitMatrix& gj : g2) gens.push_back(stp(gi, gj));
  }
  return LogicalMatrixZonotope(stp(a.center(), b.center()), std::move(gens));
}

}  // namespace logzono
