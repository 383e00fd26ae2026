#pragma once

// Shared generators and brute-force reference implementations for tests.
// The references work on strings and plain loops so they share no code
// with the library.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "logzono.hpp"

namespace testsupport {

using logzono::BitVec;
using logzono::LogicalZonotope;
using Rng = std::mt19937_64;
using PointSet = std::set<std::string>;

inline BitVec random_bits(Rng& rng, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, (rng() & 1U) != 0);
  return v;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline LogicalZonotope random_zonotope(Rng& rng, std::size_t n, std::size_t max_gamma) {
  std::vector<BitVec> gens;
  const std::size_t gamma = uniform(rng, 0, max_gamma);
  for (std::size_t i = 0; i < gamma; ++i) gens.push_back(random_bits(rng, n));
  return LogicalZonotope(random_bits(rng, n), std::move(gens));
}

/// c ⊕ Σ β_i g_i for every β in {0,1}^γ, computed character by character.
inline PointSet brute_points(const LogicalZonotope& z) {
  // Closure under "xor with a generator"; size stays bounded by 2^n.
  PointSet out{z.center().to_string()};
  for (const BitVec& v : z.generators()) {
    const std::string g = v.to_string();
    PointSet grown = out;
    for (const std::string& p : out) {
      std::string q = p;
      for (std::size_t k = 0; k < q.size(); ++k) q[k] = (q[k] == g[k]) ? '0' : '1';
      grown.insert(q);
    }
    out = std::move(grown);
  }
  return out;
}

inline PointSet to_point_set(const std::vector<BitVec>& pts) {
  PointSet out;
  for (const BitVec& p : pts) out.insert(p.to_string());
  return out;
}

inline PointSet to_point_set(const logzono::ExplicitSet& s) { return to_point_set(s.points()); }

using BitFn = std::function<bool(bool, bool)>;

inline PointSet pairwise(const PointSet& a, const PointSet& b, const BitFn& f) {
  PointSet out;
  for (const std::string& x : a) {
    for (const std::string& y : b) {
      std::string r(x.size(), '0');
      for (std::size_t k = 0; k < x.size(); ++k) r[k] = f(x[k] == '1', y[k] == '1') ? '1' : '0';
      out.insert(r);
    }
  }
  return out;
}

inline PointSet complement_each(const PointSet& a) {
  PointSet out;
  for (std::string x : a) {
    for (char& ch : x) ch = ch == '1' ? '0' : '1';
    out.insert(x);
  }
  return out;
}

inline bool is_subset(const PointSet& small, const PointSet& big) {
  for (const std::string& x : small) {
    if (!big.contains(x)) return false;
  }
  return true;
}

inline const BitFn& bit_fn(logzono::LogicOp op) {
  static const BitFn fx = [](bool a, bool b) { return a != b; };
  static const BitFn fa = [](bool a, bool b) { return a && b; };
  static const BitFn fo = [](bool a, bool b) { return a || b; };
  static const BitFn fna = [](bool a, bool b) { return !(a && b); };
  static const BitFn fno = [](bool a, bool b) { return !(a || b); };
  static const BitFn fxn = [](bool a, bool b) { return a == b; };
  switch (op) {
    case logzono::LogicOp::Xor: return fx;
    case logzono::LogicOp::And: return fa;
    case logzono::LogicOp::Or: return fo;
    case logzono::LogicOp::Nand: return fna;
    case logzono::LogicOp::Nor: return fno;
    case logzono::LogicOp::Xnor: return fxn;
  }
  return fx;
}

/// Naive STP from the index formula: (M ⊗ I_a)(N ⊗ I_b) entry by entry.
inline std::vector<std::vector<int>> naive_stp(const std::vector<std::vector<int>>& m,
                                               const std::vector<std::vector<int>>& n) {
  const std::size_t mr = m.size(), mc = m[0].size(), nr = n.size(), nc = n[0].size();
  std::size_t s = mc;
  while (s % nr != 0) s += mc;
  const std::size_t a = s / mc, b = s / nr;
  auto mk = [&](std::size_t i, std::size_t j) { return (i % a == j % a) ? m[i / a][j / a] : 0; };
  auto nk = [&](std::size_t i, std::size_t j) { return (i % b == j % b) ? n[i / b][j / b] : 0; };
  std::vector<std::vector<int>> out(mr * a, std::vector<int>(nc * b, 0));
  for (std::size_t i = 0; i < mr * a; ++i) {
    for (std::size_t j = 0; j < nc * b; ++j) {
      int acc = 0;
      for (std::size_t k = 0; k < s; ++k) acc ^= mk(i, k) & nk(k, j);
      out[i][j] = acc;
    }
  }
  return out;
}

inline std::vector<std::vector<int>> to_ints(const logzono::BitMatrix& m) {
  std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.get(i, j) ? 1 : 0;
  }
  return out;
}

inline logzono::BitMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  logzono::BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, (rng() & 1U) != 0);
  }
  return m;
}

/// Random expression text over `vars` with at most `depth` operator levels.
inline std::string random_expr(Rng& rng, const std::vector<std::string>& vars, std::size_t depth, bool xor_only = false) {
  if (depth == 0 || uniform(rng, 0, 3) == 0) {
    if (uniform(rng, 0, 9) == 0) return uniform(rng, 0, 1) ? "1" : "0";
    return vars[uniform(rng, 0, vars.size() - 1)];
  }
  static const char* const all_ops[] = {"^", "&", "|", "nand", "nor", "xnor"};
  static const char* const lin_ops[] = {"^", "xnor"};
  const std::size_t pick = uniform(rng, 0, xor_only ? 2 : 6);
  if (pick == (xor_only ? 2U : 6U)) return "!(" + random_expr(rng, vars, depth - 1, xor_only) + ")";
  const char* op = xor_only ? lin_ops[pick] : all_ops[pick];
  return "(" + random_expr(rng, vars, depth - 1, xor_only) + " " + op + " " + random_expr(rng, vars, depth - 1, xor_only) +
         ")";
}

}  // namespace testsupport
