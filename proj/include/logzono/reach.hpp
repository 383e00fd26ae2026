#pragma once

// N-step reachability with either backend, plus the containment check
// between them.
//
// The zonotope backend keeps one scalar logical zonotope per state
// variable. Initial and input sets are enclosed and reduced before the first
// step; afterwards each update rule is evaluated with Minkowski operations.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logzono/dsl.hpp"
#include "logzono/errors.hpp"
#include "logzono/exact_reach.hpp"
#include "logzono/explicit_set.hpp"
#include "logzono/zonotope.hpp"

namespace logzono {

enum class Backend { Zonotope, Exact };

inline std::string to_string(Backend b) { return b == Backend::Zonotope ? "zonotope" : "exact"; }

struct ReachOptions {
  EnumerationLimits limits;
  ExactLimits exact;
  /// Scalar zonotopes with more generators than this are reduced.
  std::size_t reduce_threshold = 8;
};

struct ReachStep {
  /// Zonotope backend only: one scalar zonotope per state variable.
  std::vector<LogicalZonotope> zonotopes;
  /// Exact backend only.
  std::optional<ExplicitSet> states;
  /// Values each state variable takes at this step.
  std::vector<dsl::Domain> marginals;
  /// Exact: |R_k|. Zonotope: product of the per-variable point counts
  /// (saturates at UINT64_MAX).
  std::uint64_t joint_size = 0;
  /// Sum over state variables of the number of values each one takes.
  std::size_t table_size = 0;
  double seconds = 0.0;
};

struct ReachResult {
  Backend backend = Backend::Zonotope;
  std::size_t horizon = 0;
  std::vector<std::string> state_vars;
  /// Entries k = 0..horizon.
  std::vector<ReachStep> steps;
};

namespace detail {

inline dsl::Domain scalar_domain(const LogicalZonotope& z) {
  const LogicalZonotope r = reduce_scalar(z);
  if (r.num_generators() > 0) return dsl::Domain::Both;
  return r.center()[0] ? dsl::Domain::One : dsl::Domain::Zero;
}

inline std::size_t domain_size(dsl::Domain d) { return d == dsl::Domain::Both ? 2 : 1; }

inline void fill_sizes(ReachStep& s) {
  s.table_size = 0;
  for (dsl::Domain d : s.marginals) s.table_size += domain_size(d);
}

inline LogicalZonotope enclose_domain(dsl::Domain d, const EnumerationLimits& limits) {
  std::vector<BitVec> pts;
  for (bool b : dsl::domain_values(d)) pts.emplace_back(1, b);
  return reduce(enclose_points(pts), limits);
}

inline ReachStep zonotope_record(std::vector<LogicalZonotope> zs, double seconds) {
  ReachStep s;
  s.seconds = seconds;
  s.joint_size = 1;
  for (const LogicalZonotope& z : zs) {
    const dsl::Domain d = scalar_domain(z);
    s.marginals.push_back(d);
    if (d == dsl::Domain::Both) {
      s.joint_size = s.joint_size > std::numeric_limits<std::uint64_t>::max() / 2
                         ? std::numeric_limits<std::uint64_t>::max()
                         : s.joint_size * 2;
    }
  }
  fill_sizes(s);
  s.zonotopes = std::move(zs);
  return s;
}

inline ReachStep exact_record(ExplicitSet set, double seconds) {
  ReachStep s;
  s.seconds = seconds;
  s.joint_size = set.size();
  const std::size_t n = set.dim();
  std::vector<std::uint8_t> mask(n, 0);
  for (const BitVec& x : set) {
    for (std::size_t i = 0; i < n; ++i) mask[i] |= x[i] ? 2 : 1;
  }
  for (std::uint8_t m : mask) s.marginals.push_back(m == 0 ? dsl::Domain::Zero : static_cast<dsl::Domain>(m));
  fill_sizes(s);
  s.states = std::move(set);
  return s;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Initial per-variable zonotopes: enclose, reduce, then split by variable.
inline std::vector<LogicalZonotope> initial_zonotopes(const dsl::SystemSpec& sys, const EnumerationLimits& limits) {
  std::vector<LogicalZonotope> out;
  if (!sys.init_points.empty()) {
    const LogicalZonotope joint = reduce(enclose_points(sys.init_points), limits);
    for (std::size_t i = 0; i < sys.num_states(); ++i) out.push_back(reduce_scalar(project(joint, i)));
    return out;
  }
  for (dsl::Domain d : sys.init_domains) out.push_back(enclose_domain(d, limits));
  return out;
}

}  // namespace detail

/// Advances per-variable zonotopes by one step under the inputs of `step`.
inline std::vector<LogicalZonotope> zonotope_successors(const dsl::SystemSpec& sys,
                                                        const std::vector<LogicalZonotope>& state, std::size_t step,
                                                        const ReachOptions& options = {}) {
  std::vector<LogicalZonotope> inputs;
  inputs.reserve(sys.num_inputs());
  for (std::size_t i = 0; i < sys.num_inputs(); ++i) {
    inputs.push_back(detail::enclose_domain(sys.input_domain(step, i), options.limits));
  }
  std::vector<LogicalZonotope> next(sys.num_states());
  dsl::step_system(sys, state, inputs, next, dsl::ZonotopeOps{1, options.reduce_threshold});
  for (LogicalZonotope& z : next) {
    if (z.num_generators() > options.reduce_threshold) z = reduce_scalar(z);
  }
  return next;
}

inline ReachResult reach(const dsl::SystemSpec& sys, std::size_t steps, Backend backend,
                         const ReachOptions& options = {}) {
  ReachResult result;
  result.backend = backend;
  result.horizon = steps;
  result.state_vars = sys.state_vars;
  result.steps.reserve(steps + 1);

  if (backend == Backend::Zonotope) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<LogicalZonotope> current = detail::initial_zonotopes(sys, options.limits);
    result.steps.push_back(detail::zonotope_record(current, detail::seconds_since(t0)));
    for (std::size_t k = 0; k < steps; ++k) {
      t0 = std::chrono::steady_clock::now();
      current = zonotope_successors(sys, current, k, options);
      result.steps.push_back(detail::zonotope_record(current, detail::seconds_since(t0)));
    }
    return result;
  }

  if (sys.num_states() > options.exact.state_bits) {
    throw CapacityError("state-space budget", options.exact.state_bits, sys.num_states());
  }
  auto t0 = std::chrono::steady_clock::now();
  ExplicitSet current(sys.num_states(), sys.initial_states());
  result.steps.push_back(detail::exact_record(current, detail::seconds_since(t0)));
  for (std::size_t k = 0; k < steps; ++k) {
    t0 = std::chrono::steady_clock::now();
    current = exact_successors(sys, current, k, options.exact);
    result.steps.push_back(detail::exact_record(current, detail::seconds_since(t0)));
  }
  return result;
}

inline double total_seconds(const ReachResult& r) {
  double t = 0.0;
  for (const ReachStep& s : r.steps) t += s.seconds;
  return t;
}

struct ContainmentViolation {
  std::size_t step = 0;
  BitVec state;
};

struct StepComparison {
  std::uint64_t zonotope_joint = 0;
  std::uint64_t exact_joint = 0;
  std::size_t zonotope_table = 0;
  std::size_t exact_table = 0;
};

struct ContainmentReport {
  std::vector<ContainmentViolation> violations;
  std::vector<StepComparison> steps;

  bool holds() const noexcept { return violations.empty(); }
};

/// Checks that every exact state at every step lies in the zonotope sets,
/// variable by variable.
inline ContainmentReport check_containment(const ReachResult& zono, const ReachResult& exact) {
  if (zono.backend != Backend::Zonotope || exact.backend != Backend::Exact) {
    throw UsageError("check_containment expects a zonotope result and an exact result");
  }
  if (zono.horizon != exact.horizon || zono.steps.size() != exact.steps.size()) {
    throw UsageError("check_containment: horizons differ (" + std::to_string(zono.horizon) + " vs " +
                     std::to_string(exact.horizon) + ")");
  }
  if (zono.state_vars != exact.state_vars) throw UsageError("check_containment: results come from different systems");

  ContainmentReport report;
  for (std::size_t k = 0; k < zono.steps.size(); ++k) {
    const ReachStep& zs = zono.steps[k];
    const ReachStep& es = exact.steps[k];
    for (const BitVec& x : *es.states) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!contains(zs.zonotopes[i], BitVec(1, x[i]))) {
          report.violations.push_back({k, x});
          break;
        }
      }
    }
    report.steps.push_back({zs.joint_size, es.joint_size, zs.table_size, es.table_size});
  }
  return report;
}

/// Steps at which a state satisfying `predicate` may be reachable. On the
/// exact backend this is decided per state; on the zonotope backend the
/// predicate is evaluated with Minkowski semantics, so a hit is possible
/// rather than certain.
inline std::vector<std::size_t> forbidden_hits(const ReachResult& r, const dsl::Expr& predicate) {
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const ReachStep& s = r.steps[k];
    bool hit = false;
    if (r.backend == Backend::Exact) {
      std::vector<bool> state(r.state_vars.size());
      for (const BitVec& x : *s.states) {
        for (std::size_t i = 0; i < state.size(); ++i) state[i] = x[i];
        dsl::Frame<bool> frame{&state, &state, &state};
        if (dsl::fold_expr<bool>(predicate, frame, dsl::PointOps{})) {
          hit = true;
          break;
        }
      }
    } else {
      dsl::Frame<LogicalZonotope> frame{&s.zonotopes, &s.zonotopes, &s.zonotopes};
      const LogicalZonotope z = dsl::fold_expr<LogicalZonotope>(predicate, frame, dsl::ZonotopeOps{1, std::size_t{8}});
      hit = contains(z, BitVec(1, true));
    }
    if (hit) hits.push_back(k);
  }
  return hits;
}

}  // namespace logzono
