#pragma once

// Exact reachable sets by enumeration: R_{k+1} = { f(x, u) : x ∈ R_k, u ∈ U_k }.

#include <cstddef>
#include <vector>

#include "logzono/dsl.hpp"
#include "logzono/errors.hpp"
#include "logzono/explicit_set.hpp"

namespace logzono {

struct ExactLimits {
  /// Largest number of state variables (the state space has 2^n points).
  std::size_t state_bits = 20;
  /// Largest number of uncertain inputs in one step.
  std::size_t input_bits = 20;
};

namespace detail {

inline std::vector<std::vector<bool>> input_combinations(const dsl::SystemSpec& sys, std::size_t step,
                                                         const ExactLimits& limits) {
  std::size_t uncertain = 0;
  for (std::size_t i = 0; i < sys.num_inputs(); ++i) {
    if (sys.input_domain(step, i) == dsl::Domain::Both) ++uncertain;
  }
  if (uncertain > limits.input_bits) throw CapacityError("input budget", limits.input_bits, uncertain);
  std::vector<std::vector<bool>> combos{std::vector<bool>(sys.num_inputs())};
  for (std::size_t i = 0; i < sys.num_inputs(); ++i) {
    const std::vector<bool> values = dsl::domain_values(sys.input_domain(step, i));
    std::vector<std::vector<bool>> next;
    next.reserve(combos.size() * values.size());
    for (const auto& c : combos) {
      for (bool v : values) {
        next.push_back(c);
        next.back()[i] = v;
      }
    }
    combos = std::move(next);
  }
  return combos;
}

}  // namespace detail

/// One exact successor step from `current` under the inputs of step `step`.
inline ExplicitSet exact_successors(const dsl::SystemSpec& sys, const ExplicitSet& current, std::size_t step,
                                    const ExactLimits& limits = {}) {
  const std::size_t n = sys.num_states();
  const auto inputs = detail::input_combinations(sys, step, limits);
  std::vector<BitVec> out;
  out.reserve(current.size() * inputs.size());
  std::vector<bool> state(n);
  std::vector<bool> next(n);
  for (const BitVec& x : current) {
    for (std::size_t i = 0; i < n; ++i) state[i] = x[i];
    for (const auto& u : inputs) {
      dsl::step_system(sys, state, u, next, dsl::PointOps{});
      BitVec y(n);
      for (std::size_t i = 0; i < n; ++i) y.set(i, next[i]);
      out.push_back(std::move(y));
    }
  }
  return ExplicitSet(n, std::move(out));
}

/// R_0 .. R_steps.
inline std::vector<ExplicitSet> exact_reach(const dsl::SystemSpec& sys, std::size_t steps, const ExactLimits& limits = {}) {
  if (sys.num_states() > limits.state_bits) {
    throw CapacityError("state-space budget", limits.state_bits, sys.num_states());
  }
  std::vector<ExplicitSet> sets;
  sets.reserve(steps + 1);
  sets.emplace_back(sys.num_states(), sys.initial_states());
  for (std::size_t k = 0; k < steps; ++k) sets.push_back(exact_successors(sys, sets.back(), k, limits));
  return sets;
}

}  // namespace logzono
