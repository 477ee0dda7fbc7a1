#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "detsched/model.hpp"

namespace detsched {

enum class Objective { Makespan, TotalCompletion };

std::string_view to_string(Objective objective);
/// "makespan" or "total-completion" (also "sum", "total_completion"). Throws BadSpec.
Objective parse_objective(std::string_view name);

inline constexpr std::size_t kDefaultBruteForceCap = 10;

struct OptResult {
  Objective objective = Objective::Makespan;
  Schedule best_schedule;
  Rational best_value;
  std::uint64_t permutations_examined = 0;
};

/// Makespan or total completion of `schedule`.
Rational objective_value(const Instance& instance, const Schedule& schedule, Objective objective);

/// Enumerates all n! orders (in lexicographic id order), starts each one
/// canonically and keeps the first strict minimum. Canonical starts are
/// optimal for a fixed order under both objectives because every completion
/// is non-decreasing in its start, so searching orders is exhaustive.
/// Throws InstanceTooLarge when n > max_n.
OptResult brute_force(const Instance& instance, Objective objective, std::size_t max_n = kDefaultBruteForceCap);

/// sum_i beta^(n-i) r_(i) over releases sorted ascending; a lower bound on
/// the optimal makespan.
Rational lb_release(const Instance& instance);

/// (1+b)^k t + sum_i (1+b)^(k-i) a_(i) with the k values sorted ascending:
/// the completion of the subset run back to back from t, shortest first.
Rational sorted_subset_cost(const Rational& beta, std::span<const Rational> alphas, const Rational& t);

/// max(lb_release, sorted_subset_cost over all jobs from 0).
Rational lb_combined(const Instance& instance);

/// value(schedule) / optimum, exact. An all-zero optimum yields 1 when the
/// schedule is also zero and DegenerateOptimum otherwise.
Rational approximation_ratio(const Instance& instance, const Schedule& schedule, Objective objective,
                             std::size_t max_n = kDefaultBruteForceCap);

/// Same, against an already computed optimum.
Rational ratio_against(const Rational& value, const Rational& optimum);

/// Canonical schedule of the earliest-release-first order (ties by alpha,
/// then id). Feasible, hence an upper bound on the optimal makespan.
Schedule earliest_release_first(const Instance& instance);

}  // namespace detsched
