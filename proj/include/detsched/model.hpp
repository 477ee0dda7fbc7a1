#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "detsched/rational.hpp"

namespace detsched {

/// Opaque positive job identifier.
struct JobId {
  std::uint64_t value = 0;

  friend auto operator<=>(const JobId&, const JobId&) = default;
};

/// A job with processing time alpha + beta * start, released at `release`.
struct Job {
  JobId id;
  Rational alpha;
  Rational release;

  friend bool operator==(const Job&, const Job&) = default;
};

/// Shared deterioration rate plus the job set. Plain data: call
/// validate_instance() before handing one to the algorithms.
struct Instance {
  Rational beta;
  std::vector<Job> jobs;

  std::size_t size() const { return jobs.size(); }

  /// Position of `id` in `jobs`; throws UnknownJobId.
  std::size_t index_of(JobId id) const;
  const Job& job(JobId id) const { return jobs[index_of(id)]; }

  /// (1 + beta), the per-position growth factor.
  Rational growth() const { return Rational(1) + beta; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// An execution order with explicit start times; position k of `starts`
/// belongs to the job at position k of `order`.
struct Schedule {
  std::vector<JobId> order;
  std::vector<Rational> starts;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct EvalReport {
  std::vector<JobId> order;
  std::vector<Rational> starts;
  std::vector<Rational> completions;
  /// Idle time before each position: starts[k] - completions[k-1], with a
  /// zero completion before the first job.
  std::vector<Rational> gaps;
  Rational makespan;
  Rational total_completion;
};

struct IdentitySides {
  Rational lhs;
  Rational rhs;
};

/// Returns the instance unchanged when beta > 0, jobs is nonempty, all
/// alpha/release are non-negative and ids are unique. Throws
/// BetaNonPositive, EmptyInstance, NegativeParameter or DuplicateId.
const Instance& validate_instance(const Instance& instance);

/// Completion of a job with fixed part `alpha` started at `start`.
inline Rational completion_at(const Rational& growth, const Rational& start, const Rational& alpha) {
  return growth * start + alpha;
}

/// Throws NotAPermutation unless `order` lists every job id exactly once.
void require_permutation(const Instance& instance, std::span<const JobId> order);

/// Starts each job at max(release, predecessor completion). For a fixed
/// order this minimizes every completion time simultaneously.
Schedule canonical_starts(const Instance& instance, std::span<const JobId> order);

/// Forward simulation. Throws NotAPermutation, or InfeasibleSchedule if a
/// start precedes its release or the previous completion.
EvalReport evaluate(const Instance& instance, const Schedule& schedule);

/// Makespan from the weighted sum of gaps and fixed parts:
///   T = sum (1+b)^(n-i+1) q_i + sum (1+b)^(n-i) alpha_i.
/// Gaps are taken from the explicit start times, not from a simulation.
Rational makespan_closed_form(const Instance& instance, const Schedule& schedule);

/// Both sides of the fixed-cost identity
///   sum (1+b)^(n-i) alpha_i = sum alpha_i + sum_{k>=2} b (1+b)^(n-k) (sum_{i<k} alpha_i)
/// for the order of `schedule`.
IdentitySides fixed_cost_identity(const Instance& instance, const Schedule& schedule);

/// Completion time of `id` if it is the next job started at or after `t`:
/// (1+b) max(t, r) + alpha. Throws UnknownJobId.
Rational completion_estimate(const Instance& instance, JobId id, const Rational& t);

Rational total_completion(const Instance& instance, const Schedule& schedule);

/// Shifts every release down by the minimum release so that r_min = 0.
Instance normalize_releases(const Instance& instance);

}  // namespace detsched

template <>
struct std::hash<detsched::JobId> {
  std::size_t operator()(const detsched::JobId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
