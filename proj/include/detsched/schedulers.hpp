#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "detsched/model.hpp"

namespace detsched {

enum class SchedulerChoice { NonIdling, NonInterfering, BestOfTwo, Ectf };

inline constexpr std::array<SchedulerChoice, 4> kAllSchedulers = {
    SchedulerChoice::NonIdling, SchedulerChoice::NonInterfering, SchedulerChoice::BestOfTwo,
    SchedulerChoice::Ectf};

std::string_view to_string(SchedulerChoice choice);

/// Accepts "non-idling", "non-interfering", "best-of-two", "ectf"
/// (underscores also accepted). Throws BadSpec.
SchedulerChoice parse_scheduler(std::string_view name);

// All schedulers below expect a validated instance and return the canonical
// schedule of the order they build. Pending jobs are chosen by minimal
// alpha, then minimal release, then minimal id.

/// Whenever the machine is free, start the shortest pending job; if nothing
/// is pending, wait for the next release.
Schedule non_idling(const Instance& instance);

/// Smallest release r_j over jobs j with alpha_j < alpha_candidate and
/// t < r_j < (1+b) t + alpha_candidate, if any (strict on both sides).
std::optional<Rational> is_interfering(const Instance& instance, JobId candidate, const Rational& t);

/// Like non_idling, but when the shortest pending job would run across the
/// release of a strictly shorter job, idle until the earliest such release
/// and choose again.
Schedule non_interfering(const Instance& instance);

/// Earliest completion time first: start the unstarted job minimizing
/// (1+b) max(t, r) + alpha; ties by alpha, then id. Idles when the winner
/// is not yet released.
Schedule ectf(const Instance& instance);

/// The non-idling and non-interfering schedules, whichever has the smaller
/// makespan (non-idling on exact ties).
Schedule best_of_two(const Instance& instance);

Schedule run_scheduler(SchedulerChoice choice, const Instance& instance);

}  // namespace detsched
