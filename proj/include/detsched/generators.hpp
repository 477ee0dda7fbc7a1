#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "detsched/model.hpp"

namespace detsched {

enum class Family { Random, TwoRelease, NonInterferingAdv, NonIdlingAdv, EctfAdv };

std::string_view to_string(Family family);
/// "random", "two-release", "non-interfering-adv", "non-idling-adv",
/// "ectf-adv" (underscores and case are ignored). Throws BadSpec.
Family parse_family(std::string_view name);

struct FamilySpec {
  Family family = Family::Random;
  /// Job count for Random / TwoRelease / NonInterferingAdv; the k parameter
  /// for NonIdlingAdv (k+1 jobs) and EctfAdv (2k jobs).
  std::uint32_t size = 1;
  Rational beta{1};
  /// Scale parameter. Defaults: NonInterferingAdv n^2, NonIdlingAdv
  /// (1+b)^(k+1), EctfAdv 1.
  std::optional<Rational> scale;
  std::uint64_t seed = 0;
  /// Inclusive integer bounds for Random and TwoRelease draws.
  Rational alpha_max{10};
  Rational r_max{10};
};

/// Number of jobs the spec will produce.
std::size_t job_count(const FamilySpec& spec);

/// Dispatches on spec.family.
Instance generate(const FamilySpec& spec);

/// n jobs, integer alpha uniform in [0, alpha_max], integer release uniform
/// in [0, r_max]; ids 1..n. Same spec, same instance.
Instance gen_random(const FamilySpec& spec);

/// Random alphas; each release is 0 or r_max with equal probability, and
/// both values occur (n >= 2, r_max > 0).
Instance gen_two_release(const FamilySpec& spec);

/// alpha_j = B + n - j, r_j = sum_{i<=j} (1+b)^(i-1) B. Requires B >= n.
Instance gen_noninterfering_adv(const FamilySpec& spec);

/// One job (alpha = B, r = 0) followed by k jobs (alpha = 0, r = 1).
Instance gen_nonidling_adv(const FamilySpec& spec);

/// k long jobs (r = 0, alpha = (1+b) B), ids 1..k, and k short jobs
/// (r_j = sum_{i<=j} (1+b)^(i-1) B, alpha = 0), ids k+1..2k.
Instance gen_ectf_adv(const FamilySpec& spec);

/// Lowers releases so the non-interfering order runs without gaps:
/// the job at position k gets min(r, sum_{i<k} (1+b)^(k-1-i) alpha_i), where
/// positions follow `ni_schedule`. Alphas and ids are unchanged.
Instance reduce_instance(const Instance& instance, const Schedule& ni_schedule);

/// Deterministic 64-bit stream (mt19937_64) with portable bounded draws.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed);
  /// Uniform integer in [0, bound].
  std::uint64_t uniform(std::uint64_t bound);
  bool coin();

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace detsched
