#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "detsched/generators.hpp"
#include "detsched/oracle.hpp"
#include "detsched/schedulers.hpp"

namespace detsched {

/// A beta value, either fixed or a function of the job count n.
class BetaRule {
 public:
  /// A rational ("3/2") or one of "1/(2n)", "1/n", "n+1", "2n".
  static BetaRule parse(std::string_view text);
  static BetaRule fixed(Rational value);

  Rational resolve(std::size_t n) const;
  const std::string& text() const { return text_; }

 private:
  enum class Form { Fixed, InverseTwoN, InverseN, NPlusOne, TwoN };
  Form form_ = Form::Fixed;
  Rational value_{1};
  std::string text_ = "1";
};

struct ExperimentConfig {
  Family family = Family::Random;
  /// Inclusive range of the family size parameter (n, or k for the
  /// adversarial families with k+1 or 2k jobs).
  std::uint32_t size_min = 1;
  std::uint32_t size_max = 1;
  std::vector<BetaRule> betas = {BetaRule::fixed(Rational(1))};
  /// Instances per (size, beta) pair.
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<SchedulerChoice> algorithms = {kAllSchedulers.begin(), kAllSchedulers.end()};
  Objective objective = Objective::Makespan;
  std::size_t max_bruteforce_n = kDefaultBruteForceCap;
  std::optional<Rational> scale;
  Rational alpha_max{10};
  Rational r_max{10};
  /// Fill wall_time_ms. Off by default: timings would break byte-identical
  /// reruns.
  bool record_timing = false;
};

/// One CSV row; every field is already rendered. Empty strings stand for
/// "not computed" (optimum above the brute-force cap, timing off).
struct ExperimentRow {
  std::uint64_t instance_id = 0;
  std::size_t n = 0;
  std::string beta;
  std::string family;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string objective;
  std::string value;
  std::string opt_value;
  std::string ratio;
  std::string ratio_decimal;
  std::string lb_release;
  std::string lb_fixed;
  std::string wall_time_ms;
};

/// Instances are numbered from 0 in (size, beta, trial) order; instance i
/// uses seed derive_seed(config.seed, i). Rows come out in
/// (instance_id, algorithm) order.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Header plus one line per row, RFC 4180 quoting, LF line endings.
std::string write_csv(const std::vector<ExperimentRow>& rows);

struct InequalityCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

struct CrossObjectiveReport {
  Rational makespan_opt;
  Rational total_completion_opt;
  /// Makespan of the total-completion optimum <= 2 T*.
  InequalityCheck sum_optimum_makespan;
  /// Total completion of the makespan optimum <= (1 + 1/b) sum C*.
  InequalityCheck makespan_optimum_sum;
  /// Total completion of ECTF <= (1 + 1/b)(3 + 1/b) sum C*.
  InequalityCheck ectf_sum;

  bool all_hold() const { return sum_optimum_makespan.holds && makespan_optimum_sum.holds && ectf_sum.holds; }
};

/// Throws InstanceTooLarge when n > max_n.
CrossObjectiveReport cross_objective_check(const Instance& instance, std::size_t max_n = kDefaultBruteForceCap);

}  // namespace detsched
