#include <doctest.h>

#include <random>
#include <sstream>

#include "detsched/error.hpp"
#include "detsched/experiment.hpp"
#include "oracles.hpp"

using namespace detsched;
using namespace detsched::testing;

namespace {

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("beta rules") {
  CHECK(BetaRule::parse("1/(2n)").resolve(4) == Rational(1, 8));
  CHECK(BetaRule::parse("1/n").resolve(4) == Rational(1, 4));
  CHECK(BetaRule::parse("n+1").resolve(4) == Rational(5));
  CHECK(BetaRule::parse("2n").resolve(4) == Rational(8));
  CHECK(BetaRule::parse("3/2").resolve(4) == Rational(3, 2));
  CHECK(error_kind([] { BetaRule::parse("0"); }) == ErrorKind::BadSpec);
  CHECK(error_kind([] { BetaRule::parse("n^2"); }) == ErrorKind::BadSpec);
}

TEST_CASE("ectf family ratios appear in the csv rows") {
  ExperimentConfig config;
  config.family = Family::EctfAdv;
  config.size_min = 1;
  config.size_max = 3;
  config.algorithms = {SchedulerChoice::Ectf};
  const std::vector<ExperimentRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ratio == "3/2");
  CHECK(rows[1].ratio == "5/3");
  CHECK(rows[2].ratio == "9/5");
  CHECK(rows[0].ratio_decimal == "1.500000000");
  CHECK(rows[2].n == 6);
  CHECK(rows[2].wall_time_ms.empty());
}

TEST_CASE("random ectf rows stay within 3 + 1/beta") {
  ExperimentConfig config;
  config.size_min = config.size_max = 5;
  config.trials = 100;
  config.seed = 77;
  config.algorithms = {SchedulerChoice::Ectf};
  for (const ExperimentRow& row : run_experiment(config)) {
    CHECK(Rational::parse(row.ratio) <= Rational(4));
    CHECK(Rational::parse(row.lb_release) <= Rational::parse(row.opt_value));
    CHECK(Rational::parse(row.lb_fixed) <= Rational::parse(row.opt_value));
  }
}

TEST_CASE("csv layout") {
  ExperimentConfig config;
  config.trials = 0;
  const std::string empty = write_csv(run_experiment(config));
  CHECK(empty ==
        "instance_id,n,beta,family,seed,algorithm,objective,value,opt_value,ratio,ratio_decimal,lb_release,lb_fixed,"
        "wall_time_ms\n");

  config.trials = 1;
  config.algorithms = {SchedulerChoice::NonIdling};
  const std::string one = write_csv(run_experiment(config));
  CHECK(count_lines(one) == 2);

  ExperimentRow quoted;
  quoted.family = "a,\"b\"";
  const std::string text = write_csv({quoted});
  CHECK(text.find("\"a,\"\"b\"\"\"") != std::string::npos);
}

TEST_CASE("optimum columns stay empty above the cap") {
  ExperimentConfig config;
  config.size_min = config.size_max = 4;
  config.max_bruteforce_n = 3;
  const std::vector<ExperimentRow> rows = run_experiment(config);
  REQUIRE(rows.size() == 4);
  for (const ExperimentRow& row : rows) {
    CHECK(row.opt_value.empty());
    CHECK(row.ratio.empty());
    CHECK_FALSE(row.value.empty());
  }
}

TEST_CASE("experiments are reproducible") {
  ExperimentConfig config;
  config.size_min = 2;
  config.size_max = 5;
  config.betas = {BetaRule::parse("1/n"), BetaRule::parse("2")};
  config.trials = 5;
  config.seed = 9;
  CHECK(write_csv(run_experiment(config)) == write_csv(run_experiment(config)));
  config.record_timing = true;
  for (const ExperimentRow& row : run_experiment(config)) CHECK_FALSE(row.wall_time_ms.empty());
}

TEST_CASE("cross_objective_check") {
  const CrossObjectiveReport example = cross_objective_check(running_example());
  CHECK(example.makespan_opt == Rational(11));
  CHECK(example.total_completion_opt == Rational(16));
  CHECK(example.sum_optimum_makespan.lhs == Rational(11));
  CHECK(example.sum_optimum_makespan.rhs == Rational(22));
  CHECK(example.makespan_optimum_sum.lhs == Rational(16));
  CHECK(example.makespan_optimum_sum.rhs == Rational(32));
  CHECK(example.ectf_sum.lhs == Rational(20));
  CHECK(example.ectf_sum.rhs == Rational(128));
  CHECK(example.all_hold());

  const CrossObjectiveReport single = cross_objective_check(make_instance(Rational(1), {{3, 1}}));
  CHECK(single.sum_optimum_makespan.lhs == single.makespan_opt);
  CHECK(single.makespan_optimum_sum.lhs == single.total_completion_opt);
  CHECK(single.all_hold());

  std::mt19937_64 rng(41);
  CHECK(error_kind([&] { cross_objective_check(random_instance(rng, 4, Rational(1), 3, 3), 3); }) ==
        ErrorKind::InstanceTooLarge);
}
