// Command-line front end: instance generation, scheduling, exact optima,
// experiments and the bound checks.
//
// Exit status: 0 success, 1 parse or validation error, 2 infeasible schedule
// or a violated bound.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detsched/error.hpp"
#include "detsched/experiment.hpp"
#include "detsched/generators.hpp"
#include "detsched/oracle.hpp"
#include "detsched/pseudomatching.hpp"
#include "detsched/schedulers.hpp"
#include "detsched/serialization.hpp"

namespace {

using namespace detsched;
using ordered = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitViolation = 2;

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, separator)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<SchedulerChoice> parse_algorithms(const std::string& text) {
  if (text == "all") return {kAllSchedulers.begin(), kAllSchedulers.end()};
  std::vector<SchedulerChoice> choices;
  for (const std::string& name : split(text, ',')) choices.push_back(parse_scheduler(name));
  if (choices.empty()) throw Error(ErrorKind::BadSpec, "no algorithm given");
  return choices;
}

// "a..b" or a single value.
std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto value = static_cast<std::uint32_t>(std::stoul(text));
      return {value, value};
    }
    return {static_cast<std::uint32_t>(std::stoul(text.substr(0, dots))),
            static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadSpec, "bad size range \"" + text + "\"");
  }
}

ordered inequality_json(const InequalityCheck& check) {
  return {{"lhs", check.lhs.str()}, {"rhs", check.rhs.str()}, {"holds", check.holds}};
}

ordered bound_json(const BoundCheck& check) {
  return {{"lhs", check.lhs.str()}, {"rhs", check.rhs.str()}, {"holds", check.holds}};
}

struct Options {
  std::string instance_path;
  std::string schedule_path;
  std::string pm_path;
  std::string out = "-";
  std::string algorithm = "non-interfering";
  std::string algorithms = "all";
  std::string objective = "makespan";
  std::uint64_t seed = 0;
  std::size_t max_bruteforce_n = kDefaultBruteForceCap;
  std::string family = "random";
  std::uint32_t size = 5;
  std::string beta = "1";
  std::string scale;
  std::string alpha_max = "10";
  std::string r_max = "10";
  std::uint32_t trials = 1;
  std::string size_range = "5";
  std::string beta_set = "1";
  bool record_timing = false;
  bool no_reduce = false;
};

FamilySpec family_spec(const Options& options) {
  FamilySpec spec;
  spec.family = parse_family(options.family);
  spec.size = options.size;
  spec.beta = Rational::parse(options.beta);
  if (!options.scale.empty()) spec.scale = Rational::parse(options.scale);
  spec.seed = options.seed;
  spec.alpha_max = Rational::parse(options.alpha_max);
  spec.r_max = Rational::parse(options.r_max);
  return spec;
}

Instance load_instance(const Options& options) {
  if (options.instance_path.empty()) throw Error(ErrorKind::BadSpec, "--instance is required");
  return parse_instance(read_file(options.instance_path));
}

int cmd_gen(const Options& options) {
  const Instance instance = generate(family_spec(options));
  validate_instance(instance);
  write_output(options.out, write_instance(instance));
  return kExitOk;
}

int cmd_solve(const Options& options) {
  const Instance instance = load_instance(options);
  const Schedule schedule = run_scheduler(parse_scheduler(options.algorithm), instance);
  write_output(options.out, write_eval_report(evaluate(instance, schedule)));
  return kExitOk;
}

int cmd_opt(const Options& options) {
  const Instance instance = load_instance(options);
  write_output(options.out,
               write_opt_result(brute_force(instance, parse_objective(options.objective), options.max_bruteforce_n)));
  return kExitOk;
}

int cmd_eval(const Options& options) {
  const Instance instance = load_instance(options);
  if (options.schedule_path.empty()) throw Error(ErrorKind::BadSpec, "--schedule is required");
  const Schedule schedule = parse_schedule(read_file(options.schedule_path), instance);
  write_output(options.out, write_eval_report(evaluate(instance, schedule)));
  return kExitOk;
}

int cmd_experiment(const Options& options) {
  ExperimentConfig config;
  config.family = parse_family(options.family);
  std::tie(config.size_min, config.size_max) = parse_range(options.size_range);
  config.betas.clear();
  for (const std::string& rule : split(options.beta_set, ',')) config.betas.push_back(BetaRule::parse(rule));
  config.trials = options.trials;
  config.seed = options.seed;
  config.algorithms = parse_algorithms(options.algorithms);
  config.objective = parse_objective(options.objective);
  config.max_bruteforce_n = options.max_bruteforce_n;
  if (!options.scale.empty()) config.scale = Rational::parse(options.scale);
  config.alpha_max = Rational::parse(options.alpha_max);
  config.r_max = Rational::parse(options.r_max);
  config.record_timing = options.record_timing;
  write_output(options.out, write_csv(run_experiment(config)));
  return kExitOk;
}

int cmd_verify_pm(const Options& options) {
  ordered out;
  bool ok = true;
  if (!options.pm_path.empty()) {
    const PmDocument doc = parse_pm_document(read_file(options.pm_path));
    const PmVerdict verdict = doc.weak ? verify_weak_pm(doc.sets, doc.matching)
                                       : verify_rho_pm(doc.sets, doc.matching, doc.rho);
    out["kind"] = doc.weak ? "weak" : "rho";
    out["valid"] = verdict.valid;
    if (verdict.valid) {
      const BoundCheck check = doc.weak ? weak_bound_check(doc.sets, doc.matching)
                                        : rho_bound_check(doc.sets, doc.matching, doc.rho);
      out["bound"] = bound_json(check);
      ok = check.holds;
    } else {
      out["violation"] = verdict.violation;
      ok = false;
    }
    write_output(options.out, out.dump(2) + "\n");
    return ok ? kExitOk : kExitViolation;
  }
  const Instance instance = load_instance(options);
  const Schedule ni = non_interfering(instance);
  const Schedule optimal = brute_force(instance, Objective::Makespan, options.max_bruteforce_n).best_schedule;
  PmConstructionOptions construction;
  construction.reduce_gaps = !options.no_reduce;
  write_output(options.out, write_pm_report(construct_two_pm(instance, ni, optimal, construction)));
  return kExitOk;
}

int cmd_cross_check(const Options& options) {
  const CrossObjectiveReport report = cross_objective_check(load_instance(options), options.max_bruteforce_n);
  ordered out;
  out["makespan_opt"] = report.makespan_opt.str();
  out["total_completion_opt"] = report.total_completion_opt.str();
  out["sum_optimum_makespan"] = inequality_json(report.sum_optimum_makespan);
  out["makespan_optimum_sum"] = inequality_json(report.makespan_optimum_sum);
  out["ectf_sum"] = inequality_json(report.ectf_sum);
  write_output(options.out, out.dump(2) + "\n");
  return report.all_hold() ? kExitOk : kExitViolation;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InfeasibleSchedule:
    case ErrorKind::ConstructionFailed:
    case ErrorKind::InvalidPseudomatching:
      return kExitViolation;
    default:
      return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-machine scheduling with linearly deteriorating jobs and release times"};
  app.require_subcommand(1);
  Options options;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", options.out, "Output file (- for stdout)"); };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", options.instance_path, "Instance JSON file")->required();
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--max-bruteforce-n", options.max_bruteforce_n, "Largest n for exhaustive search");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", options.seed, "Random seed")->envname("DETSCHED_SEED");
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", options.family,
                    "random, two-release, non-interfering-adv, non-idling-adv or ectf-adv");
    sub->add_option("--B", options.scale, "Family scale parameter");
    sub->add_option("--alpha-max", options.alpha_max, "Largest random alpha");
    sub->add_option("--r-max", options.r_max, "Largest random release");
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  add_family(gen);
  gen->add_option("--n,--k", options.size, "Job count, or k for the adversarial families");
  gen->add_option("--beta", options.beta, "Deterioration rate, \"p\" or \"p/q\"");
  add_seed(gen);
  add_out(gen);

  CLI::App* solve = app.add_subcommand("solve", "Run a scheduler");
  add_instance(solve);
  solve->add_option("--algorithm", options.algorithm, "non-idling, non-interfering, best-of-two or ectf");
  add_out(solve);

  CLI::App* opt = app.add_subcommand("opt", "Exact optimum by exhaustive search");
  add_instance(opt);
  opt->add_option("--objective", options.objective, "makespan or total-completion");
  add_cap(opt);
  add_out(opt);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a given schedule");
  add_instance(eval);
  eval->add_option("--schedule", options.schedule_path, "Schedule JSON file")->required();
  add_out(eval);

  CLI::App* experiment = app.add_subcommand("experiment", "Ratio experiment, CSV output");
  add_family(experiment);
  experiment->add_option("--size-range", options.size_range, "Size parameter range a..b");
  experiment->add_option("--beta-set", options.beta_set, "Comma-separated betas: p/q, 1/(2n), 1/n, n+1, 2n");
  experiment->add_option("--trials", options.trials, "Instances per (size, beta)");
  experiment->add_option("--algorithm", options.algorithms, "Comma-separated algorithms, or all");
  experiment->add_option("--objective", options.objective, "makespan or total-completion");
  experiment->add_flag("--record-timing", options.record_timing, "Fill wall_time_ms (output no longer reproducible)");
  add_seed(experiment);
  add_cap(experiment);
  add_out(experiment);

  CLI::App* verify = app.add_subcommand("verify-pm", "Check a pseudomatching or build the 2-pseudomatching");
  verify->add_option("--pm", options.pm_path, "Pseudomatching JSON file");
  verify->add_option("--instance", options.instance_path, "Instance JSON file");
  verify->add_flag("--no-reduce", options.no_reduce, "Skip the gap-removal reduction");
  add_cap(verify);
  add_out(verify);

  CLI::App* cross = app.add_subcommand("cross-check", "Check the cross-objective bounds");
  add_instance(cross);
  add_cap(cross);
  add_out(cross);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gen) return cmd_gen(options);
    if (*solve) return cmd_solve(options);
    if (*opt) return cmd_opt(options);
    if (*eval) return cmd_eval(options);
    if (*experiment) return cmd_experiment(options);
    if (*verify) return cmd_verify_pm(options);
    if (*cross) return cmd_cross_check(options);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
