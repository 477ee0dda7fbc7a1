#include "detsched/experiment.hpp"

#include <chrono>
#include <sstream>

#include "detsched/error.hpp"

namespace detsched {

namespace {

Rational count(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string format_millis(std::chrono::steady_clock::duration elapsed) {
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count();
  return to_decimal(Rational(micros, 1000), 6);
}

}  // namespace

BetaRule BetaRule::parse(std::string_view text) {
  BetaRule rule;
  rule.text_ = std::string(text);
  if (text == "1/(2n)") {
    rule.form_ = Form::InverseTwoN;
  } else if (text == "1/n") {
    rule.form_ = Form::InverseN;
  } else if (text == "n+1") {
    rule.form_ = Form::NPlusOne;
  } else if (text == "2n") {
    rule.form_ = Form::TwoN;
  } else {
    try {
      rule.value_ = Rational::parse(text);
    } catch (const Error&) {
      throw Error(ErrorKind::BadSpec, "beta rule \"" + rule.text_ + "\" is neither a rational nor a known form");
    }
    if (rule.value_.sign() <= 0) throw Error(ErrorKind::BadSpec, "beta must be > 0, got " + rule.text_);
  }
  return rule;
}

BetaRule BetaRule::fixed(Rational value) {
  if (value.sign() <= 0) throw Error(ErrorKind::BadSpec, "beta must be > 0, got " + value.str());
  BetaRule rule;
  rule.text_ = value.str();
  rule.value_ = std::move(value);
  return rule;
}

Rational BetaRule::resolve(std::size_t n) const {
  switch (form_) {
    case Form::Fixed: return value_;
    case Form::InverseTwoN: return Rational(1) / (Rational(2) * count(n));
    case Form::InverseN: return Rational(1) / count(n);
    case Form::NPlusOne: return count(n) + Rational(1);
    case Form::TwoN: return Rational(2) * count(n);
  }
  return value_;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  if (config.size_min > config.size_max) throw Error(ErrorKind::BadSpec, "empty size range");
  if (config.betas.empty()) throw Error(ErrorKind::BadSpec, "empty beta set");
  std::vector<ExperimentRow> rows;
  std::uint64_t instance_id = 0;
  for (std::uint32_t size = config.size_min; size <= config.size_max; ++size) {
    for (const BetaRule& rule : config.betas) {
      for (std::uint32_t trial = 0; trial < config.trials; ++trial, ++instance_id) {
        FamilySpec spec;
        spec.family = config.family;
        spec.size = size;
        spec.seed = derive_seed(config.seed, instance_id);
        spec.scale = config.scale;
        spec.alpha_max = config.alpha_max;
        spec.r_max = config.r_max;
        spec.beta = rule.resolve(job_count(spec));
        const Instance instance = generate(spec);
        validate_instance(instance);

        std::optional<Rational> optimum;
        if (instance.size() <= config.max_bruteforce_n) {
          optimum = brute_force(instance, config.objective, config.max_bruteforce_n).best_value;
        }
        const std::string lb_release_text = lb_release(instance).str();
        std::vector<Rational> alphas;
        for (const Job& job : instance.jobs) alphas.push_back(job.alpha);
        const std::string lb_fixed_text = sorted_subset_cost(instance.beta, alphas, Rational(0)).str();

        for (SchedulerChoice choice : config.algorithms) {
          const auto started = std::chrono::steady_clock::now();
          const Schedule schedule = run_scheduler(choice, instance);
          const auto elapsed = std::chrono::steady_clock::now() - started;
          const Rational value = objective_value(instance, schedule, config.objective);

          ExperimentRow row;
          row.instance_id = instance_id;
          row.n = instance.size();
          row.beta = to_decimal(instance.beta);
          row.family = std::string(to_string(config.family));
          row.seed = spec.seed;
          row.algorithm = std::string(to_string(choice));
          row.objective = std::string(to_string(config.objective));
          row.value = value.str();
          if (optimum) {
            const Rational ratio = ratio_against(value, *optimum);
            row.opt_value = optimum->str();
            row.ratio = ratio.str();
            row.ratio_decimal = to_decimal(ratio);
          }
          row.lb_release = lb_release_text;
          row.lb_fixed = lb_fixed_text;
          if (config.record_timing) row.wall_time_ms = format_millis(elapsed);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string write_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "instance_id,n,beta,family,seed,algorithm,objective,value,opt_value,ratio,ratio_decimal,lb_release,"
         "lb_fixed,wall_time_ms\n";
  for (const ExperimentRow& row : rows) {
    out << row.instance_id << ',' << row.n << ',' << csv_field(row.beta) << ',' << csv_field(row.family) << ','
        << row.seed << ',' << csv_field(row.algorithm) << ',' << csv_field(row.objective) << ','
        << csv_field(row.value) << ',' << csv_field(row.opt_value) << ',' << csv_field(row.ratio) << ','
        << csv_field(row.ratio_decimal) << ',' << csv_field(row.lb_release) << ',' << csv_field(row.lb_fixed)
        << ',' << csv_field(row.wall_time_ms) << '\n';
  }
  return out.str();
}

CrossObjectiveReport cross_objective_check(const Instance& instance, std::size_t max_n) {
  validate_instance(instance);
  const OptResult by_makespan = brute_force(instance, Objective::Makespan, max_n);
  const OptResult by_sum = brute_force(instance, Objective::TotalCompletion, max_n);
  const Rational inverse = Rational(1) / instance.beta;

  CrossObjectiveReport report;
  report.makespan_opt = by_makespan.best_value;
  report.total_completion_opt = by_sum.best_value;

  auto check = [](Rational lhs, Rational rhs) {
    InequalityCheck result{std::move(lhs), std::move(rhs), false};
    result.holds = result.lhs <= result.rhs;
    return result;
  };
  report.sum_optimum_makespan =
      check(objective_value(instance, by_sum.best_schedule, Objective::Makespan), Rational(2) * by_makespan.best_value);
  report.makespan_optimum_sum = check(total_completion(instance, by_makespan.best_schedule),
                                      (Rational(1) + inverse) * by_sum.best_value);
  report.ectf_sum = check(total_completion(instance, ectf(instance)),
                          (Rational(1) + inverse) * (Rational(3) + inverse) * by_sum.best_value);
  return report;
}

}  // namespace detsched
