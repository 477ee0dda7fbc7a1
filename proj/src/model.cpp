#include "detsched/model.hpp"

#include <algorithm>
#include <string>

#include "detsched/error.hpp"

namespace detsched {

namespace {

std::string id_str(JobId id) { return std::to_string(id.value); }

// Maps every position of `order` to an index into instance.jobs.
std::vector<std::size_t> order_indices(const Instance& instance, std::span<const JobId> order) {
  if (order.size() != instance.size()) {
    throw Error(ErrorKind::NotAPermutation, "order has " + std::to_string(order.size()) +
                                                " entries, instance has " + std::to_string(instance.size()) +
                                                " jobs");
  }
  std::vector<std::size_t> indices;
  indices.reserve(order.size());
  std::vector<bool> seen(instance.size(), false);
  for (JobId id : order) {
    const auto it = std::find_if(instance.jobs.begin(), instance.jobs.end(),
                                 [id](const Job& job) { return job.id == id; });
    if (it == instance.jobs.end()) throw Error(ErrorKind::NotAPermutation, "unknown job id " + id_str(id));
    const auto index = static_cast<std::size_t>(it - instance.jobs.begin());
    if (seen[index]) throw Error(ErrorKind::NotAPermutation, "job id " + id_str(id) + " repeated");
    seen[index] = true;
    indices.push_back(index);
  }
  return indices;
}

// Checks release and precedence constraints directly on the start times.
std::vector<std::size_t> check_feasible(const Instance& instance, const Schedule& schedule) {
  auto indices = order_indices(instance, schedule.order);
  if (schedule.starts.size() != indices.size()) {
    throw Error(ErrorKind::InfeasibleSchedule, "starts has " + std::to_string(schedule.starts.size()) +
                                                   " entries, order has " + std::to_string(indices.size()));
  }
  const Rational growth = instance.growth();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Job& job = instance.jobs[indices[k]];
    const Rational& start = schedule.starts[k];
    if (start < job.release) {
      throw Error(ErrorKind::InfeasibleSchedule, "job " + id_str(job.id) + " starts at " + start.str() +
                                                     " before its release " + job.release.str());
    }
    if (start.sign() < 0) {
      throw Error(ErrorKind::InfeasibleSchedule, "job " + id_str(job.id) + " starts before time 0");
    }
    if (k > 0) {
      const Job& prev = instance.jobs[indices[k - 1]];
      const Rational prev_done = completion_at(growth, schedule.starts[k - 1], prev.alpha);
      if (start < prev_done) {
        throw Error(ErrorKind::InfeasibleSchedule, "job " + id_str(job.id) + " starts at " + start.str() +
                                                       " before job " + id_str(prev.id) + " completes at " +
                                                       prev_done.str());
      }
    }
  }
  return indices;
}

std::vector<Rational> powers(const Rational& base, std::size_t count) {
  std::vector<Rational> table;
  table.reserve(count + 1);
  table.emplace_back(1);
  for (std::size_t i = 0; i < count; ++i) table.push_back(table.back() * base);
  return table;
}

}  // namespace

std::size_t Instance::index_of(JobId id) const {
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].id == id) return i;
  }
  throw Error(ErrorKind::UnknownJobId, "no job with id " + id_str(id));
}

const Instance& validate_instance(const Instance& instance) {
  if (instance.beta.sign() <= 0) {
    throw Error(ErrorKind::BetaNonPositive, "beta must be > 0, got " + instance.beta.str());
  }
  if (instance.jobs.empty()) throw Error(ErrorKind::EmptyInstance, "instance has no jobs");
  std::vector<std::uint64_t> ids;
  ids.reserve(instance.size());
  for (const Job& job : instance.jobs) {
    if (job.id.value == 0) throw Error(ErrorKind::NegativeParameter, "job ids must be positive");
    if (job.alpha.sign() < 0) {
      throw Error(ErrorKind::NegativeParameter, "job " + id_str(job.id) + " has alpha " + job.alpha.str());
    }
    if (job.release.sign() < 0) {
      throw Error(ErrorKind::NegativeParameter, "job " + id_str(job.id) + " has release " + job.release.str());
    }
    ids.push_back(job.id.value);
  }
  std::sort(ids.begin(), ids.end());
  if (const auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw Error(ErrorKind::DuplicateId, "job id " + std::to_string(*dup) + " appears more than once");
  }
  return instance;
}

void require_permutation(const Instance& instance, std::span<const JobId> order) {
  order_indices(instance, order);
}

Schedule canonical_starts(const Instance& instance, std::span<const JobId> order) {
  const auto indices = order_indices(instance, order);
  const Rational growth = instance.growth();
  Schedule schedule;
  schedule.order.assign(order.begin(), order.end());
  schedule.starts.reserve(indices.size());
  Rational done;
  for (std::size_t index : indices) {
    const Job& job = instance.jobs[index];
    const Rational& start = max(job.release, done);
    schedule.starts.push_back(start);
    done = completion_at(growth, start, job.alpha);
  }
  return schedule;
}

EvalReport evaluate(const Instance& instance, const Schedule& schedule) {
  const auto indices = check_feasible(instance, schedule);
  const Rational growth = instance.growth();
  EvalReport report;
  report.order = schedule.order;
  report.starts = schedule.starts;
  report.completions.reserve(indices.size());
  report.gaps.reserve(indices.size());
  Rational previous;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Rational& start = schedule.starts[k];
    report.gaps.push_back(start - previous);
    previous = completion_at(growth, start, instance.jobs[indices[k]].alpha);
    report.completions.push_back(previous);
    report.total_completion += previous;
  }
  report.makespan = previous;
  return report;
}

Rational makespan_closed_form(const Instance& instance, const Schedule& schedule) {
  const auto indices = check_feasible(instance, schedule);
  const std::size_t n = indices.size();
  const Rational growth = instance.growth();
  const auto weight = powers(growth, n);
  Rational gap_cost;
  Rational fixed_cost;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& alpha = instance.jobs[indices[i]].alpha;
    Rational gap = schedule.starts[i];
    if (i > 0) gap -= completion_at(growth, schedule.starts[i - 1], instance.jobs[indices[i - 1]].alpha);
    // Position i (0-based) carries weight (1+b)^(n-i) on its gap and
    // (1+b)^(n-i-1) on its fixed part.
    gap_cost += weight[n - i] * gap;
    fixed_cost += weight[n - i - 1] * alpha;
  }
  return gap_cost + fixed_cost;
}

IdentitySides fixed_cost_identity(const Instance& instance, const Schedule& schedule) {
  const auto indices = check_feasible(instance, schedule);
  const std::size_t n = indices.size();
  const auto weight = powers(instance.growth(), n);
  IdentitySides sides;
  Rational prefix;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& alpha = instance.jobs[indices[i]].alpha;
    sides.lhs += weight[n - i - 1] * alpha;
    sides.rhs += alpha;
  }
  for (std::size_t k = 1; k < n; ++k) {
    prefix += instance.jobs[indices[k - 1]].alpha;
    sides.rhs += instance.beta * weight[n - k - 1] * prefix;
  }
  return sides;
}

Rational completion_estimate(const Instance& instance, JobId id, const Rational& t) {
  const Job& job = instance.job(id);
  return completion_at(instance.growth(), max(t, job.release), job.alpha);
}

Rational total_completion(const Instance& instance, const Schedule& schedule) {
  return evaluate(instance, schedule).total_completion;
}

Instance normalize_releases(const Instance& instance) {
  Instance shifted = instance;
  if (shifted.jobs.empty()) return shifted;
  Rational lowest = shifted.jobs.front().release;
  for (const Job& job : shifted.jobs) lowest = min(lowest, job.release);
  for (Job& job : shifted.jobs) job.release -= lowest;
  return shifted;
}

}  // namespace detsched
