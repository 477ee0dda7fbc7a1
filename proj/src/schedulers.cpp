#include "detsched/schedulers.hpp"

#include <string>
#include <vector>

#include "detsched/error.hpp"

namespace detsched {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Pending-job priority: alpha, then release, then id.
bool shorter(const Job& a, const Job& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.release != b.release) return a.release < b.release;
  return a.id < b.id;
}

std::size_t shortest_pending(const Instance& instance, const std::vector<bool>& started, const Rational& t) {
  std::size_t best = kNone;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (started[i] || instance.jobs[i].release > t) continue;
    if (best == kNone || shorter(instance.jobs[i], instance.jobs[best])) best = i;
  }
  return best;
}

// Earliest release strictly after t among unstarted jobs.
Rational next_release(const Instance& instance, const std::vector<bool>& started, const Rational& t) {
  std::optional<Rational> next;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const Rational& r = instance.jobs[i].release;
    if (started[i] || r <= t) continue;
    if (!next || r < *next) next = r;
  }
  // Only called when some job is unstarted and none is pending.
  return *next;
}

std::optional<Rational> blocking_release(const Instance& instance, std::size_t candidate, const Rational& t) {
  const Job& job = instance.jobs[candidate];
  const Rational projected = completion_at(instance.growth(), t, job.alpha);
  std::optional<Rational> earliest;
  for (const Job& other : instance.jobs) {
    if (!(other.alpha < job.alpha)) continue;
    if (t < other.release && other.release < projected) {
      if (!earliest || other.release < *earliest) earliest = other.release;
    }
  }
  return earliest;
}

Schedule greedy(const Instance& instance, bool avoid_interference) {
  const std::size_t n = instance.size();
  const Rational growth = instance.growth();
  std::vector<bool> started(n, false);
  std::vector<JobId> order;
  order.reserve(n);
  Rational t;
  while (order.size() < n) {
    const std::size_t pick = shortest_pending(instance, started, t);
    if (pick == kNone) {
      t = next_release(instance, started, t);
      continue;
    }
    if (avoid_interference) {
      if (auto wait_until = blocking_release(instance, pick, t)) {
        t = std::move(*wait_until);
        continue;
      }
    }
    started[pick] = true;
    order.push_back(instance.jobs[pick].id);
    t = completion_at(growth, t, instance.jobs[pick].alpha);
  }
  return canonical_starts(instance, order);
}

}  // namespace

std::string_view to_string(SchedulerChoice choice) {
  switch (choice) {
    case SchedulerChoice::NonIdling: return "non-idling";
    case SchedulerChoice::NonInterfering: return "non-interfering";
    case SchedulerChoice::BestOfTwo: return "best-of-two";
    case SchedulerChoice::Ectf: return "ectf";
  }
  return "unknown";
}

SchedulerChoice parse_scheduler(std::string_view name) {
  std::string key(name);
  for (char& c : key) {
    if (c == '_') c = '-';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  for (SchedulerChoice choice : kAllSchedulers) {
    if (key == to_string(choice)) return choice;
  }
  if (key == "nonidling") return SchedulerChoice::NonIdling;
  if (key == "noninterfering") return SchedulerChoice::NonInterfering;
  if (key == "bestoftwo") return SchedulerChoice::BestOfTwo;
  throw Error(ErrorKind::BadSpec, "unknown algorithm \"" + std::string(name) + "\"");
}

Schedule non_idling(const Instance& instance) { return greedy(instance, false); }

std::optional<Rational> is_interfering(const Instance& instance, JobId candidate, const Rational& t) {
  return blocking_release(instance, instance.index_of(candidate), t);
}

Schedule non_interfering(const Instance& instance) { return greedy(instance, true); }

Schedule ectf(const Instance& instance) {
  const std::size_t n = instance.size();
  const Rational growth = instance.growth();
  std::vector<bool> started(n, false);
  std::vector<JobId> order;
  order.reserve(n);
  Rational t;
  while (order.size() < n) {
    std::size_t best = kNone;
    Rational best_estimate;
    for (std::size_t i = 0; i < n; ++i) {
      if (started[i]) continue;
      const Job& job = instance.jobs[i];
      Rational estimate = completion_at(growth, max(t, job.release), job.alpha);
      bool better = best == kNone || estimate < best_estimate;
      if (!better && estimate == best_estimate) {
        const Job& incumbent = instance.jobs[best];
        better = job.alpha < incumbent.alpha || (job.alpha == incumbent.alpha && job.id < incumbent.id);
      }
      if (better) {
        best = i;
        best_estimate = std::move(estimate);
      }
    }
    started[best] = true;
    order.push_back(instance.jobs[best].id);
    t = std::move(best_estimate);
  }
  return canonical_starts(instance, order);
}

Schedule best_of_two(const Instance& instance) {
  Schedule idling = non_idling(instance);
  Schedule waiting = non_interfering(instance);
  if (evaluate(instance, waiting).makespan < evaluate(instance, idling).makespan) return waiting;
  return idling;
}

Schedule run_scheduler(SchedulerChoice choice, const Instance& instance) {
  switch (choice) {
    case SchedulerChoice::NonIdling: return non_idling(instance);
    case SchedulerChoice::NonInterfering: return non_interfering(instance);
    case SchedulerChoice::BestOfTwo: return best_of_two(instance);
    case SchedulerChoice::Ectf: return ectf(instance);
  }
  throw Error(ErrorKind::BadSpec, "unknown scheduler");
}

}  // namespace detsched
