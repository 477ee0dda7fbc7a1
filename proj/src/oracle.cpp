#include "detsched/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "detsched/error.hpp"

namespace detsched {

namespace {

// Depth-first enumeration of all orders. Completion (and running sum) of
// each prefix is computed once and shared by every order extending it.
class OrderSearch {
 public:
  OrderSearch(const Instance& instance, Objective objective)
      : objective_(objective), n_(instance.size()), growth_(instance.growth().raw()) {
    by_id_.resize(n_);
    std::iota(by_id_.begin(), by_id_.end(), std::size_t{0});
    std::sort(by_id_.begin(), by_id_.end(),
              [&](std::size_t a, std::size_t b) { return instance.jobs[a].id < instance.jobs[b].id; });
    for (std::size_t index : by_id_) {
      alpha_.push_back(instance.jobs[index].alpha.raw());
      release_.push_back(instance.jobs[index].release.raw());
    }
    done_.resize(n_ + 1);
    sum_.resize(n_ + 1);
    path_.resize(n_);
    used_.assign(n_, false);
  }

  void run() { descend(0); }

  std::uint64_t leaves() const { return leaves_; }
  const mpq_class& best() const { return best_; }

  std::vector<std::size_t> best_order() const {
    std::vector<std::size_t> order;
    order.reserve(n_);
    for (std::size_t slot : best_path_) order.push_back(by_id_[slot]);
    return order;
  }

 private:
  void descend(std::size_t depth) {
    if (depth == n_) {
      ++leaves_;
      const mpq_class& value = objective_ == Objective::Makespan ? done_[n_] : sum_[n_];
      if (best_path_.empty() || value < best_) {
        best_ = value;
        best_path_ = path_;
      }
      return;
    }
    for (std::size_t slot = 0; slot < n_; ++slot) {
      if (used_[slot]) continue;
      const mpq_class& start = release_[slot] > done_[depth] ? release_[slot] : done_[depth];
      mpq_mul(done_[depth + 1].get_mpq_t(), growth_.get_mpq_t(), start.get_mpq_t());
      mpq_add(done_[depth + 1].get_mpq_t(), done_[depth + 1].get_mpq_t(), alpha_[slot].get_mpq_t());
      if (objective_ == Objective::TotalCompletion) {
        mpq_add(sum_[depth + 1].get_mpq_t(), sum_[depth].get_mpq_t(), done_[depth + 1].get_mpq_t());
      }
      used_[slot] = true;
      path_[depth] = slot;
      descend(depth + 1);
      used_[slot] = false;
    }
  }

  Objective objective_;
  std::size_t n_;
  mpq_class growth_;
  std::vector<std::size_t> by_id_;
  std::vector<mpq_class> alpha_;
  std::vector<mpq_class> release_;
  std::vector<mpq_class> done_;
  std::vector<mpq_class> sum_;
  std::vector<std::size_t> path_;
  std::vector<bool> used_;
  std::vector<std::size_t> best_path_;
  mpq_class best_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::Makespan: return "makespan";
    case Objective::TotalCompletion: return "total-completion";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  if (name == "makespan" || name == "cmax") return Objective::Makespan;
  if (name == "total-completion" || name == "total_completion" || name == "sum") {
    return Objective::TotalCompletion;
  }
  throw Error(ErrorKind::BadSpec, "unknown objective \"" + std::string(name) + "\"");
}

Rational objective_value(const Instance& instance, const Schedule& schedule, Objective objective) {
  const EvalReport report = evaluate(instance, schedule);
  return objective == Objective::Makespan ? report.makespan : report.total_completion;
}

OptResult brute_force(const Instance& instance, Objective objective, std::size_t max_n) {
  if (instance.size() > max_n) {
    throw Error(ErrorKind::InstanceTooLarge, "brute force limited to n <= " + std::to_string(max_n) + ", got n = " +
                                                 std::to_string(instance.size()));
  }
  OrderSearch search(instance, objective);
  search.run();
  std::vector<JobId> order;
  for (std::size_t index : search.best_order()) order.push_back(instance.jobs[index].id);
  OptResult result;
  result.objective = objective;
  result.best_schedule = canonical_starts(instance, order);
  result.best_value = Rational(search.best());
  result.permutations_examined = search.leaves();
  return result;
}

Rational lb_release(const Instance& instance) {
  std::vector<Rational> releases;
  releases.reserve(instance.size());
  for (const Job& job : instance.jobs) releases.push_back(job.release);
  std::sort(releases.begin(), releases.end());
  Rational bound;
  for (const Rational& r : releases) bound = bound * instance.beta + r;
  return bound;
}

Rational sorted_subset_cost(const Rational& beta, std::span<const Rational> alphas, const Rational& t) {
  std::vector<Rational> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());
  const Rational growth = Rational(1) + beta;
  Rational cost = t;
  for (const Rational& alpha : sorted) cost = completion_at(growth, cost, alpha);
  return cost;
}

Rational lb_combined(const Instance& instance) {
  std::vector<Rational> alphas;
  alphas.reserve(instance.size());
  for (const Job& job : instance.jobs) alphas.push_back(job.alpha);
  return max(lb_release(instance), sorted_subset_cost(instance.beta, alphas, Rational(0)));
}

Rational ratio_against(const Rational& value, const Rational& optimum) {
  if (optimum.is_zero()) {
    if (value.is_zero()) return Rational(1);
    throw Error(ErrorKind::DegenerateOptimum, "optimum is 0 but the schedule has value " + value.str());
  }
  return value / optimum;
}

Rational approximation_ratio(const Instance& instance, const Schedule& schedule, Objective objective,
                             std::size_t max_n) {
  const Rational value = objective_value(instance, schedule, objective);
  return ratio_against(value, brute_force(instance, objective, max_n).best_value);
}

Schedule earliest_release_first(const Instance& instance) {
  std::vector<const Job*> jobs;
  for (const Job& job : instance.jobs) jobs.push_back(&job);
  std::sort(jobs.begin(), jobs.end(), [](const Job* a, const Job* b) {
    if (a->release != b->release) return a->release < b->release;
    if (a->alpha != b->alpha) return a->alpha < b->alpha;
    return a->id < b->id;
  });
  std::vector<JobId> order;
  for (const Job* job : jobs) order.push_back(job->id);
  return canonical_starts(instance, order);
}

}  // namespace detsched
