#include "detsched/pseudomatching.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "detsched/error.hpp"
#include "detsched/generators.hpp"
#include "detsched/schedulers.hpp"

namespace detsched {

namespace {

PmVerdict fail(std::string violation) { return PmVerdict{false, std::move(violation)}; }

std::string edge_str(const PmEdge& edge) {
  return "(" + std::to_string(edge.a_index) + "," + std::to_string(edge.o_index) + ")";
}

std::map<std::size_t, const Rational*> label_map(const std::vector<IndexedValue>& side) {
  std::map<std::size_t, const Rational*> labels;
  for (const IndexedValue& element : side) labels.emplace(element.index, &element.value);
  return labels;
}

// Shared by both definitions: edge endpoints exist and every A element is
// matched exactly once. Returns the per-O multiplicities on success.
PmVerdict check_a_side(const BoundingSets& sets, const Pseudomatching& matching, const std::string& property,
                       std::map<std::size_t, std::size_t>& o_uses) {
  const auto a_labels = label_map(sets.a_values);
  const auto o_labels = label_map(sets.o_values);
  std::map<std::size_t, std::size_t> a_uses;
  for (const PmEdge& edge : matching.edges) {
    if (!a_labels.contains(edge.a_index) || !o_labels.contains(edge.o_index)) {
      return fail("range: edge " + edge_str(edge) + " references a missing element");
    }
    ++a_uses[edge.a_index];
    ++o_uses[edge.o_index];
  }
  for (const IndexedValue& a : sets.a_values) {
    const std::size_t uses = a_uses.contains(a.index) ? a_uses.at(a.index) : 0;
    if (uses != 1) {
      return fail(property + ": a_" + std::to_string(a.index) + " is matched " + std::to_string(uses) + " times");
    }
  }
  return {};
}

std::vector<std::size_t> positions_of(const Instance& instance, const Schedule& schedule) {
  require_permutation(instance, schedule.order);
  std::vector<std::size_t> indices;
  indices.reserve(schedule.order.size());
  for (JobId id : schedule.order) indices.push_back(instance.index_of(id));
  return indices;
}

}  // namespace

BoundingSets make_bounding_sets(std::vector<Rational> a, std::vector<Rational> o, Rational beta, std::size_t n) {
  BoundingSets sets;
  for (std::size_t i = 0; i < a.size(); ++i) sets.a_values.push_back({i + 1, std::move(a[i])});
  for (std::size_t j = 0; j < o.size(); ++j) sets.o_values.push_back({j + 1, std::move(o[j])});
  sets.n = std::max({n, sets.a_values.size(), sets.o_values.size()});
  sets.beta = std::move(beta);
  return sets;
}

void validate_bounding_sets(const BoundingSets& sets) {
  if (sets.a_values.size() != sets.o_values.size()) {
    throw Error(ErrorKind::InvalidBoundingSets, "A has " + std::to_string(sets.a_values.size()) +
                                                    " elements but O has " + std::to_string(sets.o_values.size()));
  }
  if (sets.beta.sign() <= 0) throw Error(ErrorKind::InvalidBoundingSets, "beta must be > 0");
  for (const auto* side : {&sets.a_values, &sets.o_values}) {
    std::set<std::size_t> seen;
    for (const IndexedValue& element : *side) {
      if (element.value.sign() <= 0) {
        throw Error(ErrorKind::InvalidBoundingSets,
                    "element " + std::to_string(element.index) + " has non-positive value " + element.value.str());
      }
      if (element.index < 1 || element.index > sets.n) {
        throw Error(ErrorKind::InvalidBoundingSets,
                    "label " + std::to_string(element.index) + " outside [1, " + std::to_string(sets.n) + "]");
      }
      if (!seen.insert(element.index).second) {
        throw Error(ErrorKind::InvalidBoundingSets, "label " + std::to_string(element.index) + " repeated");
      }
    }
  }
}

PmVerdict verify_rho_pm(const BoundingSets& sets, const Pseudomatching& matching, const Rational& rho) {
  validate_bounding_sets(sets);
  if (rho < Rational(1)) return fail("rho: must be >= 1, got " + rho.str());
  std::map<std::size_t, std::size_t> o_uses;
  if (PmVerdict verdict = check_a_side(sets, matching, "4.1", o_uses); !verdict.valid) return verdict;
  const Rational cap = rho.floor();
  for (const auto& [label, uses] : o_uses) {
    if (Rational(static_cast<std::int64_t>(uses)) > cap) {
      return fail("4.2: o_" + std::to_string(label) + " is used " + std::to_string(uses) + " times, cap " +
                  cap.str());
    }
  }
  const auto a_labels = label_map(sets.a_values);
  const auto o_labels = label_map(sets.o_values);
  for (const PmEdge& edge : matching.edges) {
    if (*a_labels.at(edge.a_index) > *o_labels.at(edge.o_index)) {
      return fail("4.3: edge " + edge_str(edge) + " has a > o");
    }
  }
  return {};
}

BoundCheck rho_bound_check(const BoundingSets& sets, const Pseudomatching& matching, const Rational& rho) {
  if (PmVerdict verdict = verify_rho_pm(sets, matching, rho); !verdict.valid) {
    throw Error(ErrorKind::InvalidPseudomatching, verdict.violation);
  }
  BoundCheck check;
  for (const IndexedValue& a : sets.a_values) check.lhs += a.value;
  for (const IndexedValue& o : sets.o_values) check.rhs += o.value;
  check.rhs *= rho;
  check.holds = check.lhs <= check.rhs;
  return check;
}

PmVerdict verify_weak_pm(const BoundingSets& sets, const Pseudomatching& matching) {
  validate_bounding_sets(sets);
  std::map<std::size_t, std::size_t> o_uses;
  if (PmVerdict verdict = check_a_side(sets, matching, "6.1", o_uses); !verdict.valid) return verdict;
  const auto a_labels = label_map(sets.a_values);
  const auto o_labels = label_map(sets.o_values);
  for (const PmEdge& edge : matching.edges) {
    if (edge.a_index <= edge.o_index) return fail("6.2: edge " + edge_str(edge) + " has i <= j");
    if (*a_labels.at(edge.a_index) > *o_labels.at(edge.o_index)) {
      return fail("6.2: edge " + edge_str(edge) + " has a > o");
    }
  }
  return {};
}

BoundCheck weak_bound_check(const BoundingSets& sets, const Pseudomatching& matching) {
  if (PmVerdict verdict = verify_weak_pm(sets, matching); !verdict.valid) {
    throw Error(ErrorKind::InvalidPseudomatching, verdict.violation);
  }
  const Rational growth = Rational(1) + sets.beta;
  BoundCheck check;
  for (const IndexedValue& a : sets.a_values) {
    check.lhs += growth.pow(static_cast<unsigned>(sets.n - a.index)) * a.value;
  }
  for (const IndexedValue& o : sets.o_values) {
    check.rhs += growth.pow(static_cast<unsigned>(sets.n - o.index)) * o.value;
  }
  check.rhs *= Rational(1) + Rational(1) / sets.beta;
  check.holds = check.lhs <= check.rhs;
  return check;
}

std::size_t last_critical_index(const Instance& instance, const Schedule& algorithm_schedule,
                                const Schedule& optimal_schedule) {
  const EvalReport algorithm = evaluate(instance, algorithm_schedule);
  const EvalReport optimal = evaluate(instance, optimal_schedule);
  std::size_t last = 0;
  for (std::size_t k = 0; k < algorithm.completions.size(); ++k) {
    if (algorithm.completions[k] <= optimal.completions[k]) last = k + 1;
  }
  return last;
}

PmVerdict check_two_pm_properties(const Instance& instance, const Schedule& ni_schedule,
                                  const Schedule& optimal_schedule, std::size_t last_critical, std::size_t k,
                                  const Pseudomatching& matching) {
  const auto a_jobs = positions_of(instance, ni_schedule);
  const auto o_jobs = positions_of(instance, optimal_schedule);
  if (k > a_jobs.size() || last_critical >= k) return fail("range: need last_critical < k <= n");

  // Job sets of the first k positions on each side.
  const std::set<std::size_t> a_set(a_jobs.begin(), a_jobs.begin() + static_cast<std::ptrdiff_t>(k));
  const std::set<std::size_t> o_set(o_jobs.begin(), o_jobs.begin() + static_cast<std::ptrdiff_t>(k));

  std::map<std::size_t, std::size_t> partner;  // A position -> O position
  std::map<std::size_t, std::size_t> o_uses;
  for (const PmEdge& edge : matching.edges) {
    if (edge.a_index < 1 || edge.a_index > k || edge.o_index < 1 || edge.o_index > k) {
      return fail("range: edge " + edge_str(edge) + " outside the first " + std::to_string(k) + " positions");
    }
    if (!partner.emplace(edge.a_index, edge.o_index).second) {
      return fail("multiplicity: A position " + std::to_string(edge.a_index) + " matched twice");
    }
    if (++o_uses[edge.o_index] > 2) {
      return fail("multiplicity: O position " + std::to_string(edge.o_index) + " matched more than twice");
    }
  }

  // Property 1.
  for (std::size_t i = 1; i <= k; ++i) {
    const bool should = i > last_critical;
    if (partner.contains(i) != should) {
      return fail("1: A position " + std::to_string(i) + (should ? " is unmatched" : " must not be matched"));
    }
  }

  for (const auto& [i, j] : partner) {
    const std::size_t a_job = a_jobs[i - 1];
    const std::size_t o_job = o_jobs[j - 1];
    if (o_set.contains(a_job)) {
      // Property 2.
      if (o_job != a_job) return fail("2: A position " + std::to_string(i) + " is not matched to itself");
    } else if (a_set.contains(o_job)) {
      // Property 3.
      return fail("3: A position " + std::to_string(i) + " is matched to O position " + std::to_string(j) +
                  " whose job is among the first k non-interfering positions");
    }
    // Property 5.
    if (instance.jobs[a_job].alpha > instance.jobs[o_job].alpha) {
      return fail("5: edge (" + std::to_string(i) + "," + std::to_string(j) + ") has alpha_a > alpha_o");
    }
  }

  // Property 4.
  std::map<std::size_t, std::size_t> outside_uses;
  for (const auto& [i, j] : partner) {
    const std::size_t a_job = a_jobs[i - 1];
    const std::size_t o_job = o_jobs[j - 1];
    if (!a_set.contains(o_job) && !o_set.contains(a_job) && ++outside_uses[j] > 1) {
      return fail("4: O position " + std::to_string(j) + " receives more than one unmatched A job");
    }
  }
  return {};
}

PmConstructionReport construct_two_pm(const Instance& instance, const Schedule& ni_schedule,
                                      const Schedule& optimal_schedule, PmConstructionOptions options) {
  PmConstructionReport report;
  report.instance = instance;
  report.ni_schedule = ni_schedule;
  require_permutation(instance, optimal_schedule.order);

  const EvalReport original = evaluate(instance, ni_schedule);
  const bool has_gaps = std::any_of(original.gaps.begin(), original.gaps.end(),
                                    [](const Rational& gap) { return gap.sign() > 0; });
  if (has_gaps && options.reduce_gaps) {
    report.instance = reduce_instance(instance, ni_schedule);
    report.ni_schedule = non_interfering(report.instance);
    report.reduced = true;
  }
  report.optimal_schedule = canonical_starts(report.instance, optimal_schedule.order);

  const Instance& work = report.instance;
  const auto sigma = positions_of(work, report.ni_schedule);        // A position -> job
  const auto gamma = positions_of(work, report.optimal_schedule);   // O position -> job
  const std::size_t n = sigma.size();
  std::vector<std::size_t> pos_a(n + 1), pos_o(n + 1);              // job -> 1-based position
  for (std::size_t p = 0; p < n; ++p) {
    pos_a[sigma[p]] = p + 1;
    pos_o[gamma[p]] = p + 1;
  }
  auto alpha_a = [&](std::size_t i) -> const Rational& { return work.jobs[sigma[i - 1]].alpha; };
  auto alpha_o = [&](std::size_t j) -> const Rational& { return work.jobs[gamma[j - 1]].alpha; };

  const std::size_t ell = last_critical_index(work, report.ni_schedule, report.optimal_schedule);
  report.last_critical_index = ell;

  std::vector<std::size_t> partner(n + 1, 0);  // A position -> O position, 0 if unmatched
  std::vector<std::size_t> o_load(n + 1, 0);
  Rational load;
  Rational opt_prefix;
  for (std::size_t j = 1; j <= ell; ++j) opt_prefix += alpha_o(j);

  for (std::size_t k = ell + 1; k <= n; ++k) {
    // The job entering the optimal prefix at position k: if it already sits
    // among the matched A positions, rematch it to its own copy.
    const std::size_t returning = pos_a[gamma[k - 1]];
    if (returning > ell && returning < k) {
      --o_load[partner[returning]];
      partner[returning] = k;
      ++o_load[k];
    }

    // The job entering the non-interfering prefix at position k.
    const std::size_t own = pos_o[sigma[k - 1]];
    if (own <= k) {
      partner[k] = own;
      ++o_load[own];
    } else {
      std::size_t chosen = 0;
      for (std::size_t j = 1; j <= k && chosen == 0; ++j) {
        if (pos_a[gamma[j - 1]] > k && o_load[j] == 0) chosen = j;
      }
      if (chosen == 0) {
        throw Error(ErrorKind::ConstructionFailed,
                    "no free optimal-side partner for position " + std::to_string(k));
      }
      if (alpha_a(k) > alpha_o(chosen)) {
        throw Error(ErrorKind::ConstructionFailed, "position " + std::to_string(k) +
                                                       " is longer than its partner at optimal position " +
                                                       std::to_string(chosen));
      }
      partner[k] = chosen;
      ++o_load[chosen];
    }

    PmStep step;
    step.k = k;
    for (std::size_t i = ell + 1; i <= k; ++i) step.matching.edges.push_back({i, partner[i]});
    load += alpha_a(k);
    opt_prefix += alpha_o(k);
    step.load = load;
    step.bound = Rational(2) * opt_prefix;

    if (PmVerdict verdict = check_two_pm_properties(work, report.ni_schedule, report.optimal_schedule, ell, k,
                                                    step.matching);
        !verdict.valid) {
      throw Error(ErrorKind::ConstructionFailed, "M_" + std::to_string(k) + " violates " + verdict.violation);
    }
    if (step.load > step.bound) {
      throw Error(ErrorKind::ConstructionFailed, "load bound fails at k = " + std::to_string(k));
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace detsched
