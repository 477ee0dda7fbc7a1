#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "detsched/model.hpp"

namespace detsched {

/// One element of an indexed value set. `index` is the element's label,
/// usually a schedule position in [1, n]; labels need not be contiguous.
struct IndexedValue {
  std::size_t index = 0;
  Rational value;
};

/// Two equal-cardinality indexed sets (A and O) of positive values; the
/// bounding graph is the complete bipartite graph A x O.
struct BoundingSets {
  std::vector<IndexedValue> a_values;
  std::vector<IndexedValue> o_values;
  /// Exponent base for the geometric weights (1+b)^(n - index).
  std::size_t n = 0;
  Rational beta{1};
};

/// Labels both sides 1..k and sets n = k unless a larger n is given.
BoundingSets make_bounding_sets(std::vector<Rational> a, std::vector<Rational> o, Rational beta,
                                std::size_t n = 0);

/// Throws InvalidBoundingSets unless both sides have the same size, all
/// values are positive, labels are unique per side and lie in [1, n].
void validate_bounding_sets(const BoundingSets& sets);

/// An edge joins the A element labelled `a_index` to the O element labelled
/// `o_index`.
struct PmEdge {
  std::size_t a_index = 0;
  std::size_t o_index = 0;

  friend bool operator==(const PmEdge&, const PmEdge&) = default;
};

struct Pseudomatching {
  std::vector<PmEdge> edges;
};

/// Outcome of a property check; `violation` names the first failed
/// property (e.g. "4.2") followed by detail, empty when valid.
struct PmVerdict {
  bool valid = true;
  std::string violation;
};

struct BoundCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// rho-pseudomatching: every A element is matched exactly once (4.1), every
/// O element at most floor(rho) times (4.2), and a <= o on every edge (4.3).
PmVerdict verify_rho_pm(const BoundingSets& sets, const Pseudomatching& matching, const Rational& rho);

/// (sum A, rho * sum O, sum A <= rho * sum O). Throws InvalidPseudomatching
/// when `matching` is not a rho-pseudomatching.
BoundCheck rho_bound_check(const BoundingSets& sets, const Pseudomatching& matching, const Rational& rho);

/// Weak pseudomatching: every A element matched exactly once (6.1) and
/// every edge has a-label > o-label and a <= o (6.2).
PmVerdict verify_weak_pm(const BoundingSets& sets, const Pseudomatching& matching);

/// (sum (1+b)^(n-i) a_i, (1+1/b) sum (1+b)^(n-j) o_j, lhs <= rhs). Throws
/// InvalidPseudomatching when `matching` is not a weak pseudomatching.
BoundCheck weak_bound_check(const BoundingSets& sets, const Pseudomatching& matching);

/// Largest k (1-based) with C_k <= C*_k, comparing the k-th completions of
/// the two schedules; 0 when there is none.
std::size_t last_critical_index(const Instance& instance, const Schedule& algorithm_schedule,
                                const Schedule& optimal_schedule);

/// Pseudomatching M_k between the first k positions of a non-interfering
/// schedule (A side) and of an optimal one (O side). Edge labels are
/// 1-based positions in the respective schedules.
struct PmStep {
  std::size_t k = 0;
  Pseudomatching matching;
  /// sum of alpha over non-interfering positions last_critical+1..k.
  Rational load;
  /// 2 * sum of alpha over optimal positions 1..k.
  Rational bound;
};

struct PmConstructionReport {
  std::size_t last_critical_index = 0;
  std::vector<PmStep> steps;
  /// True when the non-interfering schedule had gaps and the construction
  /// ran on the gap-free reduced instance.
  bool reduced = false;
  /// Instance and schedules the matchings refer to.
  Instance instance;
  Schedule ni_schedule;
  Schedule optimal_schedule;
};

struct PmConstructionOptions {
  /// Replace a gapped non-interfering schedule by the reduced instance first.
  bool reduce_gaps = true;
};

/// Checks the five structural properties of the load-bound 2-pseudomatching
/// for prefix length k after the last critical position `last_critical`:
///  1. exactly the positions last_critical+1..k of the A side are matched;
///  2. a job among the first k optimal positions is matched to its own copy;
///  3. any other matched job goes to an O job outside the first k
///     non-interfering positions;
///  4. such an O job receives at most one of those edges;
///  5. alpha(a) <= alpha(o) on every edge;
/// plus the 2-pseudomatching multiplicities (A at most once, O at most
/// twice). Independent of the constructor below.
PmVerdict check_two_pm_properties(const Instance& instance, const Schedule& ni_schedule,
                                  const Schedule& optimal_schedule, std::size_t last_critical, std::size_t k,
                                  const Pseudomatching& matching);

/// Builds M_k for k = last_critical+1..n inductively and records the load
/// bound at every k. Throws ConstructionFailed if a step finds no admissible
/// partner, a matching fails check_two_pm_properties, or load > bound.
PmConstructionReport construct_two_pm(const Instance& instance, const Schedule& ni_schedule,
                                      const Schedule& optimal_schedule, PmConstructionOptions options = {});

}  // namespace detsched
