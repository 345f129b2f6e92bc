#pragma once

// Hurwitz numbers H^g_alpha and the degree of the labeled Hurwitz class.
//
// A cover is encoded by a monodromy tuple (sigma_inf, tau_1, ..., tau_r) with
// sigma_inf of cycle type alpha, each tau_i a transposition,
// tau_r o ... o tau_1 o sigma_inf = id, and a transitive generated group.
// H^g_alpha = #{tuples} / d!, which weights each cover by 1/#Aut(cover).
//
// Two independent routes compute the same value: an exhaustive search over
// transposition sequences (the oracle) and a class-algebra dynamic program
// with connected-part extraction (the fast path).

#include "taut/exact.hpp"
#include "taut/symmetric.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace taut {

struct MonodromyTuple {
  Permutation sigma_inf;
  std::vector<Permutation> taus;

  int degree() const noexcept { return sigma_inf.degree(); }
  /// Throws InvariantViolation naming the first broken invariant.
  void validate() const;
};

struct HurwitzValue {
  HurwitzProblem problem;
  Integer tuple_count;
  Rational h;          // tuple_count / d!
  Rational h_labeled;  // #Aut(alpha) * h
};

struct SearchOptions {
  /// Upper bound on (d(d-1)/2)^r, the raw size of the oracle search space.
  std::uint64_t budget = 2'000'000'000ULL;
  int threads = 1;
};

/// A transposition (a b) with 1 <= a < b <= d.
struct Transposition {
  int a;
  int b;
  auto operator<=>(const Transposition&) const = default;
};

/// Borrowed view of one tuple during a search. sigma_inf holds 1-based images.
struct TupleView {
  std::span<const int> sigma_inf;
  std::span<const Transposition> taus;
};

/// Size of the transposition-sequence space, (d(d-1)/2)^r.
Integer search_space_size(const HurwitzProblem& problem);

/// Throws BudgetExceeded when the oracle search space exceeds the budget.
void check_budget(const HurwitzProblem& problem, const SearchOptions& options);

/// Exhaustive count of monodromy tuples.
HurwitzValue hurwitz_brute(const HurwitzProblem& problem, const SearchOptions& options = {});

/// Class-algebra count; no budget.
HurwitzValue hurwitz_fast(const HurwitzProblem& problem);

/// Visits every valid tuple exactly once, ordered lexicographically by
/// (tau_1, ..., tau_r) with transpositions ordered by (a, b). The tuple is
/// determined by its transpositions, so this is a total order.
void visit_tuples(const HurwitzProblem& problem, const SearchOptions& options,
                  const std::function<void(const TupleView&)>& visitor);

/// Number of independent tasks used by visit_tuples_parallel.
int tuple_task_count(const HurwitzProblem& problem);

/// Same tuples as visit_tuples, split into tuple_task_count() tasks by the
/// choice of tau_1 and run on options.threads workers. Within a task tuples
/// arrive in order; tasks may run concurrently, so the visitor must only touch
/// per-task state. Merging per-task results in task order is deterministic.
void visit_tuples_parallel(const HurwitzProblem& problem, const SearchOptions& options,
                           const std::function<void(int task, const TupleView&)>& visitor);

/// Materialized, ordered tuple stream (small problems only).
std::vector<MonodromyTuple> enumerate_tuples(const HurwitzProblem& problem,
                                             const SearchOptions& options = {});

MonodromyTuple to_monodromy_tuple(const TupleView& view);

}  // namespace taut
