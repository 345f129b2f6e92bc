#pragma once

// Both sides of the ELSV formula, and its inversion: Hodge integrals
// <psi_1^a_1 ... psi_n^a_n lambda_k> over Mbar_{g,n} recovered by exact
// interpolation of scaled Hurwitz numbers.
//
// For fixed (g, n) the scaled Hurwitz number
//     P_{g,n}(alpha) = (1/r!) prod(alpha_i! / alpha_i^alpha_i) * deg HH^g_alpha
// equals sum_{a, k} (-1)^k <psi^a lambda_k> alpha^a, where a runs over
// ordered exponent tuples with |a| + k = 3g - 3 + n and 0 <= k <= g.
// Unknowns are indexed by the multiset of a, so each one multiplies the
// monomial symmetric polynomial m_a(alpha).

#include "taut/exact.hpp"
#include "taut/hurwitz.hpp"
#include "taut/symmetric.hpp"

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace taut {

/// Index of one linear Hodge integral. `exponents` is a multiset stored
/// sorted non-increasing, so keys are invariant under permuting the points.
struct HodgeKey {
  int g = 0;
  int n = 0;
  std::vector<int> exponents;
  int k = 0;

  HodgeKey() = default;
  HodgeKey(int g, int n, std::vector<int> exponents, int k);

  int degree() const;  // sum of exponents
  auto operator<=>(const HodgeKey&) const = default;
};

using HodgeTable = std::map<HodgeKey, Rational>;

/// Throws DomainError unless 2g - 2 + n > 0 and n >= 1.
void require_elsv_range(int g, int n);

/// Scaled Hurwitz number P_{g,n}(alpha) from an already computed value.
Rational scaled_hurwitz(const HurwitzValue& value);

enum class HurwitzMethod { fast, brute };

/// Computes the Hurwitz value with `method`, then scales it.
Rational scaled_hurwitz(const HurwitzProblem& problem, HurwitzMethod method = HurwitzMethod::fast,
                        const SearchOptions& options = {});

/// Unknown basis for P_{g,n}: every key with |a| = 3g - 3 + n - k, 0 <= k <= g.
/// Ordered by k, then exponents descending.
std::vector<HodgeKey> polynomial_model(int g, int n);

/// Same basis shape for an arbitrary k range. k < 0 or k > g gives monomial
/// degrees outside the admissible window; used to test that window.
std::vector<HodgeKey> extended_model(int g, int n, int k_min, int k_max);

/// m_a(alpha): sum over distinct rearrangements b of a of prod alpha_i^b_i.
Integer monomial_symmetric(std::span<const int> exponents, std::span<const int> alpha);

struct Evaluation {
  std::vector<int> alpha;  // sorted non-increasing, positive
  Rational value;
};

struct Interpolation {
  HodgeTable table;
  std::vector<std::vector<int>> solving_points;
  std::vector<std::vector<int>> held_out_points;
};

/// Solves for the coefficients of `basis` from `evaluations`.
///
/// Rows are taken greedily in the given order while they raise the rank;
/// those form the solving set, the rest are held out. The square system is
/// solved exactly and every evaluation (solving and held out) is checked.
/// Returned values are the Hodge integrals, i.e. the solved coefficients
/// with the (-1)^k sign removed.
///
/// Throws RankDeficient if the grid cannot determine every unknown, and
/// InvariantViolation("polynomiality violated ...") if some evaluation is not
/// reproduced.
Interpolation interpolate(std::span<const HodgeKey> basis, std::span<const Evaluation> evaluations);

/// interpolate() over polynomial_model(g, n).
Interpolation interpolate_hodge(int g, int n, std::span<const Evaluation> evaluations);

/// sum_{keys} (-1)^k value * m_a(alpha). Throws InvalidArgument listing any
/// key of polynomial_model(g, n) missing from the table.
Rational evaluate_polynomial(const HodgeTable& table, int g, std::span<const int> alpha);

enum class ElsvForm { unlabeled, labeled };

/// One side-by-side comparison. Unlabeled form: lhs = H^g_alpha,
/// rhs = r!/#Aut(alpha) prod(alpha_i^alpha_i / alpha_i!) * integral.
/// Labeled form: lhs = scaled_hurwitz, rhs = the integral.
struct ElsvReport {
  HurwitzProblem problem;
  ElsvForm form;
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

struct ElsvVerification {
  ElsvReport unlabeled;
  ElsvReport labeled;
  bool equal() const { return unlabeled.equal && labeled.equal; }
};

ElsvVerification verify_elsv(const HurwitzValue& value, const HodgeTable& table);

/// All sorted n-tuples with entries in {1..max_part}, lexicographically.
std::vector<std::vector<int>> evaluation_grid(int n, int max_part);

/// Evaluates scaled_hurwitz (fast path) at every grid point.
std::vector<Evaluation> evaluate_grid(int g, std::span<const std::vector<int>> grid);

}  // namespace taut
