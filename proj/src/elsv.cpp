#include "taut/elsv.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace taut {

HodgeKey::HodgeKey(int g_, int n_, std::vector<int> exponents_, int k_)
    : g(g_), n(n_), exponents(std::move(exponents_)), k(k_) {
  if (static_cast<int>(exponents.size()) != n) throw InvalidArgument("Hodge key: need one exponent per point");
  for (int a : exponents) {
    if (a < 0) throw InvalidArgument("Hodge key: negative psi exponent");
  }
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
}

int HodgeKey::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

void require_elsv_range(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) {
    throw DomainError("ELSV not applicable for (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) +
                      "): need n >= 1 and 2g - 2 + n > 0");
  }
}

Rational scaled_hurwitz(const HurwitzValue& value) {
  const auto& problem = value.problem;
  require_elsv_range(problem.genus(), problem.points());
  Rational out = value.h_labeled / Rational(factorial(problem.branch_points()));
  for (int a : problem.alpha().parts()) out *= Rational(factorial(a), power(a, a));
  out.canonicalize();
  return out;
}

Rational scaled_hurwitz(const HurwitzProblem& problem, HurwitzMethod method, const SearchOptions& options) {
  require_elsv_range(problem.genus(), problem.points());
  return scaled_hurwitz(method == HurwitzMethod::fast ? hurwitz_fast(problem) : hurwitz_brute(problem, options));
}

namespace {

// Multisets of `n` non-negative integers summing to `total`, each sorted
// non-increasing, in reverse lexicographic order.
std::vector<std::vector<int>> exponent_multisets(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (static_cast<int>(current.size()) == n) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 0; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(total, total);
  return out;
}

bool odd(int k) { return (k % 2 + 2) % 2 == 1; }

}  // namespace

std::vector<HodgeKey> extended_model(int g, int n, int k_min, int k_max) {
  require_elsv_range(g, n);
  std::vector<HodgeKey> out;
  const int dimension = 3 * g - 3 + n;
  for (int k = k_min; k <= k_max; ++k) {
    const int total = dimension - k;
    if (total < 0) continue;
    for (auto& a : exponent_multisets(n, total)) out.emplace_back(g, n, std::move(a), k);
  }
  return out;
}

std::vector<HodgeKey> polynomial_model(int g, int n) { return extended_model(g, n, 0, g); }

Integer monomial_symmetric(std::span<const int> exponents, std::span<const int> alpha) {
  if (exponents.size() != alpha.size()) throw InvalidArgument("monomial: exponent and point counts differ");
  std::vector<int> b(exponents.begin(), exponents.end());
  std::sort(b.begin(), b.end());
  Integer total = 0;
  do {
    Integer term = 1;
    for (std::size_t i = 0; i < b.size(); ++i) term *= power(alpha[i], static_cast<unsigned long>(b[i]));
    total += term;
  } while (std::next_permutation(b.begin(), b.end()));
  return total;
}

namespace {

using IntRow = std::vector<Integer>;

// Fraction-free reduction of `row` against the echelon rows found so far.
// Returns the pivot column of the reduced row, or -1 if it reduced to zero.
int reduce_row(IntRow& row, const std::vector<IntRow>& echelon, const std::vector<int>& pivots) {
  for (std::size_t e = 0; e < echelon.size(); ++e) {
    const int c = pivots[e];
    if (row[c] == 0) continue;
    const Integer factor = row[c];
    const Integer scale = echelon[e][c];
    Integer content = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = row[j] * scale - factor * echelon[e][j];
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), row[j].get_mpz_t());
    }
    if (content > 1) {
      for (auto& x : row) x /= content;
    }
  }
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) return static_cast<int>(j);
  }
  return -1;
}

// Bareiss elimination on a square nonsingular integer system. Exact
// division at every step keeps entries as determinants of minors.
std::vector<Rational> bareiss_solve(std::vector<IntRow> m) {
  const std::size_t size = m.size();
  Integer previous = 1;
  for (std::size_t k = 0; k < size; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < size && m[swap_with][k] == 0) ++swap_with;
      if (swap_with == size) throw InvariantViolation("singular system after rank selection");
      std::swap(m[k], m[swap_with]);
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j <= size; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), previous.get_mpz_t());
      }
      m[i][k] = 0;
    }
    previous = m[k][k];
  }
  std::vector<Rational> x(size);
  for (std::size_t k = size; k-- > 0;) {
    Rational acc(m[k][size]);
    for (std::size_t j = k + 1; j < size; ++j) acc -= Rational(m[k][j]) * x[j];
    x[k] = acc / Rational(m[k][k]);
    x[k].canonicalize();
  }
  return x;
}

std::string point_string(const std::vector<int>& alpha) {
  std::string out = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + std::to_string(alpha[i]);
  return out + ")";
}

}  // namespace

Interpolation interpolate(std::span<const HodgeKey> basis, std::span<const Evaluation> evaluations) {
  const std::size_t unknowns = basis.size();
  std::vector<IntRow> rows;
  rows.reserve(evaluations.size());
  for (const auto& ev : evaluations) {
    IntRow row;
    row.reserve(unknowns);
    for (const auto& key : basis) row.push_back(monomial_symmetric(key.exponents, ev.alpha));
    rows.push_back(std::move(row));
  }

  std::vector<IntRow> echelon;
  std::vector<int> pivots;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < rows.size() && chosen.size() < unknowns; ++i) {
    IntRow reduced = rows[i];
    const int pivot = reduce_row(reduced, echelon, pivots);
    if (pivot < 0) continue;
    echelon.push_back(std::move(reduced));
    pivots.push_back(pivot);
    chosen.push_back(i);
  }
  if (chosen.size() < unknowns) {
    throw RankDeficient("insufficient evaluation grid: rank " + std::to_string(chosen.size()) + " of " +
                            std::to_string(unknowns) + " unknowns",
                        static_cast<int>(chosen.size()), static_cast<int>(unknowns));
  }

  // Clear denominators of the right-hand side, solve over the integers.
  Integer scale = 1;
  for (std::size_t i : chosen) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), evaluations[i].value.get_den_mpz_t());
  std::vector<IntRow> system;
  for (std::size_t i : chosen) {
    IntRow row = rows[i];
    Rational rhs = evaluations[i].value * Rational(scale);
    rhs.canonicalize();
    row.push_back(rhs.get_num());
    system.push_back(std::move(row));
  }
  std::vector<Rational> coefficients = bareiss_solve(std::move(system));
  for (auto& c : coefficients) {
    c /= Rational(scale);
    c.canonicalize();
  }

  Interpolation out;
  std::vector<bool> in_solve(evaluations.size(), false);
  for (std::size_t i : chosen) in_solve[i] = true;
  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    Rational predicted = 0;
    for (std::size_t j = 0; j < unknowns; ++j) predicted += coefficients[j] * Rational(rows[i][j]);
    if (predicted != evaluations[i].value) {
      throw InvariantViolation("polynomiality violated at alpha = " + point_string(evaluations[i].alpha) +
                               ": predicted " + to_string(predicted) + ", evaluated " +
                               to_string(evaluations[i].value));
    }
    (in_solve[i] ? out.solving_points : out.held_out_points).push_back(evaluations[i].alpha);
  }
  for (std::size_t j = 0; j < unknowns; ++j) {
    out.table.emplace(basis[j], odd(basis[j].k) ? Rational(-coefficients[j]) : coefficients[j]);
  }
  return out;
}

Interpolation interpolate_hodge(int g, int n, std::span<const Evaluation> evaluations) {
  const auto basis = polynomial_model(g, n);
  for (const auto& ev : evaluations) {
    if (static_cast<int>(ev.alpha.size()) != n) throw InvalidArgument("evaluation point has the wrong length");
  }
  return interpolate(basis, evaluations);
}

Rational evaluate_polynomial(const HodgeTable& table, int g, std::span<const int> alpha) {
  const int n = static_cast<int>(alpha.size());
  std::vector<std::string> missing;
  Rational total = 0;
  for (const auto& key : polynomial_model(g, n)) {
    auto it = table.find(key);
    if (it == table.end()) {
      std::ostringstream name;
      name << "<psi^" << point_string(key.exponents) << " lambda_" << key.k << ">";
      missing.push_back(name.str());
      continue;
    }
    const Rational term = it->second * Rational(monomial_symmetric(key.exponents, alpha));
    total += odd(key.k) ? Rational(-term) : term;
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw InvalidArgument("Hodge table is missing keys: " + list);
  }
  total.canonicalize();
  return total;
}

ElsvVerification verify_elsv(const HurwitzValue& value, const HodgeTable& table) {
  const auto& problem = value.problem;
  require_elsv_range(problem.genus(), problem.points());
  const Rational integral = evaluate_polynomial(table, problem.genus(), problem.ordered_alpha());

  Rational prefactor(factorial(problem.branch_points()), aut_count(problem.alpha()));
  for (int a : problem.alpha().parts()) prefactor *= Rational(power(a, a), factorial(a));
  Rational rhs = prefactor * integral;
  rhs.canonicalize();

  ElsvReport unlabeled{problem, ElsvForm::unlabeled, value.h, rhs, value.h == rhs};
  const Rational scaled = scaled_hurwitz(value);
  ElsvReport labeled{problem, ElsvForm::labeled, scaled, integral, scaled == integral};
  return ElsvVerification{std::move(unlabeled), std::move(labeled)};
}

std::vector<std::vector<int>> evaluation_grid(int n, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int)> rec = [&](int max_entry) {
    if (static_cast<int>(current.size()) == n) {
      out.push_back(current);
      return;
    }
    for (int x = 1; x <= max_entry; ++x) {
      current.push_back(x);
      rec(x);
      current.pop_back();
    }
  };
  rec(max_part);
  // Tuples are built non-increasing; order them by (max entry, then lexicographic).
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a < b;
  });
  return out;
}

std::vector<Evaluation> evaluate_grid(int g, std::span<const std::vector<int>> grid) {
  std::vector<Evaluation> out;
  out.reserve(grid.size());
  for (const auto& alpha : grid) {
    out.push_back({alpha, scaled_hurwitz(HurwitzProblem(g, alpha))});
  }
  return out;
}

}  // namespace taut
