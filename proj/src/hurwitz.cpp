#include "taut/hurwitz.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace taut {

void MonodromyTuple::validate() const {
  const int d = degree();
  Permutation product = sigma_inf;
  for (const auto& tau : taus) {
    if (tau.degree() != d) throw InvariantViolation("monodromy tuple: degree mismatch");
    const auto shape = cycle_type(tau).parts();
    if (shape[0] != 2 || (shape.size() > 1 && shape[1] != 1)) {
      throw InvariantViolation("monodromy tuple: " + tau.to_cycle_string() + " is not a transposition");
    }
    product = compose(tau, product);
  }
  if (!product.is_identity()) throw InvariantViolation("monodromy tuple: product is not the identity");
  std::vector<Permutation> gens = taus;
  gens.push_back(sigma_inf);
  if (!is_transitive(gens, d)) throw InvariantViolation("monodromy tuple: group is not transitive");
}

Integer search_space_size(const HurwitzProblem& problem) {
  const long d = problem.degree();
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(d * (d - 1) / 2),
                static_cast<unsigned long>(problem.branch_points()));
  return out;
}

namespace {

constexpr int kMaxSearchDegree = 16;
using Points = std::array<std::uint8_t, kMaxSearchDegree>;

struct Frame {
  Points image{};
  Points preimage{};
  Points component{};
  int cycles = 0;
  int components = 0;
};

// Depth-first search over tau_1, ..., tau_r. The partial product
// P_k = tau_k o ... o tau_1 must end with cycle type alpha; sigma_inf is
// then P_r^{-1}. Prunes on cycle count (each transposition changes it by one)
// and on the number of orbits of the transpositions chosen so far.
class TupleSearch {
 public:
  explicit TupleSearch(const HurwitzProblem& problem)
      : d_(problem.degree()), r_(problem.branch_points()), n_(problem.points()) {
    if (d_ > kMaxSearchDegree) throw BudgetExceeded("degree too large for the oracle search");
    for (int a = 1; a <= d_; ++a) {
      for (int b = a + 1; b <= d_; ++b) transpositions_.push_back({a, b});
    }
    target_.fill(0);
    for (int p : problem.alpha().parts()) ++target_[p];
    chosen_.resize(r_);
    sigma_.resize(d_);
  }

  int task_count() const { return r_ == 0 ? 1 : static_cast<int>(transpositions_.size()); }

  template <class Leaf>
  void run_task(int task, Leaf& leaf) {
    Frame root;
    for (int x = 0; x < d_; ++x) {
      root.image[x] = root.preimage[x] = root.component[x] = static_cast<std::uint8_t>(x);
    }
    root.cycles = d_;
    root.components = d_;
    if (r_ == 0) {
      if (root.components == 1 && matches_target(root)) emit(root, leaf);
      return;
    }
    step(0, root, transpositions_[task], leaf);
  }

 private:
  template <class Leaf>
  void step(int depth, const Frame& parent, Transposition t, Leaf& leaf) {
    const int a = t.a - 1;
    const int b = t.b - 1;
    Frame f = parent;
    // Left multiplication by (a b) splits the cycle through a and b, or
    // merges the two cycles containing them.
    bool same_cycle = false;
    for (int x = parent.image[a]; x != a; x = parent.image[x]) {
      if (x == b) {
        same_cycle = true;
        break;
      }
    }
    f.cycles += same_cycle ? 1 : -1;
    const int pa = parent.preimage[a];
    const int pb = parent.preimage[b];
    f.image[pa] = static_cast<std::uint8_t>(b);
    f.image[pb] = static_cast<std::uint8_t>(a);
    f.preimage[a] = static_cast<std::uint8_t>(pb);
    f.preimage[b] = static_cast<std::uint8_t>(pa);
    if (f.component[a] != f.component[b]) {
      const auto from = f.component[b];
      const auto to = f.component[a];
      for (int x = 0; x < d_; ++x) {
        if (f.component[x] == from) f.component[x] = to;
      }
      --f.components;
    }
    const int remaining = r_ - depth - 1;
    if (std::abs(f.cycles - n_) > remaining || f.components - 1 > remaining) return;
    chosen_[depth] = t;
    if (remaining == 0) {
      if (matches_target(f)) emit(f, leaf);
      return;
    }
    for (const auto& next : transpositions_) step(depth + 1, f, next, leaf);
  }

  bool matches_target(const Frame& f) const {
    std::array<std::uint8_t, kMaxSearchDegree + 1> histogram{};
    std::array<bool, kMaxSearchDegree> seen{};
    for (int s = 0; s < d_; ++s) {
      if (seen[s]) continue;
      int length = 0;
      for (int x = s; !seen[x]; x = f.image[x]) {
        seen[x] = true;
        ++length;
      }
      if (++histogram[length] > target_[length]) return false;
    }
    return true;
  }

  template <class Leaf>
  void emit(const Frame& f, Leaf& leaf) {
    for (int x = 0; x < d_; ++x) sigma_[x] = f.preimage[x] + 1;
    leaf(TupleView{sigma_, std::span<const Transposition>(chosen_.data(), chosen_.size())});
  }

  int d_;
  int r_;
  int n_;
  std::vector<Transposition> transpositions_;
  std::array<std::uint8_t, kMaxSearchDegree + 1> target_{};
  std::vector<Transposition> chosen_;
  std::vector<int> sigma_;
};

template <class PerTask>
void run_tasks(int tasks, int threads, PerTask&& per_task) {
  threads = std::max(1, std::min(threads, tasks));
  if (threads == 1) {
    for (int t = 0; t < tasks; ++t) per_task(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (int t; (t = next.fetch_add(1)) < tasks;) {
        try {
          per_task(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

HurwitzValue make_value(const HurwitzProblem& problem, Integer tuple_count) {
  Rational h(tuple_count, factorial(problem.degree()));
  h.canonicalize();
  Rational labeled = h * Rational(aut_count(problem.alpha()));
  return HurwitzValue{problem, std::move(tuple_count), std::move(h), std::move(labeled)};
}

}  // namespace

void check_budget(const HurwitzProblem& problem, const SearchOptions& options) {
  if (problem.degree() > kMaxSearchDegree || search_space_size(problem) > Integer(std::to_string(options.budget))) {
    throw BudgetExceeded("search space " + to_string(search_space_size(problem)) +
                         " exceeds the oracle budget " + std::to_string(options.budget) +
                         "; use the fast method");
  }
}

int tuple_task_count(const HurwitzProblem& problem) {
  const int d = problem.degree();
  return problem.branch_points() == 0 ? 1 : d * (d - 1) / 2;
}

void visit_tuples(const HurwitzProblem& problem, const SearchOptions& options,
                  const std::function<void(const TupleView&)>& visitor) {
  check_budget(problem, options);
  TupleSearch search(problem);
  auto leaf = [&](const TupleView& view) { visitor(view); };
  for (int t = 0; t < search.task_count(); ++t) search.run_task(t, leaf);
}

void visit_tuples_parallel(const HurwitzProblem& problem, const SearchOptions& options,
                           const std::function<void(int, const TupleView&)>& visitor) {
  check_budget(problem, options);
  run_tasks(tuple_task_count(problem), options.threads, [&](int task) {
    TupleSearch search(problem);
    auto leaf = [&](const TupleView& view) { visitor(task, view); };
    search.run_task(task, leaf);
  });
}

HurwitzValue hurwitz_brute(const HurwitzProblem& problem, const SearchOptions& options) {
  check_budget(problem, options);
  const int tasks = tuple_task_count(problem);
  std::vector<std::uint64_t> counts(tasks, 0);
  run_tasks(tasks, options.threads, [&](int task) {
    TupleSearch search(problem);
    std::uint64_t count = 0;
    auto leaf = [&](const TupleView&) { ++count; };
    search.run_task(task, leaf);
    counts[task] = count;
  });
  Integer total = 0;
  for (auto c : counts) total += Integer(std::to_string(c));
  return make_value(problem, std::move(total));
}

MonodromyTuple to_monodromy_tuple(const TupleView& view) {
  const int d = static_cast<int>(view.sigma_inf.size());
  MonodromyTuple out{Permutation(std::vector<int>(view.sigma_inf.begin(), view.sigma_inf.end())), {}};
  out.taus.reserve(view.taus.size());
  for (const auto& t : view.taus) out.taus.push_back(Permutation::transposition(d, t.a, t.b));
  return out;
}

std::vector<MonodromyTuple> enumerate_tuples(const HurwitzProblem& problem, const SearchOptions& options) {
  std::vector<MonodromyTuple> out;
  visit_tuples(problem, options, [&](const TupleView& view) { out.push_back(to_monodromy_tuple(view)); });
  return out;
}

// ---------------------------------------------------------------------------
// Fast path.

namespace {

// Counts of transposition sequences by the cycle type of their product, in
// one symmetric group S_d. levels[k][i] = #{(tau_1..tau_k) : product has
// type classes[i]}; each level applies "multiply by the sum of all
// transpositions" in the class algebra.
class ClassAlgebra {
 public:
  explicit ClassAlgebra(int d) : classes_(partitions_of(d)) {
    for (std::size_t i = 0; i < classes_.size(); ++i) index_[classes_[i].parts()] = static_cast<int>(i);
    transitions_.resize(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      const auto& parts = classes_[i].parts();
      auto add = [&](std::vector<int> target, long weight) {
        std::sort(target.begin(), target.end(), std::greater<>());
        transitions_[i].push_back({index_.at(target), weight});
      };
      for (std::size_t x = 0; x < parts.size(); ++x) {
        for (std::size_t y = x + 1; y < parts.size(); ++y) {
          std::vector<int> target;
          for (std::size_t z = 0; z < parts.size(); ++z) {
            if (z != x && z != y) target.push_back(parts[z]);
          }
          target.push_back(parts[x] + parts[y]);
          add(std::move(target), static_cast<long>(parts[x]) * parts[y]);
        }
        const int length = parts[x];
        for (int j = 1; 2 * j <= length; ++j) {
          std::vector<int> target;
          for (std::size_t z = 0; z < parts.size(); ++z) {
            if (z != x) target.push_back(parts[z]);
          }
          target.push_back(j);
          target.push_back(length - j);
          add(std::move(target), 2 * j == length ? length / 2 : length);
        }
      }
    }
    std::vector<Integer> start(classes_.size(), 0);
    start[index_.at(std::vector<int>(d, 1))] = 1;
    levels_.push_back(std::move(start));
  }

  const Integer& count(int steps, const std::vector<int>& type) {
    while (static_cast<int>(levels_.size()) <= steps) {
      const auto& prev = levels_.back();
      std::vector<Integer> next(classes_.size(), 0);
      for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (prev[i] == 0) continue;
        for (const auto& [target, weight] : transitions_[i]) next[target] += prev[i] * weight;
      }
      levels_.push_back(std::move(next));
    }
    return levels_[steps][index_.at(type)];
  }

 private:
  std::vector<Partition> classes_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<std::pair<int, long>>> transitions_;
  std::vector<std::vector<Integer>> levels_;
};

// Connected (transitive) counts with labeled cycles over infinity, extracted
// from the possibly-disconnected counts by splitting off the orbit that
// contains the first labeled cycle. Each orbit S carries its own genus via
// r_S = d_S + n_S + 2 g_S - 2; points are distributed by binom(d, d_S) and
// branch times by binom(r, r_S).
class ConnectedCounter {
 public:
  Integer connected_labeled(const std::vector<int>& parts, int genus) {
    const auto key = std::make_pair(parts, genus);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int n = static_cast<int>(parts.size());
    const int d = sum(parts);
    const int r = d + n + 2 * genus - 2;
    Integer total = disconnected_labeled(parts, r);
    const unsigned full = (1u << (n - 1)) - 1;
    for (unsigned mask = 0; mask < full; ++mask) {
      std::vector<int> block{parts[0]};
      std::vector<int> rest;
      for (int i = 1; i < n; ++i) ((mask >> (i - 1)) & 1u ? block : rest).push_back(parts[i]);
      const int block_d = sum(block);
      const int block_n = static_cast<int>(block.size());
      for (int block_genus = 0;; ++block_genus) {
        const int block_r = block_d + block_n + 2 * block_genus - 2;
        if (block_r > r) break;
        const Integer c = connected_labeled(block, block_genus);
        if (c == 0) continue;
        total -= binomial(d, block_d) * binomial(r, block_r) * c * disconnected_labeled(rest, r - block_r);
      }
    }
    memo_.emplace(key, total);
    return total;
  }

 private:
  static int sum(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += x;
    return s;
  }

  Integer disconnected_labeled(const std::vector<int>& parts, int r) {
    if (parts.empty()) return r == 0 ? 1 : 0;
    std::vector<int> sorted = parts;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const Partition type(sorted);
    auto [it, inserted] = algebras_.try_emplace(type.size(), type.size());
    return aut_count(type) * it->second.count(r, sorted);
  }

  std::map<int, ClassAlgebra> algebras_;
  std::map<std::pair<std::vector<int>, int>, Integer> memo_;
};

}  // namespace

HurwitzValue hurwitz_fast(const HurwitzProblem& problem) {
  ConnectedCounter counter;
  const Integer labeled = counter.connected_labeled(problem.alpha().parts(), problem.genus());
  const Integer aut = aut_count(problem.alpha());
  if (labeled < 0 || labeled % aut != 0) {
    throw InvariantViolation("connected count " + to_string(labeled) + " is not a non-negative multiple of #Aut");
  }
  return make_value(problem, labeled / aut);
}

}  // namespace taut
