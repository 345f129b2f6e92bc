#include "taut/degeneration.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace taut {

namespace {

// Builds the dual graph of the cover of the chain into reusable buffers.
// Vertex ids are segment-major; within a segment, by smallest sheet.
class ChainBuilder {
 public:
  void build(const TupleView& tuple, std::span<const int> ordered_alpha) {
    d_ = static_cast<int>(tuple.sigma_inf.size());
    r_ = static_cast<int>(tuple.taus.size());
    const int segments = std::max(r_, 1);

    rho_.resize(static_cast<std::size_t>(r_ + 1) * d_);
    for (int x = 0; x < d_; ++x) rho(0)[x] = tuple.sigma_inf[x] - 1;
    for (int i = 1; i <= r_; ++i) {
      const int a = tuple.taus[i - 1].a - 1;
      const int b = tuple.taus[i - 1].b - 1;
      for (int x = 0; x < d_; ++x) {
        const int y = rho(i - 1)[x];
        rho(i)[x] = y == a ? b : (y == b ? a : y);
      }
    }

    vertex_segment.clear();
    halves.clear();
    point_vertex_.resize(static_cast<std::size_t>(segments) * d_);
    for (int s = 0; s < segments; ++s) {
      parent_.resize(d_);
      std::iota(parent_.begin(), parent_.end(), 0);
      for (int x = 0; x < d_; ++x) unite(x, rho(s)[x]);
      if (r_ > 0) unite(tuple.taus[s].a - 1, tuple.taus[s].b - 1);

      const int base = static_cast<int>(vertex_segment.size());
      root_id_.assign(d_, -1);
      int count = 0;
      for (int x = 0; x < d_; ++x) {
        const int root = find(x);
        if (root_id_[root] < 0) root_id_[root] = count++;
        point_vertex(s)[x] = base + root_id_[root];
      }
      // Riemann-Hurwitz on each component: ramification at the left point
      // (rho_s), at the simple branch point, and at the right point.
      ramification_.assign(count, 0);
      size_.assign(count, 0);
      for (int x = 0; x < d_; ++x) ++size_[point_vertex(s)[x] - base];
      add_ramification(rho(s), s, base);
      if (r_ > 0) {
        ++ramification_[point_vertex(s)[tuple.taus[s].a - 1] - base];
        add_ramification(rho(s + 1), s, base);
      }
      for (int c = 0; c < count; ++c) {
        const int twice_genus = ramification_[c] - 2 * size_[c] + 2;
        if (twice_genus != 0) {
          throw InvariantViolation("chain cover has a component of genus " + std::to_string(twice_genus / 2) +
                                   " over segment " + std::to_string(s + 1));
        }
        vertex_segment.push_back(s + 1);
      }
    }

    for (int i = 1; i < r_; ++i) {
      for_each_cycle(rho(i), [&](int x, int) {
        const int h = static_cast<int>(halves.size());
        halves.push_back({point_vertex(i - 1)[x], h + 1, 0});
        halves.push_back({point_vertex(i)[x], h, 0});
      });
    }

    cycle_start_.clear();
    cycle_length_.clear();
    for_each_cycle(rho(0), [&](int x, int length) {
      cycle_start_.push_back(x);
      cycle_length_.push_back(length);
    });
    if (cycle_start_.size() != ordered_alpha.size()) throw InvalidArgument("sigma_inf does not have the cycle type of alpha");
    used_.assign(cycle_start_.size(), false);
    for (std::size_t j = 0; j < ordered_alpha.size(); ++j) {
      std::size_t pick = 0;
      while (pick < cycle_start_.size() && (used_[pick] || cycle_length_[pick] != ordered_alpha[j])) ++pick;
      if (pick == cycle_start_.size()) throw InvalidArgument("sigma_inf does not have the cycle type of alpha");
      used_[pick] = true;
      halves.push_back({point_vertex(0)[cycle_start_[pick]], -1, static_cast<int>(j) + 1});
    }
  }

  int vertex_count() const { return static_cast<int>(vertex_segment.size()); }
  int point_vertex_at(int segment, int point) const {
    return point_vertex_[static_cast<std::size_t>(segment) * d_ + point];
  }

  std::vector<int> vertex_segment;
  std::vector<HalfEdge> halves;

 private:
  int* rho(int i) { return rho_.data() + static_cast<std::size_t>(i) * d_; }
  int* point_vertex(int s) { return point_vertex_.data() + static_cast<std::size_t>(s) * d_; }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

  // f(smallest point, length) for every cycle, by smallest point.
  template <class F>
  void for_each_cycle(const int* images, F&& f) {
    seen_.assign(d_, false);
    for (int s = 0; s < d_; ++s) {
      if (seen_[s]) continue;
      int length = 0;
      for (int x = s; !seen_[x]; x = images[x]) {
        seen_[x] = true;
        ++length;
      }
      f(s, length);
    }
  }

  void add_ramification(const int* images, int segment, int base) {
    for_each_cycle(images, [&](int x, int length) { ramification_[point_vertex(segment)[x] - base] += length - 1; });
  }

  int d_ = 0;
  int r_ = 0;
  std::vector<int> rho_;
  std::vector<int> point_vertex_;
  std::vector<int> parent_;
  std::vector<int> root_id_;
  std::vector<int> ramification_;
  std::vector<int> size_;
  std::vector<int> cycle_start_;
  std::vector<int> cycle_length_;
  std::vector<bool> used_;
  std::vector<bool> seen_;
};

// The same graph with every cylinder (a cycle of rho_{i-1} that tau_i does not
// touch) already smoothed: one vertex per segment, joined along strands.
// Stabilization is confluent, so stabilizing this gives the same result as
// stabilizing the full chain cover.
class StrandGraph {
 public:
  void build(const TupleView& tuple, std::span<const int> ordered_alpha) {
    const int d = static_cast<int>(tuple.sigma_inf.size());
    const int r = static_cast<int>(tuple.taus.size());
    rho_.resize(d);
    inverse_.resize(d);
    cycle_.assign(d, -1);
    end_.clear();
    halves.clear();
    vertices = r;

    // Cycles of sigma_inf, legs assigned by smallest point.
    int cycles = 0;
    for (int x = 0; x < d; ++x) {
      rho_[x] = tuple.sigma_inf[x] - 1;
      inverse_[rho_[x]] = x;
    }
    length_.clear();
    for (int s = 0; s < d; ++s) {
      if (cycle_[s] >= 0) continue;
      int length = 0;
      for (int x = s; cycle_[x] < 0; x = rho_[x]) {
        cycle_[x] = cycles;
        ++length;
      }
      length_.push_back(length);
      end_.push_back(0);
      ++cycles;
    }
    if (static_cast<std::size_t>(cycles) != ordered_alpha.size()) {
      throw InvalidArgument("sigma_inf does not have the cycle type of alpha");
    }
    for (std::size_t j = 0; j < ordered_alpha.size(); ++j) {
      int pick = 0;
      while (pick < cycles && (end_[pick] != 0 || length_[pick] != ordered_alpha[j])) ++pick;
      if (pick == cycles) throw InvalidArgument("sigma_inf does not have the cycle type of alpha");
      end_[pick] = -static_cast<int>(j) - 1;
    }

    for (int i = 0; i < r; ++i) {
      const int a = tuple.taus[i].a - 1;
      const int b = tuple.taus[i].b - 1;
      const int ca = cycle_[a];
      const int cb = cycle_[b];
      attach(i, end_[ca]);
      // rho_i = tau_i o rho_{i-1}
      const int xa = inverse_[a];
      const int xb = inverse_[b];
      rho_[xa] = b;
      rho_[xb] = a;
      inverse_[a] = xb;
      inverse_[b] = xa;
      if (ca != cb) {
        attach(i, end_[cb]);
        for (int x = 0; x < d; ++x) {
          if (cycle_[x] == cb) cycle_[x] = ca;
        }
        end_[ca] = i + 1;
      } else {
        const int fresh = static_cast<int>(end_.size());
        end_.push_back(i + 1);
        for (int x = a; cycle_[x] != fresh; x = rho_[x]) cycle_[x] = fresh;
        end_[ca] = i + 1;
      }
    }
  }

  int vertices = 0;
  std::vector<HalfEdge> halves;

 private:
  // Joins vertex v to a strand end: a leg (< 0) or vertex end - 1 (> 0).
  void attach(int v, int end) {
    const int h = static_cast<int>(halves.size());
    if (end < 0) {
      halves.push_back({v, -1, -end});
    } else {
      halves.push_back({v, h + 1, 0});
      halves.push_back({end - 1, h, 0});
    }
  }

  std::vector<int> rho_;
  std::vector<int> inverse_;
  std::vector<int> cycle_;
  std::vector<int> end_;  // per cycle id: -label for a leg, vertex + 1 otherwise
  std::vector<int> length_;
};

// Stabilization of a graph whose vertices all have genus 0, on reusable
// buffers. Half-edges never change vertex; only twins and leg labels move.
class Stabilizer {
 public:
  void run(std::vector<HalfEdge>& halves, int vertices, std::span<const int> order) {
    halves_ = &halves;
    const int size = static_cast<int>(halves.size());
    half_alive.assign(size, true);
    vertex_alive.assign(vertices, true);
    valence_.assign(vertices, 0);
    offset_.assign(vertices + 1, 0);
    for (const auto& h : halves) ++offset_[h.vertex + 1];
    for (int v = 0; v < vertices; ++v) {
      valence_[v] = offset_[v + 1];
      offset_[v + 1] += offset_[v];
    }
    incident_.resize(size);
    fill_.assign(offset_.begin(), offset_.end() - 1);
    for (int h = 0; h < size; ++h) incident_[fill_[halves[h].vertex]++] = h;

    for (bool changed = true; changed;) {
      changed = false;
      for (int x : order) {
        if (!vertex_alive[x] || valence_[x] > 2) continue;
        remove(x);
        changed = true;
      }
    }
    bool any = false;
    for (int v = 0; v < vertices; ++v) any = any || vertex_alive[v];
    if (!any) throw unstable();
  }

  std::vector<char> half_alive;
  std::vector<char> vertex_alive;

 private:
  static DomainError unstable() { return DomainError("stabilization leaves no stable curve (unstable (g, n))"); }

  void remove(int x) {
    auto& halves = *halves_;
    int hs[2];
    int found = 0;
    for (int i = offset_[x]; i < offset_[x + 1]; ++i) {
      if (half_alive[incident_[i]]) hs[found++] = incident_[i];
    }
    if (found == 0) throw unstable();
    if (found == 1) {
      // Contract the edge to a leaf.
      const HalfEdge h = halves[hs[0]];
      if (h.is_leg()) throw unstable();
      half_alive[h.twin] = false;
      --valence_[halves[h.twin].vertex];
    } else {
      const HalfEdge h1 = halves[hs[0]];
      const HalfEdge h2 = halves[hs[1]];
      if (h1.twin == hs[1] || (h1.is_leg() && h2.is_leg())) throw unstable();
      if (h1.is_leg() || h2.is_leg()) {
        // The leg moves to the neighbour.
        const HalfEdge& leg = h1.is_leg() ? h1 : h2;
        const HalfEdge& edge = h1.is_leg() ? h2 : h1;
        halves[edge.twin].twin = -1;
        halves[edge.twin].leg = leg.leg;
      } else {
        halves[h1.twin].twin = h2.twin;
        halves[h2.twin].twin = h1.twin;
      }
    }
    for (int i = 0; i < found; ++i) half_alive[hs[i]] = false;
    vertex_alive[x] = false;
  }

  std::vector<HalfEdge>* halves_ = nullptr;
  std::vector<int> valence_;
  std::vector<int> offset_;
  std::vector<int> fill_;
  std::vector<int> incident_;
};

StableGraph compact(const std::vector<HalfEdge>& halves, const std::vector<int>& genera, const Stabilizer& st) {
  const int v = static_cast<int>(genera.size());
  const int size = static_cast<int>(halves.size());
  std::vector<int> new_id(v, -1);
  std::vector<int> kept_genera;
  for (int x = 0; x < v; ++x) {
    if (!st.vertex_alive[x]) continue;
    new_id[x] = static_cast<int>(kept_genera.size());
    kept_genera.push_back(genera[x]);
  }
  std::vector<int> new_half(size, -1);
  int next = 0;
  for (int h = 0; h < size; ++h) {
    if (st.half_alive[h]) new_half[h] = next++;
  }
  std::vector<HalfEdge> kept;
  kept.reserve(next);
  for (int h = 0; h < size; ++h) {
    if (!st.half_alive[h]) continue;
    const auto& e = halves[h];
    kept.push_back({new_id[e.vertex], e.is_leg() ? -1 : new_half[e.twin], e.leg});
  }
  return StableGraph(std::move(kept_genera), std::move(kept));
}

std::vector<Transposition> to_transpositions(const MonodromyTuple& tuple) {
  std::vector<Transposition> taus;
  for (const auto& tau : tuple.taus) {
    std::vector<int> moved;
    for (int x = 1; x <= tau.degree(); ++x) {
      if (tau(x) != x) moved.push_back(x);
    }
    if (moved.size() != 2) throw InvalidArgument("cover_of_chain: " + tau.to_cycle_string() + " is not a transposition");
    taus.push_back({moved[0], moved[1]});
  }
  return taus;
}

}  // namespace

ChainCoverGraph cover_of_chain(const TupleView& tuple, std::span<const int> ordered_alpha) {
  ChainBuilder builder;
  builder.build(tuple, ordered_alpha);
  ChainCoverGraph out;
  out.base_length = static_cast<int>(tuple.taus.size());
  out.vertex_segment = builder.vertex_segment;
  out.vertex_sheets.resize(builder.vertex_count());
  const int d = static_cast<int>(tuple.sigma_inf.size());
  for (std::size_t v = 0; v < out.vertex_segment.size(); ++v) {
    for (int x = 0; x < d; ++x) {
      if (builder.point_vertex_at(out.vertex_segment[v] - 1, x) == static_cast<int>(v)) {
        out.vertex_sheets[v].push_back(x + 1);
      }
    }
  }
  out.graph = StableGraph(std::vector<int>(builder.vertex_count(), 0), builder.halves);
  return out;
}

ChainCoverGraph cover_of_chain(const MonodromyTuple& tuple, std::span<const int> ordered_alpha) {
  const auto taus = to_transpositions(tuple);
  return cover_of_chain(TupleView{tuple.sigma_inf.images(), taus}, ordered_alpha);
}

StableGraph stabilize(const StableGraph& graph) {
  std::vector<int> order(graph.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  return stabilize(graph, order);
}

StableGraph stabilize(const StableGraph& graph, std::span<const int> visit_order) {
  const int v = graph.vertex_count();
  std::vector<int> check(visit_order.begin(), visit_order.end());
  std::sort(check.begin(), check.end());
  for (int i = 0; i < static_cast<int>(check.size()); ++i) {
    if (check[i] != i) throw InvalidArgument("stabilize: visit order must be a permutation of the vertices");
  }
  if (static_cast<int>(check.size()) != v) throw InvalidArgument("stabilize: visit order must list every vertex");
  for (int g : graph.genera()) {
    if (g != 0) throw InvalidArgument("stabilize: expects genus-0 vertices");
  }
  auto halves = graph.half_edges();
  Stabilizer st;
  st.run(halves, v, visit_order);
  return canonical_graph(compact(halves, graph.genera(), st));
}

std::vector<Transposition> reorder_branch_points(std::span<const Transposition> taus,
                                                 std::span<const int> branch_order) {
  const int r = static_cast<int>(taus.size());
  std::vector<Transposition> out(taus.begin(), taus.end());
  if (branch_order.empty()) return out;
  std::vector<int> check(branch_order.begin(), branch_order.end());
  std::sort(check.begin(), check.end());
  std::vector<int> labels(r);
  std::iota(labels.begin(), labels.end(), 1);
  if (check != labels) throw InvalidArgument("branch order must be a permutation of 1..r");

  auto conjugate = [](Transposition t, Transposition by) {
    auto image = [&](int x) { return x == by.a ? by.b : (x == by.b ? by.a : x); };
    const int a = image(t.a);
    const int b = image(t.b);
    return Transposition{std::min(a, b), std::max(a, b)};
  };
  for (int i = 0; i < r; ++i) {
    int p = static_cast<int>(std::find(labels.begin() + i, labels.end(), branch_order[i]) - labels.begin());
    for (; p > i; --p) {
      const Transposition left = out[p - 1];
      const Transposition right = out[p];
      out[p - 1] = right;
      out[p] = conjugate(left, right);
      std::swap(labels[p - 1], labels[p]);
    }
  }
  return out;
}

namespace {

// Per-task accumulation. The stabilized graph is a function of its raw
// (uncanonicalized) shape, so canonicalization and the top-stratum checks
// run once per distinct raw shape.
class StratumAccumulator {
 public:
  StratumAccumulator(const HurwitzProblem& problem, const DegenerationOptions& options)
      : problem_(problem), options_(options) {
    const auto& alpha = problem.ordered_alpha();
    std::vector<int> perm(alpha.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool keeps_parts = true;
      for (std::size_t j = 0; j < perm.size(); ++j) keeps_parts = keeps_parts && alpha[perm[j]] == alpha[j];
      if (keeps_parts) relabelings_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  void add(const TupleView& view) {
    TupleView placed = view;
    if (!options_.branch_order.empty()) {
      reordered_ = reorder_branch_points(view.taus, options_.branch_order);
      placed.taus = reordered_;
    }
    strands_.build(placed, problem_.ordered_alpha());
    if (order_.size() != static_cast<std::size_t>(strands_.vertices)) {
      order_.resize(strands_.vertices);
      std::iota(order_.begin(), order_.end(), 0);
    }
    stabilizer_.run(strands_.halves, strands_.vertices, order_);

    raw_key();
    auto it = memo_.find(key_);
    if (it == memo_.end()) it = memo_.emplace(key_, classify()).first;
    for (int c : it->second) ++counts_[c];
  }

  std::vector<StableGraph> graphs;
  std::vector<CanonicalForm> forms;
  std::vector<std::uint64_t> counts_;

 private:
  void raw_key() {
    key_.clear();
    const int v = strands_.vertices;
    id_.assign(v, -1);
    int next = 0;
    for (int x = 0; x < v; ++x) {
      if (stabilizer_.vertex_alive[x]) id_[x] = next++;
    }
    key_.push_back(static_cast<char>(next));
    const auto& halves = strands_.halves;
    for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
      if (!stabilizer_.half_alive[h]) continue;
      const auto& e = halves[h];
      key_.push_back(static_cast<char>(id_[e.vertex]));
      key_.push_back(static_cast<char>(e.is_leg() ? -e.leg : id_[halves[e.twin].vertex]));
    }
  }

  std::vector<int> classify() {
    const auto& halves = strands_.halves;
    StableGraph stable = compact(halves, std::vector<int>(strands_.vertices, 0), stabilizer_);
    const int g = problem_.genus();
    const int n = problem_.points();
    if (!is_top_stratum(stable) || stable.betti_number() != g || stable.genus() != g || stable.leg_count() != n) {
      throw InvariantViolation("degenerated cover is not a top stratum of Mbar_{" + std::to_string(g) + "," +
                               std::to_string(n) + "}");
    }
    std::vector<int> out;
    for (const auto& perm : relabelings_) {
      auto relabeled = stable.half_edges();
      for (auto& h : relabeled) {
        if (h.is_leg()) h.leg = perm[h.leg - 1] + 1;
      }
      StableGraph graph(stable.genera(), std::move(relabeled));
      auto form = canonical_form(graph);
      auto found = index_.find(form);
      if (found == index_.end()) {
        found = index_.emplace(form, static_cast<int>(graphs.size())).first;
        graphs.push_back(canonical_graph(graph));
        forms.push_back(form);
        counts_.push_back(0);
      }
      out.push_back(found->second);
    }
    return out;
  }

  const HurwitzProblem& problem_;
  const DegenerationOptions& options_;
  std::vector<std::vector<int>> relabelings_;
  StrandGraph strands_;
  Stabilizer stabilizer_;
  std::vector<int> order_;
  std::vector<int> id_;
  std::vector<Transposition> reordered_;
  std::string key_;
  std::unordered_map<std::string, std::vector<int>> memo_;
  std::map<CanonicalForm, int> index_;
};

}  // namespace

StratumHistogram hurwitz_to_strata(const HurwitzProblem& problem, const SearchOptions& search,
                                   const DegenerationOptions& options) {
  if (!problem.is_stable()) throw DomainError("degeneration needs 2g - 2 + n > 0");
  if (!options.branch_order.empty() && static_cast<int>(options.branch_order.size()) != problem.branch_points()) {
    throw InvalidArgument("branch order must list all r branch points");
  }
  const int tasks = tuple_task_count(problem);
  std::vector<std::unique_ptr<StratumAccumulator>> per_task(tasks);
  std::vector<std::uint64_t> tuples(tasks, 0);
  visit_tuples_parallel(problem, search, [&](int task, const TupleView& view) {
    auto& acc = per_task[task];
    if (!acc) acc = std::make_unique<StratumAccumulator>(problem, options);
    acc->add(view);
    ++tuples[task];
  });

  std::map<CanonicalForm, StratumEntry> merged;
  for (const auto& acc : per_task) {
    if (!acc) continue;
    for (std::size_t c = 0; c < acc->graphs.size(); ++c) {
      auto it = merged.find(acc->forms[c]);
      if (it == merged.end()) it = merged.emplace(acc->forms[c], StratumEntry{acc->graphs[c], 0, 0}).first;
      it->second.incidences += Integer(std::to_string(acc->counts_[c]));
    }
  }

  StratumHistogram out{problem, {}, 0, 0, 0, false};
  for (auto t : tuples) out.tuple_count += Integer(std::to_string(t));
  const Rational per_incidence(Integer(1), factorial(problem.degree()));
  for (auto& [form, entry] : merged) {
    entry.weight = per_incidence * Rational(entry.incidences);
    entry.weight.canonicalize();
    out.total += entry.weight;
    out.entries.push_back(std::move(entry));
  }
  out.total.canonicalize();
  out.expected_total = hurwitz_fast(problem).h_labeled;
  out.match = out.total == out.expected_total;
  return out;
}

}  // namespace taut
