#include "taut/degeneration.hpp"
#include "taut/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace taut;

namespace {

std::vector<Transposition> transpositions_of(const MonodromyTuple& tuple) {
  std::vector<Transposition> out;
  for (const auto& tau : tuple.taus) {
    const auto cycles = tau.cycles();
    for (const auto& c : cycles) {
      if (c.size() == 2) out.push_back({c[0], c[1]});
    }
  }
  return out;
}

int edges_between(const StableGraph& graph, int u, int v) {
  const auto edges = graph.edges();
  return static_cast<int>(std::count(edges.begin(), edges.end(), std::pair{std::min(u, v), std::max(u, v)}));
}

// The histogram computed the slow way: full chain cover, stabilize, and one
// incidence per labeling of the points over infinity compatible with alpha.
std::map<CanonicalForm, Integer> literal_histogram(const HurwitzProblem& problem) {
  const auto& alpha = problem.ordered_alpha();
  std::vector<std::vector<int>> relabelings;
  std::vector<int> perm(alpha.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool keeps = true;
    for (std::size_t j = 0; j < perm.size(); ++j) keeps = keeps && alpha[perm[j]] == alpha[j];
    if (keeps) relabelings.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::map<CanonicalForm, Integer> out;
  for (const auto& tuple : enumerate_tuples(problem)) {
    const auto stable = stabilize(cover_of_chain(tuple, alpha).graph);
    for (const auto& p : relabelings) {
      auto halves = stable.half_edges();
      for (auto& h : halves) {
        if (h.is_leg()) h.leg = p[h.leg - 1] + 1;
      }
      out[canonical_form(StableGraph(stable.genera(), halves))] += 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("chain cover example") {
  const auto tuple = enumerate_tuples(HurwitzProblem(1, {2})).front();
  const auto chain = cover_of_chain(tuple, std::vector<int>{2});
  const auto& graph = chain.graph;
  CHECK(chain.base_length == 3);
  REQUIRE(graph.vertex_count() == 3);
  CHECK(chain.vertex_segment == std::vector<int>{1, 2, 3});
  CHECK(edges_between(graph, 0, 1) == 2);
  CHECK(edges_between(graph, 1, 2) == 1);
  CHECK(edges_between(graph, 0, 2) == 0);
  CHECK(graph.legs() == std::map<int, int>{{1, 0}});

  const auto stable = stabilize(graph);
  CHECK(isomorphic(stable, StableGraph({0}, {{0, 0}}, {{1, 0}})));
}

TEST_CASE("trivial chain") {
  MonodromyTuple tuple{Permutation::identity(1), {}};
  const auto chain = cover_of_chain(tuple, std::vector<int>{1});
  CHECK(chain.graph.vertex_count() == 1);
  CHECK(chain.graph.edge_count() == 0);
  CHECK(chain.graph.legs() == std::map<int, int>{{1, 0}});
}

TEST_CASE("chain covers of every small tuple") {
  for (const auto& [g, alpha] : std::vector<std::pair<int, std::vector<int>>>{
           {0, {1, 1, 1}}, {0, {2, 2}}, {1, {2, 1}}, {1, {3}}, {2, {2}}, {1, {1, 2, 1}}}) {
    HurwitzProblem problem(g, alpha);
    for (const auto& tuple : enumerate_tuples(problem)) {
      const auto chain = cover_of_chain(tuple, alpha);
      const auto& graph = chain.graph;
      CHECK(graph.leg_count() == problem.points());
      CHECK(graph.is_connected());
      CHECK(graph.genus() == g);
      CHECK(std::all_of(graph.genera().begin(), graph.genera().end(), [](int x) { return x == 0; }));

      int sheets = 0;
      for (std::size_t v = 0; v < chain.vertex_sheets.size(); ++v) {
        if (chain.vertex_segment[v] == 1) sheets += static_cast<int>(chain.vertex_sheets[v].size());
      }
      CHECK(sheets == problem.degree());
      // Leg j sits on the segment-1 vertex holding a cycle of length alpha_j.
      for (const auto& [label, v] : graph.legs()) {
        CHECK(chain.vertex_segment[v] == 1);
        CHECK(static_cast<int>(chain.vertex_sheets[v].size()) >= alpha[label - 1]);
      }
    }
  }
}

TEST_CASE("cover_of_chain rejects a profile mismatch") {
  const auto tuple = enumerate_tuples(HurwitzProblem(1, {2})).front();
  CHECK_THROWS_AS(cover_of_chain(tuple, std::vector<int>{1, 1}), InvalidArgument);
}

TEST_CASE("stabilize examples") {
  const StableGraph path({0, 0, 0}, {{0, 1}, {1, 2}}, {{1, 0}, {2, 0}, {3, 2}, {4, 2}});
  const auto stable = stabilize(path);
  CHECK(stable.vertex_count() == 2);
  CHECK(isomorphic(stable, StableGraph({0, 0}, {{0, 1}}, {{1, 0}, {2, 0}, {3, 1}, {4, 1}})));

  for (const auto& graph : enumerate_top_strata(1, 3)) CHECK(stabilize(graph) == canonical_graph(graph));

  CHECK_THROWS_AS(stabilize(StableGraph({0}, {}, {{1, 0}, {2, 0}})), DomainError);
  CHECK_THROWS_AS(stabilize(StableGraph({1}, {}, {{1, 0}})), InvalidArgument);
}

TEST_CASE("stabilize does not depend on the visit order") {
  std::mt19937 rng(3);
  for (const auto& [g, alpha] : std::vector<std::pair<int, std::vector<int>>>{{1, {2, 1}}, {0, {2, 1, 1}}, {2, {3}}}) {
    for (const auto& tuple : enumerate_tuples(HurwitzProblem(g, alpha))) {
      const auto graph = cover_of_chain(tuple, alpha).graph;
      const auto expected = stabilize(graph);
      CHECK(is_top_stratum(expected));
      CHECK(expected.genus() == g);
      std::vector<int> order(graph.vertex_count());
      std::iota(order.begin(), order.end(), 0);
      for (int trial = 0; trial < 2; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(stabilize(graph, order) == expected);
      }
    }
  }
}

TEST_CASE("histogram examples") {
  const auto h12 = hurwitz_to_strata(HurwitzProblem(1, {2}));
  REQUIRE(h12.entries.size() == 1);
  CHECK(isomorphic(h12.entries[0].graph, StableGraph({0}, {{0, 0}}, {{1, 0}})));
  CHECK(h12.entries[0].weight == Rational(1, 2));
  CHECK(h12.match);

  const auto h11 = hurwitz_to_strata(HurwitzProblem(1, {1}));
  CHECK(h11.entries.empty());
  CHECK(h11.total == 0);
  CHECK(h11.match);

  const auto h03 = hurwitz_to_strata(HurwitzProblem(0, {1, 1, 1}));
  REQUIRE(h03.entries.size() == 1);
  CHECK(h03.entries[0].graph.vertex_count() == 1);
  CHECK(h03.total == 24);
  CHECK(h03.match);

  CHECK_THROWS_AS(hurwitz_to_strata(HurwitzProblem(0, {1})), DomainError);
  CHECK_THROWS_AS(hurwitz_to_strata(HurwitzProblem(0, {2})), DomainError);
}

TEST_CASE("histogram equals the literal chain-cover computation") {
  for (const auto& [g, alpha] : std::vector<std::pair<int, std::vector<int>>>{
           {0, {1, 1, 1}}, {0, {2, 1, 1}}, {0, {1, 1, 1, 1}}, {0, {1, 2, 1}}, {1, {2, 1}}, {1, {1, 2}}, {1, {2, 2}},
           {1, {2, 1, 1}}, {2, {3}}, {2, {2, 1}}, {0, {3, 1, 1}}}) {
    HurwitzProblem problem(g, alpha);
    const auto expected = literal_histogram(problem);
    const auto histogram = hurwitz_to_strata(problem);
    CHECK(histogram.match);
    REQUIRE(histogram.entries.size() == expected.size());
    for (const auto& entry : histogram.entries) {
      const auto it = expected.find(canonical_form(entry.graph));
      REQUIRE(it != expected.end());
      CHECK(entry.incidences == it->second);
      CHECK(entry.weight == Rational(it->second) / Rational(factorial(problem.degree())));
    }
  }
}

TEST_CASE("histograms live on the enumerated top strata") {
  for (const auto& [g, alpha] : std::vector<std::pair<int, std::vector<int>>>{{0, {3, 1, 1}}, {1, {3, 1}}, {2, {2, 1}}, {2, {4}}}) {
    HurwitzProblem problem(g, alpha);
    const auto histogram = hurwitz_to_strata(problem);
    CHECK(histogram.match);
    CHECK(histogram.total == hurwitz_fast(problem).h_labeled);
    std::vector<CanonicalForm> strata;
    for (const auto& graph : enumerate_top_strata(g, problem.points())) strata.push_back(canonical_form(graph));
    Integer incidences = 0;
    for (const auto& entry : histogram.entries) {
      CHECK(std::find(strata.begin(), strata.end(), canonical_form(entry.graph)) != strata.end());
      CHECK(entry.weight > 0);
      incidences += entry.incidences;
    }
    CHECK(incidences == histogram.tuple_count * aut_count(problem.alpha()));
  }
}

TEST_CASE("histograms do not depend on the thread count") {
  HurwitzProblem problem(1, {2, 2});
  const auto one = hurwitz_to_strata(problem, {SearchOptions{}.budget, 1});
  for (int threads : {2, 8}) {
    const auto many = hurwitz_to_strata(problem, {SearchOptions{}.budget, threads});
    REQUIRE(many.entries.size() == one.entries.size());
    for (std::size_t i = 0; i < one.entries.size(); ++i) {
      CHECK(many.entries[i].graph == one.entries[i].graph);
      CHECK(many.entries[i].incidences == one.entries[i].incidences);
    }
    CHECK(many.total == one.total);
  }
}

TEST_CASE("branch point reordering") {
  const std::vector<Transposition> taus{{1, 2}, {2, 3}, {1, 3}};
  CHECK(reorder_branch_points(taus, {}) == taus);
  CHECK(reorder_branch_points(taus, std::vector<int>{1, 2, 3}) == taus);
  CHECK_THROWS_AS(reorder_branch_points(taus, std::vector<int>{1, 1, 3}), InvalidArgument);

  std::mt19937 rng(9);
  HurwitzProblem problem(1, {2, 1});
  const int r = problem.branch_points();
  for (const auto& tuple : enumerate_tuples(problem)) {
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    const auto moved = reorder_branch_points(transpositions_of(tuple), order);
    MonodromyTuple check{tuple.sigma_inf, {}};
    for (auto t : moved) check.taus.push_back(Permutation::transposition(problem.degree(), t.a, t.b));
    CHECK_NOTHROW(check.validate());
  }

  const auto plain = hurwitz_to_strata(problem);
  for (int trial = 0; trial < 3; ++trial) {
    DegenerationOptions options;
    options.branch_order.resize(r);
    std::iota(options.branch_order.begin(), options.branch_order.end(), 1);
    std::shuffle(options.branch_order.begin(), options.branch_order.end(), rng);
    const auto reordered = hurwitz_to_strata(problem, {}, options);
    CHECK(reordered.match);
    CHECK(reordered.total == plain.total);
    REQUIRE(reordered.entries.size() == plain.entries.size());
    for (std::size_t i = 0; i < plain.entries.size(); ++i) CHECK(reordered.entries[i].weight == plain.entries[i].weight);
  }
}
