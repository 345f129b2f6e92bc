#pragma once

// Degenerating the base of a Hurwitz cover to a chain of rational curves.
//
// The base P^1 with branch points infinity, b_1, ..., b_r breaks into a chain
// of segments 1..r; segment i carries b_i, segment 1 also carries infinity.
// Over the junction between segments i and i+1 the monodromy is
// rho_i = tau_i o ... o tau_1 o sigma_inf (rho_0 = sigma_inf, rho_r = id).
// The cover of segment i has one component per orbit of <rho_{i-1}, tau_i>,
// and one node per cycle of rho_i at junction i. Every such component is
// rational; stabilizing the resulting dual graph gives a top stratum.

#include "taut/exact.hpp"
#include "taut/graphs.hpp"
#include "taut/hurwitz.hpp"

#include <memory>
#include <span>
#include <vector>

namespace taut {

struct ChainCoverGraph {
  int base_length = 0;                       // r
  std::vector<int> vertex_segment;           // 1-based segment per vertex
  std::vector<std::vector<int>> vertex_sheets;  // orbit of each vertex, 1-based
  StableGraph graph;                         // genera from Riemann-Hurwitz
};

/// Legs are the cycles of sigma_inf; leg j is a cycle of length
/// ordered_alpha[j-1], ties broken by the smallest point of the cycle.
/// Throws InvariantViolation if a component has positive genus.
ChainCoverGraph cover_of_chain(const MonodromyTuple& tuple, std::span<const int> ordered_alpha);
ChainCoverGraph cover_of_chain(const TupleView& tuple, std::span<const int> ordered_alpha);

/// Contracts genus-0 vertices of valence 1 and smooths those of valence 2
/// until none remain; returns the canonical graph. Vertices are visited in
/// index order, or in `visit_order` when given (a permutation of the vertex
/// ids). Throws DomainError if nothing stable is left.
StableGraph stabilize(const StableGraph& graph);
StableGraph stabilize(const StableGraph& graph, std::span<const int> visit_order);

/// Placement of the simple branch points along the chain. branch_order[i]
/// is the (1-based) branch point on segment i+1; empty means identity.
/// Reordering is realized by the braid action on tuples, which keeps the
/// product and transitivity conditions.
struct DegenerationOptions {
  std::vector<int> branch_order;
};

/// Moves branch points so that tuple slot i+1 holds the point originally at
/// branch_order[i], via half-twists (t_i, t_{i+1}) -> (t_{i+1}, t_{i+1} t_i t_{i+1}).
std::vector<Transposition> reorder_branch_points(std::span<const Transposition> taus,
                                                 std::span<const int> branch_order);

// Each tuple is counted once for every labeling of the points over infinity
// compatible with alpha (#Aut(alpha) of them), each with weight 1/d!.
struct StratumEntry {
  StableGraph graph;   // canonical, labeled legs
  Integer incidences;  // (tuple, labeling) pairs landing here
  Rational weight;     // incidences / d!
};

struct StratumHistogram {
  HurwitzProblem problem;
  std::vector<StratumEntry> entries;  // sorted by canonical form
  Integer tuple_count;
  Rational total;
  Rational expected_total;  // #Aut(alpha) * H^g_alpha from the fast path
  bool match = false;
};

/// Degenerates every monodromy tuple of the problem and accumulates the
/// stabilized graphs. Throws InvariantViolation if any stabilized graph is
/// not a top stratum of genus g with the n legs.
StratumHistogram hurwitz_to_strata(const HurwitzProblem& problem, const SearchOptions& search = {},
                                   const DegenerationOptions& options = {});

}  // namespace taut
