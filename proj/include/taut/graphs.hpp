#pragma once

// Stable dual graphs of curves in Mbar_{g,n}: vertices carry a genus, edges
// are nodes (loops and multi-edges allowed), legs are the labeled marked
// points. Stored as half-edges: an edge is two twinned half-edges, a leg is
// an unpaired half-edge carrying its label.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace taut {

struct HalfEdge {
  int vertex = 0;
  int twin = -1;  // -1 for legs
  int leg = 0;    // leg label (>= 1) for legs, 0 for edge ends

  bool is_leg() const noexcept { return twin < 0; }
  auto operator<=>(const HalfEdge&) const = default;
};

class StableGraph {
 public:
  StableGraph() = default;
  /// Edges are vertex pairs (u == v is a loop); legs map label -> vertex.
  /// Half-edges are created edge by edge, then legs in label order.
  StableGraph(std::vector<int> genera, const std::vector<std::pair<int, int>>& edges,
              const std::map<int, int>& legs);
  /// Throws InvalidArgument on inconsistent twins, bad vertex ids or
  /// repeated leg labels.
  StableGraph(std::vector<int> genera, std::vector<HalfEdge> half_edges);

  int vertex_count() const noexcept { return static_cast<int>(genera_.size()); }
  int edge_count() const;
  int leg_count() const;
  const std::vector<int>& genera() const noexcept { return genera_; }
  const std::vector<HalfEdge>& half_edges() const noexcept { return half_edges_; }

  /// One (u, v) pair with u <= v per edge, in order of the lower half-edge.
  std::vector<std::pair<int, int>> edges() const;
  std::map<int, int> legs() const;
  std::vector<int> half_edges_at(int vertex) const;
  /// Legs plus edge ends at the vertex; a loop counts twice.
  int valence(int vertex) const;

  /// First Betti number #E - #V + 1 (for a connected graph).
  int betti_number() const;
  /// b_1 + sum of vertex genera.
  int genus() const;
  bool is_connected() const;
  /// Connected, every genus-0 vertex has valence >= 3 and every genus-1
  /// vertex valence >= 1.
  bool is_stable() const;

  bool operator==(const StableGraph&) const = default;

 private:
  std::vector<int> genera_;
  std::vector<HalfEdge> half_edges_;
};

/// Whether isomorphisms must fix each leg label, or may permute legs.
enum class LegMode { labeled, unlabeled };

/// Complete isomorphism invariant: equal forms iff isomorphic graphs.
struct CanonicalForm {
  std::vector<int> code;

  /// 16 hex digits of FNV-1a over the code; used as a short stable name.
  std::string digest() const;
  auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const StableGraph& graph, LegMode mode = LegMode::labeled);

/// The representative of the isomorphism class, rebuilt from its canonical
/// vertex order. In unlabeled mode legs are renumbered 1..n along that order.
StableGraph canonical_graph(const StableGraph& graph, LegMode mode = LegMode::labeled);

bool isomorphic(const StableGraph& a, const StableGraph& b, LegMode mode = LegMode::labeled);

/// Every vertex has genus 0 and valence exactly 3.
bool is_top_stratum(const StableGraph& graph);

/// Isomorphism classes (legs fixed) of trivalent genus-0-vertex graphs of
/// genus g with n legs, as canonical graphs sorted by canonical form.
/// Throws DomainError unless 2g - 2 + n > 0.
std::vector<StableGraph> enumerate_top_strata(int g, int n);

/// Regroups the four outer half-edges around a non-loop edge. With i, j the
/// other half-edges at the lower endpoint u and k, l those at v (each pair
/// ordered by half-edge index), pairing 0 gives (ik|jl) and pairing 1 gives
/// (il|jk).
struct DualityMove {
  int half_edge = 0;  // lower-index half-edge of the edge
  int pairing = 0;    // 0 or 1
  auto operator<=>(const DualityMove&) const = default;
};

/// All (non-loop edge) x (pairing) moves whose endpoints are trivalent.
std::vector<DualityMove> available_moves(const StableGraph& graph);

/// Throws InvalidArgument for a loop, a leg, or a non-trivalent endpoint.
StableGraph apply_move(const StableGraph& graph, const DualityMove& move);

struct CertificateStep {
  int from = 0;  // class indices
  DualityMove move;
  int to = 0;
};

/// Breadth-first search over isomorphism classes of top strata under
/// duality moves. `tree` is a spanning forest (one tree per component).
struct ConnectivityCertificate {
  int g = 0;
  int n = 0;
  LegMode mode = LegMode::labeled;
  std::vector<StableGraph> classes;
  std::vector<CanonicalForm> forms;
  std::vector<CertificateStep> tree;
  std::vector<std::vector<int>> components;

  bool connected() const { return components.size() == 1; }
};

ConnectivityCertificate connectivity_certificate(int g, int n, LegMode mode = LegMode::labeled);

/// Replays every step of the certificate and checks that the steps span
/// each reported component. Independent of how the certificate was found.
bool check_certificate(const ConnectivityCertificate& certificate);

}  // namespace taut
