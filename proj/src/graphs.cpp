#include "taut/graphs.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace taut {

StableGraph::StableGraph(std::vector<int> genera, const std::vector<std::pair<int, int>>& edges,
                         const std::map<int, int>& legs)
    : genera_(std::move(genera)) {
  const int v = vertex_count();
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= v || b >= v) throw InvalidArgument("edge endpoint out of range");
    const int h = static_cast<int>(half_edges_.size());
    half_edges_.push_back({a, h + 1, 0});
    half_edges_.push_back({b, h, 0});
  }
  for (const auto& [label, vertex] : legs) {
    if (label < 1) throw InvalidArgument("leg labels must be positive");
    if (vertex < 0 || vertex >= v) throw InvalidArgument("leg attached to a missing vertex");
    half_edges_.push_back({vertex, -1, label});
  }
  for (int g : genera_) {
    if (g < 0) throw InvalidArgument("vertex genus must be non-negative");
  }
}

StableGraph::StableGraph(std::vector<int> genera, std::vector<HalfEdge> half_edges)
    : genera_(std::move(genera)), half_edges_(std::move(half_edges)) {
  const int v = vertex_count();
  const int size = static_cast<int>(half_edges_.size());
  std::set<int> labels;
  for (int h = 0; h < size; ++h) {
    const auto& e = half_edges_[h];
    if (e.vertex < 0 || e.vertex >= v) throw InvalidArgument("half-edge attached to a missing vertex");
    if (e.is_leg()) {
      if (e.leg < 1 || !labels.insert(e.leg).second) throw InvalidArgument("leg labels must be positive and distinct");
    } else if (e.twin >= size || e.twin == h || half_edges_[e.twin].twin != h || e.leg != 0) {
      throw InvalidArgument("inconsistent half-edge twins");
    }
  }
  for (int g : genera_) {
    if (g < 0) throw InvalidArgument("vertex genus must be non-negative");
  }
}

int StableGraph::edge_count() const {
  int ends = 0;
  for (const auto& h : half_edges_) ends += h.is_leg() ? 0 : 1;
  return ends / 2;
}

int StableGraph::leg_count() const {
  return static_cast<int>(half_edges_.size()) - 2 * edge_count();
}

std::vector<std::pair<int, int>> StableGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h) {
    const auto& e = half_edges_[h];
    if (e.is_leg() || e.twin < h) continue;
    const int a = e.vertex;
    const int b = half_edges_[e.twin].vertex;
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

std::map<int, int> StableGraph::legs() const {
  std::map<int, int> out;
  for (const auto& h : half_edges_) {
    if (h.is_leg()) out.emplace(h.leg, h.vertex);
  }
  return out;
}

std::vector<int> StableGraph::half_edges_at(int vertex) const {
  std::vector<int> out;
  for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h) {
    if (half_edges_[h].vertex == vertex) out.push_back(h);
  }
  return out;
}

int StableGraph::valence(int vertex) const {
  int out = 0;
  for (const auto& h : half_edges_) out += h.vertex == vertex ? 1 : 0;
  return out;
}

int StableGraph::betti_number() const { return edge_count() - vertex_count() + 1; }

int StableGraph::genus() const {
  return betti_number() + std::accumulate(genera_.begin(), genera_.end(), 0);
}

bool StableGraph::is_connected() const {
  const int v = vertex_count();
  if (v == 0) return false;
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int components = v;
  for (const auto& [a, b] : edges()) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

bool StableGraph::is_stable() const {
  if (!is_connected()) return false;
  for (int v = 0; v < vertex_count(); ++v) {
    const int val = valence(v);
    if (genera_[v] == 0 && val < 3) return false;
    if (genera_[v] == 1 && val < 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical form.

std::string CanonicalForm::digest() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (int x : code) {
    auto u = static_cast<std::uint32_t>(x);
    for (int byte = 0; byte < 4; ++byte) {
      hash ^= (u >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

namespace {

// Adjacency counts, loops on the diagonal counted once per loop.
struct Shape {
  int v = 0;
  std::vector<int> adjacency;           // v * v
  std::vector<std::vector<int>> leg_labels;  // per vertex, sorted

  explicit Shape(const StableGraph& graph) : v(graph.vertex_count()), adjacency(v * v, 0), leg_labels(v) {
    for (const auto& [a, b] : graph.edges()) {
      if (a == b) {
        ++adjacency[a * v + a];
      } else {
        ++adjacency[a * v + b];
        ++adjacency[b * v + a];
      }
    }
    for (const auto& [label, vertex] : graph.legs()) leg_labels[vertex].push_back(label);
  }
};

// Isomorphism-invariant vertex colouring by iterated refinement on
// (genus, legs, loop count) and the multiset of neighbour colours.
std::vector<int> refined_colours(const StableGraph& graph, const Shape& shape, LegMode mode) {
  const int v = shape.v;
  std::vector<std::vector<int>> signature(v);
  for (int x = 0; x < v; ++x) {
    auto& s = signature[x];
    s = {graph.genera()[x], graph.valence(x), shape.adjacency[x * v + x], static_cast<int>(shape.leg_labels[x].size())};
    if (mode == LegMode::labeled) s.insert(s.end(), shape.leg_labels[x].begin(), shape.leg_labels[x].end());
  }
  std::vector<int> colour(v, 0);
  int classes = -1;
  while (true) {
    std::vector<std::vector<int>> distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int x = 0; x < v; ++x) {
      colour[x] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), signature[x]) - distinct.begin());
    }
    if (static_cast<int>(distinct.size()) == classes) break;
    classes = static_cast<int>(distinct.size());
    for (int x = 0; x < v; ++x) {
      std::vector<int> next{colour[x]};
      std::vector<std::pair<int, int>> around;
      for (int y = 0; y < v; ++y) {
        if (y != x && shape.adjacency[x * v + y] > 0) around.emplace_back(colour[y], shape.adjacency[x * v + y]);
      }
      std::sort(around.begin(), around.end());
      for (const auto& [c, m] : around) {
        next.push_back(c);
        next.push_back(m);
      }
      signature[x] = std::move(next);
    }
  }
  return colour;
}

std::vector<int> encode(const StableGraph& graph, const Shape& shape, const std::vector<int>& order, LegMode mode) {
  const int v = shape.v;
  std::vector<int> code;
  code.reserve(2 + v + v * (v + 1) / 2 + 2 * graph.leg_count());
  code.push_back(v);
  code.push_back(graph.leg_count());
  for (int i = 0; i < v; ++i) code.push_back(graph.genera()[order[i]]);
  for (int i = 0; i < v; ++i) {
    for (int j = i; j < v; ++j) code.push_back(shape.adjacency[order[i] * v + order[j]]);
  }
  if (mode == LegMode::labeled) {
    std::vector<int> position(v);
    for (int i = 0; i < v; ++i) position[order[i]] = i;
    for (const auto& [label, vertex] : graph.legs()) {
      code.push_back(label);
      code.push_back(position[vertex]);
    }
  } else {
    for (int i = 0; i < v; ++i) code.push_back(static_cast<int>(shape.leg_labels[order[i]].size()));
  }
  return code;
}

// Minimises the code over all vertex orders that list colour classes in
// increasing colour order.
std::pair<std::vector<int>, std::vector<int>> minimise(const StableGraph& graph, LegMode mode) {
  const Shape shape(graph);
  const auto colour = refined_colours(graph, shape, mode);
  std::vector<int> order(shape.v);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return colour[a] < colour[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < shape.v;) {
    int j = i;
    while (j < shape.v && colour[order[j]] == colour[order[i]]) ++j;
    if (j - i > 1) cells.emplace_back(i, j);
    i = j;
  }
  std::vector<int> best_code;
  std::vector<int> best_order;
  std::function<void(std::size_t)> rec = [&](std::size_t cell) {
    if (cell == cells.size()) {
      auto code = encode(graph, shape, order, mode);
      if (best_code.empty() || code < best_code) {
        best_code = std::move(code);
        best_order = order;
      }
      return;
    }
    auto first = order.begin() + cells[cell].first;
    auto last = order.begin() + cells[cell].second;
    std::sort(first, last);
    do {
      rec(cell + 1);
    } while (std::next_permutation(first, last));
  };
  rec(0);
  return {std::move(best_code), std::move(best_order)};
}

}  // namespace

CanonicalForm canonical_form(const StableGraph& graph, LegMode mode) {
  return CanonicalForm{minimise(graph, mode).first};
}

StableGraph canonical_graph(const StableGraph& graph, LegMode mode) {
  const auto [code, order] = minimise(graph, mode);
  const int v = graph.vertex_count();
  std::vector<int> position(v);
  for (int i = 0; i < v; ++i) position[order[i]] = i;
  std::vector<int> genera(v);
  for (int i = 0; i < v; ++i) genera[i] = graph.genera()[order[i]];
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : graph.edges()) {
    edges.emplace_back(std::min(position[a], position[b]), std::max(position[a], position[b]));
  }
  std::sort(edges.begin(), edges.end());
  std::map<int, int> legs;
  if (mode == LegMode::labeled) {
    for (const auto& [label, vertex] : graph.legs()) legs.emplace(label, position[vertex]);
  } else {
    std::vector<int> count(v, 0);
    for (const auto& [label, vertex] : graph.legs()) ++count[position[vertex]];
    int next = 1;
    for (int i = 0; i < v; ++i) {
      for (int c = 0; c < count[i]; ++c) legs.emplace(next++, i);
    }
  }
  return StableGraph(std::move(genera), edges, legs);
}

bool isomorphic(const StableGraph& a, const StableGraph& b, LegMode mode) {
  return canonical_form(a, mode) == canonical_form(b, mode);
}

bool is_top_stratum(const StableGraph& graph) {
  if (graph.vertex_count() == 0 || !graph.is_connected()) return false;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (graph.genera()[v] != 0 || graph.valence(v) != 3) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration.
//
// Every top stratum of (g, n) arises from a smaller one:
//  - if (g, n - 1) is stable, remove the vertex carrying leg n and fuse its
//    other two half-edges; conversely, insert leg n on an edge or a leg;
//  - otherwise ((1,1) and (g>=2, 0)) cut any edge on a cycle, giving a top
//    stratum of (g - 1, n + 2); conversely, glue legs n+1 and n+2.
// The base case is the single vertex of (0, 3).

namespace {

StableGraph insert_leg_on_edge(const StableGraph& graph, int half_edge, int label) {
  auto halves = graph.half_edges();
  auto genera = graph.genera();
  const int w = static_cast<int>(genera.size());
  genera.push_back(0);
  const int h1 = half_edge;
  const int h2 = halves[h1].twin;
  const int x1 = static_cast<int>(halves.size());
  const int x2 = x1 + 1;
  halves.push_back({w, h1, 0});
  halves.push_back({w, h2, 0});
  halves.push_back({w, -1, label});
  halves[h1].twin = x1;
  halves[h2].twin = x2;
  return StableGraph(std::move(genera), std::move(halves));
}

StableGraph insert_leg_on_leg(const StableGraph& graph, int half_edge, int label) {
  auto halves = graph.half_edges();
  auto genera = graph.genera();
  const int w = static_cast<int>(genera.size());
  genera.push_back(0);
  const int old_label = halves[half_edge].leg;
  const int y = static_cast<int>(halves.size());
  halves[half_edge].twin = y;
  halves[half_edge].leg = 0;
  halves.push_back({w, half_edge, 0});
  halves.push_back({w, -1, old_label});
  halves.push_back({w, -1, label});
  return StableGraph(std::move(genera), std::move(halves));
}

StableGraph glue_legs(const StableGraph& graph, int label_a, int label_b) {
  auto halves = graph.half_edges();
  int ha = -1;
  int hb = -1;
  for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
    if (halves[h].is_leg() && halves[h].leg == label_a) ha = h;
    if (halves[h].is_leg() && halves[h].leg == label_b) hb = h;
  }
  halves[ha] = {halves[ha].vertex, hb, 0};
  halves[hb] = {halves[hb].vertex, ha, 0};
  return StableGraph(graph.genera(), std::move(halves));
}

std::vector<StableGraph> sorted_classes(const std::vector<StableGraph>& candidates) {
  std::map<CanonicalForm, StableGraph> classes;
  for (const auto& c : candidates) {
    auto form = canonical_form(c);
    if (!classes.contains(form)) classes.emplace(std::move(form), canonical_graph(c));
  }
  std::vector<StableGraph> out;
  for (auto& [form, graph] : classes) out.push_back(std::move(graph));
  return out;
}

}  // namespace

std::vector<StableGraph> enumerate_top_strata(int g, int n) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
    throw DomainError("no top strata for unstable (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
  }
  if (g == 0 && n == 3) return {StableGraph({0}, {}, {{1, 0}, {2, 0}, {3, 0}})};

  std::vector<StableGraph> candidates;
  if (n >= 1 && 2 * g - 2 + (n - 1) > 0) {
    for (const auto& base : enumerate_top_strata(g, n - 1)) {
      const auto& halves = base.half_edges();
      for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
        if (halves[h].is_leg()) {
          candidates.push_back(insert_leg_on_leg(base, h, n));
        } else if (h < halves[h].twin) {
          candidates.push_back(insert_leg_on_edge(base, h, n));
        }
      }
    }
  } else {
    for (const auto& base : enumerate_top_strata(g - 1, n + 2)) candidates.push_back(glue_legs(base, n + 1, n + 2));
  }
  return sorted_classes(candidates);
}

// ---------------------------------------------------------------------------
// Duality moves.

std::vector<DualityMove> available_moves(const StableGraph& graph) {
  std::vector<DualityMove> out;
  const auto& halves = graph.half_edges();
  for (int h = 0; h < static_cast<int>(halves.size()); ++h) {
    const auto& e = halves[h];
    if (e.is_leg() || e.twin < h) continue;
    const int u = e.vertex;
    const int v = halves[e.twin].vertex;
    if (u == v || graph.valence(u) != 3 || graph.valence(v) != 3) continue;
    out.push_back({h, 0});
    out.push_back({h, 1});
  }
  return out;
}

StableGraph apply_move(const StableGraph& graph, const DualityMove& move) {
  const auto& halves = graph.half_edges();
  const int h = move.half_edge;
  if (h < 0 || h >= static_cast<int>(halves.size()) || halves[h].is_leg()) {
    throw InvalidArgument("duality move: half-edge is not part of an edge");
  }
  if (move.pairing != 0 && move.pairing != 1) throw InvalidArgument("duality move: pairing must be 0 or 1");
  const int t = halves[h].twin;
  const int u = halves[h].vertex;
  const int v = halves[t].vertex;
  if (u == v) throw InvalidArgument("duality move: edge is a loop");
  if (graph.valence(u) != 3 || graph.valence(v) != 3) throw InvalidArgument("duality move: endpoint is not trivalent");

  auto others = [&](int vertex, int skip) {
    std::vector<int> out;
    for (int x : graph.half_edges_at(vertex)) {
      if (x != skip) out.push_back(x);
    }
    return out;
  };
  const auto at_u = others(u, h);  // i, j
  const auto at_v = others(v, t);  // k, l
  const int j = at_u[1];
  const int swap_with = move.pairing == 0 ? at_v[0] : at_v[1];
  auto moved = halves;
  moved[j].vertex = v;
  moved[swap_with].vertex = u;
  return StableGraph(graph.genera(), std::move(moved));
}

// ---------------------------------------------------------------------------
// Connectivity.

ConnectivityCertificate connectivity_certificate(int g, int n, LegMode mode) {
  ConnectivityCertificate cert;
  cert.g = g;
  cert.n = n;
  cert.mode = mode;
  std::map<CanonicalForm, int> index;
  for (const auto& graph : enumerate_top_strata(g, n)) {
    auto form = canonical_form(graph, mode);
    if (index.contains(form)) continue;
    index.emplace(form, static_cast<int>(cert.classes.size()));
    cert.classes.push_back(canonical_graph(graph, mode));
    cert.forms.push_back(std::move(form));
  }

  const int size = static_cast<int>(cert.classes.size());
  std::vector<bool> seen(size, false);
  for (int root = 0; root < size; ++root) {
    if (seen[root]) continue;
    std::vector<int> component{root};
    std::deque<int> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const int from = queue.front();
      queue.pop_front();
      for (const auto& move : available_moves(cert.classes[from])) {
        const auto target = canonical_form(apply_move(cert.classes[from], move), mode);
        const auto it = index.find(target);
        if (it == index.end()) throw InvariantViolation("duality move left the enumerated top strata");
        if (seen[it->second]) continue;
        seen[it->second] = true;
        cert.tree.push_back({from, move, it->second});
        component.push_back(it->second);
        queue.push_back(it->second);
      }
    }
    std::sort(component.begin(), component.end());
    cert.components.push_back(std::move(component));
  }
  return cert;
}

bool check_certificate(const ConnectivityCertificate& cert) {
  const int size = static_cast<int>(cert.classes.size());
  if (static_cast<int>(cert.forms.size()) != size) return false;
  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& step : cert.tree) {
    if (step.from < 0 || step.from >= size || step.to < 0 || step.to >= size) return false;
    const auto& from = cert.classes[step.from];
    const auto moves = available_moves(from);
    if (std::find(moves.begin(), moves.end(), step.move) == moves.end()) return false;
    if (canonical_form(apply_move(from, step.move), cert.mode) != cert.forms[step.to]) return false;
    parent[find(step.from)] = find(step.to);
  }
  std::vector<bool> covered(size, false);
  for (const auto& component : cert.components) {
    for (int c : component) {
      if (c < 0 || c >= size || covered[c] || find(c) != find(component.front())) return false;
      covered[c] = true;
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

}  // namespace taut
