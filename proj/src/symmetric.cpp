#include "taut/symmetric.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace taut {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InvalidArgument("partition must have at least one part");
  for (int p : parts_) {
    if (p < 1) throw InvalidArgument("partition parts must be positive");
    size_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::vector<Partition> partitions_of(int d) {
  std::vector<Partition> out;
  if (d < 1) return out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(d, d);
  return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int d = degree();
  if (d < 1) throw InvalidArgument("permutation degree must be at least 1");
  std::vector<bool> seen(d, false);
  for (int x : images_) {
    if (x < 1 || x > d || seen[x - 1]) throw InvalidArgument("images do not form a bijection");
    seen[x - 1] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> images(d);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int d, int a, int b) {
  if (a == b || a < 1 || b < 1 || a > d || b > d) {
    throw InvalidArgument("transposition needs two distinct points in range");
  }
  auto images = identity(d).images_;
  std::swap(images[a - 1], images[b - 1]);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
  auto images = identity(d).images_;
  std::vector<bool> used(d, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int x = cycle[i];
      if (x < 1 || x > d || used[x - 1]) throw InvalidArgument("cycles are not disjoint points in range");
      used[x - 1] = true;
      images[x - 1] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse_cycles(int d, const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw InvalidArgument("expected '(' in cycle notation: " + text);
    const auto close = text.find(')', pos);
    if (close == std::string::npos) throw InvalidArgument("unterminated cycle: " + text);
    std::istringstream body(text.substr(pos + 1, close - pos - 1));
    std::vector<int> cycle;
    for (int x; body >> x;) cycle.push_back(x);
    if (!body.eof()) throw InvalidArgument("bad point in cycle notation: " + text);
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  return from_cycles(d, cycles);
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(out));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  const int d = degree();
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(d, false);
  for (int start = 1; start <= d; ++start) {
    if (seen[start - 1]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x - 1]; x = images_[x - 1]) {
      seen[x - 1] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  for (const auto& cycle : cycles()) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InvalidArgument("compose: permutations of different degree");
  std::vector<int> images(p.degree());
  for (int x = 1; x <= p.degree(); ++x) images[x - 1] = p(q(x));
  return Permutation(std::move(images));
}

Partition cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  for (const auto& c : p.cycles()) lengths.push_back(static_cast<int>(c.size()));
  return Partition(std::move(lengths));
}

bool is_transitive(std::span<const Permutation> gens, int d) {
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = d;
  for (const auto& g : gens) {
    if (g.degree() != d) throw InvalidArgument("is_transitive: generator of wrong degree");
    for (int x = 0; x < d; ++x) {
      const int a = find(x);
      const int b = find(g.images()[x] - 1);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

Integer aut_count(const Partition& alpha) {
  std::map<int, unsigned long> multiplicity;
  for (int p : alpha.parts()) ++multiplicity[p];
  Integer out = 1;
  for (const auto& [part, m] : multiplicity) out *= factorial(m);
  return out;
}

HurwitzProblem::HurwitzProblem(int genus, std::vector<int> ordered_alpha)
    : genus_(genus), ordered_alpha_(std::move(ordered_alpha)), alpha_(ordered_alpha_) {
  if (genus_ < 0) throw InvalidArgument("genus must be non-negative");
  branch_points_ = alpha_.size() + alpha_.length() + 2 * genus_ - 2;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not an integer list: '" + text + "'");
    }
    if (used != item.size()) throw InvalidArgument("not an integer list: '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw InvalidArgument("empty integer list");
  return out;
}

}  // namespace taut
