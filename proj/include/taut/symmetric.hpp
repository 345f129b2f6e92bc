#pragma once

// Partitions, permutations and cycle types: the combinatorial substrate for
// Hurwitz counting.
//
// Points are 1-indexed {1..d} at every public boundary. Composition is
// right-to-left: compose(p, q) applies q first, then p.

#include "taut/exact.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace taut {

/// Integer partition with parts sorted non-increasing.
class Partition {
 public:
  /// Sorts `parts`; throws InvalidArgument if empty or any part < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const noexcept { return size_; }  // d, the sum of the parts
  int length() const noexcept { return static_cast<int>(parts_.size()); }  // n

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// All partitions of d, in reverse lexicographic order starting from (d).
std::vector<Partition> partitions_of(int d);

class Permutation {
 public:
  /// From 1-based images: images[i-1] is the image of point i.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int d);
  /// The transposition exchanging a and b (1-based, a != b).
  static Permutation transposition(int d, int a, int b);
  /// Product of disjoint cycles given as lists of 1-based points.
  static Permutation from_cycles(int d, const std::vector<std::vector<int>>& cycles);
  /// Parses cycle notation such as "(1 2)(3)". Points not mentioned are fixed.
  static Permutation parse_cycles(int d, const std::string& text);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  /// Image of a 1-based point.
  int operator()(int point) const { return images_[point - 1]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  /// Cycles including fixed points, each starting at its smallest point,
  /// ordered by that smallest point.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;
  bool is_identity() const;
  /// Cycle notation with fixed points, e.g. "(1 2)(3)".
  std::string to_cycle_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// "Apply q, then p". Throws InvalidArgument on mismatched degrees.
Permutation compose(const Permutation& p, const Permutation& q);

Partition cycle_type(const Permutation& p);

/// Whether the group generated by `gens` acts transitively on {1..d}.
bool is_transitive(std::span<const Permutation> gens, int d);

/// #Aut(alpha): the product over distinct parts of (multiplicity)!.
Integer aut_count(const Partition& alpha);

/// A genus together with a labeled ramification profile over infinity.
///
/// `ordered_alpha` keeps the labeling of the points over infinity; `alpha`
/// is its canonical (sorted) partition. The number of simple branch points
/// is r = d + n + 2g - 2.
class HurwitzProblem {
 public:
  HurwitzProblem(int genus, std::vector<int> ordered_alpha);

  int genus() const noexcept { return genus_; }
  const std::vector<int>& ordered_alpha() const noexcept { return ordered_alpha_; }
  const Partition& alpha() const noexcept { return alpha_; }
  int degree() const noexcept { return alpha_.size(); }
  int points() const noexcept { return alpha_.length(); }
  int branch_points() const noexcept { return branch_points_; }
  /// 2g - 2 + n > 0.
  bool is_stable() const noexcept { return 2 * genus_ - 2 + points() > 0; }

 private:
  int genus_;
  std::vector<int> ordered_alpha_;
  Partition alpha_;
  int branch_points_;
};

/// Parses a comma list such as "3,1,1".
std::vector<int> parse_int_list(const std::string& text);

}  // namespace taut
