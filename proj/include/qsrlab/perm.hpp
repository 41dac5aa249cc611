#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsrlab {

using Point = std::uint32_t;

/// Multiset of cycle lengths, stored as (length, count) pairs with strictly
/// increasing lengths.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(std::vector<std::pair<std::size_t, std::size_t>> parts);

  const std::vector<std::pair<std::size_t, std::size_t>>& parts() const& { return parts_; }
  std::vector<std::pair<std::size_t, std::size_t>> parts() && { return std::move(parts_); }
  std::size_t degree() const;
  std::size_t count(std::size_t length) const;
  std::size_t fixed_points() const { return count(1); }
  /// Number of distinct cycle lengths.
  std::size_t distinct_lengths() const { return parts_.size(); }

  /// "1^1 5^2" style rendering; the empty type renders as "-".
  std::string to_string() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> parts_;
};

/// A permutation of {0, ..., n-1} given by its image array.
///
/// Products compose left to right: (a * b)(x) = b(a(x)), so `a * b` means
/// "apply a, then b". Conjugation follows the same convention:
/// a.conjugate(g) = g^-1 * a * g, which relabels every cycle (x y ...) of a
/// as (g(x) g(y) ...).
class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// Build from disjoint cycles of 0-based points.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles);
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
  /// Trusts the caller; no bijection check.
  static Permutation from_images_unchecked(std::vector<Point> images);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(long long e) const;
  /// g^-1 * this * g.
  Permutation conjugate(const Permutation& g) const;
  /// Order as an unsigned 64-bit value; throws std::overflow_error if the
  /// lcm of the cycle lengths does not fit.
  std::uint64_t order() const;
  CycleType cycle_type() const;
  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const;
  std::size_t fixed_point_count() const;
  /// First point moved, or degree() when identity.
  Point first_moved() const;
  bool is_even() const;

  std::size_t hash() const;
  /// "(1,2,3)(4,5)" with 1-based labels.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

/// Left-to-right product; throws DegreeMismatch.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

CycleType cycle_type(const Permutation& g);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace qsrlab
