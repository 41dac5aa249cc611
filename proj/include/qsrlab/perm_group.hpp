#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qsrlab/bigint.hpp"
#include "qsrlab/perm.hpp"

namespace qsrlab {

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// level's strong generators, with an explicit transversal.
struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> generators;
  std::vector<Point> orbit;
  /// position[x] = index of x in `orbit`, or -1.
  std::vector<std::int32_t> position;
  /// transversal[i] maps `base` to orbit[i]; inverse_transversal[i] is its inverse.
  std::vector<Permutation> transversal;
  std::vector<Permutation> inverse_transversal;
  /// Schreier-generator bookkeeping: checked[i] = number of generators already
  /// tested against orbit point i.
  std::vector<std::uint32_t> checked;

  bool in_orbit(Point x) const { return position[x] >= 0; }
  const Permutation& rep(Point x) const { return transversal[static_cast<std::size_t>(position[x])]; }
  const Permutation& rep_inverse(Point x) const {
    return inverse_transversal[static_cast<std::size_t>(position[x])];
  }
};

/// Base and strong generating set with per-level transversals.
class StabilizerChain {
 public:
  StabilizerChain() = default;
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  /// Deterministic Schreier-Sims. Base points beyond `base_prefix` are taken
  /// greedily as the first point moved by the first generator that fixes the
  /// current base.
  static StabilizerChain schreier_sims(std::size_t degree, const std::vector<Permutation>& gens,
                                       const std::vector<Point>& base_prefix = {});

  /// Randomised Schreier-Sims that stops once the chain order reaches
  /// `known_order`. The result is a complete chain because a partial chain
  /// can never over-count.
  static StabilizerChain random_schreier_sims(std::size_t degree,
                                              const std::vector<Permutation>& gens,
                                              const BigInt& known_order, std::uint64_t seed,
                                              const std::vector<Point>& base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  std::vector<Point> base() const;
  BigInt order() const;

  /// Sift g from level `from`. Returns the residue and the index of the first
  /// level whose orbit did not contain the image (levels().size() if none).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;

  /// Visits every element once; stops early if `visit` returns false.
  void for_each_element(const std::function<bool(const Permutation&)>& visit) const;
  Permutation random_element(std::mt19937_64& rng) const;

  /// Strong generators of the pointwise stabilizer of the first `depth` base points.
  std::vector<Permutation> stabilizer_generators(std::size_t depth) const;

 private:
  void add_base_point(Point b);
  void add_generator(std::size_t level, const Permutation& g);
  void extend_orbit(std::size_t level, std::size_t first_new_generator);

  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
};

/// A permutation group given by generators, with a lazily built stabilizer
/// chain. Chain construction is not synchronised: build it (e.g. via order())
/// before sharing a group across threads.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  /// Build with the randomised chain, checking the result against `order`.
  static PermGroup with_known_order(std::size_t degree, std::vector<Permutation> generators,
                                    const BigInt& order, std::uint64_t seed = 1);
  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  const StabilizerChain& chain() const;
  bool has_chain() const { return chain_ != nullptr; }
  /// Replace the chain by one whose base starts with `prefix`.
  void rebase(const std::vector<Point>& prefix);

  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& other) const;

  /// Throws OrderExceedsLimit when |G| > limit.
  void for_each_element(const BigInt& limit,
                        const std::function<bool(const Permutation&)>& visit) const;
  std::vector<Permutation> elements(const BigInt& limit) const;
  Permutation random_element(std::mt19937_64& rng) const { return chain().random_element(rng); }

  std::vector<std::vector<Point>> orbits() const;
  std::vector<Point> orbit(Point x) const;
  bool is_transitive() const;
  /// Generators of the stabilizer of `x` (computed from a rebased chain).
  PermGroup point_stabilizer(Point x) const;
  /// An element mapping from[i] to to[i] for every i, if one exists.
  std::optional<Permutation> transporter(const std::vector<Point>& from, const std::vector<Point>& to) const;
  /// Setwise stabilizer of a set of at most 9 points.
  PermGroup set_stabilizer(const std::vector<Point>& set) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  mutable std::shared_ptr<const StabilizerChain> chain_;
};

/// Orbits of a set of permutations on {0..degree-1}, each sorted, ordered by
/// smallest element.
std::vector<std::vector<Point>> orbits_of(std::size_t degree, const std::vector<Permutation>& gens);

}  // namespace qsrlab
