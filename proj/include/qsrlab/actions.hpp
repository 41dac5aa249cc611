#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsrlab/action.hpp"

namespace qsrlab {

/// Action on k-subsets of {0..n-1}, 1 <= k < n, in colex order: the subset
/// c_1 < ... < c_k has rank sum C(c_i, i).
ActionInstance ksubset_action(const PermGroup& G, std::size_t k);

/// Action on partitions of {0..n-1} into n/k blocks of size k. A partition
/// is stored canonically with blocks numbered by their smallest point.
ActionInstance partition_action(const PermGroup& G, std::size_t k);

/// Right cosets Hg of H in G with canonical representatives.
///
/// The representative of Hg is the unique element of the coset whose images
/// of H's base points are lexicographically smallest; it is found greedily
/// one base level at a time.
class CosetTable {
 public:
  CosetTable(const PermGroup& G, const PermGroup& H, std::size_t max_index);

  std::size_t size() const { return reps_.size(); }
  const Permutation& representative(std::size_t i) const { return reps_[i]; }
  const PermGroup& subgroup() const { return H_; }
  Permutation canonical(const Permutation& g) const;
  /// Index of the coset containing g.
  std::size_t coset_of(const Permutation& g) const;
  /// Image of coset i under right multiplication by g.
  std::size_t act(std::size_t i, const Permutation& g) const { return coset_of(reps_[i] * g); }

 private:
  std::string key(const Permutation& c) const;

  PermGroup H_;
  std::vector<Permutation> reps_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Action of G on [G:H]; domain point 0 is the coset H itself. Throws
/// std::invalid_argument if H is not a subgroup and BudgetExceeded if the
/// index exceeds max_index.
ActionInstance coset_action(const PermGroup& G, const PermGroup& H, std::size_t max_index = 1000000);
/// The coset table behind an ActionInstance produced by coset_action, if any.
std::shared_ptr<const CosetTable> coset_table_of(const ActionInstance& A);

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;
  std::vector<std::uint32_t> block_of;

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks[0].size(); }
  friend bool operator==(const BlockSystem& a, const BlockSystem& b) { return a.blocks == b.blocks; }
};

/// Finest G-invariant partition in which points a and b share a block.
BlockSystem minimal_block_containing(std::size_t degree, const std::vector<Permutation>& gens, Point a, Point b);

/// Nontrivial block systems of a transitive action obtained by closing
/// {0, beta}. With minimal_only (the default) only systems whose block
/// contains no smaller such block are returned; an empty result means the
/// action is primitive. Throws std::invalid_argument for intransitive input.
std::vector<BlockSystem> block_systems(const ActionInstance& A, bool minimal_only = true);

/// The action on the blocks of a G-invariant system. Throws
/// std::invalid_argument when the system is not invariant.
ActionInstance induced_block_action(const ActionInstance& A, const BlockSystem& system);

/// Checks that `words` random words in the source generators induce the
/// same permutation as the corresponding words in the image generators.
bool check_homomorphism(const ActionInstance& A, std::size_t words, std::uint64_t seed);
/// True iff the image group has the same order as the source.
bool is_faithful(const ActionInstance& A);

}  // namespace qsrlab
