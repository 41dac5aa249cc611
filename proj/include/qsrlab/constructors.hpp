#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsrlab/action.hpp"
#include "qsrlab/perm_group.hpp"

namespace qsrlab {

/// Sym(n) or Alt(n) on {0..n-1}, 1 <= n <= 24.
PermGroup make_sym_alt(std::size_t n, bool alternating);

/// Sym(k) wr Sym(l) in product action on [k]^l. A point (a_0, ..., a_{l-1})
/// is encoded as sum a_i k^i. The top group permutes coordinates: sigma
/// sends coordinate i to position sigma(i).
class ProductAction {
 public:
  ProductAction(std::size_t k, std::size_t l);

  std::size_t k() const { return k_; }
  std::size_t l() const { return l_; }
  const PermGroup& group() const { return group_; }

  Point encode(std::span<const Point> coords) const;
  std::vector<Point> decode(Point x) const;

  /// The element (h_0, ..., h_{l-1}) sigma: apply h coordinatewise, then
  /// permute coordinates by sigma.
  Permutation element(const std::vector<Permutation>& h, const Permutation& sigma) const;

  /// True iff g lies in Sym(k)^l, i.e. coordinate i of the image depends
  /// only on coordinate i.
  bool in_base_group(const Permutation& g) const;
  /// The components h_i of a base-group element.
  std::vector<Permutation> components(const Permutation& g) const;

 private:
  std::size_t k_, l_;
  std::vector<std::size_t> stride_;
  PermGroup group_;
};

/// Orders of the nonabelian simple groups of order at most 10^4.
std::span<const std::uint64_t> small_simple_orders();

/// |{s in T : s^k = 1}|, by brute force over T. Requires |T| in
/// small_simple_orders() and k prime.
std::uint64_t sd_fixed_coset_count(const PermGroup& T, std::uint32_t k);

/// The elements of a small group with a lookup index.
class ElementTable {
 public:
  explicit ElementTable(const PermGroup& G, std::uint64_t limit = 1000000);
  std::size_t size() const { return elements_.size(); }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }
  /// Index of g; throws std::out_of_range when g is not in the table.
  std::size_t index_of(const Permutation& g) const;
  std::size_t identity_index() const { return identity_; }

 private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::size_t identity_ = 0;
};

/// Simple-diagonal fragment: T^k extended by the k-cycle on coordinates and
/// the supplied diagonal automorphisms, acting on right cosets of the
/// diagonal subgroup. Coset D(t_1, ..., t_k) is stored by its normal form
/// (1, t_1^-1 t_2, ..., t_1^-1 t_k), encoded as a base-|T| integer.
/// Each automorphism is given as a permutation c normalising T, acting as
/// t -> c^-1 t c.
ActionInstance make_sd_small(const PermGroup& T, std::size_t k,
                             const std::vector<Permutation>& diagonal_automorphisms = {});

/// Holomorph-of-simple action on T: x -> a^-1 x b for a, b in T, optionally
/// with x -> x^-1 and with the outer automorphism of an alternating T
/// (conjugation by a transposition).
ActionInstance make_hs_type(const PermGroup& T, bool include_swap, bool include_outer);

}  // namespace qsrlab
