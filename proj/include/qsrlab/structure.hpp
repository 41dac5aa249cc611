#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsrlab/bigint.hpp"
#include "qsrlab/perm_group.hpp"

namespace qsrlab {

/// Subgroups are plain PermGroups on the parent's domain; every generator is
/// a member of the parent by construction.
using SubgroupHandle = PermGroup;

/// A hash set of permutations of one degree in a flat byte array (1, 2 or 4
/// bytes per point), remembering insertion order.
class PermSet {
 public:
  explicit PermSet(std::size_t degree = 0);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return count_; }
  std::optional<std::size_t> find(std::span<const Point> images) const;
  std::optional<std::size_t> find(const Permutation& g) const { return find(g.images()); }
  bool contains(const Permutation& g) const { return find(g).has_value(); }
  /// Returns (index, inserted).
  std::pair<std::size_t, bool> insert(std::span<const Point> images);
  std::pair<std::size_t, bool> insert(const Permutation& g) { return insert(g.images()); }
  Permutation at(std::size_t i) const;
  void load(std::size_t i, std::vector<Point>& out) const;

 private:
  std::size_t hash(std::span<const Point> images) const;
  bool equals(std::size_t i, std::span<const Point> images) const;
  void store(std::span<const Point> images);
  void grow();

  std::size_t degree_ = 0;
  std::size_t width_ = 1;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> data_;
  std::vector<std::uint32_t> table_;
};

/// The conjugacy class x^G, built as an orbit under conjugation by G's
/// generators with a Schreier tree, so that every member y comes with an
/// element t of G satisfying x^t = y.
class ClassOrbit {
 public:
  ClassOrbit(const PermGroup& G, const Permutation& x, std::size_t max_size = 4000000);

  const Permutation& representative() const { return x_; }
  const PermGroup& group() const { return G_; }
  std::size_t size() const { return set_.size(); }
  Permutation element(std::size_t i) const { return set_.at(i); }
  std::optional<std::size_t> find(const Permutation& y) const { return set_.find(y); }
  bool contains(const Permutation& y) const { return set_.contains(y); }
  const PermSet& elements() const { return set_; }
  /// t with x^t = element(i).
  Permutation transporter(std::size_t i) const;
  BigInt centralizer_order() const { return G_.order() / size(); }
  /// C_G(x) from Schreier generators of the orbit.
  PermGroup centralizer() const;
  /// Number of class members lying in H.
  BigInt count_in(const PermGroup& H) const;
  /// The class members lying in H.
  std::vector<Permutation> members_in(const PermGroup& H) const;

 private:
  PermGroup G_;
  Permutation x_;
  PermSet set_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> via_;
};

struct ClassDatum {
  Permutation representative;
  BigInt class_size;
  BigInt centralizer_order;
  std::uint64_t element_order = 1;
};

enum class ClassMethod { SymAltClosedForm, Enumeration, RandomPowering };
std::string to_string(ClassMethod m);

struct ClassList {
  std::vector<ClassDatum> classes;
  ClassMethod method = ClassMethod::Enumeration;
  /// False only for the random-powering search.
  bool certified = true;
};

struct ClassOptions {
  /// Groups up to this order are enumerated element by element.
  BigInt enumeration_limit = 10000000;
  /// Consecutive fruitless samples that end a random class search.
  std::size_t stale_samples = 10000;
  std::uint64_t seed = 1;
};

/// Whether G is the full Sym(n) (false) or Alt(n) (true) on its own degree n.
std::optional<bool> natural_sym_alt(const PermGroup& G);

/// Conjugacy classes of G, or only those of elements of the given prime
/// order. Natural Sym(n)/Alt(n) use cycle types; other groups up to
/// enumeration_limit are enumerated (filtered mode is certified against a
/// direct count of order-p elements); larger groups need a prime and use
/// random powering, which is flagged uncertified. Classes are sorted by
/// element order, then decreasing centralizer order, then representative.
ClassList conjugacy_classes(const PermGroup& G, std::optional<unsigned> prime = std::nullopt,
                            const ClassOptions& options = {});

/// Label classes of one element order as 5a, 5b, ... in list order.
std::vector<std::string> class_labels(const std::vector<ClassDatum>& classes);

SubgroupHandle centralizer(const PermGroup& G, const Permutation& g);
/// N_G(<x>): the centralizer together with one transporter x -> x^k for
/// every k coprime to |x| with x^k conjugate to x.
SubgroupHandle normalizer_of_cyclic(const PermGroup& G, const Permutation& x);
SubgroupHandle normalizer_of_cyclic(const ClassOrbit& orbit);
/// Number r of exponents k in (Z/m)^* with x^k conjugate to x in the class orbit.
std::size_t power_fusion_count(const ClassOrbit& orbit);
/// Does x^G meet H exactly in x^H? Requires x in H.
bool fusion_test(const PermGroup& G, const SubgroupHandle& H, const Permutation& x);

/// Sub_G(x) for x of prime order, scanning every g in G (|G| <= 10^6).
SubgroupHandle subnormaliser(const PermGroup& G, const Permutation& x);
/// U subnormal in V: the series V, ncl_V(U), ncl_{ncl_V(U)}(U), ... of
/// normal closures descends to U.
bool is_subnormal(const SubgroupHandle& U, const SubgroupHandle& V);
/// Smallest normal subgroup of V containing U (U must lie in V).
SubgroupHandle normal_closure(const SubgroupHandle& U, const PermGroup& V);
/// p divides |H| and no conjugate H^g with g outside H meets H in a group of
/// order divisible by p. Requires |G:H| <= 10^4.
bool is_strongly_p_embedded(const PermGroup& G, const SubgroupHandle& H, unsigned p);

bool is_prime(std::uint64_t n);
std::vector<unsigned> primes_up_to(unsigned n);
std::vector<unsigned> prime_divisors(const BigInt& n);

}  // namespace qsrlab
