#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsrlab/action.hpp"
#include "qsrlab/structure.hpp"

namespace qsrlab {

enum class QsrRoute { Direct, FusionCentralizer, NormalizerFusion };
std::string to_string(QsrRoute r);

/// Evidence that an element is quasi-semiregular in an action: it fixes
/// exactly `fixed_point` and every other cycle has length `order`.
struct QsrCertificate {
  Permutation element;
  std::uint64_t order = 1;
  Point fixed_point = 0;
  std::size_t cycle_count = 0;
  std::set<QsrRoute> routes;
  std::string action;
};

/// True iff img has exactly one fixed point and every other cycle has length m.
bool is_qsr_image(const Permutation& img, std::uint64_t m);
/// Cycle-structure test of the source element g in the action A.
std::optional<QsrCertificate> is_qsr_direct(const ActionInstance& A, const Permutation& g);

/// Class orbits of one group, built once and looked up by membership.
class ClassCache {
 public:
  explicit ClassCache(PermGroup G) : G_(std::move(G)) {}
  const PermGroup& group() const { return G_; }
  const ClassOrbit& orbit_of(const Permutation& x);
  std::size_t size() const { return orbits_.size(); }

 private:
  PermGroup G_;
  std::vector<std::unique_ptr<ClassOrbit>> orbits_;
};

/// Fusion/centralizer criterion on [G:H] for x in H of prime order:
/// x^G meets H in x^H and |C_G(x)| = |C_H(x)|.
bool is_qsr_fusion(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache = nullptr);
/// Normalizer criterion on [G:H] for K = <x>, x in H of prime order:
/// N_G(K) = N_H(K) and the G-conjugates of K inside H are all H-conjugate.
bool is_qsr_normalizer(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache = nullptr);

/// Fixed points of x on [G:H] as |G:H| |x^G meet H| / |x^G|. Throws
/// InternalConsistencyError when the division is not exact.
BigInt fixed_points_formula(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache = nullptr);
/// The same count as a sum of |C_G(y)| / |C_H(y)| over representatives y
/// of the H-classes into which x^G meet H splits.
BigInt fixed_points_class_split(const PermGroup& G, const PermGroup& H, const Permutation& x,
                                ClassCache* cache = nullptr);
/// Fixed points of the subgroup K on [G:H] as the sum of |N_G(K_i)| / |N_H(K_i)|
/// over representatives K_i of the H-classes of G-conjugates of K inside H.
/// Cyclic K use the element class of a generator; other K enumerate their
/// conjugates and need |K| <= 10^4 and at most 10^5 conjugates.
BigInt fixed_points_manning(const PermGroup& G, const PermGroup& H, const PermGroup& K, ClassCache* cache = nullptr);
/// Points of the action fixed by every generator of K.
std::size_t common_fixed_points(const ActionInstance& A, const std::vector<Permutation>& K);

struct QsrClassRecord {
  unsigned prime = 0;
  std::string label;
  Permutation representative;
  /// Cycle type of the representative on the source points and on the domain.
  std::string source_cycle_type;
  std::string action_cycle_type;
  /// In G when `in_stabilizer` is false; otherwise the H-class data, which
  /// coincide with the G-class data whenever the class is qsr.
  BigInt class_size;
  BigInt centralizer_order;
  bool in_stabilizer = false;
  bool qsr = false;
};

struct PrimeVerdict {
  unsigned prime = 0;
  /// degree = 1 (mod p), necessary for a qsr element of order p.
  bool congruence = false;
  /// p-part of |H| equals that of |G| (only meaningful when H is known).
  std::optional<bool> sylow;
  bool exists = false;
  std::vector<QsrClassRecord> classes;

  std::size_t qsr_class_count() const;
};

struct QsrReport {
  std::string action;
  std::size_t degree = 0;
  BigInt group_order;
  ClassMethod method = ClassMethod::Enumeration;
  bool certified = true;
  /// "G" when classes of the acting group were examined, "H" for classes
  /// of the point stabilizer.
  std::string class_scope = "G";
  std::vector<PrimeVerdict> verdicts;
  std::vector<QsrCertificate> certificates;

  std::vector<unsigned> qsr_primes() const;
  const PrimeVerdict& verdict(unsigned p) const;
};

struct ScanOptions {
  ClassOptions classes;
  /// Examine classes of the point stabilizer when the action supplies one.
  bool use_point_stabilizer = true;
  BigInt stabilizer_limit = 10000000;
};

/// Classify the order-p classes for each prime. A qsr element fixes a
/// point, so with a known point stabilizer H the H-classes of order-p
/// elements are scanned; qsr H-classes correspond one-to-one with qsr
/// G-classes because x^G meets H in x^H for qsr x.
QsrReport scan_action(const ActionInstance& A, const std::vector<unsigned>& primes, const ScanOptions& options = {});

enum class SymAltFamily { Subsets, Partitions };

struct SymAltPrediction {
  unsigned prime = 0;
  bool exists = false;
  /// Source cycle types of qsr elements of order p, e.g. "1^5 5^4".
  std::set<std::string> cycle_types;
};

/// Closed-form verdicts for Sym(n) or Alt(n) on k-subsets (1 <= k < n/2) or
/// on partitions into n/k blocks of size k, for every prime p <= n.
std::vector<SymAltPrediction> predict_sym_alt(std::size_t n, SymAltFamily family, std::size_t k, bool alternating);

}  // namespace qsrlab
