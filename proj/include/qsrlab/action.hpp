#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsrlab/bigint.hpp"
#include "qsrlab/perm_group.hpp"

namespace qsrlab {

/// A realised action of a source group on a finite domain {0..N-1}.
///
/// `image` carries one domain permutation per source generator, in the same
/// order. `induce` maps any source element to its domain permutation; for
/// native actions (source already acts on the domain) it is the identity.
struct ActionInstance {
  std::string name;
  PermGroup source;
  PermGroup image;
  std::function<Permutation(const Permutation&)> induce;
  std::function<std::string(Point)> label;
  /// Source elements generating the stabilizer of domain point 0, when known.
  std::optional<std::vector<Permutation>> point_stabilizer;
  /// Closed-form domain size (binomial, multinomial, index...).
  BigInt expected_degree = 0;

  std::size_t degree() const { return image.degree(); }
  Permutation act(const Permutation& g) const { return induce ? induce(g) : g; }
  std::string point_label(Point x) const { return label ? label(x) : std::to_string(x + 1); }
};

/// Wrap a permutation group as its own natural action.
ActionInstance natural_action(const PermGroup& g, std::string name);

}  // namespace qsrlab
