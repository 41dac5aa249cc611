#pragma once

#include <cstdint>
#include <vector>

#include "qsrlab/action.hpp"
#include "qsrlab/field.hpp"

namespace qsrlab {

/// Points of GF(q)^d are indexed by sum code(v_i) q^i, so the order is
/// ascending base-p coefficient order with v_0 least significant.
std::uint32_t vector_index(const GaloisField& F, const std::vector<FieldElement>& v);
std::vector<FieldElement> vector_at(const GaloisField& F, std::size_t d, std::uint32_t index);

/// The group generated by the given matrices, the field automorphism
/// x -> x^{p^field_auto_power} applied coordinatewise (skipped when the
/// exponent is 0 mod f), and optionally all translations, acting on the q^d
/// vectors by v -> vA (+ b). The action is native: source == image.
/// Throws std::invalid_argument for a singular matrix or d*log(q) too large.
ActionInstance affine_perm_action(std::size_t d, const GaloisField& F,
                                  const std::vector<MatrixOverField>& matrices,
                                  std::uint32_t field_auto_power, bool include_translations);

enum class ProjectiveKind { PSL, PGL, PSigmaL, PGammaL };

/// PSL/PGL/PSigmaL/PGammaL(2,q) on the q+1 points of the projective line.
/// Point code(x) is (x : 1); point q is infinity.
ActionInstance projective_line_action(const GaloisField& F, ProjectiveKind kind);

}  // namespace qsrlab
