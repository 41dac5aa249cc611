#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsrlab {

/// GF(p^f) defined by a monic polynomial over GF(p).
/// `modulus` holds the coefficients c_0..c_{f-1} of x^f + c_{f-1}x^{f-1} + ... + c_0.
struct FieldSpec {
  std::uint32_t characteristic = 2;
  std::uint32_t degree = 1;
  std::vector<std::uint32_t> modulus;

  /// The smallest monic irreducible polynomial of degree f, ordering
  /// polynomials by (c_{f-1}, ..., c_0) lexicographically.
  static FieldSpec standard(std::uint32_t p, std::uint32_t f);
  std::uint32_t size() const;
  std::string polynomial_string() const;
};

/// Irreducibility over GF(p): no roots, and gcd(m, x^{p^i} - x) = 1 for all i <= f/2.
bool is_irreducible(const FieldSpec& spec);

/// Element of GF(q) encoded as the base-p integer sum c_i p^i of its
/// coefficient vector. The encoding doubles as the enumeration order.
struct FieldElement {
  std::uint32_t code = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

class GaloisField {
 public:
  /// Throws std::invalid_argument for a reducible/non-monic spec, a
  /// non-prime characteristic, or q > 2048.
  explicit GaloisField(FieldSpec spec);
  static GaloisField make(std::uint32_t p, std::uint32_t f) { return GaloisField(FieldSpec::standard(p, f)); }

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t size() const { return q_; }
  std::uint32_t characteristic() const { return spec_.characteristic; }
  std::uint32_t degree() const { return spec_.degree; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// Residue class of the indeterminate x. For f = 1 this is a prime-field
  /// constant; use `from_int` for integers.
  FieldElement generator_x() const;
  FieldElement from_int(long long v) const;
  FieldElement element(std::uint32_t code) const { return {code}; }
  std::vector<std::uint32_t> coefficients(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws std::domain_error on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, long long e) const;
  /// x -> x^p.
  FieldElement frobenius(FieldElement a, std::uint32_t times = 1) const;
  /// Multiplicative order of a nonzero element.
  std::uint32_t multiplicative_order(FieldElement a) const;
  FieldElement primitive_element() const { return {primitive_}; }

  std::string to_string(FieldElement a) const;

 private:
  FieldElement mul_poly(FieldElement a, FieldElement b) const;

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::uint32_t primitive_ = 0;
  std::vector<std::uint32_t> log_;  // log_[code] for nonzero codes
  std::vector<std::uint32_t> exp_;  // exp_[k] = primitive^k, k < q-1
};

/// d x d matrix over a Galois field, stored row-major.
class MatrixOverField {
 public:
  MatrixOverField() = default;
  MatrixOverField(std::size_t dim, std::vector<FieldElement> entries);
  static MatrixOverField identity(const GaloisField& F, std::size_t dim);
  static MatrixOverField scalar(const GaloisField& F, std::size_t dim, FieldElement s);
  static MatrixOverField diagonal(const GaloisField& F, const std::vector<FieldElement>& diag);

  std::size_t dim() const { return dim_; }
  FieldElement at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  FieldElement& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  MatrixOverField multiply(const GaloisField& F, const MatrixOverField& other) const;
  /// Row vector times matrix.
  std::vector<FieldElement> apply(const GaloisField& F, const std::vector<FieldElement>& v) const;
  /// Cofactor expansion; dimension at most 4.
  FieldElement determinant(const GaloisField& F) const;

  friend bool operator==(const MatrixOverField&, const MatrixOverField&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<FieldElement> entries_;
};

}  // namespace qsrlab
