#include "qsrlab/field.hpp"

#include <sstream>
#include <stdexcept>

namespace qsrlab {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, trimmed

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime: a^(p-2).
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly full_modulus(const FieldSpec& s) {
  Poly m(s.modulus.begin(), s.modulus.end());
  m.push_back(1);
  return m;
}

}  // namespace

std::uint32_t FieldSpec::size() const {
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < degree; ++i) q *= characteristic;
  return q;
}

std::string FieldSpec::polynomial_string() const {
  std::ostringstream os;
  os << "x^" << degree;
  for (std::size_t i = modulus.size(); i-- > 0;) {
    if (!modulus[i]) continue;
    os << " + ";
    if (modulus[i] != 1 || i == 0) os << modulus[i];
    if (i >= 1) os << "x";
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

bool is_irreducible(const FieldSpec& spec) {
  const std::uint32_t p = spec.characteristic;
  const std::uint32_t f = spec.degree;
  if (spec.modulus.size() != f) return false;
  if (f == 1) return true;
  Poly m = full_modulus(spec);
  // No roots in GF(p).
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = m.size(); i-- > 0;) v = (v * x + m[i]) % p;
    if (v == 0) return false;
  }
  // gcd(m, x^{p^i} - x) = 1 for i <= f/2.
  Poly xp{0, 1};
  for (std::uint32_t i = 1; i <= f / 2; ++i) {
    // xp <- xp^p mod m
    Poly base = xp, acc{1};
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
    }
    xp = acc;
    Poly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    Poly g = poly_gcd(m, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

FieldSpec FieldSpec::standard(std::uint32_t p, std::uint32_t f) {
  if (!is_prime(p) || f == 0) throw std::invalid_argument("field: need prime p and f >= 1");
  FieldSpec s{p, f, std::vector<std::uint32_t>(f, 0)};
  if (s.size() > 2048) throw std::invalid_argument("field: q > 2048 not supported");
  // Code sum c_i p^i ascending is lexicographic in (c_{f-1}, ..., c_0).
  for (std::uint32_t code = 0; code < s.size(); ++code) {
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < f; ++i) {
      s.modulus[i] = c % p;
      c /= p;
    }
    if (is_irreducible(s)) return s;
  }
  throw std::logic_error("no irreducible polynomial found");
}

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.characteristic)) throw std::invalid_argument("field: characteristic not prime");
  if (spec_.degree == 0 || spec_.modulus.size() != spec_.degree)
    throw std::invalid_argument("field: modulus must have f coefficients");
  for (auto c : spec_.modulus)
    if (c >= spec_.characteristic) throw std::invalid_argument("field: coefficient out of range");
  q_ = spec_.size();
  if (q_ > 2048) throw std::invalid_argument("field: q > 2048 not supported");
  if (!is_irreducible(spec_)) throw std::invalid_argument("field: polynomial " +
                                                         spec_.polynomial_string() + " is reducible");
  // Smallest-code element of order q-1.
  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    std::uint32_t cur = 1;
    std::uint32_t k = 0;
    bool ok = true;
    do {
      if (k >= q_ - 1) {
        ok = false;
        break;
      }
      exp_[k] = cur;
      ++k;
      cur = mul_poly({cur}, {cand}).code;
    } while (cur != 1);
    if (ok && k == q_ - 1) {
      primitive_ = cand;
      break;
    }
  }
  if (q_ == 2) {
    primitive_ = 1;
    exp_[0] = 1;
  }
  for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
}

FieldElement GaloisField::generator_x() const {
  if (spec_.degree > 1) return {spec_.characteristic};
  return from_int(spec_.characteristic - spec_.modulus[0]);
}

FieldElement GaloisField::from_int(long long v) const {
  const long long p = spec_.characteristic;
  return {static_cast<std::uint32_t>(((v % p) + p) % p)};
}

std::vector<std::uint32_t> GaloisField::coefficients(FieldElement a) const {
  std::vector<std::uint32_t> c(spec_.degree);
  for (auto& d : c) {
    d = a.code % spec_.characteristic;
    a.code /= spec_.characteristic;
  }
  return c;
}

FieldElement GaloisField::add(FieldElement a, FieldElement b) const {
  const std::uint32_t p = spec_.characteristic;
  std::uint32_t r = 0, mult = 1;
  for (std::uint32_t i = 0; i < spec_.degree; ++i) {
    r += ((a.code % p + b.code % p) % p) * mult;
    a.code /= p;
    b.code /= p;
    mult *= p;
  }
  return {r};
}

FieldElement GaloisField::neg(FieldElement a) const {
  const std::uint32_t p = spec_.characteristic;
  std::uint32_t r = 0, mult = 1;
  for (std::uint32_t i = 0; i < spec_.degree; ++i) {
    r += ((p - a.code % p) % p) * mult;
    a.code /= p;
    mult *= p;
  }
  return {r};
}

FieldElement GaloisField::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement GaloisField::mul_poly(FieldElement a, FieldElement b) const {
  const std::uint32_t p = spec_.characteristic;
  Poly pa = coefficients(a), pb = coefficients(b);
  trim(pa);
  trim(pb);
  Poly r = poly_mulmod(pa, pb, full_modulus(spec_), p);
  std::uint32_t code = 0;
  for (std::size_t i = r.size(); i-- > 0;) code = code * p + r[i];
  return {code};
}

FieldElement GaloisField::mul(FieldElement a, FieldElement b) const {
  if (a.code == 0 || b.code == 0) return {0};
  return {exp_[(log_[a.code] + log_[b.code]) % (q_ - 1)]};
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("field: inverse of zero");
  return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

FieldElement GaloisField::pow(FieldElement a, long long e) const {
  if (a.code == 0) {
    if (e < 0) throw std::domain_error("field: negative power of zero");
    return e == 0 ? one() : zero();
  }
  const long long n = q_ - 1;
  long long k = (static_cast<long long>(log_[a.code]) * (((e % n) + n) % n)) % n;
  return {exp_[static_cast<std::size_t>(k)]};
}

FieldElement GaloisField::frobenius(FieldElement a, std::uint32_t times) const {
  for (std::uint32_t i = 0; i < times; ++i) a = pow(a, spec_.characteristic);
  return a;
}

std::uint32_t GaloisField::multiplicative_order(FieldElement a) const {
  if (a.code == 0) throw std::domain_error("field: zero has no multiplicative order");
  std::uint32_t k = 1;
  for (FieldElement x = a; x != one(); x = mul(x, a)) ++k;
  return k;
}

std::string GaloisField::to_string(FieldElement a) const {
  if (spec_.degree == 1) return std::to_string(a.code);
  auto c = coefficients(a);
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (!c[i]) continue;
    if (any) os << '+';
    any = true;
    if (c[i] != 1 || i == 0) os << c[i];
    if (i >= 1) os << 'x';
    if (i > 1) os << '^' << i;
  }
  if (!any) os << '0';
  return os.str();
}

MatrixOverField::MatrixOverField(std::size_t dim, std::vector<FieldElement> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) throw std::invalid_argument("matrix: wrong entry count");
}

MatrixOverField MatrixOverField::identity(const GaloisField& F, std::size_t dim) {
  return scalar(F, dim, F.one());
}

MatrixOverField MatrixOverField::scalar(const GaloisField& F, std::size_t dim, FieldElement s) {
  std::vector<FieldElement> e(dim * dim, F.zero());
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = s;
  return MatrixOverField(dim, std::move(e));
}

MatrixOverField MatrixOverField::diagonal(const GaloisField& F, const std::vector<FieldElement>& diag) {
  MatrixOverField m = scalar(F, diag.size(), F.zero());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
  return m;
}

MatrixOverField MatrixOverField::multiply(const GaloisField& F, const MatrixOverField& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix: dimension mismatch");
  MatrixOverField r = scalar(F, dim_, F.zero());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      FieldElement s = F.zero();
      for (std::size_t k = 0; k < dim_; ++k) s = F.add(s, F.mul(at(i, k), o.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

std::vector<FieldElement> MatrixOverField::apply(const GaloisField& F,
                                                 const std::vector<FieldElement>& v) const {
  std::vector<FieldElement> r(dim_, F.zero());
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t i = 0; i < dim_; ++i) r[j] = F.add(r[j], F.mul(v[i], at(i, j)));
  return r;
}

FieldElement MatrixOverField::determinant(const GaloisField& F) const {
  if (dim_ > 4) throw std::invalid_argument("determinant: dimension above 4");
  if (dim_ == 0) return F.one();
  if (dim_ == 1) return at(0, 0);
  FieldElement det = F.zero();
  for (std::size_t c = 0; c < dim_; ++c) {
    std::vector<FieldElement> minor;
    for (std::size_t i = 1; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (j != c) minor.push_back(at(i, j));
    FieldElement term = F.mul(at(0, c), MatrixOverField(dim_ - 1, minor).determinant(F));
    det = (c % 2 == 0) ? F.add(det, term) : F.sub(det, term);
  }
  return det;
}

}  // namespace qsrlab
