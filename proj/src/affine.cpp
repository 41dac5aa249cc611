#include "qsrlab/affine.hpp"

#include <sstream>
#include <stdexcept>

#include "qsrlab/errors.hpp"

namespace qsrlab {

std::uint32_t vector_index(const GaloisField& F, const std::vector<FieldElement>& v) {
  std::uint32_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * F.size() + v[i].code;
  return idx;
}

std::vector<FieldElement> vector_at(const GaloisField& F, std::size_t d, std::uint32_t index) {
  std::vector<FieldElement> v(d);
  for (auto& c : v) {
    c = F.element(index % F.size());
    index /= F.size();
  }
  return v;
}

namespace {

std::uint32_t domain_size(std::size_t d, const GaloisField& F) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < d; ++i) {
    n *= F.size();
    if (n > 1000000) throw BudgetExceeded("affine action: more than 10^6 points");
  }
  return static_cast<std::uint32_t>(n);
}

template <typename Map>
Permutation tabulate(std::uint32_t n, Map&& f) {
  std::vector<Point> img(n);
  for (std::uint32_t x = 0; x < n; ++x) img[x] = f(x);
  return Permutation(std::move(img));
}

std::string vector_label(const GaloisField& F, const std::vector<FieldElement>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << F.to_string(v[i]);
  os << ')';
  return os.str();
}

}  // namespace

ActionInstance affine_perm_action(std::size_t d, const GaloisField& F,
                                  const std::vector<MatrixOverField>& matrices,
                                  std::uint32_t field_auto_power, bool include_translations) {
  const std::uint32_t n = domain_size(d, F);
  std::vector<Permutation> linear;
  for (const auto& m : matrices) {
    if (m.dim() != d) throw std::invalid_argument("affine action: matrix dimension mismatch");
    if (d <= 4 && m.determinant(F) == F.zero()) throw std::invalid_argument("affine action: singular matrix");
    Permutation g = tabulate(n, [&](std::uint32_t x) { return vector_index(F, m.apply(F, vector_at(F, d, x))); });
    linear.push_back(std::move(g));
  }
  if (field_auto_power % F.degree() != 0) {
    linear.push_back(tabulate(n, [&](std::uint32_t x) {
      auto v = vector_at(F, d, x);
      for (auto& c : v) c = F.frobenius(c, field_auto_power % F.degree());
      return vector_index(F, v);
    }));
  }
  std::vector<Permutation> gens = linear;
  if (include_translations) {
    const std::uint32_t p = F.characteristic();
    for (std::size_t i = 0; i < d; ++i) {
      std::uint32_t basis = 1;
      for (std::uint32_t j = 0; j < F.degree(); ++j, basis *= p) {
        std::vector<FieldElement> b(d, F.zero());
        b[i] = F.element(basis);
        gens.push_back(tabulate(n, [&](std::uint32_t x) {
          auto v = vector_at(F, d, x);
          for (std::size_t k = 0; k < d; ++k) v[k] = F.add(v[k], b[k]);
          return vector_index(F, v);
        }));
      }
    }
  }
  ActionInstance a;
  std::ostringstream name;
  name << (include_translations ? "affine" : "linear") << "(d=" << d << ",q=" << F.size() << ")";
  a.name = name.str();
  a.source = PermGroup(n, gens);
  a.image = a.source;
  a.point_stabilizer = linear;
  a.expected_degree = n;
  a.label = [F, d](Point x) { return vector_label(F, vector_at(F, d, x)); };
  return a;
}

ActionInstance projective_line_action(const GaloisField& F, ProjectiveKind kind) {
  const std::uint32_t q = F.size();
  const std::uint32_t n = q + 1;
  // Row vector (x, y) times [[a, b], [c, d]] -> (xa + yc, xb + yd).
  auto mobius = [&](FieldElement a, FieldElement b, FieldElement c, FieldElement dd) {
    return tabulate(n, [&](std::uint32_t pt) {
      FieldElement x = pt == q ? F.one() : F.element(pt);
      FieldElement y = pt == q ? F.zero() : F.one();
      FieldElement nx = F.add(F.mul(x, a), F.mul(y, c));
      FieldElement ny = F.add(F.mul(x, b), F.mul(y, dd));
      if (ny == F.zero()) return q;
      return F.mul(nx, F.inv(ny)).code;
    });
  };
  std::vector<Permutation> gens;
  const std::uint32_t p = F.characteristic();
  std::uint32_t basis = 1;
  for (std::uint32_t j = 0; j < F.degree(); ++j, basis *= p)
    gens.push_back(mobius(F.one(), F.element(basis), F.zero(), F.one()));  // x -> x + basis
  gens.push_back(mobius(F.zero(), F.one(), F.neg(F.one()), F.zero()));     // x -> -1/x
  FieldElement w = F.primitive_element();
  gens.push_back(mobius(w, F.zero(), F.zero(), F.inv(w)));  // x -> w^2 x
  if (kind == ProjectiveKind::PGL || kind == ProjectiveKind::PGammaL)
    gens.push_back(mobius(w, F.zero(), F.zero(), F.one()));  // x -> w x
  if ((kind == ProjectiveKind::PSigmaL || kind == ProjectiveKind::PGammaL) && F.degree() > 1)
    gens.push_back(tabulate(n, [&](std::uint32_t pt) { return pt == q ? q : F.frobenius(F.element(pt)).code; }));

  ActionInstance a;
  const char* names[] = {"PSL", "PGL", "PSigmaL", "PGammaL"};
  a.name = std::string(names[static_cast<int>(kind)]) + "(2," + std::to_string(q) + ")";
  a.source = PermGroup(n, gens);
  a.image = a.source;
  a.expected_degree = n;
  a.label = [F, q](Point x) { return x == q ? std::string("inf") : F.to_string(F.element(x)); };
  return a;
}

ActionInstance natural_action(const PermGroup& g, std::string name) {
  ActionInstance a;
  a.name = std::move(name);
  a.source = g;
  a.image = g;
  a.expected_degree = g.degree();
  return a;
}

}  // namespace qsrlab
