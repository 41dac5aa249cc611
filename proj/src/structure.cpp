#include "qsrlab/structure.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include "qsrlab/actions.hpp"
#include "qsrlab/errors.hpp"

namespace qsrlab {

// ---------------------------------------------------------------- PermSet

PermSet::PermSet(std::size_t degree) : degree_(degree) {
  width_ = degree <= 256 ? 1 : degree <= 65536 ? 2 : 4;
  table_.assign(64, 0);
}

std::size_t PermSet::hash(std::span<const Point> images) const {
  std::uint64_t h = 1469598103934665603ull;
  for (Point p : images) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

bool PermSet::equals(std::size_t i, std::span<const Point> images) const {
  const std::uint8_t* base = data_.data() + i * degree_ * width_;
  switch (width_) {
    case 1:
      for (std::size_t j = 0; j < degree_; ++j)
        if (base[j] != images[j]) return false;
      return true;
    case 2:
      for (std::size_t j = 0; j < degree_; ++j) {
        std::uint16_t v;
        std::memcpy(&v, base + 2 * j, 2);
        if (v != images[j]) return false;
      }
      return true;
    default:
      return std::memcmp(base, images.data(), degree_ * 4) == 0;
  }
}

void PermSet::store(std::span<const Point> images) {
  const std::size_t off = data_.size();
  data_.resize(off + degree_ * width_);
  std::uint8_t* base = data_.data() + off;
  for (std::size_t j = 0; j < degree_; ++j) {
    if (width_ == 1) {
      base[j] = static_cast<std::uint8_t>(images[j]);
    } else if (width_ == 2) {
      const auto v = static_cast<std::uint16_t>(images[j]);
      std::memcpy(base + 2 * j, &v, 2);
    } else {
      std::memcpy(base + 4 * j, &images[j], 4);
    }
  }
}

void PermSet::load(std::size_t i, std::vector<Point>& out) const {
  out.resize(degree_);
  const std::uint8_t* base = data_.data() + i * degree_ * width_;
  for (std::size_t j = 0; j < degree_; ++j) {
    if (width_ == 1) {
      out[j] = base[j];
    } else if (width_ == 2) {
      std::uint16_t v;
      std::memcpy(&v, base + 2 * j, 2);
      out[j] = v;
    } else {
      std::memcpy(&out[j], base + 4 * j, 4);
    }
  }
}

Permutation PermSet::at(std::size_t i) const {
  std::vector<Point> img;
  load(i, img);
  return Permutation::from_images_unchecked(std::move(img));
}

void PermSet::grow() {
  std::vector<std::uint32_t> bigger(table_.size() * 2, 0);
  const std::size_t mask = bigger.size() - 1;
  std::vector<Point> img;
  for (std::size_t i = 0; i < count_; ++i) {
    load(i, img);
    std::size_t slot = hash(img) & mask;
    while (bigger[slot]) slot = (slot + 1) & mask;
    bigger[slot] = static_cast<std::uint32_t>(i + 1);
  }
  table_.swap(bigger);
}

std::optional<std::size_t> PermSet::find(std::span<const Point> images) const {
  if (images.size() != degree_) throw DegreeMismatch("PermSet: degree mismatch");
  const std::size_t mask = table_.size() - 1;
  for (std::size_t slot = hash(images) & mask; table_[slot]; slot = (slot + 1) & mask)
    if (equals(table_[slot] - 1, images)) return table_[slot] - 1;
  return std::nullopt;
}

std::pair<std::size_t, bool> PermSet::insert(std::span<const Point> images) {
  if (images.size() != degree_) throw DegreeMismatch("PermSet: degree mismatch");
  if (2 * (count_ + 1) > table_.size()) grow();
  const std::size_t mask = table_.size() - 1;
  std::size_t slot = hash(images) & mask;
  for (; table_[slot]; slot = (slot + 1) & mask)
    if (equals(table_[slot] - 1, images)) return {table_[slot] - 1, false};
  if (count_ >= 0xFFFFFFFEu) throw BudgetExceeded("PermSet: too many elements");
  store(images);
  table_[slot] = static_cast<std::uint32_t>(++count_);
  return {count_ - 1, true};
}

// ------------------------------------------------------------- ClassOrbit

ClassOrbit::ClassOrbit(const PermGroup& G, const Permutation& x, std::size_t max_size)
    : G_(G), x_(x), set_(G.degree()) {
  if (x.degree() != G.degree()) throw DegreeMismatch("class orbit: degree mismatch");
  const auto& gens = G.generators();
  if (gens.size() > 255) throw std::invalid_argument("class orbit: more than 255 generators");
  set_.insert(x);
  parent_.push_back(0);
  via_.push_back(0);
  std::vector<Point> y, z(G.degree());
  for (std::size_t i = 0; i < set_.size(); ++i) {
    set_.load(i, y);
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const Permutation& g = gens[s];
      for (std::size_t a = 0; a < y.size(); ++a) z[g(static_cast<Point>(a))] = g(y[a]);
      if (set_.insert(z).second) {
        if (set_.size() > max_size) throw BudgetExceeded("class orbit exceeds " + std::to_string(max_size));
        parent_.push_back(static_cast<std::uint32_t>(i));
        via_.push_back(static_cast<std::uint8_t>(s));
      }
    }
  }
}

Permutation ClassOrbit::transporter(std::size_t i) const {
  std::vector<std::uint8_t> path;
  while (i != 0) {
    path.push_back(via_[i]);
    i = parent_[i];
  }
  Permutation t(G_.degree());
  for (auto it = path.rbegin(); it != path.rend(); ++it) t = t * G_.generators()[*it];
  return t;
}

PermGroup ClassOrbit::centralizer() const {
  const BigInt target = centralizer_order();
  const std::size_t n = G_.degree();
  std::vector<Permutation> gens;
  PermGroup C(n, {});
  if (target == 1) return C;
  // Schreier generators t_i s t_j^-1 at random until the order is reached.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick_i(0, size() - 1), pick_s(0, G_.generators().size() - 1);
  for (std::size_t attempt = 0; C.order() < target; ++attempt) {
    if (attempt > 200000) throw InternalConsistencyError("centralizer: Schreier generators did not reach the order");
    const std::size_t i = attempt == 0 ? 0 : pick_i(rng);
    const Permutation& s = G_.generators()[pick_s(rng)];
    const Permutation ti = transporter(i);
    const Permutation y = element(i).conjugate(s);
    const auto j = find(y);
    if (!j) throw InternalConsistencyError("centralizer: class orbit not closed");
    Permutation c = ti * s * transporter(*j).inverse();
    if (c.is_identity() || C.contains(c)) continue;
    gens.push_back(std::move(c));
    C = PermGroup(n, gens);
  }
  if (C.order() != target) throw InternalConsistencyError("centralizer: order overshoot");
  return C;
}

std::vector<Permutation> ClassOrbit::members_in(const PermGroup& H) const {
  std::vector<Permutation> out;
  if (H.order() < size()) {
    const std::uint64_t m = x_.order();
    H.for_each_element(H.order(), [&](const Permutation& h) {
      if (h.order() == m && set_.contains(h)) out.push_back(h);
      return true;
    });
  } else {
    for (std::size_t i = 0; i < size(); ++i) {
      Permutation y = element(i);
      if (H.contains(y)) out.push_back(std::move(y));
    }
  }
  return out;
}

BigInt ClassOrbit::count_in(const PermGroup& H) const { return members_in(H).size(); }

// ---------------------------------------------------------------- primes

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned> primes_up_to(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

std::vector<unsigned> prime_divisors(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("prime_divisors: need a positive integer");
  BigInt m = n;
  std::vector<unsigned> out;
  for (unsigned p = 2; m > 1; ++p) {
    if (BigInt(p) * p > m) {
      if (m > std::numeric_limits<unsigned>::max()) throw BudgetExceeded("prime_divisors: large prime factor");
      out.push_back(static_cast<unsigned>(m));
      break;
    }
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  return out;
}

// ---------------------------------------------------------------- classes

std::string to_string(ClassMethod m) {
  switch (m) {
    case ClassMethod::SymAltClosedForm: return "sym-alt";
    case ClassMethod::Enumeration: return "enumeration";
    case ClassMethod::RandomPowering: return "random-powering";
  }
  return "?";
}

std::optional<bool> natural_sym_alt(const PermGroup& G) {
  const std::size_t n = G.degree();
  if (n < 2 || n > 30) return std::nullopt;
  const BigInt full = factorial(static_cast<unsigned>(n));
  const BigInt order = G.order();
  if (order == full) return false;
  if (n >= 3 && order * 2 == full) return true;
  return std::nullopt;
}

namespace {

void partitions_of(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_of(n - part, part, cur, out);
    cur.pop_back();
  }
}

ClassList sym_alt_classes(std::size_t n, bool alternating, std::optional<unsigned> prime) {
  std::vector<std::vector<std::size_t>> shapes;
  if (prime) {
    for (std::size_t j = 1; j * *prime <= n; ++j) {
      std::vector<std::size_t> shape(j, *prime);
      shape.resize(j + n - j * *prime, 1);
      shapes.push_back(shape);
    }
  } else {
    std::vector<std::size_t> cur;
    partitions_of(n, n, cur, shapes);
  }
  const BigInt full = factorial(static_cast<unsigned>(n));
  ClassList out;
  out.method = ClassMethod::SymAltClosedForm;
  for (const auto& shape : shapes) {
    std::vector<std::vector<Point>> cycles;
    Point next = 0;
    std::map<std::size_t, std::size_t> mult;
    std::uint64_t order = 1;
    for (std::size_t len : shape) {
      ++mult[len];
      order = std::lcm(order, static_cast<std::uint64_t>(len));
      std::vector<Point> c(len);
      std::iota(c.begin(), c.end(), next);
      next += static_cast<Point>(len);
      if (len > 1) cycles.push_back(std::move(c));
    }
    BigInt z = 1;
    bool distinct_odd = true;
    for (const auto& [len, m] : mult) {
      for (std::size_t i = 0; i < m; ++i) z *= len;
      z *= factorial(static_cast<unsigned>(m));
      if (m > 1 || len % 2 == 0) distinct_odd = false;
    }
    const Permutation rep = Permutation::from_cycles(n, cycles);
    if (!alternating) {
      out.classes.push_back({rep, full / z, z, order});
      continue;
    }
    if (!rep.is_even()) continue;
    if (distinct_odd && n > 1) {
      out.classes.push_back({rep, full / (2 * z), z, order});
      out.classes.push_back({rep.conjugate(Permutation::from_cycles(n, {{0, 1}})), full / (2 * z), z, order});
    } else {
      out.classes.push_back({rep, full / z, z / 2, order});
    }
  }
  return out;
}

void sort_classes(std::vector<ClassDatum>& classes) {
  std::sort(classes.begin(), classes.end(), [](const ClassDatum& a, const ClassDatum& b) {
    if (a.element_order != b.element_order) return a.element_order < b.element_order;
    if (a.centralizer_order != b.centralizer_order) return a.centralizer_order > b.centralizer_order;
    return a.representative < b.representative;
  });
}

ClassDatum datum_of(const ClassOrbit& orbit) {
  return {orbit.representative(), orbit.size(), orbit.centralizer_order(), orbit.representative().order()};
}

}  // namespace

ClassList conjugacy_classes(const PermGroup& G, std::optional<unsigned> prime, const ClassOptions& options) {
  if (prime && !is_prime(*prime)) throw std::invalid_argument("conjugacy_classes: filter must be a prime");
  if (auto alt = natural_sym_alt(G)) {
    ClassList out = sym_alt_classes(G.degree(), *alt, prime);
    sort_classes(out.classes);
    return out;
  }
  const BigInt order = G.order();
  ClassList out;
  if (prime && order % *prime != 0) return out;

  if (order <= options.enumeration_limit) {
    PermSet seen(G.degree());
    std::size_t direct = 0;
    G.for_each_element(options.enumeration_limit, [&](const Permutation& g) {
      if (prime && g.order() != *prime) return true;
      ++direct;
      if (seen.contains(g)) return true;
      ClassOrbit orbit(G, g);
      for (std::size_t i = 0; i < orbit.size(); ++i) seen.insert(orbit.elements().at(i));
      out.classes.push_back(datum_of(orbit));
      return true;
    });
    BigInt total = 0;
    for (const auto& c : out.classes) total += c.class_size;
    if (total != (prime ? BigInt(direct) : order))
      throw InternalConsistencyError("conjugacy_classes: class sizes do not add up");
    sort_classes(out.classes);
    return out;
  }

  if (!prime) throw BudgetExceeded("conjugacy_classes: |G| = " + to_string(order) + " needs an order filter");
  out.method = ClassMethod::RandomPowering;
  out.certified = false;
  std::vector<std::unique_ptr<ClassOrbit>> orbits;
  std::mt19937_64 rng(options.seed);
  for (std::size_t stale = 0; stale < options.stale_samples;) {
    const Permutation g = G.random_element(rng);
    const std::uint64_t o = g.order();
    ++stale;
    if (o % *prime != 0) continue;
    const Permutation y = g.pow(static_cast<long long>(o / *prime));
    bool known = false;
    for (const auto& orb : orbits) known = known || orb->contains(y);
    if (known) continue;
    orbits.push_back(std::make_unique<ClassOrbit>(G, y));
    out.classes.push_back(datum_of(*orbits.back()));
    stale = 0;
  }
  sort_classes(out.classes);
  return out;
}

std::vector<std::string> class_labels(const std::vector<ClassDatum>& classes) {
  std::vector<std::string> out;
  std::map<std::uint64_t, std::size_t> seen;
  for (const auto& c : classes) {
    const std::size_t i = seen[c.element_order]++;
    std::string suffix;
    for (std::size_t k = i + 1; k > 0; k = (k - 1) / 26) suffix.insert(suffix.begin(), static_cast<char>('a' + (k - 1) % 26));
    out.push_back(std::to_string(c.element_order) + suffix);
  }
  return out;
}

// --------------------------------------------------- centralizers and fusion

SubgroupHandle centralizer(const PermGroup& G, const Permutation& g) {
  if (!G.contains(g)) throw std::invalid_argument("centralizer: element outside the group");
  return ClassOrbit(G, g).centralizer();
}

std::size_t power_fusion_count(const ClassOrbit& orbit) {
  const Permutation& x = orbit.representative();
  const std::uint64_t m = x.order();
  std::size_t r = 0;
  for (std::uint64_t k = 1; k < std::max<std::uint64_t>(m, 2); ++k)
    if (std::gcd(k, m) == 1 && orbit.contains(x.pow(static_cast<long long>(k)))) ++r;
  return r;
}

SubgroupHandle normalizer_of_cyclic(const PermGroup& G, const Permutation& x) {
  if (!G.contains(x)) throw std::invalid_argument("normalizer: element outside the group");
  return normalizer_of_cyclic(ClassOrbit(G, x));
}

SubgroupHandle normalizer_of_cyclic(const ClassOrbit& orbit) {
  const Permutation& x = orbit.representative();
  std::vector<Permutation> gens = orbit.centralizer().generators();
  const std::uint64_t m = x.order();
  for (std::uint64_t k = 2; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    if (auto i = orbit.find(x.pow(static_cast<long long>(k)))) gens.push_back(orbit.transporter(*i));
  }
  return PermGroup(x.degree(), std::move(gens));
}

bool fusion_test(const PermGroup& G, const SubgroupHandle& H, const Permutation& x) {
  if (!H.contains(x)) throw std::invalid_argument("fusion_test: x is not in H");
  const ClassOrbit in_h(H, x);
  return ClassOrbit(G, x).count_in(H) == in_h.size();
}

// ------------------------------------------------------------ subnormality

SubgroupHandle normal_closure(const SubgroupHandle& U, const PermGroup& V) {
  std::vector<Permutation> gens;
  for (const auto& u : U.generators())
    if (!u.is_identity()) gens.push_back(u);
  PermGroup N(U.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (const auto& v : V.generators()) {
      Permutation c = gens[i].conjugate(v);
      if (N.contains(c)) continue;
      gens.push_back(std::move(c));
      N = PermGroup(U.degree(), gens);
    }
  return N;
}

bool is_subnormal(const SubgroupHandle& U, const SubgroupHandle& V) {
  if (!U.is_subgroup_of(V)) throw std::invalid_argument("is_subnormal: U is not contained in V");
  const BigInt target = U.order();
  PermGroup cur = V;
  while (cur.order() != target) {
    PermGroup next = normal_closure(U, cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  return true;
}

SubgroupHandle subnormaliser(const PermGroup& G, const Permutation& x) {
  if (!G.contains(x)) throw std::invalid_argument("subnormaliser: element outside the group");
  if (!is_prime(x.order())) throw std::invalid_argument("subnormaliser: x must have prime order");
  if (G.order() > 1000000) throw BudgetExceeded("subnormaliser: |G| exceeds 10^6");
  const std::size_t n = G.degree();
  const PermGroup X(n, {x});
  const PermGroup C = centralizer(G, x);
  std::vector<Permutation> gens = C.generators();
  PermGroup sub(n, gens);

  // Whether <x> is subnormal in <x,g> is unchanged by g -> xg, g -> gx and
  // by conjugating g with C_G(x), so one g per orbit of these maps is tested.
  PermSet visited(n);
  G.for_each_element(G.order(), [&](const Permutation& g) {
    if (visited.contains(g)) return true;
    const std::size_t start = visited.size();
    visited.insert(g);
    for (std::size_t i = start; i < visited.size(); ++i) {
      const Permutation h = visited.at(i);
      visited.insert(x * h);
      visited.insert(h * x);
      for (const auto& c : C.generators()) visited.insert(h.conjugate(c));
    }
    if (sub.contains(g)) return true;
    if (is_subnormal(X, PermGroup(n, {x, g}))) {
      gens.push_back(g);
      sub = PermGroup(n, gens);
    }
    return true;
  });
  return sub;
}

bool is_strongly_p_embedded(const PermGroup& G, const SubgroupHandle& H, unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("is_strongly_p_embedded: p must be prime");
  if (H.order() % p != 0) return false;
  const CosetTable cosets(G, H, 10000);
  std::vector<Permutation> p_elements;
  H.for_each_element(10000000, [&](const Permutation& h) {
    if (h.order() == p) p_elements.push_back(h);
    return true;
  });
  // H meets H^g in a group of order divisible by p iff it contains an
  // element of order p there; g h g^-1 in H means h in H^g.
  for (std::size_t i = 1; i < cosets.size(); ++i) {
    const Permutation ginv = cosets.representative(i).inverse();
    for (const auto& h : p_elements)
      if (H.contains(h.conjugate(ginv))) return false;
  }
  return true;
}

}  // namespace qsrlab
