#include "qsrlab/constructors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qsrlab/errors.hpp"

namespace qsrlab {

namespace {

std::vector<Point> iota_points(std::size_t n, Point start = 0) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), start);
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_natural_alternating(const PermGroup& T) {
  const std::size_t n = T.degree();
  return n >= 5 && T.order() == factorial(static_cast<unsigned>(n)) / 2;
}

}  // namespace

PermGroup make_sym_alt(std::size_t n, bool alternating) {
  if (n < 1 || n > 24) throw std::invalid_argument("make_sym_alt: need 1 <= n <= 24");
  if (n == 1 || (alternating && n == 2)) return PermGroup::trivial(n);
  if (!alternating) {
    return PermGroup(n, {Permutation::from_cycles(n, {iota_points(2)}),
                         Permutation::from_cycles(n, {iota_points(n)})});
  }
  std::vector<Permutation> gens{Permutation::from_cycles(n, {iota_points(3)})};
  if (n > 3) {
    if (n % 2 == 1) gens.push_back(Permutation::from_cycles(n, {iota_points(n)}));
    else gens.push_back(Permutation::from_cycles(n, {iota_points(n - 1, 1)}));
  }
  return PermGroup(n, std::move(gens));
}

ProductAction::ProductAction(std::size_t k, std::size_t l) : k_(k), l_(l) {
  if (k < 3 || l < 2) throw std::invalid_argument("product action: need k >= 3 and l >= 2");
  std::size_t n = 1;
  for (std::size_t i = 0; i < l; ++i) {
    stride_.push_back(n);
    n *= k;
    if (n > 20000) throw BudgetExceeded("product action: k^l exceeds 20000");
  }
  const Permutation id_k(k);
  const Permutation id_l(l);
  std::vector<Permutation> h(l, id_k);
  std::vector<Permutation> gens;
  h[0] = Permutation::from_cycles(k, {iota_points(2)});
  gens.push_back(element(h, id_l));
  h[0] = Permutation::from_cycles(k, {iota_points(k)});
  gens.push_back(element(h, id_l));
  h[0] = id_k;
  gens.push_back(element(h, Permutation::from_cycles(l, {iota_points(2)})));
  if (l > 2) gens.push_back(element(h, Permutation::from_cycles(l, {iota_points(l)})));
  group_ = PermGroup(n, std::move(gens));
}

Point ProductAction::encode(std::span<const Point> coords) const {
  Point x = 0;
  for (std::size_t i = 0; i < l_; ++i) x += static_cast<Point>(coords[i] * stride_[i]);
  return x;
}

std::vector<Point> ProductAction::decode(Point x) const {
  std::vector<Point> c(l_);
  for (std::size_t i = 0; i < l_; ++i) {
    c[i] = static_cast<Point>(x % k_);
    x /= static_cast<Point>(k_);
  }
  return c;
}

Permutation ProductAction::element(const std::vector<Permutation>& h, const Permutation& sigma) const {
  if (h.size() != l_ || sigma.degree() != l_) throw DegreeMismatch("product action: bad component count");
  const std::size_t n = stride_.back() * k_;
  std::vector<Point> img(n);
  std::vector<Point> out(l_);
  for (Point x = 0; x < n; ++x) {
    auto a = decode(x);
    for (std::size_t i = 0; i < l_; ++i) out[sigma(static_cast<Point>(i))] = h[i](a[i]);
    img[x] = encode(out);
  }
  return Permutation(std::move(img));
}

bool ProductAction::in_base_group(const Permutation& g) const {
  const std::size_t n = g.degree();
  for (std::size_t i = 0; i < l_; ++i) {
    // Coordinate i of g(v * stride_i) defines the candidate component.
    std::vector<Point> f(k_);
    for (Point v = 0; v < k_; ++v) f[v] = decode(g(static_cast<Point>(v * stride_[i])))[i];
    for (Point x = 0; x < n; ++x)
      if (decode(g(x))[i] != f[decode(x)[i]]) return false;
  }
  return true;
}

std::vector<Permutation> ProductAction::components(const Permutation& g) const {
  if (!in_base_group(g)) throw std::invalid_argument("product action: element is not in the base group");
  std::vector<Permutation> h;
  for (std::size_t i = 0; i < l_; ++i) {
    std::vector<Point> f(k_);
    for (Point v = 0; v < k_; ++v) f[v] = decode(g(static_cast<Point>(v * stride_[i])))[i];
    h.emplace_back(std::move(f));
  }
  return h;
}

std::span<const std::uint64_t> small_simple_orders() {
  static constexpr std::array<std::uint64_t, 16> orders = {
      60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080, 5616, 6048, 6072, 7800, 7920, 9828};
  return orders;
}

std::uint64_t sd_fixed_coset_count(const PermGroup& T, std::uint32_t k) {
  if (!is_prime(k)) throw std::invalid_argument("sd_fixed_coset_count: k must be prime");
  const BigInt order = T.order();
  auto orders = small_simple_orders();
  if (std::find(orders.begin(), orders.end(), order) == orders.end())
    throw std::invalid_argument("sd_fixed_coset_count: |T| = " + to_string(order) +
                                " is not the order of a small nonabelian simple group");
  std::uint64_t count = 0;
  T.for_each_element(order, [&](const Permutation& s) {
    if (s.pow(k).is_identity()) ++count;
    return true;
  });
  return count;
}

ElementTable::ElementTable(const PermGroup& G, std::uint64_t limit) {
  elements_ = G.elements(limit);
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i], i);
    if (elements_[i].is_identity()) identity_ = i;
  }
}

std::size_t ElementTable::index_of(const Permutation& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw std::out_of_range("element not in table");
  return it->second;
}

ActionInstance make_sd_small(const PermGroup& T, std::size_t k,
                             const std::vector<Permutation>& diagonal_automorphisms) {
  if (k < 2) throw std::invalid_argument("make_sd_small: need k >= 2");
  ElementTable table(T, 1000000);
  const std::size_t t = table.size();
  std::uint64_t n = 1;
  for (std::size_t i = 1; i < k; ++i) {
    n *= t;
    if (n > 1000000) throw BudgetExceeded("make_sd_small: |T|^(k-1) exceeds 10^6");
  }
  // Normalised coset (1, u_1, ..., u_{k-1}) <-> sum idx(u_i) t^(i-1).
  auto decode = [&](std::uint64_t x) {
    std::vector<std::size_t> u(k);
    u[0] = table.identity_index();
    for (std::size_t i = 1; i < k; ++i, x /= t) u[i] = x % t;
    return u;
  };
  auto normalise = [&](const std::vector<Permutation>& tuple) {
    const Permutation first_inv = tuple[0].inverse();
    std::uint64_t x = 0;
    for (std::size_t i = k; i-- > 1;) x = x * t + table.index_of(first_inv * tuple[i]);
    return static_cast<Point>(x);
  };
  auto tabulate = [&](auto&& map_tuple) {
    std::vector<Point> img(n);
    std::vector<Permutation> tuple(k);
    for (std::uint64_t x = 0; x < n; ++x) {
      auto u = decode(x);
      for (std::size_t i = 0; i < k; ++i) tuple[i] = table[u[i]];
      map_tuple(tuple);
      img[x] = normalise(tuple);
    }
    return Permutation(std::move(img));
  };

  std::vector<Permutation> gens;
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& a : T.generators())
      gens.push_back(tabulate([&](std::vector<Permutation>& tup) { tup[j] = tup[j] * a; }));
  gens.push_back(tabulate([&](std::vector<Permutation>& tup) { std::rotate(tup.rbegin(), tup.rbegin() + 1, tup.rend()); }));
  for (const auto& c : diagonal_automorphisms) {
    for (std::size_t i = 0; i < table.size(); ++i)
      if (!T.contains(table[i].conjugate(c)))
        throw std::invalid_argument("make_sd_small: automorphism does not normalise T");
    gens.push_back(tabulate([&](std::vector<Permutation>& tup) {
      for (auto& s : tup) s = s.conjugate(c);
    }));
  }

  ActionInstance a;
  a.name = "SD(|T|=" + to_string(T.order()) + ",k=" + std::to_string(k) + ")";
  a.source = PermGroup(static_cast<std::size_t>(n), std::move(gens));
  a.image = a.source;
  a.expected_degree = BigInt(n);
  return a;
}

ActionInstance make_hs_type(const PermGroup& T, bool include_swap, bool include_outer) {
  if (T.order() > 100000) throw BudgetExceeded("make_hs_type: |T| exceeds 10^5");
  ElementTable table(T, 100000);
  const std::size_t n = table.size();
  auto tabulate = [&](auto&& f) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(table.index_of(f(table[x])));
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gens;
  for (const auto& a : T.generators()) {
    const Permutation a_inv = a.inverse();
    gens.push_back(tabulate([&](const Permutation& x) { return a_inv * x; }));
    gens.push_back(tabulate([&](const Permutation& x) { return x * a; }));
  }
  if (include_swap) gens.push_back(tabulate([](const Permutation& x) { return x.inverse(); }));
  if (include_outer) {
    if (!is_natural_alternating(T))
      throw std::invalid_argument("make_hs_type: outer automorphisms need a natural alternating T");
    const Permutation c = Permutation::from_cycles(T.degree(), {{0, 1}});
    gens.push_back(tabulate([&](const Permutation& x) { return x.conjugate(c); }));
  }
  ActionInstance a;
  std::ostringstream name;
  name << "HS(|T|=" << T.order() << (include_swap ? ",swap" : "") << (include_outer ? ",outer" : "") << ")";
  a.name = name.str();
  a.source = PermGroup(n, std::move(gens));
  a.image = a.source;
  a.expected_degree = BigInt(n);
  return a;
}

}  // namespace qsrlab
