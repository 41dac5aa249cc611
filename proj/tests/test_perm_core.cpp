#include <random>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "qsrlab/errors.hpp"
#include "qsrlab/perm_group.hpp"

using namespace qsrlab;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  for (Point i = 0; i < n; ++i) img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

PermGroup sym(std::size_t n) {
  if (n < 2) return PermGroup::trivial(n);
  std::vector<Point> cyc(n);
  for (Point i = 0; i < n; ++i) cyc[i] = i;
  return PermGroup(n, {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {cyc})});
}

PermGroup alt(std::size_t n) {
  std::vector<Permutation> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(Permutation::from_cycles(n, {{0, 1, i}}));
  return PermGroup(n, gens);
}

}  // namespace

TEST_CASE("compose applies left operand first") {
  Permutation id(3);
  Permutation t01 = Permutation::from_cycles(3, {{0, 1}});
  Permutation t12 = Permutation::from_cycles(3, {{1, 2}});
  CHECK(id * t01 == t01);
  // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
  Permutation p = t01 * t12;
  CHECK(std::vector<Point>(p.images().begin(), p.images().end()) == std::vector<Point>{2, 0, 1});
  std::mt19937_64 rng(3);
  auto g = random_perm(9, rng);
  CHECK((g * g.inverse()).is_identity());
  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), DegreeMismatch);
}

TEST_CASE("permutation construction rejects non-bijections") {
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 3, 1}), std::invalid_argument);
}

TEST_CASE("cycle types") {
  CHECK(cycle_type(Permutation(5)).to_string() == "1^5");
  auto g = Permutation::from_cycles(11, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  CHECK(cycle_type(g).to_string() == "1^1 5^2");
  auto h = Permutation::from_cycles(7, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(cycle_type(h).to_string() == "1^1 2^3");
  CHECK(cycle_type(h).degree() == 7);
  CHECK(Permutation::from_cycles(7, {{0, 1, 2, 3}, {4, 5}}).order() == 4);
}

TEST_CASE("cycle type is invariant under inversion and conjugation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 30;
    auto g = random_perm(n, rng);
    auto h = random_perm(n, rng);
    CHECK(cycle_type(g.inverse()) == cycle_type(g));
    CHECK(cycle_type(g.conjugate(h)) == cycle_type(g));
    CHECK(g.conjugate(h) == h.inverse() * g * h);
    long long e = static_cast<long long>(rng() % 50) - 25;
    Permutation naive(n);
    Permutation step = e >= 0 ? g : g.inverse();
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) naive = naive * step;
    CHECK(g.pow(e) == naive);
  }
}

TEST_CASE("chain orders of symmetric and alternating groups") {
  for (std::size_t n = 3; n <= 12; ++n) {
    CHECK(sym(n).order() == factorial(static_cast<unsigned>(n)));
    CHECK(alt(n).order() == factorial(static_cast<unsigned>(n)) / 2);
  }
  CHECK(sym(5).order() == 120);
  CHECK(alt(7).order() == 2520);
  CHECK(PermGroup::trivial(4).order() == 1);
  CHECK(PermGroup(4, {}).elements(10).size() == 1);
}

TEST_CASE("chain invariants: generators sift to identity, order = product of orbits") {
  auto g = sym(8);
  const auto& c = g.chain();
  BigInt prod = 1;
  for (const auto& l : c.levels()) prod *= l.orbit.size();
  CHECK(prod == g.order());
  for (const auto& gen : g.generators()) CHECK(c.contains(gen));
  CHECK(factorial(8) % g.order() == 0);
}

TEST_CASE("membership") {
  auto a5 = alt(5);
  for (const auto& gen : a5.generators()) CHECK(a5.contains(gen));
  CHECK_FALSE(a5.contains(Permutation::from_cycles(5, {{0, 1}})));
  CHECK(a5.contains(Permutation::from_cycles(5, {{0, 1, 2}})));
  CHECK_THROWS_AS(a5.contains(Permutation(6)), DegreeMismatch);
}

TEST_CASE("membership agrees with a linear scan of the element list") {
  std::mt19937_64 rng(5);
  std::vector<PermGroup> groups = {alt(6), sym(6),
                                   PermGroup(7, {Permutation::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}}),
                                                 Permutation::from_cycles(7, {{1, 2, 4}, {3, 6, 5}})})};
  for (const auto& g : groups) {
    auto elems = g.elements(10000);
    std::unordered_set<Permutation, PermutationHash> all(elems.begin(), elems.end());
    CHECK(all.size() == elems.size());
    CHECK(BigInt(elems.size()) == g.order());
    for (int t = 0; t < 300; ++t) {
      auto x = random_perm(g.degree(), rng);
      CHECK(g.contains(x) == (all.count(x) == 1));
    }
  }
}

TEST_CASE("enumeration limit is enforced") {
  CHECK_THROWS_AS(sym(8).elements(1000), OrderExceedsLimit);
}

TEST_CASE("random elements are members and cover the group") {
  auto g = sym(4);
  std::mt19937_64 rng(1);
  std::set<Permutation> seen;
  for (int i = 0; i < 2000; ++i) {
    auto x = g.random_element(rng);
    CHECK(g.contains(x));
    seen.insert(x);
  }
  CHECK(seen.size() == 24);
}

TEST_CASE("randomised chain matches the deterministic one") {
  auto g = sym(9);
  auto r = PermGroup::with_known_order(9, g.generators(), factorial(9), 99);
  CHECK(r.order() == factorial(9));
  CHECK(r.contains(Permutation::from_cycles(9, {{0, 8}})));
  auto stab = g.point_stabilizer(3);
  CHECK(stab.order() == factorial(8));
  for (const auto& s : stab.generators()) CHECK(s(3) == 3);
}
