#include <filesystem>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "qsrlab/affine.hpp"
#include "qsrlab/constructors.hpp"
#include "qsrlab/dataset.hpp"
#include "qsrlab/errors.hpp"
#include "qsrlab/structure.hpp"

using namespace qsrlab;

namespace {

const std::filesystem::path kData = QSRLAB_DATA_DIR;

std::vector<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::unordered_set<Permutation, PermutationHash> seen{Permutation(degree)};
  std::vector<Permutation> queue{Permutation(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      Permutation h = queue[i] * g;
      if (seen.insert(h).second) queue.push_back(h);
    }
  return queue;
}

// Classes by conjugating with every element: sizes sorted.
std::multiset<std::size_t> oracle_class_sizes(const std::vector<Permutation>& elements) {
  std::unordered_set<Permutation, PermutationHash> done;
  std::multiset<std::size_t> sizes;
  for (const auto& x : elements) {
    if (done.count(x)) continue;
    std::unordered_set<Permutation, PermutationHash> cls;
    for (const auto& g : elements) cls.insert(x.conjugate(g));
    done.insert(cls.begin(), cls.end());
    sizes.insert(cls.size());
  }
  return sizes;
}

std::size_t oracle_centralizer(const std::vector<Permutation>& elements, const Permutation& x) {
  std::size_t c = 0;
  for (const auto& g : elements) c += (x * g == g * x);
  return c;
}

std::size_t oracle_normalizer_cyclic(const std::vector<Permutation>& elements, const Permutation& x) {
  const auto K = closure({x}, x.degree());
  std::unordered_set<Permutation, PermutationHash> ks(K.begin(), K.end());
  std::size_t c = 0;
  for (const auto& g : elements) c += ks.count(x.conjugate(g));
  return c;
}

}  // namespace

TEST_CASE("PermSet stores and finds permutations of every width") {
  for (std::size_t n : {5u, 300u, 70000u}) {
    PermSet s(n);
    std::vector<Permutation> perms;
    Permutation c = Permutation::from_cycles(n, {{0, 1, 2}});
    Permutation t = Permutation::from_cycles(n, {{static_cast<Point>(n - 1), 0}});
    Permutation g(n);
    for (int i = 0; i < 200; ++i) {
      g = g * (i % 3 ? c : t);
      perms.push_back(g);
      s.insert(g);
    }
    std::unordered_set<Permutation, PermutationHash> distinct(perms.begin(), perms.end());
    CHECK(s.size() == distinct.size());
    for (const auto& p : perms) {
      auto i = s.find(p);
      REQUIRE(i);
      CHECK(s.at(*i) == p);
    }
    CHECK_FALSE(s.contains(Permutation::from_cycles(n, {{1, 2}})));
  }
}

TEST_CASE("class lists of small groups") {
  CHECK(conjugacy_classes(make_sym_alt(5, false)).classes.size() == 7);
  auto a5 = conjugacy_classes(make_sym_alt(5, true), 5u);
  REQUIRE(a5.classes.size() == 2);
  for (const auto& c : a5.classes) CHECK(c.class_size == 12);
  CHECK(a5.method == ClassMethod::SymAltClosedForm);
  CHECK(class_labels(a5.classes) == std::vector<std::string>{"5a", "5b"});

  // Natural Sym/Alt closed forms against a brute-force oracle.
  for (std::size_t n = 2; n <= 6; ++n)
    for (bool alt : {false, true}) {
      if (alt && n < 3) continue;
      const PermGroup G = make_sym_alt(n, alt);
      const auto elements = closure(G.generators(), n);
      const auto cl = conjugacy_classes(G);
      std::multiset<std::size_t> sizes;
      BigInt total = 0;
      for (const auto& c : cl.classes) {
        sizes.insert(static_cast<std::size_t>(c.class_size));
        total += c.class_size;
        CHECK(c.class_size * c.centralizer_order == G.order());
        CHECK(c.centralizer_order == oracle_centralizer(elements, c.representative));
        CHECK(G.contains(c.representative));
      }
      CHECK(total == G.order());
      CHECK(sizes == oracle_class_sizes(elements));
    }
}

TEST_CASE("enumerated classes agree with the oracle") {
  const PermGroup psl27 = projective_line_action(GaloisField::make(7, 1), ProjectiveKind::PSL).image;
  const GaloisField F7 = GaloisField::make(7, 1);
  const PermGroup agl =
      affine_perm_action(1, F7, {MatrixOverField::scalar(F7, 1, F7.primitive_element())}, 0, true).image;
  for (const PermGroup& G : {psl27, agl, ProductAction(3, 2).group()}) {
    const auto elements = closure(G.generators(), G.degree());
    const auto cl = conjugacy_classes(G);
    CHECK(cl.method == ClassMethod::Enumeration);
    std::multiset<std::size_t> sizes;
    for (const auto& c : cl.classes) sizes.insert(static_cast<std::size_t>(c.class_size));
    CHECK(sizes == oracle_class_sizes(elements));
  }
  CHECK(conjugacy_classes(psl27).classes.size() == 6);
}

TEST_CASE("M11 classes of elements of order 11") {
  const auto m11 = load_dataset(kData / "M11.json");
  const auto cl = conjugacy_classes(m11.group, 11u);
  REQUIRE(cl.classes.size() == 2);
  for (const auto& c : cl.classes) {
    CHECK(c.class_size == 720);
    CHECK(c.centralizer_order == 11);
  }
  CHECK(cl.certified);
  CHECK(conjugacy_classes(m11.group).classes.size() == 10);
  CHECK(conjugacy_classes(m11.group, 7u).classes.empty());
}

TEST_CASE("random powering finds the M11 classes when enumeration is disallowed") {
  const auto m11 = load_dataset(kData / "M11.json");
  ClassOptions opt;
  opt.enumeration_limit = 100;
  opt.stale_samples = 2000;
  const auto cl = conjugacy_classes(m11.group, 11u, opt);
  CHECK(cl.method == ClassMethod::RandomPowering);
  CHECK_FALSE(cl.certified);
  CHECK(cl.classes.size() == 2);
  CHECK(conjugacy_classes(m11.group, 2u, opt).classes.size() == 1);
  CHECK_THROWS_AS(conjugacy_classes(m11.group, std::nullopt, opt), BudgetExceeded);
}

TEST_CASE("centralizers") {
  const PermGroup s5 = make_sym_alt(5, false);
  CHECK(centralizer(s5, Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})).order() == 5);
  const PermGroup s7 = make_sym_alt(7, false);
  CHECK(centralizer(s7, Permutation::from_cycles(7, {{0, 1}, {2, 3}, {4, 5}})).order() == 48);
  CHECK(centralizer(s7, Permutation(7)).order() == 5040);
  const auto m11 = load_dataset(kData / "M11.json");
  const auto elements = m11.group.elements(10000);
  for (const auto& c : conjugacy_classes(m11.group).classes) {
    const PermGroup C = centralizer(m11.group, c.representative);
    CHECK(C.order() == c.centralizer_order);
    CHECK(C.order() == oracle_centralizer(elements, c.representative));
    for (const auto& g : C.generators()) CHECK(g * c.representative == c.representative * g);
  }
}

TEST_CASE("class orbit transporters conjugate the representative") {
  const auto m12 = load_dataset(kData / "M12.json");
  const auto cl = conjugacy_classes(m12.group, 11u);
  REQUIRE(cl.classes.size() == 2);
  ClassOrbit orbit(m12.group, cl.classes[0].representative);
  CHECK(orbit.size() == 8640);
  for (std::size_t i = 0; i < orbit.size(); i += 97) {
    CHECK(orbit.representative().conjugate(orbit.transporter(i)) == orbit.element(i));
    CHECK(m12.group.contains(orbit.transporter(i)));
  }
  CHECK_FALSE(orbit.contains(cl.classes[1].representative));
}

TEST_CASE("normalizers of cyclic subgroups") {
  const Permutation c7 = Permutation::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}});
  CHECK(normalizer_of_cyclic(make_sym_alt(7, false), c7).order() == 42);
  CHECK(normalizer_of_cyclic(make_sym_alt(7, true), c7).order() == 21);
  for (unsigned p : {5u, 7u, 11u}) {
    const GaloisField F = GaloisField::make(p, 1);
    const auto agl = affine_perm_action(1, F, {MatrixOverField::scalar(F, 1, F.primitive_element())}, 0, true).image;
    Permutation translation(p);
    for (const auto& g : agl.generators())
      if (g.fixed_point_count() == 0) translation = g;
    REQUIRE(translation.order() == p);
    CHECK(normalizer_of_cyclic(agl, translation).order() == agl.order());
  }
  const auto m11 = load_dataset(kData / "M11.json");
  const auto elements = m11.group.elements(10000);
  for (const auto& c : conjugacy_classes(m11.group).classes) {
    const PermGroup N = normalizer_of_cyclic(m11.group, c.representative);
    CHECK(N.order() == oracle_normalizer_cyclic(elements, c.representative));
    ClassOrbit orbit(m11.group, c.representative);
    CHECK(N.order() == orbit.centralizer_order() * power_fusion_count(orbit));
  }
}

TEST_CASE("fusion tests") {
  const auto m11 = load_dataset(kData / "M11.json");
  const PermGroup& H = m11.subgroup("A6.2_3").group;
  const auto fives = conjugacy_classes(H, 5u);
  REQUIRE_FALSE(fives.classes.empty());
  for (const auto& c : fives.classes) CHECK(fusion_test(m11.group, H, c.representative));

  const PermGroup s4 = make_sym_alt(4, false);
  const Permutation x = Permutation::from_cycles(4, {{0, 1, 2}});
  CHECK_FALSE(fusion_test(s4, PermGroup(4, {x}), x));
  CHECK(fusion_test(s4, s4, x));
  CHECK_THROWS_AS(fusion_test(s4, PermGroup(4, {x}), Permutation::from_cycles(4, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("subnormality") {
  const PermGroup s4 = make_sym_alt(4, false);
  const PermGroup d8(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}}), Permutation::from_cycles(4, {{0, 2}})});
  REQUIRE(d8.order() == 8);
  CHECK_FALSE(is_subnormal(d8, s4));
  CHECK(is_subnormal(s4, s4));
  const PermGroup v4(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  CHECK(is_subnormal(v4, s4));
  // Subnormal, yet its normalizer chain stops at D8.
  const PermGroup u(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}})});
  CHECK(is_subnormal(u, s4));
  CHECK_FALSE(is_subnormal(PermGroup(4, {Permutation::from_cycles(4, {{0, 1}})}), s4));
  CHECK(normal_closure(u, s4).order() == 4);
}

TEST_CASE("subnormalisers") {
  const auto m12 = load_dataset(kData / "M12.json");
  const auto elevens = conjugacy_classes(m12.group, 11u);
  REQUIRE_FALSE(elevens.classes.empty());
  const Permutation x = elevens.classes[0].representative;
  const PermGroup sub = subnormaliser(m12.group, x);
  CHECK(sub.order() == 55);
  CHECK(sub.contains(x));
  CHECK(centralizer(m12.group, x).is_subgroup_of(sub));
  CHECK(fusion_test(m12.group, sub, x));

  // Central prime-order element: Sub_G(x) = G.
  const PermGroup g(5, {Permutation::from_cycles(5, {{0, 1}}), Permutation::from_cycles(5, {{2, 3, 4}}),
                        Permutation::from_cycles(5, {{2, 3}})});
  CHECK(subnormaliser(g, Permutation::from_cycles(5, {{0, 1}})).order() == 12);

  const PermGroup a7 = make_sym_alt(7, true);
  CHECK_THROWS_AS(subnormaliser(a7, Permutation::from_cycles(7, {{0, 1, 2, 3}, {4, 5}})), std::invalid_argument);

  const auto m11 = load_dataset(kData / "M11.json");
  for (unsigned p : {2u, 3u, 5u, 11u})
    for (const auto& c : conjugacy_classes(m11.group, p).classes) {
      const PermGroup S = subnormaliser(m11.group, c.representative);
      CHECK(centralizer(m11.group, c.representative).is_subgroup_of(S));
      CHECK(fusion_test(m11.group, S, c.representative));
    }
}

TEST_CASE("strongly p-embedded subgroups") {
  const auto a6 = projective_line_action(GaloisField::make(3, 2), ProjectiveKind::PSL).image;
  REQUIRE(a6.order() == 360);
  const PermGroup H = a6.point_stabilizer(0);
  CHECK(H.order() == 36);
  CHECK(is_strongly_p_embedded(a6, H, 3));
  CHECK_FALSE(is_strongly_p_embedded(a6, H, 2));
  const PermGroup s4 = make_sym_alt(4, false);
  CHECK(is_strongly_p_embedded(s4, s4.point_stabilizer(3), 3));
  CHECK_FALSE(is_strongly_p_embedded(s4, make_sym_alt(4, true), 2));
}

TEST_CASE("prime helpers") {
  CHECK(primes_up_to(13) == std::vector<unsigned>{2, 3, 5, 7, 11, 13});
  CHECK(prime_divisors(BigInt(10200960)) == std::vector<unsigned>{2, 3, 5, 7, 11, 23});
  CHECK(prime_divisors(BigInt(1)).empty());
}
