#include <filesystem>
#include <unordered_set>

#include "doctest.h"
#include "qsrlab/affine.hpp"
#include "qsrlab/constructors.hpp"
#include "qsrlab/dataset.hpp"
#include "qsrlab/errors.hpp"

using namespace qsrlab;

namespace {

const std::filesystem::path kData = QSRLAB_DATA_DIR;

// Closure of a generating set by breadth-first multiplication; independent
// of the stabilizer chain.
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

bool looks_qsr(const Permutation& g) {
  if (g.fixed_point_count() != 1) return false;
  const auto m = g.order();
  for (const auto& c : g.cycles())
    if (c.size() != m) return false;
  return true;
}

void replace_once(std::string& s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("symmetric and alternating orders") {
  CHECK(make_sym_alt(3, false).order() == 6);
  CHECK(make_sym_alt(4, true).order() == 12);
  CHECK(make_sym_alt(11, true).order() == BigInt(19958400));
  CHECK(make_sym_alt(1, false).order() == 1);
  CHECK(make_sym_alt(2, true).order() == 1);
  for (std::size_t n = 3; n <= 8; ++n) {
    CHECK(closure(make_sym_alt(n, true).generators(), n).size() == factorial(static_cast<unsigned>(n)) / 2);
  }
}

TEST_CASE("product action orders and encoding") {
  ProductAction a(3, 2);
  CHECK(a.group().degree() == 9);
  CHECK(a.group().order() == 72);
  ProductAction b(5, 2);
  CHECK(b.group().order() == 28800);
  ProductAction c(3, 3);
  CHECK(c.group().order() == 216 * 6);
  for (Point x = 0; x < 27; ++x) CHECK(c.encode(c.decode(x)) == x);
}

TEST_CASE("base group predicate matches membership in Sym(k)^l") {
  ProductAction a(3, 2);
  // Sym(3) x 1 and its conjugate 1 x Sym(3), built from explicit components.
  const Permutation id(3);
  std::vector<Permutation> base_gens;
  for (const auto& h : {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})}) {
    base_gens.push_back(a.element({h, id}, Permutation(2)));
    base_gens.push_back(a.element({id, h}, Permutation(2)));
  }
  const auto base = closure(base_gens, 9);
  CHECK(base.size() == 36);
  std::unordered_set<Permutation, PermutationHash> base_set(base.begin(), base.end());
  for (const auto& g : closure(a.group().generators(), 9)) {
    CHECK(a.in_base_group(g) == (base_set.count(g) == 1));
    if (a.in_base_group(g)) {
      auto h = a.components(g);
      CHECK(a.element(h, Permutation(2)) == g);
    }
  }
}

TEST_CASE("square of the order-4 element outside the base group is qsr") {
  ProductAction pa(5, 2);
  const Permutation h1 = Permutation::from_cycles(5, {{0, 1}});
  const Permutation h2 = Permutation::from_cycles(5, {{2, 3}});
  const Permutation sigma = Permutation::from_cycles(2, {{0, 1}});
  const Permutation g = pa.element({h1, h2}, sigma);
  CHECK(pa.group().contains(g));
  CHECK_FALSE(pa.in_base_group(g));
  CHECK(g.order() == 4);
  CHECK(looks_qsr(g));
  const Permutation g2 = g * g;
  const Permutation prod = h1 * h2;
  CHECK(g2 == pa.element({prod, prod}, Permutation(2)));
  CHECK(looks_qsr(g2));
  std::vector<Point> fixed{4, 4};
  CHECK(g2(pa.encode(fixed)) == pa.encode(fixed));
}

TEST_CASE("SD fixed coset counts for Alt(5)") {
  const PermGroup a5 = make_sym_alt(5, true);
  CHECK(sd_fixed_coset_count(a5, 2) == 16);
  CHECK(sd_fixed_coset_count(a5, 3) == 21);
  CHECK(sd_fixed_coset_count(a5, 5) == 25);
  for (std::uint32_t k : {7u, 11u, 13u}) CHECK(sd_fixed_coset_count(a5, k) == 1);
  CHECK_THROWS_AS(sd_fixed_coset_count(a5, 4), std::invalid_argument);
  CHECK_THROWS_AS(sd_fixed_coset_count(make_sym_alt(5, false), 2), std::invalid_argument);
}

TEST_CASE("SD fixed coset count equals 1 exactly for primes not dividing |T|") {
  const PermGroup psl27 = projective_line_action(GaloisField::make(7, 1), ProjectiveKind::PSL).image;
  REQUIRE(psl27.order() == 168);
  for (const PermGroup& T : {make_sym_alt(5, true), psl27}) {
    const auto elements = closure(T.generators(), T.degree());
    for (std::uint32_t k : {2u, 3u, 5u, 7u, 11u, 13u}) {
      std::uint64_t oracle = 0;
      for (const auto& s : elements) oracle += s.pow(k).is_identity();
      const auto count = sd_fixed_coset_count(T, k);
      CHECK(count == oracle);
      CHECK((count == 1) == (T.order() % k != 0));
    }
  }
}

TEST_CASE("SD action of Alt(5) with k = 2") {
  const PermGroup a5 = make_sym_alt(5, true);
  auto sd = make_sd_small(a5, 2);
  CHECK(sd.degree() == 60);
  CHECK(sd.expected_degree == 60);
  const Permutation& sigma = sd.image.generators()[2 * a5.generators().size()];
  CHECK(sigma.fixed_point_count() == 16);
  CHECK(sd.image.is_transitive());
  auto sd3 = make_sd_small(a5, 3);
  CHECK(sd3.degree() == 3600);
  const Permutation& sigma3 = sd3.image.generators()[3 * a5.generators().size()];
  CHECK(sigma3.fixed_point_count() == sd_fixed_coset_count(a5, 3));
  CHECK(sigma3.order() == 3);
}

TEST_CASE("HS type group on Alt(5)") {
  const PermGroup a5 = make_sym_alt(5, true);
  auto hs = make_hs_type(a5, true, false);
  CHECK(hs.degree() == 60);
  CHECK(hs.image.order() == 7200);
  CHECK(hs.image.is_transitive());
  CHECK(hs.image.point_stabilizer(0).order() == 120);
  CHECK(make_hs_type(a5, false, false).image.order() == 3600);
  CHECK(make_hs_type(a5, false, true).image.order() == 7200);
  CHECK(make_hs_type(a5, true, true).image.order() == 14400);
}

TEST_CASE("Mathieu datasets load with verified orders") {
  auto m11 = load_dataset(kData / "M11.json");
  CHECK(m11.order == 7920);
  CHECK(m11.group.order() == 7920);
  CHECK(m11.subgroup("A6.2_3").index == 11);
  CHECK(m11.subgroups.size() == 5);
  auto m12 = load_dataset(kData / "M12.json");
  CHECK(m12.order == 95040);
  CHECK(m12.subgroup("M11").index == 12);
  CHECK(m12.subgroups.size() == 7);
  CHECK(load_dataset(kData / "M22.json").order == 443520);
  CHECK(load_dataset(kData / "M23.json").order == 10200960);
  CHECK(load_dataset(kData / "M12.2.json").order == 190080);
  CHECK(load_dataset(kData / "M22.2.json").order == 887040);
}

TEST_CASE("dataset round trip") {
  auto m11 = load_dataset(kData / "M11.json");
  auto again = parse_dataset(dataset_to_json(m11));
  CHECK(again.name == "M11");
  CHECK(again.subgroups.size() == m11.subgroups.size());
  for (std::size_t i = 0; i < again.subgroups.size(); ++i)
    CHECK(again.subgroups[i].group.generators() == m11.subgroups[i].group.generators());
}

TEST_CASE("corrupted datasets are rejected loudly") {
  const std::string good = R"({"name": "S3", "degree": 3, "order": "6",
    "generators": [[2,1,3],[2,3,1]],
    "subgroups": [{"name": "C3", "index": "2", "generators": [[2,3,1]]}]})";
  CHECK(parse_dataset(good).group.order() == 6);

  auto expect_error = [&](std::string text) { CHECK_THROWS_AS(parse_dataset(text), DatasetError); };
  std::string s;
  s = good; replace_once(s, "[2,1,3]", "[2,2,3]"); expect_error(s);           // not a bijection
  s = good; replace_once(s, "[2,1,3]", "[2,1,4]"); expect_error(s);           // out of range
  s = good; replace_once(s, "[2,1,3]", "[2,1]"); expect_error(s);             // wrong length
  s = good; replace_once(s, "\"order\": \"6\"", "\"order\": \"12\""); expect_error(s);
  s = good; replace_once(s, "\"index\": \"2\"", "\"index\": \"3\""); expect_error(s);
  s = good; replace_once(s, "\"order\": \"6\"", "\"order\": 6"); expect_error(s);
  s = good; replace_once(s, "\"name\": \"S3\"", "\"name\": \"S3\", \"comment\": 1"); expect_error(s);
  s = good; replace_once(s, "\"name\": \"C3\"", "\"name\": \"C3\", \"extra\": true"); expect_error(s);
  s = good; replace_once(s, "{\"name\": \"S3\",", "{"); expect_error(s);
  s = good; replace_once(s, "]]}]}", "]]}]"); expect_error(s);
  expect_error(R"({"name": "C3", "degree": 3, "order": "3", "generators": [[2,3,1]],
    "subgroups": [{"name": "bad", "index": "1", "generators": [[2,1,3]]}]})");
  CHECK_THROWS_AS(load_dataset(kData / "does-not-exist.json"), DatasetError);
}
