#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "doctest.h"
#include "qsrlab/actions.hpp"
#include "qsrlab/constructors.hpp"
#include "qsrlab/dataset.hpp"
#include "qsrlab/errors.hpp"

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

bool looks_qsr(const Permutation& g) {
  if (g.fixed_point_count() != 1) return false;
  const auto m = g.order();
  for (const auto& c : g.cycles())
    if (c.size() != m) return false;
  return true;
}

std::set<Point> subset_of_label(const std::string& label) {
  std::set<Point> s;
  std::size_t i = 1;
  while (i < label.size() - 1) {
    std::size_t j = label.find_first_of(",|}", i);
    s.insert(static_cast<Point>(std::stoul(label.substr(i, j - i)) - 1));
    i = j + 1;
  }
  return s;
}

// All set partitions of {0..n-1} as block-label vectors (restricted growth strings).
void set_partitions(std::size_t n, std::vector<std::uint32_t>& cur, std::uint32_t used,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t b = 0; b <= used; ++b) {
    cur.push_back(b);
    set_partitions(n, cur, std::max(used, b + 1), out);
    cur.pop_back();
  }
}

// Minimal nontrivial invariant partitions, by exhaustive search.
std::set<std::set<std::set<Point>>> oracle_minimal_systems(std::size_t n, const std::vector<Permutation>& gens) {
  std::vector<std::vector<std::uint32_t>> all;
  std::vector<std::uint32_t> cur;
  set_partitions(n, cur, 0, all);
  std::vector<std::set<std::set<Point>>> invariant;
  for (const auto& labels : all) {
    const std::uint32_t nb = *std::max_element(labels.begin(), labels.end()) + 1;
    if (nb == 1 || nb == n) continue;
    bool ok = true;
    for (const auto& g : gens)
      for (Point x = 0; x < n && ok; ++x)
        for (Point y = x + 1; y < n && ok; ++y)
          if ((labels[x] == labels[y]) != (labels[g(x)] == labels[g(y)])) ok = false;
    if (!ok) continue;
    std::set<std::set<Point>> sys;
    std::vector<std::set<Point>> blocks(nb);
    for (Point x = 0; x < n; ++x) blocks[labels[x]].insert(x);
    sys.insert(blocks.begin(), blocks.end());
    invariant.push_back(sys);
  }
  auto refines = [](const std::set<std::set<Point>>& fine, const std::set<std::set<Point>>& coarse) {
    for (const auto& b : fine) {
      bool inside = false;
      for (const auto& c : coarse)
        if (std::includes(c.begin(), c.end(), b.begin(), b.end())) inside = true;
      if (!inside) return false;
    }
    return true;
  };
  std::set<std::set<std::set<Point>>> minimal;
  for (const auto& s : invariant) {
    bool has_finer = false;
    for (const auto& t : invariant)
      if (t != s && refines(t, s)) has_finer = true;
    if (!has_finer) minimal.insert(s);
  }
  return minimal;
}

std::set<std::set<std::set<Point>>> as_sets(const std::vector<BlockSystem>& systems) {
  std::set<std::set<std::set<Point>>> out;
  for (const auto& s : systems) {
    std::set<std::set<Point>> sys;
    for (const auto& b : s.blocks) sys.insert(std::set<Point>(b.begin(), b.end()));
    out.insert(sys);
  }
  return out;
}

PermGroup base_group_3x3() {
  ProductAction pa(3, 2);
  const Permutation id(3);
  std::vector<Permutation> gens;
  for (const auto& h : {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})}) {
    gens.push_back(pa.element({h, id}, Permutation(2)));
    gens.push_back(pa.element({id, h}, Permutation(2)));
  }
  return PermGroup(9, std::move(gens));
}

}  // namespace

TEST_CASE("k-subset action matches direct set images") {
  for (std::size_t n = 3; n <= 8; ++n)
    for (std::size_t k = 1; k < n; ++k) {
      const PermGroup S = make_sym_alt(n, false);
      auto A = ksubset_action(S, k);
      REQUIRE(A.degree() == A.expected_degree);
      CHECK(A.degree() == binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
      std::map<std::set<Point>, Point> where;
      for (Point x = 0; x < A.degree(); ++x) where[subset_of_label(A.point_label(x))] = x;
      CHECK(where.size() == A.degree());
      for (const auto& g : S.generators()) {
        const Permutation img = A.act(g);
        for (const auto& [subset, x] : where) {
          std::set<Point> moved;
          for (Point p : subset) moved.insert(g(p));
          CHECK(img(x) == where.at(moved));
        }
      }
      CHECK(check_homomorphism(A, 20, n * 31 + k));
    }
}

TEST_CASE("k-subset examples") {
  CHECK(ksubset_action(make_sym_alt(5, false), 2).degree() == 10);
  auto A = ksubset_action(make_sym_alt(9, false), 2);
  CHECK(A.degree() == 36);
  CHECK(A.point_label(0) == "{1,2}");
  const Permutation g = Permutation::from_cycles(9, {{2, 3, 4, 5, 6, 7, 8}});
  CHECK(looks_qsr(A.act(g)));
  CHECK_FALSE(looks_qsr(A.act(Permutation::from_cycles(9, {{0, 1, 2}}))));
  REQUIRE(A.point_stabilizer.has_value());
  CHECK(PermGroup(9, *A.point_stabilizer).order() == 2 * 5040);
  CHECK_THROWS_AS(ksubset_action(make_sym_alt(5, false), 0), std::invalid_argument);
}

TEST_CASE("partition action degrees and invariance") {
  CHECK(partition_action(make_sym_alt(6, false), 3).degree() == 10);
  CHECK(partition_action(make_sym_alt(10, false), 5).degree() == 126);
  CHECK(partition_action(make_sym_alt(6, false), 2).degree() == 15);
  auto A = partition_action(make_sym_alt(6, false), 3);
  CHECK(A.point_label(0) == "{1,2,3|4,5,6}");
  CHECK(A.image.is_transitive());
  CHECK(A.image.order() == 720);
  CHECK(check_homomorphism(A, 30, 5));
  // Sym(6) on 15 synthemes, directly against the labels.
  auto B = partition_action(make_sym_alt(6, false), 2);
  std::map<std::string, Point> where;
  for (Point x = 0; x < B.degree(); ++x) where[B.point_label(x)] = x;
  const Permutation g = Permutation::from_cycles(6, {{0, 3, 5}});
  const Permutation img = B.act(g);
  CHECK(img(where.at("{1,2|3,4|5,6}")) == where.at("{1,5|2,4|3,6}"));
  CHECK_THROWS_AS(partition_action(make_sym_alt(7, false), 3), std::invalid_argument);
}

TEST_CASE("coset action of Sym(n) on a set stabilizer is the k-subset action") {
  for (std::size_t n = 4; n <= 7; ++n)
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const PermGroup S = make_sym_alt(n, false);
      std::vector<Point> first(k);
      std::iota(first.begin(), first.end(), 0);
      const PermGroup H = S.set_stabilizer(first);
      auto C = coset_action(S, H);
      auto K = ksubset_action(S, k);
      REQUIRE(C.degree() == K.degree());
      const auto table = coset_table_of(C);
      REQUIRE(table);
      // Coset Hg corresponds to the image of {0..k-1} under g.
      std::map<std::set<Point>, Point> subset_index;
      for (Point x = 0; x < K.degree(); ++x) subset_index[subset_of_label(K.point_label(x))] = x;
      std::vector<Point> phi(C.degree());
      for (Point i = 0; i < C.degree(); ++i) {
        std::set<Point> img;
        for (Point p : first) img.insert(table->representative(i)(p));
        phi[i] = subset_index.at(img);
      }
      for (const auto& g : S.generators()) {
        const Permutation c = C.act(g), s = K.act(g);
        for (Point i = 0; i < C.degree(); ++i) CHECK(phi[c(i)] == s(phi[i]));
      }
    }
}

TEST_CASE("coset table agrees with a brute-force coset partition") {
  const PermGroup S = make_sym_alt(5, false);
  const PermGroup H(5, {Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1}, {3, 4}})});
  REQUIRE(H.order() == 6);
  CosetTable t(S, H, 1000);
  CHECK(t.size() == 20);
  const auto hs = closure(H.generators(), 5);
  for (const auto& g : closure(S.generators(), 5)) {
    const Permutation c = t.canonical(g);
    // The canonical element lies in Hg and is the lexicographic minimum of
    // the base images over the coset.
    bool in_coset = false;
    for (const auto& h : hs) in_coset |= (h * g == c);
    CHECK(in_coset);
    CHECK(t.representative(t.coset_of(g)) == c);
  }
  CHECK_THROWS_AS(CosetTable(S, PermGroup(5, {Permutation::from_cycles(5, {{0, 1}})}), 10), BudgetExceeded);
  CHECK_THROWS_AS(coset_action(make_sym_alt(5, true), PermGroup(5, {Permutation::from_cycles(5, {{0, 1}})})),
                  std::invalid_argument);
}

TEST_CASE("Mathieu coset actions") {
  auto m11 = load_dataset(kData / "M11.json");
  auto A = coset_action(m11.group, m11.subgroup("A6.2_3").group);
  CHECK(A.degree() == 11);
  CHECK(A.image.order() == 7920);
  CHECK(check_homomorphism(A, 20, 7));
  CHECK(is_faithful(A));
  auto B = coset_action(m11.group, m11.subgroup("L2(11)").group);
  CHECK(B.degree() == 12);
  CHECK(B.image.point_stabilizer(0).order() == 660);
  auto m12 = load_dataset(kData / "M12.json");
  auto C = coset_action(m12.group, m12.subgroup("M11").group);
  CHECK(C.degree() == 12);
  CHECK(C.image.is_transitive());
  CHECK(C.image.order() == 95040);
  CHECK(block_systems(C).empty());
}

TEST_CASE("block systems against exhaustive search") {
  const PermGroup s4 = make_sym_alt(4, false);
  CHECK(block_systems(natural_action(s4, "S4")).empty());

  // The coordinate swap exchanges rows and columns, so the full wreath
  // product in product action is primitive; the base group keeps both grids.
  auto wreath = natural_action(ProductAction(3, 2).group(), "S3 wr S2");
  CHECK(block_systems(wreath).empty());
  CHECK(oracle_minimal_systems(9, wreath.image.generators()).empty());
  auto base = natural_action(base_group_3x3(), "S3 x S3");
  auto systems = block_systems(base);
  CHECK(systems.size() == 2);
  for (const auto& s : systems) CHECK(s.block_size() == 3);
  CHECK(as_sets(systems) == oracle_minimal_systems(9, base.image.generators()));

  const PermGroup c6(6, {Permutation::from_cycles(6, {{0, 1, 2, 3, 4, 5}})});
  auto reg = block_systems(natural_action(c6, "C6"));
  REQUIRE(reg.size() == 2);
  CHECK(reg[0].block_size() == 2);
  CHECK(reg[1].block_size() == 3);
  CHECK(as_sets(reg) == oracle_minimal_systems(6, c6.generators()));

  const PermGroup d8(8, {Permutation::from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}}),
                         Permutation::from_cycles(8, {{1, 7}, {2, 6}, {3, 5}})});
  auto dsys = natural_action(d8, "D16");
  CHECK(as_sets(block_systems(dsys)) == oracle_minimal_systems(8, d8.generators()));
  CHECK(block_systems(dsys, false).size() == 2);

  const PermGroup intrans(4, {Permutation::from_cycles(4, {{0, 1}})});
  CHECK_THROWS_AS(block_systems(natural_action(intrans, "x")), std::invalid_argument);
}

TEST_CASE("action on blocks") {
  auto base = natural_action(base_group_3x3(), "S3 x S3");
  for (const auto& s : block_systems(base)) {
    auto B = induced_block_action(base, s);
    CHECK(B.degree() == 3);
    CHECK(B.image.order() == 6);
    CHECK(check_homomorphism(B, 20, 3));
  }
  BlockSystem bad;
  bad.blocks = {{0, 1, 2, 3}, {4, 5, 6, 7, 8}};
  bad.block_of = {0, 0, 0, 0, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(induced_block_action(base, bad), std::invalid_argument);
}
