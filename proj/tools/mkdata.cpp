// Regenerates the Mathieu group datasets under data/.
//
// Each maximal subgroup is located either as a point/set stabilizer or as a
// two-generator subgroup <x, y> identified by its order, orbit lengths and
// (where needed) element orders. Everything written is re-verified by the
// strict loader before the file is replaced.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "qsrlab/dataset.hpp"
#include "qsrlab/perm_group.hpp"

using namespace qsrlab;

namespace {

Permutation from_cycles_1based(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
  std::vector<std::vector<Point>> c = cycles;
  for (auto& cyc : c)
    for (auto& x : cyc) --x;
  return Permutation::from_cycles(n, c);
}

std::vector<std::size_t> orbit_lengths(const PermGroup& h) {
  std::vector<std::size_t> lens;
  for (const auto& o : h.orbits()) lens.push_back(o.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::set<std::uint64_t> element_orders(const PermGroup& h) {
  std::set<std::uint64_t> out;
  h.for_each_element(BigInt(1000000), [&](const Permutation& g) {
    out.insert(g.order());
    return true;
  });
  return out;
}

/// Reservoir samples of elements of selected orders.
class Pools {
 public:
  Pools(const PermGroup& G, const std::set<std::uint64_t>& orders, std::size_t cap, std::uint64_t seed)
      : rng_(seed) {
    if (G.order() > 20000000) {
      // Too large to enumerate: power random elements down to each order.
      for (std::size_t trial = 0; trial < 200 * cap; ++trial) {
        const Permutation g = G.random_element(rng_);
        const std::uint64_t o = g.order();
        for (auto t : orders)
          if (o % t == 0 && pools_[t].size() < cap) pools_[t].push_back(g.pow(static_cast<long long>(o / t)));
      }
      return;
    }
    std::map<std::uint64_t, std::uint64_t> seen;
    G.for_each_element(BigInt(20000000), [&](const Permutation& g) {
      const std::uint64_t o = g.order();
      if (!orders.count(o)) return true;
      auto& pool = pools_[o];
      const std::uint64_t k = seen[o]++;
      if (pool.size() < cap) {
        pool.push_back(g);
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, k);
        const std::uint64_t j = pick(rng_);
        if (j < cap) pool[j] = g;
      }
      return true;
    });
  }
  const std::vector<Permutation>& of_order(std::uint64_t o) const { return pools_.at(o); }

 private:
  std::mt19937_64 rng_;
  std::map<std::uint64_t, std::vector<Permutation>> pools_;
};

/// First <x, y> (x from xs, y from ys) with the given order satisfying `accept`.
std::optional<PermGroup> search(std::size_t degree, const std::vector<Permutation>& xs,
                                const std::vector<Permutation>& ys, const BigInt& order,
                                const std::function<bool(const PermGroup&)>& accept) {
  for (std::size_t i = 0; i < std::min<std::size_t>(xs.size(), 8); ++i)
    for (const auto& y : ys) {
      PermGroup h(degree, {xs[i], y});
      if (h.order() == order && accept(h)) return h;
    }
  return std::nullopt;
}

PermGroup must(std::optional<PermGroup> h, const std::string& what) {
  if (!h) throw std::runtime_error("mkdata: could not locate " + what);
  return *h;
}

auto with_orbits(std::vector<std::size_t> lens) {
  std::sort(lens.begin(), lens.end());
  return [lens](const PermGroup& h) { return orbit_lengths(h) == lens; };
}

/// Canonical label of the orbit of `set` under G on subsets of the same size:
/// the lexicographically smallest image.
std::vector<Point> set_orbit_min(const PermGroup& G, std::vector<Point> set) {
  std::sort(set.begin(), set.end());
  std::set<std::vector<Point>> seen{set};
  std::vector<std::vector<Point>> queue{set};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : G.generators()) {
      std::vector<Point> img;
      for (Point x : queue[i]) img.push_back(g(x));
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second) queue.push_back(img);
    }
  return *seen.begin();
}

std::vector<Point> orbit_of_size(const PermGroup& h, std::size_t len) {
  for (const auto& o : h.orbits())
    if (o.size() == len) return o;
  throw std::runtime_error("mkdata: no orbit of requested length");
}

/// A subgroup generated by the given group's generators, with a compact
/// generating set: random elements are added until the order is reached.
PermGroup compact(const PermGroup& h, std::uint64_t seed) {
  const BigInt target = h.order();
  std::mt19937_64 rng(seed);
  std::vector<Permutation> gens;
  PermGroup cur = PermGroup::trivial(h.degree());
  while (cur.order() != target) {
    Permutation g = h.random_element(rng);
    if (cur.contains(g)) continue;
    gens.push_back(g);
    cur = PermGroup(h.degree(), gens);
  }
  return cur;
}

struct Builder {
  GeneratorDataset d;
  std::uint64_t seed = 1;

  void add(const std::string& name, const PermGroup& h) {
    PermGroup small = compact(h, seed++);
    std::cerr << "  " << d.name << " > " << name << ": order " << small.order() << ", index "
              << d.order / small.order() << ", orbits";
    for (auto len : orbit_lengths(small)) std::cerr << ' ' << len;
    std::cerr << '\n';
    d.subgroups.push_back({name, small, d.order / small.order()});
  }
};

Builder start(const std::string& name, std::size_t degree, std::vector<Permutation> gens,
              const BigInt& order) {
  Builder b;
  b.d.name = name;
  b.d.group = PermGroup(degree, std::move(gens));
  b.d.order = b.d.group.order();
  if (b.d.order != order) throw std::runtime_error("mkdata: " + name + " has the wrong order");
  return b;
}

/// Stabilizer of a hexad {H, complement} in M12: a hexad is a 6-set with
/// setwise stabilizer of order 720.
PermGroup hexad_pair_stabilizer(const PermGroup& G) {
  std::vector<bool> mask(12, false);
  std::fill(mask.begin(), mask.begin() + 6, true);
  do {
    std::vector<Point> hexad, rest;
    for (Point i = 0; i < 12; ++i) (mask[i] ? hexad : rest).push_back(i);
    PermGroup h = G.set_stabilizer(hexad);
    if (h.order() != 720) continue;
    do {
      if (auto t = G.transporter(hexad, rest)) {
        auto gens = h.generators();
        gens.push_back(*t);
        return PermGroup(12, gens);
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  throw std::runtime_error("mkdata: no hexad found in M12");
}

GeneratorDataset build_m11() {
  auto b = start("M11", 11,
                 {from_cycles_1based(11, {{2, 10}, {4, 11}, {5, 7}, {8, 9}}),
                  from_cycles_1based(11, {{1, 4, 3, 8}, {2, 5, 6, 9}})},
                 7920);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 3, 4, 11}, 2000, 11);
  b.add("A6.2_3", G.point_stabilizer(10));
  b.add("L2(11)", must(search(11, pools.of_order(11), pools.of_order(2), 660, [](const PermGroup&) { return true; }),
                       "L2(11) in M11"));
  b.add("3^2:Q8.2", G.set_stabilizer({9, 10}));
  std::optional<PermGroup> s5;
  std::vector<Point> five{0, 1, 2, 3, 4};
  std::vector<bool> mask(11, false);
  std::fill(mask.begin(), mask.begin() + 5, true);
  do {
    std::vector<Point> set;
    for (Point i = 0; i < 11; ++i)
      if (mask[i]) set.push_back(i);
    PermGroup h = G.set_stabilizer(set);
    if (h.order() == 120) {
      s5 = h;
      break;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  b.add("A5.2", must(s5, "S5 in M11"));
  b.add("2.S4", G.set_stabilizer({8, 9, 10}));
  return b.d;
}

GeneratorDataset build_m12() {
  auto b = start("M12", 12,
                 {from_cycles_1based(12, {{1, 4}, {3, 10}, {5, 11}, {6, 12}}),
                  from_cycles_1based(12, {{1, 8, 9}, {2, 3, 4}, {5, 12, 11}, {6, 10, 7}})},
                 95040);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 3, 4, 5, 11}, 3000, 12);
  b.add("M11", G.point_stabilizer(11));
  b.add("M11'", must(search(12, pools.of_order(11), pools.of_order(4), 7920, with_orbits({12})),
                     "transitive M11 in M12"));
  b.add("A6.2^2", G.set_stabilizer({10, 11}));
  b.add("A6.2^2'", hexad_pair_stabilizer(G));
  b.add("L2(11)", must(search(12, pools.of_order(11), pools.of_order(2), 660, with_orbits({12})),
                       "transitive L2(11) in M12"));
  // 2 x S5 is the centralizer of a fixed-point-free involution.
  std::optional<PermGroup> c2;
  for (const auto& z : pools.of_order(2)) {
    if (z.fixed_point_count() != 0) continue;
    std::vector<Permutation> cent;
    G.for_each_element(BigInt(100000), [&](const Permutation& g) {
      if (z * g == g * z) cent.push_back(g);
      return true;
    });
    if (cent.size() == 240) {
      c2 = PermGroup(12, cent);
      break;
    }
  }
  b.add("2xS5", must(c2, "2 x S5 in M12"));
  b.add("3^2:2S4", G.set_stabilizer({9, 10, 11}));
  return b.d;
}

GeneratorDataset build_m22() {
  auto b = start("M22", 22,
                 {from_cycles_1based(22, {{1, 13}, {2, 8}, {3, 16}, {4, 12}, {6, 22}, {7, 17}, {9, 10}, {11, 14}}),
                  from_cycles_1based(22, {{1, 22, 3, 21}, {2, 18, 4, 13}, {5, 12}, {6, 11, 7, 15}, {8, 14, 20, 10}, {17, 19}})},
                 443520);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 3, 4, 5, 7, 8, 11}, 3000, 22);
  b.add("L3(4)", G.point_stabilizer(21));

  // Two classes of A7, told apart by the G-orbit of their 7-point orbit.
  std::vector<PermGroup> a7;
  std::vector<std::vector<Point>> labels;
  for (std::size_t i = 0; i < 8 && a7.size() < 2; ++i)
    for (const auto& y : pools.of_order(2)) {
      PermGroup h(22, {pools.of_order(7)[i], y});
      if (h.order() != 2520 || orbit_lengths(h) != std::vector<std::size_t>{7, 15}) continue;
      auto label = set_orbit_min(G, orbit_of_size(h, 7));
      if (std::find(labels.begin(), labels.end(), label) != labels.end()) continue;
      labels.push_back(label);
      a7.push_back(h);
      if (a7.size() == 2) break;
    }
  if (a7.size() != 2) throw std::runtime_error("mkdata: could not locate both A7 classes in M22");
  b.add("A7", a7[0]);
  b.add("A7'", a7[1]);
  b.add("2^4:S5", G.set_stabilizer({20, 21}));
  b.add("2^3:L3(2)", must(search(22, pools.of_order(7), pools.of_order(2), 1344, with_orbits({8, 14})),
                          "2^3:L3(2) in M22"));
  b.add("A6.2_3", must(search(22, pools.of_order(8), pools.of_order(2), 720,
                              [](const PermGroup& h) {
                                auto o = element_orders(h);
                                return o.count(8) && !o.count(6) && !o.count(10) &&
                                       orbit_lengths(h) == std::vector<std::size_t>{10, 12};
                              }),
                       "M10 in M22"));
  b.add("L2(11)", must(search(22, pools.of_order(11), pools.of_order(2), 660, with_orbits({11, 11})),
                       "L2(11) in M22"));
  b.add("2^4:A6", must(search(22, pools.of_order(5), pools.of_order(4), 5760, with_orbits({6, 16})),
                       "2^4:A6 in M22"));
  return b.d;
}

GeneratorDataset build_m23() {
  auto b = start("M23", 23,
                 {from_cycles_1based(23, {{1, 2}, {3, 4}, {7, 8}, {9, 10}, {13, 14}, {15, 16}, {19, 20}, {21, 22}}),
                  from_cycles_1based(23, {{1, 16, 11, 3}, {2, 9, 21, 12}, {4, 5, 8, 23}, {6, 22, 14, 18}, {13, 20}, {15, 17}})},
                 10200960);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 4, 5, 7, 11, 23}, 3000, 23);
  b.add("M22", G.point_stabilizer(22));
  b.add("L3(4).2_2", G.set_stabilizer({21, 22}));
  b.add("2^4:A7", must(search(23, pools.of_order(7), pools.of_order(2), 40320, with_orbits({7, 16})),
                       "2^4:A7 in M23"));
  b.add("A8", must(search(23, pools.of_order(7), pools.of_order(2), 20160, with_orbits({8, 15})),
                   "A8 in M23"));
  b.add("M11", must(search(23, pools.of_order(11), pools.of_order(2), 7920, with_orbits({11, 12})),
                    "M11 in M23"));
  b.add("2^4:(3xA5).2", G.set_stabilizer({20, 21, 22}));
  b.add("23:11", must(search(23, pools.of_order(23), pools.of_order(11), 253, [](const PermGroup&) { return true; }),
                      "23:11 in M23"));
  return b.d;
}

PermGroup make_m24() {
  PermGroup g(24, {from_cycles_1based(24, {{1, 4}, {2, 7}, {3, 17}, {5, 13}, {6, 9}, {8, 15}, {10, 19}, {11, 18}, {12, 21}, {14, 16}, {20, 24}, {22, 23}}),
                   from_cycles_1based(24, {{1, 4, 6}, {2, 21, 14}, {3, 9, 15}, {5, 18, 10}, {13, 17, 16}, {19, 24, 23}})});
  if (g.order() != 244823040) throw std::runtime_error("mkdata: M24 has the wrong order");
  return g;
}

Permutation restrict_to_prefix(const Permutation& g, std::size_t n) {
  std::vector<Point> img(g.images().begin(), g.images().begin() + static_cast<std::ptrdiff_t>(n));
  return Permutation(std::move(img));
}

bool leaves_subgroup(const PermGroup& h, const PermGroup& inner) {
  for (const auto& g : h.generators())
    if (!inner.contains(g)) return true;
  return false;
}

GeneratorDataset build_m22_2() {
  // Aut(M22) is the stabilizer of a 2-set in M24, acting on the other 22 points.
  PermGroup pair = make_m24().set_stabilizer({22, 23});
  std::vector<Permutation> gens;
  for (const auto& g : pair.generators()) gens.push_back(restrict_to_prefix(g, 22));
  auto b = start("M22.2", 22, gens, 887040);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 5, 7, 8, 11}, 3000, 222);
  b.add("L3(4).2_2", G.point_stabilizer(21));
  b.add("2^5.S5", G.set_stabilizer({20, 21}));
  b.add("2x2^3:L3(2)", must(search(22, pools.of_order(7), pools.of_order(2), 2688, with_orbits({8, 14})),
                            "2 x 2^3:L3(2) in M22.2"));
  b.add("A6.2^2", must(search(22, pools.of_order(8), pools.of_order(2), 1440, with_orbits({10, 12})),
                       "A6.2^2 in M22.2"));
  b.add("L2(11).2", must(search(22, pools.of_order(11), pools.of_order(2), 1320, [](const PermGroup&) { return true; }),
                         "L2(11).2 in M22.2"));
  return b.d;
}

GeneratorDataset build_m12_2() {
  const PermGroup m24 = make_m24();
  Pools m24_pools(m24, {2, 11}, 400, 2424);
  const PermGroup m12 = must(search(24, m24_pools.of_order(11), m24_pools.of_order(2), 95040, with_orbits({12, 12})),
                             "M12 in M24");
  const std::vector<Point> dodecad = m12.orbits()[0];
  const std::vector<Point> other = m12.orbits()[1];
  std::mt19937_64 rng(24);
  std::optional<Permutation> swap;
  for (std::size_t trial = 0; trial < 1000000 && !swap; ++trial) {
    Permutation g = m24.random_element(rng);
    std::vector<Point> img;
    for (Point x : dodecad) img.push_back(g(x));
    std::sort(img.begin(), img.end());
    if (img == other) swap = g;
  }
  if (!swap) throw std::runtime_error("mkdata: no element swaps the dodecads");
  auto gens = m12.generators();
  gens.push_back(*swap);
  auto b = start("M12.2", 24, gens, 190080);
  const PermGroup& G = b.d.group;
  Pools pools(G, {2, 4, 5, 6, 10, 11, 12}, 3000, 122);
  b.add("L2(11).2", must(search(24, pools.of_order(11), pools.of_order(2), 1320, with_orbits({24})),
                         "transitive L2(11).2 in M12.2"));
  b.add("L2(11).2'", must(search(24, pools.of_order(11), pools.of_order(2), 1320, with_orbits({2, 22})),
                          "intransitive L2(11).2 in M12.2"));
  // (2^2 x A5):2 is the centralizer of a 2A involution of M12 (one whose
  // centralizer in M12 is 2 x S5): the only maximal subgroup of order 480
  // besides those inside M12.
  std::optional<PermGroup> a5_ext;
  for (const auto& z : pools.of_order(2)) {
    if (!m12.contains(z)) continue;
    std::vector<Permutation> cent;
    G.for_each_element(BigInt(1000000), [&](const Permutation& g) {
      if (z * g == g * z) cent.push_back(g);
      return true;
    });
    PermGroup c(24, cent);
    std::size_t inner = 0;
    for (const auto& g : cent) inner += m12.contains(g);
    if (inner == 240 && cent.size() == 480) {
      a5_ext = c;
      break;
    }
  }
  b.add("(2^2xA5):2", must(a5_ext, "(2^2 x A5):2 in M12.2"));
  return b.d;
}

void write(const std::filesystem::path& dir, const GeneratorDataset& d) {
  const std::string text = dataset_to_json(d);
  GeneratorDataset check = parse_dataset(text, d.name);
  if (check.subgroups.size() != d.subgroups.size()) throw std::runtime_error("mkdata: round trip failed");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / (d.name + ".json")) << text;
  std::cerr << "wrote " << (dir / (d.name + ".json")).string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : QSRLAB_DATA_DIR;
  const std::set<std::string> only(argv + std::min(argc, 2), argv + argc);
  const std::map<std::string, std::function<GeneratorDataset()>> builders = {
      {"M11", build_m11}, {"M12", build_m12}, {"M12.2", build_m12_2},
      {"M22", build_m22}, {"M22.2", build_m22_2}, {"M23", build_m23}};
  try {
    for (const auto& [name, build] : builders)
      if (only.empty() || only.count(name)) write(dir, build());
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
