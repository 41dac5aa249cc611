#include "qsrlab/actions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "qsrlab/errors.hpp"

namespace qsrlab {

namespace {

constexpr std::size_t kMaxDomain = 1000000;

std::vector<Permutation> induce_all(const std::function<Permutation(const Permutation&)>& f,
                                    const std::vector<Permutation>& gens) {
  std::vector<Permutation> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(f(g));
  return out;
}

std::string set_label(const std::vector<Point>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + std::to_string(pts[i] + 1);
  return s + "}";
}

struct SubsetTable {
  std::size_t n = 0, k = 0;
  std::vector<std::vector<std::uint64_t>> binom;  // binom[m][j] = C(m, j)
  std::vector<Point> flat;                        // subset r occupies flat[r*k .. r*k+k)

  std::uint64_t rank(const Point* sorted) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < k; ++i) r += binom[sorted[i]][i + 1];
    return r;
  }
};

// Partitions are keyed by the block label of each point, blocks numbered in
// order of first appearance.
struct PartitionTable {
  std::size_t n = 0, k = 0;
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::uint32_t> index;

  static std::string canonical(const std::string& labels) {
    std::string out(labels.size(), 0);
    std::vector<int> relabel(labels.size(), -1);
    char next = 0;
    for (std::size_t x = 0; x < labels.size(); ++x) {
      auto& r = relabel[static_cast<unsigned char>(labels[x])];
      if (r < 0) r = next++;
      out[x] = static_cast<char>(r);
    }
    return out;
  }
};

void enumerate_partitions(PartitionTable& t, std::string& labels, std::size_t used, char block) {
  if (used == t.n) {
    t.index.emplace(labels, static_cast<std::uint32_t>(t.keys.size()));
    t.keys.push_back(labels);
    return;
  }
  // The new block starts at the smallest unassigned point.
  const std::size_t first = labels.find(char(-1));
  labels[first] = block;
  std::vector<std::size_t> free;
  for (std::size_t x = first + 1; x < t.n; ++x)
    if (labels[x] == char(-1)) free.push_back(x);
  std::vector<bool> pick(free.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(t.k - 1), true);
  do {
    for (std::size_t i = 0; i < free.size(); ++i)
      if (pick[i]) labels[free[i]] = block;
    enumerate_partitions(t, labels, used + t.k, static_cast<char>(block + 1));
    for (std::size_t i = 0; i < free.size(); ++i)
      if (pick[i]) labels[free[i]] = char(-1);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  labels[first] = char(-1);
}

std::string system_key(const std::vector<std::uint32_t>& block_of) {
  std::string s;
  s.reserve(block_of.size() * 4);
  for (auto b : block_of) s.append(reinterpret_cast<const char*>(&b), sizeof b);
  return s;
}

// Holds the coset table alive inside an ActionInstance's induce closure and
// lets coset_table_of recover it.
struct CosetInducer {
  std::shared_ptr<const CosetTable> table;
  Permutation operator()(const Permutation& g) const {
    std::vector<Point> img(table->size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Point>(table->act(i, g));
    return Permutation::from_images_unchecked(std::move(img));
  }
};

}  // namespace

ActionInstance ksubset_action(const PermGroup& G, std::size_t k) {
  const std::size_t n = G.degree();
  if (k < 1 || k >= n) throw std::invalid_argument("ksubset_action: need 1 <= k < n");
  const BigInt count = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
  if (count > kMaxDomain) throw BudgetExceeded("ksubset_action: more than 10^6 subsets");

  auto t = std::make_shared<SubsetTable>();
  t->n = n;
  t->k = k;
  t->binom.assign(n + 1, std::vector<std::uint64_t>(k + 2, 0));
  for (std::size_t m = 0; m <= n; ++m) {
    t->binom[m][0] = 1;
    for (std::size_t j = 1; j <= std::min(m, k + 1); ++j)
      t->binom[m][j] = t->binom[m - 1][j - 1] + (j <= m - 1 ? t->binom[m - 1][j] : 0);
  }
  const auto N = static_cast<std::size_t>(count);
  t->flat.resize(N * k);
  // Colex successor: bump the lowest element that can move, reset those below it.
  std::vector<Point> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (std::size_t r = 0; r < N; ++r) {
    std::copy(c.begin(), c.end(), t->flat.begin() + static_cast<long>(r * k));
    std::size_t i = 0;
    while (i + 1 < k && c[i] + 1 == c[i + 1]) ++i;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<Point>(j);
  }

  ActionInstance a;
  a.name = "k-subsets(" + std::to_string(k) + ")";
  a.source = G;
  a.expected_degree = count;
  a.induce = [t](const Permutation& g) {
    std::vector<Point> img(t->flat.size() / t->k);
    std::vector<Point> buf(t->k);
    for (std::size_t r = 0; r < img.size(); ++r) {
      for (std::size_t i = 0; i < t->k; ++i) buf[i] = g(t->flat[r * t->k + i]);
      std::sort(buf.begin(), buf.end());
      img[r] = static_cast<Point>(t->rank(buf.data()));
    }
    return Permutation::from_images_unchecked(std::move(img));
  };
  a.label = [t](Point x) {
    return set_label(std::vector<Point>(t->flat.begin() + static_cast<long>(x * t->k),
                                        t->flat.begin() + static_cast<long>((x + 1) * t->k)));
  };
  a.image = PermGroup(N, induce_all(a.induce, G.generators()));
  if (k <= 9) {
    std::vector<Point> first(k);
    std::iota(first.begin(), first.end(), 0);
    a.point_stabilizer = G.set_stabilizer(first).generators();
  }
  return a;
}

ActionInstance partition_action(const PermGroup& G, std::size_t k) {
  const std::size_t n = G.degree();
  if (k < 2 || k >= n || n % k != 0) throw std::invalid_argument("partition_action: need 2 <= k < n with k | n");
  const std::size_t m = n / k;
  BigInt count = factorial(static_cast<unsigned>(n));
  for (std::size_t i = 0; i < m; ++i) count /= factorial(static_cast<unsigned>(k));
  count /= factorial(static_cast<unsigned>(m));
  if (count > kMaxDomain) throw BudgetExceeded("partition_action: more than 10^6 partitions");

  auto t = std::make_shared<PartitionTable>();
  t->n = n;
  t->k = k;
  t->keys.reserve(static_cast<std::size_t>(count));
  std::string labels(n, char(-1));
  enumerate_partitions(*t, labels, 0, 0);
  if (t->keys.size() != count) throw InternalConsistencyError("partition_action: enumeration count mismatch");

  ActionInstance a;
  a.name = "partitions(" + std::to_string(m) + "x" + std::to_string(k) + ")";
  a.source = G;
  a.expected_degree = count;
  a.induce = [t](const Permutation& g) {
    std::vector<Point> img(t->keys.size());
    std::string moved(t->n, 0);
    for (std::size_t r = 0; r < img.size(); ++r) {
      const std::string& key = t->keys[r];
      for (std::size_t x = 0; x < t->n; ++x) moved[g(static_cast<Point>(x))] = key[x];
      img[r] = t->index.at(PartitionTable::canonical(moved));
    }
    return Permutation::from_images_unchecked(std::move(img));
  };
  a.label = [t](Point x) {
    const std::string& key = t->keys[x];
    std::string s = "{";
    for (char b = 0; static_cast<std::size_t>(b) < t->n / t->k; ++b) {
      bool first = true;
      if (b) s += "|";
      for (std::size_t y = 0; y < t->n; ++y)
        if (key[y] == b) {
          s += (first ? "" : ",") + std::to_string(y + 1);
          first = false;
        }
    }
    return s + "}";
  };
  a.image = PermGroup(t->keys.size(), induce_all(a.induce, G.generators()));
  return a;
}

CosetTable::CosetTable(const PermGroup& G, const PermGroup& H, std::size_t max_index) : H_(H) {
  if (G.degree() != H.degree()) throw DegreeMismatch("coset table: degree mismatch");
  if (!H.is_subgroup_of(G)) throw std::invalid_argument("coset table: H is not a subgroup of G");
  const BigInt index = G.order() / H.order();
  if (index > max_index) throw BudgetExceeded("coset table: index " + to_string(index) + " exceeds budget");
  const auto N = static_cast<std::size_t>(index);
  reps_.reserve(N);
  index_.reserve(N);
  const Permutation id(G.degree());
  reps_.push_back(canonical(id));
  index_.emplace(key(reps_[0]), 0);
  for (std::size_t i = 0; i < reps_.size(); ++i)
    for (const auto& s : G.generators()) {
      Permutation c = canonical(reps_[i] * s);
      auto [it, fresh] = index_.emplace(key(c), static_cast<std::uint32_t>(reps_.size()));
      if (fresh) reps_.push_back(std::move(c));
    }
  if (reps_.size() != N)
    throw InternalConsistencyError("coset table: found " + std::to_string(reps_.size()) + " cosets, expected " +
                                   to_string(index));
}

Permutation CosetTable::canonical(const Permutation& g) const {
  Permutation cur = g;
  for (const auto& level : H_.chain().levels()) {
    Point best = level.orbit[0];
    for (Point d : level.orbit)
      if (cur(d) < cur(best)) best = d;
    if (best != level.base) cur = level.rep(best) * cur;
  }
  return cur;
}

std::string CosetTable::key(const Permutation& c) const {
  const auto img = c.images();
  std::string s;
  if (c.degree() < 256) {
    s.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) s[i] = static_cast<char>(img[i]);
  } else {
    s.assign(reinterpret_cast<const char*>(img.data()), img.size() * sizeof(Point));
  }
  return s;
}

std::size_t CosetTable::coset_of(const Permutation& g) const {
  auto it = index_.find(key(canonical(g)));
  if (it == index_.end()) throw std::invalid_argument("coset table: element outside the group");
  return it->second;
}

ActionInstance coset_action(const PermGroup& G, const PermGroup& H, std::size_t max_index) {
  CosetInducer inducer{std::make_shared<const CosetTable>(G, H, max_index)};
  ActionInstance a;
  a.name = "cosets";
  a.source = G;
  a.expected_degree = inducer.table->size();
  a.induce = inducer;
  a.label = [](Point x) { return "H" + std::to_string(x + 1); };
  a.image = PermGroup(inducer.table->size(), induce_all(a.induce, G.generators()));
  a.point_stabilizer = H.generators();
  return a;
}

std::shared_ptr<const CosetTable> coset_table_of(const ActionInstance& A) {
  if (const auto* c = A.induce.target<CosetInducer>()) return c->table;
  return nullptr;
}

BlockSystem minimal_block_containing(std::size_t degree, const std::vector<Permutation>& gens, Point a, Point b) {
  std::vector<Point> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Point, Point>> queue;
  auto unite = [&](Point x, Point y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    queue.emplace_back(x, y);
  };
  unite(a, b);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto [x, y] = queue[i];
    for (const auto& g : gens) unite(g(x), g(y));
  }
  BlockSystem sys;
  sys.block_of.assign(degree, 0);
  std::vector<std::int64_t> id(degree, -1);
  for (Point x = 0; x < degree; ++x) {
    const Point r = find(x);
    if (id[r] < 0) {
      id[r] = static_cast<std::int64_t>(sys.blocks.size());
      sys.blocks.emplace_back();
    }
    sys.block_of[x] = static_cast<std::uint32_t>(id[r]);
    sys.blocks[static_cast<std::size_t>(id[r])].push_back(x);
  }
  return sys;
}

std::vector<BlockSystem> block_systems(const ActionInstance& A, bool minimal_only) {
  const std::size_t N = A.degree();
  const auto& gens = A.image.generators();
  if (orbits_of(N, gens).size() != 1) throw std::invalid_argument("block_systems: action is not transitive");
  if (N <= 2) return {};

  // The block generated by {0, beta} only depends on the suborbit of beta.
  std::vector<Point> seeds;
  if (A.point_stabilizer) {
    for (const auto& orb : orbits_of(N, induce_all([&](const Permutation& g) { return A.act(g); },
                                                   *A.point_stabilizer)))
      if (orb[0] != 0) seeds.push_back(orb[0]);
  } else {
    for (Point b = 1; b < N; ++b) seeds.push_back(b);
  }

  std::vector<BlockSystem> found;
  std::unordered_set<std::string> seen;
  for (Point b : seeds) {
    BlockSystem s = minimal_block_containing(N, gens, 0, b);
    if (s.blocks.size() == 1) continue;
    if (seen.insert(system_key(s.block_of)).second) found.push_back(std::move(s));
  }
  std::sort(found.begin(), found.end(), [](const BlockSystem& x, const BlockSystem& y) {
    return x.block_size() != y.block_size() ? x.block_size() < y.block_size() : x.blocks < y.blocks;
  });
  if (!minimal_only) return found;

  std::vector<BlockSystem> minimal;
  for (const auto& s : found) {
    const auto& mine = s.blocks[0];
    bool has_smaller = false;
    for (const auto& t : found) {
      const auto& other = t.blocks[0];
      if (other.size() < mine.size() && std::includes(mine.begin(), mine.end(), other.begin(), other.end())) {
        has_smaller = true;
        break;
      }
    }
    if (!has_smaller) minimal.push_back(s);
  }
  return minimal;
}

ActionInstance induced_block_action(const ActionInstance& A, const BlockSystem& system) {
  const std::size_t N = A.degree();
  if (system.block_of.size() != N) throw std::invalid_argument("induced_block_action: system size mismatch");
  auto blocks = std::make_shared<const BlockSystem>(system);
  auto on_blocks = [blocks](const Permutation& img) {
    std::vector<Point> out(blocks->blocks.size());
    for (std::size_t b = 0; b < out.size(); ++b) {
      const auto& block = blocks->blocks[b];
      const std::uint32_t target = blocks->block_of[img(block[0])];
      for (Point x : block)
        if (blocks->block_of[img(x)] != target)
          throw std::invalid_argument("induced_block_action: system is not invariant");
      out[b] = target;
    }
    return Permutation(std::move(out));
  };
  ActionInstance out;
  out.name = A.name + "/blocks";
  out.source = A.source;
  out.expected_degree = system.blocks.size();
  out.induce = [A, on_blocks](const Permutation& g) { return on_blocks(A.act(g)); };
  out.label = [A, blocks](Point b) {
    std::string s = "[";
    for (std::size_t i = 0; i < blocks->blocks[b].size(); ++i) s += (i ? " " : "") + A.point_label(blocks->blocks[b][i]);
    return s + "]";
  };
  out.image = PermGroup(system.blocks.size(), induce_all(on_blocks, A.image.generators()));
  return out;
}

bool check_homomorphism(const ActionInstance& A, std::size_t words, std::uint64_t seed) {
  const auto& src = A.source.generators();
  const auto& img = A.image.generators();
  if (src.size() != img.size()) return false;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (A.act(src[i]) != img[i]) return false;
  if (src.empty()) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, src.size() - 1), length(1, 24);
  for (std::size_t w = 0; w < words; ++w) {
    Permutation s(A.source.degree()), t(A.degree());
    for (std::size_t len = length(rng); len > 0; --len) {
      const std::size_t j = pick(rng);
      s = s * src[j];
      t = t * img[j];
    }
    if (A.act(s) != t) return false;
  }
  return true;
}

bool is_faithful(const ActionInstance& A) { return A.image.order() == A.source.order(); }

}  // namespace qsrlab
