#include "qsrlab/perm_group.hpp"

#include <algorithm>
#include <numeric>

#include "qsrlab/errors.hpp"

namespace qsrlab {

namespace {

// Explicit transversals cost degree * |orbit| points per level.
constexpr std::size_t kTransversalBudget = std::size_t{1} << 26;

bool fixes_prefix(const Permutation& g, const std::vector<ChainLevel>& levels, std::size_t upto) {
  for (std::size_t l = 0; l < upto; ++l)
    if (g(levels[l].base) != levels[l].base) return false;
  return true;
}

}  // namespace

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& l : levels_) b.push_back(l.base);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt r = 1;
  for (const auto& l : levels_) r *= l.orbit.size();
  return r;
}

void StabilizerChain::add_base_point(Point b) {
  ChainLevel lvl;
  lvl.base = b;
  lvl.position.assign(degree_, -1);
  lvl.position[b] = 0;
  lvl.orbit.push_back(b);
  lvl.transversal.emplace_back(degree_);
  lvl.inverse_transversal.emplace_back(degree_);
  lvl.checked.push_back(0);
  levels_.push_back(std::move(lvl));
}

void StabilizerChain::extend_orbit(std::size_t level, std::size_t first_new_generator) {
  ChainLevel& lvl = levels_[level];
  // New generators act on old points; all generators act on new points.
  std::size_t old_size = lvl.orbit.size();
  std::size_t budget_used = 0;
  for (const auto& l : levels_) budget_used += l.orbit.size() * degree_;
  auto push = [&](Point y, Permutation rep) {
    budget_used += degree_;
    if (budget_used > kTransversalBudget)
      throw BudgetExceeded("stabilizer chain transversals exceed memory budget");
    lvl.position[y] = static_cast<std::int32_t>(lvl.orbit.size());
    lvl.orbit.push_back(y);
    lvl.inverse_transversal.push_back(rep.inverse());
    lvl.transversal.push_back(std::move(rep));
    lvl.checked.push_back(0);
  };
  for (std::size_t i = 0; i < old_size; ++i) {
    for (std::size_t s = first_new_generator; s < lvl.generators.size(); ++s) {
      Point y = lvl.generators[s](lvl.orbit[i]);
      if (!lvl.in_orbit(y)) push(y, lvl.transversal[i] * lvl.generators[s]);
    }
  }
  for (std::size_t i = old_size; i < lvl.orbit.size(); ++i) {
    for (std::size_t s = 0; s < lvl.generators.size(); ++s) {
      Point y = lvl.generators[s](lvl.orbit[i]);
      if (!lvl.in_orbit(y)) push(y, lvl.transversal[i] * lvl.generators[s]);
    }
  }
}

void StabilizerChain::add_generator(std::size_t level, const Permutation& g) {
  std::size_t before = levels_[level].generators.size();
  levels_[level].generators.push_back(g);
  extend_orbit(level, before);
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const ChainLevel& lvl = levels_[l];
    Point b = g(lvl.base);
    if (!lvl.in_orbit(b)) return {std::move(g), l};
    if (b != lvl.base) g = g * lvl.rep_inverse(b);
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw DegreeMismatch("membership: degree mismatch");
  auto [res, drop] = sift(g);
  return drop == levels_.size() && res.is_identity();
}

StabilizerChain StabilizerChain::schreier_sims(std::size_t degree,
                                               const std::vector<Permutation>& gens,
                                               const std::vector<Point>& base_prefix) {
  StabilizerChain c(degree);
  for (Point b : base_prefix) c.add_base_point(b);
  std::vector<Permutation> strong;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
    if (g.is_identity()) continue;
    if (fixes_prefix(g, c.levels_, c.levels_.size())) c.add_base_point(g.first_moved());
    strong.push_back(g);
  }
  for (const auto& g : strong)
    for (std::size_t l = 0; l < c.levels_.size() && fixes_prefix(g, c.levels_, l); ++l)
      c.add_generator(l, g);

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(c.levels_.size()) - 1;
  while (i >= 0) {
    bool descended = false;
    ChainLevel* lvl = &c.levels_[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < lvl->orbit.size() && !descended; ++j) {
      while (lvl->checked[j] < lvl->generators.size()) {
        const std::size_t s = lvl->checked[j]++;
        const Permutation& gen = lvl->generators[s];
        Point beta = lvl->orbit[j];
        Point gamma = gen(beta);
        Permutation h = lvl->transversal[j] * gen * lvl->rep_inverse(gamma);
        auto [res, drop] = c.sift(std::move(h), static_cast<std::size_t>(i) + 1);
        if (drop == c.levels_.size() && res.is_identity()) continue;
        if (drop == c.levels_.size()) c.add_base_point(res.first_moved());
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= drop; ++l) c.add_generator(l, res);
        i = static_cast<std::ptrdiff_t>(drop);
        descended = true;
        break;
      }
    }
    if (!descended) --i;
  }
  return c;
}

StabilizerChain StabilizerChain::random_schreier_sims(std::size_t degree,
                                                      const std::vector<Permutation>& gens,
                                                      const BigInt& known_order, std::uint64_t seed,
                                                      const std::vector<Point>& base_prefix) {
  StabilizerChain c(degree);
  for (Point b : base_prefix) c.add_base_point(b);
  std::vector<Permutation> pool;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
    if (!g.is_identity()) pool.push_back(g);
  }
  if (pool.empty()) {
    if (known_order != 1) throw InternalConsistencyError("trivial generators but order != 1");
    return c;
  }
  auto absorb = [&](const Permutation& g) {
    auto [res, drop] = c.sift(g);
    if (drop == c.levels_.size() && res.is_identity()) return;
    if (drop == c.levels_.size()) c.add_base_point(res.first_moved());
    for (std::size_t l = 0; l <= drop; ++l)
      if (fixes_prefix(res, c.levels_, l)) c.add_generator(l, res);
  };
  for (const auto& g : pool) absorb(g);

  // Product replacement.
  std::mt19937_64 rng(seed);
  std::vector<Permutation> state = pool;
  while (state.size() < 10) state.push_back(pool[state.size() % pool.size()]);
  Permutation acc(degree);
  auto next = [&]() {
    std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    if (rng() & 1)
      state[a] = state[a] * state[b];
    else
      state[a] = state[b] * state[a];
    acc = acc * state[a];
    return acc;
  };
  for (int k = 0; k < 50; ++k) next();

  std::size_t stale = 0;
  while (c.order() < known_order) {
    BigInt before = c.order();
    absorb(next());
    if (c.order() == before) {
      if (++stale > 200000)
        throw InternalConsistencyError("random Schreier-Sims did not reach the declared order");
    } else {
      stale = 0;
    }
  }
  if (c.order() != known_order)
    throw InternalConsistencyError("group order exceeds the declared order");
  return c;
}

void StabilizerChain::for_each_element(const std::function<bool(const Permutation&)>& visit) const {
  if (levels_.empty()) {
    visit(Permutation(degree_));
    return;
  }
  // g = u_{k-1} * ... * u_0; the deepest level is applied first.
  const std::size_t k = levels_.size();
  std::vector<Permutation> prefix(k + 1);
  prefix[k] = Permutation(degree_);
  std::vector<std::size_t> idx(k, 0);
  std::ptrdiff_t l = static_cast<std::ptrdiff_t>(k) - 1;
  // Iterative odometer over transversal indices.
  for (std::ptrdiff_t t = l; t >= 0; --t)
    prefix[static_cast<std::size_t>(t)] =
        prefix[static_cast<std::size_t>(t) + 1] * levels_[static_cast<std::size_t>(t)].transversal[0];
  while (true) {
    if (!visit(prefix[0])) return;
    std::size_t t = 0;
    while (t < k && ++idx[t] == levels_[t].orbit.size()) {
      idx[t] = 0;
      ++t;
    }
    if (t == k) return;
    for (std::ptrdiff_t u = static_cast<std::ptrdiff_t>(t); u >= 0; --u) {
      auto uu = static_cast<std::size_t>(u);
      prefix[uu] = prefix[uu + 1] * levels_[uu].transversal[idx[uu]];
    }
  }
}

Permutation StabilizerChain::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> pick(0, levels_[l].orbit.size() - 1);
    g = g * levels_[l].transversal[pick(rng)];
  }
  return g;
}

std::vector<Permutation> StabilizerChain::stabilizer_generators(std::size_t depth) const {
  if (depth >= levels_.size()) return {};
  return levels_[depth].generators;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
}

PermGroup PermGroup::with_known_order(std::size_t degree, std::vector<Permutation> generators,
                                      const BigInt& order, std::uint64_t seed) {
  PermGroup g(degree, std::move(generators));
  g.chain_ = std::make_shared<const StabilizerChain>(
      StabilizerChain::random_schreier_sims(degree, g.generators_, order, seed));
  return g;
}

const StabilizerChain& PermGroup::chain() const {
  if (!chain_)
    chain_ = std::make_shared<const StabilizerChain>(
        StabilizerChain::schreier_sims(degree_, generators_));
  return *chain_;
}

void PermGroup::rebase(const std::vector<Point>& prefix) {
  if (chain_) {
    // Reuse the known order for a fast rebuild.
    BigInt ord = chain_->order();
    chain_ = std::make_shared<const StabilizerChain>(
        StabilizerChain::random_schreier_sims(degree_, generators_, ord, 7, prefix));
  } else {
    chain_ = std::make_shared<const StabilizerChain>(
        StabilizerChain::schreier_sims(degree_, generators_, prefix));
  }
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw DegreeMismatch("membership: degree mismatch");
  return chain().contains(g);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  return true;
}

void PermGroup::for_each_element(const BigInt& limit,
                                 const std::function<bool(const Permutation&)>& visit) const {
  if (order() > limit)
    throw OrderExceedsLimit("group order " + order().str() + " exceeds enumeration limit " +
                            limit.str());
  chain().for_each_element(visit);
}

std::vector<Permutation> PermGroup::elements(const BigInt& limit) const {
  std::vector<Permutation> out;
  for_each_element(limit, [&](const Permutation& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::vector<std::vector<Point>> orbits_of(std::size_t degree, const std::vector<Permutation>& gens) {
  std::vector<std::int32_t> id(degree, -1);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < degree; ++s) {
    if (id[s] >= 0) continue;
    std::vector<Point> orb{s};
    id[s] = static_cast<std::int32_t>(out.size());
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens) {
        Point y = g(orb[i]);
        if (id[y] < 0) {
          id[y] = static_cast<std::int32_t>(out.size());
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<std::vector<Point>> PermGroup::orbits() const { return orbits_of(degree_, generators_); }

std::vector<Point> PermGroup::orbit(Point x) const {
  std::vector<char> seen(degree_, 0);
  std::vector<Point> orb{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : generators_) {
      Point y = g(orb[i]);
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  return orb;
}

bool PermGroup::is_transitive() const { return degree_ <= 1 || orbit(0).size() == degree_; }

PermGroup PermGroup::point_stabilizer(Point x) const {
  BigInt ord = order();
  StabilizerChain c = StabilizerChain::random_schreier_sims(degree_, generators_, ord, 11, {x});
  std::vector<Permutation> gens = c.stabilizer_generators(1);
  PermGroup h(degree_, gens);
  BigInt sub = ord / c.levels()[0].orbit.size();
  h.chain_ = std::make_shared<const StabilizerChain>(
      StabilizerChain::random_schreier_sims(degree_, gens, sub, 13));
  return h;
}

std::optional<Permutation> PermGroup::transporter(const std::vector<Point>& from,
                                                  const std::vector<Point>& to) const {
  if (from.size() != to.size()) throw std::invalid_argument("transporter: length mismatch");
  StabilizerChain c = StabilizerChain::random_schreier_sims(degree_, generators_, order(), 17, from);
  // Build h = u_{m-1} * ... * u_0 level by level; R is the product so far.
  Permutation r(degree_);
  Permutation r_inv(degree_);
  for (std::size_t l = 0; l < from.size(); ++l) {
    const ChainLevel& lvl = c.levels()[l];
    Point target = r_inv(to[l]);
    if (!lvl.in_orbit(target)) return std::nullopt;
    r = lvl.rep(target) * r;
    r_inv = r_inv * lvl.rep_inverse(target);
  }
  return r;
}

PermGroup PermGroup::set_stabilizer(const std::vector<Point>& set) const {
  if (set.size() > 9) throw BudgetExceeded("set_stabilizer: more than 9 points");
  const BigInt ord = order();
  StabilizerChain c = StabilizerChain::random_schreier_sims(degree_, generators_, ord, 19, set);
  std::vector<Permutation> gens = c.stabilizer_generators(set.size());
  PermGroup h(degree_, gens);
  std::vector<Point> image = set;
  std::sort(image.begin(), image.end());
  do {
    // Transport along c directly instead of rebuilding a chain per ordering.
    Permutation r(degree_), r_inv(degree_);
    bool ok = true;
    for (std::size_t l = 0; l < set.size() && ok; ++l) {
      const ChainLevel& lvl = c.levels()[l];
      Point target = r_inv(image[l]);
      if (!lvl.in_orbit(target)) {
        ok = false;
        break;
      }
      r = lvl.rep(target) * r;
      r_inv = r_inv * lvl.rep_inverse(target);
    }
    if (ok && !h.contains(r)) {
      gens.push_back(r);
      h = PermGroup(degree_, gens);
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return h;
}

}  // namespace qsrlab
