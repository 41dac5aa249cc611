#include "qsrlab/qsr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qsrlab/errors.hpp"

namespace qsrlab {

std::string to_string(QsrRoute r) {
  switch (r) {
    case QsrRoute::Direct: return "direct";
    case QsrRoute::FusionCentralizer: return "fusion_centralizer";
    case QsrRoute::NormalizerFusion: return "normalizer_fusion";
  }
  return "?";
}

bool is_qsr_image(const Permutation& img, std::uint64_t m) {
  if (m < 2) return false;
  std::size_t fixed = 0;
  for (const auto& c : img.cycles(true)) {
    if (c.size() == 1) {
      if (++fixed > 1) return false;
    } else if (c.size() != m) {
      return false;
    }
  }
  return fixed == 1;
}

std::optional<QsrCertificate> is_qsr_direct(const ActionInstance& A, const Permutation& g) {
  const Permutation img = A.act(g);
  const std::uint64_t m = g.order();
  if (!is_qsr_image(img, m)) return std::nullopt;
  QsrCertificate cert;
  cert.element = g;
  cert.order = m;
  for (Point x = 0; x < img.degree(); ++x)
    if (img(x) == x) cert.fixed_point = x;
  cert.cycle_count = (img.degree() - 1) / m;
  cert.routes = {QsrRoute::Direct};
  cert.action = A.name;
  return cert;
}

const ClassOrbit& ClassCache::orbit_of(const Permutation& x) {
  for (const auto& o : orbits_)
    if (o->contains(x)) return *o;
  orbits_.push_back(std::make_unique<ClassOrbit>(G_, x));
  return *orbits_.back();
}

namespace {

void require_prime_member(const PermGroup& H, const Permutation& x, const char* who) {
  if (!is_prime(x.order())) throw std::invalid_argument(std::string(who) + ": x must have prime order");
  if (!H.contains(x)) throw std::invalid_argument(std::string(who) + ": x is not in H");
}

BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
  if (b == 0 || a % b != 0)
    throw InternalConsistencyError(std::string(what) + ": " + to_string(a) + " / " + to_string(b) + " is not exact");
  return a / b;
}

// Lexicographically least generator of <y>: identifies the cyclic subgroup.
Permutation cyclic_key(const Permutation& y) {
  const std::uint64_t m = y.order();
  Permutation best = y;
  Permutation p = y;
  for (std::uint64_t k = 2; k < m; ++k) {
    p = p * y;
    if (std::gcd(k, m) == 1 && p < best) best = p;
  }
  return best;
}

struct OrbitHandle {
  ClassCache local;
  const ClassOrbit* orbit;
  OrbitHandle(const PermGroup& G, const Permutation& x, ClassCache* cache) : local(G) {
    ClassCache& c = cache ? *cache : local;
    orbit = &c.orbit_of(x);
  }
};

}  // namespace

bool is_qsr_fusion(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache) {
  require_prime_member(H, x, "is_qsr_fusion");
  const OrbitHandle og(G, x, cache);
  const ClassOrbit oh(H, x);
  const BigInt cg = og.orbit->centralizer_order();
  const BigInt ch = oh.centralizer_order();
  return cg == ch && og.orbit->count_in(H) == oh.size();
}

bool is_qsr_normalizer(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache) {
  require_prime_member(H, x, "is_qsr_normalizer");
  const OrbitHandle og(G, x, cache);
  const BigInt ng = normalizer_of_cyclic(*og.orbit).order();
  const BigInt nh = normalizer_of_cyclic(ClassOrbit(H, x)).order();
  if (ng != nh) return false;
  PermSet subgroups(G.degree());
  for (const auto& y : og.orbit->members_in(H)) subgroups.insert(cyclic_key(y));
  return BigInt(subgroups.size()) == H.order() / nh;
}

BigInt fixed_points_formula(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache) {
  const OrbitHandle og(G, x, cache);
  const BigInt index = exact_div(G.order(), H.order(), "index");
  return exact_div(index * og.orbit->count_in(H), og.orbit->size(), "fixed point formula");
}

BigInt fixed_points_class_split(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache) {
  const OrbitHandle og(G, x, cache);
  const BigInt cg = og.orbit->centralizer_order();
  PermSet covered(G.degree());
  BigInt total = 0;
  for (const auto& y : og.orbit->members_in(H)) {
    if (covered.contains(y)) continue;
    const ClassOrbit oh(H, y);
    for (std::size_t i = 0; i < oh.size(); ++i) covered.insert(oh.elements().at(i));
    total += exact_div(cg, oh.centralizer_order(), "class split");
  }
  return total;
}

namespace {

BigInt manning_cyclic(const PermGroup& G, const PermGroup& H, const Permutation& x, ClassCache* cache) {
  const OrbitHandle og(G, x, cache);
  const BigInt conjugates = exact_div(og.orbit->size(), power_fusion_count(*og.orbit), "conjugates of K");
  const BigInt ng = G.order() / conjugates;
  PermSet subgroups(G.degree());
  for (const auto& y : og.orbit->members_in(H)) subgroups.insert(cyclic_key(y));
  // H-orbits on the conjugates of K that lie in H.
  std::vector<bool> seen(subgroups.size(), false);
  BigInt total = 0;
  for (std::size_t s = 0; s < subgroups.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> queue{s};
    seen[s] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Permutation y = subgroups.at(queue[i]);
      for (const auto& h : H.generators()) {
        const auto j = subgroups.find(cyclic_key(y.conjugate(h)));
        if (!j) throw InternalConsistencyError("manning: conjugate left the set");
        if (!seen[*j]) {
          seen[*j] = true;
          queue.push_back(*j);
        }
      }
    }
    total += exact_div(ng * queue.size(), H.order(), "manning term");
  }
  return total;
}

std::string subgroup_key(std::vector<Permutation> elements) {
  std::sort(elements.begin(), elements.end());
  std::string key;
  for (const auto& e : elements)
    for (Point p : e.images()) key.append(reinterpret_cast<const char*>(&p), sizeof p);
  return key;
}

BigInt manning_general(const PermGroup& G, const PermGroup& H, const PermGroup& K) {
  if (K.order() > 10000) throw BudgetExceeded("manning: |K| exceeds 10^4");
  const auto base = K.elements(10000);
  std::vector<std::vector<Permutation>> conj{base};
  std::map<std::string, std::size_t> index{{subgroup_key(base), 0}};
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (const auto& g : G.generators()) {
      std::vector<Permutation> next;
      next.reserve(conj[i].size());
      for (const auto& k : conj[i]) next.push_back(k.conjugate(g));
      auto key = subgroup_key(next);
      if (index.emplace(std::move(key), conj.size()).second) {
        if (conj.size() >= 100000) throw BudgetExceeded("manning: more than 10^5 conjugates of K");
        conj.push_back(std::move(next));
      }
    }
  const BigInt ng = G.order() / conj.size();
  std::vector<int> state(conj.size(), -1);  // -1 unknown, 0 outside H, 1 inside
  for (std::size_t i = 0; i < conj.size(); ++i)
    state[i] = std::all_of(conj[i].begin(), conj[i].end(), [&](const Permutation& k) { return H.contains(k); });
  BigInt total = 0;
  std::vector<bool> seen(conj.size(), false);
  for (std::size_t s = 0; s < conj.size(); ++s) {
    if (state[s] != 1 || seen[s]) continue;
    std::vector<std::size_t> queue{s};
    seen[s] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& h : H.generators()) {
        std::vector<Permutation> next;
        for (const auto& k : conj[queue[i]]) next.push_back(k.conjugate(h));
        const std::size_t j = index.at(subgroup_key(next));
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    total += exact_div(ng * queue.size(), H.order(), "manning term");
  }
  return total;
}

}  // namespace

BigInt fixed_points_manning(const PermGroup& G, const PermGroup& H, const PermGroup& K, ClassCache* cache) {
  if (!K.is_subgroup_of(G)) throw std::invalid_argument("manning: K is not a subgroup of G");
  const BigInt k = K.order();
  if (k == 1) return exact_div(G.order(), H.order(), "index");
  for (const auto& g : K.generators())
    if (BigInt(g.order()) == k) return manning_cyclic(G, H, g, cache);
  return manning_general(G, H, K);
}

std::size_t common_fixed_points(const ActionInstance& A, const std::vector<Permutation>& K) {
  std::vector<bool> fixed(A.degree(), true);
  for (const auto& g : K) {
    const Permutation img = A.act(g);
    for (Point x = 0; x < img.degree(); ++x)
      if (img(x) != x) fixed[x] = false;
  }
  return static_cast<std::size_t>(std::count(fixed.begin(), fixed.end(), true));
}

// ------------------------------------------------------------------ scans

std::size_t PrimeVerdict::qsr_class_count() const {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [](const auto& c) { return c.qsr; }));
}

std::vector<unsigned> QsrReport::qsr_primes() const {
  std::vector<unsigned> out;
  for (const auto& v : verdicts)
    if (v.exists) out.push_back(v.prime);
  return out;
}

const PrimeVerdict& QsrReport::verdict(unsigned p) const {
  for (const auto& v : verdicts)
    if (v.prime == p) return v;
  throw std::out_of_range("no verdict for prime " + std::to_string(p));
}

QsrReport scan_action(const ActionInstance& A, const std::vector<unsigned>& primes, const ScanOptions& options) {
  QsrReport report;
  report.action = A.name;
  report.degree = A.degree();
  report.group_order = A.source.order();

  std::optional<PermGroup> H;
  const bool sym_alt = natural_sym_alt(A.source).has_value();
  if (!sym_alt && options.use_point_stabilizer && A.point_stabilizer) {
    PermGroup cand(A.source.degree(), *A.point_stabilizer);
    if (cand.order() <= options.stabilizer_limit) {
      H = std::move(cand);
      report.class_scope = "H";
    }
  }

  for (unsigned p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("scan_action: " + std::to_string(p) + " is not prime");
    PrimeVerdict v;
    v.prime = p;
    v.congruence = (A.degree() - 1) % p == 0;
    if (H) v.sylow = p_part(H->order(), p) == p_part(report.group_order, p);
    if (!v.congruence) {
      report.verdicts.push_back(std::move(v));
      continue;
    }
    const ClassList cl = conjugacy_classes(H ? *H : A.source, p, options.classes);
    report.method = cl.method;
    report.certified = report.certified && cl.certified;
    const auto labels = class_labels(cl.classes);
    std::size_t qsr_seen = 0;
    for (std::size_t i = 0; i < cl.classes.size(); ++i) {
      const ClassDatum& c = cl.classes[i];
      QsrClassRecord rec;
      rec.prime = p;
      rec.representative = c.representative;
      rec.source_cycle_type = c.representative.cycle_type().to_string();
      rec.action_cycle_type = A.act(c.representative).cycle_type().to_string();
      rec.in_stabilizer = H.has_value();
      rec.centralizer_order = c.centralizer_order;
      rec.class_size = c.class_size;
      if (auto cert = is_qsr_direct(A, c.representative)) {
        rec.qsr = true;
        if (H) {
          // For qsr x, C_G(x) = C_H(x); the G-class has |G| / |C_H(x)| elements.
          rec.class_size = exact_div(report.group_order, c.centralizer_order, "qsr class size");
          rec.in_stabilizer = false;
          std::string suffix;
          for (std::size_t k = ++qsr_seen; k > 0; k = (k - 1) / 26)
            suffix.insert(suffix.begin(), static_cast<char>('a' + (k - 1) % 26));
          rec.label = std::to_string(p) + suffix;
        }
        report.certificates.push_back(std::move(*cert));
      }
      if (rec.label.empty()) rec.label = H ? "H:" + labels[i] : labels[i];
      v.classes.push_back(std::move(rec));
    }
    v.exists = v.qsr_class_count() > 0;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

// ------------------------------------------------------------ predictions

namespace {

std::string type_string(std::vector<std::pair<std::size_t, std::size_t>> parts) {
  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& pr : parts)
    if (pr.second > 0) kept.push_back(pr);
  return CycleType(kept).to_string();
}

}  // namespace

std::vector<SymAltPrediction> predict_sym_alt(std::size_t n, SymAltFamily family, std::size_t k, bool alternating) {
  if (family == SymAltFamily::Subsets && (k < 1 || 2 * k >= n))
    throw std::invalid_argument("predict_sym_alt: subsets need 1 <= k < n/2");
  if (family == SymAltFamily::Partitions && (k < 2 || 2 * k > n || n % k != 0))
    throw std::invalid_argument("predict_sym_alt: partitions need 1 < k <= n/2 with k | n");
  std::vector<SymAltPrediction> out;
  for (unsigned p : primes_up_to(static_cast<unsigned>(n))) {
    SymAltPrediction pred;
    pred.prime = p;
    if (family == SymAltFamily::Subsets) {
      if (k < p && (n - k) % p == 0) {
        const std::size_t cycles = (n - k) / p;
        // Alt(n) needs the element 1^k p^c to be even.
        if (!alternating || p % 2 == 1 || cycles % 2 == 0) {
          pred.exists = true;
          pred.cycle_types.insert(type_string({{1, k}, {p, cycles}}));
        }
      }
    } else {
      const std::size_t m = n / k;
      if (p % 2 == 1 && k == p && m >= 2 && m <= p) {
        pred.exists = true;
        pred.cycle_types.insert(type_string({{1, p}, {p, m - 1}}));
        if (m < p) pred.cycle_types.insert(type_string({{p, m}}));
      }
    }
    out.push_back(std::move(pred));
  }
  return out;
}

}  // namespace qsrlab
