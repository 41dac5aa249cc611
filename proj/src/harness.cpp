#include "qsrlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <numeric>
#include <set>
#include <sstream>

#include "qsrlab/actions.hpp"
#include "qsrlab/affine.hpp"
#include "qsrlab/constructors.hpp"
#include "qsrlab/errors.hpp"

#ifndef QSRLAB_VERSION
#define QSRLAB_VERSION "0.0.0"
#endif

namespace qsrlab::harness {

namespace {

using json = nlohmann::ordered_json;

void require_degree(const BigInt& degree, const RunConfig& cfg) {
  if (degree > cfg.budgets.max_degree)
    throw BudgetExceeded("degree " + degree.str() + " exceeds max-degree " + std::to_string(cfg.budgets.max_degree));
}

void require_order(const BigInt& order, const RunConfig& cfg) {
  if (order > cfg.budgets.max_order)
    throw BudgetExceeded("group order " + order.str() + " exceeds max-order " + cfg.budgets.max_order.str());
}

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.classes.seed = cfg.seed;
  return o;
}

ClassOptions class_options(const RunConfig& cfg) {
  ClassOptions o;
  o.seed = cfg.seed;
  return o;
}

void fail_unless(Item& it, bool ok) {
  if (!ok) it.status = Status::Fail;
}

std::string prime_set(const std::vector<unsigned>& ps) {
  if (ps.empty()) return "none";
  std::string s;
  for (unsigned p : ps) s += (s.empty() ? "" : ",") + std::to_string(p);
  return "{" + s + "}";
}

std::string format_counts(const std::map<unsigned, std::size_t>& m) {
  if (m.empty()) return "none";
  std::string s;
  for (const auto& [p, c] : m) s += (s.empty() ? "" : " ") + std::to_string(p) + "(" + std::to_string(c) + ")";
  return s;
}

std::map<unsigned, std::size_t> qsr_counts(const QsrReport& r) {
  std::map<unsigned, std::size_t> out;
  for (const auto& v : r.verdicts)
    if (v.exists) out[v.prime] = v.qsr_class_count();
  return out;
}

json counts_json(const std::map<unsigned, std::size_t>& m) {
  json j = json::object();
  for (const auto& [p, c] : m) j[std::to_string(p)] = c;
  return j;
}

json report_json(const QsrReport& r) {
  json j;
  j["degree"] = r.degree;
  j["group_order"] = r.group_order.str();
  j["class_method"] = to_string(r.method);
  j["certified"] = r.certified;
  j["class_scope"] = r.class_scope;
  json primes = json::array();
  for (const auto& v : r.verdicts) {
    json pv;
    pv["p"] = v.prime;
    pv["congruence"] = v.congruence;
    if (v.sylow) pv["sylow"] = *v.sylow;
    pv["classes"] = v.classes.size();
    json q = json::array();
    for (const auto& c : v.classes)
      if (c.qsr)
        q.push_back({{"label", c.label},
                     {"cycle_type", c.source_cycle_type},
                     {"action_cycle_type", c.action_cycle_type},
                     {"class_size", c.class_size.str()}});
    pv["qsr"] = std::move(q);
    primes.push_back(std::move(pv));
  }
  j["primes"] = std::move(primes);
  return j;
}

/// Prime-order qsr classes must pass the congruence filter and, with a
/// known stabilizer, the Sylow filter.
std::size_t necessity_violations(const QsrReport& r) {
  std::size_t bad = 0;
  for (const auto& v : r.verdicts)
    if (v.exists && (!v.congruence || (v.sylow && !*v.sylow))) ++bad;
  return bad;
}

std::string symalt_name(std::size_t n, bool alternating) {
  return std::string(alternating ? "Alt(" : "Sym(") + std::to_string(n) + ")";
}

BigInt partition_count(std::size_t n, std::size_t k) {
  const std::size_t m = n / k;
  BigInt d = factorial(static_cast<unsigned>(n));
  for (std::size_t i = 0; i < m; ++i) d /= factorial(static_cast<unsigned>(k));
  return d / factorial(static_cast<unsigned>(m));
}

/// Scan an action and compare its qsr primes with an expected set.
void expect_primes(Item& it, const ActionInstance& A, const std::vector<unsigned>& primes,
                   const std::vector<unsigned>& expected, const RunConfig& cfg) {
  const QsrReport r = scan_action(A, primes, scan_options(cfg));
  const auto got = r.qsr_primes();
  it.detail["expected_qsr_primes"] = expected;
  it.detail["scan"] = report_json(r);
  fail_unless(it, got == expected && necessity_violations(r) == 0);
  it.summary = "degree " + std::to_string(A.degree()) + ", qsr at " + prime_set(got) + ", expected " + prime_set(expected);
}

GaloisField field_of_order(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p)
    if (q % p == 0) {
      std::uint32_t f = 0;
      for (std::uint32_t r = q; r > 1; r /= p) ++f;
      return GaloisField::make(p, f);
    }
  throw std::invalid_argument("bad field order");
}

std::uint64_t matrix_order(const GaloisField& F, const MatrixOverField& m) {
  const auto I = MatrixOverField::identity(F, m.dim());
  MatrixOverField p = m;
  for (std::uint64_t e = 1; e <= 4ull * F.size() * F.size(); ++e) {
    if (p == I) return e;
    p = p.multiply(F, m);
  }
  return 0;
}

/// Generators a, b of SL(2,5) inside SL(2,q): a of order 4, b of order 3,
/// ab of order 5 or 10, so that the image in PSL(2,q) is Alt(5).
std::vector<MatrixOverField> sl25_generators(const GaloisField& F) {
  const FieldElement one = F.one(), zero = F.zero(), m1 = F.neg(one);
  const MatrixOverField a(2, {zero, one, m1, zero});
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    const FieldElement fx = F.element(x);
    const FieldElement w = F.sub(m1, fx);
    for (std::uint32_t y = 1; y < F.size(); ++y) {
      const FieldElement fy = F.element(y);
      const FieldElement z = F.mul(F.sub(F.mul(fx, w), one), F.inv(fy));
      const MatrixOverField b(2, {fx, fy, z, w});
      if (matrix_order(F, b) != 3) continue;
      const auto ab = matrix_order(F, a.multiply(F, b));
      if (ab == 5 || ab == 10) return {a, b};
    }
  }
  throw InternalConsistencyError("no SL(2,5) generators in SL(2," + std::to_string(F.size()) + ")");
}

ActionInstance restrict_to_nonzero(const ActionInstance& A) {
  // The linear group fixes the zero vector (point 0); drop it.
  std::vector<Permutation> gens;
  for (const auto& g : A.image.generators()) {
    std::vector<Point> img(g.degree() - 1);
    for (Point x = 1; x < g.degree(); ++x) img[x - 1] = g(x) - 1;
    gens.emplace_back(std::move(img));
  }
  return natural_action(PermGroup(A.degree() - 1, std::move(gens)), A.name + " on nonzero vectors");
}

const std::vector<ExpectedRow> kExpected = {
    {"M11", "A6.2_3", {{5, 1}}},
    {"M11", "L2(11)", {{11, 2}}},
    {"M11", "3^2:Q8.2", {{3, 1}}},
    {"M11", "A5.2", {{5, 1}}},
    {"M11", "2.S4", {}},
    {"M12", "M11", {{11, 2}}},
    {"M12", "M11'", {{11, 2}}},
    {"M12", "A6.2^2", {{5, 1}}},
    {"M12", "A6.2^2'", {{5, 1}}},
    {"M12", "L2(11)", {{11, 2}}},
    {"M12", "2xS5", {{5, 1}}},
    {"M12", "3^2:2S4", {}},
    {"M12.2", "L2(11).2", {{11, 1}}},
    {"M12.2", "L2(11).2'", {{11, 1}}},
    {"M12.2", "(2^2xA5):2", {{5, 1}}},
    {"M22", "L3(4)", {{7, 2}}},
    {"M22", "A7", {{5, 1}, {7, 2}}},
    {"M22", "A7'", {{5, 1}, {7, 2}}},
    {"M22", "2^4:S5", {{5, 1}}},
    {"M22", "2^3:L3(2)", {{7, 2}}},
    {"M22", "A6.2_3", {{5, 1}}},
    {"M22", "L2(11)", {{11, 2}}},
    {"M22", "2^4:A6", {}},
    {"M22.2", "L3(4).2_2", {{7, 2}}},
    {"M22.2", "2^5.S5", {{5, 1}}},
    {"M22.2", "2x2^3:L3(2)", {{7, 2}}},
    {"M22.2", "A6.2^2", {{5, 1}}},
    {"M22.2", "L2(11).2", {{11, 1}}},
    {"M23", "M22", {{11, 2}}},
    {"M23", "L3(4).2_2", {{7, 2}}},
    {"M23", "2^4:A7", {{7, 2}}},
    {"M23", "A8", {{5, 1}}},
    {"M23", "M11", {{11, 2}}},
    {"M23", "2^4:(3xA5).2", {{5, 1}}},
    {"M23", "23:11", {{23, 2}}},
};

bool is_qsr_element(const Permutation& g) { return !g.is_identity() && is_qsr_image(g, g.order()); }

}  // namespace

std::string library_version() { return QSRLAB_VERSION; }

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Warn: return "WARN";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    case Status::Error: return "ERROR";
  }
  return "?";
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [s](const Item& i) { return i.status == s; }));
}

int Report::exit_code() const {
  if (count(Status::Error) + count(Status::Skip) > 0) return 2;
  return count(Status::Fail) > 0 ? 1 : 0;
}

Item run_item(const std::string& id, const RunConfig& cfg, const std::function<void(Item&)>& body) {
  (void)cfg;
  Item it;
  it.id = id;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(it);
  } catch (const BudgetExceeded& e) {
    it.status = Status::Skip;
    it.summary = std::string("budget: ") + e.what();
  } catch (const DatasetError& e) {
    it.status = Status::Error;
    it.summary = std::string("dataset: ") + e.what();
  }
  it.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return it;
}

// ---- Sym/Alt tables ------------------------------------------------------

Item symalt_item(std::size_t n, SymAltFamily family, std::size_t k, bool alternating, const RunConfig& cfg) {
  const bool subsets = family == SymAltFamily::Subsets;
  const std::string id = symalt_name(n, alternating) + (subsets ? "/subsets k=" : "/partitions k=") + std::to_string(k);
  return run_item(id, cfg, [&](Item& it) {
    require_degree(subsets ? binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) : partition_count(n, k), cfg);
    const PermGroup G = make_sym_alt(n, alternating);
    const ActionInstance A = subsets ? ksubset_action(G, k) : partition_action(G, k);
    const QsrReport r = scan_action(A, primes_up_to(static_cast<unsigned>(n)), scan_options(cfg));
    const auto predicted = predict_sym_alt(n, family, k, alternating);
    std::size_t mismatches = 0;
    std::vector<unsigned> got, want;
    json rows = json::array();
    for (const auto& pr : predicted) {
      const PrimeVerdict& v = r.verdict(pr.prime);
      std::set<std::string> types;
      for (const auto& c : v.classes)
        if (c.qsr) types.insert(c.source_cycle_type);
      const bool match = v.exists == pr.exists && types == pr.cycle_types;
      mismatches += !match;
      if (v.exists) got.push_back(pr.prime);
      if (pr.exists) want.push_back(pr.prime);
      rows.push_back({{"p", pr.prime},
                      {"predicted", pr.exists},
                      {"computed", v.exists},
                      {"predicted_types", pr.cycle_types},
                      {"computed_types", types},
                      {"match", match}});
    }
    it.detail["degree"] = A.degree();
    it.detail["certified"] = r.certified;
    it.detail["mismatches"] = mismatches;
    it.detail["primes"] = std::move(rows);
    fail_unless(it, mismatches == 0 && r.certified && necessity_violations(r) == 0);
    it.summary = "degree " + std::to_string(A.degree()) + ", qsr at " + prime_set(got) + ", predicted " + prime_set(want);
  });
}

std::vector<Item> symalt_items(std::size_t n, const RunConfig& cfg, std::optional<SymAltFamily> only,
                               std::optional<bool> alternating) {
  std::vector<Item> out;
  for (bool alt : {false, true}) {
    if (alternating && *alternating != alt) continue;
    if (!only || *only == SymAltFamily::Subsets)
      for (std::size_t k = 1; 2 * k < n; ++k) out.push_back(symalt_item(n, SymAltFamily::Subsets, k, alt, cfg));
    if (!only || *only == SymAltFamily::Partitions)
      for (std::size_t k = 2; 2 * k <= n; ++k)
        if (n % k == 0) out.push_back(symalt_item(n, SymAltFamily::Partitions, k, alt, cfg));
  }
  return out;
}

Item alt_involution_item(std::size_t n, const RunConfig& cfg) {
  return run_item(symalt_name(n, true) + "/natural p=2", cfg, [&](Item& it) {
    const QsrReport r = scan_action(natural_action(make_sym_alt(n, true), symalt_name(n, true)), {2}, scan_options(cfg));
    const bool got = r.verdict(2).exists;
    const bool want = n % 4 == 1;
    it.detail["n_mod_4"] = n % 4;
    it.detail["computed"] = got;
    it.detail["expected"] = want;
    fail_unless(it, got == want);
    it.summary = std::string("qsr involution ") + (got ? "exists" : "absent") + ", n = " + std::to_string(n % 4) +
                 " (mod 4)";
  });
}

std::vector<Item> exceptional_alt_items(const RunConfig& cfg) {
  struct Row {
    std::size_t n;
    std::string name;
    std::string printed_index;
    unsigned p;
  };
  const std::vector<Row> rows = {{7, "PSL(3,2)", "120", 7},
                                 {8, "AGL(3,2)", "120", 7},
                                 {9, "PGammaL(2,8)", "280", 7},
                                 {11, "M11", "362880", 11},
                                 {12, "M12", "362880", 11}};
  std::vector<Item> out;
  for (const auto& row : rows)
    out.push_back(run_item(symalt_name(row.n, true) + "/" + row.name, cfg, [&](Item& it) {
      PermGroup H;
      if (row.n == 7 || row.n == 8) {
        const auto F = GaloisField::make(2, 1);
        const FieldElement o = F.one(), z = F.zero();
        const std::vector<MatrixOverField> gl = {MatrixOverField(3, {z, o, z, z, z, o, o, o, z}),
                                                 MatrixOverField(3, {o, o, z, z, o, z, z, z, o})};
        const ActionInstance lin = affine_perm_action(3, F, gl, 0, row.n == 8);
        H = row.n == 7 ? restrict_to_nonzero(lin).image : lin.image;
      } else if (row.n == 9) {
        H = projective_line_action(GaloisField::make(2, 3), ProjectiveKind::PGammaL).image;
      } else {
        H = load_group(row.name, cfg).group;
      }
      const PermGroup G = make_sym_alt(row.n, true);
      if (!H.is_subgroup_of(G)) throw InternalConsistencyError(row.name + " is not inside " + symalt_name(row.n, true));
      const BigInt index = G.order() / H.order();
      require_degree(index, cfg);
      it.detail["subgroup_order"] = H.order().str();
      it.detail["index"] = index.str();
      it.detail["printed_index"] = row.printed_index;
      const ActionInstance A = coset_action(G, H, cfg.budgets.max_degree);
      expect_primes(it, A, prime_divisors(G.order()), {row.p}, cfg);
      it.summary += ", index " + index.str();
      if (it.status == Status::Pass && index.str() != row.printed_index) {
        it.status = Status::Warn;
        it.summary += " (table prints " + row.printed_index + ")";
      }
    }));
  return out;
}

std::vector<Item> alt6_items(const RunConfig& cfg) {
  std::vector<Item> out;
  out.push_back(run_item("PSL(2,9) degree 10", cfg, [&](Item& it) {
    const auto A = projective_line_action(GaloisField::make(3, 2), ProjectiveKind::PSL);
    expect_primes(it, A, {2, 3, 5}, {3}, cfg);
  }));
  out.push_back(run_item("PGL(2,9) degree 36", cfg, [&](Item& it) {
    const PermGroup G = projective_line_action(GaloisField::make(3, 2), ProjectiveKind::PGL).image;
    const auto fives = conjugacy_classes(G, 5u, class_options(cfg));
    const PermGroup N = normalizer_of_cyclic(G, fives.classes.at(0).representative);
    it.detail["stabilizer_order"] = N.order().str();
    const ActionInstance A = coset_action(G, N, cfg.budgets.max_degree);
    expect_primes(it, A, {2, 3, 5}, {5}, cfg);
  }));
  return out;
}

Report run_tables(std::size_t max_n, const RunConfig& cfg) {
  if (max_n < 5 || max_n > 13) throw std::invalid_argument("--max-n must lie in 5..13");
  Report r{"tables", {}};
  auto add = [&](std::vector<Item> items) { std::move(items.begin(), items.end(), std::back_inserter(r.items)); };
  for (std::size_t n = 5; n <= max_n; ++n) add(symalt_items(n, cfg));
  for (std::size_t n = 5; n <= max_n; ++n) r.items.push_back(alt_involution_item(n, cfg));
  for (auto& it : exceptional_alt_items(cfg)) {
    const std::size_t n = std::stoul(it.id.substr(4));
    if (n <= max_n) r.items.push_back(std::move(it));
  }
  add(alt6_items(cfg));
  return r;
}

// ---- Mathieu rows --------------------------------------------------------

std::span<const ExpectedRow> expected_sporadic_rows() { return kExpected; }

std::vector<std::string> sporadic_groups() { return {"M11", "M12", "M12.2", "M22", "M22.2", "M23"}; }

GeneratorDataset load_group(const std::string& name, const RunConfig& cfg) {
  const auto path = cfg.data_dir / (name + ".json");
  if (!std::filesystem::exists(path)) throw DatasetError("missing dataset " + path.string());
  return load_dataset(path);
}

std::vector<Item> sporadic_items(const GeneratorDataset& d, const RunConfig& cfg) {
  std::vector<Item> out;
  const auto primes = prime_divisors(d.order);
  for (const auto& sub : d.subgroups)
    out.push_back(run_item(d.name + "/" + sub.name, cfg, [&](Item& it) {
      require_order(d.order, cfg);
      require_degree(sub.index, cfg);
      const ActionInstance A = coset_action(d.group, sub.group, cfg.budgets.max_degree);
      const QsrReport r = scan_action(A, primes, scan_options(cfg));
      const auto got = qsr_counts(r);
      const auto row = std::find_if(kExpected.begin(), kExpected.end(),
                                    [&](const ExpectedRow& e) { return e.group == d.name && e.subgroup == sub.name; });
      it.detail["index"] = sub.index.str();
      it.detail["computed"] = counts_json(got);
      if (row == kExpected.end()) {
        it.status = Status::Fail;
        it.summary = "qsr " + format_counts(got) + ", no expected row";
      } else {
        it.detail["expected"] = counts_json(row->qsr);
        fail_unless(it, got == row->qsr);
        it.summary = "index " + sub.index.str() + ", qsr " + format_counts(got) + ", expected " + format_counts(row->qsr);
      }
      const std::size_t bad = necessity_violations(r);
      it.detail["necessity_violations"] = bad;
      fail_unless(it, bad == 0 && r.certified);
      it.detail["scan"] = report_json(r);
    }));
  return out;
}

Report run_sporadic(const std::vector<std::string>& only, const RunConfig& cfg) {
  const auto all = sporadic_groups();
  for (const auto& name : only)
    if (std::find(all.begin(), all.end(), name) == all.end()) throw std::invalid_argument("unknown group " + name);
  Report r{"sporadic", {}};
  for (const auto& name : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    std::optional<GeneratorDataset> d;
    Item load = run_item(name, cfg, [&](Item&) { d = load_group(name, cfg); });
    if (!d) {
      r.items.push_back(std::move(load));
      continue;
    }
    auto items = sporadic_items(*d, cfg);
    std::move(items.begin(), items.end(), std::back_inserter(r.items));
  }
  return r;
}

// ---- structural ----------------------------------------------------------

Item product_action_item(std::size_t k, std::size_t l, const RunConfig& cfg) {
  return run_item("Sym(" + std::to_string(k) + ") wr Sym(" + std::to_string(l) + ") product action", cfg, [&](Item& it) {
    const ProductAction P(k, l);
    require_order(P.group().order(), cfg);
    std::size_t elements = 0, qsr = 0, prime_qsr = 0, outside_base = 0, bad_components = 0, composite_outside = 0;
    P.group().for_each_element(cfg.budgets.max_order, [&](const Permutation& g) {
      ++elements;
      if (!is_qsr_element(g)) return true;
      ++qsr;
      const std::uint64_t m = g.order();
      if (!is_prime(m)) {
        composite_outside += !P.in_base_group(g);
        return true;
      }
      ++prime_qsr;
      if (!P.in_base_group(g)) {
        ++outside_base;
        return true;
      }
      for (const auto& h : P.components(g))
        if (h.is_identity() || !is_qsr_image(h, m)) ++bad_components;
      return true;
    });
    it.detail["degree"] = P.group().degree();
    it.detail["elements"] = elements;
    it.detail["qsr_elements"] = qsr;
    it.detail["prime_order_qsr"] = prime_qsr;
    it.detail["prime_order_qsr_outside_base"] = outside_base;
    it.detail["non_qsr_components"] = bad_components;
    it.detail["composite_order_qsr_outside_base"] = composite_outside;
    fail_unless(it, qsr > 0 && prime_qsr > 0 && outside_base == 0 && bad_components == 0 &&
                        BigInt(elements) == P.group().order());
    it.summary = std::to_string(qsr) + " qsr elements (" + std::to_string(prime_qsr) + " of prime order, " +
                 std::to_string(outside_base) + " outside the base group, " + std::to_string(bad_components) +
                 " bad components)";
  });
}

Item product_remark_item(const RunConfig& cfg) {
  return run_item("Sym(5) wr Sym(2) order-4 element", cfg, [&](Item& it) {
    const ProductAction P(5, 2);
    const Permutation h0 = Permutation::from_cycles(5, {{0, 1}});
    const Permutation h1 = Permutation::from_cycles(5, {{2, 3}});
    const Permutation g = P.element({h0, h1}, Permutation::from_cycles(2, {{0, 1}}));
    const Permutation g2 = g * g;
    const std::vector<Point> five_five = {4, 4};
    const bool order4 = g.order() == 4;
    const bool outside = !P.in_base_group(g);
    const bool qsr = is_qsr_image(g, 4);
    const bool square_fixes = g2.fixed_point_count() == 1 && g2(P.encode(five_five)) == P.encode(five_five);
    const bool entries_not_qsr = !is_qsr_element(h0) && !is_qsr_element(h1);
    it.detail["order"] = g.order();
    it.detail["in_base_group"] = !outside;
    it.detail["qsr"] = qsr;
    it.detail["square_fixed_point"] = "(5,5)";
    fail_unless(it, order4 && outside && qsr && square_fixes && is_qsr_image(g2, 2) && entries_not_qsr &&
                        P.group().contains(g));
    it.summary = std::string("order ") + std::to_string(g.order()) + ", outside base group, " +
                 (qsr ? "qsr" : "not qsr") + ", square fixes only (5,5)";
  });
}

std::vector<Item> sd_items(const RunConfig& cfg) {
  std::vector<Item> out;
  const std::vector<std::pair<std::string, PermGroup>> groups = {
      {"Alt(5)", make_sym_alt(5, true)},
      {"PSL(2,7)", projective_line_action(GaloisField::make(7, 1), ProjectiveKind::PSL).image}};
  for (const auto& [name, T] : groups)
    out.push_back(run_item("SD fixed cosets T=" + name, cfg, [&](Item& it) {
      const BigInt order = T.order();
      std::vector<unsigned> ones;
      std::size_t mismatches = 0;
      json rows = json::array();
      for (unsigned k : primes_up_to(13)) {
        const std::uint64_t count = sd_fixed_coset_count(T, k);
        const bool coprime = order % k != 0;
        json row = {{"k", k}, {"count", count}, {"coprime", coprime}};
        mismatches += (count == 1) != coprime;
        if (count == 1) ones.push_back(k);
        // Cross-check against the realised diagonal action when it is small.
        BigInt degree = 1;
        for (unsigned i = 1; i < k; ++i) degree *= order;
        if (degree <= 10000) {
          const ActionInstance A = make_sd_small(T, k);
          const Permutation& sigma = A.image.generators().at(T.generators().size() * k);
          const std::size_t fixed = sigma.fixed_point_count();
          row["realised_fixed_points"] = fixed;
          mismatches += fixed != count;
        }
        rows.push_back(std::move(row));
      }
      it.detail["order"] = order.str();
      it.detail["counts"] = std::move(rows);
      fail_unless(it, mismatches == 0);
      it.summary = "count 1 exactly at k in " + prime_set(ones);
    }));
  return out;
}

std::vector<Item> hs_items(const RunConfig& cfg) {
  std::vector<Item> out;
  const PermGroup T = make_sym_alt(5, true);
  for (bool swap : {false, true})
    for (bool outer : {false, true})
      out.push_back(run_item(std::string("HS(Alt(5)) swap=") + (swap ? "1" : "0") + " outer=" + (outer ? "1" : "0"), cfg,
                             [&](Item& it) {
                               const ActionInstance A = make_hs_type(T, swap, outer);
                               std::size_t elements = 0, qsr = 0, prime_qsr = 0;
                               A.image.for_each_element(cfg.budgets.max_order, [&](const Permutation& g) {
                                 ++elements;
                                 if (is_qsr_element(g)) {
                                   ++qsr;
                                   prime_qsr += is_prime(g.order());
                                 }
                                 return true;
                               });
                               it.detail["degree"] = A.degree();
                               it.detail["order"] = A.image.order().str();
                               it.detail["qsr_elements"] = qsr;
                               it.detail["prime_order_qsr"] = prime_qsr;
                               fail_unless(it, prime_qsr == 0 && BigInt(elements) == A.image.order());
                               it.summary = "order " + A.image.order().str() + ", " + std::to_string(prime_qsr) +
                                            " prime-order qsr elements";
                             }));
  return out;
}

Report run_structural(const RunConfig& cfg) {
  Report r{"structural", {}};
  for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {5, 2}, {3, 3}})
    r.items.push_back(product_action_item(k, l, cfg));
  r.items.push_back(product_remark_item(cfg));
  for (auto& it : sd_items(cfg)) r.items.push_back(std::move(it));
  for (auto& it : hs_items(cfg)) r.items.push_back(std::move(it));
  return r;
}

// ---- affine --------------------------------------------------------------

std::vector<Item> affine_items(const RunConfig& cfg) {
  struct Instance {
    std::string name;
    std::function<ActionInstance()> build;
    bool expect_qsr;
  };
  std::vector<Instance> list;
  for (unsigned p : primes_up_to(29))
    if (p >= 3)
      list.push_back({"AGL(1," + std::to_string(p) + ")", [p] {
                        const auto F = GaloisField::make(p, 1);
                        return affine_perm_action(1, F, {MatrixOverField::scalar(F, 1, F.primitive_element())}, 0, true);
                      },
                      true});
  for (std::uint32_t q : {8u, 9u, 16u, 27u, 32u, 64u})
    list.push_back({"AGammaL(1," + std::to_string(q) + ")", [q] {
                      const auto F = field_of_order(q);
                      return affine_perm_action(1, F, {MatrixOverField::scalar(F, 1, F.primitive_element())}, 1, true);
                    },
                    true});
  for (std::uint32_t q : {5u, 7u, 9u})
    list.push_back({std::to_string(q) + "^2:S0(" + std::to_string(q) + ")", [q] {
                      const auto F = field_of_order(q);
                      const FieldElement w = F.primitive_element();
                      const std::vector<MatrixOverField> gens = {
                          MatrixOverField::diagonal(F, {w, F.inv(w)}),
                          MatrixOverField::diagonal(F, {F.one(), F.neg(F.one())}),
                          MatrixOverField(2, {F.zero(), F.one(), F.one(), F.zero()}),
                      };
                      return affine_perm_action(2, F, gens, 0, true);
                    },
                    true});
  for (std::uint32_t q : {9u, 11u, 19u, 29u})
    list.push_back({std::to_string(q) + "^2:(SL(2,5)oZ" + std::to_string(q - 1) + ")", [q] {
                      const auto F = field_of_order(q);
                      auto gens = sl25_generators(F);
                      if (affine_perm_action(2, F, gens, 0, false).image.order() != 120)
                        throw InternalConsistencyError("SL(2,5) generators generate the wrong group");
                      gens.push_back(MatrixOverField::scalar(F, 2, F.primitive_element()));
                      return affine_perm_action(2, F, gens, 0, true);
                    },
                    true});
  list.push_back({"3^3:Alt(4)", [] {
                    const auto F = GaloisField::make(3, 1);
                    const FieldElement o = F.one(), m = F.neg(o), z = F.zero();
                    const std::vector<MatrixOverField> gens = {MatrixOverField::diagonal(F, {m, m, o}),
                                                               MatrixOverField::diagonal(F, {o, m, m}),
                                                               MatrixOverField(3, {z, o, z, z, z, o, o, z, z})};
                    return affine_perm_action(3, F, gens, 0, true);
                  },
                  false});

  std::vector<Item> out;
  for (const auto& inst : list)
    out.push_back(run_item(inst.name, cfg, [&](Item& it) {
      const ActionInstance A = inst.build();
      require_degree(A.degree(), cfg);
      require_order(A.image.order(), cfg);
      const BigInt order = A.image.order();
      const bool two_transitive = A.image.is_transitive() && A.image.point_stabilizer(0).orbit(1).size() == A.degree() - 1;
      const QsrReport r = scan_action(A, prime_divisors(order), scan_options(cfg));
      const auto primes = r.qsr_primes();
      const bool exists = !primes.empty();
      it.detail["degree"] = A.degree();
      it.detail["order"] = order.str();
      it.detail["two_transitive"] = two_transitive;
      it.detail["expected_qsr"] = inst.expect_qsr;
      it.detail["qsr_primes"] = primes;
      bool ok = exists == inst.expect_qsr && necessity_violations(r) == 0 && r.certified;
      if (!inst.expect_qsr && order <= 100000) {
        // The negative instance is small enough to check every element.
        std::size_t any = 0;
        A.image.for_each_element(order, [&](const Permutation& g) {
          any += is_qsr_element(g);
          return true;
        });
        it.detail["qsr_elements"] = any;
        ok = ok && any == 0;
      }
      fail_unless(it, ok);
      it.summary = "degree " + std::to_string(A.degree()) + (two_transitive ? ", 2-transitive" : "") + ", qsr " +
                   (exists ? "at " + prime_set(primes) : std::string("none")) + (inst.expect_qsr ? "" : " (expected none)");
    }));
  return out;
}

Report run_affine(const RunConfig& cfg) { return {"affine", affine_items(cfg)}; }

// ---- cross-module properties --------------------------------------------

std::vector<std::string> verify_suites() {
  return {"routes", "counting", "subnormaliser", "embedded", "blocks", "predictions"};
}

Item route_agreement_item(const GeneratorDataset& d, const RunConfig& cfg) {
  return run_item(d.name + " route agreement", cfg, [&](Item& it) {
    require_order(d.order, cfg);
    ClassCache cache(d.group);
    std::size_t checks = 0, disagreements = 0;
    json rows = json::array();
    for (const auto& sub : d.subgroups) {
      require_degree(sub.index, cfg);
      const ActionInstance A = coset_action(d.group, sub.group, cfg.budgets.max_degree);
      std::size_t local = 0, bad = 0;
      for (unsigned p : prime_divisors(sub.group.order()))
        for (const auto& c : conjugacy_classes(sub.group, p, class_options(cfg)).classes) {
          const bool direct = is_qsr_direct(A, c.representative).has_value();
          const bool fusion = is_qsr_fusion(d.group, sub.group, c.representative, &cache);
          const bool normalizer = is_qsr_normalizer(d.group, sub.group, c.representative, &cache);
          ++local;
          bad += direct != fusion || direct != normalizer;
        }
      rows.push_back({{"subgroup", sub.name}, {"classes", local}, {"disagreements", bad}});
      checks += local;
      disagreements += bad;
    }
    it.detail["subgroups"] = std::move(rows);
    fail_unless(it, disagreements == 0 && checks > 0);
    it.summary = std::to_string(checks) + " prime-order classes, " + std::to_string(disagreements) + " disagreements";
  });
}

Item counting_item(const GeneratorDataset& d, const RunConfig& cfg) {
  return run_item(d.name + " fixed-point counts", cfg, [&](Item& it) {
    require_order(d.order, cfg);
    ClassCache cache(d.group);
    std::vector<ClassDatum> classes;
    bool certified = true;
    const ClassOptions copt = class_options(cfg);
    if (d.order <= copt.enumeration_limit) {
      auto cl = conjugacy_classes(d.group, std::nullopt, copt);
      classes = std::move(cl.classes);
      certified = cl.certified;
    } else {
      // Sample random elements into the class cache; the list is complete
      // exactly when the class sizes add up to |G|.
      std::mt19937_64 rng(cfg.seed);
      BigInt covered = 0;
      std::size_t stale = 0;
      Permutation next(d.group.degree());
      while (covered < d.order && stale < copt.stale_samples) {
        const std::size_t before = cache.size();
        const ClassOrbit& orbit = cache.orbit_of(next);
        next = d.group.random_element(rng);
        if (cache.size() == before) {
          ++stale;
          continue;
        }
        stale = 0;
        covered += orbit.size();
        classes.push_back({orbit.representative(), BigInt(orbit.size()), orbit.centralizer_order(),
                           orbit.representative().order()});
      }
      certified = covered == d.order;
    }
    std::size_t formula_checks = 0, split_checks = 0, manning_checks = 0, mismatches = 0;
    json rows = json::array();
    for (const auto& sub : d.subgroups) {
      require_degree(sub.index, cfg);
      const ActionInstance A = coset_action(d.group, sub.group, cfg.budgets.max_degree);
      std::size_t bad = 0;
      auto check = [&](auto&& compute, std::size_t expected, std::size_t& counter) {
        ++counter;
        try {
          bad += compute() != expected;
        } catch (const InternalConsistencyError&) {
          ++bad;
        }
      };
      for (const auto& c : classes) {
        const std::size_t direct = A.act(c.representative).fixed_point_count();
        check([&] { return fixed_points_formula(d.group, sub.group, c.representative, &cache); }, direct,
              formula_checks);
        if (certified)
          check([&] { return fixed_points_class_split(d.group, sub.group, c.representative, &cache); }, direct,
                split_checks);
      }
      for (unsigned p : prime_divisors(sub.group.order()))
        for (const auto& c : conjugacy_classes(sub.group, p, copt).classes) {
          const PermGroup K(d.group.degree(), {c.representative});
          const std::size_t direct = common_fixed_points(A, {c.representative});
          check([&] { return fixed_points_manning(d.group, sub.group, K, &cache); }, direct, manning_checks);
        }
      rows.push_back({{"subgroup", sub.name}, {"mismatches", bad}});
      mismatches += bad;
    }
    it.detail["class_list_certified"] = certified;
    it.detail["classes"] = classes.size();
    it.detail["formula_checks"] = formula_checks;
    it.detail["class_split_checks"] = split_checks;
    it.detail["manning_checks"] = manning_checks;
    it.detail["subgroups"] = std::move(rows);
    fail_unless(it, mismatches == 0 && formula_checks > 0 && manning_checks > 0);
    it.summary = std::to_string(formula_checks) + " formula, " + std::to_string(split_checks) + " class-split, " +
                 std::to_string(manning_checks) + " Manning checks, " + std::to_string(mismatches) + " mismatches" +
                 (certified ? "" : " (class list incomplete; class split skipped)");
  });
}

Item subnormaliser_item(const GeneratorDataset& d, const RunConfig& cfg) {
  return run_item(d.name + " subnormaliser criterion", cfg, [&](Item& it) {
    std::size_t checks = 0, qsr = 0, mismatches = 0;
    json rows = json::array();
    for (const auto& sub : d.subgroups) {
      const ActionInstance A = coset_action(d.group, sub.group, cfg.budgets.max_degree);
      for (unsigned p : prime_divisors(sub.group.order()))
        for (const auto& c : conjugacy_classes(sub.group, p, class_options(cfg)).classes) {
          const bool is_qsr = is_qsr_direct(A, c.representative).has_value();
          const PermGroup S = subnormaliser(d.group, c.representative);
          const bool inside = S.is_subgroup_of(sub.group);
          ++checks;
          qsr += is_qsr;
          mismatches += is_qsr != inside;
          rows.push_back({{"subgroup", sub.name},
                          {"p", p},
                          {"qsr", is_qsr},
                          {"subnormaliser_order", S.order().str()},
                          {"inside", inside}});
        }
    }
    it.detail["checks"] = std::move(rows);
    fail_unless(it, mismatches == 0 && checks > 0);
    it.summary = std::to_string(checks) + " classes (" + std::to_string(qsr) + " qsr), " + std::to_string(mismatches) +
                 " mismatches";
  });
}

Item m12_subnormaliser_item(const RunConfig& cfg) {
  return run_item("M12 subnormaliser of an 11-element", cfg, [&](Item& it) {
    const auto d = load_group("M12", cfg);
    const auto x = conjugacy_classes(d.group, 11u, class_options(cfg)).classes.at(0).representative;
    const PermGroup S = subnormaliser(d.group, x);
    it.detail["order"] = S.order().str();
    fail_unless(it, S.order() == 55);
    it.summary = "order " + S.order().str() + ", expected 55";
  });
}

std::vector<Item> embedded_items(const RunConfig& cfg) {
  struct Case {
    std::string name;
    PermGroup G;
    PermGroup H;
    unsigned p;
  };
  const PermGroup a6 = projective_line_action(GaloisField::make(3, 2), ProjectiveKind::PSL).image;
  const PermGroup a5 = make_sym_alt(5, true);
  const PermGroup s4 = make_sym_alt(4, false);
  const Permutation five = Permutation::from_cycles(5, {{0, 1, 2, 3, 4}});
  const std::vector<Case> cases = {{"Alt(6) > 3^2:4, p=3", a6, a6.point_stabilizer(0), 3},
                                   {"Alt(5) > D10, p=5", a5, normalizer_of_cyclic(a5, five), 5},
                                   {"Sym(4) > Sym(3), p=3", s4, s4.point_stabilizer(3), 3}};
  std::vector<Item> out;
  for (const auto& c : cases)
    out.push_back(run_item(c.name, cfg, [&](Item& it) {
      const bool embedded = is_strongly_p_embedded(c.G, c.H, c.p);
      const ActionInstance A = coset_action(c.G, c.H, cfg.budgets.max_degree);
      std::size_t elements = 0, qsr = 0;
      c.H.for_each_element(cfg.budgets.max_order, [&](const Permutation& h) {
        if (h.order() != c.p) return true;
        ++elements;
        qsr += is_qsr_direct(A, h).has_value();
        return true;
      });
      it.detail["stabilizer_order"] = c.H.order().str();
      it.detail["strongly_embedded"] = embedded;
      it.detail["order_p_elements"] = elements;
      it.detail["qsr"] = qsr;
      fail_unless(it, embedded && elements > 0 && qsr == elements);
      it.summary = std::string(embedded ? "strongly embedded" : "not strongly embedded") + ", " + std::to_string(qsr) +
                   "/" + std::to_string(elements) + " order-" + std::to_string(c.p) + " elements qsr on " +
                   std::to_string(A.degree()) + " cosets";
    }));
  return out;
}

std::vector<Item> block_items(const RunConfig& cfg) {
  std::vector<std::pair<std::string, PermGroup>> groups;
  for (std::size_t n : {9u, 15u, 21u, 25u, 27u}) {
    std::vector<Permutation> gens;
    std::vector<Point> shift(n);
    for (Point x = 0; x < n; ++x) shift[x] = static_cast<Point>((x + 1) % n);
    gens.emplace_back(shift);
    for (std::size_t u = 2; u < n; ++u) {
      if (std::gcd(u, n) != 1) continue;
      std::vector<Point> img(n);
      for (Point x = 0; x < n; ++x) img[x] = static_cast<Point>((u * x) % n);
      gens.emplace_back(img);
    }
    groups.emplace_back("Hol(Z" + std::to_string(n) + ")", PermGroup(n, gens));
  }
  const ProductAction P(3, 2);
  const PermGroup s3 = make_sym_alt(3, false);
  std::vector<Permutation> base;
  for (const auto& h : s3.generators()) {
    base.push_back(P.element({h, Permutation(3)}, Permutation(2)));
    base.push_back(P.element({Permutation(3), h}, Permutation(2)));
  }
  groups.emplace_back("Sym(3) x Sym(3) on 9 points", PermGroup(9, base));

  std::vector<Item> out;
  for (const auto& [name, G] : groups)
    out.push_back(run_item(name + " block inheritance", cfg, [&](Item& it) {
      const ActionInstance A = natural_action(G, name);
      const auto systems = block_systems(A, false);
      std::vector<ActionInstance> induced;
      for (const auto& s : systems) induced.push_back(induced_block_action(A, s));
      std::size_t qsr = 0, checks = 0, violations = 0;
      G.for_each_element(cfg.budgets.max_order, [&](const Permutation& g) {
        if (!is_qsr_element(g)) return true;
        ++qsr;
        for (const auto& B : induced) {
          ++checks;
          violations += !is_qsr_image(B.act(g), g.order());
        }
        return true;
      });
      it.detail["block_systems"] = systems.size();
      it.detail["qsr_elements"] = qsr;
      it.detail["checks"] = checks;
      it.detail["violations"] = violations;
      fail_unless(it, !systems.empty() && qsr > 0 && violations == 0);
      it.summary = std::to_string(systems.size()) + " block systems, " + std::to_string(qsr) + " qsr elements, " +
                   std::to_string(violations) + " violations";
    }));
  return out;
}

Report run_verify(const std::string& suite, const RunConfig& cfg) {
  const auto names = verify_suites();
  if (!suite.empty() && suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown suite " + suite);
  Report r{"verify", {}};
  auto wanted = [&](const std::string& s) { return suite.empty() || suite == "all" || suite == s; };
  auto add = [&](std::vector<Item> items) { std::move(items.begin(), items.end(), std::back_inserter(r.items)); };
  auto per_group = [&](const std::vector<std::string>& groups, Item (*f)(const GeneratorDataset&, const RunConfig&)) {
    for (const auto& name : groups) {
      std::optional<GeneratorDataset> d;
      Item load = run_item(name, cfg, [&](Item&) { d = load_group(name, cfg); });
      r.items.push_back(d ? f(*d, cfg) : std::move(load));
    }
  };
  if (wanted("routes")) per_group(sporadic_groups(), route_agreement_item);
  if (wanted("counting")) per_group(sporadic_groups(), counting_item);
  if (wanted("subnormaliser")) {
    per_group({"M11", "M12"}, subnormaliser_item);
    r.items.push_back(m12_subnormaliser_item(cfg));
  }
  if (wanted("embedded")) add(embedded_items(cfg));
  if (wanted("blocks")) add(block_items(cfg));
  if (wanted("predictions"))
    for (std::size_t n = 5; n <= 9; ++n) add(symalt_items(n, cfg));
  return r;
}

// ---- output --------------------------------------------------------------

std::string format_text(const Report& r, const RunConfig& cfg) {
  std::ostringstream os;
  os << "qsrlab " << library_version() << "  suite " << r.suite << "  seed " << cfg.seed << "  max-degree "
     << cfg.budgets.max_degree << "  max-order " << cfg.budgets.max_order << "\n\n";
  std::size_t width = 4;
  for (const auto& it : r.items) width = std::max(width, it.id.size());
  for (const auto& it : r.items) {
    os << std::left << std::setw(6) << to_string(it.status) << std::setw(static_cast<int>(width) + 2) << it.id
       << it.summary;
    if (cfg.timing) os << "  [" << std::fixed << std::setprecision(2) << it.seconds << " s]";
    os << "\n";
  }
  os << "\n"
     << r.count(Status::Pass) << " pass, " << r.count(Status::Warn) << " warn, " << r.count(Status::Fail) << " fail, "
     << r.count(Status::Skip) << " skip, " << r.count(Status::Error) << " error\n";
  return os.str();
}

std::string format_jsonl(const Report& r, const RunConfig& cfg) {
  std::ostringstream os;
  json head;
  head["record"] = "header";
  head["suite"] = r.suite;
  head["version"] = library_version();
  head["seed"] = cfg.seed;
  head["budgets"] = {{"max_degree", cfg.budgets.max_degree}, {"max_order", cfg.budgets.max_order.str()}};
  head["timing"] = cfg.timing;
  os << head.dump() << "\n";
  for (const auto& it : r.items) {
    json j;
    j["record"] = "item";
    j["suite"] = r.suite;
    j["id"] = it.id;
    j["status"] = to_string(it.status);
    j["summary"] = it.summary;
    j["wall_ms"] = cfg.timing ? static_cast<std::int64_t>(std::llround(it.seconds * 1000)) : 0;
    j["detail"] = it.detail;
    os << j.dump() << "\n";
  }
  json foot;
  foot["record"] = "footer";
  foot["suite"] = r.suite;
  foot["version"] = library_version();
  foot["seed"] = cfg.seed;
  for (Status s : {Status::Pass, Status::Warn, Status::Fail, Status::Skip, Status::Error})
    foot[to_string(s)] = r.count(s);
  foot["exit_code"] = r.exit_code();
  os << foot.dump() << "\n";
  return os.str();
}

}  // namespace qsrlab::harness
