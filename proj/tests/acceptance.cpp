#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "qsrlab/harness.hpp"

using namespace qsrlab;
using namespace qsrlab::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

std::size_t failures(const std::vector<Item>& items) {
  std::size_t bad = 0;
  for (const auto& it : items) {
    if (it.status != Status::Pass && it.status != Status::Warn) {
      ++bad;
      std::cerr << "  " << to_string(it.status) << " " << it.id << ": " << it.summary << "\n";
    }
  }
  return bad;
}

void append(std::vector<Item>& to, std::vector<Item> from) {
  for (auto& it : from) to.push_back(std::move(it));
}

std::string type_string(std::size_t p, std::size_t fixed, std::size_t cycles) {
  std::string s;
  if (fixed > 0) s = "1^" + std::to_string(fixed);
  if (cycles > 0) s += (s.empty() ? "" : " ") + std::to_string(p) + "^" + std::to_string(cycles);
  return s;
}

/// Compare the per-prime rows of a Sym/Alt item with an expected verdict and
/// type set computed here from the statement.
std::size_t statement_mismatches(const Item& it,
                                 const std::function<std::pair<bool, std::set<std::string>>(unsigned)>& expect) {
  std::size_t bad = 0;
  for (const auto& row : it.detail.at("primes")) {
    const unsigned p = row.at("p").get<unsigned>();
    const auto [exists, types] = expect(p);
    const auto got_types = row.at("computed_types").get<std::set<std::string>>();
    if (row.at("computed").get<bool>() != exists || (exists && !types.empty() && got_types != types)) {
      ++bad;
      std::cerr << "  " << it.id << " p=" << p << " disagrees with the statement\n";
    }
  }
  return bad;
}

int report(int n, const std::string& title, const Outcome& o, double seconds) {
  std::printf("criterion %2d %s  %s: %s [%.1f s]\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.note.c_str(),
              seconds);
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

int run(int n, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  return report(n, title, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.data_dir = QSRLAB_DATA_DIR;
  int failed = 0;

  failed += run(1, "Sym(n) on k-subsets, 5 <= n <= 13", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Item> items;
    std::size_t bad = 0;
    for (std::size_t n = 5; n <= 13; ++n)
      for (auto& it : symalt_items(n, cfg, SymAltFamily::Subsets, false)) {
        const std::size_t k = std::stoul(it.id.substr(it.id.find("k=") + 2));
        bad += statement_mismatches(it, [&](unsigned p) {
          const bool yes = k < p && (n - k) % p == 0;
          return std::pair{yes, yes ? std::set<std::string>{type_string(p, k, (n - k) / p)} : std::set<std::string>{}};
        });
        items.push_back(std::move(it));
      }
    bad += failures(items);
    const double secs = elapsed_since(t0);
    return Outcome{bad == 0 && secs < 300,
                   std::to_string(items.size()) + " actions, " + std::to_string(bad) + " mismatches, " +
                       std::to_string(static_cast<int>(secs)) + " s of 300 s"};
  });

  failed += run(2, "Sym(n)/Alt(n) on partitions, 6 <= n <= 12", [&] {
    std::vector<Item> items;
    std::size_t bad = 0;
    for (std::size_t n = 6; n <= 12; ++n)
      for (auto& it : symalt_items(n, cfg, SymAltFamily::Partitions)) {
        const std::size_t k = std::stoul(it.id.substr(it.id.find("k=") + 2));
        const std::size_t m = n / k;
        bad += statement_mismatches(it, [&](unsigned p) {
          const bool yes = p % 2 == 1 && k == p && m >= 2 && m <= p;
          std::set<std::string> types;
          if (yes) {
            types.insert(type_string(p, p, m - 1));
            if (m < p) types.insert(type_string(p, 0, m));
          }
          return std::pair{yes, types};
        });
        items.push_back(std::move(it));
      }
    bad += failures(items);
    return Outcome{bad == 0, std::to_string(items.size()) + " actions, " + std::to_string(bad) + " mismatches"};
  });

  failed += run(3, "Alt(n) natural action has a qsr involution iff n = 1 (mod 4), n <= 13", [&] {
    std::vector<Item> items;
    for (std::size_t n = 5; n <= 13; ++n) items.push_back(alt_involution_item(n, cfg));
    const std::size_t bad = failures(items);
    return Outcome{bad == 0, std::to_string(items.size()) + " degrees, " + std::to_string(bad) + " mismatches"};
  });

  failed += run(4, "Alt(6)-socle actions of degree 10 and 36", [&] {
    const auto items = alt6_items(cfg);
    return Outcome{failures(items) == 0, items[0].summary + "; " + items[1].summary};
  });

  failed += run(5, "Mathieu rows for M11, M12, M22, M23", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Item> items;
    for (const char* g : {"M11", "M12", "M22", "M23"}) append(items, sporadic_items(load_group(g, cfg), cfg));
    const std::size_t bad = failures(items);
    const double secs = elapsed_since(t0);
    return Outcome{bad == 0 && items.size() == 27 && secs < 900,
                   std::to_string(items.size()) + " rows, " + std::to_string(bad) + " mismatches, " +
                       std::to_string(static_cast<int>(secs)) + " s of 900 s"};
  });

  failed += run(6, "route agreement on the Mathieu coset actions", [&] {
    std::vector<Item> items;
    for (const char* g : {"M11", "M12", "M22", "M23"}) items.push_back(route_agreement_item(load_group(g, cfg), cfg));
    std::string note;
    for (const auto& it : items) note += (note.empty() ? "" : "; ") + it.id.substr(0, it.id.find(' ')) + " " + it.summary;
    return Outcome{failures(items) == 0, note};
  });

  failed += run(7, "fixed-point counts on every class of every corpus action", [&] {
    std::vector<Item> items;
    std::size_t formula = 0, manning = 0;
    bool complete = true;
    for (const auto& g : sporadic_groups()) {
      Item it = counting_item(load_group(g, cfg), cfg);
      if (it.status == Status::Pass) {
        formula += it.detail.at("formula_checks").get<std::size_t>();
        manning += it.detail.at("manning_checks").get<std::size_t>();
        complete = complete && it.detail.at("class_list_certified").get<bool>();
      }
      items.push_back(std::move(it));
    }
    const std::size_t bad = failures(items);
    return Outcome{bad == 0 && complete, std::to_string(formula) + " class checks, " + std::to_string(manning) +
                                             " cyclic-subgroup checks, class lists " +
                                             (complete ? "complete" : "incomplete") + ", " + std::to_string(bad) +
                                             " failing groups"};
  });

  failed += run(8, "product actions Sym(k) wr Sym(l)", [&] {
    std::vector<Item> items;
    for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 2}, {5, 2}, {3, 3}})
      items.push_back(product_action_item(k, l, cfg));
    items.push_back(product_remark_item(cfg));
    std::size_t prime_qsr = 0;
    for (const auto& it : items)
      if (it.detail.contains("prime_order_qsr")) prime_qsr += it.detail.at("prime_order_qsr").get<std::size_t>();
    return Outcome{failures(items) == 0, std::to_string(prime_qsr) +
                                             " prime-order qsr elements, all in the base group with qsr components; " +
                                             items.back().summary};
  });

  failed += run(9, "simple diagonal fixed-coset counts", [&] {
    const auto items = sd_items(cfg);
    return Outcome{failures(items) == 0, items[0].summary + " (Alt(5)); " + items[1].summary + " (PSL(2,7))"};
  });

  failed += run(10, "HS(Alt(5)) on 60 points, four flag settings", [&] {
    const auto items = hs_items(cfg);
    std::size_t qsr = 0;
    for (const auto& it : items) qsr += it.detail.value("prime_order_qsr", std::size_t{1});
    return Outcome{failures(items) == 0 && items.size() == 4,
                   std::to_string(items.size()) + " groups, " + std::to_string(qsr) + " prime-order qsr elements"};
  });

  failed += run(11, "affine instances of degree <= 841", [&] {
    const auto items = affine_items(cfg);
    std::size_t two_transitive = 0, with_qsr = 0, negative_ok = 0;
    bool all_two_transitive_qsr = true;
    for (const auto& it : items) {
      const bool tt = it.detail.value("two_transitive", false);
      const bool has = !it.detail.value("qsr_primes", std::vector<unsigned>{}).empty();
      two_transitive += tt;
      with_qsr += has;
      if (tt && !has) all_two_transitive_qsr = false;
      if (it.id == "3^3:Alt(4)" && it.status == Status::Pass && !has) ++negative_ok;
    }
    return Outcome{failures(items) == 0 && all_two_transitive_qsr && negative_ok == 1 && two_transitive > 0,
                   std::to_string(items.size()) + " instances (" + std::to_string(two_transitive) +
                       " 2-transitive), " + std::to_string(with_qsr) + " with qsr, 3^3:Alt(4) " +
                       (negative_ok ? "none" : "WRONG")};
  });

  failed += run(12, "qsr iff subnormaliser inside the stabilizer (M11, M12)", [&] {
    std::vector<Item> items;
    for (const char* g : {"M11", "M12"}) items.push_back(subnormaliser_item(load_group(g, cfg), cfg));
    items.push_back(m12_subnormaliser_item(cfg));
    return Outcome{failures(items) == 0, items[0].summary + " (M11); " + items[1].summary + " (M12); subnormaliser " +
                                             items[2].summary};
  });

  failed += run(13, "strongly 3-embedded subgroup of Alt(6)", [&] {
    const auto items = embedded_items(cfg);
    const Item& a6 = items.at(0);
    return Outcome{a6.status == Status::Pass && a6.id.rfind("Alt(6)", 0) == 0, a6.summary};
  });

  std::printf("%d of 13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
