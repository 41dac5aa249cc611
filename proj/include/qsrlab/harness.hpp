#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsrlab/bigint.hpp"
#include "qsrlab/dataset.hpp"
#include "qsrlab/qsr.hpp"

namespace qsrlab::harness {

std::string library_version();

struct Budgets {
  std::size_t max_degree = 1000000;
  BigInt max_order = 1000000000;
};

struct RunConfig {
  std::filesystem::path data_dir;
  std::uint64_t seed = 1;
  Budgets budgets;
  /// Record wall time per item. Turning it off makes structured output
  /// byte-identical across reruns.
  bool timing = true;
};

enum class Status { Pass, Warn, Fail, Skip, Error };
std::string to_string(Status s);

/// One checked instance: a row of a table, a theorem instance, a property run.
struct Item {
  std::string id;
  Status status = Status::Pass;
  std::string summary;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  double seconds = 0;
};

struct Report {
  std::string suite;
  std::vector<Item> items;

  std::size_t count(Status s) const;
  /// 2 when an item could not run (missing data, budget), else 1 on any
  /// mismatch, else 0.
  int exit_code() const;
};

/// Run `body` and time it. Budget violations become Skip items and dataset
/// problems Error items; other exceptions propagate.
Item run_item(const std::string& id, const RunConfig& cfg, const std::function<void(Item&)>& body);

// ---- Sym/Alt tables ------------------------------------------------------

/// Scan of Sym(n)/Alt(n) on k-subsets or k-partitions against predict_sym_alt:
/// per prime verdict and, for qsr primes, the set of source cycle types.
Item symalt_item(std::size_t n, SymAltFamily family, std::size_t k, bool alternating, const RunConfig& cfg);
/// Every (family, k, variant) instance for one n, in a fixed order.
std::vector<Item> symalt_items(std::size_t n, const RunConfig& cfg, std::optional<SymAltFamily> only = std::nullopt,
                               std::optional<bool> alternating = std::nullopt);
/// Alt(n) on n points has a qsr involution iff n = 1 (mod 4).
Item alt_involution_item(std::size_t n, const RunConfig& cfg);
/// Alt(n) on cosets of the exceptional subgroups PSL(3,2), AGL(3,2),
/// PGammaL(2,8), M11, M12 for n = 7, 8, 9, 11, 12.
std::vector<Item> exceptional_alt_items(const RunConfig& cfg);
/// The two Alt(6)-socle actions of degree 10 and 36.
std::vector<Item> alt6_items(const RunConfig& cfg);

Report run_tables(std::size_t max_n, const RunConfig& cfg);

// ---- Mathieu rows --------------------------------------------------------

struct ExpectedRow {
  std::string group;
  std::string subgroup;
  /// prime -> number of qsr G-classes of that order
  std::map<unsigned, std::size_t> qsr;
};
std::span<const ExpectedRow> expected_sporadic_rows();
std::vector<std::string> sporadic_groups();

GeneratorDataset load_group(const std::string& name, const RunConfig& cfg);
/// One item per maximal subgroup in the dataset, diffed against the table.
std::vector<Item> sporadic_items(const GeneratorDataset& d, const RunConfig& cfg);
Report run_sporadic(const std::vector<std::string>& only, const RunConfig& cfg);

// ---- structural ----------------------------------------------------------

/// Exhaustive scan of Sym(k) wr Sym(l) in product action.
Item product_action_item(std::size_t k, std::size_t l, const RunConfig& cfg);
/// The order-4 element of Sym(5) wr Sym(2) outside the base group.
Item product_remark_item(const RunConfig& cfg);
/// Fixed cosets of the k-cycle on the diagonal cosets of T^k, for prime k <= 13.
std::vector<Item> sd_items(const RunConfig& cfg);
/// HS-type group on Alt(5) under the four generator-flag settings.
std::vector<Item> hs_items(const RunConfig& cfg);
Report run_structural(const RunConfig& cfg);

// ---- affine --------------------------------------------------------------

std::vector<Item> affine_items(const RunConfig& cfg);
Report run_affine(const RunConfig& cfg);

// ---- cross-module properties --------------------------------------------

std::vector<std::string> verify_suites();
/// Direct, fusion and normalizer routes on every prime-order class of every
/// coset action of the dataset.
Item route_agreement_item(const GeneratorDataset& d, const RunConfig& cfg);
/// Fixed-point formula, class split and Manning counts against realised
/// fixed points on every coset action of the dataset.
Item counting_item(const GeneratorDataset& d, const RunConfig& cfg);
/// qsr iff the subnormaliser lies in the stabilizer, over every prime-order
/// class of every stabilizer (|G| <= 10^6).
Item subnormaliser_item(const GeneratorDataset& d, const RunConfig& cfg);
Item m12_subnormaliser_item(const RunConfig& cfg);
std::vector<Item> embedded_items(const RunConfig& cfg);
/// A qsr element stays qsr on every block system it induces on.
std::vector<Item> block_items(const RunConfig& cfg);
Report run_verify(const std::string& suite, const RunConfig& cfg);

// ---- output --------------------------------------------------------------

std::string format_text(const Report& r, const RunConfig& cfg);
std::string format_jsonl(const Report& r, const RunConfig& cfg);

}  // namespace qsrlab::harness
