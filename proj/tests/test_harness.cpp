#include <set>

#include "doctest.h"
#include "qsrlab/errors.hpp"
#include "qsrlab/harness.hpp"

using namespace qsrlab;
using namespace qsrlab::harness;

namespace {

RunConfig config() {
  RunConfig cfg;
  cfg.data_dir = QSRLAB_DATA_DIR;
  return cfg;
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::size_t start = 0;
  for (std::size_t end; (end = text.find('\n', start)) != std::string::npos; start = end + 1)
    out.push_back(nlohmann::json::parse(text.substr(start, end - start)));
  return out;
}

}  // namespace

TEST_CASE("exit codes") {
  Report r{"x", {}};
  CHECK(r.exit_code() == 0);
  r.items.push_back({"a", Status::Warn, "", {}, 0});
  CHECK(r.exit_code() == 0);
  r.items.push_back({"b", Status::Fail, "", {}, 0});
  CHECK(r.exit_code() == 1);
  r.items.push_back({"c", Status::Skip, "", {}, 0});
  CHECK(r.exit_code() == 2);
  CHECK(r.count(Status::Fail) == 1);
}

TEST_CASE("run_item maps budget and dataset errors") {
  const RunConfig cfg = config();
  CHECK(run_item("a", cfg, [](Item&) { throw BudgetExceeded("big"); }).status == Status::Skip);
  CHECK(run_item("b", cfg, [](Item&) { throw DatasetError("gone"); }).status == Status::Error);
  CHECK_THROWS_AS(run_item("c", cfg, [](Item&) { throw std::logic_error("bug"); }), std::logic_error);
}

TEST_CASE("budgets turn items into skips") {
  RunConfig cfg = config();
  cfg.budgets.max_degree = 50;
  CHECK(symalt_item(10, SymAltFamily::Subsets, 3, false, cfg).status == Status::Skip);
  CHECK(symalt_item(10, SymAltFamily::Subsets, 1, false, cfg).status == Status::Pass);
}

TEST_CASE("expected rows cover every dataset subgroup exactly once") {
  const RunConfig cfg = config();
  std::set<std::pair<std::string, std::string>> rows;
  for (const auto& r : expected_sporadic_rows()) CHECK(rows.insert({r.group, r.subgroup}).second);
  std::size_t subgroups = 0;
  for (const auto& g : sporadic_groups()) {
    const auto d = load_group(g, cfg);
    for (const auto& s : d.subgroups) CHECK(rows.count({g, s.name}) == 1);
    subgroups += d.subgroups.size();
  }
  CHECK(subgroups == rows.size());
}

TEST_CASE("a mismatching row is reported as a failure") {
  RunConfig cfg = config();
  auto d = load_group("M11", cfg);
  // Relabel the L2(11) row as A6.2_3: the scan then disagrees with the table.
  std::swap(d.subgroups[0].group, d.subgroups[1].group);
  std::swap(d.subgroups[0].index, d.subgroups[1].index);
  const auto items = sporadic_items(d, cfg);
  CHECK(items[0].status == Status::Fail);
  CHECK(items[1].status == Status::Fail);
  CHECK(items[2].status == Status::Pass);
}

TEST_CASE("structured output") {
  RunConfig cfg = config();
  cfg.timing = false;
  cfg.seed = 7;
  const Report r = run_sporadic({"M11"}, cfg);
  const std::string a = format_jsonl(r, cfg);
  CHECK(a == format_jsonl(run_sporadic({"M11"}, cfg), cfg));
  const auto recs = lines(a);
  REQUIRE(recs.size() == r.items.size() + 2);
  CHECK(recs.front()["record"] == "header");
  CHECK(recs.front()["seed"] == 7);
  CHECK(recs.front()["version"] == library_version());
  CHECK(recs.front()["budgets"]["max_order"] == "1000000000");
  CHECK(recs[1]["id"] == "M11/A6.2_3");
  CHECK(recs[1]["wall_ms"] == 0);
  CHECK(recs.back()["exit_code"] == 0);
  CHECK(recs.back()["PASS"] == 5);

  cfg.timing = true;
  for (const auto& rec : lines(format_jsonl(r, cfg)))
    if (rec["record"] == "item") CHECK(rec.contains("wall_ms"));
  const std::string text = format_text(r, cfg);
  CHECK(text.find("PASS  M11/L2(11)") != std::string::npos);
  CHECK(text.find("5 pass, 0 warn, 0 fail") != std::string::npos);
}

TEST_CASE("unknown names are usage errors") {
  const RunConfig cfg = config();
  CHECK_THROWS_AS(run_sporadic({"M24"}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_verify("nope", cfg), std::invalid_argument);
  CHECK_THROWS_AS(run_tables(14, cfg), std::invalid_argument);
}
