#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qsrlab/bigint.hpp"
#include "qsrlab/perm_group.hpp"

namespace qsrlab {

struct NamedSubgroup {
  std::string name;
  PermGroup group;
  BigInt index;
};

/// A permutation group read from a generator file, with named subgroups.
/// Every declared order and index has been verified against the chain.
struct GeneratorDataset {
  std::string name;
  PermGroup group;
  BigInt order;
  std::vector<NamedSubgroup> subgroups;

  const NamedSubgroup& subgroup(const std::string& name) const;
};

/// Parse and verify a dataset. File layout:
///
///   {"name": str, "degree": int, "order": "decimal",
///    "generators": [[1-based images], ...],
///    "subgroups": [{"name": str, "generators": [[...]], "index": "decimal"}]}
///
/// Unknown keys, non-bijective generators, order or index mismatches and
/// subgroup generators outside the parent all raise DatasetError.
GeneratorDataset parse_dataset(const std::string& text, const std::string& origin = "<string>");
GeneratorDataset load_dataset(const std::filesystem::path& path);

/// Serialise in the layout above (subgroup indices taken from the struct).
std::string dataset_to_json(const GeneratorDataset& d);

}  // namespace qsrlab
