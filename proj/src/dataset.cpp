#include "qsrlab/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qsrlab/errors.hpp"

namespace qsrlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw DatasetError(origin + ": " + what);
}

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& origin,
                  const std::string& where) {
  if (!obj.is_object()) fail(origin, where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(origin, "unknown key \"" + key + "\" in " + where);
  for (const auto& key : allowed)
    if (!obj.contains(key)) fail(origin, "missing key \"" + key + "\" in " + where);
}

BigInt parse_decimal(const json& v, const std::string& origin, const std::string& what) {
  if (!v.is_string()) fail(origin, what + " must be a decimal string");
  const std::string s = v.get<std::string>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(origin, what + " \"" + s + "\" is not a decimal integer");
  return BigInt(s);
}

std::vector<Permutation> parse_generators(const json& v, std::size_t degree, const std::string& origin,
                                          const std::string& where) {
  if (!v.is_array()) fail(origin, where + " generators must be an array");
  std::vector<Permutation> gens;
  for (std::size_t g = 0; g < v.size(); ++g) {
    const json& row = v[g];
    const std::string label = where + " generator " + std::to_string(g + 1);
    if (!row.is_array() || row.size() != degree)
      fail(origin, label + " must list " + std::to_string(degree) + " images");
    std::vector<Point> img(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      if (!row[i].is_number_integer()) fail(origin, label + " has a non-integer image");
      const auto x = row[i].get<long long>();
      if (x < 1 || static_cast<std::size_t>(x) > degree) fail(origin, label + " has an image out of range");
      img[i] = static_cast<Point>(x - 1);
    }
    try {
      gens.emplace_back(std::move(img));
    } catch (const std::invalid_argument&) {
      fail(origin, label + " is not a bijection");
    }
  }
  return gens;
}

void write_generators(std::ostringstream& os, const std::vector<Permutation>& gens, const char* indent) {
  os << '[';
  for (std::size_t g = 0; g < gens.size(); ++g) {
    os << (g ? ",\n" : "\n") << indent << '[';
    auto img = gens[g].images();
    for (std::size_t i = 0; i < img.size(); ++i) os << (i ? "," : "") << img[i] + 1;
    os << ']';
  }
  os << ']';
}

}  // namespace

const NamedSubgroup& GeneratorDataset::subgroup(const std::string& sub_name) const {
  for (const auto& s : subgroups)
    if (s.name == sub_name) return s;
  throw DatasetError(name + ": no subgroup named \"" + sub_name + "\"");
}

GeneratorDataset parse_dataset(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }
  require_keys(doc, {"name", "degree", "order", "generators", "subgroups"}, origin, "dataset");
  if (!doc["name"].is_string()) fail(origin, "name must be a string");
  if (!doc["degree"].is_number_unsigned() || doc["degree"].get<std::size_t>() == 0)
    fail(origin, "degree must be a positive integer");

  GeneratorDataset d;
  d.name = doc["name"].get<std::string>();
  const std::size_t degree = doc["degree"].get<std::size_t>();
  d.order = parse_decimal(doc["order"], origin, "order");
  d.group = PermGroup(degree, parse_generators(doc["generators"], degree, origin, "group"));
  if (d.group.order() != d.order)
    fail(origin, "declared order " + to_string(d.order) + " but generators give " + to_string(d.group.order()));

  if (!doc["subgroups"].is_array()) fail(origin, "subgroups must be an array");
  std::set<std::string> seen;
  for (const json& s : doc["subgroups"]) {
    require_keys(s, {"name", "generators", "index"}, origin, "subgroup");
    if (!s["name"].is_string()) fail(origin, "subgroup name must be a string");
    NamedSubgroup sub;
    sub.name = s["name"].get<std::string>();
    if (!seen.insert(sub.name).second) fail(origin, "duplicate subgroup \"" + sub.name + "\"");
    const std::string where = "subgroup \"" + sub.name + "\"";
    sub.index = parse_decimal(s["index"], origin, where + " index");
    auto gens = parse_generators(s["generators"], degree, origin, where);
    for (const auto& g : gens)
      if (!d.group.contains(g)) fail(origin, where + " has a generator outside the group");
    sub.group = PermGroup(degree, std::move(gens));
    const BigInt h = sub.group.order();
    if (d.order % h != 0 || d.order / h != sub.index)
      fail(origin, where + " declared index " + to_string(sub.index) + " but |G|/|H| = " +
                       to_string(d.order) + "/" + to_string(h));
    d.subgroups.push_back(std::move(sub));
  }
  return d;
}

GeneratorDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path.string());
}

std::string dataset_to_json(const GeneratorDataset& d) {
  std::ostringstream os;
  os << "{\n  \"name\": " << json(d.name).dump() << ",\n  \"degree\": " << d.group.degree()
     << ",\n  \"order\": \"" << to_string(d.order) << "\",\n  \"generators\": ";
  write_generators(os, d.group.generators(), "    ");
  os << ",\n  \"subgroups\": [";
  for (std::size_t i = 0; i < d.subgroups.size(); ++i) {
    const auto& s = d.subgroups[i];
    os << (i ? ",\n" : "\n") << "    {\"name\": " << json(s.name).dump() << ", \"index\": \""
       << to_string(s.index) << "\",\n     \"generators\": ";
    write_generators(os, s.group.generators(), "       ");
    os << '}';
  }
  os << "]\n}\n";
  return os.str();
}

}  // namespace qsrlab
