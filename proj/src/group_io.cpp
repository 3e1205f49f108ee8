#include "dpgrad/group_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dpgrad/errors.hpp"
#include "dpgrad/standard_groups.hpp"

namespace dpgrad {

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(e.what(), line);
  }
}

FiniteGroup group_from_json(const Json& j, const Limits& limits) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.value("name", std::string{});
    if (kind == "cayley") {
      const auto rows = j.at("table").get<std::vector<std::vector<Elem>>>();
      const std::size_t n = rows.size();
      if (n > limits.table_cap) throw CapExceeded("Cayley table order", n, limits.table_cap);
      std::vector<Elem> table;
      table.reserve(n * n);
      for (const auto& r : rows) {
        if (r.size() != n) throw ParseError("Cayley table rows must have length " + std::to_string(n));
        table.insert(table.end(), r.begin(), r.end());
      }
      auto gens = j.at("generators").get<std::vector<Elem>>();
      return FiniteGroup::from_table(n, std::move(table), std::move(gens), name);
    }
    if (kind == "perm") {
      const auto degree = j.at("degree").get<std::size_t>();
      const auto gens = j.at("generators").get<std::vector<std::vector<Elem>>>();
      return from_permutations(degree, gens, name, limits);
    }
    throw ParseError("unknown group kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed group description: ") + e.what());
  }
}

FiniteGroup read_group_file(const std::filesystem::path& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return group_from_json(parse_json_text(ss.str()), limits);
}

Json group_to_cayley_json(const FiniteGroup& g) {
  Json j;
  j["kind"] = "cayley";
  if (!g.name().empty()) j["name"] = g.name();
  const std::size_t n = g.order();
  Json rows = Json::array();
  for (std::size_t a = 0; a < n; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(g.mul(static_cast<Elem>(a), static_cast<Elem>(b)));
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  j["generators"] = g.generators();
  return j;
}

Json group_to_perm_json(const FiniteGroup& g) {
  Json j;
  j["kind"] = "perm";
  if (!g.name().empty()) j["name"] = g.name();
  j["degree"] = g.order();
  Json gens = Json::array();
  for (Elem s : g.generators()) {
    std::vector<Elem> img(g.order());
    for (Elem x = 0; x < g.order(); ++x) img[x] = g.mul(x, s);
    gens.push_back(img);
  }
  j["generators"] = std::move(gens);
  return j;
}

}  // namespace dpgrad
