// JSON manifold loader. Schema:
// {
//   "name": "...", "dim": 4,
//   "coordinates": ["x","y","z","t"],
//   "domain": [[-1,1],[-1,1],[-1,1],[-1,1]],
//   "fields": {
//     "g":     {"valence": [0,2], "components": ["1","0", ...]},
//     "omega": {"valence": [0,2], "components": [...]},
//     "J":     {"valence": [1,1], "components": [...]}
//   }
// }

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "akv/manifold.hpp"

namespace akv {

ChartedManifold load_manifold_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(std::string("manifold config: ") + e.what());
  }
  ChartedManifold m;
  m.name = j.at("name").get<std::string>();
  m.dim = j.at("dim").get<int>();
  if (m.dim < 2 || m.dim > kMaxDim) throw Error("manifold config: dim out of range [2,8]");
  m.coords = j.at("coordinates").get<std::vector<std::string>>();
  if (int(m.coords.size()) != m.dim) throw Error("manifold config: coordinate count != dim");
  for (const auto& iv : j.at("domain")) {
    if (!iv.is_array() || iv.size() != 2) throw Error("manifold config: bad domain interval");
    double lo = iv[0].get<double>(), hi = iv[1].get<double>();
    if (!(lo < hi)) throw Error("manifold config: empty domain interval");
    m.domain.push_back({lo, hi});
  }
  if (int(m.domain.size()) != m.dim) throw Error("manifold config: domain count != dim");
  for (auto& [label, spec] : j.at("fields").items()) {
    auto valence = spec.at("valence").get<std::vector<int>>();
    if (valence.size() != 2) throw Error("manifold config: valence must be [up, down]");
    m.add_field(label, valence[0], valence[1],
                spec.at("components").get<std::vector<std::string>>());
  }
  return m;
}

ChartedManifold load_manifold_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifold file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_manifold_json(ss.str());
}

}  // namespace akv
