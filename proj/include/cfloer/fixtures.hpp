#pragma once

// JSON fixture formats for grids, surfaces, curves and open books, plus
// the fixture envelope with named expectations.

#include <json.hpp>

#include "cfloer/grid.hpp"
#include "cfloer/openbook.hpp"

namespace cfloer {

using Json = nlohmann::json;

Json to_json(const GridDiagram& g);
GridDiagram grid_from_json(const Json& j);

Json to_json(const CombSurface& s);
CombSurface surface_from_json(const Json& j);

Json to_json(const Curve& c);
Curve curve_from_json(const Json& j);

Json to_json(const OpenBook& ob);
OpenBook openbook_from_json(const Json& j);

Json to_json(const PartialOpenBook& pob);
PartialOpenBook pob_from_json(const Json& j);

struct Expectation {
  std::string check;
  Json want;
  std::string provenance;
};

struct Fixture {
  int schema_version = 1;
  std::string kind;  // grid | openbook | pob | slopes
  Json payload;
  std::vector<Expectation> expectations;
  bool torsion_layer = false;
};

Json to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);
Fixture load_fixture(const std::string& path);
void save_fixture(const Fixture& f, const std::string& path);

}  // namespace cfloer
