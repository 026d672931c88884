#include "cfloer/fixtures.hpp"

#include <fstream>

namespace cfloer {

Json to_json(const GridDiagram& g) {
  return Json{{"n", g.n}, {"x", g.x}, {"o", g.o}};
}

GridDiagram grid_from_json(const Json& j) {
  require(j.contains("n") && j.contains("x") && j.contains("o"), "BadFixture",
          "grid fixture needs n, x, o");
  return validate_grid(j.at("n").get<int>(), j.at("x").get<std::vector<int>>(),
                       j.at("o").get<std::vector<int>>());
}

Json to_json(const CombSurface& s) {
  Json disks = Json::array();
  for (int d = 0; d < s.disk_count(); ++d) disks.push_back(s.slots(d));
  Json bands = Json::array();
  for (int b = 0; b < s.band_count(); ++b) {
    const BandSpec& bs = s.band(b);
    bands.push_back(Json{{"a", {bs.a.disk, bs.a.slot}},
                         {"b", {bs.b.disk, bs.b.slot}},
                         {"twisted", bs.half_twisted}});
  }
  return Json{{"disks", disks}, {"bands", bands}};
}

CombSurface surface_from_json(const Json& j) {
  std::vector<int> disks = j.at("disks").get<std::vector<int>>();
  std::vector<BandSpec> bands;
  for (const Json& b : j.at("bands")) {
    BandSpec bs;
    bs.a = SlotRef{b.at("a")[0].get<int>(), b.at("a")[1].get<int>()};
    bs.b = SlotRef{b.at("b")[0].get<int>(), b.at("b")[1].get<int>()};
    bs.half_twisted = b.value("twisted", false);
    bands.push_back(bs);
  }
  return CombSurface::make(std::move(disks), std::move(bands));
}

namespace {

Json frac_to_json(const Frac& f) { return Json{f.n, f.d}; }
Frac frac_from_json(const Json& j) { return frac(j[0].get<long long>(), j[1].get<long long>()); }

}  // namespace

Json to_json(const Curve& c) {
  Json steps = Json::array();
  for (const auto& st : c.steps) steps.push_back({st.cell, st.iv_from, st.iv_to});
  Json out{{"kind", c.closed() ? "closed" : "arc"}, {"steps", steps}};
  if (!c.closed()) {
    out["tick_start"] = frac_to_json(c.tick_start);
    out["tick_end"] = frac_to_json(c.tick_end);
  }
  return out;
}

Curve curve_from_json(const Json& j) {
  Curve c;
  c.kind = j.at("kind").get<std::string>() == "closed" ? Curve::Kind::Closed
                                                       : Curve::Kind::Arc;
  for (const Json& st : j.at("steps")) {
    c.steps.push_back({st[0].get<int>(), st[1].get<int>(), st[2].get<int>()});
  }
  if (!c.closed()) {
    if (j.contains("tick_start")) c.tick_start = frac_from_json(j.at("tick_start"));
    if (j.contains("tick_end")) c.tick_end = frac_from_json(j.at("tick_end"));
  }
  return c;
}

Json to_json(const OpenBook& ob) {
  Json word = Json::array();
  for (const auto& [c, h] : ob.monodromy) {
    word.push_back(Json{{"curve", to_json(c)},
                        {"handed", h == Handedness::Right ? "right" : "left"}});
  }
  Json out{{"page", to_json(ob.page)}, {"monodromy", word}};
  if (ob.marked_knot) out["marked_knot"] = to_json(*ob.marked_knot);
  return out;
}

OpenBook openbook_from_json(const Json& j) {
  OpenBook ob;
  ob.page = surface_from_json(j.at("page"));
  for (const Json& w : j.value("monodromy", Json::array())) {
    ob.monodromy.push_back(
        {curve_from_json(w.at("curve")),
         w.at("handed").get<std::string>() == "right" ? Handedness::Right
                                                      : Handedness::Left});
  }
  if (j.contains("marked_knot")) ob.marked_knot = curve_from_json(j.at("marked_knot"));
  return ob;
}

Json to_json(const PartialOpenBook& pob) {
  Json imgs = Json::object();
  for (const auto& [b, img] : pob.h_images) imgs[std::to_string(b)] = to_json(img);
  Json out{{"page", to_json(pob.s)}, {"p_bands", pob.p_bands}, {"h_images", imgs}};
  if (pob.origin) {
    Json word = Json::array();
    for (const auto& [c, h] : pob.origin->monodromy) {
      word.push_back(Json{{"curve", to_json(c)},
                          {"handed", h == Handedness::Right ? "right" : "left"}});
    }
    out["origin"] = Json{{"t_band", pob.origin->t_band},
                         {"monodromy", word},
                         {"knot", to_json(pob.origin->knot)}};
  }
  return out;
}

PartialOpenBook pob_from_json(const Json& j) {
  PartialOpenBook pob;
  pob.s = surface_from_json(j.at("page"));
  pob.p_bands = j.at("p_bands").get<std::vector<int>>();
  for (auto it = j.at("h_images").begin(); it != j.at("h_images").end(); ++it) {
    pob.h_images[std::stoi(it.key())] = curve_from_json(it.value());
  }
  if (j.contains("origin")) {
    ComplementOrigin org;
    const Json& o = j.at("origin");
    org.t_band = o.at("t_band").get<int>();
    for (const Json& w : o.value("monodromy", Json::array())) {
      org.monodromy.push_back(
          {curve_from_json(w.at("curve")),
           w.at("handed").get<std::string>() == "right" ? Handedness::Right
                                                        : Handedness::Left});
    }
    org.knot = curve_from_json(o.at("knot"));
    pob.origin = std::move(org);
  }
  validate_pob(pob);
  return pob;
}

Json to_json(const Fixture& f) {
  Json exps = Json::array();
  for (const auto& e : f.expectations) {
    exps.push_back(Json{{"check", e.check}, {"want", e.want},
                        {"provenance", e.provenance}});
  }
  Json out{{"schema_version", f.schema_version},
           {"kind", f.kind},
           {"payload", f.payload},
           {"expectations", exps}};
  if (f.torsion_layer) out["torsion_layer"] = true;
  return out;
}

Fixture fixture_from_json(const Json& j) {
  Fixture f;
  f.schema_version = j.value("schema_version", 1);
  require(f.schema_version == 1, "BadFixture", "unsupported schema version");
  f.kind = j.at("kind").get<std::string>();
  f.payload = j.at("payload");
  for (const Json& e : j.value("expectations", Json::array())) {
    f.expectations.push_back(Expectation{e.at("check").get<std::string>(),
                                         e.value("want", Json()),
                                         e.value("provenance", "")});
  }
  f.torsion_layer = j.value("torsion_layer", false);
  return f;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "BadFixture", "cannot open fixture file " + path);
  Json j;
  in >> j;
  return fixture_from_json(j);
}

void save_fixture(const Fixture& f, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "BadFixture", "cannot write fixture file " + path);
  out << to_json(f).dump(2) << "\n";
}

}  // namespace cfloer
