#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfloer/surface.hpp"

using namespace cfloer;

namespace {

CombSurface disk() { return CombSurface::make({0}, {}); }

CombSurface annulus() {
  return CombSurface::make({2}, {BandSpec{{0, 0}, {0, 1}}});
}

// Genus one, one boundary component: two interleaved bands on one disk.
CombSurface punctured_torus() {
  return CombSurface::make({4}, {BandSpec{{0, 0}, {0, 2}}, BandSpec{{0, 1}, {0, 3}}});
}

// Closed curve through band b of the annulus (1 disk cell + 1 band cell).
Curve annulus_core(const CombSurface& s) {
  return make_closed({{s.disk_cell(0), 2, 0}, {s.band_cell(0), 0, 2}});
}

Curve torus_core_a(const CombSurface& s) {
  return make_closed({{s.disk_cell(0), 4, 0}, {s.band_cell(0), 0, 2}});
}

Curve torus_core_b(const CombSurface& s) {
  return make_closed({{s.disk_cell(0), 6, 2}, {s.band_cell(1), 0, 2}});
}

}  // namespace

TEST_CASE("euler characteristic") {
  CHECK(disk().euler_characteristic() == 1);
  CHECK(annulus().euler_characteristic() == 0);
  CHECK(punctured_torus().euler_characteristic() == -1);
}

TEST_CASE("boundary components") {
  CHECK(disk().boundary_component_count() == 1);
  CHECK(annulus().boundary_component_count() == 2);
  CHECK(punctured_torus().boundary_component_count() == 1);
}

TEST_CASE("surface validation") {
  CHECK_THROWS_WITH_AS(
      CombSurface::make({2}, {BandSpec{{0, 0}, {0, 1}, true}}),
      doctest::Contains("NotOrientable"), Error);
  CHECK_THROWS_WITH_AS(
      CombSurface::make({2}, {BandSpec{{0, 0}, {0, 1}}, BandSpec{{0, 0}, {0, 1}}}),
      doctest::Contains("SlotOccupied"), Error);
}

TEST_CASE("attach band") {
  CombSurface d = CombSurface::make({2}, {});
  CombSurface a = attach_band(d, {0, 0}, {0, 1});
  CHECK(a.euler_characteristic() == 0);
  CHECK(a.boundary_component_count() == 2);

  // Joining the two boundary circles of the annulus: chi drops to -1 and
  // the boundary becomes connected.
  CombSurface ann = CombSurface::make({4}, {BandSpec{{0, 0}, {0, 2}}});
  CHECK(ann.boundary_component_count() == 2);
  auto cyc = ann.boundary_cycles();
  // Find two free slots on different boundary cycles.
  auto on_cycle = [&](int slot) {
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i) {
      for (auto& [cell, iv] : cyc[i]) {
        if (cell == ann.disk_cell(0) && iv == ann.slot_interval(slot)) return i;
      }
    }
    return -1;
  };
  int c1 = on_cycle(1), c3 = on_cycle(3);
  REQUIRE(c1 >= 0);
  REQUIRE(c3 >= 0);
  CHECK(c1 != c3);
  CombSurface g = attach_band(ann, {0, 1}, {0, 3});
  CHECK(g.euler_characteristic() == -1);
  CHECK(g.boundary_component_count() == 1);

  CHECK_THROWS_WITH_AS(attach_band(a, {0, 0}, {0, 1}),
                       doctest::Contains("SlotOccupied"), Error);
}

TEST_CASE("chi drops by one for every attachment") {
  CombSurface s = CombSurface::make({3, 3}, {});
  int chi = s.euler_characteristic();
  std::vector<std::pair<SlotRef, SlotRef>> pairs = {
      {{0, 0}, {1, 0}}, {{0, 1}, {0, 2}}, {{1, 1}, {1, 2}}};
  for (auto& [a, b] : pairs) {
    s = attach_band(s, a, b);
    CHECK(s.euler_characteristic() == chi - 1);
    chi -= 1;
  }
}

TEST_CASE("normalize removes backtracking") {
  CombSurface s = annulus();
  int D = s.disk_cell(0), B = s.band_cell(0);
  // An arc from gap 0 that dips into the band and comes straight back.
  Curve wiggle = make_arc({{D, 1, 0}, {B, 0, 0}, {D, 0, 1}}, frac(1, 3), frac(2, 3));
  Curve n = normalize(s, wiggle);
  CHECK(n.steps.size() == 1);
  CHECK(n.steps[0].iv_from == 1);
  CHECK(n.steps[0].iv_to == 1);
  CHECK(normalize(s, n) == n);

  // Two cancelling pairs: four tokens disappear.
  Curve doubled = make_arc(
      {{D, 1, 0}, {B, 0, 0}, {D, 0, 2}, {B, 2, 2}, {D, 2, 1}}, frac(1, 3), frac(2, 3));
  Curve nd = normalize(s, doubled);
  CHECK(nd.steps.size() == doubled.steps.size() - 4);

  Curve core = annulus_core(s);
  CHECK(normalize(s, core) == core);
}

TEST_CASE("intersections") {
  CombSurface t = punctured_torus();
  // Cocores of distinct bands are disjoint.
  IntersectionData cc = intersect(t, cocore(t, 0), cocore(t, 1));
  CHECK(cc.count == 0);

  // A basis arc and its pushed-off dual meet exactly once.
  Curve b1 = cocore(t, 0);
  Curve a1 = make_arc({{t.band_cell(0), 1, 3}}, frac(3, 4), frac(3, 4));
  IntersectionData ab = intersect(t, b1, a1);
  CHECK(ab.count == 1);

  // The two dual core curves of the torus meet once.
  IntersectionData cores = intersect(t, torus_core_a(t), torus_core_b(t));
  CHECK(cores.count == 1);

  // Symmetry of counts, antisymmetry of signs.
  IntersectionData swapped = intersect(t, torus_core_b(t), torus_core_a(t));
  CHECK(swapped.count == cores.count);
  CHECK(swapped.crossings[0].sign == -cores.crossings[0].sign);

  // Parallel copies of the same closed curve are disjoint.
  IntersectionData par = intersect(t, torus_core_a(t), torus_core_a(t));
  CHECK(par.count == 0);

  // Orientation reversal flips signs.
  IntersectionData rev = intersect(t, torus_core_a(t).reversed(), torus_core_b(t));
  CHECK(rev.count == 1);
  CHECK(rev.crossings[0].sign == -cores.crossings[0].sign);
}

TEST_CASE("dehn twist") {
  CombSurface t = punctured_torus();
  Curve a = torus_core_a(t), b = torus_core_b(t);

  // Disjoint curves are unchanged.
  Curve cb = cocore(t, 1);  // crosses b once, misses a entirely? it crosses b.
  Curve ca = cocore(t, 0);
  CHECK(intersect(t, b, ca).count == 0);
  CHECK(dehn_twist(t, b, Handedness::Right, ca) == normalize(t, ca));

  // One crossing stays one crossing after the twist.
  Curve tb = dehn_twist(t, a, Handedness::Right, b);
  CHECK(intersect(t, tb, b).count == 1);
  CHECK(intersect(t, tb, a).count == 1);

  // Opposite twists cancel.
  Curve back = dehn_twist(t, a, Handedness::Left, tb);
  CHECK(back == normalize(t, b));
  Curve fwd = dehn_twist(t, a, Handedness::Right, dehn_twist(t, a, Handedness::Left, b));
  CHECK(fwd == normalize(t, b));

  // Twisting an arc crossing the core of the annulus: the word wraps once
  // around but still meets the core in one point, and any two essential
  // arcs of the annulus slide apart.
  CombSurface an = annulus();
  Curve core = annulus_core(an);
  Curve rung = cocore(an, 0);
  Curve tw = dehn_twist(an, core, Handedness::Right, rung);
  CHECK(tw.steps.size() == 3);
  CHECK(intersect(an, tw, core).count == 1);
  Curve rung2 = make_arc({{an.band_cell(0), 1, 3}}, frac(1, 4), frac(1, 4));
  CHECK(intersect(an, tw, rung2).count == 0);
  CHECK(dehn_twist(an, core, Handedness::Left, tw) == normalize(an, rung));

  CHECK_THROWS_WITH_AS(dehn_twist(an, rung, Handedness::Right, core),
                       doctest::Contains("NotClosed"), Error);
}

TEST_CASE("cut along curves") {
  // Annulus cut along its core: two annuli.
  CombSurface an = annulus();
  CombSurface cut1 = cut_along(an, annulus_core(an));
  CHECK(cut1.euler_characteristic() == 0);
  CHECK(component_count(cut1) == 2);
  CHECK(cut1.boundary_component_count() == 4);

  // Punctured torus cut along a nonseparating closed curve.
  CombSurface t = punctured_torus();
  CombSurface cut2 = cut_along(t, torus_core_a(t));
  CHECK(cut2.euler_characteristic() == -1);
  CHECK(component_count(cut2) == 1);
  CHECK(cut2.boundary_component_count() == 3);

  // Disk cut along a boundary-parallel arc: two disks.
  CombSurface d = disk();
  Curve arc = make_arc({{0, 0, 0}}, frac(1, 3), frac(2, 3));
  CombSurface cut3 = cut_along(d, arc);
  CHECK(cut3.euler_characteristic() == 2);
  CHECK(component_count(cut3) == 2);
  CHECK(cut3.boundary_component_count() == 2);

  // Arcs raise chi by one: essential arc on the annulus gives a disk.
  Curve rung = cocore(an, 0);
  CombSurface cut4 = cut_along(an, rung);
  CHECK(cut4.euler_characteristic() == 1);
  CHECK(component_count(cut4) == 1);
  CHECK(cut4.boundary_component_count() == 1);
}

TEST_CASE("curve word validation") {
  CombSurface an = annulus();
  CHECK_THROWS_WITH_AS(validate_curve(an, make_closed({{0, 1, 3}})),
                       doctest::Contains("MalformedCurve"), Error);
  CHECK_THROWS_WITH_AS(validate_curve(an, make_closed({{9, 0, 2}})),
                       doctest::Contains("MalformedCurve"), Error);
  // Arc endpoints must be on free intervals.
  CHECK_THROWS_WITH_AS(validate_curve(an, make_arc({{0, 0, 1}})),
                       doctest::Contains("MalformedCurve"), Error);
}
