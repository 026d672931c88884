#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfloer/openbook.hpp"

using namespace cfloer;

namespace {

OpenBook hopf_book() {
  OpenBook ob;
  ob.page = CombSurface::make({2}, {BandSpec{{0, 0}, {0, 1}}});
  Curve core = make_closed({{0, 2, 0}, {ob.page.band_cell(0), 0, 2}});
  ob.monodromy.push_back({core, Handedness::Right});
  ob.marked_knot = core;
  return ob;
}

OpenBook genus_one_book() {
  OpenBook ob;
  ob.page = CombSurface::make({4}, {BandSpec{{0, 0}, {0, 2}}, BandSpec{{0, 1}, {0, 3}}});
  Curve core_a = make_closed({{0, 4, 0}, {ob.page.band_cell(0), 0, 2}});
  ob.marked_knot = core_a;
  return ob;
}

}  // namespace

TEST_CASE("sutures of simple books") {
  // Identity partial open book on the punctured torus with one handle.
  CombSurface t = CombSurface::make(
      {4}, {BandSpec{{0, 0}, {0, 2}}, BandSpec{{0, 1}, {0, 3}}});
  PartialOpenBook pob = make_pob(t, {1});
  SuturedData sd = sutures(pob);
  CHECK(sd.chi_plus == sd.chi_minus);
  CHECK(sd.chi_plus == 0);
  CHECK(sd.suture_count == 2);

  // Empty P: the sutures are the page boundary.
  PartialOpenBook all = make_pob(t, {});
  SuturedData sall = sutures(all);
  CHECK(sall.suture_count == t.boundary_component_count());
  CHECK(sall.chi_plus == t.euler_characteristic());
}

TEST_CASE("knot complement of the Hopf book") {
  OpenBook ob = hopf_book();
  PartialOpenBook pob = knot_complement(ob);
  CHECK(pob.p_bands.empty());
  REQUIRE(pob.origin.has_value());
  CHECK(pob.origin->t_band == 0);
  SuturedData sd = sutures(pob);
  CHECK(sd.suture_count == 2);
  CHECK(sd.chi_plus == sd.chi_minus);
}

TEST_CASE("knot complement of a genus-one book") {
  OpenBook ob = genus_one_book();
  PartialOpenBook pob = knot_complement(ob);
  CHECK(pob.p_bands == std::vector<int>{1});
  SuturedData sd = sutures(pob);
  CHECK(sd.suture_count == 2);
  CHECK(sd.chi_plus == sd.chi_minus);
}

TEST_CASE("knot complement error paths") {
  OpenBook ob = hopf_book();
  ob.marked_knot.reset();
  CHECK_THROWS_WITH_AS(knot_complement(ob), doctest::Contains("NoMarkedKnot"), Error);

  // Doubled core crosses its band twice.
  OpenBook bad = hopf_book();
  int B = bad.page.band_cell(0);
  bad.marked_knot = make_closed({{0, 2, 0}, {B, 0, 2}, {0, 2, 0}, {B, 0, 2}});
  CHECK_THROWS_AS(knot_complement(bad), Error);
}

TEST_CASE("meridian bypass on the Hopf complement") {
  OpenBook ob = hopf_book();
  PartialOpenBook pob = knot_complement(ob);

  BypassArc plus = meridian_bypass_arc(pob, SliceSign::Plus);
  BypassResult r = bypass_attach(pob, plus);

  CHECK(r.pob.s.euler_characteristic() == pob.s.euler_characteristic() - 1);
  CHECK(static_cast<int>(r.pob.p_bands.size()) == static_cast<int>(pob.p_bands.size()) + 1);
  CHECK(r.new_suture_slope == make_slope(0, 1));

  SuturedData sd = sutures(r.pob);
  CHECK(sd.suture_count == 2);
  CHECK(sd.chi_plus == sd.chi_minus);

  // The other choice gives the same sutured shape but a different image.
  BypassArc minus = meridian_bypass_arc(pob, SliceSign::Minus);
  BypassResult r2 = bypass_attach(pob, minus);
  SuturedData sd2 = sutures(r2.pob);
  CHECK(sd2.suture_count == sd.suture_count);
  CHECK(sd2.chi_plus == sd.chi_plus);
  CHECK_FALSE(r.pob.h_images.at(r.strip_band) == r2.pob.h_images.at(r2.strip_band));
}

TEST_CASE("bypass keeps the old monodromy images") {
  OpenBook ob = genus_one_book();
  PartialOpenBook pob = knot_complement(ob);
  BypassArc arc = meridian_bypass_arc(pob, SliceSign::Plus);
  BypassResult r = bypass_attach(pob, arc);
  CHECK(static_cast<int>(r.pob.p_bands.size()) == 2);
  SuturedData sd = sutures(r.pob);
  CHECK(sd.chi_plus == sd.chi_minus);
  CHECK(sd.suture_count == 2);

  // The restriction of the new monodromy data to the old handles is the
  // old data word for word: the untwisted cocore image stays a single
  // transverse pass of its (renamed) band.
  int moved = -1;
  for (int b : r.pob.p_bands) {
    if (b != r.strip_band) moved = b;
  }
  REQUIRE(moved >= 0);
  CHECK(r.pob.h_images.at(moved) == cocore(r.pob.s, moved));
}

TEST_CASE("stabilization arcs") {
  OpenBook ob = hopf_book();
  PartialOpenBook pob = knot_complement(ob);
  BypassArc p = stabilization_bypass_arc(pob, SliceSign::Plus);
  BypassArc n = stabilization_bypass_arc(pob, SliceSign::Minus);
  CHECK(p.arc_slope == n.arc_slope);
  CHECK(p.slice_sign != n.slice_sign);
  CHECK_FALSE(p.c_minus == n.c_minus);

  // Composite layers: negative stabilization then meridian is one slice,
  // positive then meridian is overtwisted.
  BasicSlice meridian_layer = make_basic_slice(make_slope(1, 1), make_slope(0, 1),
                                               SliceSign::Plus);
  GlueResult gn = glue(n.slice, meridian_layer);
  CHECK(gn.kind == GlueKind::BasicSlice);
  CHECK(gn.slice->s0 == slope_infinity());
  CHECK(gn.slice->s1 == make_slope(0, 1));
  GlueResult gp = glue(p.slice, meridian_layer);
  CHECK(gp.kind == GlueKind::Overtwisted);

  // Both arcs attach and stay balanced.
  for (const BypassArc& a : {p, n}) {
    BypassResult r = bypass_attach(pob, a);
    SuturedData sd = sutures(r.pob);
    CHECK(sd.chi_plus == sd.chi_minus);
    CHECK(r.new_suture_slope == make_slope(-1, 1));
  }
}

TEST_CASE("surgery complement twists the images") {
  OpenBook ob = genus_one_book();
  Curve core_b = make_closed({{0, 6, 2}, {ob.page.band_cell(1), 0, 2}});
  ob.monodromy.push_back({core_b, Handedness::Right});
  PartialOpenBook pob = knot_complement(ob);
  const Curve& knot = pob.origin->knot;

  // With the twist along the dual curve, the surviving handle's image
  // wraps around the page and now meets the knot.
  CHECK(intersect(pob.s, pob.h_images.at(1), knot).count > 0);

  PartialOpenBook out = surgery_complement(pob, knot);
  SuturedData sd = sutures(out);
  CHECK(sd.chi_plus == sd.chi_minus);

  CHECK_FALSE(out.h_images.at(1) == pob.h_images.at(1));
  Curve back = dehn_twist(out.s, knot, Handedness::Left, out.h_images.at(1));
  CHECK(back == pob.h_images.at(1));

  // Images disjoint from the twist curve are unchanged.
  PartialOpenBook pob2 = knot_complement(genus_one_book());
  CHECK(intersect(pob2.s, pob2.h_images.at(1), knot).count == 0);
  PartialOpenBook out2 = surgery_complement(pob2, knot);
  CHECK(out2.h_images.at(1) == pob2.h_images.at(1));
}

TEST_CASE("randomized bypass corpus stays balanced") {
  std::mt19937 rng(20260808);
  int cases = 0;
  for (int trial = 0; trial < 200 && cases < 60; ++trial) {
    // Random one-disk page: 2..4 bands on 2k slots, random pairing.
    int nb = 2 + static_cast<int>(rng() % 3);
    std::vector<int> slots(2 * nb);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<BandSpec> bands;
    for (int b = 0; b < nb; ++b)
      bands.push_back(BandSpec{{0, slots[2 * b]}, {0, slots[2 * b + 1]}});
    CombSurface page = CombSurface::make({2 * nb}, bands);
    if (component_count(page) != 1) continue;

    // Knot through one band.
    int t = static_cast<int>(rng() % nb);
    Curve knot = make_closed({{0, page.slot_interval(bands[t].b.slot),
                               page.slot_interval(bands[t].a.slot)},
                              {page.band_cell(t), 0, 2}});

    OpenBook ob;
    ob.page = page;
    ob.marked_knot = knot;
    int twists = static_cast<int>(rng() % 3);
    for (int k = 0; k < twists; ++k) {
      ob.monodromy.push_back(
          {knot, rng() % 2 ? Handedness::Right : Handedness::Left});
    }

    PartialOpenBook pob;
    try {
      pob = knot_complement(ob);
    } catch (const Error&) {
      continue;  // knot not generic on this random page
    }
    SuturedData before = sutures(pob);
    CHECK(before.suture_count == 2);

    SliceSign choice = rng() % 2 ? SliceSign::Plus : SliceSign::Minus;
    BypassArc arc;
    try {
      arc = meridian_bypass_arc(pob, choice);
    } catch (const Error&) {
      continue;
    }
    BypassResult r = bypass_attach(pob, arc);
    SuturedData after = sutures(r.pob);
    CHECK(after.chi_plus == after.chi_minus);
    // The old images survive the rewrite verbatim under the band renaming.
    CHECK(r.pob.p_bands.size() == pob.p_bands.size() + 1);
    ++cases;
  }
  CHECK(cases >= 50);
}
