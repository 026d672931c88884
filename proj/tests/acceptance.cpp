// Acceptance suite: one machine-checked line per criterion, run under ctest.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>

#include "cfloer/fixtures.hpp"
#include "cfloer/floer.hpp"
#include "cfloer/heegaard.hpp"
#include "support/alexander.hpp"

using namespace cfloer;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
  if (!ok) ++failures;
}

void skip(const std::string& name, const std::string& detail) {
  std::cout << "[SKIP] " << name << ": " << detail << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixture_path(const std::string& name) {
  return std::string(CFLOER_FIXTURE_DIR) + "/" + name;
}

GridDiagram load_grid(const std::string& name) {
  return grid_from_json(load_fixture(fixture_path(name)).payload);
}

OpenBook load_book(const std::string& name) {
  return openbook_from_json(load_fixture(fixture_path(name)).payload);
}

GridDiagram random_grid(std::mt19937& rng, int n) {
  std::vector<int> x(n), o(n);
  std::iota(x.begin(), x.end(), 0);
  std::iota(o.begin(), o.end(), 0);
  while (true) {
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(o.begin(), o.end(), rng);
    bool coll = false;
    for (int i = 0; i < n; ++i) coll |= x[i] == o[i];
    if (!coll) return GridDiagram{n, x, o};
  }
}

// --- C1: differential soundness -------------------------------------------

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  std::mt19937 rng(11);
  int grids = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);  // up to 6
    GridDiagram g = random_grid(rng, n);
    GridComplex gc = build_grid_complex(g);
    if (!gc.complex.boundary_squares_to_zero()) {
      ok = false;
      detail = "grid differential fails d^2 = 0";
      break;
    }
    ++grids;
  }

  // Every open-book-derived nice diagram in the fixture set.
  int diagrams = 0;
  if (ok) {
    for (const std::string& name : {"hopf_unknot.json", "genus1_twisted.json"}) {
      OpenBook ob = load_book(name);
      PartialOpenBook pob = knot_complement(ob);
      for (SliceSign s : {SliceSign::Plus, SliceSign::Minus}) {
        BypassResult br = bypass_attach(pob, meridian_bypass_arc(pob, s));
        HeegaardDiagram d = diagram_from_pob(br.pob);
        if (is_nice(d)) {
          differential(d);  // asserts d^2 = 0 internally
          ++diagrams;
        }
        HeegaardDiagram capped = cap_and_mark(d);
        if (is_nice(capped)) {
          differential(capped);
          ++diagrams;
        }
      }
      for (int orient : {+1, -1}) {
        HeegaardDiagram kd = knot_diagram(ob, orient);
        if (is_nice(kd)) {
          differential(kd);
          ++diagrams;
        }
      }
    }
  }
  double t = seconds_since(t0);
  ok = ok && t < 60.0 && grids == 100 && diagrams >= 8;
  report("C1 differential-soundness",
         ok,
         std::to_string(grids) + " random grids and " + std::to_string(diagrams) +
             " book-derived diagrams, " + std::to_string(t) + " s");
}

// --- C2: Euler characteristic against the determinant oracle ---------------

void criterion2() {
  bool ok = true;
  std::string detail;
  for (const std::string& name :
       {"grid_unknot_2.json", "grid_trefoil_right_5.json", "grid_trefoil_left_5.json",
        "grid_fig8_6.json"}) {
    GridDiagram g = load_grid(name);
    GridHomology h = grid_homology(g);
    testsupport::LaurentPoly chi;
    for (auto& [bg, rank] : h.hat_ranks) {
      chi[bg.alexander] += (bg.maslov % 2 == 0 ? 1 : -1) * rank;
      if (chi[bg.alexander] == 0) chi.erase(bg.alexander);
    }
    if (chi != testsupport::symmetrized_alexander(g)) {
      ok = false;
      detail = "mismatch on " + name;
      break;
    }
  }
  if (ok) detail = "exact match on all four fixture knots";
  report("C2 oracle-equivalence", ok, detail);
}

// --- C3: stabilization pattern of the invariant classes --------------------

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  struct Case {
    std::string file;
    bool plus_zero, minus_zero;  // frozen base status
  };
  // Base vanishing statuses computed and frozen per fixture.
  std::vector<Case> cases = {{"grid_unknot_2.json", false, false},
                             {"grid_trefoil_right_5.json", false, false},
                             {"grid_trefoil_left_5.json", true, true}};
  for (const Case& c : cases) {
    GridDiagram g = load_grid(c.file);
    ClassStatus bp = class_status(g, +1);
    ClassStatus bm = class_status(g, -1);
    if (bp.zero != c.plus_zero || bm.zero != c.minus_zero) {
      ok = false;
      detail = "unexpected base class status on " + c.file;
      break;
    }
    GridDiagram pos = grid_stabilize(g, legendrian_positive_corner(), 0);
    GridDiagram neg = grid_stabilize(g, legendrian_negative_corner(), 0);

    // The oriented class dies under positive stabilization and survives
    // (same Alexander grading) under negative stabilization.
    ClassStatus pp = class_status(pos, +1);
    ClassStatus np = class_status(neg, +1);
    if (!pp.zero) {
      ok = false;
      detail = "class survived positive stabilization on " + c.file;
      break;
    }
    if (np.zero != bp.zero) {
      ok = false;
      detail = "negative stabilization changed the class status on " + c.file;
      break;
    }
    if (!bp.zero && np.grading.alexander != bp.grading.alexander) {
      ok = false;
      detail = "negative stabilization moved the Alexander grading on " + c.file;
      break;
    }
    // Reversed orientation: the roles swap.
    ClassStatus nm = class_status(neg, -1);
    ClassStatus pm = class_status(pos, -1);
    if (!nm.zero || pm.zero != bm.zero) {
      ok = false;
      detail = "reversed-orientation pattern failed on " + c.file;
      break;
    }
    if (!bm.zero && pm.grading.alexander != bm.grading.alexander) {
      ok = false;
      detail = "reversed-orientation grading moved on " + c.file;
      break;
    }
  }
  double t = seconds_since(t0);
  ok = ok && t < 120.0;
  if (ok) detail = "pattern holds on all three fixtures, " + std::to_string(t) + " s";
  report("C3 stabilization-pattern", ok, detail);
}

// --- C4: the main theorem instance -----------------------------------------

void criterion4() {
  OpenBook ob = load_book("hopf_unknot.json");
  PartialOpenBook pob = knot_complement(ob);
  BypassResult br = bypass_attach(pob, meridian_bypass_arc(pob, SliceSign::Plus));
  HeegaardDiagram sut = diagram_from_pob(br.pob);
  HeegaardDiagram punct = puncture(knot_diagram(ob, +1));
  DiagramIso iso = diagram_equiv(sut, punct);
  bool ok = iso.equivalent;
  bool tuple_ok = ok && !iso.crossing_map.empty();
  if (tuple_ok) {
    int gone_a = 0, gone_b = 0;
    for (int c : iso.canon_a.marked_tuple) gone_a += c < 0;
    for (int c : iso.canon_b.marked_tuple) gone_b += c < 0;
    tuple_ok &= gone_a == gone_b;
    for (size_t i = 0; i < iso.canon_a.marked_tuple.size(); ++i) {
      int eh = iso.canon_a.marked_tuple[i];
      if (eh < 0) continue;
      int pa = iso.alpha_perm[i];
      tuple_ok &= pa >= 0 && iso.canon_b.marked_tuple[pa] >= 0 &&
                  iso.crossing_map[eh] == iso.canon_b.marked_tuple[pa];
    }
  }
  report("C4 main-theorem-instance", ok && tuple_ok,
         ok ? "diagrams equivalent; witness carries the contact generator to the "
              "Legendrian generator"
            : "diagram equivalence failed");
}

// --- C5: basic slice calculus ----------------------------------------------

void criterion5() {
  std::vector<Slope> slopes;
  for (int p = -10; p <= 10; ++p) {
    for (int q = 0; q <= 10; ++q) {
      if (p == 0 && q == 0) continue;
      Slope s = make_slope(p, q);
      if (s.p == p && s.q == q) slopes.push_back(s);
    }
  }
  long long same_bad = 0, opposite_missed = 0, glued = 0;
  for (const Slope& mid : slopes) {
    for (const Slope& bot : slopes) {
      if (!is_integral_basis(bot, mid)) continue;
      for (const Slope& top : slopes) {
        if (!is_integral_basis(mid, top)) continue;
        GlueResult same = glue(make_basic_slice(bot, mid, SliceSign::Plus),
                               make_basic_slice(mid, top, SliceSign::Plus));
        if (same.kind == GlueKind::Overtwisted) ++same_bad;
        if (same.kind == GlueKind::BasicSlice) {
          ++glued;
          GlueResult diff = glue(make_basic_slice(bot, mid, SliceSign::Plus),
                                 make_basic_slice(mid, top, SliceSign::Minus));
          if (diff.kind != GlueKind::Overtwisted) ++opposite_missed;
        }
      }
    }
  }
  GlueResult inst = glue(
      make_basic_slice(slope_infinity(), make_slope(1, 1), SliceSign::Plus),
      make_basic_slice(make_slope(1, 1), make_slope(0, 1), SliceSign::Plus));
  bool inst_ok = inst.kind == GlueKind::BasicSlice &&
                 inst.slice->s0 == slope_infinity() &&
                 inst.slice->s1 == make_slope(0, 1);
  bool ok = same_bad == 0 && opposite_missed == 0 && glued > 300 && inst_ok;
  report("C5 basic-slice-calculus", ok,
         std::to_string(glued) + " same-sign gluings, no overtwisted same-sign "
                                 "pair, all opposite-sign pairs overtwisted, "
                                 "stacked instance spans [0,inf]");
}

// --- C6: structural conservation -------------------------------------------

void criterion6() {
  std::mt19937 rng(20260808);
  int cases = 0, sutures_ok = 0, balanced_ok = 0;
  for (int trial = 0; trial < 400 && cases < 50; ++trial) {
    int nb = 2 + static_cast<int>(rng() % 3);
    std::vector<int> slots(2 * nb);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<BandSpec> bands;
    for (int b = 0; b < nb; ++b)
      bands.push_back(BandSpec{{0, slots[2 * b]}, {0, slots[2 * b + 1]}});
    CombSurface page = CombSurface::make({2 * nb}, bands);
    if (component_count(page) != 1) continue;
    int t = static_cast<int>(rng() % nb);
    Curve knot = make_closed({{0, page.slot_interval(bands[t].b.slot),
                               page.slot_interval(bands[t].a.slot)},
                              {page.band_cell(t), 0, 2}});
    OpenBook ob;
    ob.page = page;
    ob.marked_knot = knot;
    int twists = static_cast<int>(rng() % 3);
    for (int k = 0; k < twists; ++k)
      ob.monodromy.push_back({knot, rng() % 2 ? Handedness::Right : Handedness::Left});
    PartialOpenBook pob;
    try {
      pob = knot_complement(ob);
    } catch (const Error&) {
      continue;
    }
    if (sutures(pob).suture_count == 2) ++sutures_ok;
    SliceSign choice = rng() % 2 ? SliceSign::Plus : SliceSign::Minus;
    BypassArc arc;
    try {
      arc = rng() % 2 ? meridian_bypass_arc(pob, choice)
                      : stabilization_bypass_arc(pob, choice);
    } catch (const Error&) {
      continue;
    }
    BypassResult br = bypass_attach(pob, arc);
    SuturedData sd = sutures(br.pob);
    if (sd.chi_plus == sd.chi_minus) ++balanced_ok;
    ++cases;
  }
  bool ok = cases >= 50 && balanced_ok == cases && sutures_ok == cases;
  report("C6 structural-conservation", ok,
         std::to_string(cases) + " randomized bypasses stay balanced; every "
                                 "complement has two sutures");
}

// --- C7: stabilization numerics --------------------------------------------

void criterion7() {
  bool ok = true;
  std::string detail = "tb and rot shifts exact on all fixtures";
  for (const std::string& name :
       {"grid_unknot_2.json", "grid_trefoil_right_5.json", "grid_trefoil_left_5.json",
        "grid_fig8_6.json"}) {
    GridDiagram g = load_grid(name);
    LegendrianData base = legendrian_data(g);
    for (int col : {0, g.n / 2}) {
      LegendrianData p = legendrian_data(grid_stabilize(g, legendrian_positive_corner(), col));
      LegendrianData n = legendrian_data(grid_stabilize(g, legendrian_negative_corner(), col));
      if (p.tb != base.tb - 1 || p.rot != base.rot + 1 || n.tb != base.tb - 1 ||
          n.rot != base.rot - 1) {
        ok = false;
        detail = "shift failed on " + name;
      }
    }
  }
  report("C7 stabilization-numerics", ok, detail);
}

// --- C8: optional externally supplied twist-knot fixtures -------------------

void criterion8() {
  fs::path dir = fs::path(CFLOER_FIXTURE_DIR) / "external";
  std::vector<fs::path> files;
  if (fs::exists(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  if (files.empty()) {
    skip("C8 twist-knot-representatives",
         "no external grid fixtures supplied; this criterion is optional and "
         "documented as such");
    return;
  }
  std::sort(files.begin(), files.end());
  bool ok = true;
  std::set<std::pair<int, int>> classes;
  for (const auto& f : files) {
    GridDiagram g = grid_from_json(load_fixture(f.string()).payload);
    ClassStatus cs = class_status(g, +1);
    if (cs.zero) {
      ok = false;
    } else {
      classes.insert({cs.grading.maslov, cs.grading.alexander});
    }
  }
  report("C8 twist-knot-representatives", ok && classes.size() == files.size(),
         std::to_string(files.size()) + " supplied representatives, " +
             std::to_string(classes.size()) + " distinct nonzero classes");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                              : "acceptance: FAILURES present\n");
  return failures == 0 ? 0 : 1;
}
