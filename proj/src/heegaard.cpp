#include "cfloer/heegaard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cfloer {

namespace detail {
// Perturbation side conventions, fixed here and validated by the theorem
// instances in the test suite: the basis arc and its pushoff meet once in
// the half-level handle and stay minimal elsewhere.
static bool g_pin_head = false;
static bool g_pin_tail = false;
bool pin_head() { return g_pin_head; }
bool pin_tail() { return g_pin_tail; }
void set_pins(bool head, bool tail) {
  g_pin_head = head;
  g_pin_tail = tail;
}
}  // namespace detail

namespace {

int rev_iv(int m, int iv) { return (m - iv) % m; }

// Mirrors a curve word into the reversed-orientation copy of a complex,
// given the mirror cell index map.
std::vector<CurveSpec::Step> mirror_word(const CellComplex& cx,
                                         const std::vector<CurveSpec::Step>& steps,
                                         const std::vector<int>& mirror_cell) {
  std::vector<CurveSpec::Step> out;
  out.reserve(steps.size());
  for (const auto& st : steps) {
    int m = cx.intervals(st.cell);
    out.push_back({mirror_cell[st.cell], rev_iv(m, st.iv_from), rev_iv(m, st.iv_to)});
  }
  return out;
}

// Extracts the reduced map from an arrangement whose curves are labeled
// kind 0 = alpha, kind 1 = beta.
DiagramMap extract_map(const Arrangement& ar, const std::vector<CurveSpec>& curves) {
  DiagramMap map;
  int n = static_cast<int>(ar.crossings.size());
  map.ports.resize(n);
  map.quad.resize(n);
  map.pair_of.resize(n);
  for (int c = 0; c < n; ++c) {
    const auto& cr = ar.crossings[c];
    const CurveSpec& ca = curves[cr.curve_a];
    const CurveSpec& cb = curves[cr.curve_b];
    require(ca.kind != cb.kind, "MalformedDiagram",
            "curves of the same family intersect");
    int alpha = ca.kind == 0 ? ca.index : cb.index;
    int beta = ca.kind == 1 ? ca.index : cb.index;
    map.pair_of[c] = {alpha, beta};
    for (int p = 0; p < 4; ++p) {
      const auto& pt = ar.ports[c][p];
      require(pt.to_crossing >= 0, "MalformedDiagram", "open strand in a diagram");
      map.ports[c][p] = DiagramMap::Port{curves[pt.curve].kind, curves[pt.curve].index,
                                         pt.along, pt.to_crossing, pt.to_port};
      map.quad[c][p] = ar.quad_region[c][p];
    }
  }
  map.regions.resize(ar.regions.size());
  for (size_t r = 0; r < ar.regions.size(); ++r) {
    const auto& src = ar.regions[r];
    map.regions[r] = DiagramMap::Region{src.boundary, src.disk, src.corners,
                                        src.marks, src.holes};
  }
  return map;
}

}  // namespace

std::vector<Curve> basis_from_pob(const PartialOpenBook& pob) {
  std::vector<Curve> out;
  for (int b : pob.p_bands) out.push_back(cocore(pob.s, b));
  return out;
}

// ---------------------------------------------------------------------------
// Shared diagram construction.
//
// Both builders assemble the same data: a complex holding the mirrored page
// plus one upper cell per basis handle, beta = doubled cocore, alpha =
// mirrored image followed by the perturbed upper chord, pinned to cross the
// beta chord once in the upper cell.

namespace {

struct BuildResult {
  HeegaardDiagram diagram;
  Arrangement ar;
};

struct UpperPair {
  int band;        // band of the page carrying the handle
  int upper_cell;  // cell holding the half-level copy of the cocore
  Curve image;     // h(b) on the page, from side 1 to side 3
};

BuildResult build_diagram(const CombSurface& page, const std::vector<UpperPair>& pairs,
                          const CellComplex& cx, const std::vector<int>& mirror_cell,
                          const std::vector<MarkSpec>& marks,
                          const std::vector<int>& mark_is_z,
                          const std::vector<int>& mark_is_w) {
  std::vector<CurveSpec> curves;
  std::vector<OrderPin> pins;
  const int k = static_cast<int>(pairs.size());

  for (int i = 0; i < k; ++i) {
    const UpperPair& up = pairs[i];
    int lower = mirror_cell[page.band_cell(up.band)];

    CurveSpec beta;
    beta.closed = true;
    beta.kind = 1;
    beta.index = i;
    beta.steps = {{lower, 3, 1}, {up.upper_cell, 3, 1}};
    curves.push_back(beta);

    CurveSpec alpha;
    alpha.closed = true;
    alpha.kind = 0;
    alpha.index = i;
    alpha.steps = mirror_word(page.cells(), up.image.steps, mirror_cell);
    alpha.steps.push_back({up.upper_cell, 3, 1});
    curves.push_back(alpha);
  }
  // Interleave: alphas first for stable labels.
  std::stable_sort(curves.begin(), curves.end(),
                   [](const CurveSpec& a, const CurveSpec& b) {
                     return std::make_pair(a.kind, a.index) <
                            std::make_pair(b.kind, b.index);
                   });
  auto curve_id = [&](int kind, int index) {
    for (int c = 0; c < static_cast<int>(curves.size()); ++c) {
      if (curves[c].kind == kind && curves[c].index == index) return c;
    }
    fail("InternalError", "curve lookup failed");
  };

  for (int i = 0; i < k; ++i) {
    const UpperPair& up = pairs[i];
    int a_id = curve_id(0, i), b_id = curve_id(1, i);
    int alen = static_cast<int>(curves[a_id].steps.size());
    // Passages into and out of the upper cell: alpha crosses before its
    // final step and wraps after it; beta between its two steps and wraps.
    pins.push_back(
        OrderPin{up.upper_cell, 3, a_id, alen - 2, b_id, 0, detail::pin_head()});
    pins.push_back(
        OrderPin{up.upper_cell, 1, a_id, alen - 1, b_id, 1, detail::pin_tail()});
  }

  BuildResult res;
  res.ar = arrange(cx, curves, marks, pins);
  require(res.ar.self_crossing_count == 0, "MalformedDiagram",
          "diagram curves must be embedded");

  res.diagram.n_pairs = k;
  res.diagram.map = extract_map(res.ar, curves);
  for (int f : res.ar.floating_curves)
    res.diagram.floating.push_back({curves[f].kind, curves[f].index});

  // The distinguished generator: the pinned crossing in each upper cell.
  res.diagram.marked_tuple.assign(k, -1);
  for (int c = 0; c < static_cast<int>(res.ar.crossings.size()); ++c) {
    const auto& cr = res.ar.crossings[c];
    for (int i = 0; i < k; ++i) {
      if (cr.cell != pairs[i].upper_cell) continue;
      auto [ai, bi] = res.diagram.map.pair_of[c];
      if (ai == i && bi == i) {
        require(res.diagram.marked_tuple[i] == -1, "MalformedDiagram",
                "perturbation crossing is not unique");
        res.diagram.marked_tuple[i] = c;
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    require(res.diagram.marked_tuple[i] >= 0, "MalformedDiagram",
            "missing perturbation crossing");
  }

  for (size_t m = 0; m < marks.size(); ++m) {
    if (mark_is_z[m]) res.diagram.z_marks.push_back(static_cast<int>(m));
    if (mark_is_w[m]) res.diagram.w_marks.push_back(static_cast<int>(m));
  }
  return res;
}

}  // namespace

HeegaardDiagram diagram_from_pob(const PartialOpenBook& pob) {
  validate_pob(pob);
  sutures(pob);  // balancedness and image disjointness

  const CombSurface& page = pob.s;
  const CellComplex& pcx = page.cells();

  CellComplex cx;
  std::vector<int> mirror_cell(pcx.cells());
  for (int c = 0; c < pcx.cells(); ++c)
    mirror_cell[c] = cx.add_cell(pcx.intervals(c));
  for (int c = 0; c < pcx.cells(); ++c) {
    int m = pcx.intervals(c);
    for (int i = 0; i < m; ++i) {
      if (!pcx.glued(c, i)) continue;
      auto [c2, i2] = pcx.partner(c, i);
      if (std::make_pair(c, i) > std::make_pair(c2, i2)) continue;
      cx.glue(mirror_cell[c], rev_iv(m, i), mirror_cell[c2],
              rev_iv(pcx.intervals(c2), i2));
    }
  }

  std::vector<UpperPair> pairs;
  for (int b : pob.p_bands) {
    int upper = cx.add_cell(4);
    int lower = mirror_cell[page.band_cell(b)];
    // The handle's sides are shared between the two levels.
    cx.glue(upper, 1, lower, rev_iv(4, 1));
    cx.glue(upper, 3, lower, rev_iv(4, 3));
    pairs.push_back(UpperPair{b, upper, pob.h_images.at(b)});
  }

  BuildResult res = build_diagram(page, pairs, cx, mirror_cell, {}, {}, {});
  HeegaardDiagram d = std::move(res.diagram);
  d.closed = false;

  // Hole bookkeeping for the cap: the half-level side of the newest handle
  // marks the w circle, the page side the z circle.
  if (!pob.p_bands.empty()) {
    auto cycles = cx.boundary_cycles();
    int newest = pairs.back().upper_cell;
    for (int h = 0; h < static_cast<int>(cycles.size()); ++h) {
      for (auto& [cell, iv] : cycles[h]) {
        if (cell == newest && iv == 0) d.w_hole = h;
      }
    }
    if (cycles.size() == 2 && d.w_hole >= 0) d.z_hole = 1 - d.w_hole;
  }
  return d;
}

HeegaardDiagram knot_diagram(const OpenBook& ob, int orientation) {
  require(ob.marked_knot.has_value(), "NoMarkedKnot", "no marked knot on the page");
  const CombSurface& page = ob.page;
  Curve knot = normalize(page, *ob.marked_knot);

  // The half-meridian: a band the knot crosses exactly once.
  std::map<int, int> passes;
  for (const auto& st : knot.steps) {
    if (st.cell >= page.disk_count()) passes[st.cell - page.disk_count()] += 1;
  }
  int b1 = -1;
  for (const auto& [b, cnt] : passes) {
    if (cnt == 1) {
      b1 = b;
      break;
    }
  }
  require(b1 >= 0, "NoHalfMeridian", "no basis arc meets the knot exactly once");

  const CellComplex& pcx = page.cells();
  CellComplex cx;
  // Upper copy first (same orientation), then the mirrored copy.
  std::vector<int> upper_cell(pcx.cells()), mirror_cell(pcx.cells());
  for (int c = 0; c < pcx.cells(); ++c) upper_cell[c] = cx.add_cell(pcx.intervals(c));
  for (int c = 0; c < pcx.cells(); ++c) mirror_cell[c] = cx.add_cell(pcx.intervals(c));
  for (int c = 0; c < pcx.cells(); ++c) {
    int m = pcx.intervals(c);
    for (int i = 0; i < m; ++i) {
      if (pcx.glued(c, i)) {
        auto [c2, i2] = pcx.partner(c, i);
        if (std::make_pair(c, i) > std::make_pair(c2, i2)) continue;
        cx.glue(upper_cell[c], i, upper_cell[c2], i2);
        cx.glue(mirror_cell[c], rev_iv(m, i), mirror_cell[c2],
                rev_iv(pcx.intervals(c2), i2));
      } else {
        // Double along the whole boundary.
        cx.glue(upper_cell[c], i, mirror_cell[c], rev_iv(m, i));
      }
    }
  }

  // Basis: the half-meridian first, then the remaining band cocores.
  std::vector<int> order;
  order.push_back(b1);
  for (int b = 0; b < page.band_count(); ++b) {
    if (b != b1) order.push_back(b);
  }
  std::vector<UpperPair> pairs;
  for (int b : order) {
    pairs.push_back(
        UpperPair{b, upper_cell[page.band_cell(b)],
                  apply_twists(page, ob.monodromy, cocore(page, b))});
  }

  // Basepoints: z in the big region (probed on every unswept page gap,
  // which must all see one region), w between the meridian pair at the
  // chosen end of its arc.
  std::vector<MarkSpec> marks;
  std::vector<int> is_z, is_w;
  int n_probes = 0;
  for (int dd = 0; dd < page.disk_count(); ++dd) {
    for (int g = 0; g < page.slots(dd); ++g) {
      marks.push_back(
          MarkSpec{upper_cell[page.disk_cell(dd)], page.gap_interval(g), frac(1, 2)});
      ++n_probes;
    }
  }
  require(n_probes >= 1, "MalformedDiagram", "page disk carries no bands");
  is_z.assign(n_probes, 0);
  is_w.assign(n_probes, 0);
  is_z[0] = 1;  // the probes must coincide; the first one is the basepoint
  int side = orientation >= 0 ? 1 : 3;
  marks.push_back(MarkSpec{upper_cell[page.band_cell(b1)], side, frac(1, 2)});
  is_z.push_back(0);
  is_w.push_back(1);

  BuildResult res = build_diagram(page, pairs, cx, mirror_cell, marks, is_z, is_w);
  HeegaardDiagram d = std::move(res.diagram);
  d.closed = true;

  // The big-region rule: all unswept gaps must land in one region.  The w
  // basepoint may share it on degenerate small diagrams.
  int zreg = -1, wreg = -1;
  for (int r = 0; r < static_cast<int>(d.map.regions.size()); ++r) {
    for (int m : d.map.regions[r].marks) {
      if (m < n_probes) {
        require(zreg < 0 || zreg == r, "MalformedDiagram",
                "the unswept boundary sectors do not share one region");
        zreg = r;
      } else {
        wreg = r;
      }
    }
  }
  require(zreg >= 0 && wreg >= 0, "MalformedDiagram", "basepoint placement failed");
  // Strip the auxiliary probes, keeping one z mark.
  for (auto& reg : d.map.regions) {
    std::vector<int> kept;
    for (int m : reg.marks) {
      if (m == 0 || m >= n_probes) kept.push_back(m);
    }
    reg.marks = std::move(kept);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Grid diagrams as Heegaard diagrams on the torus.

HeegaardDiagram grid_heegaard(const GridDiagram& g) {
  const int n = g.n;
  CellComplex cx;
  auto cell = [&](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  for (int i = 0; i < n * n; ++i) cx.add_cell(4);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cx.glue(cell(i, j), 2, cell(i, j + 1), 0);  // N to S above
      cx.glue(cell(i, j), 1, cell(i + 1, j), 3);  // E to W right
    }
  }
  std::vector<CurveSpec> curves;
  for (int i = 0; i < n; ++i) {  // alpha_j horizontal, beta_i vertical
    CurveSpec alpha;
    alpha.closed = true;
    alpha.kind = 0;
    alpha.index = i;
    for (int x = 0; x < n; ++x) alpha.steps.push_back({cell(x, i), 3, 1});
    curves.push_back(alpha);
  }
  for (int i = 0; i < n; ++i) {
    CurveSpec beta;
    beta.closed = true;
    beta.kind = 1;
    beta.index = i;
    for (int y = 0; y < n; ++y) beta.steps.push_back({cell(i, y), 0, 2});
    curves.push_back(beta);
  }
  std::vector<MarkSpec> marks;
  HeegaardDiagram d;
  for (int i = 0; i < n; ++i) {
    marks.push_back(MarkSpec{cell(i, g.x[i]), 1, frac(3, 4)});
    d.z_marks.push_back(static_cast<int>(marks.size()) - 1);
  }
  for (int i = 0; i < n; ++i) {
    marks.push_back(MarkSpec{cell(i, g.o[i]), 1, frac(3, 4)});
    d.w_marks.push_back(static_cast<int>(marks.size()) - 1);
  }
  Arrangement ar = arrange(cx, curves, marks);
  require(ar.self_crossing_count == 0, "InternalError", "grid curves self-cross");
  d.n_pairs = n;
  d.map = extract_map(ar, curves);
  d.closed = true;
  return d;
}

// ---------------------------------------------------------------------------
// Capping and puncturing.

HeegaardDiagram cap_and_mark(const HeegaardDiagram& d) {
  std::set<int> holes;
  for (const auto& r : d.map.regions) holes.insert(r.holes.begin(), r.holes.end());
  require(holes.size() == 2, "WrongSutureCount",
          "capping requires exactly two boundary circles, found " +
              std::to_string(holes.size()));
  require(d.z_hole >= 0 && d.w_hole >= 0 && d.z_hole != d.w_hole,
          "WrongSutureCount", "boundary circles are not labelled");

  HeegaardDiagram out = d;
  int next_mark = 0;
  for (const auto& r : d.map.regions) {
    for (int m : r.marks) next_mark = std::max(next_mark, m + 1);
  }
  int zm = next_mark, wm = next_mark + 1;

  // Merge the regions around each hole into a single capped region.
  std::vector<int> remap(d.map.regions.size());
  std::iota(remap.begin(), remap.end(), 0);
  auto merge_hole = [&](int hole, int mark) {
    int target = -1;
    for (int r = 0; r < static_cast<int>(d.map.regions.size()); ++r) {
      if (!d.map.regions[r].holes.count(hole)) continue;
      if (target < 0) target = r;
      remap[r] = remap[target];
    }
    require(target >= 0, "WrongSutureCount", "hole has no adjacent regions");
    return std::make_pair(remap[target], mark);
  };
  auto [zr, zmk] = merge_hole(d.z_hole, zm);
  auto [wr, wmk] = merge_hole(d.w_hole, wm);
  // The caps may land in one region on small diagrams; both marks then
  // share it.

  // Compact region ids.
  std::map<int, int> compact;
  for (int r = 0; r < static_cast<int>(remap.size()); ++r) {
    int root = remap[r];
    if (!compact.count(root)) compact[root] = static_cast<int>(compact.size());
  }
  std::vector<DiagramMap::Region> regions(compact.size());
  for (int r = 0; r < static_cast<int>(remap.size()); ++r) {
    const auto& src = d.map.regions[r];
    auto& dst = regions[compact[remap[r]]];
    dst.disk = false;  // merged caps are not needed by the differential
    dst.corners += src.corners;
    for (int m : src.marks) dst.marks.push_back(m);
  }
  regions[compact[remap[zr]]].marks.push_back(zmk);
  regions[compact[remap[wr]]].marks.push_back(wmk);
  // Untouched regions keep their disk flags.
  for (int r = 0; r < static_cast<int>(remap.size()); ++r) {
    if (remap[r] == r && !d.map.regions[r].holes.count(d.z_hole) &&
        !d.map.regions[r].holes.count(d.w_hole)) {
      regions[compact[r]].disk = d.map.regions[r].disk;
      regions[compact[r]].boundary = false;
    }
  }

  out.map.regions = std::move(regions);
  for (auto& q : out.map.quad) {
    for (int p = 0; p < 4; ++p) q[p] = compact[remap[q[p]]];
  }
  out.closed = true;
  out.z_hole = out.w_hole = -1;
  out.z_marks = {zmk};
  out.w_marks = {wmk};
  return out;
}

HeegaardDiagram puncture(const HeegaardDiagram& d) {
  require(d.closed && d.z_marks.size() == 1 && d.w_marks.size() == 1,
          "MalformedDiagram", "puncture needs a closed doubly pointed diagram");
  HeegaardDiagram out = d;
  int zr = -1, wr = -1;
  for (int r = 0; r < static_cast<int>(out.map.regions.size()); ++r) {
    auto& reg = out.map.regions[r];
    for (int m : reg.marks) {
      if (m == d.z_marks[0]) zr = r;
      if (m == d.w_marks[0]) wr = r;
    }
  }
  require(zr >= 0 && wr >= 0, "MalformedDiagram", "basepoints missing");
  auto strip_marks = [&](int r, int hole) {
    auto& reg = out.map.regions[r];
    reg.marks.clear();
    reg.boundary = true;
    reg.disk = false;
    reg.holes.insert(hole);
  };
  out.map.regions[zr].holes.clear();
  out.map.regions[wr].holes.clear();
  strip_marks(zr, 0);
  strip_marks(wr, 1);
  out.z_marks.clear();
  out.w_marks.clear();
  out.z_hole = 0;
  out.w_hole = 1;
  out.closed = false;
  return out;
}

// ---------------------------------------------------------------------------
// Bigon cancellation and equivalence.

bool cancel_bigon(HeegaardDiagram& d) {
  DiagramMap& m = d.map;
  // Locate a removable bigon.
  std::vector<std::vector<std::pair<int, int>>> corners(m.regions.size());
  for (int c = 0; c < m.crossings(); ++c) {
    for (int p = 0; p < 4; ++p) corners[m.quad[c][p]].push_back({c, p});
  }
  int bigon = -1;
  for (int r = 0; r < static_cast<int>(m.regions.size()); ++r) {
    const auto& reg = m.regions[r];
    if (reg.boundary || !reg.marks.empty() || !reg.disk) continue;
    if (corners[r].size() != 2) continue;
    if (corners[r][0].first == corners[r][1].first) continue;  // same crossing
    bigon = r;
    break;
  }
  if (bigon < 0) return false;

  auto [c1, q1] = corners[bigon][0];
  auto [c2, q2] = corners[bigon][1];
  (void)q2;

  // Reconnect the two strands past the cancelled crossings.
  auto relink = [&](int kind) {
    int p1 = -1, p2 = -1;
    for (int p : {q1, (q1 + 1) % 4}) {
      if (m.ports[c1][p].kind == kind) p1 = p;
    }
    for (int p : {corners[bigon][1].second, (corners[bigon][1].second + 1) % 4}) {
      if (m.ports[c2][p].kind == kind) p2 = p;
    }
    require(p1 >= 0 && p2 >= 0, "InternalError", "bigon ports missing");
    int o1 = (p1 + 2) % 4, o2 = (p2 + 2) % 4;
    auto a_end = std::make_pair(m.ports[c1][o1].to_cross, m.ports[c1][o1].to_port);
    auto b_end = std::make_pair(m.ports[c2][o2].to_cross, m.ports[c2][o2].to_port);
    if (a_end == std::make_pair(c2, o2)) {
      // The curve only crossed these two crossings; it floats afterwards.
      d.floating.push_back({kind, m.ports[c1][p1].index});
    } else {
      m.ports[a_end.first][a_end.second].to_cross = b_end.first;
      m.ports[a_end.first][a_end.second].to_port = b_end.second;
      m.ports[b_end.first][b_end.second].to_cross = a_end.first;
      m.ports[b_end.first][b_end.second].to_port = a_end.second;
    }
  };
  relink(0);
  relink(1);

  // Drop the two crossings and compact the port structure.
  std::vector<int> cmap(m.crossings(), -1);
  int nc = 0;
  for (int c = 0; c < m.crossings(); ++c) {
    if (c != c1 && c != c2) cmap[c] = nc++;
  }
  DiagramMap nm;
  nm.ports.resize(nc);
  nm.quad.resize(nc);
  nm.pair_of.resize(nc);
  for (int c = 0; c < m.crossings(); ++c) {
    if (cmap[c] < 0) continue;
    nm.pair_of[cmap[c]] = m.pair_of[c];
    for (int p = 0; p < 4; ++p) {
      auto pt = m.ports[c][p];
      require(cmap[pt.to_cross] >= 0, "InternalError", "dangling strand");
      pt.to_cross = cmap[pt.to_cross];
      nm.ports[cmap[c]][p] = pt;
      nm.quad[cmap[c]][p] = m.quad[c][p];  // old region id, regrouped below
    }
  }

  // Recompute the region structure as face orbits of the surviving map and
  // merge the old regions' data along them.
  if (nc > 0) {
    std::map<std::pair<int, int>, int> orbit;
    int n_orbits = 0;
    for (int c = 0; c < nc; ++c) {
      for (int p = 0; p < 4; ++p) {
        if (orbit.count({c, p})) continue;
        int id = n_orbits++;
        int cc = c, pp = p;
        while (!orbit.count({cc, pp})) {
          orbit[{cc, pp}] = id;
          const auto& pt = nm.ports[cc][(pp + 1) % 4];
          cc = pt.to_cross;
          pp = pt.to_port;
        }
      }
    }
    std::vector<DiagramMap::Region> regions(n_orbits);
    std::vector<std::set<int>> sources(n_orbits);
    for (int c = 0; c < nc; ++c) {
      for (int p = 0; p < 4; ++p) {
        int id = orbit[{c, p}];
        sources[id].insert(nm.quad[c][p]);
        regions[id].corners += 1;
      }
    }
    // Old regions that lost every corner dissolve into the neighbourhood of
    // the cancelled strands.  Non-disk regions may meet several orbits; the
    // marks then stay with the first orbit so they are not duplicated.
    std::set<int> seen_sources;
    std::set<int> marks_placed;
    for (int id = 0; id < n_orbits; ++id) {
      bool disk = true;
      for (int src : sources[id]) {
        seen_sources.insert(src);
        const auto& old = m.regions[src];
        regions[id].boundary |= old.boundary;
        disk &= old.disk;
        if (marks_placed.insert(src).second) {
          regions[id].marks.insert(regions[id].marks.end(), old.marks.begin(),
                                   old.marks.end());
        }
        regions[id].holes.insert(old.holes.begin(), old.holes.end());
      }
      regions[id].disk = disk && sources[id].size() <= 1;
    }
    for (int r = 0; r < static_cast<int>(m.regions.size()); ++r) {
      if (seen_sources.count(r) || r == bigon) continue;
      // Dropped region: absorb into orbit 0 as a safe default.
      const auto& old = m.regions[r];
      regions[0].boundary |= old.boundary;
      regions[0].marks.insert(regions[0].marks.end(), old.marks.begin(),
                              old.marks.end());
      regions[0].holes.insert(old.holes.begin(), old.holes.end());
      if (!old.marks.empty() || old.boundary) regions[0].disk = false;
    }
    for (int c = 0; c < nc; ++c) {
      for (int p = 0; p < 4; ++p) nm.quad[c][p] = orbit[{c, p}];
    }
    nm.regions = std::move(regions);
  } else {
    // Nothing left: a single region holding every surviving flag.
    DiagramMap::Region all;
    for (int r = 0; r < static_cast<int>(m.regions.size()); ++r) {
      if (r == bigon) continue;
      const auto& old = m.regions[r];
      all.boundary |= old.boundary;
      all.marks.insert(all.marks.end(), old.marks.begin(), old.marks.end());
      all.holes.insert(old.holes.begin(), old.holes.end());
    }
    nm.regions = {all};
  }

  // Update the marked tuple if its crossings survived.
  for (int& g : d.marked_tuple) {
    if (g == c1 || g == c2) {
      g = -1;
    } else {
      g = cmap[g];
    }
  }
  d.map = std::move(nm);
  return true;
}

namespace {

// Canonical encoding of the component of crossing c0 (minimum over seeds
// and rotations of a breadth-first labeling); used when the reduced map is
// disconnected and the witness search cannot reach every crossing.
std::string component_certificate(
    const HeegaardDiagram& d, const std::vector<int>& comp,
    const std::function<std::tuple<bool, int, int, int>(const DiagramMap::Region&)>&
        label) {
  const DiagramMap& m = d.map;
  std::string best;
  for (int seed : comp) {
    for (int rot = 0; rot < 4; ++rot) {
      std::map<int, int> cid, rid, aid, bid;
      std::vector<std::pair<int, int>> queue{{seed, rot}};
      cid[seed] = 0;
      std::ostringstream os;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [c, r] = queue[qi];
        for (int p = 0; p < 4; ++p) {
          const auto& pt = m.ports[c][(p + r) % 4];
          auto& curve_ids = pt.kind == 0 ? aid : bid;
          if (!curve_ids.count(pt.index))
            curve_ids[pt.index] = static_cast<int>(curve_ids.size());
          int reg = m.quad[c][(p + r) % 4];
          if (!rid.count(reg)) {
            rid[reg] = static_cast<int>(rid.size());
            auto [bd, z, w, other] = label(m.regions[reg]);
            os << "R" << bd << "," << z << "," << w << "," << other << ";";
          }
          os << pt.kind << curve_ids[pt.index] << "r" << rid[reg];
          int tc = pt.to_cross;
          if (!cid.count(tc)) {
            cid[tc] = static_cast<int>(cid.size());
            // Rotation of the target: align its entry port to a fixed slot.
            queue.push_back({tc, pt.to_port});
          }
          os << ">" << cid[tc] << "." << ((pt.to_port - queue[cid[tc]].second + 8) % 4)
             << "|";
        }
      }
      std::string s = os.str();
      if (best.empty() || s < best) best = s;
    }
  }
  return best;
}

std::vector<std::vector<int>> map_components(const DiagramMap& m) {
  int n = m.crossings();
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int c = 0; c < n; ++c) {
    if (comp[c] >= 0) continue;
    std::vector<int> queue{c};
    comp[c] = nc;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (int p = 0; p < 4; ++p) {
        int t = m.ports[queue[qi]][p].to_cross;
        if (comp[t] < 0) {
          comp[t] = nc;
          queue.push_back(t);
        }
      }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int c = 0; c < n; ++c) out[comp[c]].push_back(c);
  return out;
}

}  // namespace

DiagramIso diagram_equiv(const HeegaardDiagram& da, const HeegaardDiagram& db) {
  HeegaardDiagram a = da, b = db;
  while (cancel_bigon(a)) {
  }
  while (cancel_bigon(b)) {
  }
  DiagramIso iso;
  iso.canon_a = a;
  iso.canon_b = b;
  const DiagramMap& ma = a.map;
  const DiagramMap& mb = b.map;
  if (a.n_pairs != b.n_pairs || ma.crossings() != mb.crossings()) return iso;
  {
    std::multiset<std::pair<int, int>> fa(a.floating.begin(), a.floating.end()),
        fb(b.floating.begin(), b.floating.end());
    std::multiset<int> ka, kb;
    for (auto& [kind, idx] : fa) ka.insert(kind);
    for (auto& [kind, idx] : fb) kb.insert(kind);
    if (ka != kb) return iso;
  }

  auto region_label = [&](const HeegaardDiagram& d, const DiagramMap::Region& r) {
    int z = 0, w = 0, other = 0;
    for (int m : r.marks) {
      bool is_z = std::find(d.z_marks.begin(), d.z_marks.end(), m) != d.z_marks.end();
      bool is_w = std::find(d.w_marks.begin(), d.w_marks.end(), m) != d.w_marks.end();
      if (is_z) ++z;
      else if (is_w) ++w;
      else ++other;
    }
    return std::make_tuple(r.boundary, z, w, other);
  };

  const int n = ma.crossings();
  if (n == 0) {
    // Degenerate: compare region label multisets.
    std::multiset<std::tuple<bool, int, int, int>> la, lb;
    for (const auto& r : ma.regions) la.insert(region_label(a, r));
    for (const auto& r : mb.regions) lb.insert(region_label(b, r));
    if (la == lb) {
      iso.equivalent = true;
      iso.alpha_perm.resize(a.n_pairs);
      iso.beta_perm.resize(a.n_pairs);
      std::iota(iso.alpha_perm.begin(), iso.alpha_perm.end(), 0);
      std::iota(iso.beta_perm.begin(), iso.beta_perm.end(), 0);
    }
    return iso;
  }

  for (int seed = 0; seed < n; ++seed) {
    for (int rot = 0; rot < 4; ++rot) {
      std::vector<int> cmap(n, -1), pshift(n, -1);
      std::vector<int> amap(a.n_pairs, -1), bmap(a.n_pairs, -1);
      std::vector<int> aused(a.n_pairs, 0), bused(a.n_pairs, 0);
      std::vector<int> rmap(ma.regions.size(), -1);
      std::vector<char> rused(mb.regions.size(), 0);
      bool ok = true;

      auto map_curve = [&](int kind, int ia, int ib) {
        auto& fwd = kind == 0 ? amap : bmap;
        auto& used = kind == 0 ? aused : bused;
        if (fwd[ia] == -1 && !used[ib]) {
          fwd[ia] = ib;
          used[ib] = 1;
          return true;
        }
        return fwd[ia] == ib;
      };
      auto map_region = [&](int ra, int rb) {
        if (rmap[ra] == -1 && !rused[rb]) {
          if (region_label(a, ma.regions[ra]) != region_label(b, mb.regions[rb]))
            return false;
          rmap[ra] = rb;
          rused[rb] = 1;
          return true;
        }
        return rmap[ra] == rb;
      };

      std::vector<int> queue;
      cmap[0] = seed;
      pshift[0] = rot;
      queue.push_back(0);
      for (size_t qi = 0; qi < queue.size() && ok; ++qi) {
        int ca = queue[qi];
        int cb = cmap[ca];
        int r = pshift[ca];
        for (int p = 0; p < 4 && ok; ++p) {
          const auto& pa = ma.ports[ca][p];
          const auto& pb = mb.ports[cb][(p + r) % 4];
          if (pa.kind != pb.kind) {
            ok = false;
            break;
          }
          if (!map_curve(pa.kind, pa.index, pb.index)) {
            ok = false;
            break;
          }
          if (!map_region(ma.quad[ca][p], mb.quad[cb][(p + r) % 4])) {
            ok = false;
            break;
          }
          int ta = pa.to_cross, tb = pb.to_cross;
          int shift = (pb.to_port - pa.to_port + 8) % 4;
          if (cmap[ta] == -1) {
            cmap[ta] = tb;
            pshift[ta] = shift;
            queue.push_back(ta);
          } else if (cmap[ta] != tb || pshift[ta] != shift) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      bool all = true;
      for (int c = 0; c < n; ++c) all &= cmap[c] >= 0;
      if (!all) break;  // disconnected: handled by certificates below
      // Verify bijectivity of the crossing map.
      std::vector<char> hit(n, 0);
      for (int c = 0; c < n; ++c) {
        if (hit[cmap[c]]) {
          all = false;
          break;
        }
        hit[cmap[c]] = 1;
      }
      if (!all) continue;

      iso.equivalent = true;
      iso.crossing_map = cmap;
      iso.alpha_perm = amap;
      iso.beta_perm = bmap;
      return iso;
    }
  }

  // Disconnected reduced maps: compare component certificate multisets.
  auto comps_a = map_components(ma);
  auto comps_b = map_components(mb);
  if (comps_a.size() != comps_b.size() || comps_a.size() <= 1) return iso;
  auto label_a = [&](const DiagramMap::Region& r) { return std::make_tuple(r.boundary, 0, 0, 0); };
  (void)label_a;
  auto mk_label = [](const HeegaardDiagram& d) {
    return [&d](const DiagramMap::Region& r) {
      int z = 0, w = 0, other = 0;
      for (int m : r.marks) {
        bool is_z = std::find(d.z_marks.begin(), d.z_marks.end(), m) != d.z_marks.end();
        bool is_w = std::find(d.w_marks.begin(), d.w_marks.end(), m) != d.w_marks.end();
        if (is_z) ++z;
        else if (is_w) ++w;
        else ++other;
      }
      return std::make_tuple(r.boundary, z, w, other);
    };
  };
  std::multiset<std::string> certs_a, certs_b;
  for (auto& comp : comps_a) certs_a.insert(component_certificate(a, comp, mk_label(a)));
  for (auto& comp : comps_b) certs_b.insert(component_certificate(b, comp, mk_label(b)));
  if (certs_a == certs_b) {
    iso.equivalent = true;  // componentwise match; no global witness
  }
  return iso;
}

}  // namespace cfloer
