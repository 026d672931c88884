#include "cfloer/openbook.hpp"

#include <algorithm>

namespace cfloer {

Curve apply_twists(const CombSurface& s,
                   const std::vector<std::pair<Curve, Handedness>>& word,
                   const Curve& c) {
  Curve out = normalize(s, c);
  for (const auto& [tc, h] : word) out = dehn_twist(s, tc, h, out);
  return out;
}

Curve apply_monodromy(const OpenBook& ob, const Curve& c) {
  return apply_twists(ob.page, ob.monodromy, c);
}

PartialOpenBook make_pob(CombSurface s, std::vector<int> p_bands) {
  PartialOpenBook pob;
  pob.s = std::move(s);
  std::sort(p_bands.begin(), p_bands.end());
  pob.p_bands = std::move(p_bands);
  for (int b : pob.p_bands) pob.h_images[b] = cocore(pob.s, b);
  validate_pob(pob);
  return pob;
}

void validate_pob(const PartialOpenBook& pob) {
  require(component_count(pob.s) == 1, "MalformedSurface", "page must be connected");
  std::set<int> seen;
  for (int b : pob.p_bands) {
    require(b >= 0 && b < pob.s.band_count(), "MalformedSurface",
            "P references a missing band");
    require(seen.insert(b).second, "MalformedSurface", "duplicate band in P");
    auto it = pob.h_images.find(b);
    require(it != pob.h_images.end(), "MalformedSurface",
            "missing monodromy image for a P handle");
    const Curve& img = it->second;
    require(!img.closed(), "MalformedCurve", "h image must be an arc");
    // h restricts to the identity near the boundary: images keep the
    // canonical cocore endpoints of their handle.
    int cell = pob.s.band_cell(b);
    require(img.steps.front().cell == cell && img.steps.front().iv_from == 1 &&
                fcmp(img.tick_start, frac(1, 2)) == 0,
            "MalformedCurve", "h image must start at the cocore foot");
    require(img.steps.back().cell == cell && img.steps.back().iv_to == 3 &&
                fcmp(img.tick_end, frac(1, 2)) == 0,
            "MalformedCurve", "h image must end at the cocore head");
  }
  require(pob.h_images.size() == pob.p_bands.size(), "MalformedSurface",
          "h defined outside P");
}

CombSurface positive_region(const PartialOpenBook& pob) {
  std::vector<int> ds(pob.s.disk_count());
  for (int d = 0; d < pob.s.disk_count(); ++d) ds[d] = pob.s.slots(d);
  std::vector<BandSpec> bs;
  for (int b = 0; b < pob.s.band_count(); ++b) {
    if (std::find(pob.p_bands.begin(), pob.p_bands.end(), b) == pob.p_bands.end())
      bs.push_back(pob.s.band(b));
  }
  return CombSurface::make(std::move(ds), std::move(bs));
}

SuturedData sutures(const PartialOpenBook& pob) {
  validate_pob(pob);
  // The images of distinct handles must stay disjoint and embedded, or the
  // negative region is not a surface of the right Euler characteristic.
  std::vector<Curve> imgs;
  for (const auto& [b, img] : pob.h_images) imgs.push_back(img);
  for (size_t i = 0; i < imgs.size(); ++i) {
    for (size_t j = i + 1; j < imgs.size(); ++j) {
      IntersectionData d = intersect(pob.s, imgs[i], imgs[j]);
      require(d.count == 0, "Unbalanced",
              "monodromy images intersect; the book data is corrupted");
    }
  }

  CombSurface rplus = positive_region(pob);
  SuturedData out;
  out.gamma = rplus.boundary_cycles();
  out.suture_count = static_cast<int>(out.gamma.size());
  require(out.suture_count >= 1, "NotSutured", "no sutures on the boundary");
  out.chi_plus = rplus.euler_characteristic();
  out.chi_minus = pob.s.euler_characteristic() + static_cast<int>(pob.p_bands.size());
  require(out.chi_plus == out.chi_minus, "Unbalanced",
          "positive and negative regions have different Euler characteristics");
  return out;
}

PartialOpenBook knot_complement(const OpenBook& ob) {
  require(ob.marked_knot.has_value(), "NoMarkedKnot",
          "open book carries no marked knot");
  Curve knot = normalize(ob.page, *ob.marked_knot);
  require(knot.closed(), "KnotNotGeneric", "marked knot must be a closed curve");

  // Bands the knot runs through, each at most once.
  std::map<int, int> passes;
  for (const auto& st : knot.steps) {
    if (st.cell >= ob.page.disk_count())
      passes[st.cell - ob.page.disk_count()] += 1;
  }
  require(!passes.empty(), "KnotNotGeneric",
          "marked knot is not homologically essential on the page");
  for (const auto& [band, count] : passes) {
    require(count == 1, "KnotNotGeneric",
            "marked knot crosses band " + std::to_string(band) + " more than once");
  }

  std::vector<int> p;
  for (int b = 0; b < ob.page.band_count(); ++b) {
    if (!passes.count(b)) p.push_back(b);
  }

  PartialOpenBook pob;
  pob.s = ob.page;
  pob.p_bands = p;
  for (int b : p) {
    pob.h_images[b] = apply_monodromy(ob, cocore(ob.page, b));
  }
  validate_pob(pob);

  // The complement's boundary data: the positive region must be the
  // annular neighbourhood of the knot.
  CombSurface rplus = positive_region(pob);
  require(component_count(rplus) == 1 && rplus.euler_characteristic() == 0 &&
              rplus.boundary_component_count() == 2,
          "KnotNotGeneric",
          "page must present the knot neighbourhood as disks plus one handle");

  if (passes.size() == 1) {
    pob.origin = ComplementOrigin{passes.begin()->first, ob.monodromy, knot};
  }
  return pob;
}

// ---------------------------------------------------------------------------
// Bypass attachment.

namespace {

struct GapPoint {
  int disk = -1;
  int gap_iv = -1;
  Frac tick{1, 2};
};

GapPoint arc_endpoint(const CombSurface& s, const Curve& c, bool at_to) {
  GapPoint g;
  const auto& st = at_to ? c.steps.back() : c.steps.front();
  g.disk = st.cell;
  g.gap_iv = at_to ? st.iv_to : st.iv_from;
  g.tick = at_to ? c.tick_end : c.tick_start;
  require(g.disk < s.disk_count(), "InvalidArc", "attachment arc must live in a disk");
  require(g.gap_iv % 2 == 1, "InvalidArc", "attachment arc must end on gaps");
  return g;
}

}  // namespace

BypassResult bypass_attach(const PartialOpenBook& pob, const BypassArc& arc) {
  validate_pob(pob);
  require(arc.c_plus.steps.size() == 1 && !arc.c_plus.closed(), "InvalidArc",
          "the attachment arc must be presented as a single disk chord");
  const CombSurface& s = pob.s;
  GapPoint tail = arc_endpoint(s, arc.c_plus, !arc.head_at_to);
  GapPoint head = arc_endpoint(s, arc.c_plus, arc.head_at_to);
  require(tail.disk == head.disk, "InvalidArc", "chord endpoints in different disks");
  const int d0 = tail.disk;
  const int m = s.cells().intervals(d0);

  // The negative-side arc must run between the two free sides of one band.
  require(!arc.c_minus.closed() && arc.c_minus.steps.size() >= 1, "InvalidArc",
          "negative arc missing");
  int tcell = arc.c_minus.steps.front().cell;
  require(tcell >= s.disk_count(), "InvalidArc",
          "negative arc must start on a band side");
  int t_band = tcell - s.disk_count();
  require(std::find(pob.p_bands.begin(), pob.p_bands.end(), t_band) ==
              pob.p_bands.end(),
          "InvalidArc", "negative arc runs over a P handle");
  {
    int sv = arc.c_minus.steps.front().iv_from;
    int ev = arc.c_minus.steps.back().iv_to;
    require(arc.c_minus.steps.back().cell == tcell &&
                ((sv == 1 && ev == 3) || (sv == 3 && ev == 1)),
            "InvalidArc", "negative arc must join the two sides of its band");
  }

  // --- split the disk along the chord --------------------------------------
  // Walking counterclockwise from the head point to the tail point gives the
  // piece that also carries the fresh handle's feet.
  auto in_head_piece = [&](int iv, std::optional<Frac> tick = std::nullopt) {
    // Position strictly between head and tail in ccw order?
    auto after_head = [&](int jv, const Frac& tk) {
      if (jv != head.gap_iv) {
        int off = (jv - head.gap_iv + m) % m;
        int off_tail = (tail.gap_iv - head.gap_iv + m) % m;
        if (jv == tail.gap_iv) return fcmp(tk, tail.tick) < 0;
        return off < off_tail || (off == off_tail && false);
      }
      if (fcmp(tk, head.tick) <= 0) return false;
      if (head.gap_iv == tail.gap_iv && fcmp(tk, tail.tick) >= 0) return false;
      return true;
    };
    return after_head(iv, tick.value_or(frac(1, 2)));
  };

  // New slot layout: piece 1 (head side) and piece 2 (tail side).
  // Piece 1 slots, ccw: strip foot, fresh-handle feet, then the original
  // slots lying on the head side; piece 2: strip foot, then the rest.
  struct SlotMap {
    int piece;
    int slot;
  };
  std::map<int, SlotMap> slot_map;  // original slot index -> new location
  std::vector<int> head_slots, tail_slots;
  for (int sl = 0; sl < s.slots(d0); ++sl) {
    int iv = s.slot_interval(sl);
    (in_head_piece(iv) ? head_slots : tail_slots).push_back(sl);
  }
  // Original slots keep their cyclic order within each piece, rotated so the
  // sequence starts just after the head / tail point respectively.
  auto rotate_from = [&](std::vector<int>& v, int start_gap) {
    std::stable_sort(v.begin(), v.end(), [&](int a, int b) {
      int oa = (s.slot_interval(a) - start_gap + m) % m;
      int ob = (s.slot_interval(b) - start_gap + m) % m;
      return oa < ob;
    });
  };
  rotate_from(head_slots, head.gap_iv);
  rotate_from(tail_slots, tail.gap_iv);

  // Piece 1: [strip foot, f1, f2, head-side slots...]
  // Piece 2: [strip foot, tail-side slots...]
  std::vector<int> disk_slots;
  std::vector<BandSpec> band_specs;
  std::map<int, int> disk_of_old;  // old disk -> new disk index
  int p1 = -1, p2 = -1;
  {
    int next = 0;
    for (int d = 0; d < s.disk_count(); ++d) {
      if (d == d0) continue;
      disk_of_old[d] = next++;
      disk_slots.push_back(s.slots(d));
    }
    p1 = next++;
    disk_slots.push_back(3 + static_cast<int>(head_slots.size()));
    p2 = next++;
    disk_slots.push_back(1 + static_cast<int>(tail_slots.size()));
  }
  for (int i = 0; i < static_cast<int>(head_slots.size()); ++i)
    slot_map[head_slots[i]] = SlotMap{p1, 3 + i};
  for (int i = 0; i < static_cast<int>(tail_slots.size()); ++i)
    slot_map[tail_slots[i]] = SlotMap{p2, 1 + i};

  auto map_slot = [&](const SlotRef& r) {
    if (r.disk != d0) return SlotRef{disk_of_old[r.disk], r.slot};
    const SlotMap& sm = slot_map.at(r.slot);
    return SlotRef{sm.piece, sm.slot};
  };

  std::map<int, int> band_of_old;
  for (int b = 0; b < s.band_count(); ++b) {
    band_of_old[b] = static_cast<int>(band_specs.size());
    band_specs.push_back(BandSpec{map_slot(s.band(b).a), map_slot(s.band(b).b)});
  }
  // The strip (nu of the pushed arc): feet are the chord sides, slot 0 on
  // each piece.
  int strip_band = static_cast<int>(band_specs.size());
  band_specs.push_back(BandSpec{SlotRef{p1, 0}, SlotRef{p2, 0}});
  // The fresh handle near the head, both feet on the head piece.
  int fresh_band = static_cast<int>(band_specs.size());
  band_specs.push_back(BandSpec{SlotRef{p1, 1}, SlotRef{p1, 2}});

  CombSurface ns = CombSurface::make(std::move(disk_slots), std::move(band_specs));

  // --- transport curve words into the split surface ------------------------
  auto map_cell = [&](int cell) -> int {
    if (cell < s.disk_count()) {
      require(cell != d0, "InternalError", "split disk must be handled per step");
      return ns.disk_cell(disk_of_old.at(cell));
    }
    return ns.band_cell(band_of_old.at(cell - s.disk_count()));
  };
  // Interval of an original disk-d0 boundary interval inside a piece.
  auto map_iv_d0 = [&](int iv, std::optional<Frac> tick) -> std::pair<int, int> {
    bool headside = in_head_piece(iv, tick);
    int piece = headside ? p1 : p2;
    if (iv % 2 == 0) {
      const SlotMap& sm = slot_map.at(iv / 2);
      return {piece, ns.slot_interval(sm.slot)};
    }
    // Gaps: map to the gap after the nearest preceding new slot.  The exact
    // gap index only matters for arc endpoints, handled by position below.
    // Walk backwards to the previous slot interval on the same side.
    for (int off = 1; off < m; ++off) {
      int jv = (iv - off + m) % m;
      if (jv % 2 != 0) continue;
      if (in_head_piece(jv) != headside) continue;
      // Slot jv/2 precedes this gap within the piece.
      const SlotMap& sm = slot_map.at(jv / 2);
      return {piece, ns.gap_interval(sm.slot)};
    }
    // No slot on this side: the piece's material gap after the strip foot.
    return {piece, ns.gap_interval(0)};
  };

  auto transport = [&](const Curve& c) -> Curve {
    std::vector<CurveSpec::Step> out;
    for (const auto& st : c.steps) {
      if (st.cell != d0) {
        out.push_back({map_cell(st.cell), st.iv_from, st.iv_to});
        continue;
      }
      bool from_head = in_head_piece(st.iv_from);
      bool to_head = in_head_piece(st.iv_to);
      auto [cf, ivf] = map_iv_d0(st.iv_from, std::nullopt);
      auto [ct, ivt] = map_iv_d0(st.iv_to, std::nullopt);
      (void)cf;
      (void)ct;
      if (from_head == to_head) {
        // Chords with both endpoints on one side never meet the split chord.
        out.push_back({ns.disk_cell(from_head ? p1 : p2), ivf, ivt});
        continue;
      }
      int strip_cell = ns.band_cell(strip_band);
      // Head piece foot is end 0 of the strip, tail piece foot end 2.
      if (from_head) {
        out.push_back({ns.disk_cell(p1), ivf, ns.slot_interval(0)});
        out.push_back({strip_cell, 0, 2});
        out.push_back({ns.disk_cell(p2), ns.slot_interval(0), ivt});
      } else {
        out.push_back({ns.disk_cell(p2), ivf, ns.slot_interval(0)});
        out.push_back({strip_cell, 2, 0});
        out.push_back({ns.disk_cell(p1), ns.slot_interval(0), ivt});
      }
    }
    Curve nc = c;
    nc.steps = std::move(out);
    return normalize(ns, nc);
  };

  BypassResult res;
  res.strip_band = strip_band;
  res.fresh_band = fresh_band;
  res.pob.s = ns;
  for (int b : pob.p_bands) res.pob.p_bands.push_back(band_of_old.at(b));
  res.pob.p_bands.push_back(strip_band);
  std::sort(res.pob.p_bands.begin(), res.pob.p_bands.end());
  for (const auto& [b, img] : pob.h_images) {
    res.pob.h_images[band_of_old.at(b)] = transport(img);
  }

  // --- h image of the new handle's cocore ----------------------------------
  // Follows the negative-side arc c- in parallel, entering and leaving its
  // band through the ends adjacent to the arc's side endpoints, with the
  // fresh handle's core spliced in at the head.
  {
    const Curve& cm = arc.c_minus;
    int strip_cell = ns.band_cell(strip_band);
    int fresh_cell = ns.band_cell(fresh_band);
    int nt_cell = ns.band_cell(band_of_old.at(t_band));

    // Sides of the t band the negative arc starts and ends on, and the band
    // ends adjacent to them (side iv 1 follows end 0, side iv 3 follows
    // end 2 counterclockwise).
    int start_side = cm.steps.front().iv_from;
    int end_side = cm.steps.back().iv_to;
    require((start_side == 1 && end_side == 3) || (start_side == 3 && end_side == 1),
            "InvalidArc", "negative arc must join the two sides of its band");
    int entry_end = start_side - 1;  // 0 or 2
    int exit_end = end_side - 1;
    SlotRef entry_foot = entry_end == 0 ? s.band(t_band).a : s.band(t_band).b;
    SlotRef exit_foot = exit_end == 0 ? s.band(t_band).a : s.band(t_band).b;
    SlotRef na = map_slot(entry_foot);
    SlotRef nb = map_slot(exit_foot);
    require(na.disk == p1, "InvalidArc",
            "negative arc entry must sit on the head piece");
    require(nb.disk == p2, "InvalidArc",
            "negative arc exit must sit on the tail piece");

    std::vector<CurveSpec::Step> w;
    // Built in the head-to-tail sense and reversed at the end: the strip's
    // boundary bit at the head is interval 3, the tail bit interval 1.
    // Start on the head bit, leave through the strip's head foot, run over
    // the fresh handle.
    w.push_back({strip_cell, 3, 0});
    w.push_back({ns.disk_cell(p1), ns.slot_interval(0), ns.slot_interval(1)});
    w.push_back({fresh_cell, 0, 2});
    // Enter the t band parallel to the negative arc's first chord.
    w.push_back({ns.disk_cell(p1), ns.slot_interval(2), ns.slot_interval(na.slot)});
    auto finish = [&](std::vector<CurveSpec::Step> steps) {
      steps.push_back({ns.disk_cell(p2), ns.slot_interval(nb.slot), ns.slot_interval(0)});
      steps.push_back({strip_cell, 2, 1});
      Curve am;
      am.kind = Curve::Kind::Arc;
      am.steps = std::move(steps);
      res.pob.h_images[strip_band] = normalize(ns, am.reversed());
      res.new_suture_slope = bypass_slope_step(slope_infinity(), arc.arc_slope);
      validate_pob(res.pob);
    };
    if (cm.steps.size() == 1) {
      // The untwisted cocore: one pass through the band from end to end.
      w.push_back({nt_cell, entry_end, exit_end});
      finish(std::move(w));
      return res;
    }
    w.push_back({nt_cell, entry_end, cm.steps.front().iv_to});
    // Middle chords transported across the split.
    for (size_t i = 1; i + 1 < cm.steps.size(); ++i) {
      const auto& st = cm.steps[i];
      if (st.cell != d0) {
        w.push_back({map_cell(st.cell), st.iv_from, st.iv_to});
        continue;
      }
      bool fh = in_head_piece(st.iv_from), th = in_head_piece(st.iv_to);
      auto [cf, ivf] = map_iv_d0(st.iv_from, std::nullopt);
      auto [ct, ivt] = map_iv_d0(st.iv_to, std::nullopt);
      (void)cf;
      (void)ct;
      if (fh == th) {
        w.push_back({ns.disk_cell(fh ? p1 : p2), ivf, ivt});
      } else if (fh) {
        w.push_back({ns.disk_cell(p1), ivf, ns.slot_interval(0)});
        w.push_back({strip_cell, 0, 2});
        w.push_back({ns.disk_cell(p2), ns.slot_interval(0), ivt});
      } else {
        w.push_back({ns.disk_cell(p2), ivf, ns.slot_interval(0)});
        w.push_back({strip_cell, 2, 0});
        w.push_back({ns.disk_cell(p1), ns.slot_interval(0), ivt});
      }
    }
    // Leave the t band parallel to the final chord and close up on the
    // strip's tail-side bit.
    w.push_back({nt_cell, cm.steps.back().iv_from, exit_end});
    finish(std::move(w));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Distinguished attachment arcs.

namespace {

// The gap adjacent to a side of the t band along the boundary, walking the
// free-boundary cycle: side iv 1 is entered from the gap before the end-0
// slot; side iv 3 from the gap before the end-2 slot.
int gap_before_slot(const CombSurface& s, const SlotRef& slot) {
  int iv = s.slot_interval(slot.slot);
  int m = s.cells().intervals(s.disk_cell(slot.disk));
  return (iv - 1 + m) % m;
}

}  // namespace

BypassArc meridian_bypass_arc(const PartialOpenBook& pob, SliceSign choice) {
  require(pob.origin.has_value(), "NotKnotComplement",
          "pob does not arise from a knot complement");
  const ComplementOrigin& org = *pob.origin;
  const CombSurface& s = pob.s;
  int t = org.t_band;

  // c-: the monodromy image of the half-meridian cocore of t, with one
  // left twist along the knot absorbed by the slope change of the
  // attachment (the dividing set moves from the page framing to the
  // meridian).
  Curve cminus = apply_twists(
      s, org.monodromy, dehn_twist(s, org.knot, Handedness::Left, cocore(s, t)));

  // c+: a chord joining the gaps adjacent to the two sides of t, which lie
  // on the two suture components.
  SlotRef fa = s.band(t).a, fb = s.band(t).b;
  require(fa.disk == fb.disk, "NotKnotComplement",
          "meridian arcs need both feet of the distinguished band on one disk");
  int g_head = gap_before_slot(s, fa);  // adjacent to side 1 of t
  int g_tail = gap_before_slot(s, fb);  // adjacent to side 3 of t
  require(g_head != g_tail, "NotKnotComplement",
          "degenerate page: both band sides on one gap");

  BypassArc arc;
  arc.c_plus = make_arc({{s.disk_cell(fa.disk), g_tail, g_head}}, frac(1, 2),
                        frac(1, 2));
  arc.head_at_to = true;
  arc.c_minus = cminus;
  if (choice == SliceSign::Minus) {
    arc.c_plus = arc.c_plus.reversed();
    arc.head_at_to = true;  // head now at the former tail
    arc.c_minus = cminus.reversed();
  }
  arc.side = BypassSide::Front;
  arc.arc_slope = make_slope(-1, 2);
  arc.slice_sign = choice;
  arc.slice = make_basic_slice(slope_infinity(), make_slope(0, 1), choice);
  return arc;
}

BypassArc stabilization_bypass_arc(const PartialOpenBook& pob, SliceSign sign) {
  require(pob.origin.has_value(), "NotKnotComplement",
          "pob does not arise from a knot complement");
  const ComplementOrigin& org = *pob.origin;
  const CombSurface& s = pob.s;

  BypassArc arc = meridian_bypass_arc(pob, SliceSign::Plus);
  // Same attaching chord, but the negative-side arc wraps once more around
  // the knot: the stabilized complement differs by one twist along it.
  Handedness h = sign == SliceSign::Plus ? Handedness::Right : Handedness::Left;
  arc.c_minus = normalize(s, dehn_twist(s, org.knot, h, arc.c_minus));
  arc.arc_slope = make_slope(-3, 2);
  // The layer of the positive stabilization carries the relative Euler
  // class opposite to the meridian layer's, so that stacking them is
  // overtwisted while the negative composite is one slice.  Reported in the
  // stabilized trivialization, where the composite with the meridian layer
  // is literally [0,1] stacked under [1,inf].
  arc.slice_sign = opposite(sign);
  arc.slice = make_basic_slice(slope_infinity(), make_slope(1, 1), arc.slice_sign);
  return arc;
}

PartialOpenBook surgery_complement(const PartialOpenBook& pob, const Curve& l_parallel) {
  validate_pob(pob);
  Curve l = normalize(pob.s, l_parallel);
  require(l.closed(), "MalformedCurve", "surgery curve must be closed");
  PartialOpenBook out = pob;
  for (auto& [b, img] : out.h_images) {
    img = dehn_twist(out.s, l, Handedness::Right, img);
  }
  if (out.origin) {
    out.origin->monodromy.push_back({l, Handedness::Right});
  }
  validate_pob(out);
  return out;
}

}  // namespace cfloer
