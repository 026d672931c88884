#include "cfloer/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace cfloer {

CombSurface CombSurface::make(std::vector<int> disk_slots, std::vector<BandSpec> bands) {
  CombSurface s;
  s.disk_slots_ = std::move(disk_slots);
  s.bands_ = std::move(bands);
  require(!s.disk_slots_.empty(), "MalformedSurface", "surface needs a base disk");
  for (int k : s.disk_slots_)
    require(k >= 0, "MalformedSurface", "negative slot count");

  for (int d = 0; d < s.disk_count(); ++d) {
    int k = s.disk_slots_[d];
    s.cx_.add_cell(k == 0 ? 1 : 2 * k);
  }
  std::map<std::pair<int, int>, int> used;
  for (int b = 0; b < s.band_count(); ++b) {
    const BandSpec& bs = s.bands_[b];
    require(!bs.half_twisted, "NotOrientable",
            "half-twisted bands give non-orientable surfaces");
    for (const SlotRef& sr : {bs.a, bs.b}) {
      require(sr.disk >= 0 && sr.disk < s.disk_count() && sr.slot >= 0 &&
                  sr.slot < s.disk_slots_[sr.disk],
              "MalformedSurface", "band references a missing slot");
      auto key = std::make_pair(sr.disk, sr.slot);
      require(!used.count(key), "SlotOccupied",
              "slot used by more than one band end");
      used[key] = b;
    }
    require(!(bs.a == bs.b), "MalformedSurface", "band ends on the same slot");
    int cell = s.cx_.add_cell(4);
    s.cx_.glue(cell, 0, s.disk_cell(bs.a.disk), s.slot_interval(bs.a.slot));
    s.cx_.glue(cell, 2, s.disk_cell(bs.b.disk), s.slot_interval(bs.b.slot));
  }
  return s;
}

bool CombSurface::slot_used(const SlotRef& s) const {
  return cx_.glued(disk_cell(s.disk), slot_interval(s.slot));
}

int component_count(const CombSurface& s) {
  const CellComplex& cx = s.cells();
  std::vector<int> uf(cx.cells());
  for (int i = 0; i < cx.cells(); ++i) uf[i] = i;
  std::function<int(int)> find = [&](int a) { return uf[a] == a ? a : uf[a] = find(uf[a]); };
  for (int c = 0; c < cx.cells(); ++c) {
    for (int i = 0; i < cx.intervals(c); ++i) {
      if (!cx.glued(c, i)) continue;
      auto p = cx.partner(c, i);
      uf[find(c)] = find(p.first);
    }
  }
  std::set<int> roots;
  for (int c = 0; c < cx.cells(); ++c) roots.insert(find(c));
  return static_cast<int>(roots.size());
}

CombSurface attach_band(const CombSurface& s, const SlotRef& a, const SlotRef& b) {
  require(!s.slot_used(a) && !s.slot_used(b), "SlotOccupied", "slot already carries a band");
  require(!(a == b), "MalformedSurface", "band ends on the same slot");
  std::vector<int> ds(s.disk_count());
  for (int d = 0; d < s.disk_count(); ++d) ds[d] = s.slots(d);
  std::vector<BandSpec> bs;
  for (int i = 0; i < s.band_count(); ++i) bs.push_back(s.band(i));
  bs.push_back(BandSpec{a, b});
  return CombSurface::make(std::move(ds), std::move(bs));
}

// ---------------------------------------------------------------------------
// Curves.

Curve make_closed(std::vector<CurveSpec::Step> steps) {
  Curve c;
  c.kind = Curve::Kind::Closed;
  c.steps = std::move(steps);
  return c;
}

Curve make_arc(std::vector<CurveSpec::Step> steps, Frac tick_start, Frac tick_end) {
  Curve c;
  c.kind = Curve::Kind::Arc;
  c.steps = std::move(steps);
  c.tick_start = tick_start;
  c.tick_end = tick_end;
  return c;
}

Curve cocore(const CombSurface& s, int band) {
  require(band >= 0 && band < s.band_count(), "MalformedCurve", "no such band");
  return make_arc({CurveSpec::Step{s.band_cell(band), 1, 3}});
}

Curve Curve::reversed() const {
  Curve r = *this;
  std::reverse(r.steps.begin(), r.steps.end());
  for (auto& st : r.steps) std::swap(st.iv_from, st.iv_to);
  std::swap(r.tick_start, r.tick_end);
  return r;
}

bool Curve::operator==(const Curve& o) const {
  if (kind != o.kind || steps.size() != o.steps.size()) return false;
  auto eq_step = [](const CurveSpec::Step& a, const CurveSpec::Step& b) {
    return a.cell == b.cell && a.iv_from == b.iv_from && a.iv_to == b.iv_to;
  };
  if (kind == Kind::Arc) {
    if (fcmp(tick_start, o.tick_start) != 0 || fcmp(tick_end, o.tick_end) != 0)
      return false;
    for (size_t i = 0; i < steps.size(); ++i)
      if (!eq_step(steps[i], o.steps[i])) return false;
    return true;
  }
  int n = static_cast<int>(steps.size());
  for (int rot = 0; rot < n; ++rot) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = eq_step(steps[(i + rot) % n], o.steps[i]);
    if (ok) return true;
  }
  return false;
}

CurveSpec to_spec(const Curve& c, int kind, int index) {
  CurveSpec sp;
  sp.closed = c.closed();
  sp.steps = c.steps;
  sp.tick_start = c.tick_start;
  sp.tick_end = c.tick_end;
  sp.kind = kind;
  sp.index = index;
  return sp;
}

void validate_curve(const CombSurface& s, const Curve& c) {
  // The arrangement machinery performs the full word validation.
  arrange(s.cells(), {to_spec(c)});
}

Curve normalize(const CombSurface& s, const Curve& c) {
  const CellComplex& cx = s.cells();
  std::vector<CurveSpec::Step> w = c.steps;
  bool closed = c.closed();

  auto reduce_once = [&]() -> bool {
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) {
      const auto& st = w[i];
      if (st.iv_from != st.iv_to || !cx.glued(st.cell, st.iv_from)) continue;
      // A backtracking step: remove it and merge its neighbours.  Arc ends
      // sit on free intervals, so end steps are never backtracks.
      if (n == 1 || (!closed && (i == 0 || i == n - 1))) {
        fail("MalformedCurve", "curve word reduces to nothing");
      }
      int prev = (i - 1 + n) % n, next = (i + 1) % n;
      if (prev == next) {
        // Two-step closed curve collapsing entirely.
        fail("MalformedCurve", "closed curve reduces to nothing");
      }
      require(w[prev].cell == w[next].cell, "InternalError",
              "U-turn neighbours in different cells");
      w[prev].iv_to = w[next].iv_to;
      // Remove steps i and next (careful with ordering).
      std::vector<CurveSpec::Step> nw;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == next) continue;
        nw.push_back(w[k]);
      }
      w.swap(nw);
      return true;
    }
    // Merge consecutive same-cell steps created by earlier removals.
    n = static_cast<int>(w.size());
    int last = closed ? n : n - 1;
    for (int i = 0; i < last && n > 1; ++i) {
      int j = (i + 1) % n;
      if (w[i].cell != w[j].cell) continue;
      if (cx.glued(w[i].cell, w[i].iv_to)) continue;  // genuine re-entry elsewhere
      w[i].iv_to = w[j].iv_to;
      w.erase(w.begin() + j);
      return true;
    }
    return false;
  };

  while (reduce_once()) {
  }
  Curve out = c;
  out.steps = std::move(w);
  validate_curve(s, out);
  return out;
}

IntersectionData intersect(const CombSurface& s, const Curve& a, const Curve& b) {
  Arrangement ar = arrange(s.cells(), {to_spec(a, 0, 0), to_spec(b, 1, 0)});
  require(ar.self_crossing_count == 0, "MalformedCurve",
          "curves must be embedded for intersection counts");
  IntersectionData out;
  for (const auto& cr : ar.crossings) {
    if (cr.curve_a == cr.curve_b) continue;
    int sign = cr.curve_a == 0 ? cr.sign : -cr.sign;  // orient as (a, b)
    out.crossings.push_back(IntersectionData::CrossingPoint{cr.cell, sign});
  }
  out.count = static_cast<int>(out.crossings.size());
  return out;
}

Curve dehn_twist(const CombSurface& s, const Curve& c, Handedness h, const Curve& x) {
  require(c.closed(), "NotClosed", "twist curves must be closed");
  Arrangement ar = arrange(s.cells(), {to_spec(c, 0, 0), to_spec(x, 1, 0)});
  require(ar.self_crossing_count == 0, "MalformedCurve",
          "twist requires embedded curves");

  // Crossings along x in word order, with the crossed c-step and the
  // direction in which to insert a copy of c.
  struct Ins {
    int xstep;
    int cstep;
    int dir;  // +1 follow c forward, -1 backward
  };
  std::vector<Ins> ins;
  for (const auto& hit : ar.hits[1]) {
    const auto& cr = ar.crossings[hit.crossing];
    if (cr.curve_a == cr.curve_b) continue;
    // Curves were passed as (c, x): sign orients (c-strand, x-strand).
    int dir = h == Handedness::Right ? cr.sign : -cr.sign;
    ins.push_back(Ins{hit.step, cr.step_a, dir});
  }
  if (ins.empty()) return normalize(s, x);

  const int cn = static_cast<int>(c.steps.size());
  std::vector<CurveSpec::Step> out;
  size_t at = 0;
  for (int k = 0; k < static_cast<int>(x.steps.size()); ++k) {
    int cur_from = x.steps[k].iv_from;
    int cell = x.steps[k].cell;
    while (at < ins.size() && ins[at].xstep == k) {
      int m = ins[at].cstep;
      if (ins[at].dir > 0) {
        out.push_back({cell, cur_from, c.steps[m].iv_to});
        for (int i = 1; i < cn; ++i) out.push_back(c.steps[(m + i) % cn]);
        cur_from = c.steps[m].iv_from;
      } else {
        out.push_back({cell, cur_from, c.steps[m].iv_from});
        for (int i = 1; i < cn; ++i) {
          const auto& st = c.steps[((m - i) % cn + cn) % cn];
          out.push_back({st.cell, st.iv_to, st.iv_from});
        }
        cur_from = c.steps[m].iv_to;
      }
      ++at;
    }
    out.push_back({cell, cur_from, x.steps[k].iv_to});
  }
  Curve tw = x;
  tw.steps = std::move(out);
  return normalize(s, tw);
}

// ---------------------------------------------------------------------------
// Cutting.

CombSurface cut_along(const CombSurface& s, const Curve& c) {
  const CellComplex& cx = s.cells();
  Arrangement ar = arrange(cx, {to_spec(c)});
  require(ar.self_crossing_count == 0, "MalformedCurve", "cut curve must be embedded");

  // For the face walk we enumerate boundary positions per cell (corners and
  // curve points); segment i is the boundary arc from position i to i+1.
  struct Pos {
    int iv;
    int idx_on_iv;  // -1 for the corner at the interval start
    int step = -1;
    bool chord_start = false;
  };
  std::vector<std::vector<Pos>> pos(cx.cells());
  for (int cell = 0; cell < cx.cells(); ++cell) {
    for (int iv = 0; iv < cx.intervals(cell); ++iv) {
      pos[cell].push_back(Pos{iv, -1});
      auto it = ar.boundary_points.find({cell, iv});
      if (it == ar.boundary_points.end()) continue;
      for (int j = 0; j < static_cast<int>(it->second.size()); ++j) {
        pos[cell].push_back(Pos{iv, j, it->second[j].step, it->second[j].chord_start});
      }
    }
  }

  // Chord partners within each cell: position index -> position index.
  std::vector<std::map<int, int>> chord_partner(cx.cells());
  for (int cell = 0; cell < cx.cells(); ++cell) {
    std::map<int, int> start_of, end_of;  // step -> position index
    for (int i = 0; i < static_cast<int>(pos[cell].size()); ++i) {
      const Pos& p = pos[cell][i];
      if (p.idx_on_iv < 0 || p.step < 0) continue;
      (p.chord_start ? start_of : end_of)[p.step] = i;
    }
    for (const auto& [step, i] : start_of) {
      auto it = end_of.find(step);
      require(it != end_of.end(), "InternalError", "unmatched chord endpoint");
      chord_partner[cell][i] = it->second;
      chord_partner[cell][it->second] = i;
    }
  }

  // Face walk: faces as cyclic lists of boundary segments.
  struct Seg {
    int cell, iv, sub;
  };
  struct NewCell {
    std::vector<Seg> segs;  // counterclockwise
  };
  std::vector<NewCell> pieces;

  for (int cell = 0; cell < cx.cells(); ++cell) {
    int np = static_cast<int>(pos[cell].size());
    // sub index of the segment starting at position i
    std::vector<int> sub_at(np);
    {
      std::map<int, int> counter;
      for (int i = 0; i < np; ++i) sub_at[i] = counter[pos[cell][i].iv]++;
    }
    std::vector<char> used(np, 0);  // segment from position i consumed
    for (int s0 = 0; s0 < np; ++s0) {
      if (used[s0]) continue;
      NewCell piece;
      int i = s0;
      do {
        require(!used[i], "InternalError", "face walk revisited a segment");
        used[i] = 1;
        piece.segs.push_back(Seg{cell, pos[cell][i].iv, sub_at[i]});
        int j = (i + 1) % np;
        auto cp = chord_partner[cell].find(j);
        if (cp != chord_partner[cell].end()) j = cp->second;
        i = j;
      } while (i != s0);
      pieces.push_back(std::move(piece));
    }
  }

  // Assemble the quotient: pieces become disks whose glued segments become
  // band feet; each original gluing sub-segment pair becomes a band.
  std::vector<int> disk_slots;
  std::vector<BandSpec> bands;
  // slot index of each glued segment within its piece
  std::map<std::tuple<int, int, int>, SlotRef> slot_of;
  for (int pid = 0; pid < static_cast<int>(pieces.size()); ++pid) {
    int nslots = 0;
    for (const Seg& sg : pieces[pid].segs) {
      if (cx.glued(sg.cell, sg.iv)) {
        slot_of[{sg.cell, sg.iv, sg.sub}] = SlotRef{pid, nslots};
        ++nslots;
      }
    }
    disk_slots.push_back(nslots);
  }
  std::set<std::pair<int, int>> done;
  for (int cell = 0; cell < cx.cells(); ++cell) {
    for (int iv = 0; iv < cx.intervals(cell); ++iv) {
      if (!cx.glued(cell, iv) || done.count({cell, iv})) continue;
      auto pr = cx.partner(cell, iv);
      done.insert({cell, iv});
      done.insert(pr);
      auto ita = ar.boundary_points.find({cell, iv});
      int t = ita == ar.boundary_points.end() ? 0 : static_cast<int>(ita->second.size());
      for (int k = 0; k <= t; ++k) {
        SlotRef sa = slot_of.at({cell, iv, k});
        SlotRef sb = slot_of.at({pr.first, pr.second, t - k});
        bands.push_back(BandSpec{sa, sb});
      }
    }
  }
  return CombSurface::make(std::move(disk_slots), std::move(bands));
}

}  // namespace cfloer
