#include "cfloer/arrange.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cfloer {

// ---------------------------------------------------------------------------
// Exact fractions.

namespace {

long long checked(__int128 v) {
  require(v <= INT64_MAX && v >= INT64_MIN, "ArithmeticOverflow",
          "exact arithmetic overflow");
  return static_cast<long long>(v);
}

Frac norm(__int128 n, __int128 d) {
  require(d != 0, "ArithmeticOverflow", "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  return Frac{checked(n), checked(d)};
}

}  // namespace

Frac frac(long long n, long long d) { return norm(n, d); }
Frac fadd(const Frac& a, const Frac& b) {
  return norm((__int128)a.n * b.d + (__int128)b.n * a.d, (__int128)a.d * b.d);
}
Frac fsub(const Frac& a, const Frac& b) {
  return norm((__int128)a.n * b.d - (__int128)b.n * a.d, (__int128)a.d * b.d);
}
Frac fmul(const Frac& a, const Frac& b) {
  return norm((__int128)a.n * b.n, (__int128)a.d * b.d);
}
Frac fdiv(const Frac& a, const Frac& b) {
  return norm((__int128)a.n * b.d, (__int128)a.d * b.n);
}
int fcmp(const Frac& a, const Frac& b) {
  __int128 l = (__int128)a.n * b.d, r = (__int128)b.n * a.d;
  return l < r ? -1 : (l > r ? 1 : 0);
}

// ---------------------------------------------------------------------------
// CellComplex.

int CellComplex::add_cell(int intervals) {
  require(intervals >= 1, "MalformedSurface", "cell needs at least one interval");
  n_ivs_.push_back(intervals);
  return cells() - 1;
}

void CellComplex::glue(int c1, int i1, int c2, int i2) {
  require(c1 >= 0 && c1 < cells() && i1 >= 0 && i1 < n_ivs_[c1] && c2 >= 0 &&
              c2 < cells() && i2 >= 0 && i2 < n_ivs_[c2],
          "MalformedSurface", "gluing out of range");
  require(!glued(c1, i1) && !glued(c2, i2), "SlotOccupied",
          "interval already glued");
  require(c1 != c2 || i1 != i2, "MalformedSurface", "cannot glue interval to itself");
  gluings_[{c1, i1}] = {c2, i2};
  gluings_[{c2, i2}] = {c1, i1};
}

bool CellComplex::glued(int cell, int iv) const {
  return gluings_.count({cell, iv}) > 0;
}

std::pair<int, int> CellComplex::partner(int cell, int iv) const {
  auto it = gluings_.find({cell, iv});
  require(it != gluings_.end(), "MalformedSurface", "interval is not glued");
  return it->second;
}

std::vector<std::vector<std::pair<int, int>>> CellComplex::boundary_cycles() const {
  std::set<std::pair<int, int>> todo;
  for (int c = 0; c < cells(); ++c)
    for (int i = 0; i < intervals(c); ++i)
      if (!glued(c, i)) todo.insert({c, i});

  auto next_free = [&](std::pair<int, int> f) {
    int c = f.first, i = (f.second + 1) % intervals(f.first);
    while (glued(c, i)) {
      auto p = partner(c, i);
      c = p.first;
      i = (p.second + 1) % intervals(c);
    }
    return std::make_pair(c, i);
  };

  std::vector<std::vector<std::pair<int, int>>> cycles;
  while (!todo.empty()) {
    auto start = *todo.begin();
    std::vector<std::pair<int, int>> cyc;
    auto cur = start;
    do {
      cyc.push_back(cur);
      todo.erase(cur);
      cur = next_free(cur);
    } while (cur != start);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

// ---------------------------------------------------------------------------
// Arrangement.

namespace {

struct Vec2 {
  Frac x, y;
};

Vec2 circle_point(const Frac& u) {
  // (1-u^2, 2u) / (1+u^2): strictly increasing cyclic order in u >= 0.
  Frac u2 = fmul(u, u);
  Frac den = fadd(frac(1), u2);
  return Vec2{fdiv(fsub(frac(1), u2), den), fdiv(fadd(u, u), den)};
}

Vec2 vsub(const Vec2& a, const Vec2& b) { return Vec2{fsub(a.x, b.x), fsub(a.y, b.y)}; }

int cross_sign(const Vec2& a, const Vec2& b) {
  return fcmp(fmul(a.x, b.y), fmul(a.y, b.x));
}

// Counterclockwise comparison of direction vectors (total cyclic order).
bool dir_less(const Vec2& a, const Vec2& b) {
  auto half = [](const Vec2& v) {
    int sy = fcmp(v.y, frac(0));
    if (sy != 0) return sy < 0 ? 1 : 0;
    return fcmp(v.x, frac(0)) < 0 ? 1 : 0;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross_sign(a, b) > 0;
}

struct StepRef {
  int curve, step;
};

struct Passage {
  int curve, step_before;  // crosses between step_before and its successor
  int x_pos = 0;           // ccw position on the canonical X side
};

struct GluingKey {
  int cell, iv;
  bool operator<(const GluingKey& o) const {
    return cell != o.cell ? cell < o.cell : iv < o.iv;
  }
};

// Walk cursor used by the divergence comparator.
struct Cursor {
  const std::vector<CurveSpec>* curves;
  int curve;
  int step;
  int dir;  // +1 forward, -1 backward
  bool alive = true;

  const CurveSpec& cv() const { return (*curves)[curve]; }
  const CurveSpec::Step& st() const { return cv().steps[step]; }
  int enter_iv() const { return dir > 0 ? st().iv_from : st().iv_to; }
  int exit_iv() const { return dir > 0 ? st().iv_to : st().iv_from; }

  // Endpoint tick if the walk stops after this step.
  bool exits_to_end() const {
    if (cv().closed) return false;
    int n = static_cast<int>(cv().steps.size());
    return dir > 0 ? step == n - 1 : step == 0;
  }
  Frac end_tick() const { return dir > 0 ? cv().tick_end : cv().tick_start; }

  void advance() {
    int n = static_cast<int>(cv().steps.size());
    step += dir;
    if (cv().closed) {
      step = (step % n + n) % n;
    } else if (step < 0 || step >= n) {
      alive = false;
    }
  }
};

struct ArrangementBuilder {
  const CellComplex& cx;
  const std::vector<CurveSpec>& curves;
  const std::vector<MarkSpec>& marks;
  const std::vector<OrderPin>& pins;
  Arrangement out;

  ArrangementBuilder(const CellComplex& c, const std::vector<CurveSpec>& cv,
                     const std::vector<MarkSpec>& mk, const std::vector<OrderPin>& pn)
      : cx(c), curves(cv), marks(mk), pins(pn) {}

  // ---- validation -------------------------------------------------------
  void validate() {
    for (const auto& cv : curves) {
      require(!cv.steps.empty(), "MalformedCurve", "empty curve word");
      int n = static_cast<int>(cv.steps.size());
      for (int k = 0; k < n; ++k) {
        const auto& s = cv.steps[k];
        require(s.cell >= 0 && s.cell < cx.cells() && s.iv_from >= 0 &&
                    s.iv_from < cx.intervals(s.cell) && s.iv_to >= 0 &&
                    s.iv_to < cx.intervals(s.cell),
                "MalformedCurve", "step references a missing cell or interval");
        bool last = k == n - 1;
        if (!last || cv.closed) {
          const auto& t = cv.steps[(k + 1) % n];
          require(cx.glued(s.cell, s.iv_to), "MalformedCurve",
                  "curve leaves a cell through an unglued interval");
          auto p = cx.partner(s.cell, s.iv_to);
          require(p.first == t.cell && p.second == t.iv_from, "MalformedCurve",
                  "consecutive steps are not glued to each other");
          require(!(s.iv_from == s.iv_to && cx.glued(s.cell, s.iv_from)),
                  "MalformedCurve", "backtracking step across a gluing");
        }
      }
      if (!cv.closed) {
        require(!cx.glued(cv.steps.front().cell, cv.steps.front().iv_from),
                "MalformedCurve", "arc must start on the boundary");
        require(!cx.glued(cv.steps.back().cell, cv.steps.back().iv_to),
                "MalformedCurve", "arc must end on the boundary");
        for (const Frac& t : {cv.tick_start, cv.tick_end}) {
          require(fcmp(t, frac(0)) > 0 && fcmp(t, frac(1)) < 0, "MalformedCurve",
                  "endpoint tick must lie strictly inside its interval");
        }
      }
    }
  }

  // ---- strand ordering on gluings ----------------------------------------
  std::map<GluingKey, std::vector<Passage>> passages;

  // Result of following two strand walks until they part ways.  The event
  // is identified canonically so that the two gluings at the ends of a
  // shared corridor can agree on which divergence decides the order.
  struct Divergence {
    bool diverged = false;
    int cmp = 0;  // -1: first walk enters earlier (ccw) at its start
    std::array<long long, 8> key{};
  };

  Divergence walk_cmp(Cursor a, Cursor b) const {
    Divergence d;
    int guard = 0;
    int cap = static_cast<int>(a.cv().steps.size() + b.cv().steps.size()) + 4;
    while (guard++ <= cap) {
      // Both cursors sit on steps in the same cell entered via the same iv.
      int m = cx.intervals(a.st().cell);
      int off_a = ((a.exit_iv() - a.enter_iv()) % m + m) % m;
      int off_b = ((b.exit_iv() - b.enter_iv()) % m + m) % m;
      bool end_a = a.exits_to_end(), end_b = b.exits_to_end();
      int verdict = 0;
      if (off_a != off_b) {
        verdict = off_a < off_b ? +1 : -1;  // earlier exit enters later
      } else if (end_a || end_b) {
        require(end_a == end_b, "MalformedCurve",
                "walks disagree about interval gluing");
        int c = fcmp(a.end_tick(), b.end_tick());
        if (c == 0) return d;  // identical endpoints; treated as parallel
        verdict = c < 0 ? +1 : -1;
      }
      if (verdict != 0) {
        d.diverged = true;
        d.cmp = verdict;
        bool a_first = std::make_pair(a.curve, a.step) < std::make_pair(b.curve, b.step);
        const Cursor& u = a_first ? a : b;
        const Cursor& v = a_first ? b : a;
        d.key = {u.st().cell,
                 u.enter_iv(),
                 u.curve,
                 u.step,
                 v.curve,
                 v.step,
                 a_first ? off_a : off_b,
                 a_first ? off_b : off_a};
        return d;
      }
      a.advance();
      b.advance();
      if (!a.alive || !b.alive) return d;
    }
    return d;
  }

  // Cursors describing the two sides of a passage relative to the gluing's
  // canonical sides (X = smaller key).
  void side_cursors(const Passage& p, const GluingKey& xside, Cursor& xw,
                    Cursor& yw) const {
    const CurveSpec& cv = curves[p.curve];
    int n = static_cast<int>(cv.steps.size());
    int k = p.step_before;
    int k1 = (k + 1) % n;
    const auto& after = cv.steps[k1];
    bool enters_y = !(after.cell == xside.cell && after.iv_from == xside.iv);
    if (enters_y) {
      yw = Cursor{&curves, p.curve, k1, +1};
      xw = Cursor{&curves, p.curve, k, -1};
    } else {
      yw = Cursor{&curves, p.curve, k, -1};
      xw = Cursor{&curves, p.curve, k1, +1};
    }
  }

  // Order of p against q as positions on the X side of the gluing:
  // -1 first, +1 later, 0 fully parallel.
  int passage_cmp(const GluingKey& key, const Passage& p, const Passage& q) const {
    Cursor px, py, qx, qy;
    side_cursors(p, key, px, py);
    side_cursors(q, key, qx, qy);
    Divergence dy = walk_cmp(py, qy);
    Divergence dx = walk_cmp(px, qx);
    if (!dy.diverged && !dx.diverged) return 0;
    // When both sides diverge the pair crosses once in this corridor; both
    // end gluings must consult the same event or extra crossings appear.
    bool use_y;
    if (!dy.diverged) {
      use_y = false;
    } else if (!dx.diverged) {
      use_y = true;
    } else {
      use_y = dy.key < dx.key;
    }
    // Y-entry order reverses on the X side; X-entry order is direct.
    return use_y ? -dy.cmp : dx.cmp;
  }

  bool fully_tied(const GluingKey& key, const Passage& p, const Passage& q) const {
    return passage_cmp(key, p, q) == 0;
  }

  bool crosses_into_y(const GluingKey& xkey, const Passage& p) const {
    const CurveSpec& cv = curves[p.curve];
    int n = static_cast<int>(cv.steps.size());
    const auto& after = cv.steps[(p.step_before + 1) % n];
    return !(after.cell == xkey.cell && after.iv_from == xkey.iv);
  }

  // Fully parallel strands have no walk divergence to order them; their
  // relative position must instead be chosen consistently along the whole
  // corridor, flipping once per cell (chord nesting) and once per side
  // change, otherwise spurious crossings appear.
  void fix_parallel_ties() {
    std::map<std::pair<int, int>, std::pair<GluingKey, int>> locate;
    for (auto& [key, ps] : passages) {
      for (int i = 0; i < static_cast<int>(ps.size()); ++i)
        locate[{ps[i].curve, ps[i].step_before}] = {key, i};
    }
    std::set<std::pair<std::pair<int, int>, int>> visited;  // (key, block start)

    for (auto& [key0, ps0] : passages) {
      int n0 = static_cast<int>(ps0.size());
      for (int b0 = 0; b0 < n0;) {
        int e0 = b0 + 1;
        while (e0 < n0 && fully_tied(key0, ps0[b0], ps0[e0])) ++e0;
        int size = e0 - b0;
        if (size < 2 ||
            visited.count({{key0.cell, key0.iv}, b0})) {
          b0 = e0;
          continue;
        }
        visited.insert({{key0.cell, key0.iv}, b0});

        // Corridor walk: start into the X-side cell of key0.
        GluingKey key = key0;
        std::vector<std::pair<int, int>> strands;  // (curve, step_before) by rank
        for (int i = b0; i < e0; ++i)
          strands.push_back({ps0[i].curve, ps0[i].step_before});
        bool into_x = true;
        int guard = 0;
        while (guard++ < 100000) {
          // Advance every strand one passage in the corridor direction.
          GluingKey next_key{-1, -1};
          std::vector<std::pair<int, int>> next_strands(size);
          bool ok = true;
          for (int r = 0; r < size && ok; ++r) {
            auto [cvi, k] = strands[r];
            const CurveSpec& cv = curves[cvi];
            int n = static_cast<int>(cv.steps.size());
            bool to_y = crosses_into_y(key, Passage{cvi, k});
            int k2 = (into_x == to_y) ? (k - 1 + n) % n : (k + 1) % n;
            auto it = locate.find({cvi, k2});
            if (it == locate.end()) {
              ok = false;
              break;
            }
            if (r == 0) {
              next_key = it->second.first;
            } else if (!(it->second.first.cell == next_key.cell &&
                         it->second.first.iv == next_key.iv)) {
              ok = false;
              break;
            }
            next_strands[r] = {cvi, k2};
          }
          if (!ok) break;

          // Rank transform: in-cell order on key's interval, reversed by the
          // chords across the shared cell, then expressed on next_key's X
          // side.  The shared cell is key's X cell iff we walked into X.
          int shared_cell = into_x ? key.cell : cx.partner(key.cell, key.iv).first;
          bool next_x_is_shared = next_key.cell == shared_cell;
          std::vector<int> newrank(size);
          for (int r = 0; r < size; ++r) {
            int incell = into_x ? r : size - 1 - r;
            int incell2 = size - 1 - incell;
            newrank[r] = next_x_is_shared ? incell2 : size - 1 - incell2;
          }

          int lo = INT32_MAX, hi = -1;
          for (int r = 0; r < size; ++r) {
            auto it = locate.find(next_strands[r]);
            lo = std::min(lo, it->second.second);
            hi = std::max(hi, it->second.second);
          }
          require(hi - lo + 1 == size, "InternalError",
                  "parallel bundle is not contiguous");

          bool seen = visited.count({{next_key.cell, next_key.iv}, lo}) > 0;
          std::vector<std::pair<int, int>> ordered(size);
          for (int r = 0; r < size; ++r) ordered[newrank[r]] = next_strands[r];
          if (!seen) {
            visited.insert({{next_key.cell, next_key.iv}, lo});
            auto& tps = passages[next_key];
            for (int r = 0; r < size; ++r) {
              tps[lo + r] = Passage{ordered[r].first, ordered[r].second};
              locate[ordered[r]] = {next_key, lo + r};
            }
          }

          // Continue across next_key into its far side.
          into_x = !next_x_is_shared;
          key = next_key;
          strands = std::move(ordered);
          if (seen) break;
        }
        b0 = e0;
      }
    }
    for (auto& [key, ps] : passages) {
      for (int i = 0; i < static_cast<int>(ps.size()); ++i) ps[i].x_pos = i;
    }
  }

  void order_passages() {
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
      const auto& cv = curves[ci];
      int n = static_cast<int>(cv.steps.size());
      int last = cv.closed ? n : n - 1;
      for (int k = 0; k < last; ++k) {
        const auto& s = cv.steps[k];
        GluingKey a{s.cell, s.iv_to};
        auto p = cx.partner(s.cell, s.iv_to);
        GluingKey b{p.first, p.second};
        GluingKey key = std::min(a, b);
        passages[key].push_back(Passage{ci, k});
      }
    }
    for (auto& [key, ps] : passages) {
      // Insertion sort: the pairwise order is geometric and need not be a
      // strict weak ordering in pathological inputs.
      std::vector<Passage> sorted;
      for (const Passage& p : ps) {
        auto it = sorted.begin();
        while (it != sorted.end()) {
          int c = passage_cmp(key, p, *it);
          if (c < 0) break;
          if (c == 0) {
            if (std::make_pair(p.curve, p.step_before) <
                std::make_pair(it->curve, it->step_before))
              break;
          }
          ++it;
        }
        sorted.insert(it, p);
      }
      ps = std::move(sorted);
      for (int i = 0; i < static_cast<int>(ps.size()); ++i) ps[i].x_pos = i;
    }
    fix_parallel_ties();
    apply_pins();
  }

  void apply_pins() {
    for (const OrderPin& pin : pins) {
      GluingKey named{pin.cell, pin.iv};
      require(cx.glued(pin.cell, pin.iv), "MalformedCurve",
              "order pin on an unglued interval");
      auto pr = cx.partner(pin.cell, pin.iv);
      GluingKey key = std::min(named, GluingKey{pr.first, pr.second});
      bool named_is_x = key.cell == pin.cell && key.iv == pin.iv;
      auto it = passages.find(key);
      require(it != passages.end(), "MalformedCurve", "order pin on an empty gluing");
      auto& ps = it->second;
      int ia = -1, ib = -1;
      for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
        if (ps[i].curve == pin.curve_a && ps[i].step_before == pin.step_a) ia = i;
        if (ps[i].curve == pin.curve_b && ps[i].step_before == pin.step_b) ib = i;
      }
      require(ia >= 0 && ib >= 0 && ia != ib, "MalformedCurve",
              "order pin does not match two passages");
      // Desired order in x-side ccw terms.
      bool want_a_first = named_is_x ? pin.a_first : !pin.a_first;
      if ((ia < ib) != want_a_first) std::swap(ps[ia], ps[ib]);
      for (int i = 0; i < static_cast<int>(ps.size()); ++i) ps[i].x_pos = i;
    }
  }

  // ---- boundary layout ----------------------------------------------------
  // A boundary point on a cell interval: a passage side or an arc endpoint.
  struct BPoint {
    Frac u;          // cell boundary parameter
    int node = -1;   // mesh node
    int curve = -1;  // strand touching the point
    int step = -1;   // step whose chord ends here (this cell's side)
    bool chord_is_from = false;  // the chord starts here (vs ends here)
    int passage_index = -1;      // index into the gluing's passage vector
  };
  // per (cell, iv): ordered boundary points
  std::map<std::pair<int, int>, std::vector<BPoint>> layout;

  int retry = 0;

  Frac spread(int j, int total, int base_iv) {
    // Monotone positions in (iv, iv+1); retries perturb the spacing to kill
    // accidental concurrences of three chords.
    long long acc = 0, tot = 0;
    std::vector<long long> w(total);
    for (int t = 0; t < total; ++t) {
      w[t] = 1 + ((static_cast<long long>(t) * t * retry + 7ll * t * retry) %
                  (2 * retry + 3));
      tot += w[t];
    }
    for (int t = 0; t <= j; ++t) acc += w[t];
    return fadd(frac(base_iv), frac(acc, tot + 1));
  }

  void build_layout() {
    layout.clear();
    // Passage sides.
    for (auto& [key, ps] : passages) {
      GluingKey x = key;
      auto pr = cx.partner(key.cell, key.iv);
      GluingKey y{pr.first, pr.second};
      int total = static_cast<int>(ps.size());
      for (const Passage& p : ps) {
        const CurveSpec& cv = curves[p.curve];
        int n = static_cast<int>(cv.steps.size());
        int k = p.step_before, k1 = (k + 1) % n;
        // Position on the X side (ascending) and Y side (descending).
        Frac ux = spread(p.x_pos, total, x.iv);
        Frac uy = spread(total - 1 - p.x_pos, total, y.iv);
        const auto& sk = cv.steps[k];
        bool k_on_x = sk.cell == x.cell && sk.iv_to == x.iv;
        // Chord of step k ends at the passage; chord of step k1 starts there.
        BPoint bx{k_on_x ? ux : uy, -1, p.curve, k, false, p.x_pos};
        BPoint by{k_on_x ? uy : ux, -1, p.curve, k1, true, p.x_pos};
        auto& lx = layout[{sk.cell, sk.iv_to}];
        lx.push_back(bx);
        const auto& sk1 = cv.steps[k1];
        auto& ly = layout[{sk1.cell, sk1.iv_from}];
        ly.push_back(by);
      }
    }
    // Arc endpoints.
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
      const auto& cv = curves[ci];
      if (cv.closed) continue;
      const auto& s0 = cv.steps.front();
      const auto& s1 = cv.steps.back();
      layout[{s0.cell, s0.iv_from}].push_back(
          BPoint{fadd(frac(s0.iv_from), cv.tick_start), -1, ci, 0, true, -1});
      layout[{s1.cell, s1.iv_to}].push_back(
          BPoint{fadd(frac(s1.iv_to), cv.tick_end), -1, ci,
                 static_cast<int>(cv.steps.size()) - 1, false, -1});
    }
    for (auto& [key, pts] : layout) {
      std::sort(pts.begin(), pts.end(),
                [](const BPoint& a, const BPoint& b) { return fcmp(a.u, b.u) < 0; });
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        require(fcmp(pts[i].u, pts[i + 1].u) != 0, "MalformedCurve",
                "two strands at the same boundary position");
      }
    }
  }

  // ---- mesh ---------------------------------------------------------------
  struct Node {
    int cell;
    Vec2 p;
    bool is_crossing = false;
    int crossing = -1;
  };
  std::vector<Node> nodes;

  struct HE {  // half-edge h; twin = h ^ 1
    int to = -1;
    int curve = -1;       // -1 for boundary edges
    int step = -1;
    bool along = false;   // curve direction
    int bcell = -1, biv = -1;  // boundary edges: interval they lie on
    bool exterior = false;     // outside of the convex cell
    int face = -1;
    int next = -1;
  };
  std::vector<HE> hes;
  std::vector<std::vector<int>> node_out;  // outgoing half-edges per node

  int new_node(int cell, const Vec2& p) {
    nodes.push_back(Node{cell, p, false, -1});
    node_out.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }

  int add_edge(int a, int b, int curve, int step, bool along_ab, int bcell, int biv) {
    int h = static_cast<int>(hes.size());
    hes.push_back(HE{b, curve, step, along_ab, bcell, biv});
    hes.push_back(HE{a, curve, step, !along_ab, bcell, biv});
    node_out[a].push_back(h);
    node_out[b].push_back(h + 1);
    return h;
  }

  std::vector<int> corner_node;                         // per (cell, iv)
  std::map<std::pair<int, int>, int> corner_index;      // (cell,iv) -> idx
  std::vector<std::vector<int>> chord_nodes;            // flattened per step

  struct CrossingRec {
    int node;
    int curve_a, step_a, curve_b, step_b;
    int sign;
  };
  std::vector<CrossingRec> crossrecs;

  // boundary sub-edges per (cell, iv) in ccw order (interior halves)
  std::map<std::pair<int, int>, std::vector<int>> bsubs;

  bool build_mesh() {
    nodes.clear();
    hes.clear();
    node_out.clear();
    crossrecs.clear();
    bsubs.clear();
    corner_index.clear();

    // Corner nodes.
    for (int c = 0; c < cx.cells(); ++c) {
      for (int i = 0; i < cx.intervals(c); ++i) {
        corner_index[{c, i}] = new_node(c, circle_point(frac(i)));
      }
    }
    // Boundary point nodes.
    for (auto& [key, pts] : layout) {
      for (auto& bp : pts) bp.node = new_node(key.first, circle_point(bp.u));
    }

    // Chords with exact crossings, cell by cell.
    struct Chord {
      int curve, step;
      int n_from, n_to;
      Vec2 a, b;
    };
    std::map<int, std::vector<Chord>> chords_in;
    auto endpoint_node = [&](int curve, int step, bool as_from) -> int {
      const auto& s = curves[curve].steps[step];
      int iv = as_from ? s.iv_from : s.iv_to;
      auto it = layout.find({s.cell, iv});
      require(it != layout.end(), "InternalError", "missing boundary layout");
      for (const auto& bp : it->second) {
        if (bp.curve == curve && bp.step == step && bp.chord_is_from == as_from)
          return bp.node;
      }
      fail("InternalError", "chord endpoint not found");
    };
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
      const auto& cv = curves[ci];
      for (int k = 0; k < static_cast<int>(cv.steps.size()); ++k) {
        int nf = endpoint_node(ci, k, true);
        int nt = endpoint_node(ci, k, false);
        chords_in[cv.steps[k].cell].push_back(
            Chord{ci, k, nf, nt, nodes[nf].p, nodes[nt].p});
      }
    }

    struct Split {
      Frac t;
      int node;
    };
    std::map<std::pair<int, int>, std::vector<Split>> splits;  // (curve, step)

    for (auto& [cell, chs] : chords_in) {
      for (size_t i = 0; i < chs.size(); ++i) {
        for (size_t j = i + 1; j < chs.size(); ++j) {
          const Chord& A = chs[i];
          const Chord& B = chs[j];
          if (A.n_from == B.n_from || A.n_from == B.n_to || A.n_to == B.n_from ||
              A.n_to == B.n_to)
            continue;  // shared endpoints never cross transversally
          Vec2 r = vsub(A.b, A.a), s = vsub(B.b, B.a);
          Vec2 qp = vsub(B.a, A.a);
          Frac denom = fsub(fmul(r.x, s.y), fmul(r.y, s.x));
          if (fcmp(denom, frac(0)) == 0) continue;
          Frac t = fdiv(fsub(fmul(qp.x, s.y), fmul(qp.y, s.x)), denom);
          Frac u = fdiv(fsub(fmul(qp.x, r.y), fmul(qp.y, r.x)), denom);
          auto strict01 = [](const Frac& v) {
            return fcmp(v, frac(0)) > 0 && fcmp(v, frac(1)) < 0;
          };
          if (!strict01(t) || !strict01(u)) continue;
          Vec2 pt{fadd(A.a.x, fmul(t, r.x)), fadd(A.a.y, fmul(t, r.y))};
          int nd = new_node(cell, pt);
          nodes[nd].is_crossing = true;
          nodes[nd].crossing = static_cast<int>(crossrecs.size());
          int sign = cross_sign(r, s) > 0 ? +1 : -1;
          crossrecs.push_back(CrossingRec{nd, A.curve, A.step, B.curve, B.step, sign});
          splits[{A.curve, A.step}].push_back(Split{t, nd});
          splits[{B.curve, B.step}].push_back(Split{u, nd});
        }
      }
    }

    // Reject coincident crossings (three chords through one point) by retry.
    for (auto& [key, sp] : splits) {
      std::sort(sp.begin(), sp.end(),
                [](const Split& a, const Split& b) { return fcmp(a.t, b.t) < 0; });
      for (size_t i = 0; i + 1 < sp.size(); ++i) {
        if (fcmp(sp[i].t, sp[i + 1].t) == 0) return false;
      }
    }

    // Chord sub-edges.
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
      const auto& cv = curves[ci];
      for (int k = 0; k < static_cast<int>(cv.steps.size()); ++k) {
        int prev = endpoint_node(ci, k, true);
        auto it = splits.find({ci, k});
        if (it != splits.end()) {
          for (const Split& s : it->second) {
            add_edge(prev, s.node, ci, k, true, -1, -1);
            prev = s.node;
          }
        }
        add_edge(prev, endpoint_node(ci, k, false), ci, k, true, -1, -1);
      }
    }

    // Boundary sub-edges, ccw around each cell.
    for (int c = 0; c < cx.cells(); ++c) {
      int m = cx.intervals(c);
      for (int i = 0; i < m; ++i) {
        std::vector<int> seq;
        seq.push_back(corner_index[{c, i}]);
        auto it = layout.find({c, i});
        if (it != layout.end()) {
          for (const auto& bp : it->second) seq.push_back(bp.node);
        }
        seq.push_back(corner_index[{c, (i + 1) % m}]);
        auto& lst = bsubs[{c, i}];
        for (size_t k = 0; k + 1 < seq.size(); ++k) {
          int h = add_edge(seq[k], seq[k + 1], -1, -1, false, c, i);
          hes[h + 1].exterior = true;  // the cw side looks out of the cell
          lst.push_back(h);
        }
      }
    }
    return true;
  }

  // ---- faces, regions ------------------------------------------------------
  std::vector<int> face_of;  // per half-edge; -1 = outer
  int n_faces = 0;

  void trace_faces() {
    // Rotation at each node: outgoing half-edges sorted ccw by direction.
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
      auto& outs = node_out[v];
      std::sort(outs.begin(), outs.end(), [&](int h1, int h2) {
        Vec2 d1 = vsub(nodes[hes[h1].to].p, nodes[v].p);
        Vec2 d2 = vsub(nodes[hes[h2].to].p, nodes[v].p);
        return dir_less(d1, d2);
      });
    }
    auto next_he = [&](int h) {
      int v = hes[h].to;
      int tw = h ^ 1;
      const auto& outs = node_out[v];
      int sz = static_cast<int>(outs.size());
      int idx = -1;
      for (int i = 0; i < sz; ++i) {
        if (outs[i] == tw) idx = i;
      }
      require(idx >= 0, "InternalError", "rotation missing twin");
      return outs[(idx - 1 + sz) % sz];
    };
    face_of.assign(hes.size(), -2);
    n_faces = 0;
    for (int h = 0; h < static_cast<int>(hes.size()); ++h) {
      if (face_of[h] != -2) continue;
      // Trace the orbit; mark as outer if it contains an exterior half-edge.
      std::vector<int> orbit;
      int cur = h;
      bool outer = false;
      do {
        orbit.push_back(cur);
        outer |= hes[cur].exterior;
        hes[cur].next = next_he(cur);
        cur = hes[cur].next;
      } while (cur != h);
      int id = outer ? -1 : n_faces++;
      for (int e : orbit) face_of[e] = id;
    }
  }

  // Union-find over faces.
  std::vector<int> uf;
  int find(int a) { return uf[a] == a ? a : uf[a] = find(uf[a]); }
  void unite(int a, int b) { uf[find(a)] = find(b); }

  std::vector<int> region_id_of_face;
  int n_regions = 0;

  void merge_regions() {
    uf.assign(n_faces, 0);
    std::iota(uf.begin(), uf.end(), 0);
    for (auto& [key, ps] : passages) {
      auto pr = cx.partner(key.cell, key.iv);
      const auto& ex = bsubs[{key.cell, key.iv}];
      const auto& ey = bsubs[{pr.first, pr.second}];
      require(ex.size() == ey.size(), "InternalError", "gluing sub-edge mismatch");
      int t = static_cast<int>(ex.size());
      for (int k = 0; k < t; ++k) {
        int fx = face_of[ex[k]];
        int fy = face_of[ey[t - 1 - k]];
        require(fx >= 0 && fy >= 0, "InternalError", "glued edge on outer face");
        unite(fx, fy);
      }
    }
    // Also dissolve gluings with no passages at all.
    for (int c = 0; c < cx.cells(); ++c) {
      for (int i = 0; i < cx.intervals(c); ++i) {
        if (!cx.glued(c, i)) continue;
        GluingKey key{c, i};
        auto pr = cx.partner(c, i);
        if (GluingKey{pr.first, pr.second} < key) continue;
        if (passages.count(key) || passages.count(GluingKey{pr.first, pr.second}))
          continue;
        const auto& ex = bsubs[{c, i}];
        const auto& ey = bsubs[{pr.first, pr.second}];
        int t = static_cast<int>(ex.size());
        for (int k = 0; k < t; ++k) unite(face_of[ex[k]], face_of[ey[t - 1 - k]]);
      }
    }
    region_id_of_face.assign(n_faces, -1);
    n_regions = 0;
    for (int f = 0; f < n_faces; ++f) {
      if (find(f) == f) region_id_of_face[f] = n_regions++;
    }
    for (int f = 0; f < n_faces; ++f) region_id_of_face[f] = region_id_of_face[find(f)];
  }

  int region_of_he(int h) const {
    int f = face_of[h];
    return f < 0 ? -1 : region_id_of_face[f];
  }

  // ---- final assembly ------------------------------------------------------
  void assemble() {
    out.hits.assign(curves.size(), {});
    out.crossings.clear();
    out.ports.clear();
    out.quad_region.clear();
    out.regions.assign(n_regions, {});
    out.region_adj.assign(n_regions, {});
    out.floating_curves.clear();
    out.self_crossing_count = 0;

    for (const auto& cr : crossrecs) {
      out.crossings.push_back(Arrangement::Crossing{
          nodes[cr.node].cell, cr.curve_a, cr.step_a, cr.curve_b, cr.step_b, cr.sign});
      if (cr.curve_a == cr.curve_b) ++out.self_crossing_count;
    }

    // Hits in word order: per step, crossings sorted along the chord; the
    // splits were sorted already, but easiest is to re-walk chord sub-edges.
    {
      // map from (curve, step) to ordered crossing nodes
      std::map<std::pair<int, int>, std::vector<int>> per_step;
      for (int h = 0; h < static_cast<int>(hes.size()); h += 2) {
        if (hes[h].curve < 0) continue;
        int to = hes[h].to;
        if (nodes[to].is_crossing)
          per_step[{hes[h].curve, hes[h].step}].push_back(nodes[to].crossing);
      }
      for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
        for (int k = 0; k < static_cast<int>(curves[ci].steps.size()); ++k) {
          auto it = per_step.find({ci, k});
          if (it == per_step.end()) continue;
          for (int cr : it->second) {
            bool as_a = out.crossings[cr].curve_a == ci && out.crossings[cr].step_a == k;
            out.hits[ci].push_back(Arrangement::Hit{k, cr, as_a});
          }
        }
      }
      for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
        if (curves[ci].closed && out.hits[ci].empty())
          out.floating_curves.push_back(ci);
      }
    }

    // Ports in rotation order with quadrant regions.
    out.ports.resize(out.crossings.size());
    out.quad_region.resize(out.crossings.size());
    std::vector<std::array<int, 4>> port_he(out.crossings.size());
    for (const auto& cr : crossrecs) {
      int v = cr.node;
      const auto& outs = node_out[v];
      require(outs.size() == 4, "InternalError", "crossing valence is not four");
      int cid = nodes[v].crossing;
      for (int p = 0; p < 4; ++p) {
        int h = outs[p];
        out.ports[cid][p] =
            Arrangement::Port{hes[h].curve, hes[h].along, -1, -1};
        out.quad_region[cid][p] = region_of_he(h);
        port_he[cid][p] = h;
      }
    }
    // Link ports along strand runs using per-curve hit sequences.
    auto port_index = [&](int cid, int curve, bool as_a, bool along) {
      const auto& cr = out.crossings[cid];
      int step = as_a ? cr.step_a : cr.step_b;
      (void)step;
      for (int p = 0; p < 4; ++p) {
        const auto& pt = out.ports[cid][p];
        if (pt.curve != curve || pt.along != along) continue;
        // Distinguish the two strands of a self-crossing by step id.
        int hstep = hes[port_he[cid][p]].step;
        int want = as_a ? cr.step_a : cr.step_b;
        if (hstep == want) return p;
      }
      fail("InternalError", "port lookup failed");
    };
    for (int ci = 0; ci < static_cast<int>(curves.size()); ++ci) {
      const auto& hs = out.hits[ci];
      if (hs.empty()) continue;
      if (!curves[ci].closed && hs.size() >= 1) {
        // Arc runs to the boundary; ports stay unlinked beyond the ends.
      }
      int n = static_cast<int>(hs.size());
      int last = curves[ci].closed ? n : n - 1;
      for (int i = 0; i < last; ++i) {
        const auto& h1 = hs[i];
        const auto& h2 = hs[(i + 1) % n];
        int p1 = port_index(h1.crossing, ci, h1.as_a, true);
        int p2 = port_index(h2.crossing, ci, h2.as_a, false);
        out.ports[h1.crossing][p1].to_crossing = h2.crossing;
        out.ports[h1.crossing][p1].to_port = p2;
        out.ports[h2.crossing][p2].to_crossing = h1.crossing;
        out.ports[h2.crossing][p2].to_port = p1;
      }
    }

    // Region flags: boundary contact and Euler characteristic.
    {
      // Global identification of nodes and edges across gluings.
      std::vector<int> nuf(nodes.size());
      std::iota(nuf.begin(), nuf.end(), 0);
      std::function<int(int)> nfind = [&](int a) {
        return nuf[a] == a ? a : nuf[a] = nfind(nuf[a]);
      };
      auto nunite = [&](int a, int b) { nuf[nfind(a)] = nfind(b); };

      std::vector<int> euf(hes.size() / 2);
      std::iota(euf.begin(), euf.end(), 0);
      std::function<int(int)> efind = [&](int a) {
        return euf[a] == a ? a : euf[a] = efind(euf[a]);
      };
      auto eunite = [&](int a, int b) { euf[efind(a)] = efind(b); };

      for (int c = 0; c < cx.cells(); ++c) {
        for (int i = 0; i < cx.intervals(c); ++i) {
          if (!cx.glued(c, i)) continue;
          GluingKey key{c, i};
          auto pr = cx.partner(c, i);
          if (GluingKey{pr.first, pr.second} < key) continue;
          const auto& ex = bsubs[{c, i}];
          const auto& ey = bsubs[{pr.first, pr.second}];
          int t = static_cast<int>(ex.size());
          for (int k = 0; k < t; ++k) {
            int hx = ex[k], hy = ey[t - 1 - k];
            eunite(hx / 2, hy / 2);
            // Matching endpoints, reversed.
            int ax = hx ^ 1, ay = hy;  // from-nodes
            nunite(hes[ax].to, hes[ay].to);
            nunite(hes[hx].to, hes[ay ^ 1].to);
          }
        }
      }

      // Boundary cycle index of each free interval.
      std::map<std::pair<int, int>, int> hole_of;
      {
        auto cycles = cx.boundary_cycles();
        for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
          for (const auto& it : cycles[i]) hole_of[it] = i;
        }
      }

      std::vector<std::set<int>> rnodes(n_regions), redges(n_regions);
      std::vector<int> rfaces(n_regions, 0);
      std::vector<char> counted(n_faces, 0);
      for (int h = 0; h < static_cast<int>(hes.size()); ++h) {
        int r = region_of_he(h);
        if (r < 0) continue;
        int f = face_of[h];
        if (!counted[f]) {
          counted[f] = 1;
          ++rfaces[r];
        }
        redges[r].insert(efind(h / 2));
        rnodes[r].insert(nfind(hes[h].to));
        rnodes[r].insert(nfind(hes[h ^ 1].to));
        if (hes[h].curve < 0 && !hes[h].exterior) {
          // Interior side of a boundary edge: free boundary unless glued.
          if (!cx.glued(hes[h].bcell, hes[h].biv)) {
            out.regions[r].boundary = true;
            out.regions[r].holes.insert(hole_of.at({hes[h].bcell, hes[h].biv}));
          }
        }
      }
      for (int r = 0; r < n_regions; ++r) {
        int chi = static_cast<int>(rnodes[r].size()) -
                  static_cast<int>(redges[r].size()) + rfaces[r];
        out.regions[r].disk = chi == 1;
      }
    }

    // Region adjacency across curve edges, and corner lists.
    for (int h = 0; h < static_cast<int>(hes.size()); h += 2) {
      if (hes[h].curve < 0) continue;
      int r1 = region_of_he(h), r2 = region_of_he(h ^ 1);
      if (r1 >= 0 && r2 >= 0 && r1 != r2) {
        out.region_adj[r1].insert(r2);
        out.region_adj[r2].insert(r1);
      }
    }
    for (int cid = 0; cid < static_cast<int>(out.crossings.size()); ++cid) {
      for (int p = 0; p < 4; ++p) {
        int r = out.quad_region[cid][p];
        if (r >= 0) {
          out.regions[r].corners += 1;
          out.regions[r].corner_list.push_back({cid, p});
        }
      }
    }

    // Boundary layout export.
    out.boundary_points.clear();
    for (const auto& [key, pts] : layout) {
      auto& lst = out.boundary_points[key];
      for (const auto& bp : pts)
        lst.push_back(Arrangement::BoundaryPoint{bp.curve, bp.step, bp.chord_is_from});
    }

    // Marks.
    for (int mi = 0; mi < static_cast<int>(marks.size()); ++mi) {
      const auto& mk = marks[mi];
      Frac u = fadd(frac(mk.iv), mk.pos);
      const auto& subs = bsubs.at({mk.cell, mk.iv});
      // Find the sub-edge whose span contains u.
      int chosen = -1;
      auto it = layout.find({mk.cell, mk.iv});
      int npts = it == layout.end() ? 0 : static_cast<int>(it->second.size());
      int idx = 0;
      while (idx < npts && fcmp(it->second[idx].u, u) < 0) ++idx;
      chosen = subs[idx];
      int r = region_of_he(chosen);
      require(r >= 0, "InternalError", "mark fell into the outer face");
      out.regions[r].marks.push_back(mi);
    }
  }

  bool attempt() {
    build_layout();
    if (!build_mesh()) return false;
    trace_faces();
    merge_regions();
    assemble();
    return true;
  }

  Arrangement run() {
    validate();
    order_passages();
    for (retry = 0; retry < 8; ++retry) {
      if (attempt()) return std::move(out);
    }
    fail("InternalError", "could not separate coincident crossings");
  }
};

}  // namespace

int Arrangement::crossings_between(int curve_x, int curve_y) const {
  int n = 0;
  for (const auto& c : crossings) {
    if ((c.curve_a == curve_x && c.curve_b == curve_y) ||
        (c.curve_a == curve_y && c.curve_b == curve_x))
      ++n;
  }
  return n;
}

Arrangement arrange(const CellComplex& cx, const std::vector<CurveSpec>& curves,
                    const std::vector<MarkSpec>& marks,
                    const std::vector<OrderPin>& pins) {
  ArrangementBuilder b(cx, curves, marks, pins);
  return b.run();
}

}  // namespace cfloer
