#include "cfloer/grid.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cfloer {

namespace {

bool is_permutation_vec(int n, const std::vector<int>& v) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int y : v) {
    if (y < 0 || y >= n || seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

GridDiagram validate_grid(int n, std::vector<int> x, std::vector<int> o) {
  require(n >= 2, "NotPermutation", "grid size must be at least 2");
  require(is_permutation_vec(n, x), "NotPermutation", "x is not a permutation");
  require(is_permutation_vec(n, o), "NotPermutation", "o is not a permutation");
  for (int i = 0; i < n; ++i) {
    require(x[i] != o[i], "Collision",
            "column " + std::to_string(i) + " has X and O in the same cell");
  }
  return GridDiagram{n, std::move(x), std::move(o)};
}

int link_components(const GridDiagram& g) {
  // Follow the knot: X in column i connects vertically to O(i), which
  // connects horizontally to the X in the same row.
  std::vector<int> col_of_x(g.n);
  for (int i = 0; i < g.n; ++i) col_of_x[g.x[i]] = i;
  std::vector<char> seen(g.n, 0);
  int comps = 0;
  for (int start = 0; start < g.n; ++start) {
    if (seen[start]) continue;
    ++comps;
    int c = start;
    while (!seen[c]) {
      seen[c] = 1;
      c = col_of_x[g.o[c]];
    }
  }
  return comps;
}

// ---------------------------------------------------------------------------
// Legendrian numerics via the rotated front.

namespace {

enum Dir { N, E, S, W };

struct Corner {
  Dir arm_a, arm_b;   // directions of the two arms leaving the corner
  Dir incoming;       // travel direction arriving at the corner
};

// Front conventions: rotate the grid clockwise by 45 degrees, horizontal
// strands in front.  Corners with arms {N,E} or {S,W} become cusps.
bool is_cusp(const Corner& c) {
  auto has = [&](Dir d) { return c.arm_a == d || c.arm_b == d; };
  return (has(N) && has(E)) || (has(S) && has(W));
}

bool cusp_up(const Corner& c) { return c.incoming == N || c.incoming == W; }

}  // namespace

LegendrianData legendrian_data(const GridDiagram& g, int orientation) {
  require(is_knot(g), "NotAKnot", "Legendrian data requires a knot diagram");
  const int n = g.n;
  std::vector<int> xcol_of_row(n), ocol_of_row(n);
  for (int i = 0; i < n; ++i) {
    xcol_of_row[g.x[i]] = i;
    ocol_of_row[g.o[i]] = i;
  }

  std::vector<Corner> corners;
  for (int c = 0; c < n; ++c) {
    // Corner at the X of column c: incoming horizontal from the O in its
    // row, outgoing vertical toward the O of the column.
    int r = g.x[c];
    int co = ocol_of_row[r];
    Dir harm = co < c ? W : E;
    Dir varm = g.o[c] > r ? N : S;
    Dir in_travel = co < c ? E : W;
    corners.push_back(Corner{harm, varm, in_travel});

    // Corner at the O of column c: incoming vertical from the X of the
    // column, outgoing horizontal toward the X in the O's row.
    int ro = g.o[c];
    int cx = xcol_of_row[ro];
    Dir varm2 = g.x[c] > ro ? N : S;
    Dir harm2 = cx < c ? W : E;
    Dir in_travel2 = g.x[c] > ro ? S : N;
    corners.push_back(Corner{varm2, harm2, in_travel2});
  }

  int writhe = 0;
  for (int c = 0; c < n; ++c) {
    int vlo = std::min(g.x[c], g.o[c]), vhi = std::max(g.x[c], g.o[c]);
    int dv = g.o[c] > g.x[c] ? +1 : -1;  // vertical travels X -> O
    for (int r = vlo + 1; r < vhi; ++r) {
      int ca = ocol_of_row[r], cb = xcol_of_row[r];
      int hlo = std::min(ca, cb), hhi = std::max(ca, cb);
      if (c > hlo && c < hhi) {
        int dh = cb > ca ? +1 : -1;  // horizontal travels O -> X
        writhe += dv * dh;           // horizontal strand in front
      }
    }
  }

  int cusps = 0, down = 0, up = 0;
  for (const auto& c : corners) {
    if (!is_cusp(c)) continue;
    ++cusps;
    if (cusp_up(c)) ++up; else ++down;
  }
  require(cusps % 2 == 0, "InternalError", "odd cusp count");

  LegendrianData d;
  d.tb = writhe - cusps / 2;
  d.rot = (down - up) / 2;
  d.orientation = orientation;
  if (orientation < 0) d.rot = -d.rot;
  return d;
}

// ---------------------------------------------------------------------------
// Invariant states and moves.

std::pair<GridState, GridState> invariant_states(const GridDiagram& g) {
  const int n = g.n;
  GridState minus(n), plus(n);
  for (int i = 0; i < n; ++i) {
    minus[i] = g.x[i];                     // lower-left corners
    plus[(i + 1) % n] = (g.x[i] + 1) % n;  // upper-right corners
  }
  return {plus, minus};
}

std::string to_string(StabCorner c) {
  switch (c) {
    case StabCorner::NW: return "nw";
    case StabCorner::NE: return "ne";
    case StabCorner::SW: return "sw";
    case StabCorner::SE: return "se";
  }
  return "?";
}

StabCorner stab_corner_from_string(const std::string& s) {
  if (s == "nw") return StabCorner::NW;
  if (s == "ne") return StabCorner::NE;
  if (s == "sw") return StabCorner::SW;
  if (s == "se") return StabCorner::SE;
  fail("BadPosition", "unknown stabilization corner '" + s + "'");
}

GridDiagram grid_stabilize(const GridDiagram& g, StabCorner corner, int column) {
  require(column >= 0 && column < g.n, "BadPosition",
          "no column " + std::to_string(column));
  const int n = g.n, c = column, r = g.x[c];
  const bool qe = corner == StabCorner::NE || corner == StabCorner::SE;
  const bool qn = corner == StabCorner::NE || corner == StabCorner::NW;

  auto shift_col = [&](int i) { return i + (i > c ? 1 : 0); };
  auto shift_row = [&](int y) { return y + (y > r ? 1 : 0); };

  std::vector<int> nx(n + 1, -1), no(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    if (i == c) continue;
    nx[shift_col(i)] = shift_row(g.x[i]);
    if (g.o[i] != r) {
      no[shift_col(i)] = shift_row(g.o[i]);
    } else {
      no[shift_col(i)] = r + (qn ? 0 : 1);  // old O in the split row
    }
  }
  // The 2x2 block: X markings on the diagonal avoiding the fresh O.
  nx[c + (qe ? 0 : 1)] = r + (qn ? 1 : 0);
  nx[c + (qe ? 1 : 0)] = r + (qn ? 0 : 1);
  no[c + (qe ? 1 : 0)] = r + (qn ? 1 : 0);
  // Old O of the split column goes to the new column without a block O.
  no[c + (qe ? 0 : 1)] = shift_row(g.o[c]);

  return validate_grid(n + 1, std::move(nx), std::move(no));
}

// Validated by the stabilization suite: these corners drop tb by one and
// move rot by +1 / -1 respectively under the orientation conventions above;
// NW and SE leave the Legendrian type unchanged.
StabCorner legendrian_positive_corner() { return StabCorner::SW; }
StabCorner legendrian_negative_corner() { return StabCorner::NE; }

GridDiagram translate(const GridDiagram& g, int dx, int dy) {
  const int n = g.n;
  dx = ((dx % n) + n) % n;
  dy = ((dy % n) + n) % n;
  std::vector<int> nx(n), no(n);
  for (int i = 0; i < n; ++i) {
    nx[(i + dx) % n] = (g.x[i] + dy) % n;
    no[(i + dx) % n] = (g.o[i] + dy) % n;
  }
  return validate_grid(n, std::move(nx), std::move(no));
}

bool columns_commute(const GridDiagram& g, int i) {
  require(i >= 0 && i + 1 < g.n, "BadPosition", "column pair out of range");
  int a1 = std::min(g.x[i], g.o[i]), b1 = std::max(g.x[i], g.o[i]);
  int a2 = std::min(g.x[i + 1], g.o[i + 1]), b2 = std::max(g.x[i + 1], g.o[i + 1]);
  bool disjoint = b1 < a2 || b2 < a1;
  bool nested = (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
  return disjoint || nested;
}

GridDiagram commute_columns(const GridDiagram& g, int i) {
  require(columns_commute(g, i), "BadPosition", "columns interleave");
  GridDiagram h = g;
  std::swap(h.x[i], h.x[i + 1]);
  std::swap(h.o[i], h.o[i + 1]);
  return h;
}

// ---------------------------------------------------------------------------
// Tilde complex.

namespace {

// #{(a,b) in A x B : a < b in both coordinates}; points given doubled.
using Pts = std::vector<std::pair<int, int>>;

int count_dominated(const Pts& a, const Pts& b) {
  int c = 0;
  for (const auto& p : a)
    for (const auto& q : b)
      if (p.first < q.first && p.second < q.second) ++c;
  return c;
}

int j_twice(const Pts& a, const Pts& b) {
  return count_dominated(a, b) + count_dominated(b, a);
}

Pts state_points(const GridState& s) {
  Pts p;
  p.reserve(s.size());
  for (int i = 0; i < static_cast<int>(s.size()); ++i) p.push_back({2 * i, 2 * s[i]});
  return p;
}

Pts marking_points(const std::vector<int>& m) {
  Pts p;
  p.reserve(m.size());
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    p.push_back({2 * i + 1, 2 * m[i] + 1});
  return p;
}

}  // namespace

long long GridComplex::index_of(const GridState& s) const {
  // Lehmer rank.
  const int n = g.n;
  long long idx = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (s[j] < s[i]) ++smaller;
    idx += smaller * factorial(n - 1 - i);
  }
  return idx;
}

GridState GridComplex::state_of(long long idx) const {
  const int n = g.n;
  std::vector<int> avail(n);
  std::iota(avail.begin(), avail.end(), 0);
  GridState s(n);
  for (int i = 0; i < n; ++i) {
    long long f = factorial(n - 1 - i);
    int k = static_cast<int>(idx / f);
    idx %= f;
    s[i] = avail[k];
    avail.erase(avail.begin() + k);
  }
  return s;
}

GridComplex build_grid_complex(const GridDiagram& g, int budget) {
  require(g.n <= budget, "BudgetExceeded",
          "grid size " + std::to_string(g.n) + " exceeds budget " +
              std::to_string(budget));
  const int n = g.n;
  GridComplex gc;
  gc.g = g;
  gc.n_states = factorial(n);
  gc.complex = F2ChainComplex(static_cast<int>(gc.n_states));
  gc.maslov.resize(gc.n_states);
  gc.alexander2.resize(gc.n_states);

  const Pts xm = marking_points(g.x), om = marking_points(g.o);
  const int i_oo = count_dominated(om, om);
  const int i_xx = count_dominated(xm, xm);
  const bool knot = is_knot(g);

  GridState s(n);
  std::iota(s.begin(), s.end(), 0);
  long long idx = 0;
  std::vector<Bigrading> gradings(knot ? gc.n_states : 0);
  do {
    const Pts sp = state_points(s);
    int m = count_dominated(sp, sp) - j_twice(sp, om) + i_oo + 1;
    int a2 = j_twice(sp, xm) - j_twice(sp, om) - i_xx + i_oo - (n - 1);
    gc.maslov[idx] = m;
    gc.alexander2[idx] = a2;
    if (knot) {
      require(a2 % 2 == 0, "InternalError", "odd doubled Alexander grading on a knot");
      gradings[idx] = Bigrading{m, a2 / 2};
    }
    ++idx;
  } while (std::next_permutation(s.begin(), s.end()));

  // Empty rectangles: one per ordered column pair, with the state at the
  // lower-left and upper-right corners, no marking and no state point inside.
  std::iota(s.begin(), s.end(), 0);
  idx = 0;
  do {
    F2Vec image;
    for (int c1 = 0; c1 < n; ++c1) {
      for (int c2 = 0; c2 < n; ++c2) {
        if (c1 == c2) continue;
        const int colspan = (c2 - c1 + n) % n;
        const int r1 = s[c1];
        const int rowspan = (s[c2] - r1 + n) % n;
        bool ok = true;
        for (int off = 0; off < colspan && ok; ++off) {
          int k = (c1 + off) % n;
          if (off > 0 && ((s[k] - r1 + n) % n) < rowspan && s[k] != r1) ok = false;
          if (((g.x[k] - r1 + n) % n) < rowspan) ok = false;
          if (((g.o[k] - r1 + n) % n) < rowspan) ok = false;
        }
        if (!ok) continue;
        GridState y = s;
        std::swap(y[c1], y[c2]);
        long long yidx = gc.index_of(y);
        require(gc.maslov[yidx] == gc.maslov[idx] - 1, "InternalError",
                "rectangle does not drop the Maslov grading by one");
        require(gc.alexander2[yidx] == gc.alexander2[idx], "InternalError",
                "rectangle does not preserve the Alexander grading");
        image.push_back(static_cast<int>(yidx));
      }
    }
    // Cancel duplicate targets mod 2.
    std::sort(image.begin(), image.end());
    F2Vec reduced;
    for (size_t i = 0; i < image.size();) {
      size_t j = i;
      while (j < image.size() && image[j] == image[i]) ++j;
      if ((j - i) % 2 == 1) reduced.push_back(image[i]);
      i = j;
    }
    gc.complex.set_boundary(static_cast<int>(idx), std::move(reduced));
    ++idx;
  } while (std::next_permutation(s.begin(), s.end()));

  if (knot) gc.complex.set_gradings(std::move(gradings));
  return gc;
}

GridHomology grid_homology(const GridDiagram& g, int budget) {
  require(is_knot(g), "NotAKnot", "grid homology fixtures must be knots");
  GridComplex gc = build_grid_complex(g, budget);
  HomologyReport rep = homology(gc.complex);

  GridHomology out;
  out.tilde_total = rep.total_rank;
  out.tilde_ranks = rep.rank_by_bigrading;
  out.stabilization_factor = 1ll << (g.n - 1);
  require(rep.total_rank % out.stabilization_factor == 0, "InternalError",
          "tilde rank is not divisible by 2^(n-1)");
  out.hat_total = static_cast<int>(rep.total_rank / out.stabilization_factor);

  // Deconvolve tilde = hat (x) V^(n-1), V with generators at (0,0), (-1,-1):
  // tilde(M,A) = sum_k C(n-1,k) hat(M+k, A+k).
  const int m = g.n - 1;
  std::vector<long long> binom(m + 1);
  binom[0] = 1;
  for (int k = 1; k <= m; ++k) binom[k] = binom[k - 1] * (m - k + 1) / k;

  std::map<Bigrading, int> hat;
  // Process from the top so higher hat ranks are known first.
  for (auto it = out.tilde_ranks.rbegin(); it != out.tilde_ranks.rend(); ++it) {
    const Bigrading bg = it->first;
    long long v = it->second;
    for (int k = 1; k <= m; ++k) {
      auto h = hat.find(Bigrading{bg.maslov + k, bg.alexander + k});
      if (h != hat.end()) v -= binom[k] * h->second;
    }
    require(v >= 0, "InternalError", "hat deconvolution went negative");
    if (v > 0) hat[bg] = static_cast<int>(v);
  }
  // Reconvolution must reproduce the tilde table exactly.
  std::map<Bigrading, int> recon;
  for (const auto& [bg, r] : hat) {
    for (int k = 0; k <= m; ++k) {
      recon[Bigrading{bg.maslov - k, bg.alexander - k}] +=
          static_cast<int>(binom[k]) * r;
    }
  }
  require(recon == out.tilde_ranks, "InternalError", "hat deconvolution inconsistent");
  out.hat_ranks = std::move(hat);
  int hat_sum = 0;
  for (const auto& [bg, r] : out.hat_ranks) hat_sum += r;
  require(hat_sum == out.hat_total, "InternalError", "hat total mismatch");
  return out;
}

ClassStatus class_status(const GridDiagram& g, int sign, int budget) {
  GridComplex gc = build_grid_complex(g, budget);
  auto [plus, minus] = invariant_states(g);
  const GridState& st = sign >= 0 ? plus : minus;
  long long idx = gc.index_of(st);
  HomologyReport rep = homology(gc.complex, F2Vec{static_cast<int>(idx)});
  require(rep.is_cycle, "InternalError", "invariant state is not a cycle");
  ClassStatus cs;
  cs.zero = rep.is_boundary;
  cs.grading = Bigrading{gc.maslov[idx], gc.alexander2[idx] / 2};
  return cs;
}

}  // namespace cfloer
