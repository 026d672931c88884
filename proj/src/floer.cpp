#include "cfloer/floer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cfloer {

namespace detail {
// Which way the domain boundary runs at a source corner; validated against
// the grid module's differential in the test suite.
static bool g_x_corner_alpha = true;
bool x_corner_exits_alpha() { return g_x_corner_alpha; }
void set_x_corner(bool exits_alpha) { g_x_corner_alpha = exits_alpha; }
}  // namespace detail

std::vector<GeneratorTuple> enumerate_generators(const HeegaardDiagram& d) {
  const DiagramMap& m = d.map;
  const int k = d.n_pairs;
  std::vector<std::vector<int>> on_alpha(k);
  for (int c = 0; c < m.crossings(); ++c) on_alpha[m.pair_of[c].first].push_back(c);

  std::vector<GeneratorTuple> out;
  GeneratorTuple cur(k, -1);
  std::vector<char> beta_used(k, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int c : on_alpha[i]) {
      int b = m.pair_of[c].second;
      if (beta_used[b]) continue;
      beta_used[b] = 1;
      cur[i] = c;
      rec(i + 1);
      beta_used[b] = 0;
    }
  };
  if (k > 0 && d.floating.empty()) rec(0);
  if (k == 0) out.push_back({});
  return out;
}

bool is_nice(const HeegaardDiagram& d) {
  for (const auto& r : d.map.regions) {
    if (r.boundary || !r.marks.empty()) continue;
    if (!r.disk) return false;
    if (r.corners != 2 && r.corners != 4) return false;
  }
  return true;
}

int DiagramComplex::index_of(const GeneratorTuple& g) const {
  auto it = std::lower_bound(generators.begin(), generators.end(), g);
  require(it != generators.end() && *it == g, "InternalError", "unknown generator");
  return static_cast<int>(it - generators.begin());
}

namespace {

// A candidate domain: an embedded disk union of regions with two or four
// convex corners, no basepoints and no boundary.
struct Domain {
  std::vector<std::pair<int, int>> x_corners;  // (crossing, alpha idx)
  std::vector<std::pair<int, int>> y_corners;
  std::vector<int> interior;                   // crossings inside
};

struct DomainFinder {
  const HeegaardDiagram& d;
  const DiagramMap& m;
  long long budget;
  long long visited = 0;

  std::vector<char> eligible;
  std::vector<std::set<int>> adj;
  std::vector<std::vector<std::pair<int, int>>> corners_of;  // region -> (crossing, port)
  std::vector<Domain> domains;

  explicit DomainFinder(const HeegaardDiagram& dia, long long b)
      : d(dia), m(dia.map), budget(b) {
    int nr = static_cast<int>(m.regions.size());
    eligible.assign(nr, 0);
    for (int r = 0; r < nr; ++r) {
      const auto& reg = m.regions[r];
      eligible[r] = !reg.boundary && reg.marks.empty() && reg.disk;
    }
    adj.assign(nr, {});
    corners_of.assign(nr, {});
    for (int c = 0; c < m.crossings(); ++c) {
      for (int p = 0; p < 4; ++p) {
        int r1 = m.quad[c][p], r2 = m.quad[c][(p + 3) % 4];
        if (r1 != r2) {
          adj[r1].insert(r2);
          adj[r2].insert(r1);
        }
        corners_of[m.quad[c][p]].push_back({c, p});
      }
    }
  }

  // Analyzes a region subset; appends a domain if it is an empty embedded
  // bigon or rectangle shape.
  void consider(const std::set<int>& u) {
    // Quadrant pattern per crossing.
    std::map<int, int> pattern;  // crossing -> bitmask of ports in U
    for (int r : u) {
      for (auto& [c, p] : corners_of[r]) pattern[c] |= 1 << p;
    }
    std::vector<std::pair<int, int>> convex;
    std::vector<int> interior;
    for (auto& [c, bits] : pattern) {
      int k = __builtin_popcount(bits);
      if (k == 1) {
        convex.push_back({c, __builtin_ctz(bits)});
      } else if (k == 2) {
        // Adjacent quadrants are fine (boundary runs straight through);
        // opposite quadrants pinch the disk.
        if (bits == 0b0101 || bits == 0b1010) return;
      } else if (k == 3) {
        return;  // concave corner: not a bigon or rectangle
      } else if (k == 4) {
        interior.push_back(c);
      }
    }
    if (convex.size() != 2 && convex.size() != 4) return;

    // Euler characteristic of the closed union.
    std::set<std::pair<int, int>> edges;  // canonical port end
    for (auto& [c, bits] : pattern) {
      for (int p = 0; p < 4; ++p) {
        bool touches = (bits & (1 << p)) || (bits & (1 << ((p + 3) % 4)));
        if (!touches) continue;
        const auto& pt = m.ports[c][p];
        auto self = std::make_pair(c, p);
        auto other = std::make_pair(pt.to_cross, pt.to_port);
        edges.insert(std::min(self, other));
      }
    }
    int chi = static_cast<int>(pattern.size()) - static_cast<int>(edges.size()) +
              static_cast<int>(u.size());
    if (chi != 1) return;

    // Classify corners: the region boundary leaves the crossing along port
    // p of the corner quadrant; x corners exit along alpha.
    Domain dom;
    dom.interior = interior;
    for (auto& [c, p] : convex) {
      bool x_corner =
          (m.ports[c][p].kind == 0) == detail::x_corner_exits_alpha();
      auto entry = std::make_pair(c, m.pair_of[c].first);
      if (x_corner) {
        dom.x_corners.push_back(entry);
      } else {
        dom.y_corners.push_back(entry);
      }
    }
    if (dom.x_corners.size() != dom.y_corners.size()) return;
    if (convex.size() == 4) {
      // Rectangles swap two alphas between two betas.
      auto ab = [&](const std::pair<int, int>& e) {
        return m.pair_of[e.first];
      };
      std::set<int> xa, ya, xb, yb;
      for (auto& e : dom.x_corners) {
        xa.insert(ab(e).first);
        xb.insert(ab(e).second);
      }
      for (auto& e : dom.y_corners) {
        ya.insert(ab(e).first);
        yb.insert(ab(e).second);
      }
      if (xa != ya || xb != yb || xa.size() != 2 || xb.size() != 2) return;
    }
    domains.push_back(std::move(dom));
  }

  void run() {
    int nr = static_cast<int>(m.regions.size());
    // Connected subset enumeration with a forbidden set, seeded at each
    // eligible region as its minimal element.
    for (int seed = 0; seed < nr; ++seed) {
      if (!eligible[seed]) continue;
      std::set<int> u{seed};
      std::function<void(std::set<int>&, std::set<int>&)> grow =
          [&](std::set<int>& cur, std::set<int>& forbidden) {
            require(++visited <= budget, "BudgetExceeded",
                    "domain search exceeded its budget");
            consider(cur);
            std::set<int> frontier;
            for (int r : cur) {
              for (int nb : adj[r]) {
                if (nb > seed && eligible[nb] && !cur.count(nb) &&
                    !forbidden.count(nb))
                  frontier.insert(nb);
              }
            }
            std::set<int> banned = forbidden;
            for (int nb : frontier) {
              cur.insert(nb);
              grow(cur, banned);
              cur.erase(nb);
              banned.insert(nb);
            }
          };
      std::set<int> forbidden;
      grow(u, forbidden);
    }
  }
};

}  // namespace

DiagramComplex differential(const HeegaardDiagram& d, long long budget) {
  require(is_nice(d), "NotNice",
          "differential requires every unmarked region to be a bigon or square");

  DiagramComplex out;
  out.generators = enumerate_generators(d);
  std::sort(out.generators.begin(), out.generators.end());
  const int n = static_cast<int>(out.generators.size());
  out.complex = F2ChainComplex(n);

  DomainFinder finder(d, budget);
  finder.run();

  const DiagramMap& m = d.map;
  for (int gi = 0; gi < n; ++gi) {
    const GeneratorTuple& x = out.generators[gi];
    F2Vec image;
    for (const Domain& dom : finder.domains) {
      bool from_here = true;
      for (auto& [c, a] : dom.x_corners) from_here &= x[a] == c;
      if (!from_here) continue;
      bool empty_inside = true;
      for (int c : dom.interior) {
        empty_inside &= x[m.pair_of[c].first] != c;
      }
      if (!empty_inside) continue;
      GeneratorTuple y = x;
      if (dom.x_corners.size() == 1) {
        y[dom.y_corners[0].second] = dom.y_corners[0].first;
      } else {
        for (auto& [c, a] : dom.y_corners) y[a] = c;
      }
      // The target must still be a matching (it is, by the corner pattern).
      image.push_back(out.index_of(y));
    }
    std::sort(image.begin(), image.end());
    F2Vec reduced;
    for (size_t i = 0; i < image.size();) {
      size_t j = i;
      while (j < image.size() && image[j] == image[i]) ++j;
      if ((j - i) % 2 == 1) reduced.push_back(image[i]);
      i = j;
    }
    out.complex.set_boundary(gi, std::move(reduced));
  }
  require(out.complex.boundary_squares_to_zero(), "BoundaryNotSquareZero",
          "diagram differential does not square to zero");
  return out;
}

// ---------------------------------------------------------------------------
// Relative Alexander grading via an exact domain solve.

namespace {

// Dense exact Gaussian elimination over Q.
struct RatSolver {
  int cols;
  std::vector<std::vector<Frac>> rows;  // augmented [A | b]

  explicit RatSolver(int c) : cols(c) {}

  void add(std::vector<Frac> row, Frac rhs) {
    row.push_back(rhs);
    rows.push_back(std::move(row));
  }

  // Returns any solution, or nullopt when inconsistent.
  std::optional<std::vector<Frac>> solve() {
    int nr = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < nr; ++c) {
      int sel = -1;
      for (int i = r; i < nr; ++i) {
        if (fcmp(rows[i][c], frac(0)) != 0) {
          sel = i;
          break;
        }
      }
      if (sel < 0) continue;
      std::swap(rows[r], rows[sel]);
      Frac inv = rows[r][c];
      for (int j = c; j <= cols; ++j) rows[r][j] = fdiv(rows[r][j], inv);
      for (int i = 0; i < nr; ++i) {
        if (i == r || fcmp(rows[i][c], frac(0)) == 0) continue;
        Frac f = rows[i][c];
        for (int j = c; j <= cols; ++j)
          rows[i][j] = fsub(rows[i][j], fmul(f, rows[r][j]));
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (int i = r; i < nr; ++i) {
      if (fcmp(rows[i][cols], frac(0)) != 0) return std::nullopt;
    }
    std::vector<Frac> sol(cols, frac(0));
    for (int i = 0; i < r; ++i) sol[pivot_col[i]] = rows[i][cols];
    return sol;
  }
};

}  // namespace

std::optional<int> relative_alexander(const HeegaardDiagram& d,
                                      const GeneratorTuple& x,
                                      const GeneratorTuple& y) {
  const DiagramMap& m = d.map;
  require(!d.z_marks.empty() && !d.w_marks.empty(), "MalformedDiagram",
          "relative gradings need both families of basepoints");
  if (x == y) return 0;

  // Unknowns: one multiplicity per region, one cycle constant per curve.
  const int nr = static_cast<int>(m.regions.size());
  const int k = d.n_pairs;
  const int cols = nr + 2 * k;
  RatSolver solver(cols);

  // Walk each curve's edge cycle accumulating corner hits; the coefficient
  // of each edge is the curve constant plus the prefix.
  auto curve_walk = [&](int kind, int index) {
    // Find a starting port on this curve.
    for (int c = 0; c < m.crossings(); ++c) {
      for (int p = 0; p < 4; ++p) {
        const auto& pt = m.ports[c][p];
        if (pt.kind == kind && pt.index == index && pt.along) {
          return std::make_pair(c, p);
        }
      }
    }
    return std::make_pair(-1, -1);
  };

  for (int kind = 0; kind < 2; ++kind) {
    for (int idx = 0; idx < k; ++idx) {
      auto [c0, p0] = curve_walk(kind, idx);
      if (c0 < 0) continue;  // floating curve
      int c = c0, p = p0;
      Frac prefix = frac(0);
      int guard = 0;
      do {
        require(++guard < 100000, "InternalError", "curve walk did not close");
        // Edge from port (c,p): left region quad[c][p], right quad[c][p-1].
        int left = m.quad[c][p];
        int right = m.quad[c][(p + 3) % 4];
        // Jump condition: m_left - m_right = coefficient of this edge.
        std::vector<Frac> row(cols, frac(0));
        row[left] = fadd(row[left], frac(1));
        row[right] = fsub(row[right], frac(1));
        row[nr + kind * k + idx] = frac(-1);
        solver.add(std::move(row), prefix);
        // Advance to the next crossing; update the prefix by the corner
        // change there: alphas count y - x, betas count x - y.
        const auto& pt = m.ports[c][p];
        int nc = pt.to_cross;
        int na = m.pair_of[nc].first;
        int delta = 0;
        if (x[na] == nc) delta += 1;
        if (y[na] == nc) delta -= 1;
        if (kind == 1) delta = -delta;
        prefix = fadd(prefix, frac(delta));
        // Continue along the curve: each crossing carries exactly one
        // forward port of the curve.
        int np = -1;
        for (int q = 0; q < 4; ++q) {
          const auto& qt = m.ports[nc][q];
          if (qt.kind == kind && qt.index == idx && qt.along) np = q;
        }
        require(np >= 0, "InternalError", "curve walk lost its port");
        c = nc;
        p = np;
      } while (!(c == c0 && p == p0));
    }
  }

  // Boundary regions carry multiplicity zero; closed diagrams instead pin
  // one region to remove the fundamental-class ambiguity.
  bool has_boundary = false;
  for (int r = 0; r < nr; ++r) has_boundary |= m.regions[r].boundary;
  if (has_boundary) {
    for (int r = 0; r < nr; ++r) {
      if (!m.regions[r].boundary) continue;
      std::vector<Frac> row(cols, frac(0));
      row[r] = frac(1);
      solver.add(std::move(row), frac(0));
    }
  } else {
    std::vector<Frac> row(cols, frac(0));
    row[0] = frac(1);
    solver.add(std::move(row), frac(0));
  }

  auto sol = solver.solve();
  if (!sol) return std::nullopt;

  auto mark_region = [&](int mark) {
    for (int r = 0; r < nr; ++r) {
      for (int mm : m.regions[r].marks) {
        if (mm == mark) return r;
      }
    }
    fail("InternalError", "mark lost");
  };
  Frac total = frac(0);
  for (int zm : d.z_marks) total = fadd(total, (*sol)[mark_region(zm)]);
  for (int wm : d.w_marks) total = fsub(total, (*sol)[mark_region(wm)]);
  require(total.d == 1, "InternalError", "non-integral basepoint count");
  return static_cast<int>(total.n);
}

}  // namespace cfloer
