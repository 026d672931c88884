#pragma once

// Curve systems on glued convex cells, drawn exactly.
//
// A surface is presented as convex cells whose boundary intervals are
// either free (surface boundary) or glued in orientation-reversing pairs.
// Curves are words of chords through cells.  Strands crossing a gluing are
// ordered by walk divergence, which realizes the system in minimal
// position; chords are then drawn as exact rational segments on a circle
// and the induced combinatorial map (crossings, rotation, regions) is
// extracted.

#include <array>
#include <map>
#include <set>
#include <vector>

#include "cfloer/errors.hpp"

namespace cfloer {

struct Frac {
  long long n = 0;
  long long d = 1;
};

Frac frac(long long n, long long d = 1);
Frac fadd(const Frac& a, const Frac& b);
Frac fsub(const Frac& a, const Frac& b);
Frac fmul(const Frac& a, const Frac& b);
Frac fdiv(const Frac& a, const Frac& b);
int fcmp(const Frac& a, const Frac& b);

class CellComplex {
public:
  int add_cell(int intervals);
  void glue(int c1, int i1, int c2, int i2);
  int cells() const { return static_cast<int>(n_ivs_.size()); }
  int intervals(int cell) const { return n_ivs_[cell]; }
  bool glued(int cell, int iv) const;
  std::pair<int, int> partner(int cell, int iv) const;
  int gluing_count() const { return static_cast<int>(gluings_.size()) / 2; }
  int euler() const { return cells() - gluing_count(); }

  // Free-interval cycles along the boundary; each entry is (cell, iv).
  std::vector<std::vector<std::pair<int, int>>> boundary_cycles() const;

private:
  std::vector<int> n_ivs_;
  std::map<std::pair<int, int>, std::pair<int, int>> gluings_;
};

struct CurveSpec {
  struct Step {
    int cell = 0;
    int iv_from = 0;
    int iv_to = 0;
  };
  bool closed = true;
  std::vector<Step> steps;
  Frac tick_start{1, 2};  // endpoint position inside the first free interval
  Frac tick_end{1, 2};    // likewise for the last
  int kind = 0;           // caller labels, carried through
  int index = 0;
};

// Anchors a mark to the region incident to a boundary point of a cell;
// works for free and glued intervals alike.
struct MarkSpec {
  int cell = 0;
  int iv = 0;
  Frac pos{1, 2};
};

// Overrides the strand order of two passages on a gluing, identified by
// the steps before the crossing.  Heegaard diagrams need this: the
// perturbed basis arc must cross its partner once even though the minimal
// position would pull them apart.
struct OrderPin {
  int cell = 0;
  int iv = 0;
  int curve_a = 0, step_a = 0;
  int curve_b = 0, step_b = 0;
  bool a_first = true;  // counterclockwise on the named cell's interval
};

struct Arrangement {
  struct Crossing {
    int cell = 0;
    int curve_a = 0, step_a = 0;
    int curve_b = 0, step_b = 0;
    int sign = +1;  // orientation of (strand a, strand b)
  };
  std::vector<Crossing> crossings;
  int self_crossing_count = 0;

  struct Hit {
    int step = 0;
    int crossing = 0;
    bool as_a = true;
  };
  std::vector<std::vector<Hit>> hits;  // per curve, in word order

  // Reduced map for diagrams of closed curves: four ports per crossing in
  // rotation order, each the start of a strand run to another port.
  struct Port {
    int curve = -1;
    bool along = true;  // strand leaves in the curve's own direction
    int to_crossing = -1;
    int to_port = -1;
  };
  std::vector<std::array<Port, 4>> ports;
  std::vector<std::array<int, 4>> quad_region;  // sector between port p, p+1
  std::vector<int> floating_curves;             // closed curves with no crossings

  struct Region {
    bool boundary = false;
    bool disk = false;
    int corners = 0;
    std::vector<int> marks;
    std::set<int> holes;  // boundary cycles of the complex the region touches
    std::vector<std::pair<int, int>> corner_list;  // (crossing, port)
  };
  std::vector<Region> regions;
  std::vector<std::set<int>> region_adj;

  // Ordered boundary points (strand passages and arc endpoints) per glued or
  // free interval, counterclockwise; used by the cut/split operations.
  struct BoundaryPoint {
    int curve = -1;
    int step = -1;
    bool chord_start = false;
  };
  std::map<std::pair<int, int>, std::vector<BoundaryPoint>> boundary_points;

  int crossings_between(int curve_x, int curve_y) const;
};

Arrangement arrange(const CellComplex& cx, const std::vector<CurveSpec>& curves,
                    const std::vector<MarkSpec>& marks = {},
                    const std::vector<OrderPin>& pins = {});

}  // namespace cfloer
