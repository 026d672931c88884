#pragma once

// Compact oriented surfaces with boundary, presented as base disks with
// attached bands, and embedded curves/arcs on them as combinatorial words.
//
// The cell view of a surface: disk d with k slots becomes a convex cell
// with intervals [slot 0, gap 0, slot 1, gap 1, ...] (a single free
// interval when k = 0); band b becomes a four-interval cell
// [end-a, side-a, end-b, side-b] with its ends glued to the slots.

#include <string>
#include <vector>

#include "cfloer/arrange.hpp"

namespace cfloer {

struct SlotRef {
  int disk = 0;
  int slot = 0;
  bool operator==(const SlotRef& o) const { return disk == o.disk && slot == o.slot; }
};

struct BandSpec {
  SlotRef a, b;
  bool half_twisted = false;  // must be false: twisted bands are rejected
};

class CombSurface {
public:
  CombSurface() = default;
  static CombSurface make(std::vector<int> disk_slots, std::vector<BandSpec> bands);

  int disk_count() const { return static_cast<int>(disk_slots_.size()); }
  int band_count() const { return static_cast<int>(bands_.size()); }
  int slots(int disk) const { return disk_slots_[disk]; }
  const BandSpec& band(int b) const { return bands_[b]; }
  bool slot_used(const SlotRef& s) const;

  int euler_characteristic() const { return disk_count() - band_count(); }

  // Cell view.
  const CellComplex& cells() const { return cx_; }
  int disk_cell(int d) const { return d; }
  int band_cell(int b) const { return disk_count() + b; }
  int slot_interval(int slot) const { return 2 * slot; }
  int gap_interval(int gap) const { return 2 * gap + 1; }

  // Free boundary items: gaps, unused slots and band sides, as
  // (cell, interval) pairs grouped into boundary cycles.
  std::vector<std::vector<std::pair<int, int>>> boundary_cycles() const {
    return cx_.boundary_cycles();
  }
  int boundary_component_count() const {
    return static_cast<int>(cx_.boundary_cycles().size());
  }

private:
  std::vector<int> disk_slots_;
  std::vector<BandSpec> bands_;
  CellComplex cx_;
};

// Attaches a band between two unused slots; existing curves stay valid.
CombSurface attach_band(const CombSurface& s, const SlotRef& a, const SlotRef& b);

// Connected components of the underlying surface.
int component_count(const CombSurface& s);

// A curve or arc as a word of chords through the surface's cells.
struct Curve {
  enum class Kind { Closed, Arc };
  Kind kind = Kind::Closed;
  std::vector<CurveSpec::Step> steps;
  Frac tick_start{1, 2};
  Frac tick_end{1, 2};

  bool closed() const { return kind == Kind::Closed; }
  Curve reversed() const;
  bool operator==(const Curve& o) const;  // words compared after rotation
};

Curve make_closed(std::vector<CurveSpec::Step> steps);
Curve make_arc(std::vector<CurveSpec::Step> steps, Frac tick_start = {1, 2},
               Frac tick_end = {1, 2});

// The arc crossing a band from side to side.
Curve cocore(const CombSurface& s, int band);

// Checks word validity on the surface; throws MalformedCurve.
void validate_curve(const CombSurface& s, const Curve& c);

// Backtracking-free normal form; idempotent.
Curve normalize(const CombSurface& s, const Curve& c);

struct IntersectionData {
  int count = 0;
  struct CrossingPoint {
    int cell = 0;
    int sign = +1;
  };
  std::vector<CrossingPoint> crossings;
};

// Minimal geometric intersection of two embedded normalized curves.
IntersectionData intersect(const CombSurface& s, const Curve& a, const Curve& b);

enum class Handedness { Right, Left };

// Image of x under the Dehn twist along the closed embedded curve c.
Curve dehn_twist(const CombSurface& s, const Curve& c, Handedness h, const Curve& x);

// The surface obtained by removing an open regular neighbourhood of c,
// re-expressed in disks-and-bands form.
CombSurface cut_along(const CombSurface& s, const Curve& c);

CurveSpec to_spec(const Curve& c, int kind = 0, int index = 0);

}  // namespace cfloer
