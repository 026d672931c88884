#pragma once

// Open books, partial open books, their sutured boundary data, the
// knot-complement construction and the bypass-attachment rewrite.

#include <map>
#include <optional>
#include <vector>

#include "cfloer/slopes.hpp"
#include "cfloer/surface.hpp"

namespace cfloer {

struct OpenBook {
  CombSurface page;
  std::vector<std::pair<Curve, Handedness>> monodromy;  // twist word, applied in order
  std::optional<Curve> marked_knot;
};

// Applies the monodromy word to a curve on the page.
Curve apply_monodromy(const OpenBook& ob, const Curve& c);
Curve apply_twists(const CombSurface& s,
                   const std::vector<std::pair<Curve, Handedness>>& word,
                   const Curve& c);

// Provenance carried by complements of marked knots; the bypass machinery
// needs the distinguished band and the monodromy.
struct ComplementOrigin {
  int t_band = -1;  // the band consumed by the knot neighbourhood
  std::vector<std::pair<Curve, Handedness>> monodromy;
  Curve knot;
};

struct PartialOpenBook {
  CombSurface s;
  std::vector<int> p_bands;       // subset of band indices of s
  std::map<int, Curve> h_images;  // band -> image of its cocore under h
  std::optional<ComplementOrigin> origin;
};

// Identity partial open book on the given page with the given handles.
PartialOpenBook make_pob(CombSurface s, std::vector<int> p_bands);

void validate_pob(const PartialOpenBook& pob);

struct SuturedData {
  int suture_count = 0;
  // Each suture as the boundary cycle of R+ it shadows: (cell, interval)
  // pairs in the R+ presentation of the page.
  std::vector<std::vector<std::pair<int, int>>> gamma;
  int chi_plus = 0;
  int chi_minus = 0;
};

SuturedData sutures(const PartialOpenBook& pob);

// R+ = page minus the P-handles, as its own surface.
CombSurface positive_region(const PartialOpenBook& pob);

PartialOpenBook knot_complement(const OpenBook& ob);

enum class BypassSide { Front, Back };

struct BypassArc {
  Curve c_plus;            // single chord in a disk of the page, in R+
  bool head_at_to = true;  // which endpoint of c_plus is pushed
  Curve c_minus;           // arc between the two free sides of the t band
  BypassSide side = BypassSide::Front;
  Slope arc_slope{-1, 2};           // in the (meridian, page framing) basis
  SliceSign slice_sign = SliceSign::Plus;
  BasicSlice slice;                 // the layer realized, for reporting
};

struct BypassResult {
  PartialOpenBook pob;
  int strip_band = -1;   // the new P-handle (nu of the pushed arc)
  int fresh_band = -1;   // the handle attached near the head
  Slope new_suture_slope;
};

BypassResult bypass_attach(const PartialOpenBook& pob, const BypassArc& arc);

// The two meridian-producing attachment arcs; the choice flips which
// orientation of the knot the downstream diagram computes.
BypassArc meridian_bypass_arc(const PartialOpenBook& pob, SliceSign choice);

// Arcs realizing the positive / negative stabilization layers; same slope,
// opposite relative signs.
BypassArc stabilization_bypass_arc(const PartialOpenBook& pob, SliceSign sign);

// Post-composes every h image with a right-handed twist along the knot
// copy, modelling the complement of the surgery dual.
PartialOpenBook surgery_complement(const PartialOpenBook& pob, const Curve& l_parallel);

}  // namespace cfloer
