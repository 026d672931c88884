#pragma once

// Slope arithmetic on the torus and the basic-slice gluing calculus.
// Slopes are extended rationals p/q with q >= 0 and 1/0 for infinity;
// ranges are circular arcs that wrap through infinity.

#include <cstdint>
#include <optional>
#include <string>

#include "cfloer/errors.hpp"

namespace cfloer {

struct Slope {
  long long p = 0;
  long long q = 1;

  bool is_infinity() const { return q == 0; }
  bool operator==(const Slope& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Slope& o) const { return !(*this == o); }
  std::string str() const;
};

// Normalizes to gcd(|p|,|q|)=1, q>=0, infinity stored as 1/0.
Slope make_slope(long long p, long long q);

inline Slope slope_infinity() { return Slope{1, 0}; }

// p0*q1 - p1*q0.
long long slope_det(const Slope& a, const Slope& b);

bool is_integral_basis(const Slope& a, const Slope& b);

// Linear order with infinity as the largest element.
bool slope_less(const Slope& a, const Slope& b);

// Circular interval [lo, hi]: the plain interval when lo <= hi, otherwise
// [lo, infinity] together with [-infinity, hi].
struct SlopeRange {
  Slope lo;
  Slope hi;
};

bool in_range(const Slope& s, const SlopeRange& r);

enum class SliceSign { Plus, Minus };

inline SliceSign opposite(SliceSign s) {
  return s == SliceSign::Plus ? SliceSign::Minus : SliceSign::Plus;
}

// Minimally twisting layer with dividing slopes s0 (back) and s1 (front);
// the sign records the relative Euler class choice.
struct BasicSlice {
  Slope s0;
  Slope s1;
  SliceSign sign = SliceSign::Plus;

  SlopeRange range() const { return SlopeRange{s1, s0}; }
};

BasicSlice make_basic_slice(const Slope& s0, const Slope& s1, SliceSign sign);

enum class GlueKind { BasicSlice, Overtwisted, Indeterminate };

struct GlueResult {
  GlueKind kind = GlueKind::Indeterminate;
  std::optional<BasicSlice> slice;  // present when kind == BasicSlice
};

// Stacks b2 on top of b1 (requires b1.s1 == b2.s0).
GlueResult glue(const BasicSlice& b1, const BasicSlice& b2);

// Dividing-set slope after one bypass attachment along an arc of the given
// slope.  Only the steps the calculus actually uses are implemented: from
// slope infinity the result is the upper Farey neighbour of the arc slope,
// and an arc slope adjacent to the current slope replaces it.  Anything
// else is UnsupportedPair.
Slope bypass_slope_step(const Slope& current, const Slope& arc_slope);

std::string to_string(SliceSign s);
std::string to_string(GlueKind k);

}  // namespace cfloer
