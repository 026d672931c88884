#include "cfloer/slopes.hpp"

#include <numeric>
#include <sstream>

namespace cfloer {

std::string Slope::str() const {
  if (q == 0) return "inf";
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

Slope make_slope(long long p, long long q) {
  require(!(p == 0 && q == 0), "MalformedSlope", "slope 0/0");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) return Slope{1, 0};
  long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return Slope{p, q};
}

long long slope_det(const Slope& a, const Slope& b) { return a.p * b.q - b.p * a.q; }

bool is_integral_basis(const Slope& a, const Slope& b) {
  long long d = slope_det(a, b);
  return d == 1 || d == -1;
}

bool slope_less(const Slope& a, const Slope& b) {
  if (a.is_infinity()) return false;
  if (b.is_infinity()) return true;
  return a.p * b.q < b.p * a.q;  // both q > 0
}

static bool slope_leq(const Slope& a, const Slope& b) { return !slope_less(b, a); }

bool in_range(const Slope& s, const SlopeRange& r) {
  if (r.lo == r.hi) return s == r.lo;
  if (slope_leq(r.lo, r.hi)) return slope_leq(r.lo, s) && slope_leq(s, r.hi);
  return slope_leq(r.lo, s) || slope_leq(s, r.hi);
}

static bool in_open_range(const Slope& s, const SlopeRange& r) {
  return in_range(s, r) && s != r.lo && s != r.hi;
}

BasicSlice make_basic_slice(const Slope& s0, const Slope& s1, SliceSign sign) {
  require(is_integral_basis(s0, s1), "NotIntegralBasis",
          "slopes " + s0.str() + ", " + s1.str() + " are not an integral basis");
  return BasicSlice{s0, s1, sign};
}

GlueResult glue(const BasicSlice& b1, const BasicSlice& b2) {
  require(b1.s1 == b2.s0, "SlopeMismatch",
          "middle slopes differ: " + b1.s1.str() + " vs " + b2.s0.str());
  if (!is_integral_basis(b1.s0, b2.s1)) return GlueResult{GlueKind::Indeterminate, {}};

  // The stacked layer is minimally twisting only when the two slope ranges
  // do not sweep the whole circle.
  bool full_circle = b1.s0 == b2.s1 || in_open_range(b1.s0, b2.range()) ||
                     in_open_range(b2.s1, b1.range());
  if (full_circle) return GlueResult{GlueKind::Indeterminate, {}};

  if (b1.sign != b2.sign) return GlueResult{GlueKind::Overtwisted, {}};
  return GlueResult{GlueKind::BasicSlice, make_basic_slice(b1.s0, b2.s1, b1.sign)};
}

Slope bypass_slope_step(const Slope& current, const Slope& arc_slope) {
  require(current != arc_slope, "UnsupportedPair",
          "arc slope equals dividing slope " + current.str());
  if (current.is_infinity()) {
    // Upper Farey neighbour of the arc slope: ceil(p/q).
    long long p = arc_slope.p, q = arc_slope.q;
    require(q != 0, "UnsupportedPair", "arc slope infinity");
    long long c = p / q + ((p % q != 0 && p > 0) ? 1 : 0);
    return make_slope(c, 1);
  }
  if (is_integral_basis(current, arc_slope)) return arc_slope;
  fail("UnsupportedPair",
       "no implemented step for dividing slope " + current.str() + " and arc slope " +
           arc_slope.str());
}

std::string to_string(SliceSign s) { return s == SliceSign::Plus ? "+" : "-"; }

std::string to_string(GlueKind k) {
  switch (k) {
    case GlueKind::BasicSlice: return "basic-slice";
    case GlueKind::Overtwisted: return "overtwisted";
    case GlueKind::Indeterminate: return "indeterminate";
  }
  return "?";
}

}  // namespace cfloer
