#pragma once

// Grid diagrams: validation, Legendrian numerics via the rotated front,
// the distinguished invariant states, stabilization/commutation moves and
// the tilde chain complex over F2 with absolute bigradings.

#include <map>
#include <utility>
#include <vector>

#include "cfloer/f2.hpp"

namespace cfloer {

struct GridDiagram {
  int n = 0;
  std::vector<int> x;  // x[col] = row of the X marking
  std::vector<int> o;  // o[col] = row of the O marking
};

// Throws NotPermutation / Collision on bad input.
GridDiagram validate_grid(int n, std::vector<int> x, std::vector<int> o);

int link_components(const GridDiagram& g);
inline bool is_knot(const GridDiagram& g) { return link_components(g) == 1; }

struct LegendrianData {
  int tb = 0;
  int rot = 0;
  int orientation = +1;  // -1 reverses the knot, negating rot
};

// Classical invariants of the Legendrian front obtained by rotating the
// grid projection (horizontal strands oriented O->X, verticals X->O,
// verticals crossing over).
LegendrianData legendrian_data(const GridDiagram& g, int orientation = +1);

using GridState = std::vector<int>;  // permutation: column -> row

// (x_plus, x_minus): the states at the upper-right / lower-left corners of
// the X markings.  Both are cycles in the tilde complex.
std::pair<GridState, GridState> invariant_states(const GridDiagram& g);

enum class StabCorner { NW, NE, SW, SE };

std::string to_string(StabCorner c);
StabCorner stab_corner_from_string(const std::string& s);

// Stabilizes at the X marking in the given column; the corner names the
// cell of the new 2x2 block carrying the fresh O marking.
GridDiagram grid_stabilize(const GridDiagram& g, StabCorner corner, int column);

// The corner types realizing Legendrian positive / negative stabilization
// under the conventions above.  Validated against tb/rot by the test
// suite rather than asserted a priori.
StabCorner legendrian_positive_corner();
StabCorner legendrian_negative_corner();

// Torus translations and (non-interleaved) column/row commutations.
GridDiagram translate(const GridDiagram& g, int dx, int dy);
bool columns_commute(const GridDiagram& g, int i);
GridDiagram commute_columns(const GridDiagram& g, int i);

struct GridComplex {
  GridDiagram g;
  long long n_states = 0;
  F2ChainComplex complex;           // graded iff the diagram is a knot
  std::vector<int> maslov;          // per state
  std::vector<int> alexander2;      // doubled Alexander grading, per state
  long long index_of(const GridState& s) const;
  GridState state_of(long long idx) const;
};

// Enumerates all n! states and the empty-rectangle differential with every
// marking blocked.  Throws BudgetExceeded when n exceeds the budget.
GridComplex build_grid_complex(const GridDiagram& g, int budget = 8);

struct GridHomology {
  int tilde_total = 0;
  std::map<Bigrading, int> tilde_ranks;  // knots only
  int hat_total = 0;
  std::map<Bigrading, int> hat_ranks;    // knots only
  long long stabilization_factor = 1;    // 2^(n-1)
};

GridHomology grid_homology(const GridDiagram& g, int budget = 8);

struct ClassStatus {
  bool zero = false;
  Bigrading grading;
};

// Homology status of the invariant state of the given sign (+1 / -1).
ClassStatus class_status(const GridDiagram& g, int sign, int budget = 8);

}  // namespace cfloer
