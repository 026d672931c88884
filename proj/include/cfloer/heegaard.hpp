#pragma once

// Heegaard diagrams: generation from partial open books and from open
// books with a marked knot, cap-off and puncture, and decidable diagram
// equivalence with a generator witness.

#include "cfloer/grid.hpp"
#include "cfloer/openbook.hpp"

namespace cfloer {

namespace detail {
// Convention knobs used while validating the construction; fixed values
// are asserted by the test suite.
bool pin_head();
bool pin_tail();
void set_pins(bool head, bool tail);
}  // namespace detail

// Reduced combinatorial map of the alpha/beta arrangement on the Heegaard
// surface: four ports per crossing in rotation order, quadrant regions,
// region flags.
struct DiagramMap {
  struct Port {
    int kind = 0;   // 0 = alpha, 1 = beta
    int index = 0;  // curve index within its family
    bool along = true;
    int to_cross = -1;
    int to_port = -1;
  };
  struct Region {
    bool boundary = false;
    bool disk = false;
    int corners = 0;
    std::vector<int> marks;       // blocking basepoints
    std::set<int> holes;
  };
  std::vector<std::array<Port, 4>> ports;
  std::vector<std::array<int, 4>> quad;
  std::vector<Region> regions;
  std::vector<std::pair<int, int>> pair_of;  // crossing -> (alpha, beta) indices

  int crossings() const { return static_cast<int>(ports.size()); }
};

struct HeegaardDiagram {
  int n_pairs = 0;
  DiagramMap map;
  bool closed = false;
  // Distinguished generator (one crossing per pair index); empty if none.
  std::vector<int> marked_tuple;
  // Mark ids counted as z (Alexander numerator) and w; singletons for
  // doubly pointed diagrams, the full marking sets for grids.
  std::vector<int> z_marks, w_marks;
  int z_hole = -1, w_hole = -1;  // hole ids when sutured with two holes
  // Curves with no crossings at all, by (kind, index).
  std::vector<std::pair<int, int>> floating;
};

// Cocore arcs of the P handles; the relative homology basis.
std::vector<Curve> basis_from_pob(const PartialOpenBook& pob);

// Sutured diagram of a partial open book; the marked tuple is the
// distinguished generator on the half-level page.
HeegaardDiagram diagram_from_pob(const PartialOpenBook& pob);

// Doubly pointed diagram of an open book with a marked knot; orientation
// +1/-1 selects the side of the meridian basis arc carrying w.
HeegaardDiagram knot_diagram(const OpenBook& ob, int orientation = +1);

// Caps the two boundary circles with marked disks.
HeegaardDiagram cap_and_mark(const HeegaardDiagram& d);

// Removes disks around z and w, turning the marks into boundary.
HeegaardDiagram puncture(const HeegaardDiagram& d);

// Heegaard diagram of a grid: torus, n alpha and n beta circles, all 2n
// markings blocking.
HeegaardDiagram grid_heegaard(const GridDiagram& g);

struct DiagramIso {
  bool equivalent = false;
  std::vector<int> alpha_perm;     // d1 alpha index -> d2 alpha index
  std::vector<int> beta_perm;
  std::vector<int> crossing_map;   // d1 crossing -> d2 crossing
  // The bigon-reduced diagrams the witness indices refer to.
  HeegaardDiagram canon_a, canon_b;
};

// Equivalence of labeled region complexes after exhausting bigon moves.
DiagramIso diagram_equiv(const HeegaardDiagram& a, const HeegaardDiagram& b);

// One round of removable-bigon cancellation; returns false when none left.
bool cancel_bigon(HeegaardDiagram& d);

}  // namespace cfloer
