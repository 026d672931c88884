#pragma once

// Chain complexes over F2 from combinatorial Heegaard diagrams: generator
// enumeration, the nice-diagram differential counting empty bigons and
// rectangles, homology, and relative Alexander gradings.

#include <optional>

#include "cfloer/f2.hpp"
#include "cfloer/heegaard.hpp"

namespace cfloer {

namespace detail {
bool x_corner_exits_alpha();
void set_x_corner(bool exits_alpha);
}  // namespace detail

// One crossing per alpha curve, matching the betas bijectively.
using GeneratorTuple = std::vector<int>;

std::vector<GeneratorTuple> enumerate_generators(const HeegaardDiagram& d);

// Every unmarked interior region is a bigon or a square.
bool is_nice(const HeegaardDiagram& d);

struct DiagramComplex {
  std::vector<GeneratorTuple> generators;
  F2ChainComplex complex;

  int index_of(const GeneratorTuple& g) const;
};

// Boundary operator counting empty embedded bigons and rectangles; throws
// NotNice on diagrams outside the combinatorial regime and BudgetExceeded
// when the region-subset search outgrows the given cap.
DiagramComplex differential(const HeegaardDiagram& d, long long budget = 2000000);

// n_z - n_w of a domain joining the generators, if one exists.
std::optional<int> relative_alexander(const HeegaardDiagram& d,
                                      const GeneratorTuple& x,
                                      const GeneratorTuple& y);

}  // namespace cfloer
