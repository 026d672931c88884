#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfloer/floer.hpp"
#include "cfloer/grid.hpp"
#include "cfloer/heegaard.hpp"

using namespace cfloer;

namespace {

OpenBook hopf_book() {
  OpenBook ob;
  ob.page = CombSurface::make({2}, {BandSpec{{0, 0}, {0, 1}}});
  Curve core = make_closed({{0, 2, 0}, {ob.page.band_cell(0), 0, 2}});
  ob.monodromy.push_back({core, Handedness::Right});
  ob.marked_knot = core;
  return ob;
}

// Entrywise comparison of the generic diagram differential with the grid
// module's own complex; this pins every orientation convention of the
// domain counting machinery against an independent implementation.
bool matches_grid_module(const GridDiagram& g) {
  HeegaardDiagram hd = grid_heegaard(g);
  DiagramComplex dc = differential(hd);
  GridComplex gc = build_grid_complex(g);
  if (static_cast<long long>(dc.generators.size()) != gc.n_states) return false;
  auto to_state = [&](const GeneratorTuple& t) {
    GridState s(g.n);
    for (int a = 0; a < g.n; ++a) s[hd.map.pair_of[t[a]].second] = a;
    return s;
  };
  for (int i = 0; i < static_cast<int>(dc.generators.size()); ++i) {
    long long gi = gc.index_of(to_state(dc.generators[i]));
    std::set<long long> want(gc.complex.boundary(static_cast<int>(gi)).begin(),
                             gc.complex.boundary(static_cast<int>(gi)).end());
    std::set<long long> got;
    for (int t : dc.complex.boundary(i))
      got.insert(gc.index_of(to_state(dc.generators[t])));
    if (want != got) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generator enumeration") {
  CHECK(enumerate_generators(grid_heegaard(validate_grid(2, {0, 1}, {1, 0}))).size() ==
        2);
  CHECK(enumerate_generators(grid_heegaard(validate_grid(3, {0, 1, 2}, {2, 0, 1})))
            .size() == 6);
  HeegaardDiagram kd = knot_diagram(hopf_book(), +1);
  CHECK(enumerate_generators(kd).size() == 1);
}

TEST_CASE("general differential equals the grid differential") {
  CHECK(matches_grid_module(validate_grid(2, {0, 1}, {1, 0})));
  CHECK(matches_grid_module(validate_grid(3, {0, 1, 2}, {2, 0, 1})));
  CHECK(matches_grid_module(validate_grid(3, {1, 2, 0}, {0, 1, 2})));
  CHECK(matches_grid_module(validate_grid(4, {0, 2, 1, 3}, {3, 1, 2, 0})));
}

TEST_CASE("niceness") {
  CHECK(is_nice(grid_heegaard(validate_grid(2, {0, 1}, {1, 0}))));
  CHECK(is_nice(knot_diagram(hopf_book(), +1)));

  // A triply twisted book produces a region with too many corners.
  OpenBook twisted = hopf_book();
  twisted.monodromy.push_back(twisted.monodromy[0]);
  twisted.monodromy.push_back(twisted.monodromy[0]);
  PartialOpenBook pob = knot_complement(twisted);
  BypassResult br = bypass_attach(pob, meridian_bypass_arc(pob, SliceSign::Plus));
  HeegaardDiagram d = diagram_from_pob(br.pob);
  CHECK_FALSE(is_nice(d));
  CHECK_THROWS_WITH_AS(differential(d), doctest::Contains("NotNice"), Error);
}

TEST_CASE("homology of small diagrams") {
  // Zero differential: rank equals the generator count.
  HeegaardDiagram kd = knot_diagram(hopf_book(), +1);
  DiagramComplex dc = differential(kd);
  CHECK(dc.complex.boundary(0).empty());
  CHECK(homology(dc.complex).total_rank == 1);

  // The 2x2 grid: two generators, zero tilde differential, rank two.
  DiagramComplex g2 = differential(grid_heegaard(validate_grid(2, {0, 1}, {1, 0})));
  CHECK(g2.generators.size() == 2);
  CHECK(homology(g2.complex).total_rank == 2);
}

TEST_CASE("relative alexander gradings") {
  GridDiagram g = validate_grid(2, {0, 1}, {1, 0});
  HeegaardDiagram d = grid_heegaard(g);
  auto gens = enumerate_generators(d);
  REQUIRE(gens.size() == 2);
  CHECK(relative_alexander(d, gens[0], gens[0]) == 0);
  auto ab = relative_alexander(d, gens[0], gens[1]);
  auto ba = relative_alexander(d, gens[1], gens[0]);
  REQUIRE(ab.has_value());
  REQUIRE(ba.has_value());
  CHECK(*ab + *ba == 0);
  CHECK(std::abs(*ab) == 1);

  // Cross-check against the grid module's absolute gradings.
  GridComplex gc = build_grid_complex(g);
  auto to_state = [&](const GeneratorTuple& t) {
    GridState s(g.n);
    for (int a = 0; a < g.n; ++a) s[d.map.pair_of[t[a]].second] = a;
    return s;
  };
  int a0 = gc.alexander2[gc.index_of(to_state(gens[0]))] / 2;
  int a1 = gc.alexander2[gc.index_of(to_state(gens[1]))] / 2;
  CHECK(*ab == a0 - a1);
}

TEST_CASE("budget limits the domain search") {
  HeegaardDiagram d = grid_heegaard(validate_grid(4, {0, 2, 1, 3}, {3, 1, 2, 0}));
  CHECK_THROWS_WITH_AS(differential(d, 3), doctest::Contains("BudgetExceeded"),
                       Error);
}
