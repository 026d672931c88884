#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cfloer/grid.hpp"
#include "support/alexander.hpp"

using namespace cfloer;

namespace {

GridDiagram unknot2() { return validate_grid(2, {0, 1}, {1, 0}); }
// Right-handed trefoil as a Legendrian front: tb=1, rot=0.
GridDiagram trefoil_right() { return validate_grid(5, {0, 1, 2, 3, 4}, {2, 3, 4, 0, 1}); }
// Its mirror, the left-handed trefoil: tb=-6, rot=1.
GridDiagram trefoil_left() { return validate_grid(5, {4, 3, 2, 1, 0}, {2, 1, 0, 4, 3}); }
// Figure-eight at maximal tb=-3, rot=0.
GridDiagram fig8() { return validate_grid(6, {1, 3, 2, 5, 4, 0}, {5, 0, 4, 3, 1, 2}); }

GridDiagram random_grid(std::mt19937& rng, int n) {
  std::vector<int> x(n), o(n);
  std::iota(x.begin(), x.end(), 0);
  std::iota(o.begin(), o.end(), 0);
  while (true) {
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(o.begin(), o.end(), rng);
    bool coll = false;
    for (int i = 0; i < n; ++i) coll |= x[i] == o[i];
    if (!coll) return GridDiagram{n, x, o};
  }
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(unknot2());
  CHECK_THROWS_WITH_AS(validate_grid(2, {0, 1}, {0, 1}), doctest::Contains("Collision"),
                       Error);
  CHECK_THROWS_WITH_AS(validate_grid(3, {0, 0, 1}, {1, 2, 0}),
                       doctest::Contains("NotPermutation"), Error);
  CHECK(is_knot(unknot2()));
  // Two-component split link.
  GridDiagram split = validate_grid(4, {1, 0, 3, 2}, {0, 1, 2, 3});
  CHECK(link_components(split) == 2);
}

TEST_CASE("classical invariants of the fixtures") {
  LegendrianData u = legendrian_data(unknot2());
  CHECK(u.tb == -1);
  CHECK(u.rot == 0);

  LegendrianData r = legendrian_data(trefoil_right());
  CHECK(r.tb == 1);
  CHECK(r.rot == 0);

  LegendrianData l = legendrian_data(trefoil_left());
  CHECK(l.tb == -6);
  CHECK(l.rot == 1);

  LegendrianData f = legendrian_data(fig8());
  CHECK(f.tb == -3);
  CHECK(f.rot == 0);

  // Reversing the orientation negates rot and keeps tb.
  LegendrianData lrev = legendrian_data(trefoil_left(), -1);
  CHECK(lrev.tb == -6);
  CHECK(lrev.rot == -1);

  CHECK_THROWS_AS(legendrian_data(validate_grid(4, {1, 0, 3, 2}, {0, 1, 2, 3})), Error);
}

TEST_CASE("stabilization arithmetic") {
  for (const GridDiagram& g : {unknot2(), trefoil_right(), trefoil_left()}) {
    LegendrianData base = legendrian_data(g);
    for (int col : {0, g.n - 1}) {
      GridDiagram pos = grid_stabilize(g, legendrian_positive_corner(), col);
      CHECK(pos.n == g.n + 1);
      CHECK(is_knot(pos));
      LegendrianData lp = legendrian_data(pos);
      CHECK(lp.tb == base.tb - 1);
      CHECK(lp.rot == base.rot + 1);

      GridDiagram neg = grid_stabilize(g, legendrian_negative_corner(), col);
      LegendrianData ln = legendrian_data(neg);
      CHECK(ln.tb == base.tb - 1);
      CHECK(ln.rot == base.rot - 1);
    }
    // The other two corner types are Legendrian isotopies.
    for (StabCorner c : {StabCorner::NW, StabCorner::SE}) {
      LegendrianData ld = legendrian_data(grid_stabilize(g, c, 0));
      CHECK(ld.tb == base.tb);
      CHECK(ld.rot == base.rot);
    }
  }
  CHECK_THROWS_AS(grid_stabilize(unknot2(), StabCorner::NE, 5), Error);
}

TEST_CASE("unknot homology") {
  GridHomology h = grid_homology(unknot2());
  CHECK(h.tilde_total == 2);
  CHECK(h.stabilization_factor == 2);
  CHECK(h.hat_total == 1);
  REQUIRE(h.hat_ranks.size() == 1);
  CHECK(h.hat_ranks.begin()->first == Bigrading{0, 0});
  CHECK(h.hat_ranks.begin()->second == 1);
}

TEST_CASE("invariant states are cycles and translate equivariantly") {
  for (const GridDiagram& g : {unknot2(), trefoil_right(), fig8()}) {
    GridComplex gc = build_grid_complex(g);
    auto [plus, minus] = invariant_states(g);
    CHECK(gc.complex.apply({(int)gc.index_of(plus)}).empty());
    CHECK(gc.complex.apply({(int)gc.index_of(minus)}).empty());
  }
  GridDiagram g = trefoil_right();
  GridDiagram t = translate(g, 2, 3);
  auto [p0, m0] = invariant_states(g);
  auto [p1, m1] = invariant_states(t);
  for (int i = 0; i < g.n; ++i) {
    CHECK(p1[(i + 2) % g.n] == (p0[i] + 3) % g.n);
    CHECK(m1[(i + 2) % g.n] == (m0[i] + 3) % g.n);
  }
}

TEST_CASE("trefoil and figure-eight bigraded homology") {
  GridHomology r = grid_homology(trefoil_right());
  CHECK(r.hat_total == 3);
  std::map<int, int> by_alex;
  for (auto& [bg, rank] : r.hat_ranks) by_alex[bg.alexander] += rank;
  CHECK(by_alex == std::map<int, int>{{-1, 1}, {0, 1}, {1, 1}});

  GridHomology l = grid_homology(trefoil_left());
  CHECK(l.hat_total == 3);

  GridHomology f = grid_homology(fig8());
  CHECK(f.hat_total == 5);
  std::map<int, int> fa;
  for (auto& [bg, rank] : f.hat_ranks) fa[bg.alexander] += rank;
  CHECK(fa == std::map<int, int>{{-1, 1}, {0, 3}, {1, 1}});
}

TEST_CASE("Euler characteristic equals the determinant oracle") {
  for (const GridDiagram& g : {unknot2(), trefoil_right(), trefoil_left(), fig8()}) {
    GridHomology h = grid_homology(g);
    testsupport::LaurentPoly chi;
    for (auto& [bg, rank] : h.hat_ranks) {
      chi[bg.alexander] += (bg.maslov % 2 == 0 ? 1 : -1) * rank;
      if (chi[bg.alexander] == 0) chi.erase(bg.alexander);
    }
    CHECK(chi == testsupport::symmetrized_alexander(g));
  }
}

TEST_CASE("class status on the fixtures") {
  ClassStatus up = class_status(unknot2(), +1);
  ClassStatus um = class_status(unknot2(), -1);
  CHECK_FALSE(up.zero);
  CHECK_FALSE(um.zero);
  CHECK(up.grading == Bigrading{0, 0});
  CHECK(um.grading == Bigrading{0, 0});

  CHECK_FALSE(class_status(trefoil_right(), +1).zero);
  CHECK_FALSE(class_status(trefoil_right(), -1).zero);
  CHECK(class_status(trefoil_right(), +1).grading == Bigrading{2, 1});

  // Both classes of the maximal left trefoil vanish.
  CHECK(class_status(trefoil_left(), +1).zero);
  CHECK(class_status(trefoil_left(), -1).zero);
}

TEST_CASE("theorem-style stabilization pattern on the unknot") {
  GridDiagram g = unknot2();
  GridDiagram pos = grid_stabilize(g, legendrian_positive_corner(), 0);
  GridDiagram neg = grid_stabilize(g, legendrian_negative_corner(), 0);

  // Positive stabilization kills the oriented class, negative preserves it
  // with the same Alexander grading.
  CHECK(class_status(pos, +1).zero);
  CHECK_FALSE(class_status(neg, +1).zero);
  CHECK(class_status(neg, +1).grading.alexander ==
        class_status(g, +1).grading.alexander);

  // The reversed-orientation class behaves oppositely.
  CHECK_FALSE(class_status(pos, -1).zero);
  CHECK(class_status(neg, -1).zero);
}

TEST_CASE("boundary squares to zero on random grids") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    GridDiagram g = random_grid(rng, n);
    GridComplex gc = build_grid_complex(g);
    CHECK(gc.complex.boundary_squares_to_zero());
  }
}

TEST_CASE("rank invariance under moves") {
  GridDiagram g = trefoil_right();
  GridHomology base = grid_homology(g);

  GridHomology tr = grid_homology(translate(g, 1, 2));
  CHECK(tr.hat_ranks == base.hat_ranks);

  // A knot with strictly disjoint adjacent column spans.
  GridDiagram k = validate_grid(5, {0, 2, 4, 1, 3}, {1, 3, 0, 2, 4});
  GridHomology kbase = grid_homology(k);
  int swapped = 0;
  for (int i = 0; i + 1 < k.n; ++i) {
    if (!columns_commute(k, i)) continue;
    GridHomology c = grid_homology(commute_columns(k, i));
    CHECK(c.hat_ranks == kbase.hat_ranks);
    ++swapped;
  }
  CHECK(swapped > 0);
  CHECK_FALSE(columns_commute(fig8(), 0));

  for (StabCorner c : {StabCorner::NW, StabCorner::NE, StabCorner::SW, StabCorner::SE}) {
    GridHomology s = grid_homology(grid_stabilize(g, c, 1));
    CHECK(s.hat_ranks == base.hat_ranks);
    CHECK(s.stabilization_factor == 2 * base.stabilization_factor);
  }
}

TEST_CASE("budget limit") {
  GridDiagram g = fig8();
  CHECK_THROWS_WITH_AS(build_grid_complex(g, 5), doctest::Contains("BudgetExceeded"),
                       Error);
}
