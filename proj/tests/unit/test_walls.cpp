#include "doctest.h"
#include "sheafkit/walls.hpp"

using namespace sheafkit;

TEST_CASE("degree four, chi one has a single wall") {
  auto w = admissible_walls(walls(4, 1));
  REQUIRE(w.size() == 1);
  CHECK(w[0].alpha == Scalar(3));
  CHECK(w[0].sub.to_string() == "(1,1,no-section)");
  CHECK(w[0].quotient.to_string() == "(3,0,section)");
  // the bookkeeping adds up
  CHECK(w[0].sub.d + w[0].quotient.d == 4);
  CHECK(w[0].sub.chi + w[0].quotient.chi == 1);
}

TEST_CASE("no walls in low degree") {
  for (int d = 1; d <= 3; ++d) {
    CAPTURE(d);
    CHECK(admissible_walls(walls(d, 1)).empty());
    // widening the window changes nothing
    CHECK(admissible_walls(walls(d, 1, -20, 20)).empty());
  }
  // degree one has no splits at all
  CHECK(walls(1, 1).empty());
}

TEST_CASE("candidates that fail the filter carry a reason") {
  auto all = walls(4, 1);
  CHECK(all.size() > 1);
  for (const auto& w : all) {
    CHECK_FALSE(w.reason.empty());
    CHECK(w.admissible == section_admissible(w.quotient, CurveChiTable::defaults()));
  }
}

TEST_CASE("section admissibility") {
  auto t = CurveChiTable::defaults();
  CHECK(section_admissible({3, 0, true}, t));   // a twisted cubic or plane cubic fits
  CHECK_FALSE(section_admissible({1, 0, true}, t));  // only the line, chi 1 > 0
  CHECK(section_admissible({2, 1, true}, t));
  CurveChiTable sparse;
  sparse.chis[1] = {1};
  CHECK_THROWS_AS(section_admissible({2, 1, true}, sparse), Error);
}

TEST_CASE("crossing report lists both extension orders") {
  auto c = crossing_report(4, 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0].above.side == "alpha > 3");
  CHECK(c[0].below.side == "alpha < 3");
  CHECK(c[0].above.sub == c[0].wall.sub);
  CHECK(c[0].below.sub == c[0].wall.quotient);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(walls(0, 1), Error);
  CHECK_THROWS_AS(walls(4, 1, 3, 2), Error);
}
