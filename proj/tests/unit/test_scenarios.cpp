#include "doctest.h"
#include "oracle.hpp"
#include "sheafkit/homology.hpp"
#include "sheafkit/scenarios.hpp"
#include "sheafkit/sheaf.hpp"

using namespace sheafkit;

TEST_CASE("every fixture loads and self-checks") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const Fixture& fx = load_fixture(name);
    CHECK_FALSE(fx.checks.empty());
    CHECK(*fx.ring == *p3_ring());
    // loading twice hands back the cached object
    CHECK(&load_fixture(name) == &fx);
  }
  CHECK_THROWS_AS(load_fixture("no_such_fixture"), Error);
}

TEST_CASE("fixture Hilbert functions agree with plain linear algebra") {
  struct Item {
    const char* fixture;
    const char* key;
  };
  for (auto [f, k] : {Item{"f1_elliptic_ci", "O_C"}, Item{"f2a_line_cubic_regular", "O_C"}, Item{"f4_e2b_sheaf", "F"},
                      Item{"f5_oc0p_on_line", "O_C0(p)"}, Item{"f8_nodal_quartic", "F"}}) {
    CAPTURE(f);
    const auto& M = load_fixture(f).module(k);
    for (int d = 0; d <= 6; ++d) CHECK(hilbert_function(M, d) == oracle::hilbert(M, d));
  }
}

TEST_CASE("standard sheaves have their textbook cohomology") {
  const Fixture& fx = load_fixture("f7_standards");
  SheafCohomology L(fx.module("O_L"));
  for (int k = -4; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(L.h(0, k) == std::max(0, k + 1));
    CHECK(L.h(1, k) == std::max(0, -k - 1));
  }
  SheafCohomology p(fx.module("C_p"));
  for (int k = -3; k <= 3; ++k) {
    CHECK(p.h(0, k) == 1);
    CHECK(p.h(1, k) == 0);
  }
  // a plane: h0(O_H(k)) = C(k+2, 2), h2(O_H(k)) = C(-k-1, 2)
  SheafCohomology H(fx.module("O_H"));
  for (int k = -5; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(H.h(0, k) == (k >= 0 ? (k + 2) * (k + 1) / 2 : 0));
    CHECK(H.h(2, k) == (k <= -3 ? (-k - 1) * (-k - 2) / 2 : 0));
  }
}

TEST_CASE("fixtures work over a prime field") {
  const Fixture& fx = load_fixture("f4_e2b_sheaf", Field::prime(32003));
  CHECK(fx.ring->field().characteristic() == 32003);
  CHECK(hilbert_polynomial(fx.module("F")) == HilbertPolynomial::linear(4, 1));
  CHECK(&fx != &load_fixture("f4_e2b_sheaf"));
}

TEST_CASE("jump of Ext^1(C_p, O_C) follows the rank of the syzygy matrix") {
  struct Row {
    const char* fixture;
    int rank;
    int ext;
  };
  for (auto [name, rank, ext] : {Row{"f2a_line_cubic_regular", 1, 1}, Row{"f2b_line_cubic_singular", 0, 2},
                                 Row{"f3_doubleline_conic", 0, 2}, Row{"f1b_pointed_ci", 1, 1}}) {
    CAPTURE(name);
    const Fixture& fx = load_fixture(name);
    auto jc = jumpext_case(fx.ideal("I"), fx.point("p"));
    CHECK(jc.rank_at_p == rank);
    CHECK(jc.predicted_ext == 2 - rank);
    CHECK(jc.computed_ext == ext);
    CHECK(jc.agree());
  }
}

TEST_CASE("extension classes give the expected Hilbert polynomial") {
  const Fixture& fx = load_fixture("f5_oc0p_on_line");
  auto lift = extension_from_class(fx.module("O_C0(p)"), fx.module("O_L(-1)"), 2);
  CHECK(lift.ext_dim == 4);
  // a non-split extension of 3m+1 by m: Hilbert polynomials add
  CHECK(hilbert_polynomial(lift.module) == HilbertPolynomial::linear(4, 1));
  CHECK(sheaf_cohomology(lift.module, 0, 0) == 1);
  // Ext^1 between line bundles vanishes, so there is no class to lift
  auto O = ModulePresentation::free(fx.ring, {0});
  CHECK_THROWS_AS(extension_from_class(O, O, 0), Error);
}
