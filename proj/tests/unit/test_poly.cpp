#include "doctest.h"
#include "sheafkit/poly.hpp"

using namespace sheafkit;

namespace {
RingPtr R() {
  static RingPtr r = p3_ring();
  return r;
}
Polynomial P(const char* s) { return parse_polynomial(R(), s); }
}  // namespace

TEST_CASE("polynomial arithmetic") {
  CHECK((P("x+y") * P("x-y")) == P("x^2-y^2"));
  CHECK((P("x^2+3yz") * Polynomial(R())).is_zero());
  CHECK((P("y") * P("y^2+zw") + P("z") * P("z^2")) == P("y^3+yzw+z^3"));
  CHECK(P("2/4 x").to_string() == "1/2*x");
  CHECK((P("x+y") - P("x+y")).terms().empty());
  CHECK(P("(x+y)^2") == P("x^2+2xy+y^2"));
  CHECK(P("x*y*z") == P("xyz"));
  CHECK(P("x^2+y").homogeneous_degree() == std::nullopt);
  CHECK(P("x^2+yw").homogeneous_degree() == 2);
}

TEST_CASE("ring mismatch is rejected") {
  auto other = make_ring({"s", "t"});
  CHECK_THROWS_AS(P("x") + parse_polynomial(other, "s"), Error);
}

TEST_CASE("monomial orders") {
  auto m = [](std::vector<int> e) { return Monomial::from_exponents(e); };
  MonomialOrder g = MonomialOrder::grevlex();
  CHECK(g.compare(m({2, 0, 0, 0}), m({1, 1, 0, 0})) == 1);
  CHECK(g.compare(m({1, 1, 0, 0}), m({1, 1, 0, 0})) == 0);
  CHECK(MonomialOrder::lex().compare(m({1, 0, 0, 3}), m({0, 4, 0, 0})) == 1);
  // grevlex differs from lex here: xw^2 vs y^3 -> y^3 is larger in neither? check both
  CHECK(g.compare(m({1, 0, 0, 2}), m({0, 3, 0, 0})) == -1);
  CHECK(MonomialOrder::lex().compare(m({1, 0, 0, 2}), m({0, 3, 0, 0})) == 1);
  // elimination of x: anything with x beats anything without
  CHECK(MonomialOrder::elimination(1).compare(m({1, 0, 0, 0}), m({0, 2, 0, 0})) == 1);
}

TEST_CASE("projective evaluation") {
  std::vector<Scalar> p{0, 0, 0, 1};
  CHECK(P("w^2").evaluate_projective(p) == 1);
  CHECK(P("y^2+zw").evaluate_projective(p) == 0);
  CHECK(P("x").evaluate_projective(p) == 0);
  CHECK_THROWS_AS(P("w^2+x").evaluate_projective(p), Error);
  CHECK_THROWS_AS(P("w").evaluate_projective({0, 0, 0, 0}), Error);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_polynomial(R(), "x + q", 3, 5);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 5);
  }
  CHECK_THROWS_AS(parse_polynomial(R(), "x +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(R(), "(x"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(R(), "x/0"), ParseError);
}

TEST_CASE("prime fields") {
  Field f = Field::prime(7);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.mul(f.from_int(3), f.inv(f.from_int(3))) == 1);
  CHECK(f.from_rational(mpq_class(1, 2)) == 4);
  CHECK_THROWS_AS(Field::prime(9), Error);
  CHECK_THROWS_AS(Field::prime(2), Error);
  auto r = p3_ring(Field::prime(7));
  CHECK(parse_polynomial(r, "8x + 7y") == parse_polynomial(r, "x"));
}
