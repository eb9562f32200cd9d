#include <string>

#include "doctest.h"
#include "sheafkit/homology.hpp"
#include "sheafkit/session.hpp"

using namespace sheafkit;

namespace {

// Runs `text` and returns the message of the parse error it raises.
std::string parse_error(const std::string& text) {
  try {
    parse_session(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sessions define objects and claims") {
  auto s = parse_session(R"(
ring x, y, z, w over QQ
ideal I = x*y - z*w, x^2 + y^2 - z^2 - w^2
module O_C = quotient(I)
point p = [0:0:0:1]
matrix m : (0) <- (1, 1) = [x, y]
module L = coker(m)
claim hp: hp(O_C) = 4*m  cite "quartic"
claim hp_line [qq]: hp(L) = m+1
)");
  CHECK(s.ring->nvars() == 4);
  CHECK(hilbert_polynomial(s.module("O_C")) == HilbertPolynomial::linear(4, 0));
  CHECK(hilbert_polynomial(s.module("twist(L, 2)")) == HilbertPolynomial::linear(1, 3));
  REQUIRE(s.claims.size() == 2);
  CHECK(s.claims[0].citation == "quartic");
  CHECK(s.claims[1].qq_only);
  CHECK(s.claims[1].line == 9);
  auto r = run_claims(s);
  CHECK(r.all_passed());
  CHECK(r.count(ClaimStatus::Pass) == 2);
}

TEST_CASE("fixtures are reachable through aliases") {
  auto s = parse_session("use f4_e2b_sheaf as F4\nmodule G = twist(F4.F, 1)\n");
  CHECK(hilbert_polynomial(s.module("G")) == HilbertPolynomial::linear(4, 5));
  CHECK(s.matrix("F4.phi").nrows() == 2);
  CHECK_THROWS_AS(s.module("F4.nothing"), Error);
}

TEST_CASE("a wrong expected value fails with both values") {
  auto s = parse_session(
      "use f4_e2b_sheaf as F4\n"
      "claim right: sheaf_ext(F4.F, F4.F, 1) = 19\n"
      "claim wrong: sheaf_ext(F4.F, F4.F, 1) = 18\n");
  auto r = run_claims(s);
  REQUIRE(r.claims.size() == 2);
  CHECK(r.claims[0].status == ClaimStatus::Pass);
  CHECK(r.claims[1].status == ClaimStatus::Fail);
  CHECK(r.claims[1].expected == "18");
  CHECK(r.claims[1].computed == "19");
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("parse errors point at the offending text") {
  CHECK(parse_error("ring x, y, z, w over QQ\nideal I = x*y - z, w^2\n") ==
        "line 2, column 11: ideal I has a non-homogeneous generator");
  CHECK(parse_error("ring x, y, z, w over QQ\nmodule M = quotient(x)\nclaim c: frobnicate(M) = 3\n") ==
        "line 3, column 10: unknown operation 'frobnicate' in claim c");
  auto msg = parse_error("ring x, y, z, w over QQ\nmatrix m : (0) <- (2) = [x]\n");
  CHECK(msg.rfind("line 2, column 26:", 0) == 0);
  CHECK(msg.find("degree 1, expected 2") != std::string::npos);
  CHECK(parse_error("ring x, y over QQ\nideal I = x + q\n").rfind("line 2, column", 0) == 0);
  CHECK(parse_error("ideal I = x\n").rfind("line 1", 0) == 0);
}

TEST_CASE("an empty matrix is the zero map") {
  auto s = parse_session("ring x, y, z, w over QQ\nmatrix z0 : (0) <- () = []\nmodule F = coker(z0)\n");
  CHECK(s.matrix("z0").ncols() == 0);
  CHECK(s.matrix("z0").nrows() == 1);
  CHECK(hilbert_function(s.module("F"), 2) == 10);
}

TEST_CASE("fields") {
  CHECK(parse_field("QQ").characteristic() == 0);
  CHECK(parse_field("Fp:101").characteristic() == 101);
  CHECK_THROWS_AS(parse_field("Fp:100"), Error);
  CHECK_THROWS_AS(parse_field("RR"), Error);
  SessionOptions o;
  o.field = Field::prime(101);
  auto s = parse_session("ring x, y, z, w over QQ\nclaim a [qq]: hp(O(0)) = 1/6*m^3+m^2+11/6*m+1\n", o);
  CHECK(s.ring->field().characteristic() == 101);
  auto r = run_claims(s);
  CHECK(r.claims[0].status == ClaimStatus::Skipped);
}

TEST_CASE("reports survive a JSON round trip") {
  auto s = parse_session(
      "ring x, y, z, w over QQ\nmodule C = quotient(x, y)\n"
      "claim a: hp(C) = m+1 cite \"a line\"\nclaim b: hf_window(C, 0, 3) = [1, 2, 3, 5]\n");
  auto r = run_claims(s, {}, "inline");
  CHECK(r.count(ClaimStatus::Fail) == 1);
  auto back = Report::from_json(r.to_json());
  CHECK(back == r);
  CHECK(back.to_json() == r.to_json());
  CHECK(back.source == "inline");
  CHECK_THROWS(Report::from_json("{\"schema\": \"other/1\"}"));
}

TEST_CASE("every catalog claim parses") {
  auto s = parse_session(catalog_text());
  CHECK(s.claims.size() >= 50);
  for (const auto& c : s.claims) {
    CAPTURE(c.id);
    CHECK_FALSE(c.citation.empty());
  }
}
