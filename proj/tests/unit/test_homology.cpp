#include "doctest.h"
#include "oracle.hpp"
#include "sheafkit/homology.hpp"

using namespace sheafkit;

namespace {
RingPtr R() {
  static RingPtr r = p3_ring();
  return r;
}
Polynomial P(const char* s) { return parse_polynomial(R(), s); }
ModulePresentation Q(std::initializer_list<const char*> gens) {
  Ideal id;
  for (const char* g : gens) id.push_back(P(g));
  return ModulePresentation::quotient(R(), id);
}
BettiTable table(std::initializer_list<std::tuple<int, int, int>> e) {
  BettiTable b;
  for (auto [i, j, v] : e) b.entries[{i, j}] = v;
  return b;
}
}  // namespace

TEST_CASE("Koszul resolution of the residue field") {
  auto F = free_resolution(Q({"x", "y", "z", "w"}));
  CHECK(F.betti() == table({{0, 0, 1}, {1, 1, 4}, {2, 2, 6}, {3, 3, 4}, {4, 4, 1}}));
  CHECK(F.is_complex());
  CHECK_FALSE(F.has_unit_entries());
  CHECK(regularity(F.betti()) == 0);
  auto again = minimize(F);
  CHECK(again.betti() == F.betti());
}

TEST_CASE("resolution of a line plus a plane cubic") {
  auto F = free_resolution(Q({"xy", "xz", "yw^2+zy^2"}));
  CHECK(F.betti() == table({{0, 0, 1}, {1, 2, 2}, {1, 3, 1}, {2, 3, 1}, {2, 4, 1}}));
  CHECK(hilbert_polynomial(Q({"xy", "xz", "yw^2+zy^2"})) == HilbertPolynomial::linear(4, 0));
}

TEST_CASE("regularity and Hilbert polynomials") {
  auto ci = Q({"x^2+y^2+z^2+w^2", "xy+zw"});
  CHECK(regularity(ci) == 2);
  CHECK(regularity(ModulePresentation::free(R(), {0})) == 0);
  CHECK(hilbert_polynomial(ci).to_string() == "4*m");
  auto S = ModulePresentation::free(R(), {0});
  auto hp = hilbert_polynomial(S);
  for (long m = 0; m < 6; ++m) CHECK(hp(m) == (m + 3) * (m + 2) * (m + 1) / 6);
  CHECK(hp.to_string() == "1/6*m^3+m^2+11/6*m+1");
  CHECK(hilbert_function(S, 2) == 10);
  CHECK(hilbert_function(Q({"x^2", "xy", "xz", "xw", "y^2", "yz", "yw", "z^2", "zw", "w^2"}), 1) == 4);
  // HF = HP beyond the regularity
  for (auto M : {ci, Q({"xy", "xz", "yw^2+zy^2"}), Q({"x", "y", "z", "w"}), Q({"x^3", "y^2z"})}) {
    auto H = hilbert_polynomial(M);
    int r = regularity(M);
    for (int d = r + 1; d <= r + 8; ++d) CHECK(H(d) == hilbert_function(M, d));
    for (int d = 0; d <= 8; ++d) CHECK(hilbert_function(M, d) == oracle::hilbert(M, d));
  }
}

TEST_CASE("minimize removes an identity block") {
  auto F = free_resolution(Q({"x", "y", "z", "w"}));
  // Pad F_1 and F_2 with S(-2) -> S(-2).
  FreeResolution G = F;
  const Field& f = R()->field();
  Twists t1 = F.modules[1], t2 = F.modules[2];
  t1.push_back(2);
  t2.push_back(2);
  auto c1 = F.maps[0].columns();
  c1.push_back({});
  G.maps[0] = GradedMatrix(R(), F.modules[0], t1, c1);
  auto c2 = F.maps[1].columns();
  c2.push_back({{Monomial::one(), 4, f.from_int(1)}});
  G.maps[1] = GradedMatrix(R(), t1, t2, c2);
  std::vector<Vec> c3;
  for (const auto& v : F.maps[2].columns()) c3.push_back(v);
  G.maps[2] = GradedMatrix(R(), t2, F.modules[3], c3);
  G.modules[1] = t1;
  G.modules[2] = t2;
  REQUIRE(G.is_complex());
  CHECK(G.has_unit_entries());
  auto H = minimize(G);
  CHECK(H.betti() == F.betti());
  CHECK(H.is_complex());
  CHECK_FALSE(H.has_unit_entries());
}

TEST_CASE("Ext of a complete intersection is self-dual") {
  auto ci = Q({"x^2+y^2+z^2+w^2", "xy+zw"});
  auto S4 = ModulePresentation::free(R(), {4});
  auto e2 = ext_dims(ci, S4, 2, -2, 8);
  for (int d = -2; d <= 8; ++d) CHECK(e2[static_cast<std::size_t>(d + 2)] == oracle::hilbert(ci, d));
  for (int i : {0, 1, 3, 4}) {
    auto e = ext_dims(ci, S4, i, -4, 6);
    CHECK(std::all_of(e.begin(), e.end(), [](int v) { return v == 0; }));
  }
  auto mod = ext_module(ci, S4, 2);
  for (int d = -2; d <= 6; ++d) CHECK(hilbert_function(mod, d) == oracle::hilbert(ci, d));
  CHECK_THROWS_AS(ext_dims(ci, S4, 5, 0, 0), Error);
  // Ext^0(S, N)_d = N_d
  auto S = ModulePresentation::free(R(), {0});
  auto e0 = ext_dims(S, ci, 0, 0, 5);
  for (int d = 0; d <= 5; ++d) CHECK(e0[static_cast<std::size_t>(d)] == oracle::hilbert(ci, d));
}

TEST_CASE("Tor of cyclic modules") {
  auto a = Q({"xy", "z^2"});
  auto b = Q({"x^2+w^2", "yz"});
  auto t0 = tor_dims(a, b, 0, 0, 7);
  auto sum = Q({"xy", "z^2", "x^2+w^2", "yz"});
  for (int d = 0; d <= 7; ++d) CHECK(t0[static_cast<std::size_t>(d)] == oracle::hilbert(sum, d));
  for (int i = 1; i <= 3; ++i) CHECK(tor_dims(a, b, i, 0, 8) == tor_dims(b, a, i, 0, 8));
  auto t1 = tor_module(a, b, 1);
  CHECK(hilbert_function(t1, 0, 8) == tor_dims(a, b, 1, 0, 8));
  // Tor_1(S/x, S/x) = S/x shifted by one.
  auto tx = tor_dims(Q({"x"}), Q({"x"}), 1, 0, 5);
  for (int d = 1; d <= 5; ++d) CHECK(tx[static_cast<std::size_t>(d)] == oracle::hilbert(Q({"x"}), d - 1));
}

TEST_CASE("verify_complex on the Koszul complex") {
  auto F = free_resolution(Q({"x", "y", "z", "w"}));
  std::vector<GradedMatrix> chain(F.maps.rbegin(), F.maps.rend());
  auto rep = verify_complex(chain, -2, 8);
  CHECK(rep.compositions_zero);
  for (int k = 0; k < 4; ++k) CHECK(rep.exact_at(k));
  CHECK_FALSE(rep.exact_at(4));  // cokernel is the residue field
  CHECK(rep.homology[4][2] == 1);
}
