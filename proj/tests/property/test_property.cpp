// Randomized invariants. Every suite runs at least kCases cases from a fixed
// seed so failures reproduce; the seed of a failing case is printed.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "../unit/oracle.hpp"
#include "sheafkit/homology.hpp"
#include "sheafkit/sheaf.hpp"
#include "sheafkit/walls.hpp"

using namespace sheafkit;

namespace {

constexpr int kCases = 100;

struct Gen {
  std::mt19937 rng;
  RingPtr ring;

  Gen(std::uint32_t seed, RingPtr r) : rng(seed), ring(std::move(r)) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Polynomial form(int d, int terms) {
    const auto& mons = monomials_of_degree(ring->nvars(), d);
    Polynomial p(ring);
    for (int t = 0; t < terms; ++t) {
      int c = uniform(-3, 3);
      if (c == 0) c = 1;
      p = p + Polynomial::monomial(ring, mons[uniform(0, static_cast<int>(mons.size()) - 1)], Scalar(c));
    }
    return p.is_zero() ? Polynomial::monomial(ring, mons.front(), Scalar(1)) : p;
  }

  Ideal ideal(int ngens, int max_deg, int max_terms) {
    Ideal I;
    for (int k = 0; k < ngens; ++k) I.push_back(form(uniform(1, max_deg), uniform(1, max_terms)));
    return I;
  }

  Ideal monomial_ideal(int ngens, int max_deg) {
    Ideal I;
    for (int k = 0; k < ngens; ++k) {
      const auto& mons = monomials_of_degree(ring->nvars(), uniform(1, max_deg));
      I.push_back(Polynomial::monomial(ring, mons[uniform(0, static_cast<int>(mons.size()) - 1)], Scalar(1)));
    }
    return I;
  }

  // Small modules whose sheaves have dimension <= 1, plus line bundles.
  ModulePresentation small_sheaf() {
    switch (uniform(0, 3)) {
      case 0:
        return ModulePresentation::free(ring, {uniform(-2, 2)});
      case 1: {  // a line
        Ideal I{form(1, uniform(1, 3)), form(1, uniform(1, 3))};
        return ModulePresentation::quotient(ring, I).twist(uniform(-1, 1));
      }
      case 2: {  // a point with embedded junk
        Ideal I{Polynomial::variable(ring, 0), Polynomial::variable(ring, 1), Polynomial::variable(ring, 2)};
        if (uniform(0, 1)) I.push_back(Polynomial::variable(ring, 3).pow(2));
        return ModulePresentation::quotient(ring, I);
      }
      default: {  // a curve cut by a linear and a quadratic form
        Ideal I{form(1, uniform(1, 2)), form(2, uniform(1, 3))};
        return ModulePresentation::quotient(ring, I);
      }
    }
  }
};

RingPtr qq() {
  static RingPtr r = p3_ring();
  return r;
}
RingPtr fp() {
  static RingPtr r = p3_ring(Field::prime(32003));
  return r;
}

long binom3(long n) { return n < 0 ? 0 : (n + 3) * (n + 2) * (n + 1) / 6; }

}  // namespace

TEST_CASE("Buchberger criterion holds for computed bases") {
  int cases = 0;
  for (std::uint32_t seed = 1; cases < kCases; ++seed) {
    Gen g(seed, seed % 2 ? qq() : fp());
    CAPTURE(seed);
    auto I = g.ideal(g.uniform(1, 3), 3, 3);
    auto order = seed % 3 == 0 ? MonomialOrder::lex() : MonomialOrder::grevlex();
    auto gb = ideal_groebner_basis(I, order);
    CHECK(gb.satisfies_buchberger());
    for (const auto& f : I) CHECK(gb.reduces_to_zero(vec_from_poly(f, 0)));
    ++cases;
  }
  // Submodules of S(0) + S(-1).
  for (std::uint32_t seed = 1000; seed < 1000 + kCases; ++seed) {
    Gen g(seed, qq());
    CAPTURE(seed);
    Twists tw{0, 1};
    std::vector<Vec> gens;
    for (int k = g.uniform(1, 3); k > 0; --k) {
      int d = g.uniform(1, 2);
      Vec v = vec_add(g.ring->field(), vec_from_poly(g.form(d + 1, 2), 0), vec_from_poly(g.form(d, 2), 1));
      gens.push_back(v);
    }
    auto gb = groebner_basis(g.ring, tw, gens);
    CHECK(gb.satisfies_buchberger());
    for (const auto& v : gens) CHECK(gb.reduces_to_zero(v));
  }
}

TEST_CASE("resolutions are minimal complexes") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, seed % 4 ? qq() : fp());
    CAPTURE(seed);
    auto M = ModulePresentation::quotient(g.ring, g.ideal(g.uniform(1, 4), 2, 3));
    auto R = free_resolution(M);
    CHECK(R.is_complex());
    CHECK(R.minimal);
    CHECK_FALSE(R.has_unit_entries());
    for (std::size_t i = 0; i + 1 < R.maps.size(); ++i) CHECK(R.maps[i].compose(R.maps[i + 1]).is_zero());
  }
}

TEST_CASE("Betti numbers reproduce the Hilbert function") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, qq());
    CAPTURE(seed);
    auto I = seed % 2 ? g.monomial_ideal(g.uniform(1, 5), 3) : g.ideal(g.uniform(1, 3), 2, 3);
    auto M = ModulePresentation::quotient(g.ring, I);
    auto b = free_resolution(M).betti();
    for (int d = 0; d <= 8; ++d) {
      long alt = 0;
      for (const auto& [ij, v] : b.entries) alt += (ij.first % 2 ? -1L : 1L) * v * binom3(d - ij.second);
      CHECK(alt == oracle::hilbert(M, d));
      CHECK(alt == hilbert_function(M, d));
    }
  }
}

TEST_CASE("Tor is symmetric") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, seed % 2 ? qq() : fp());
    CAPTURE(seed);
    auto M = ModulePresentation::quotient(g.ring, g.ideal(g.uniform(1, 2), 2, 2));
    auto N = ModulePresentation::quotient(g.ring, g.ideal(g.uniform(1, 2), 2, 2));
    int i = g.uniform(0, 2);
    CAPTURE(i);
    CHECK(tor_dims(M, N, i, 0, 5) == tor_dims(N, M, i, 0, 5));
  }
}

TEST_CASE("Euler characteristic of sheaf cohomology is the Hilbert polynomial") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, qq());
    CAPTURE(seed);
    auto M = ModulePresentation::quotient(g.ring, g.ideal(g.uniform(1, 3), 2, 2)).twist(g.uniform(-1, 1));
    SheafCohomology c(M);
    auto hp = hilbert_polynomial(M);
    for (int d = -2; d <= 2; ++d) CHECK(Scalar(c.euler(d)) == hp(d));
  }
}

TEST_CASE("sheaf Ext does not move under further truncation") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, fp());
    CAPTURE(seed);
    auto M = g.small_sheaf(), N = g.small_sheaf();
    int i = g.uniform(0, 1);
    CAPTURE(i);
    auto r = sheaf_ext(M, N, i);
    CHECK(truncated_ext(M, N, i, r.e + 1) == r.dim);
    CHECK(truncated_ext(M, N, i, r.e + 2) == r.dim);
  }
  // Line bundles have closed forms: Ext^i(O(a), O(b)) = h^i(O(b - a)).
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, qq());
    int a = g.uniform(-3, 3), b = g.uniform(-3, 3);
    CAPTURE(a);
    CAPTURE(b);
    auto A = ModulePresentation::free(g.ring, {-a}), B = ModulePresentation::free(g.ring, {-b});
    CHECK(sheaf_ext_dim(A, B, 0) == binom3(b - a));
    CHECK(sheaf_ext_dim(A, B, 1) == 0);
  }
}

TEST_CASE("saturation is idempotent") {
  for (std::uint32_t seed = 1; seed <= kCases; ++seed) {
    Gen g(seed, seed % 2 ? qq() : fp());
    CAPTURE(seed);
    auto m = irrelevant_ideal(g.ring);
    // Multiply by a power of a variable-generated ideal so there is something to strip.
    Ideal I = g.ideal(g.uniform(1, 2), 2, 2);
    Ideal J;
    for (const auto& f : I)
      for (int v = 0; v < 4; ++v)
        if (g.uniform(0, 1)) J.push_back(f * Polynomial::variable(g.ring, v));
    if (J.empty()) J = I;
    auto once = saturate(J, m), twice = saturate(once, m);
    CHECK(reduced_gens(once) == reduced_gens(twice));
    // Saturating never shrinks the ideal.
    auto gb = ideal_groebner_basis(once);
    for (const auto& f : J) CHECK(gb.reduces_to_zero(vec_from_poly(f, 0)));
  }
  for (std::uint32_t seed = 500; seed < 500 + kCases; ++seed) {
    Gen g(seed, fp());
    CAPTURE(seed);
    auto M = ModulePresentation::quotient(g.ring, g.ideal(g.uniform(2, 3), 2, 2));
    auto m = irrelevant_ideal(g.ring);
    auto once = saturate(M, m), twice = saturate(once, m);
    CHECK(hilbert_function(once, 0, 6) == hilbert_function(twice, 0, 6));
  }
}

TEST_CASE("walls solve the slope equation") {
  std::mt19937 rng(7);
  int cases = 0;
  while (cases < kCases) {
    int d = std::uniform_int_distribution<int>(1, 5)(rng), chi = std::uniform_int_distribution<int>(-4, 4)(rng);
    CAPTURE(d);
    CAPTURE(chi);
    for (const auto& w : walls(d, chi)) {
      CHECK(w.alpha > 0);
      CHECK(w.sub.d + w.quotient.d == d);
      CHECK(w.sub.chi + w.quotient.chi == chi);
      CHECK_FALSE(w.sub.has_section);
      CHECK(w.quotient.has_section);
      Scalar total = (Scalar(chi) + w.alpha) / d;
      CHECK(Scalar(w.sub.chi) / w.sub.d == total);
      CHECK((Scalar(w.quotient.chi) + w.alpha) / w.quotient.d == total);
    }
    ++cases;
  }
}

TEST_CASE("walls are mirror complete and independent of the enumeration window") {
  std::mt19937 rng(11);
  for (int cases = 0; cases < kCases; ++cases) {
    int d = std::uniform_int_distribution<int>(2, 5)(rng), chi = std::uniform_int_distribution<int>(-4, 4)(rng);
    int lo = chi - std::uniform_int_distribution<int>(0, 8)(rng), hi = chi + std::uniform_int_distribution<int>(0, 8)(rng);
    CAPTURE(d);
    CAPTURE(chi);
    auto all = walls(d, chi, lo, hi);
    std::set<std::tuple<Scalar, int, int>> seen;
    for (const auto& w : all) {
      // one record per alpha and decomposition
      CHECK(seen.emplace(w.alpha, w.sub.d, w.sub.chi).second);
      // found from the piece without the section and from the piece with it
      auto has = [&](const std::vector<Wall>& v) {
        return std::any_of(v.begin(), v.end(), [&](const Wall& x) {
          return x.alpha == w.alpha && x.sub == w.sub && x.quotient == w.quotient;
        });
      };
      CHECK(has(walls(d, chi, w.sub.chi, w.sub.chi)));
      CHECK(has(walls(d, chi, w.quotient.chi, w.quotient.chi)));
    }
    // splitting the window and merging gives the same list
    int mid = std::uniform_int_distribution<int>(lo, hi)(rng);
    auto left = mid > lo ? walls(d, chi, lo, mid - 1) : std::vector<Wall>{};
    auto right = walls(d, chi, mid, hi);
    std::set<std::tuple<Scalar, int, int>> merged;
    for (const auto& w : left) merged.emplace(w.alpha, w.sub.d, w.sub.chi);
    for (const auto& w : right) merged.emplace(w.alpha, w.sub.d, w.sub.chi);
    CHECK(merged == seen);
  }
}

TEST_CASE("enlarging the curve table never removes an admissible wall") {
  std::mt19937 rng(13);
  for (int cases = 0; cases < kCases; ++cases) {
    int d = std::uniform_int_distribution<int>(2, 5)(rng), chi = std::uniform_int_distribution<int>(-3, 3)(rng);
    auto small = CurveChiTable::defaults();
    auto big = small;
    for (int k = std::uniform_int_distribution<int>(1, 4)(rng); k > 0; --k)
      big.chis[std::uniform_int_distribution<int>(1, 4)(rng)].insert(std::uniform_int_distribution<int>(-4, 2)(rng));
    CAPTURE(d);
    CAPTURE(chi);
    auto before = admissible_walls(walls(d, chi, small));
    auto after = admissible_walls(walls(d, chi, big));
    for (const auto& w : before)
      CHECK(std::any_of(after.begin(), after.end(), [&](const Wall& x) {
        return x.alpha == w.alpha && x.sub == w.sub && x.quotient == w.quotient;
      }));
  }
}
