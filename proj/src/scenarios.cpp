#include "sheafkit/scenarios.hpp"

#include <functional>
#include <mutex>

namespace sheafkit {

namespace {

template <class M>
const typename M::mapped_type& lookup(const M& m, const std::string& key, const std::string& fixture, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) throw Error(ErrorKind::NotFound, "fixture " + fixture + " has no " + what + " named " + key);
  return it->second;
}

}  // namespace

const ModulePresentation& Fixture::module(const std::string& key) const { return lookup(modules, key, name, "module"); }
const GradedMatrix& Fixture::matrix(const std::string& key) const { return lookup(matrices, key, name, "matrix"); }
const Ideal& Fixture::ideal(const std::string& key) const { return lookup(ideals, key, name, "ideal"); }
const std::vector<Scalar>& Fixture::point(const std::string& key) const { return lookup(points, key, name, "point"); }

Ideal point_ideal(const RingPtr& ring, const std::vector<Scalar>& p) {
  const int n = ring->nvars();
  if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::Argument, "point has the wrong number of coordinates");
  int piv = -1;
  for (int i = 0; i < n; ++i)
    if (p[static_cast<std::size_t>(i)] != 0) {
      piv = i;
      break;
    }
  if (piv < 0) throw Error(ErrorKind::Argument, "the zero vector is not a projective point");
  // p_piv * x_i - p_i * x_piv for i != piv
  Ideal out;
  const Field& f = ring->field();
  for (int i = 0; i < n; ++i) {
    if (i == piv) continue;
    Polynomial a = Polynomial::variable(ring, i).scale(f.from_rational(p[static_cast<std::size_t>(piv)]));
    Polynomial b = Polynomial::variable(ring, piv).scale(f.from_rational(p[static_cast<std::size_t>(i)]));
    out.push_back(a - b);
  }
  return out;
}

// ---------------------------------------------------------------- jump of Ext^1(C_p, O_C)

JumpExt jumpext_case(const Ideal& I, const std::vector<Scalar>& p) {
  if (I.empty()) throw Error(ErrorKind::Argument, "empty ideal");
  const RingPtr& ring = I.front().ring();
  const Field& f = ring->field();
  for (const auto& g : I)
    if (g.evaluate_projective(p) != 0) throw Error(ErrorKind::Argument, "the point does not lie on the curve");
  ModulePresentation O_C = ModulePresentation::quotient(ring, I);
  FreeResolution F = free_resolution(O_C, 2);
  if (F.length() < 2) throw Error(ErrorKind::Math, "the ideal has no syzygies");
  GradedMatrix delta = F.maps[1];
  int rows = delta.nrows(), cols = delta.ncols();
  int pad = 0;
  if (rows == 2 && cols == 1) pad = 1;  // complete intersection: add S(-3) -> S(-3)
  Echelon ech(f);
  for (int j = 0; j < cols; ++j) {
    SparseVec v;
    for (int i = 0; i < rows; ++i) {
      Scalar val = delta.entry(i, j).evaluate_projective(p);
      if (val != 0) v.e.emplace_back(i, f.from_rational(val));
    }
    ech.insert(std::move(v));
  }
  JumpExt r;
  r.rank_at_p = ech.rank() + pad;
  r.predicted_ext = cols + pad - r.rank_at_p;
  ModulePresentation Cp = ModulePresentation::quotient(ring, point_ideal(ring, p));
  r.computed_ext = sheaf_ext_dim(Cp, O_C, 1);
  return r;
}

// ---------------------------------------------------------------- extensions

ExtensionLift extension_from_class(const ModulePresentation& A, const ModulePresentation& B, int e) {
  const RingPtr& ring = A.ring();
  const Field& f = ring->field();
  ModulePresentation At = truncate(A, e);
  FreeResolution F = free_resolution(At, 2);
  if (F.length() < 1) throw Error(ErrorKind::Math, "truncated module is free; there are no extensions");
  GradedPieces PB(B);
  const Twists& F1 = F.modules[1];
  // Cocycles: kernel of Hom(F_1, B)_0 -> Hom(F_2, B)_0.
  int dimC1 = block_dim([&] {
    Twists t;
    for (int a : F1) t.push_back(-a);
    return t;
  }(), PB, 0);
  std::vector<SparseVec> cocycles;
  if (F.length() >= 2) {
    auto rows = map_rows(transpose(F.maps[1]), PB, 0);
    std::map<int, std::vector<std::pair<int, Scalar>>> byc;
    for (int b = 0; b < static_cast<int>(rows.size()); ++b)
      for (const auto& [t, v] : rows[static_cast<std::size_t>(b)].e) byc[t].emplace_back(b, v);
    std::vector<SparseVec> tr;
    for (auto& [t, entries] : byc) {
      SparseVec s;
      s.e = std::move(entries);
      tr.push_back(std::move(s));
    }
    cocycles = nullspace(f, tr, dimC1);
  } else {
    for (int b = 0; b < dimC1; ++b) cocycles.push_back(SparseVec{{{b, f.from_int(1)}}});
  }
  Echelon cob(f);
  for (auto& r : map_rows(transpose(F.maps[0]), PB, 0)) cob.insert(std::move(r));
  ExtensionLift out;
  out.e = e;
  out.ext_dim = static_cast<int>(cocycles.size()) - cob.rank();
  const SparseVec* chosen = nullptr;
  for (const auto& c : cocycles)
    if (!cob.in_span(c)) {
      chosen = &c;
      break;
    }
  if (!chosen) throw Error(ErrorKind::Math, "Ext^1 vanishes in degree 0; every extension splits");
  // Coordinates -> theta columns. Block j holds the standard monomials of B in degree a_{1j}.
  std::vector<Vec> theta(F1.size());
  std::vector<std::pair<std::size_t, int>> where;  // coordinate -> (block, position)
  for (std::size_t j = 0; j < F1.size(); ++j)
    for (int k = 0; k < PB.dim(F1[j]); ++k) where.emplace_back(j, k);
  for (const auto& [idx, val] : chosen->e) {
    auto [j, k] = where[static_cast<std::size_t>(idx)];
    const auto& [m, c] = PB.standard(F1[j])[static_cast<std::size_t>(k)];
    theta[j].push_back({m, c, val});
  }
  const auto g0 = static_cast<std::uint32_t>(B.gens().size());
  Twists target = B.gens();
  target.insert(target.end(), F.modules[0].begin(), F.modules[0].end());
  std::vector<Vec> cols = B.relations().columns();
  for (std::size_t j = 0; j < F1.size(); ++j) {
    Vec v = vec_scale(f, theta[j], f.from_int(-1));
    for (const auto& t : F.maps[0].column(static_cast<int>(j))) v.push_back({t.m, t.comp + g0, t.c});
    cols.push_back(std::move(v));
  }
  out.module = minimal_presentation(ModulePresentation::from_relations(ring, target, std::move(cols)));
  return out;
}

// ---------------------------------------------------------------- binary forms

ModulePresentation binary_form_module(const RingPtr& ring, const std::vector<Polynomial>& forms, int max_deg) {
  const int n = ring->nvars();
  if (static_cast<int>(forms.size()) != n) throw Error(ErrorKind::Argument, "one form per variable is required");
  RingPtr T;
  int k = -1;
  for (const auto& g : forms) {
    if (g.is_zero()) continue;
    T = g.ring();
    auto d = g.homogeneous_degree();
    if (!d || (k >= 0 && *d != k)) throw Error(ErrorKind::Degree, "forms must be homogeneous of one degree");
    k = *d;
  }
  if (!T || T->nvars() != 2 || k <= 0) throw Error(ErrorKind::Argument, "need nonzero binary forms of positive degree");
  const Field& f = ring->field();
  // Coordinates of a binary form of degree D: coefficient of s^a t^(D-a) at index D - a
  // (matches the descending order of monomials_of_degree(2, D)).
  auto coords = [](const Polynomial& p) {
    SparseVec v;
    for (const auto& t : p.terms()) v.e.emplace_back(t.m.e[1], t.c);
    std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  std::unordered_map<Monomial, Polynomial, MonomialHash> power_cache;
  std::function<Polynomial(const Monomial&)> eval = [&](const Monomial& m) -> Polynomial {
    auto it = power_cache.find(m);
    if (it != power_cache.end()) return it->second;
    Polynomial r;
    if (m.deg == 0) {
      r = Polynomial::constant(T, 1);
    } else {
      int v = 0;
      while (m.e[v] == 0) ++v;
      Monomial rest = m;
      rest.e[v]--;
      rest.deg--;
      r = eval(rest) * forms[static_cast<std::size_t>(v)];
      if (forms[static_cast<std::size_t>(v)].is_zero()) r = Polynomial(T);
    }
    power_cache.emplace(m, r);
    return r;
  };
  struct Gen {
    int deg;
    Polynomial image;
  };
  std::vector<Gen> gens;
  for (int d = 0; d <= max_deg; ++d) {
    Echelon span(f);
    for (const auto& g : gens)
      if (g.deg <= d)
        for (const auto& m : monomials_of_degree(n, d - g.deg)) span.insert(coords(eval(m) * g.image));
    for (const auto& mono : monomials_of_degree(2, k * d)) {
      Polynomial u = Polynomial::monomial(T, mono, 1);
      if (span.insert(coords(u))) gens.push_back({d, u});
    }
  }
  Twists tw;
  for (const auto& g : gens) tw.push_back(g.deg);
  std::vector<Vec> rels;
  for (int d = 0; d <= max_deg; ++d) {
    std::vector<std::pair<Monomial, std::uint32_t>> basis;
    std::map<int, std::vector<std::pair<int, Scalar>>> byc;
    for (std::uint32_t j = 0; j < gens.size(); ++j) {
      if (gens[j].deg > d) continue;
      for (const auto& m : monomials_of_degree(n, d - gens[j].deg)) {
        int b = static_cast<int>(basis.size());
        basis.emplace_back(m, j);
        for (const auto& [t, v] : coords(eval(m) * gens[j].image).e) byc[t].emplace_back(b, v);
      }
    }
    std::vector<SparseVec> tr;
    for (auto& [t, entries] : byc) {
      SparseVec s;
      s.e = std::move(entries);
      tr.push_back(std::move(s));
    }
    for (const auto& v : nullspace(f, tr, static_cast<int>(basis.size()))) {
      Vec r;
      for (const auto& [b, c] : v.e) r.push_back({basis[static_cast<std::size_t>(b)].first, basis[static_cast<std::size_t>(b)].second, c});
      canonicalize(f, r);
      rels.push_back(std::move(r));
    }
  }
  rels = minimal_generators(ring, tw, std::move(rels));
  return ModulePresentation::from_relations(ring, tw, std::move(rels));
}

// ---------------------------------------------------------------- fixture catalog

namespace {

struct Builder {
  Fixture fx;
  Builder(std::string name, std::string citation, const Field& field) {
    fx.name = std::move(name);
    fx.citation = std::move(citation);
    fx.ring = p3_ring(field);
  }
  Polynomial P(const std::string& s) const { return parse_polynomial(fx.ring, s); }
  Ideal I(const std::vector<std::string>& gens) const {
    Ideal out;
    for (const auto& g : gens) out.push_back(P(g));
    return out;
  }
  GradedMatrix mat(Twists target, Twists source, const std::vector<std::vector<std::string>>& rows) const {
    std::vector<std::vector<Polynomial>> pr;
    for (const auto& r : rows) {
      pr.emplace_back();
      for (const auto& e : r) pr.back().push_back(P(e));
    }
    return GradedMatrix::from_rows(fx.ring, std::move(target), std::move(source), pr);
  }
  ModulePresentation quotient(const std::vector<std::string>& gens) const {
    return ModulePresentation::quotient(fx.ring, I(gens));
  }
  void check(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::Internal, "fixture " + fx.name + " failed its self-check: " + what);
    fx.checks.push_back(what);
  }
  void check_hp(const std::string& key, const HilbertPolynomial& expect) {
    HilbertPolynomial h = hilbert_polynomial(fx.module(key));
    check(h == expect, "HP(" + key + ") = " + expect.to_string() + " (computed " + h.to_string() + ")");
  }
  void check_on_curve(const Ideal& I, const std::string& point) {
    bool ok = true;
    for (const auto& g : I) ok = ok && g.evaluate_projective(fx.point(point)) == 0;
    check(ok, point + " lies on the curve");
  }
};

std::vector<Scalar> pt(std::initializer_list<long> c) {
  std::vector<Scalar> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

bool same_ideal(const Ideal& a, const Ideal& b) { return reduced_gens(a) == reduced_gens(b); }

// Jacobian-type check: the ideal (x, f, df) must vanish at p for a singular point of the plane curve f.
bool singular_at(const Polynomial& f, const std::vector<Scalar>& p) {
  if (f.evaluate_projective(p) != 0) return false;
  for (int v = 0; v < f.ring()->nvars(); ++v) {
    Polynomial d = f.derivative(v);
    if (!d.is_zero() && d.evaluate_projective(p) != 0) return false;
  }
  return true;
}

void add_line_cubic(Builder& b, const std::string& q1, const std::string& q2, bool singular) {
  b.fx.ideals["I"] = b.I({"xy", "xz", "y(" + q1 + ")+z(" + q2 + ")"});
  b.fx.points["p"] = pt({0, 0, 0, 1});
  b.fx.modules["O_C"] = ModulePresentation::quotient(b.fx.ring, b.fx.ideal("I"));
  b.fx.modules["C_p"] = b.quotient({"x", "y", "z"});
  b.fx.matrices["delta"] = b.mat({2, 2, 3}, {4, 3}, {{"-(" + q1 + ")", "z"}, {"-(" + q2 + ")", "-y"}, {"x", "0"}});
  b.check_hp("O_C", HilbertPolynomial::linear(4, 0));
  b.check_on_curve(b.fx.ideal("I"), "p");
  GradedMatrix gens = b.mat({0}, {2, 2, 3}, {{"xy", "xz", "y(" + q1 + ")+z(" + q2 + ")"}});
  b.check(gens.compose(b.fx.matrix("delta")).is_zero(), "the displayed syzygy matrix composes to zero");
  Polynomial c0 = b.P("y(" + q1 + ")+z(" + q2 + ")");
  b.check(singular_at(c0, b.fx.point("p")) == singular,
          std::string("the plane cubic is ") + (singular ? "singular" : "smooth") + " at p");
}

Fixture build(const std::string& name, const Field& field) {
  if (name == "f1_elliptic_ci") {
    Builder b(name, "complete intersection of two quadrics, the general quartic of arithmetic genus one", field);
    b.fx.ideals["I"] = b.I({"x^2+y^2+z^2+w^2", "xy+zw"});
    b.fx.modules["O_C"] = ModulePresentation::quotient(b.fx.ring, b.fx.ideal("I"));
    b.check_hp("O_C", HilbertPolynomial::linear(4, 0));
    BettiTable k;
    k.entries = {{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}};
    b.check(free_resolution(b.fx.module("O_C")).betti() == k, "Koszul Betti table (regular sequence)");
    return b.fx;
  }
  if (name == "f1b_pointed_ci") {
    Builder b(name, "complete intersection of two quadrics through a rational point", field);
    b.fx.ideals["I"] = b.I({"xw+y^2-z^2", "yw+xz"});
    b.fx.points["p"] = pt({0, 0, 0, 1});
    b.fx.modules["O_C"] = ModulePresentation::quotient(b.fx.ring, b.fx.ideal("I"));
    b.fx.modules["C_p"] = b.quotient({"x", "y", "z"});
    b.check_hp("O_C", HilbertPolynomial::linear(4, 0));
    b.check_on_curve(b.fx.ideal("I"), "p");
    return b.fx;
  }
  if (name == "f2a_line_cubic_regular") {
    Builder b(name, "line plus plane cubic, ideal <xy, xz, y q1 + z q2>, q1(p) nonzero", field);
    add_line_cubic(b, "w^2", "y^2", false);
    return b.fx;
  }
  if (name == "f2b_line_cubic_singular") {
    Builder b(name, "line plus plane cubic singular at p, q1(p) = q2(p) = 0", field);
    add_line_cubic(b, "y^2+zw", "z^2", true);
    return b.fx;
  }
  if (name == "f3_doubleline_conic") {
    Builder b(name, "double line of genus -2 plus a conic, ideal <x^2, xy, x q1 + y q2>", field);
    b.fx.ideals["I"] = b.I({"x^2", "xy", "xz^2+y(z^2-yw)"});
    b.fx.points["p"] = pt({0, 0, 0, 1});
    b.fx.modules["O_C"] = ModulePresentation::quotient(b.fx.ring, b.fx.ideal("I"));
    b.fx.modules["C_p"] = b.quotient({"x", "y", "z"});
    b.fx.matrices["delta"] = b.mat({2, 2, 3}, {4, 3}, {{"-z^2", "-y"}, {"-(z^2-yw)", "x"}, {"x", "0"}});
    b.check_hp("O_C", HilbertPolynomial::linear(4, 0));
    b.check_on_curve(b.fx.ideal("I"), "p");
    GradedMatrix gens = b.mat({0}, {2, 2, 3}, {{"x^2", "xy", "xz^2+y(z^2-yw)"}});
    b.check(gens.compose(b.fx.matrix("delta")).is_zero(), "the displayed syzygy matrix composes to zero");
    b.check(b.P("z^2").evaluate_projective(b.fx.point("p")) == 0 &&
                b.P("z^2-yw").evaluate_projective(b.fx.point("p")) == 0,
            "q1(p) = q2(p) = 0");
    return b.fx;
  }
  if (name == "f4_e2b_sheaf") {
    Builder b(name, "sheaf with resolution 3O(-3) -> 5O(-2) -> O(-1) + O, supported on <x^2, xy, y^3>", field);
    b.fx.matrices["psi"] = b.mat({2, 2, 2, 2, 2}, {3, 3, 3},
                                 {{"-y", "-z", "0"}, {"x", "0", "0"}, {"0", "x", "0"}, {"0", "-y", "x"}, {"0", "0", "-y"}});
    b.fx.matrices["phi"] = b.mat({1, 0}, {2, 2, 2, 2, 2}, {{"x", "y", "z", "0", "0"}, {"0", "0", "y^2", "xy", "x^2"}});
    b.fx.modules["F"] = ModulePresentation(b.fx.matrix("phi"));
    b.fx.points["p"] = pt({0, 0, 0, 1});
    b.check_hp("F", HilbertPolynomial::linear(4, 1));
    b.check(b.fx.matrix("phi").compose(b.fx.matrix("psi")).is_zero(), "phi psi = 0");
    b.check(same_ideal(annihilator(b.fx.module("F")), b.I({"x^2", "xy", "y^3"})), "Ann(F) = <x^2, xy, y^3>");
    return b.fx;
  }
  if (name == "f5_oc0p_on_line" || name == "f5_oc0p_off_line") {
    const bool on = name == "f5_oc0p_on_line";
    Builder b(name, on ? "O_C0(p) for C0 = L + Q in the plane x = 0, p on L and Q"
                       : "O_C0(p) for C0 = L + Q in the plane x = 0, p on Q but not on L", field);
    const std::string q2 = "z^2-yw";
    if (on) {
      b.fx.matrices["gamma"] = b.mat({1, 0}, {2, 2, 2, 1}, {{"y", "z", "x", "0"}, {"0", q2, "0", "x"}});
      b.fx.matrices["delta"] = b.mat({2, 2, 2, 1}, {3, 3}, {{"x", "0"}, {"0", "x"}, {"-y", "-z"}, {"0", "-(" + q2 + ")"}});
      b.fx.points["p"] = pt({0, 0, 0, 1});
    } else {
      // l1 = y - w, l2 = z - w cut out p = [0:1:1:1] in the plane; l1*b - l2*a = y*q2.
      b.fx.matrices["gamma"] = b.mat({1, 0}, {2, 2, 2, 1}, {{"y-w", "z-w", "x", "0"}, {"-y(z+w)", "-yw", "0", "x"}});
      b.fx.matrices["delta"] = b.mat({2, 2, 2, 1}, {3, 3},
                                     {{"x", "0"}, {"0", "x"}, {"-(y-w)", "-(z-w)"}, {"y(z+w)", "yw"}});
      b.fx.points["p"] = pt({0, 1, 1, 1});
    }
    b.fx.modules["O_C0(p)"] = ModulePresentation(b.fx.matrix("gamma"));
    b.fx.modules["O_C0"] = b.quotient({"x", "y(" + q2 + ")"});
    b.fx.modules["O_L"] = b.quotient({"x", "y"});
    b.fx.modules["O_L(-1)"] = b.fx.module("O_L").twist(-1);
    b.fx.modules["C_p"] = ModulePresentation::quotient(b.fx.ring, point_ideal(b.fx.ring, b.fx.point("p")));
    b.check_hp("O_C0(p)", HilbertPolynomial::linear(3, 1));
    b.check_hp("O_C0", HilbertPolynomial::linear(3, 0));
    b.check(b.fx.matrix("gamma").compose(b.fx.matrix("delta")).is_zero(), "gamma delta = 0");
    auto rep = verify_complex({b.fx.matrix("delta"), b.fx.matrix("gamma")}, -2, 8);
    b.check(rep.exact_at(0) && rep.exact_at(1), "0 -> 2O(-3) -> 3O(-2)+O(-1) is exact");
    b.check(same_ideal(annihilator(b.fx.module("O_C0(p)")), b.I({"x", "y(" + q2 + ")"})), "Ann = I_C0");
    b.check(b.P(q2).evaluate_projective(b.fx.point("p")) == 0, "p lies on Q");
    b.check((b.P("y").evaluate_projective(b.fx.point("p")) == 0) == on, on ? "p lies on L" : "p is off L");
    // Extension 0 -> O_L(-1) -> E -> O_C0(p) -> 0 from the first non-trivial class; L lies in the plane of C0.
    auto lift = extension_from_class(b.fx.module("O_C0(p)"), b.fx.module("O_L(-1)"), 2);
    b.check(lift.ext_dim == 4, "Ext^1(O_C0(p), O_L(-1)) has dimension 4 in degree 0 after truncation");
    b.fx.modules["E"] = lift.module;
    b.check_hp("E", HilbertPolynomial::linear(4, 1));
    return b.fx;
  }
  if (name == "f6_omega") {
    Builder b(name, "cotangent sheaves as Koszul syzygy modules", field);
    b.fx.modules["Omega1"] = omega(b.fx.ring, 1);
    b.fx.modules["Omega2"] = omega(b.fx.ring, 2);
    b.check(b.fx.module("Omega1").gens() == Twists(6, 2), "Omega1 has 6 generators in degree 2");
    b.check(b.fx.module("Omega2").gens() == Twists(4, 3), "Omega2 has 4 generators in degree 3");
    b.check_hp("Omega1", [&] {
      // chi(Omega^1(m)) = 4 binom(m+2,3) - binom(m+3,3) = (m+2)(m^2-1)/2
      HilbertPolynomial h;
      h.coeffs = {Scalar(-1), Scalar(-1, 2), Scalar(1), Scalar(1, 2)};
      return h;
    }());
    return b.fx;
  }
  if (name == "f7_standards") {
    Builder b(name, "line bundles, a line, a point, a plane and a planar cubic", field);
    for (int k = -4; k <= 4; ++k) b.fx.modules["O(" + std::to_string(k) + ")"] = ModulePresentation::free(b.fx.ring, {-k});
    b.fx.modules["O"] = ModulePresentation::free(b.fx.ring, {0});
    b.fx.modules["O_L"] = b.quotient({"x", "y"});
    for (int k = -3; k <= 1; ++k) b.fx.modules["O_L(" + std::to_string(k) + ")"] = b.fx.module("O_L").twist(k);
    b.fx.modules["C_p"] = b.quotient({"x", "y", "z"});
    b.fx.points["p"] = pt({0, 0, 0, 1});
    b.fx.modules["O_H"] = b.quotient({"w"});
    b.fx.modules["O_C0"] = b.quotient({"x", "y^3+yzw+z^3"});
    b.check_hp("O_L", HilbertPolynomial::linear(1, 1));
    b.check_hp("O_C0", HilbertPolynomial::linear(3, 0));
    b.check_hp("C_p", HilbertPolynomial::linear(0, 1));
    return b.fx;
  }
  if (name == "f8_nodal_quartic") {
    Builder b(name, "push-forward of O_P1 under a plane rational quartic with three nodes", field);
    RingPtr T = make_ring({"s", "t"}, b.fx.ring->field());
    // Quadratic transform of the conic (s^2-t^2 : s^2-4t^2 : st); its three nodes sit at the coordinate points.
    std::vector<Polynomial> forms{parse_polynomial(T, "(s^2-4t^2)st"), parse_polynomial(T, "(s^2-t^2)st"),
                                  parse_polynomial(T, "(s^2-t^2)(s^2-4t^2)"), Polynomial(T)};
    b.fx.modules["F"] = binary_form_module(b.fx.ring, forms, 5);
    b.check_hp("F", HilbertPolynomial::linear(4, 1));
    auto hf = hilbert_function(b.fx.module("F"), 0, 9);
    bool ok = true;
    for (int d = 0; d <= 9; ++d) ok = ok && hf[static_cast<std::size_t>(d)] == 4 * d + 1;
    b.check(ok, "dim F_d = 4d + 1 for d = 0..9");
    b.check(free_resolution(b.fx.module("F")).length() <= 3, "depth >= 1 (projective dimension <= 3)");
    Ideal ann = annihilator(b.fx.module("F"));
    Polynomial quartic;
    for (const auto& g : ann)
      if (g.homogeneous_degree() == 4) quartic = g;
    b.check(ann.size() == 2 && !quartic.is_zero(), "Ann(F) = <w, quartic>");
    b.fx.ideals["curve"] = ann;
    Ideal jac{b.P("w"), quartic};
    for (int v = 0; v < 3; ++v) jac.push_back(quartic.derivative(v));
    auto sing = hilbert_polynomial(ModulePresentation::quotient(b.fx.ring, jac));
    b.check(sing == HilbertPolynomial::linear(0, 3), "singular scheme has length 3 = delta (three nodes)");
    b.fx.modules["F_H"] = restrict_to_plane(b.fx.module("F"), 3);
    return b.fx;
  }
  if (name == "wplus_extension") {
    Builder b(name, "non-split extension of O_L by O_C0 with L meeting the plane of C0 in one point", field);
    b.fx.modules["O_C0"] = b.quotient({"x", "yw^2+y^3+z^3"});
    b.fx.modules["O_L"] = b.quotient({"y", "z"});
    b.fx.modules["O_L(-1)"] = b.fx.module("O_L").twist(-1);
    b.fx.points["p"] = pt({0, 0, 0, 1});
    // O_C0(p) on the plane x = 0: y*(w^2+y^2) - z*(-z^2) is the cubic.
    b.fx.matrices["gamma"] = b.mat({1, 0}, {2, 2, 2, 1}, {{"y", "z", "x", "0"}, {"-z^2", "w^2+y^2", "0", "x"}});
    b.fx.modules["O_C0(p)"] = ModulePresentation(b.fx.matrix("gamma"));
    b.check_hp("O_C0(p)", HilbertPolynomial::linear(3, 1));
    b.check(!singular_at(b.P("yw^2+y^3+z^3"), b.fx.point("p")), "C0 is smooth at p");
    auto lift = extension_from_class(b.fx.module("O_L"), b.fx.module("O_C0"), 3);
    b.check(lift.ext_dim == 1, "Ext^1(O_L, O_C0) is one-dimensional");
    b.fx.modules["F"] = lift.module;
    b.check_hp("F", HilbertPolynomial::linear(4, 1));
    b.check(!is_planar(b.fx.module("F")), "F is not planar");
    return b.fx;
  }
  if (name == "planar_type_iii") {
    Builder b(name, "planar sheaf from the resolution O(-4)+O(-2) -> O(-3)+3O(-1) -> 2O, l = w, l1 = x, l2 = y", field);
    const std::string f1 = "z^3+xyz", f2 = "y^3+xz^2";
    b.fx.matrices["phi"] = b.mat({0, 0}, {3, 1, 1, 1}, {{f1, "x", "w", "0"}, {f2, "y", "0", "w"}});
    b.fx.matrices["psi"] = b.mat({3, 1, 1, 1}, {4, 2}, {{"w", "0"}, {"0", "w"}, {"-(" + f1 + ")", "-x"}, {"-(" + f2 + ")", "-y"}});
    b.fx.modules["F"] = ModulePresentation(b.fx.matrix("phi"));
    b.check_hp("F", HilbertPolynomial::linear(4, 1));
    b.check(b.fx.matrix("phi").compose(b.fx.matrix("psi")).is_zero(), "phi psi = 0");
    auto rep = verify_complex({b.fx.matrix("psi"), b.fx.matrix("phi")}, -2, 8);
    b.check(rep.exact_at(0) && rep.exact_at(1), "the resolution is exact");
    b.check(is_planar(b.fx.module("F")), "F is planar");
    b.fx.modules["F_H"] = restrict_to_plane(b.fx.module("F"), 3);
    return b.fx;
  }
  if (name == "planar_3m1") {
    Builder b(name, "planar sheaf with Hilbert polynomial 3m+1, line bundle on a smooth plane cubic", field);
    b.fx.matrices["phi"] = b.mat({1, 0}, {2, 2, 2, 1}, {{"x", "y", "w", "0"}, {"-y^2-2z^2", "x^2+z^2", "0", "w"}});
    b.fx.modules["G"] = ModulePresentation(b.fx.matrix("phi"));
    b.check_hp("G", HilbertPolynomial::linear(3, 1));
    Polynomial det = b.P("x(x^2+z^2) - y(-y^2-2z^2)");
    Ideal jac{b.P("w"), det};
    for (int v = 0; v < 3; ++v) jac.push_back(det.derivative(v));
    b.check(hilbert_polynomial(ModulePresentation::quotient(b.fx.ring, jac)).degree() < 0,
            "the support cubic is smooth (Jacobian ideal is irrelevant)");
    b.fx.modules["G_H"] = restrict_to_plane(b.fx.module("G"), 3);
    return b.fx;
  }
  throw Error(ErrorKind::NotFound, "unknown fixture " + name);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"f1_elliptic_ci",   "f1b_pointed_ci",   "f2a_line_cubic_regular", "f2b_line_cubic_singular",
          "f3_doubleline_conic", "f4_e2b_sheaf",  "f5_oc0p_on_line",        "f5_oc0p_off_line",
          "f6_omega",         "f7_standards",     "f8_nodal_quartic",       "wplus_extension",
          "planar_type_iii",  "planar_3m1"};
}

const Fixture& load_fixture(const std::string& name, const Field& field) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::uint64_t>, Fixture> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(name, field.characteristic());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, build(name, field)).first->second;
}

}  // namespace sheafkit
