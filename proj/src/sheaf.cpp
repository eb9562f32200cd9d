#include "sheafkit/sheaf.hpp"

#include <climits>

namespace sheafkit {

SheafCohomology::SheafCohomology(const ModulePresentation& M)
    : n_(M.ring()->nvars()),
      res_(free_resolution(M)),
      module_(M),
      canonical_(ModulePresentation::free(M.ring(), {M.ring()->nvars()})),
      hp_(HilbertPolynomial::from_betti(res_.betti(), M.ring()->nvars())) {}

int SheafCohomology::h(int q, int d) {
  if (q < 0 || q > n_ - 1)
    throw Error(ErrorKind::Argument, "cohomological degree " + std::to_string(q) + " out of range 0.." +
                                         std::to_string(n_ - 1));
  if (q >= 1) return ext_dim(res_, canonical_, n_ - 1 - q, -d);
  return module_.dim(d) - ext_dim(res_, canonical_, n_, -d) + ext_dim(res_, canonical_, n_ - 1, -d);
}

int SheafCohomology::euler(int d) {
  int s = 0;
  for (int q = 0; q < n_; ++q) s += (q % 2 ? -1 : 1) * h(q, d);
  return s;
}

int sheaf_cohomology(const ModulePresentation& M, int q, int d) { return SheafCohomology(M).h(q, d); }

int truncated_ext(const ModulePresentation& M, const ModulePresentation& N, int i, int e) {
  ModulePresentation T = truncate(M, e);
  FreeResolution F = free_resolution(T, i + 1);
  GradedPieces P(N);
  return ext_dim(F, P, i, 0);
}

SheafExtResult sheaf_ext(const ModulePresentation& M, const ModulePresentation& N, int i, const SheafExtOptions& opt) {
  const int n = M.ring()->nvars();
  if (i < 0 || i > n - 1)
    throw Error(ErrorKind::Argument, "Ext index " + std::to_string(i) + " out of range 0.." + std::to_string(n - 1));
  int e = opt.start == INT32_MIN ? regularity(N) + 1 : opt.start;
  SheafExtResult r;
  int run = 0;
  for (int step = 0; step < opt.max_steps; ++step, ++e) {
    int v = truncated_ext(M, N, i, e);
    run = (!r.trail.empty() && r.trail.back().second == v) ? run + 1 : 1;
    r.trail.emplace_back(e, v);
    if (run >= opt.agree) {
      r.dim = v;
      r.e = e - opt.agree + 1;
      return r;
    }
  }
  throw Error(ErrorKind::Math, "sheaf Ext did not stabilize within " + std::to_string(opt.max_steps) +
                                   " truncation steps");
}

int sheaf_ext_dim(const ModulePresentation& M, const ModulePresentation& N, int i) { return sheaf_ext(M, N, i).dim; }

ModulePresentation dual_sheaf(const ModulePresentation& M) {
  const int n = M.ring()->nvars();
  if (hilbert_polynomial(M).degree() != 1) throw Error(ErrorKind::Math, "dual sheaf needs one-dimensional support");
  return minimal_presentation(ext_module(M, ModulePresentation::free(M.ring(), {n}), n - 2));
}

SerreCheck serre_duality_check(const ModulePresentation& A, const ModulePresentation& B, int i) {
  const int n = A.ring()->nvars();
  SerreCheck c;
  c.lhs = sheaf_ext_dim(A, B, i);
  c.rhs = sheaf_ext_dim(B, A.twist(-n), n - 1 - i);
  return c;
}

ModulePresentation omega(const RingPtr& ring, int p) {
  const int n = ring->nvars();
  if (p < 0 || p > n - 1) throw Error(ErrorKind::Argument, "Omega^" + std::to_string(p) + " out of range");
  if (p == 0) return ModulePresentation::free(ring, {0});
  FreeResolution K = free_resolution(ModulePresentation::quotient(ring, irrelevant_ideal(ring)));
  if (p == n - 1) return ModulePresentation::free(ring, {n});
  // Omega^p = ker(F_p -> F_{p-1}) twisted = coker(d_{p+2}) on F_{p+1}.
  return ModulePresentation(K.maps[static_cast<std::size_t>(p + 1)]);
}

BeilinsonSignature beilinson_table(const ModulePresentation& M) {
  const RingPtr& ring = M.ring();
  if (ring->nvars() != 4) throw Error(ErrorKind::Argument, "Beilinson table is defined for P^3");
  SheafCohomology F(M);
  if (F.hilbert_polynomial() != HilbertPolynomial::linear(4, 1))
    throw Error(ErrorKind::Math, "Beilinson table expects Hilbert polynomial 4*m+1, got " +
                                     F.hilbert_polynomial().to_string());
  BeilinsonSignature s;
  s.h0 = F.h(0, 0);
  s.h0_minus1 = F.h(0, -1);
  s.h1 = F.h(1, 0);
  s.h0_omega1 = SheafCohomology(tensor_presentation(M, omega(ring, 1).twist(1))).h(0, 0);
  s.h0_omega2 = SheafCohomology(tensor_presentation(M, omega(ring, 2).twist(2))).h(0, 0);
  auto sig = std::make_tuple(s.h0_omega2, s.h0_omega1, s.h0);
  if (sig == std::make_tuple(0, 0, 1))
    s.type = "i";
  else if (sig == std::make_tuple(0, 1, 1))
    s.type = "ii";
  else if (sig == std::make_tuple(1, 3, 2))
    s.type = "iii";
  else
    s.type = "unclassified";
  return s;
}

std::optional<Polynomial> planar_form(const ModulePresentation& M) {
  for (const auto& g : annihilator(M))
    if (g.homogeneous_degree() == 1) return g;
  return std::nullopt;
}

bool is_planar(const ModulePresentation& M) { return planar_form(M).has_value(); }

ModulePresentation restrict_to_plane(const ModulePresentation& M, int v) {
  const RingPtr& ring = M.ring();
  std::vector<std::string> names;
  std::vector<int> keep;
  for (int k = 0; k < ring->nvars(); ++k)
    if (k != v) {
      names.push_back(ring->vars()[static_cast<std::size_t>(k)]);
      keep.push_back(k);
    }
  return restrict_to_subring(M, make_ring(names, ring->field()), keep);
}

}  // namespace sheafkit
