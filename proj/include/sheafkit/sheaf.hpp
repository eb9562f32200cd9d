#pragma once

#include <string>
#include <vector>

#include "sheafkit/homology.hpp"

namespace sheafkit {

// Cohomology of the sheaf associated to M on P^{n-1}, n = number of variables.
// For q >= 1, h^q(F(d)) = dim Ext^{n-1-q}(M, S(-n))_{-d} (local duality). For q = 0
// the local-cohomology correction
//   h^0(F(d)) = dim M_d - dim Ext^n(M,S(-n))_{-d} + dim Ext^{n-1}(M,S(-n))_{-d}
// accounts for torsion and missing sections, so no saturation is needed.
class SheafCohomology {
 public:
  explicit SheafCohomology(const ModulePresentation& M);
  int h(int q, int d);
  int euler(int d);  // sum_q (-1)^q h^q(F(d))
  const HilbertPolynomial& hilbert_polynomial() const { return hp_; }

 private:
  int n_;
  FreeResolution res_;
  GradedPieces module_;
  GradedPieces canonical_;  // S(-n)
  HilbertPolynomial hp_;
};

int sheaf_cohomology(const ModulePresentation& M, int q, int d);

struct SheafExtOptions {
  int start = INT32_MIN;  // first truncation degree; default reg(N) + 1
  int agree = 3;          // consecutive equal values required
  int max_steps = 10;
};

struct SheafExtResult {
  int dim = 0;
  int e = 0;  // truncation degree that produced the accepted value
  std::vector<std::pair<int, int>> trail;  // (e, value) pairs that were computed
};

// dim Ext^i(F, G) computed as Ext^i_S(M_{>=e}, N)_0 for increasing e until stable.
SheafExtResult sheaf_ext(const ModulePresentation& M, const ModulePresentation& N, int i,
                         const SheafExtOptions& opt = {});
int sheaf_ext_dim(const ModulePresentation& M, const ModulePresentation& N, int i);
// Ext^i_S(M_{>=e}, N)_0 for one fixed e.
int truncated_ext(const ModulePresentation& M, const ModulePresentation& N, int i, int e);

// F^D = Ext^{n-2}(F, omega): the module Ext^{n-2}_S(M, S(-n)), minimized.
ModulePresentation dual_sheaf(const ModulePresentation& M);

struct SerreCheck {
  int lhs = 0;  // ext^i(A, B)
  int rhs = 0;  // ext^{n-1-i}(B, A(-n))
  bool ok() const { return lhs == rhs; }
};
SerreCheck serre_duality_check(const ModulePresentation& A, const ModulePresentation& B, int i);

// Omega^p of P^{n-1} as the cokernel of a Koszul differential; generators sit in
// degree p + 1, so the module sheafifies to Omega^p and Omega^p(p) = omega(p).twist(p).
ModulePresentation omega(const RingPtr& ring, int p);

struct BeilinsonSignature {
  int h0_omega2 = 0;  // h^0(F (x) Omega^2(2))
  int h0_omega1 = 0;  // h^0(F (x) Omega^1(1))
  int h0 = 0;         // h^0(F)
  int h0_minus1 = 0;  // h^0(F(-1))
  int h1 = 0;         // h^1(F)
  std::string type;   // "i", "ii", "iii" or "unclassified"
};
BeilinsonSignature beilinson_table(const ModulePresentation& M);

// True iff the annihilator contains a nonzero linear form.
bool is_planar(const ModulePresentation& M);
std::optional<Polynomial> planar_form(const ModulePresentation& M);

// Transports M, annihilated by variable v, to the polynomial ring without v.
ModulePresentation restrict_to_plane(const ModulePresentation& M, int v);

}  // namespace sheafkit
