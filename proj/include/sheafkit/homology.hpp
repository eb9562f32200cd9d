#pragma once

#include <map>
#include <string>
#include <vector>

#include "sheafkit/groebner.hpp"

namespace sheafkit {

// beta_{i,j}: number of degree-j generators in homological position i.
struct BettiTable {
  std::map<std::pair<int, int>, int> entries;

  int get(int i, int j) const;
  int regularity() const;  // max(j - i) over nonzero entries; 0 for the zero table
  int length() const;
  std::string to_string() const;
  bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

struct FreeResolution {
  RingPtr ring;
  std::vector<Twists> modules;      // F_0 .. F_L
  std::vector<GradedMatrix> maps;   // maps[i] = d_{i+1} : F_{i+1} -> F_i
  bool minimal = false;

  int length() const { return static_cast<int>(maps.size()); }
  BettiTable betti() const;
  // Checks d_i d_{i+1} = 0 and, if minimal, that no entry is a nonzero constant.
  bool is_complex() const;
  bool has_unit_entries() const;
};

// Minimal resolution; differentials are computed as minimal kernels, so the
// result is minimal by construction. max_length caps the number of maps.
FreeResolution free_resolution(const ModulePresentation& M, int max_length = 4);
// Cancels unit entries of an arbitrary resolution (or complex) until none remain.
FreeResolution minimize(const FreeResolution& R);

int regularity(const BettiTable& b);
int regularity(const ModulePresentation& M);

// Polynomial in m with rational coefficients; coeffs[k] multiplies m^k.
struct HilbertPolynomial {
  std::vector<Scalar> coeffs;

  static HilbertPolynomial from_betti(const BettiTable& b, int nvars);
  static HilbertPolynomial linear(long a, long b);  // a*m + b
  Scalar operator()(long m) const;
  int degree() const;  // -1 for the zero polynomial
  Scalar coefficient(int k) const { return k < static_cast<int>(coeffs.size()) ? coeffs[k] : Scalar(0); }
  std::string to_string() const;
  bool operator==(const HilbertPolynomial& o) const;
  bool operator!=(const HilbertPolynomial& o) const { return !(*this == o); }
};

int hilbert_function(const ModulePresentation& M, int d);
std::vector<int> hilbert_function(const ModulePresentation& M, int lo, int hi);
HilbertPolynomial hilbert_polynomial(const ModulePresentation& M);

GradedMatrix transpose(const GradedMatrix& A);
// A (x) id_G for a free module with twists G.
GradedMatrix kronecker(const GradedMatrix& A, const Twists& G);

// Dimension data of complexes of the form C (x) N with C free.
// Blocks of C (x) N are N(-t_j); all counts are in a single degree d.
int block_dim(const Twists& t, GradedPieces& N, int d);
// Images of the basis of (source (x) N)_d, one row per basis element, in the
// coordinates of (target (x) N)_d. Blocks follow the order of the twists.
std::vector<SparseVec> map_rows(const GradedMatrix& A, GradedPieces& N, int d);
// Rank of (A (x) N)_d.
int map_rank(const GradedMatrix& A, GradedPieces& N, int d);

int ext_dim(const FreeResolution& F, GradedPieces& N, int i, int d);
int tor_dim(const FreeResolution& F, GradedPieces& N, int i, int d);
std::vector<int> ext_dims(const ModulePresentation& M, const ModulePresentation& N, int i, int lo, int hi);
std::vector<int> tor_dims(const ModulePresentation& M, const ModulePresentation& N, int i, int lo, int hi);

// Module-level Ext and Tor as minimal presentations.
ModulePresentation ext_module(const ModulePresentation& M, const ModulePresentation& N, int i);
ModulePresentation tor_module(const ModulePresentation& M, const ModulePresentation& N, int i);

struct ComplexReport {
  bool compositions_zero = true;
  int lo = 0, hi = 0;
  // homology[k][d - lo] at C_k, where the chain is C_0 -> C_1 -> ... -> C_L.
  std::vector<std::vector<int>> homology;
  bool exact_at(int k) const;
};

// maps[k] : C_k -> C_{k+1}, listed in the order they are applied.
ComplexReport verify_complex(const std::vector<GradedMatrix>& maps, int lo, int hi);

}  // namespace sheafkit
