#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sheafkit/linalg.hpp"
#include "sheafkit/poly.hpp"

namespace sheafkit {

// Generator degrees a_j of a graded free module F = sum_j S(-a_j).
using Twists = std::vector<int>;

struct VTerm {
  Monomial m;
  std::uint32_t comp = 0;
  Scalar c;
};

// Free-module vector. Outside Groebner computations terms are kept in
// canonical order: descending grevlex on the monomial, then ascending component.
using Vec = std::vector<VTerm>;

int canonical_compare(const VTerm& a, const VTerm& b);
void canonicalize(const Field& f, Vec& v);  // sorts, merges duplicates, drops zeros
Vec vec_add(const Field& f, const Vec& a, const Vec& b);
Vec vec_scale(const Field& f, const Vec& a, const Scalar& c);
Vec vec_mul(const Field& f, const Polynomial& p, const Vec& v);
Vec vec_from_poly(const Polynomial& p, std::uint32_t comp);
Polynomial vec_component(const RingPtr& ring, const Vec& v, std::uint32_t comp);
// Degree of a homogeneous vector; throws on mixed degrees, nullopt for zero.
std::optional<int> vec_degree(const Vec& v, const Twists& tw);
bool vec_equal(const Vec& a, const Vec& b);

enum class Position { TermOverPosition, PositionOverTerm };

struct ModuleOrder {
  MonomialOrder mono;
  Position pos = Position::TermOverPosition;
  // Lower component index is larger.
  int compare(const VTerm& a, const VTerm& b) const;
};

class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(RingPtr ring, Twists target, Twists source, std::vector<Vec> cols);
  static GradedMatrix from_rows(RingPtr ring, Twists target, Twists source,
                                const std::vector<std::vector<Polynomial>>& rows);
  static GradedMatrix identity(RingPtr ring, const Twists& tw);

  const RingPtr& ring() const { return ring_; }
  const Twists& target() const { return target_; }
  const Twists& source() const { return source_; }
  int nrows() const { return static_cast<int>(target_.size()); }
  int ncols() const { return static_cast<int>(source_.size()); }
  const Vec& column(int j) const { return cols_[static_cast<std::size_t>(j)]; }
  const std::vector<Vec>& columns() const { return cols_; }
  Polynomial entry(int i, int j) const;

  // this * right (right's target must equal this source).
  GradedMatrix compose(const GradedMatrix& right) const;
  bool is_zero() const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  Twists target_;
  Twists source_;
  std::vector<Vec> cols_;
};

// Cokernel of `rel`; the generators are rel.target().
class ModulePresentation {
 public:
  ModulePresentation() = default;
  explicit ModulePresentation(GradedMatrix rel) : rel_(std::move(rel)) {}

  static ModulePresentation free(RingPtr ring, Twists tw);
  static ModulePresentation quotient(RingPtr ring, const std::vector<Polynomial>& ideal);
  static ModulePresentation from_relations(RingPtr ring, Twists gens, std::vector<Vec> rels);

  const RingPtr& ring() const { return rel_.ring(); }
  const Twists& gens() const { return rel_.target(); }
  const GradedMatrix& relations() const { return rel_; }
  // M(k): generators move from degree a to a - k.
  ModulePresentation twist(int k) const;

 private:
  GradedMatrix rel_;
};

struct GroebnerBasis {
  RingPtr ring;
  Twists twists;
  ModuleOrder order;
  std::vector<Vec> elements;  // monic, reduced, each sorted descending in `order`

  Vec normal_form(const Vec& v) const;  // canonical-sorted remainder
  bool reduces_to_zero(const Vec& v) const { return normal_form(v).empty(); }
  // Buchberger criterion: every S-vector reduces to zero.
  bool satisfies_buchberger() const;
  bool same_as(const GroebnerBasis& o) const;
  std::vector<std::pair<Monomial, std::uint32_t>> leading_terms() const;
  std::string to_string() const;
};

struct GbStats {
  long pairs_considered = 0;
  long pairs_reduced = 0;
  long zero_reductions = 0;
};

GroebnerBasis groebner_basis(const RingPtr& ring, const Twists& tw, std::vector<Vec> gens,
                             const ModuleOrder& order = {}, GbStats* stats = nullptr);
GroebnerBasis ideal_groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order = {});

// A minimal homogeneous generating subset of the submodule generated by gens.
std::vector<Vec> minimal_generators(const RingPtr& ring, const Twists& tw, std::vector<Vec> gens);

// Minimal generators of { f in source(A) : A f in span(U) }.
std::vector<Vec> preimage(const GradedMatrix& A, const std::vector<Vec>& U);
// Kernel of A as a matrix whose columns minimally generate ker A.
GradedMatrix kernel_matrix(const GradedMatrix& A);
// Columns generate the syzygies of the basis elements.
GradedMatrix syzygy_module(const GroebnerBasis& gb);

// Minimal presentation: prunes unit entries, then keeps minimal relations.
ModulePresentation minimal_presentation(const ModulePresentation& M);
// (span(Z) + span(B)) / span(B) inside the free module with twists tw.
ModulePresentation subquotient(const RingPtr& ring, const Twists& tw, const std::vector<Vec>& Z,
                               const std::vector<Vec>& B);
ModulePresentation truncate(const ModulePresentation& M, int e);
ModulePresentation tensor_presentation(const ModulePresentation& M, const ModulePresentation& N);
ModulePresentation direct_sum(const std::vector<ModulePresentation>& parts);
ModulePresentation restrict_to_hyperplane(const ModulePresentation& M, const Polynomial& l);
// Transports a module annihilated by the dropped variables to the subring on `keep`.
ModulePresentation restrict_to_subring(const ModulePresentation& M, const RingPtr& sub,
                                       const std::vector<int>& keep);

using Ideal = std::vector<Polynomial>;

Ideal ideal_intersection(const RingPtr& ring, const std::vector<Ideal>& ideals);
Ideal colon(const Ideal& I, const Ideal& J);
Ideal saturate(const Ideal& I, const Ideal& J);
Ideal annihilator(const ModulePresentation& M);
// Submodule-level saturation: M / H^0_J(M).
ModulePresentation saturate(const ModulePresentation& M, const Ideal& J);
Ideal reduced_gens(const Ideal& I);  // reduced grevlex GB as polynomials
Ideal irrelevant_ideal(const RingPtr& ring);

// Graded pieces of coker(R): bases of standard monomials and memoized normal
// forms of terms, expressed in those bases.
class GradedPieces {
 public:
  explicit GradedPieces(const ModulePresentation& M);

  const RingPtr& ring() const { return ring_; }
  const Twists& twists() const { return tw_; }
  const GroebnerBasis& basis() const { return gb_; }
  int dim(int d);
  const std::vector<std::pair<Monomial, std::uint32_t>>& standard(int d);
  // Coordinates of the term m*e_comp in the basis of its degree.
  const SparseVec& nf_term(const Monomial& m, std::uint32_t comp);
  SparseVec coords(const Vec& v);

 private:
  struct Key {
    Monomial m;
    std::uint32_t comp;
    bool operator==(const Key& o) const { return comp == o.comp && m == o.m; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return MonomialHash{}(k.m) * 31 + k.comp; }
  };
  struct Piece {
    std::vector<std::pair<Monomial, std::uint32_t>> basis;
    std::unordered_map<Key, int, KeyHash> index;
  };
  Piece& piece(int d);
  int reducer(const Monomial& m, std::uint32_t comp) const;

  RingPtr ring_;
  Twists tw_;
  GroebnerBasis gb_;
  std::vector<std::vector<int>> by_comp_;
  std::unordered_map<int, Piece> pieces_;
  std::unordered_map<Key, SparseVec, KeyHash> memo_;
};

}  // namespace sheafkit
