#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "sheafkit/poly.hpp"

namespace sheafkit {

// Sparse vector: (index, value) pairs sorted by index, no zero values.
struct SparseVec {
  std::vector<std::pair<int, Scalar>> e;
  bool empty() const { return e.empty(); }
};

// v + a*w
SparseVec sparse_axpy(const Field& f, const SparseVec& v, const Scalar& a, const SparseVec& w);
// Accumulates a*w into a dense-keyed map (used while assembling matrices).
void sparse_accumulate(const Field& f, std::unordered_map<int, Scalar>& acc, const Scalar& a, const SparseVec& w);
SparseVec sparse_from_map(std::unordered_map<int, Scalar>& acc);

// Incremental row echelon form. Each stored row has leading coefficient 1.
class Echelon {
 public:
  explicit Echelon(const Field& f) : f_(f) {}

  // Top-reduces v; stores it if nonzero. Returns true iff the rank grew.
  bool insert(SparseVec v);
  bool in_span(SparseVec v) const;
  int rank() const { return static_cast<int>(pivots_.size()); }
  // Fully reduced rows keyed by pivot column (computed on demand).
  std::vector<std::pair<int, SparseVec>> reduced_rows() const;

 private:
  SparseVec top_reduce(SparseVec v) const;

  Field f_;
  std::unordered_map<int, SparseVec> pivots_;
};

int sparse_rank(const Field& f, std::vector<SparseVec> rows);

// Basis of {v in k^ncols : <row, v> = 0 for every row}.
std::vector<SparseVec> nullspace(const Field& f, const std::vector<SparseVec>& rows, int ncols);

}  // namespace sheafkit
