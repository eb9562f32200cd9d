#include "sheafkit/linalg.hpp"

#include <algorithm>

namespace sheafkit {

SparseVec sparse_axpy(const Field& f, const SparseVec& v, const Scalar& a, const SparseVec& w) {
  SparseVec r;
  r.e.reserve(v.e.size() + w.e.size());
  std::size_t i = 0, j = 0;
  while (i < v.e.size() || j < w.e.size()) {
    if (j == w.e.size() || (i < v.e.size() && v.e[i].first < w.e[j].first)) {
      r.e.push_back(v.e[i++]);
    } else if (i == v.e.size() || w.e[j].first < v.e[i].first) {
      Scalar s = f.mul(a, w.e[j].second);
      if (s != 0) r.e.emplace_back(w.e[j].first, std::move(s));
      ++j;
    } else {
      Scalar s = f.add(v.e[i].second, f.mul(a, w.e[j].second));
      if (s != 0) r.e.emplace_back(v.e[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return r;
}

void sparse_accumulate(const Field& f, std::unordered_map<int, Scalar>& acc, const Scalar& a, const SparseVec& w) {
  for (const auto& [idx, val] : w.e) {
    auto it = acc.find(idx);
    Scalar s = f.mul(a, val);
    if (it == acc.end())
      acc.emplace(idx, std::move(s));
    else
      it->second = f.add(it->second, s);
  }
}

SparseVec sparse_from_map(std::unordered_map<int, Scalar>& acc) {
  SparseVec v;
  v.e.reserve(acc.size());
  for (auto& [idx, val] : acc)
    if (val != 0) v.e.emplace_back(idx, std::move(val));
  std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  acc.clear();
  return v;
}

SparseVec Echelon::top_reduce(SparseVec v) const {
  while (!v.e.empty()) {
    auto it = pivots_.find(v.e.front().first);
    if (it == pivots_.end()) break;
    Scalar a = f_.neg(v.e.front().second);
    v = sparse_axpy(f_, v, a, it->second);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = top_reduce(std::move(v));
  if (v.e.empty()) return false;
  Scalar inv = f_.inv(v.e.front().second);
  for (auto& [idx, val] : v.e) val = f_.mul(val, inv);
  int col = v.e.front().first;
  pivots_.emplace(col, std::move(v));
  return true;
}

bool Echelon::in_span(SparseVec v) const { return top_reduce(std::move(v)).e.empty(); }

std::vector<std::pair<int, SparseVec>> Echelon::reduced_rows() const {
  std::vector<std::pair<int, SparseVec>> rows(pivots_.begin(), pivots_.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::unordered_map<int, std::size_t> where;
  for (std::size_t k = 0; k < rows.size(); ++k) where[rows[k].first] = k;
  // Rows are processed from the largest pivot down, so every row used for
  // elimination is already fully reduced.
  for (std::size_t k = 0; k < rows.size(); ++k) {
    SparseVec& v = rows[k].second;
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (std::size_t t = 1; t < v.e.size(); ++t) {
      auto it = where.find(v.e[t].first);
      if (it != where.end() && it->second < k) hits.emplace_back(it->second, v.e[t].second);
    }
    // Reduced rows vanish on every other pivot column, so the coefficients stay valid.
    for (const auto& [row, coeff] : hits) v = sparse_axpy(f_, v, f_.neg(coeff), rows[row].second);
  }
  return rows;
}

int sparse_rank(const Field& f, std::vector<SparseVec> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) {
    if (a.e.empty() || b.e.empty()) return b.e.empty() && !a.e.empty();
    if (a.e.size() != b.e.size()) return a.e.size() < b.e.size();
    return a.e.front().first < b.e.front().first;
  });
  Echelon ech(f);
  for (auto& r : rows)
    if (!r.e.empty()) ech.insert(std::move(r));
  return ech.rank();
}

std::vector<SparseVec> nullspace(const Field& f, const std::vector<SparseVec>& rows, int ncols) {
  Echelon ech(f);
  for (const auto& r : rows) ech.insert(r);
  auto red = ech.reduced_rows();
  std::vector<char> is_pivot(static_cast<std::size_t>(ncols), 0);
  for (const auto& [col, v] : red) is_pivot[static_cast<std::size_t>(col)] = 1;
  // column -> list of (pivot col, coefficient) for entries of reduced rows
  std::unordered_map<int, std::vector<std::pair<int, Scalar>>> by_col;
  for (const auto& [pc, v] : red)
    for (std::size_t t = 1; t < v.e.size(); ++t) by_col[v.e[t].first].emplace_back(pc, v.e[t].second);
  std::vector<SparseVec> out;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    SparseVec v;
    v.e.emplace_back(c, f.from_int(1));
    auto it = by_col.find(c);
    if (it != by_col.end())
      for (const auto& [pc, val] : it->second) v.e.emplace_back(pc, f.neg(val));
    std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace sheafkit
