#include "sheafkit/homology.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace sheafkit {

int BettiTable::get(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second;
}

int BettiTable::regularity() const {
  int r = INT_MIN;
  for (const auto& [ij, b] : entries)
    if (b) r = std::max(r, ij.second - ij.first);
  return r == INT_MIN ? 0 : r;
}

int BettiTable::length() const {
  int l = 0;
  for (const auto& [ij, b] : entries)
    if (b) l = std::max(l, ij.first);
  return l;
}

std::string BettiTable::to_string() const {
  std::ostringstream os;
  int cur = -1;
  for (const auto& [ij, b] : entries) {
    if (!b) continue;
    if (ij.first != cur) {
      if (cur >= 0) os << "\n";
      cur = ij.first;
      os << "F" << cur << ":";
    }
    os << " " << b << "*S(" << -ij.second << ")";
  }
  return os.str();
}

BettiTable FreeResolution::betti() const {
  BettiTable b;
  for (std::size_t i = 0; i < modules.size(); ++i)
    for (int a : modules[i]) b.entries[{static_cast<int>(i), a}]++;
  return b;
}

bool FreeResolution::is_complex() const {
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!maps[i].compose(maps[i + 1]).is_zero()) return false;
  return true;
}

bool FreeResolution::has_unit_entries() const {
  for (const auto& A : maps)
    for (const auto& col : A.columns())
      for (const auto& t : col)
        if (t.m.deg == 0) return true;
  return false;
}

FreeResolution free_resolution(const ModulePresentation& M, int max_length) {
  ModulePresentation mp = minimal_presentation(M);
  FreeResolution R;
  R.ring = mp.ring();
  R.minimal = true;
  R.modules.push_back(mp.gens());
  if (max_length <= 0 || mp.relations().ncols() == 0) return R;
  R.maps.push_back(mp.relations());
  R.modules.push_back(mp.relations().source());
  while (R.length() < max_length) {
    GradedMatrix K = kernel_matrix(R.maps.back());
    if (K.ncols() == 0) break;
    R.modules.push_back(K.source());
    R.maps.push_back(std::move(K));
  }
  return R;
}

namespace {

// Drops component `row` from every vector, renumbering later components.
Vec drop_row(const Vec& v, std::uint32_t row) {
  Vec w;
  for (const auto& t : v)
    if (t.comp != row) w.push_back({t.m, t.comp > row ? t.comp - 1 : t.comp, t.c});
  return w;
}

}  // namespace

FreeResolution minimize(const FreeResolution& R) {
  FreeResolution out = R;
  const Field& f = R.ring->field();
  while (true) {
    bool found = false;
    for (std::size_t i = 0; i < out.maps.size() && !found; ++i) {
      const GradedMatrix& d = out.maps[i];  // F_{i+1} -> F_i
      for (int c = 0; c < d.ncols() && !found; ++c)
        for (const auto& t : d.column(c)) {
          if (t.m.deg != 0) continue;
          found = true;
          const std::uint32_t r = t.comp;
          const Scalar u = t.c;
          const Vec pivot = d.column(c);
          // New d_{i+1}: cancel the (r, c) unit.
          std::vector<Vec> cols;
          Twists src;
          for (int k = 0; k < d.ncols(); ++k) {
            if (k == c) continue;
            Polynomial e = vec_component(R.ring, d.column(k), r);
            Vec v = d.column(k);
            if (!e.is_zero()) v = vec_add(f, v, vec_mul(f, e.scale(f.neg(f.inv(u))), pivot));
            cols.push_back(drop_row(v, r));
            src.push_back(d.source()[static_cast<std::size_t>(k)]);
          }
          Twists tgt = d.target();
          tgt.erase(tgt.begin() + r);
          out.maps[i] = GradedMatrix(R.ring, tgt, src, cols);
          out.modules[i] = tgt;
          out.modules[i + 1] = src;
          // Next map F_{i+2} -> F_{i+1}: drop row c.
          if (i + 1 < out.maps.size()) {
            const GradedMatrix& n = out.maps[i + 1];
            std::vector<Vec> nc;
            for (const auto& v : n.columns()) nc.push_back(drop_row(v, static_cast<std::uint32_t>(c)));
            out.maps[i + 1] = GradedMatrix(R.ring, src, n.source(), nc);
          }
          // Previous map F_i -> F_{i-1}: drop column r.
          if (i > 0) {
            const GradedMatrix& p = out.maps[i - 1];
            std::vector<Vec> pc = p.columns();
            pc.erase(pc.begin() + r);
            out.maps[i - 1] = GradedMatrix(R.ring, p.target(), tgt, pc);
          }
          break;
        }
    }
    if (!found) break;
  }
  // Trailing zero modules are dropped so the length is meaningful.
  while (!out.maps.empty() && out.maps.back().ncols() == 0) {
    out.maps.pop_back();
    out.modules.pop_back();
  }
  out.minimal = true;
  return out;
}

int regularity(const BettiTable& b) { return b.regularity(); }

int regularity(const ModulePresentation& M) { return free_resolution(M).betti().regularity(); }

// ---------------------------------------------------------------- Hilbert polynomials

namespace {

// Coefficients of binomial(m + k, r) as a polynomial in m.
std::vector<Scalar> binomial_poly(int k, int r) {
  std::vector<Scalar> p{Scalar(1)};
  for (int t = 0; t < r; ++t) {
    // multiply by (m + k - t)
    std::vector<Scalar> q(p.size() + 1, Scalar(0));
    for (std::size_t a = 0; a < p.size(); ++a) {
      q[a + 1] += p[a];
      q[a] += p[a] * (k - t);
    }
    p = std::move(q);
  }
  mpz_class fact = 1;
  for (int t = 2; t <= r; ++t) fact *= t;
  for (auto& c : p) c /= Scalar(fact);
  return p;
}

void trim(std::vector<Scalar>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

HilbertPolynomial HilbertPolynomial::from_betti(const BettiTable& b, int nvars) {
  HilbertPolynomial h;
  h.coeffs.assign(static_cast<std::size_t>(nvars), Scalar(0));
  for (const auto& [ij, beta] : b.entries) {
    if (!beta) continue;
    auto p = binomial_poly(nvars - 1 - ij.second, nvars - 1);
    int sign = ij.first % 2 ? -1 : 1;
    for (std::size_t k = 0; k < p.size(); ++k) h.coeffs[k] += p[k] * (sign * beta);
  }
  trim(h.coeffs);
  return h;
}

HilbertPolynomial HilbertPolynomial::linear(long a, long b) {
  HilbertPolynomial h;
  h.coeffs = {Scalar(b), Scalar(a)};
  trim(h.coeffs);
  return h;
}

Scalar HilbertPolynomial::operator()(long m) const {
  Scalar v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * m + coeffs[k];
  return v;
}

int HilbertPolynomial::degree() const { return static_cast<int>(coeffs.size()) - 1; }

std::string HilbertPolynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::string s;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Scalar& c = coeffs[k];
    if (c == 0) continue;
    bool neg = c < 0;
    Scalar a = neg ? Scalar(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? "-" : "+";
    if (k == 0) {
      s += format_scalar(a);
      continue;
    }
    if (a != 1) s += format_scalar(a) + "*";
    s += "m";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

bool HilbertPolynomial::operator==(const HilbertPolynomial& o) const {
  auto a = coeffs, b = o.coeffs;
  trim(a);
  trim(b);
  return a == b;
}

int hilbert_function(const ModulePresentation& M, int d) {
  GradedPieces P(M);
  return P.dim(d);
}

std::vector<int> hilbert_function(const ModulePresentation& M, int lo, int hi) {
  GradedPieces P(M);
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(P.dim(d));
  return out;
}

HilbertPolynomial hilbert_polynomial(const ModulePresentation& M) {
  return HilbertPolynomial::from_betti(free_resolution(M).betti(), M.ring()->nvars());
}

// ---------------------------------------------------------------- Ext and Tor

GradedMatrix transpose(const GradedMatrix& A) {
  Twists tgt, src;
  for (int a : A.source()) tgt.push_back(-a);
  for (int a : A.target()) src.push_back(-a);
  std::vector<Vec> cols(src.size());
  for (int k = 0; k < A.ncols(); ++k)
    for (const auto& t : A.column(k)) cols[t.comp].push_back({t.m, static_cast<std::uint32_t>(k), t.c});
  return GradedMatrix(A.ring(), tgt, src, std::move(cols));
}

GradedMatrix kronecker(const GradedMatrix& A, const Twists& G) {
  const auto g = static_cast<std::uint32_t>(G.size());
  Twists tgt, src;
  for (int a : A.target())
    for (int b : G) tgt.push_back(a + b);
  std::vector<Vec> cols;
  for (int j = 0; j < A.ncols(); ++j)
    for (std::uint32_t c = 0; c < g; ++c) {
      src.push_back(A.source()[static_cast<std::size_t>(j)] + G[c]);
      Vec v;
      for (const auto& t : A.column(j)) v.push_back({t.m, t.comp * g + c, t.c});
      cols.push_back(std::move(v));
    }
  return GradedMatrix(A.ring(), std::move(tgt), std::move(src), std::move(cols));
}

int block_dim(const Twists& t, GradedPieces& N, int d) {
  int s = 0;
  for (int a : t) s += N.dim(d - a);
  return s;
}

std::vector<SparseVec> map_rows(const GradedMatrix& A, GradedPieces& N, int d) {
  const Field& f = A.ring()->field();
  std::vector<int> off;
  int acc = 0;
  for (int a : A.target()) {
    off.push_back(acc);
    acc += N.dim(d - a);
  }
  std::vector<SparseVec> rows;
  std::unordered_map<int, Scalar> buf;
  for (int j = 0; j < A.ncols(); ++j) {
    const Vec& col = A.column(j);
    int e = d - A.source()[static_cast<std::size_t>(j)];
    if (col.empty()) {
      rows.resize(rows.size() + static_cast<std::size_t>(N.dim(e)));
      continue;
    }
    for (const auto& [mb, cb] : N.standard(e)) {
      for (const auto& t : col) {
        const SparseVec& img = N.nf_term(t.m * mb, cb);
        int o = off[t.comp];
        for (const auto& [idx, val] : img.e) {
          auto it = buf.find(o + idx);
          Scalar s = f.mul(t.c, val);
          if (it == buf.end())
            buf.emplace(o + idx, std::move(s));
          else
            it->second = f.add(it->second, s);
        }
      }
      rows.push_back(sparse_from_map(buf));
    }
  }
  return rows;
}

int map_rank(const GradedMatrix& A, GradedPieces& N, int d) {
  return sparse_rank(A.ring()->field(), map_rows(A, N, d));
}

int ext_dim(const FreeResolution& F, GradedPieces& N, int i, int d) {
  if (i < 0) throw Error(ErrorKind::Argument, "negative Ext index");
  if (i >= static_cast<int>(F.modules.size())) return 0;
  Twists dual;
  for (int a : F.modules[static_cast<std::size_t>(i)]) dual.push_back(-a);
  int dim = block_dim(dual, N, d);
  if (i < F.length()) dim -= map_rank(transpose(F.maps[static_cast<std::size_t>(i)]), N, d);
  if (i >= 1) dim -= map_rank(transpose(F.maps[static_cast<std::size_t>(i - 1)]), N, d);
  return dim;
}

int tor_dim(const FreeResolution& F, GradedPieces& N, int i, int d) {
  if (i < 0) throw Error(ErrorKind::Argument, "negative Tor index");
  if (i >= static_cast<int>(F.modules.size())) return 0;
  int dim = block_dim(F.modules[static_cast<std::size_t>(i)], N, d);
  if (i >= 1) dim -= map_rank(F.maps[static_cast<std::size_t>(i - 1)], N, d);
  if (i < F.length()) dim -= map_rank(F.maps[static_cast<std::size_t>(i)], N, d);
  return dim;
}

namespace {

void check_index(int i, int n) {
  if (i < 0 || i > n) throw Error(ErrorKind::Argument, "homological index " + std::to_string(i) + " out of range 0.." + std::to_string(n));
}

}  // namespace

std::vector<int> ext_dims(const ModulePresentation& M, const ModulePresentation& N, int i, int lo, int hi) {
  check_index(i, M.ring()->nvars());
  FreeResolution F = free_resolution(M, i + 1);
  GradedPieces P(N);
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(ext_dim(F, P, i, d));
  return out;
}

std::vector<int> tor_dims(const ModulePresentation& M, const ModulePresentation& N, int i, int lo, int hi) {
  check_index(i, M.ring()->nvars());
  FreeResolution F = free_resolution(M, i + 1);
  GradedPieces P(N);
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(tor_dim(F, P, i, d));
  return out;
}

namespace {

// Homology of  prev (x) N  ->  C (x) N  ->  next (x) N  at the middle, where
// `next` : C -> D and `prev` : B -> C are maps of free modules (either may be absent).
ModulePresentation homology_with(const RingPtr& ring, const Twists& C, const GradedMatrix* next,
                                 const GradedMatrix* prev, const ModulePresentation& N) {
  const Twists& G = N.gens();
  const auto g = static_cast<std::uint32_t>(G.size());
  const Field& f = ring->field();
  Twists CG;
  for (int a : C)
    for (int b : G) CG.push_back(a + b);
  auto spread = [&](std::size_t blocks) {
    std::vector<Vec> U;
    for (std::uint32_t k = 0; k < blocks; ++k)
      for (const auto& u : N.relations().columns()) {
        Vec v;
        for (const auto& t : u) v.push_back({t.m, k * g + t.comp, t.c});
        U.push_back(std::move(v));
      }
    return U;
  };
  std::vector<Vec> Z;
  if (next) {
    GradedMatrix A = kronecker(*next, G);
    Z = preimage(A, spread(next->target().size()));
  } else {
    for (std::uint32_t k = 0; k < CG.size(); ++k) Z.push_back({{Monomial::one(), k, f.from_int(1)}});
  }
  std::vector<Vec> B = spread(C.size());
  if (prev) {
    GradedMatrix P = kronecker(*prev, G);
    for (const auto& c : P.columns()) B.push_back(c);
  }
  return subquotient(ring, CG, Z, B);
}

}  // namespace

ModulePresentation ext_module(const ModulePresentation& M, const ModulePresentation& N, int i) {
  check_index(i, M.ring()->nvars());
  FreeResolution F = free_resolution(M, i + 1);
  if (i >= static_cast<int>(F.modules.size())) return ModulePresentation::free(M.ring(), {});
  Twists C;
  for (int a : F.modules[static_cast<std::size_t>(i)]) C.push_back(-a);
  std::optional<GradedMatrix> next, prev;
  if (i < F.length()) next = transpose(F.maps[static_cast<std::size_t>(i)]);
  if (i >= 1) prev = transpose(F.maps[static_cast<std::size_t>(i - 1)]);
  return homology_with(M.ring(), C, next ? &*next : nullptr, prev ? &*prev : nullptr, N);
}

ModulePresentation tor_module(const ModulePresentation& M, const ModulePresentation& N, int i) {
  check_index(i, M.ring()->nvars());
  FreeResolution F = free_resolution(M, i + 1);
  if (i >= static_cast<int>(F.modules.size())) return ModulePresentation::free(M.ring(), {});
  const GradedMatrix* next = i >= 1 ? &F.maps[static_cast<std::size_t>(i - 1)] : nullptr;
  const GradedMatrix* prev = i < F.length() ? &F.maps[static_cast<std::size_t>(i)] : nullptr;
  return homology_with(M.ring(), F.modules[static_cast<std::size_t>(i)], next, prev, N);
}

// ---------------------------------------------------------------- complexes

bool ComplexReport::exact_at(int k) const {
  const auto& h = homology.at(static_cast<std::size_t>(k));
  return std::all_of(h.begin(), h.end(), [](int v) { return v == 0; });
}

ComplexReport verify_complex(const std::vector<GradedMatrix>& maps, int lo, int hi) {
  if (maps.empty()) throw Error(ErrorKind::Argument, "empty chain");
  const RingPtr& ring = maps.front().ring();
  for (std::size_t k = 0; k + 1 < maps.size(); ++k)
    if (maps[k].target() != maps[k + 1].source())
      throw Error(ErrorKind::Degree, "maps " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                                         " are not composable");
  ComplexReport rep;
  rep.lo = lo;
  rep.hi = hi;
  for (std::size_t k = 0; k + 1 < maps.size(); ++k)
    if (!maps[k + 1].compose(maps[k]).is_zero()) rep.compositions_zero = false;
  GradedPieces S(ModulePresentation::free(ring, {0}));
  const std::size_t L = maps.size();
  rep.homology.assign(L + 1, {});
  for (int d = lo; d <= hi; ++d) {
    std::vector<int> rk;
    for (const auto& A : maps) rk.push_back(map_rank(A, S, d));
    for (std::size_t k = 0; k <= L; ++k) {
      const Twists& C = k < L ? maps[k].source() : maps[L - 1].target();
      int h = block_dim(C, S, d);
      if (k < L) h -= rk[k];
      if (k > 0) h -= rk[k - 1];
      rep.homology[k].push_back(h);
    }
  }
  return rep;
}

}  // namespace sheafkit
