#include "sheafkit/groebner.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace sheafkit {

// ---------------------------------------------------------------- vectors

int canonical_compare(const VTerm& a, const VTerm& b) {
  int c = MonomialOrder{}.compare(a.m, b.m);
  if (c) return c;
  if (a.comp == b.comp) return 0;
  return a.comp < b.comp ? 1 : -1;
}

namespace {

void sort_and_merge(const Field& f, Vec& v, const std::function<int(const VTerm&, const VTerm&)>& cmp) {
  std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return cmp(a, b) > 0; });
  Vec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
      out.back().c = f.add(out.back().c, t.c);
      if (out.back().c == 0) out.pop_back();
    } else if (t.c != 0) {
      out.push_back(std::move(t));
    }
  }
  v = std::move(out);
}

}  // namespace

void canonicalize(const Field& f, Vec& v) { sort_and_merge(f, v, canonical_compare); }

Vec vec_add(const Field& f, const Vec& a, const Vec& b) {
  Vec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : canonical_compare(a[i], b[j]);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      Scalar s = f.add(a[i].c, b[j].c);
      if (s != 0) r.push_back({a[i].m, a[i].comp, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Vec vec_scale(const Field& f, const Vec& a, const Scalar& c) {
  Vec r;
  if (c == 0) return r;
  r.reserve(a.size());
  for (const auto& t : a) r.push_back({t.m, t.comp, f.mul(t.c, c)});
  return r;
}

Vec vec_mul(const Field& f, const Polynomial& p, const Vec& v) {
  Vec r;
  r.reserve(p.terms().size() * v.size());
  for (const auto& pt : p.terms())
    for (const auto& t : v) r.push_back({pt.m * t.m, t.comp, f.mul(pt.c, t.c)});
  canonicalize(f, r);
  return r;
}

Vec vec_from_poly(const Polynomial& p, std::uint32_t comp) {
  Vec r;
  r.reserve(p.terms().size());
  for (const auto& t : p.terms()) r.push_back({t.m, comp, t.c});
  return r;
}

Polynomial vec_component(const RingPtr& ring, const Vec& v, std::uint32_t comp) {
  std::vector<PTerm> terms;
  for (const auto& t : v)
    if (t.comp == comp) terms.push_back({t.m, t.c});
  return Polynomial::from_terms(ring, std::move(terms));
}

std::optional<int> vec_degree(const Vec& v, const Twists& tw) {
  if (v.empty()) return std::nullopt;
  auto deg_of = [&](const VTerm& t) {
    if (t.comp >= tw.size()) throw Error(ErrorKind::Argument, "vector component out of range");
    return t.m.deg + tw[t.comp];
  };
  int d = deg_of(v.front());
  for (const auto& t : v)
    if (deg_of(t) != d) throw Error(ErrorKind::Degree, "vector is not homogeneous");
  return d;
}

bool vec_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].comp != b[i].comp || a[i].m != b[i].m || a[i].c != b[i].c) return false;
  return true;
}

int ModuleOrder::compare(const VTerm& a, const VTerm& b) const {
  if (pos == Position::PositionOverTerm && a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  int c = mono.compare(a.m, b.m);
  if (c) return c;
  if (a.comp == b.comp) return 0;
  return a.comp < b.comp ? 1 : -1;
}

namespace {

std::string format_vec(const RingPtr& ring, const Vec& v, std::size_t rank) {
  if (rank == 1) return vec_component(ring, v, 0).to_string();
  std::string s = "[";
  for (std::size_t i = 0; i < rank; ++i) {
    if (i) s += ", ";
    s += vec_component(ring, v, static_cast<std::uint32_t>(i)).to_string();
  }
  return s + "]";
}

}  // namespace

// ---------------------------------------------------------------- matrices

GradedMatrix::GradedMatrix(RingPtr ring, Twists target, Twists source, std::vector<Vec> cols)
    : ring_(std::move(ring)), target_(std::move(target)), source_(std::move(source)), cols_(std::move(cols)) {
  if (cols_.size() != source_.size()) throw Error(ErrorKind::Argument, "column count does not match source rank");
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    canonicalize(ring_->field(), cols_[j]);
    auto d = vec_degree(cols_[j], target_);
    if (d && *d != source_[j])
      throw Error(ErrorKind::Degree, "column " + std::to_string(j + 1) + " has degree " + std::to_string(*d) +
                                         " but its source twist is " + std::to_string(source_[j]));
  }
}

GradedMatrix GradedMatrix::from_rows(RingPtr ring, Twists target, Twists source,
                                     const std::vector<std::vector<Polynomial>>& rows) {
  if (rows.size() != target.size()) throw Error(ErrorKind::Argument, "row count does not match target rank");
  std::vector<Vec> cols(source.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != source.size()) throw Error(ErrorKind::Argument, "ragged matrix rows");
    for (std::size_t j = 0; j < source.size(); ++j) {
      const Polynomial& p = rows[i][j];
      if (p.is_zero()) continue;
      auto d = p.homogeneous_degree();
      if (!d || *d != source[j] - target[i])
        throw Error(ErrorKind::Degree, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") must be homogeneous of degree " +
                                           std::to_string(source[j] - target[i]));
      for (const auto& t : p.terms()) cols[j].push_back({t.m, static_cast<std::uint32_t>(i), t.c});
    }
  }
  return GradedMatrix(std::move(ring), std::move(target), std::move(source), std::move(cols));
}

GradedMatrix GradedMatrix::identity(RingPtr ring, const Twists& tw) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < tw.size(); ++i)
    cols.push_back({{Monomial::one(), static_cast<std::uint32_t>(i), ring->field().from_int(1)}});
  return GradedMatrix(ring, tw, tw, std::move(cols));
}

Polynomial GradedMatrix::entry(int i, int j) const {
  return vec_component(ring_, cols_[static_cast<std::size_t>(j)], static_cast<std::uint32_t>(i));
}

GradedMatrix GradedMatrix::compose(const GradedMatrix& right) const {
  if (right.target_ != source_) throw Error(ErrorKind::Argument, "matrices are not composable");
  const Field& f = ring_->field();
  std::vector<Vec> cols;
  for (const auto& rc : right.cols_) {
    Vec acc;
    for (const auto& t : rc)
      for (const auto& u : cols_[t.comp]) acc.push_back({t.m * u.m, u.comp, f.mul(t.c, u.c)});
    canonicalize(f, acc);
    cols.push_back(std::move(acc));
  }
  return GradedMatrix(ring_, target_, right.source_, std::move(cols));
}

bool GradedMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Vec& v) { return v.empty(); });
}

std::string GradedMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < nrows(); ++i) {
    os << "[";
    for (int j = 0; j < ncols(); ++j) os << (j ? ", " : "") << entry(i, j).to_string();
    os << "]\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- presentations

ModulePresentation ModulePresentation::free(RingPtr ring, Twists tw) {
  return ModulePresentation(GradedMatrix(std::move(ring), std::move(tw), {}, {}));
}

ModulePresentation ModulePresentation::quotient(RingPtr ring, const std::vector<Polynomial>& ideal) {
  std::vector<Vec> cols;
  Twists src;
  for (const auto& g : ideal) {
    if (g.is_zero()) continue;
    auto d = g.homogeneous_degree();
    if (!d) throw Error(ErrorKind::Degree, "ideal generator is not homogeneous: " + g.to_string());
    src.push_back(*d);
    cols.push_back(vec_from_poly(g, 0));
  }
  return ModulePresentation(GradedMatrix(std::move(ring), {0}, std::move(src), std::move(cols)));
}

ModulePresentation ModulePresentation::from_relations(RingPtr ring, Twists gens, std::vector<Vec> rels) {
  Twists src;
  std::vector<Vec> cols;
  for (auto& r : rels) {
    canonicalize(ring->field(), r);
    auto d = vec_degree(r, gens);
    if (!d) continue;
    src.push_back(*d);
    cols.push_back(std::move(r));
  }
  return ModulePresentation(GradedMatrix(std::move(ring), std::move(gens), std::move(src), std::move(cols)));
}

ModulePresentation ModulePresentation::twist(int k) const {
  Twists g = gens(), s = rel_.source();
  for (auto& a : g) a -= k;
  for (auto& a : s) a -= k;
  return ModulePresentation(GradedMatrix(ring(), std::move(g), std::move(s), rel_.columns()));
}

// ---------------------------------------------------------------- reduction

namespace {

class Reducer {
 public:
  Reducer(const Field& f, const ModuleOrder& ord) : f_(f), ord_(ord) {}

  void add(const Vec* g) {
    std::size_t k = elems_.size();
    elems_.push_back(g);
    std::uint32_t c = (*g)[0].comp;
    if (by_comp_.size() <= c) by_comp_.resize(c + 1);
    by_comp_[c].push_back(k);
  }
  const Vec& elem(std::size_t k) const { return *elems_[k]; }
  std::size_t size() const { return elems_.size(); }

  long find(const VTerm& t, long skip) const {
    if (t.comp >= by_comp_.size()) return -1;
    for (std::size_t k : by_comp_[t.comp]) {
      if (static_cast<long>(k) == skip) continue;
      if ((*elems_[k])[0].m.divides(t.m)) return static_cast<long>(k);
    }
    return -1;
  }

  // f[from..] + a * q * g, all sorted descending in ord_.
  Vec axpy(const Vec& f, std::size_t from, const Scalar& a, const Monomial& q, const Vec& g) const {
    Vec r;
    r.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < f.size() || j < g.size()) {
      VTerm gt;
      if (j < g.size()) gt = VTerm{q * g[j].m, g[j].comp, Scalar()};
      int c = i == f.size() ? -1 : j == g.size() ? 1 : ord_.compare(f[i], gt);
      if (c > 0) {
        r.push_back(f[i++]);
      } else if (c < 0) {
        gt.c = f_.mul(a, g[j].c);
        if (gt.c != 0) r.push_back(std::move(gt));
        ++j;
      } else {
        Scalar s = f_.add(f[i].c, f_.mul(a, g[j].c));
        if (s != 0) r.push_back({f[i].m, f[i].comp, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // Top reduction (full = false) or complete reduction (full = true).
  Vec reduce(Vec f, bool full, long skip = -1) const {
    Vec out;
    std::size_t start = 0;
    while (start < f.size()) {
      long k = find(f[start], skip);
      if (k < 0) {
        if (!full) break;
        out.push_back(f[start]);
        ++start;
        continue;
      }
      const Vec& g = *elems_[static_cast<std::size_t>(k)];
      Monomial q = g[0].m.quotient_of(f[start].m);
      Scalar a = f_.neg(f_.div(f[start].c, g[0].c));
      f = axpy(f, start, a, q, g);
      start = 0;
    }
    if (!full) {
      if (start == 0) return f;
      return Vec(f.begin() + static_cast<long>(start), f.end());
    }
    return out;
  }

  void make_monic(Vec& v) const {
    if (v.empty() || v[0].c == 1) return;
    Scalar inv = f_.inv(v[0].c);
    for (auto& t : v) t.c = f_.mul(t.c, inv);
  }

  void sort_desc(Vec& v) const {
    sort_and_merge(f_, v, [this](const VTerm& a, const VTerm& b) { return ord_.compare(a, b); });
  }

 private:
  Field f_;
  ModuleOrder ord_;
  std::vector<const Vec*> elems_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

class Engine {
 public:
  Engine(const RingPtr& ring, const Twists& tw, const ModuleOrder& ord, GbStats* stats)
      : ring_(ring), f_(ring->field()), tw_(tw), ord_(ord), red_(f_, ord), stats_(stats) {
    product_ok_ = tw_.size() == 1;
  }

  // Returns one flag per input: true iff that input was needed as a generator.
  std::vector<char> run(std::vector<Vec> inputs) {
    struct In {
      Vec v;
      int deg;
      std::size_t idx;
    };
    std::vector<In> ins;
    std::vector<char> flags(inputs.size(), 0);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      auto d = vec_degree(inputs[i], tw_);
      if (!d) continue;
      red_.sort_desc(inputs[i]);
      if (inputs[i].empty()) continue;
      ins.push_back({std::move(inputs[i]), *d, i});
    }
    std::stable_sort(ins.begin(), ins.end(), [](const In& a, const In& b) { return a.deg < b.deg; });
    std::size_t next = 0;
    while (true) {
      int d = INT_MAX;
      for (const auto& p : pairs_) d = std::min(d, p.deg);
      if (next < ins.size()) d = std::min(d, ins[next].deg);
      if (d == INT_MAX) break;
      std::vector<Pair> now;
      std::vector<Pair> later;
      for (auto& p : pairs_) (p.deg == d ? now : later).push_back(std::move(p));
      pairs_ = std::move(later);
      std::sort(now.begin(), now.end(), [](const Pair& a, const Pair& b) { return a.serial < b.serial; });
      for (const auto& p : now) {
        if (stats_) ++stats_->pairs_reduced;
        Vec r = red_.reduce(spoly(p), true);
        if (r.empty()) {
          if (stats_) ++stats_->zero_reductions;
          continue;
        }
        add(std::move(r));
      }
      while (next < ins.size() && ins[next].deg == d) {
        Vec r = red_.reduce(std::move(ins[next].v), true);
        if (!r.empty()) {
          flags[ins[next].idx] = 1;
          add(std::move(r));
        }
        ++next;
      }
    }
    return flags;
  }

  std::vector<Vec> reduced() const {
    std::vector<Vec> out;
    out.reserve(G_.size());
    for (std::size_t k = 0; k < G_.size(); ++k) {
      Vec v = red_.reduce(*G_[k], true, static_cast<long>(k));
      red_.make_monic(v);
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [this](const Vec& a, const Vec& b) { return ord_.compare(a[0], b[0]) < 0; });
    return out;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t comp;
    int deg;
    long serial;
  };

  Vec spoly(const Pair& p) const {
    const Vec& a = *G_[p.i];
    const Vec& b = *G_[p.j];
    Monomial qa = a[0].m.quotient_of(p.lcm);
    Monomial qb = b[0].m.quotient_of(p.lcm);
    Vec sa = red_.axpy(Vec{}, 0, f_.from_int(1), qa, a);
    return red_.axpy(sa, 0, f_.neg(f_.div(sa[0].c, b[0].c)), qb, b);
  }

  void add(Vec h) {
    red_.make_monic(h);
    std::size_t k = G_.size();
    G_.push_back(std::make_unique<Vec>(std::move(h)));
    const Vec& g = *G_.back();
    red_.add(&g);
    const VTerm& lt = g[0];
    // Chain criterion on the existing pairs.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& p : pairs_) {
      if (p.comp == lt.comp && lt.m.divides(p.lcm) && (*G_[p.i])[0].m.lcm(lt.m) != p.lcm &&
          (*G_[p.j])[0].m.lcm(lt.m) != p.lcm) {
        if (stats_) ++stats_->pairs_considered;
        continue;
      }
      kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    // New pairs, filtered by the M and F criteria (and the product criterion for ideals).
    std::vector<Pair> cand;
    for (std::size_t i = 0; i < k; ++i) {
      const VTerm& li = (*G_[i])[0];
      if (li.comp != lt.comp) continue;
      Monomial l = li.m.lcm(lt.m);
      cand.push_back({i, k, l, lt.comp, l.deg + tw_[lt.comp], 0});
    }
    if (stats_) stats_->pairs_considered += static_cast<long>(cand.size());
    std::vector<char> dead(cand.size(), 0);
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (std::size_t b = 0; b < cand.size(); ++b)
        if (a != b && cand[b].lcm != cand[a].lcm && cand[b].lcm.divides(cand[a].lcm)) {
          dead[a] = 1;
          break;
        }
    std::vector<char> seen(cand.size(), 0);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (dead[a] || seen[a]) continue;
      bool coprime = false;
      for (std::size_t b = a; b < cand.size(); ++b) {
        if (dead[b] || cand[b].lcm != cand[a].lcm) continue;
        seen[b] = 1;
        if ((*G_[cand[b].i])[0].m.coprime(lt.m)) coprime = true;
      }
      if (product_ok_ && coprime) continue;
      cand[a].serial = serial_++;
      pairs_.push_back(cand[a]);
    }
  }

  RingPtr ring_;
  Field f_;
  Twists tw_;
  ModuleOrder ord_;
  Reducer red_;
  GbStats* stats_;
  bool product_ok_ = false;
  std::vector<std::unique_ptr<Vec>> G_;
  std::vector<Pair> pairs_;
  long serial_ = 0;
};

// Deterministic input order: by degree, then canonical term comparison.
void sort_inputs(std::vector<Vec>& gens, const Twists& tw) {
  std::stable_sort(gens.begin(), gens.end(), [&](const Vec& a, const Vec& b) {
    int da = vec_degree(a, tw).value_or(INT_MIN), db = vec_degree(b, tw).value_or(INT_MIN);
    if (da != db) return da < db;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = canonical_compare(a[i], b[i]);
      if (c) return c > 0;
      if (a[i].c != b[i].c) return a[i].c < b[i].c;
    }
    return a.size() < b.size();
  });
}

}  // namespace

GroebnerBasis groebner_basis(const RingPtr& ring, const Twists& tw, std::vector<Vec> gens, const ModuleOrder& order,
                             GbStats* stats) {
  for (auto& g : gens) {
    canonicalize(ring->field(), g);
    vec_degree(g, tw);
  }
  sort_inputs(gens, tw);
  Engine eng(ring, tw, order, stats);
  eng.run(std::move(gens));
  return GroebnerBasis{ring, tw, order, eng.reduced()};
}

GroebnerBasis ideal_groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (gens.empty()) throw Error(ErrorKind::Argument, "ideal_groebner_basis needs at least one generator");
  const RingPtr& ring = gens.front().ring();
  std::vector<Vec> vs;
  for (const auto& g : gens) {
    if (!g.is_zero() && !g.homogeneous_degree())
      throw Error(ErrorKind::Degree, "non-homogeneous generator: " + g.to_string());
    vs.push_back(vec_from_poly(g, 0));
  }
  return groebner_basis(ring, {0}, std::move(vs), ModuleOrder{order, Position::TermOverPosition});
}

Vec GroebnerBasis::normal_form(const Vec& v) const {
  const Field& f = ring->field();
  Reducer red(f, order);
  for (const auto& g : elements) red.add(&g);
  Vec w = v;
  red.sort_desc(w);
  Vec r = red.reduce(std::move(w), true);
  canonicalize(f, r);
  return r;
}

bool GroebnerBasis::satisfies_buchberger() const {
  const Field& f = ring->field();
  Reducer red(f, order);
  for (const auto& g : elements) red.add(&g);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      const Vec& a = elements[i];
      const Vec& b = elements[j];
      if (a[0].comp != b[0].comp) continue;
      Monomial l = a[0].m.lcm(b[0].m);
      Vec sa = red.axpy(Vec{}, 0, f.inv(a[0].c), a[0].m.quotient_of(l), a);
      Vec s = red.axpy(sa, 0, f.neg(f.div(sa[0].c, b[0].c)), b[0].m.quotient_of(l), b);
      if (!red.reduce(std::move(s), true).empty()) return false;
    }
  return true;
}

bool GroebnerBasis::same_as(const GroebnerBasis& o) const {
  if (elements.size() != o.elements.size() || twists != o.twists) return false;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (!vec_equal(elements[i], o.elements[i])) return false;
  return true;
}

std::vector<std::pair<Monomial, std::uint32_t>> GroebnerBasis::leading_terms() const {
  std::vector<std::pair<Monomial, std::uint32_t>> out;
  for (const auto& g : elements) out.emplace_back(g[0].m, g[0].comp);
  return out;
}

std::string GroebnerBasis::to_string() const {
  std::string s;
  for (const auto& g : elements) {
    Vec c = g;
    canonicalize(ring->field(), c);
    s += format_vec(ring, c, twists.size()) + "\n";
  }
  return s;
}

// ---------------------------------------------------------------- syzygies

std::vector<Vec> minimal_generators(const RingPtr& ring, const Twists& tw, std::vector<Vec> gens) {
  std::vector<Vec> nz;
  for (auto& g : gens) {
    canonicalize(ring->field(), g);
    if (!g.empty()) nz.push_back(std::move(g));
  }
  sort_inputs(nz, tw);
  Engine eng(ring, tw, ModuleOrder{}, nullptr);
  auto flags = eng.run(nz);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < nz.size(); ++i)
    if (flags[i]) out.push_back(nz[i]);
  return out;
}

std::vector<Vec> preimage(const GradedMatrix& A, const std::vector<Vec>& U) {
  const RingPtr& ring = A.ring();
  const Field& f = ring->field();
  const auto r = static_cast<std::uint32_t>(A.nrows());
  Twists tw = A.target();
  tw.insert(tw.end(), A.source().begin(), A.source().end());
  std::vector<Vec> gens;
  for (int j = 0; j < A.ncols(); ++j) {
    Vec v = A.column(j);
    v.push_back({Monomial::one(), r + static_cast<std::uint32_t>(j), f.from_int(1)});
    gens.push_back(std::move(v));
  }
  for (const auto& u : U)
    if (!u.empty()) gens.push_back(u);
  ModuleOrder pot{MonomialOrder::grevlex(), Position::PositionOverTerm};
  GroebnerBasis gb = groebner_basis(ring, tw, std::move(gens), pot);
  std::vector<Vec> ker;
  for (const auto& g : gb.elements) {
    if (g[0].comp < r) continue;
    Vec v;
    for (const auto& t : g) v.push_back({t.m, t.comp - r, t.c});
    canonicalize(f, v);
    ker.push_back(std::move(v));
  }
  return minimal_generators(ring, A.source(), std::move(ker));
}

GradedMatrix kernel_matrix(const GradedMatrix& A) {
  auto cols = preimage(A, {});
  Twists src;
  for (const auto& c : cols) src.push_back(*vec_degree(c, A.source()));
  return GradedMatrix(A.ring(), A.source(), std::move(src), std::move(cols));
}

GradedMatrix syzygy_module(const GroebnerBasis& gb) {
  std::vector<Vec> cols;
  Twists src;
  for (const auto& g : gb.elements) {
    Vec c = g;
    canonicalize(gb.ring->field(), c);
    src.push_back(*vec_degree(c, gb.twists));
    cols.push_back(std::move(c));
  }
  return kernel_matrix(GradedMatrix(gb.ring, gb.twists, std::move(src), std::move(cols)));
}

// ---------------------------------------------------------------- presentations

ModulePresentation minimal_presentation(const ModulePresentation& M) {
  const RingPtr& ring = M.ring();
  const Field& f = ring->field();
  Twists gens = M.gens();
  std::vector<Vec> rels = M.relations().columns();
  while (true) {
    long col = -1;
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < rels.size() && col < 0; ++j)
      for (const auto& t : rels[j])
        if (t.m.deg == 0) {
          col = static_cast<long>(j);
          row = t.comp;
          break;
        }
    if (col < 0) break;
    Vec pivot = rels[static_cast<std::size_t>(col)];
    Scalar u;
    for (const auto& t : pivot)
      if (t.comp == row) u = t.c;
    std::vector<Vec> next;
    for (std::size_t j = 0; j < rels.size(); ++j) {
      if (static_cast<long>(j) == col) continue;
      Polynomial e = vec_component(ring, rels[j], row);
      Vec v = rels[j];
      if (!e.is_zero()) v = vec_add(f, v, vec_mul(f, e.scale(f.neg(f.inv(u))), pivot));
      Vec w;
      for (auto& t : v) {
        if (t.comp == row) continue;  // cancelled exactly
        w.push_back({t.m, t.comp > row ? t.comp - 1 : t.comp, t.c});
      }
      canonicalize(f, w);
      if (!w.empty()) next.push_back(std::move(w));
    }
    gens.erase(gens.begin() + row);
    rels = std::move(next);
  }
  rels = minimal_generators(ring, gens, std::move(rels));
  return ModulePresentation::from_relations(ring, gens, std::move(rels));
}

ModulePresentation subquotient(const RingPtr& ring, const Twists& tw, const std::vector<Vec>& Z,
                               const std::vector<Vec>& B) {
  std::vector<Vec> zs;
  Twists zdeg;
  for (auto z : Z) {
    canonicalize(ring->field(), z);
    auto d = vec_degree(z, tw);
    if (!d) continue;
    zdeg.push_back(*d);
    zs.push_back(std::move(z));
  }
  GradedMatrix A(ring, tw, zdeg, zs);
  auto rels = preimage(A, B);
  return minimal_presentation(ModulePresentation::from_relations(ring, zdeg, std::move(rels)));
}

ModulePresentation truncate(const ModulePresentation& M, int e) {
  GradedPieces P(M);
  const Field& f = M.ring()->field();
  std::vector<Vec> Z;
  for (const auto& [m, c] : P.standard(e)) Z.push_back({{m, c, f.from_int(1)}});
  for (std::size_t j = 0; j < M.gens().size(); ++j)
    if (M.gens()[j] > e) Z.push_back({{Monomial::one(), static_cast<std::uint32_t>(j), f.from_int(1)}});
  return subquotient(M.ring(), M.gens(), Z, M.relations().columns());
}

ModulePresentation tensor_presentation(const ModulePresentation& M, const ModulePresentation& N) {
  if (!(*M.ring() == *N.ring())) throw Error(ErrorKind::Argument, "ring mismatch in tensor product");
  const RingPtr& ring = M.ring();
  const auto nm = static_cast<std::uint32_t>(M.gens().size());
  const auto nn = static_cast<std::uint32_t>(N.gens().size());
  Twists gens;
  for (std::uint32_t i = 0; i < nm; ++i)
    for (std::uint32_t j = 0; j < nn; ++j) gens.push_back(M.gens()[i] + N.gens()[j]);
  std::vector<Vec> rels;
  for (const auto& r : M.relations().columns())
    for (std::uint32_t j = 0; j < nn; ++j) {
      Vec v;
      for (const auto& t : r) v.push_back({t.m, t.comp * nn + j, t.c});
      rels.push_back(std::move(v));
    }
  for (std::uint32_t i = 0; i < nm; ++i)
    for (const auto& s : N.relations().columns()) {
      Vec v;
      for (const auto& t : s) v.push_back({t.m, i * nn + t.comp, t.c});
      rels.push_back(std::move(v));
    }
  return ModulePresentation::from_relations(ring, std::move(gens), std::move(rels));
}

ModulePresentation direct_sum(const std::vector<ModulePresentation>& parts) {
  if (parts.empty()) throw Error(ErrorKind::Argument, "direct sum of nothing");
  const RingPtr& ring = parts.front().ring();
  Twists gens;
  std::vector<Vec> rels;
  std::uint32_t off = 0;
  for (const auto& p : parts) {
    if (!(*p.ring() == *ring)) throw Error(ErrorKind::Argument, "ring mismatch in direct sum");
    gens.insert(gens.end(), p.gens().begin(), p.gens().end());
    for (const auto& r : p.relations().columns()) {
      Vec v;
      for (const auto& t : r) v.push_back({t.m, t.comp + off, t.c});
      rels.push_back(std::move(v));
    }
    off += static_cast<std::uint32_t>(p.gens().size());
  }
  return ModulePresentation::from_relations(ring, std::move(gens), std::move(rels));
}

ModulePresentation restrict_to_hyperplane(const ModulePresentation& M, const Polynomial& l) {
  return tensor_presentation(M, ModulePresentation::quotient(M.ring(), {l}));
}

ModulePresentation restrict_to_subring(const ModulePresentation& M, const RingPtr& sub, const std::vector<int>& keep) {
  const RingPtr& ring = M.ring();
  if (static_cast<int>(keep.size()) != sub->nvars()) throw Error(ErrorKind::Argument, "subring variable map mismatch");
  std::vector<char> kept(static_cast<std::size_t>(ring->nvars()), 0);
  for (int k : keep) kept[static_cast<std::size_t>(k)] = 1;
  GroebnerBasis gb = groebner_basis(ring, M.gens(), M.relations().columns());
  const Field& f = ring->field();
  for (int v = 0; v < ring->nvars(); ++v) {
    if (kept[static_cast<std::size_t>(v)]) continue;
    for (std::size_t j = 0; j < M.gens().size(); ++j) {
      Vec e{{Monomial::var(v), static_cast<std::uint32_t>(j), f.from_int(1)}};
      if (!gb.reduces_to_zero(e))
        throw Error(ErrorKind::Math, "module is not annihilated by variable " + ring->vars()[static_cast<std::size_t>(v)]);
    }
  }
  std::vector<Vec> rels;
  for (const auto& col : M.relations().columns()) {
    Vec w;
    for (const auto& t : col) {
      bool drop = false;
      for (int v = 0; v < ring->nvars(); ++v)
        if (!kept[static_cast<std::size_t>(v)] && t.m.e[v]) drop = true;
      if (drop) continue;
      Monomial m;
      for (std::size_t k = 0; k < keep.size(); ++k) {
        m.e[k] = t.m.e[static_cast<std::size_t>(keep[k])];
        m.deg += m.e[k];
      }
      w.push_back({m, t.comp, sub->field().from_rational(t.c)});
    }
    canonicalize(sub->field(), w);
    if (!w.empty()) rels.push_back(std::move(w));
  }
  return ModulePresentation::from_relations(sub, M.gens(), std::move(rels));
}

// ---------------------------------------------------------------- ideals

namespace {

Ideal vecs_to_ideal(const RingPtr& ring, const std::vector<Vec>& vs) {
  Ideal out;
  for (const auto& v : vs) out.push_back(vec_component(ring, v, 0));
  return out;
}

}  // namespace

Ideal irrelevant_ideal(const RingPtr& ring) {
  Ideal m;
  for (int i = 0; i < ring->nvars(); ++i) m.push_back(Polynomial::variable(ring, i));
  return m;
}

Ideal reduced_gens(const Ideal& I) {
  Ideal nz;
  for (const auto& g : I)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return {};
  GroebnerBasis gb = ideal_groebner_basis(nz);
  Ideal out;
  for (const auto& g : gb.elements) {
    Vec c = g;
    canonicalize(gb.ring->field(), c);
    out.push_back(vec_component(gb.ring, c, 0));
  }
  return out;
}

Ideal ideal_intersection(const RingPtr& ring, const std::vector<Ideal>& ideals) {
  if (ideals.empty()) return {Polynomial::constant(ring, 1)};
  const Field& f = ring->field();
  const auto t = static_cast<std::uint32_t>(ideals.size());
  Vec diag;
  for (std::uint32_t k = 0; k < t; ++k) diag.push_back({Monomial::one(), k, f.from_int(1)});
  GradedMatrix A(ring, Twists(t, 0), {0}, {diag});
  std::vector<Vec> U;
  for (std::uint32_t k = 0; k < t; ++k)
    for (const auto& g : ideals[k])
      if (!g.is_zero()) U.push_back(vec_from_poly(g, k));
  return vecs_to_ideal(ring, preimage(A, U));
}

Ideal colon(const Ideal& I, const Ideal& J) {
  std::vector<Polynomial> js;
  for (const auto& g : J)
    if (!g.is_zero()) js.push_back(g);
  if (I.empty() && js.empty()) throw Error(ErrorKind::Argument, "colon of empty ideals");
  const RingPtr& ring = I.empty() ? js.front().ring() : I.front().ring();
  if (js.empty()) return {Polynomial::constant(ring, 1)};
  std::vector<Vec> U;
  for (const auto& g : I)
    if (!g.is_zero()) U.push_back(vec_from_poly(g, 0));
  std::vector<Ideal> parts;
  for (const auto& f : js) {
    GradedMatrix A(ring, {0}, {*f.homogeneous_degree()}, {vec_from_poly(f, 0)});
    parts.push_back(vecs_to_ideal(ring, preimage(A, U)));
  }
  if (parts.size() == 1) return parts.front();
  return ideal_intersection(ring, parts);
}

Ideal saturate(const Ideal& I, const Ideal& J) {
  if (std::all_of(J.begin(), J.end(), [](const Polynomial& p) { return p.is_zero(); }))
    throw Error(ErrorKind::Argument, "saturation by the zero ideal");
  Ideal cur = reduced_gens(I);
  while (true) {
    Ideal next = reduced_gens(colon(cur, J));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Ideal annihilator(const ModulePresentation& M) {
  const RingPtr& ring = M.ring();
  const Field& f = ring->field();
  std::vector<Ideal> parts;
  for (std::size_t j = 0; j < M.gens().size(); ++j) {
    GradedMatrix A(ring, M.gens(), {M.gens()[j]}, {{{Monomial::one(), static_cast<std::uint32_t>(j), f.from_int(1)}}});
    parts.push_back(vecs_to_ideal(ring, preimage(A, M.relations().columns())));
  }
  return reduced_gens(ideal_intersection(ring, parts));
}

ModulePresentation saturate(const ModulePresentation& M, const Ideal& J) {
  std::vector<Polynomial> js;
  for (const auto& g : J)
    if (!g.is_zero()) js.push_back(g);
  if (js.empty()) throw Error(ErrorKind::Argument, "saturation by the zero ideal");
  const RingPtr& ring = M.ring();
  const Field& f = ring->field();
  const Twists& tw = M.gens();
  const auto r = static_cast<std::uint32_t>(tw.size());
  Twists big;
  for (const auto& g : js)
    for (int a : tw) big.push_back(a - *g.homogeneous_degree());
  // Each block multiplies by one generator of J; twists are chosen so the map has degree 0.
  std::vector<Vec> cols(r);
  for (std::uint32_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < js.size(); ++k)
      for (const auto& t : js[k].terms()) cols[j].push_back({t.m, static_cast<std::uint32_t>(k) * r + j, t.c});
  GradedMatrix A(ring, big, tw, cols);
  std::vector<Vec> cur = M.relations().columns();
  GroebnerBasis cur_gb = groebner_basis(ring, tw, cur);
  while (true) {
    std::vector<Vec> U;
    for (std::size_t k = 0; k < js.size(); ++k)
      for (const auto& u : cur) {
        Vec v;
        for (const auto& t : u) v.push_back({t.m, static_cast<std::uint32_t>(k) * r + t.comp, t.c});
        U.push_back(std::move(v));
      }
    std::vector<Vec> next = preimage(A, U);
    GroebnerBasis next_gb = groebner_basis(ring, tw, next);
    if (next_gb.same_as(cur_gb)) break;
    cur = std::move(next);
    cur_gb = std::move(next_gb);
  }
  (void)f;
  return minimal_presentation(ModulePresentation::from_relations(ring, tw, cur));
}

// ---------------------------------------------------------------- graded pieces

GradedPieces::GradedPieces(const ModulePresentation& M)
    : ring_(M.ring()), tw_(M.gens()), gb_(groebner_basis(M.ring(), M.gens(), M.relations().columns())) {
  by_comp_.resize(tw_.size());
  for (std::size_t k = 0; k < gb_.elements.size(); ++k) by_comp_[gb_.elements[k][0].comp].push_back(static_cast<int>(k));
}

int GradedPieces::reducer(const Monomial& m, std::uint32_t comp) const {
  for (int k : by_comp_[comp])
    if (gb_.elements[static_cast<std::size_t>(k)][0].m.divides(m)) return k;
  return -1;
}

GradedPieces::Piece& GradedPieces::piece(int d) {
  auto it = pieces_.find(d);
  if (it != pieces_.end()) return it->second;
  Piece p;
  for (std::size_t j = 0; j < tw_.size(); ++j) {
    int k = d - tw_[j];
    if (k < 0) continue;
    for (const auto& m : monomials_of_degree(ring_->nvars(), k))
      if (reducer(m, static_cast<std::uint32_t>(j)) < 0) {
        p.index.emplace(Key{m, static_cast<std::uint32_t>(j)}, static_cast<int>(p.basis.size()));
        p.basis.emplace_back(m, static_cast<std::uint32_t>(j));
      }
  }
  return pieces_.emplace(d, std::move(p)).first->second;
}

int GradedPieces::dim(int d) { return static_cast<int>(piece(d).basis.size()); }

const std::vector<std::pair<Monomial, std::uint32_t>>& GradedPieces::standard(int d) { return piece(d).basis; }

const SparseVec& GradedPieces::nf_term(const Monomial& m, std::uint32_t comp) {
  Key key{m, comp};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const Field& f = ring_->field();
  SparseVec out;
  int r = reducer(m, comp);
  if (r < 0) {
    Piece& p = piece(m.deg + tw_[comp]);
    out.e.emplace_back(p.index.at(key), f.from_int(1));
  } else {
    const Vec& g = gb_.elements[static_cast<std::size_t>(r)];
    Monomial q = g[0].m.quotient_of(m);
    std::unordered_map<int, Scalar> acc;
    for (std::size_t t = 1; t < g.size(); ++t) {
      const SparseVec& sub = nf_term(q * g[t].m, g[t].comp);
      sparse_accumulate(f, acc, f.neg(g[t].c), sub);
    }
    out = sparse_from_map(acc);
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

SparseVec GradedPieces::coords(const Vec& v) {
  const Field& f = ring_->field();
  std::unordered_map<int, Scalar> acc;
  for (const auto& t : v) sparse_accumulate(f, acc, t.c, nf_term(t.m, t.comp));
  return sparse_from_map(acc);
}

}  // namespace sheafkit
