#include "sheafkit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace sheafkit {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(ErrorKind::Parse,
            (line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                      : (column > 0 ? "column " + std::to_string(column) + ": " : std::string())) +
                what),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (p <= 2) throw Error(ErrorKind::Argument, "prime field characteristic must be > 2");
  if (p >= (std::uint64_t{1} << 62)) throw Error(ErrorKind::Argument, "prime field characteristic too large");
  mpz_class z(std::to_string(p));
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw Error(ErrorKind::Argument, std::to_string(p) + " is not prime");
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "QQ" : "Fp:" + std::to_string(p_); }

namespace {

std::uint64_t to_u64(const mpz_class& z) {
  return static_cast<std::uint64_t>(mpz_get_ui(z.get_mpz_t()));
}

Scalar from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(v));
  return Scalar(z);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

Scalar Field::from_int(long v) const {
  if (p_ == 0) return Scalar(v);
  long long m = static_cast<long long>(v % static_cast<long long>(p_));
  if (m < 0) m += static_cast<long long>(p_);
  return from_u64(static_cast<std::uint64_t>(m));
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) return q;
  mpz_class pz;
  mpz_set_ui(pz.get_mpz_t(), static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = q.get_den() % pz;
  if (den == 0) throw Error(ErrorKind::Math, "denominator divisible by the field characteristic");
  std::uint64_t r = mulmod(to_u64(num), powmod(to_u64(den), p_ - 2, p_), p_);
  return from_u64(r);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a + b;
  std::uint64_t r = to_u64(a.get_num()) + to_u64(b.get_num());
  if (r >= p_) r -= p_;
  return from_u64(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a - b;
  std::uint64_t x = to_u64(a.get_num()), y = to_u64(b.get_num());
  return from_u64(x >= y ? x - y : x + p_ - y);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (p_ == 0) return a * b;
  return from_u64(mulmod(to_u64(a.get_num()), to_u64(b.get_num()), p_));
}

Scalar Field::neg(const Scalar& a) const {
  if (p_ == 0) return -a;
  std::uint64_t x = to_u64(a.get_num());
  return from_u64(x == 0 ? 0 : p_ - x);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw Error(ErrorKind::Math, "division by zero");
  if (p_ == 0) return 1 / a;
  return from_u64(powmod(to_u64(a.get_num()), p_ - 2, p_));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int i) {
  Monomial m;
  m.e[static_cast<std::size_t>(i)] = 1;
  m.deg = 1;
  return m;
}

Monomial Monomial::from_exponents(const std::vector<int>& exps) {
  if (exps.size() > kMaxVars) throw Error(ErrorKind::Argument, "too many variables");
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw Error(ErrorKind::Argument, "negative exponent");
    m.e[i] = static_cast<std::uint16_t>(exps[i]);
    m.deg += exps[i];
  }
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
  r.deg = deg + o.deg;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(o.e[i] - e[i]);
  r.deg = o.deg - deg;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(e[i], o.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] && o.e[i]) return false;
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : m.e) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

const std::vector<Monomial>& monomials_of_degree(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Monomial>> cache;
  static const std::vector<Monomial> empty;
  if (d < 0 || n <= 0) return empty;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Monomial> out;
  // Recursive enumeration of exponent vectors summing to d.
  std::vector<int> ex(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      ex[static_cast<std::size_t>(i)] = left;
      out.push_back(Monomial::from_exponents(ex));
      return;
    }
    for (int k = left; k >= 0; --k) {
      ex[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  MonomialOrder g;
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return g.compare(a, b) > 0; });
  return cache.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------- orders

namespace {

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

int lex_cmp(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case OrderKind::Grevlex:
      return grevlex_cmp(a, b);
    case OrderKind::Lex:
      return lex_cmp(a, b);
    case OrderKind::Elimination: {
      int sa = 0, sb = 0;
      for (int i = 0; i < elim; ++i) {
        sa += a.e[i];
        sb += b.e[i];
      }
      if (sa != sb) return sa < sb ? -1 : 1;
      return grevlex_cmp(a, b);
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case OrderKind::Grevlex:
      return "grevlex";
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Elimination:
      return "elimination(" + std::to_string(elim) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> vars, Field field) : vars_(std::move(vars)), field_(field) {
  if (vars_.empty()) throw Error(ErrorKind::Argument, "a ring needs at least one variable");
  if (vars_.size() > kMaxVars) throw Error(ErrorKind::Argument, "at most 8 variables are supported");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw Error(ErrorKind::Argument, "bad variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw Error(ErrorKind::Argument, "duplicate variable '" + v + "'");
  }
}

int Ring::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Ring::format_monomial(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += '*';
    s += vars_[static_cast<std::size_t>(i)];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Ring::describe() const {
  std::string s = field_.name() + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
  return s + "]";
}

RingPtr make_ring(std::vector<std::string> vars, Field field) {
  return std::make_shared<const Ring>(std::move(vars), field);
}

RingPtr p3_ring(Field field) { return make_ring({"x", "y", "z", "w"}, field); }

// ---------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const PTerm& a, const PTerm& b) { return grevlex_cmp(a.m, b.m) > 0; }

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  return monomial(std::move(ring), Monomial::one(), c);
}

Polynomial Polynomial::variable(RingPtr ring, int i) {
  if (i < 0 || i >= ring->nvars()) throw Error(ErrorKind::Argument, "variable index out of range");
  return monomial(ring, Monomial::var(i), ring->field().from_int(1));
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  Polynomial p(std::move(ring));
  Scalar v = p.ring_->field().from_rational(c);
  if (v != 0) p.terms_.push_back({m, v});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<PTerm> terms) {
  Polynomial p(std::move(ring));
  const Field& f = p.ring_->field();
  std::sort(terms.begin(), terms.end(), term_greater);
  for (auto& t : terms) {
    Scalar c = f.from_rational(t.c);
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c = f.add(p.terms_.back().c, c);
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else if (c != 0) {
      p.terms_.push_back({t.m, c});
    }
  }
  return p;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().m.deg;
  for (const auto& t : terms_)
    if (t.m.deg != d) return std::nullopt;
  return d;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
    throw Error(ErrorKind::Argument, "ring mismatch in polynomial arithmetic");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  const Field& f = ring_->field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = i == terms_.size() ? -1 : j == o.terms_.size() ? 1 : grevlex_cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = f.add(terms_[i].c, o.terms_[j].c);
      if (s != 0) r.terms_.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scale(const Scalar& c) const {
  Polynomial r(ring_);
  const Field& f = ring_->field();
  Scalar cc = f.from_rational(c);
  if (cc == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c = f.mul(t.c, cc);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  std::vector<PTerm> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  const Field& f = ring_->field();
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc.push_back({a.m * b.m, f.mul(a.c, b.c)});
  return from_terms(ring_, std::move(acc));
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw Error(ErrorKind::Argument, "negative power");
  Polynomial r = constant(ring_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<PTerm> out;
  const Field& f = ring_->field();
  for (const auto& t : terms_) {
    int k = t.m.e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Monomial m = t.m;
    m.e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k - 1);
    m.deg -= 1;
    out.push_back({m, f.mul(t.c, f.from_int(k))});
  }
  return from_terms(ring_, std::move(out));
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw Error(ErrorKind::Argument, "point has the wrong number of coordinates");
  const Field& f = ring_->field();
  Scalar total = f.from_int(0);
  for (const auto& t : terms_) {
    Scalar v = t.c;
    for (int i = 0; i < ring_->nvars(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v = f.mul(v, f.from_rational(point[static_cast<std::size_t>(i)]));
    total = f.add(total, v);
  }
  return total;
}

Scalar Polynomial::evaluate_projective(const std::vector<Scalar>& point) const {
  if (!is_zero() && !homogeneous_degree())
    throw Error(ErrorKind::Degree, "projective evaluation of a non-homogeneous polynomial");
  if (std::all_of(point.begin(), point.end(), [](const Scalar& s) { return s == 0; }))
    throw Error(ErrorKind::Argument, "projective point with all coordinates zero");
  return evaluate(point);
}

std::string format_scalar(const Scalar& c) { return c.get_str(); }

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.c;
    bool neg = c < 0 && ring_->field().is_rational();
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    bool unit = c == 1;
    if (t.m.deg == 0) {
      s += format_scalar(c);
    } else {
      if (!unit) s += format_scalar(c) + "*";
      s += ring_->format_monomial(t.m);
    }
  }
  return s;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text, int line, int column)
      : ring_(ring), s_(text), line_(line), col0_(column) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool first = true;
    while (true) {
      skip_ws();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        neg = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  int exponent() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    if (pos_ - start > 4) fail("exponent too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial with_power(Polynomial base) {
    if (peek('^')) {
      ++pos_;
      return base.pow(exponent());
    }
    return base;
  }

  Polynomial factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of polynomial");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return with_power(inner);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class num(std::string(s_.substr(start, pos_ - start)));
      mpq_class q(num);
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected a denominator");
        mpz_class den(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
        q = mpq_class(num, den);
        q.canonicalize();
      }
      Scalar v;
      try {
        v = ring_->field().from_rational(q);
      } catch (const Error& e) {
        fail(e.what());
      }
      return with_power(Polynomial::constant(ring_, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string ident(s_.substr(start, pos_ - start));
      std::vector<int> vars = split_identifier(ident, start);
      Polynomial acc = Polynomial::constant(ring_, 1);
      for (std::size_t k = 0; k + 1 < vars.size(); ++k) acc = acc * Polynomial::variable(ring_, vars[k]);
      return acc * with_power(Polynomial::variable(ring_, vars.back()));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  // Greedy longest-match split of a juxtaposed identifier into ring variables.
  std::vector<int> split_identifier(const std::string& ident, std::size_t start) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < ident.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int v = 0; v < ring_->nvars(); ++v) {
        const auto& name = ring_->vars()[static_cast<std::size_t>(v)];
        if (name.size() > best_len && ident.compare(i, name.size(), name) == 0) {
          best = v;
          best_len = name.size();
        }
      }
      if (best < 0) {
        pos_ = start + i;
        fail("unknown variable in '" + ident + "'");
      }
      out.push_back(best);
      i += best_len;
    }
    return out;
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int col0_;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, int line, int column) {
  return PolyParser(ring, text, line, column).parse();
}

std::vector<std::pair<std::string, int>> split_top_level(std::string_view text, char sep) {
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      out.emplace_back(std::string(text.substr(start, i - start)), static_cast<int>(start));
      start = i + 1;
      continue;
    }
    if (text[i] == '(' || text[i] == '[') ++depth;
    if (text[i] == ')' || text[i] == ']') --depth;
  }
  return out;
}

}  // namespace sheafkit
