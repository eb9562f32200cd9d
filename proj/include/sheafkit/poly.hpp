#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sheafkit {

enum class ErrorKind { Parse, Argument, Degree, Math, NotFound, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the text parsers. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using Scalar = mpq_class;

// Coefficient field: the rationals, or Z/p for a prime p > 2.
// Elements of Z/p are stored as mpq values with denominator 1 in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  Scalar from_int(long v) const;
  Scalar from_rational(const mpq_class& q) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  int deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(int i);
  static Monomial from_exponents(const std::vector<int>& exps);

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// All monomials of degree d in n variables, in descending grevlex order.
const std::vector<Monomial>& monomials_of_degree(int n, int d);

enum class OrderKind { Grevlex, Lex, Elimination };

struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  int elim = 0;  // number of leading variables eliminated (Elimination only)

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder elimination(int k) { return {OrderKind::Elimination, k}; }

  // -1, 0, 1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  std::string name() const;
};

class Ring {
 public:
  Ring(std::vector<std::string> vars, Field field);

  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const Field& field() const { return field_; }
  int var_index(std::string_view name) const;
  std::string format_monomial(const Monomial& m) const;
  std::string describe() const;

  bool operator==(const Ring& o) const { return vars_ == o.vars_ && field_ == o.field_; }

 private:
  std::vector<std::string> vars_;
  Field field_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars, Field field = Field::rationals());
RingPtr p3_ring(Field field = Field::rationals());

struct PTerm {
  Monomial m;
  Scalar c;
};

// Sparse polynomial; terms sorted by descending grevlex, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial variable(RingPtr ring, int i);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Scalar& c);
  // Takes arbitrary terms; combines duplicates, drops zeros, sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<PTerm> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<PTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> homogeneous_degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scale(const Scalar& c) const;
  Polynomial pow(int k) const;
  Polynomial derivative(int var) const;

  Scalar evaluate(const std::vector<Scalar>& point) const;
  // Evaluation at projective coordinates: requires f homogeneous and the point nonzero.
  Scalar evaluate_projective(const std::vector<Scalar>& point) const;

  std::string to_string() const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<PTerm> terms_;
};

// Parses `y^3 + y*z*w + z^3`, `2/3 x^2 - xy`, parenthesised sums, etc.
// Juxtaposed variable names are split greedily against the ring's variable list.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, int line = 0, int column = 1);

// Splits on top-level commas (outside parentheses).
std::vector<std::pair<std::string, int>> split_top_level(std::string_view text, char sep);

std::string format_scalar(const Scalar& c);

}  // namespace sheafkit
