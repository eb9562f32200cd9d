#include "sheafkit/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace sheafkit {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

long to_int(std::string_view s) {
  std::string t = trim(s);
  long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw Error(ErrorKind::Argument, "expected an integer, got '" + t + "'");
  return v;
}

struct Call {
  std::string head;
  std::vector<std::string> args;
  bool is_call = false;
};

// "f(a, b)" -> {f, [a, b]}; anything else -> {expr}.
Call split_call(std::string_view expr) {
  Call c;
  std::string e = trim(expr);
  auto open = e.find('(');
  if (open != std::string::npos && open > 0 && e.back() == ')' && is_identifier(trim(e.substr(0, open)))) {
    // the parentheses must enclose the whole tail
    int depth = 0;
    bool whole = true;
    for (std::size_t i = open; i < e.size(); ++i) {
      if (e[i] == '(' || e[i] == '[') ++depth;
      if (e[i] == ')' || e[i] == ']') --depth;
      if (depth == 0 && i + 1 < e.size()) whole = false;
    }
    if (whole) {
      c.is_call = true;
      c.head = trim(e.substr(0, open));
      std::string inner = e.substr(open + 1, e.size() - open - 2);
      if (!trim(inner).empty())
        for (auto& [piece, off] : split_top_level(inner, ',')) c.args.push_back(trim(piece));
      return c;
    }
  }
  c.head = e;
  return c;
}

void need_args(const Call& c, std::size_t lo, std::size_t hi) {
  if (c.args.size() < lo || c.args.size() > hi)
    throw Error(ErrorKind::Argument, c.head + " expects " +
                                         (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi)) +
                                         " arguments, got " + std::to_string(c.args.size()));
}

// alias.key -> (alias, key); the key may contain any characters.
std::optional<std::pair<std::string, std::string>> split_ref(std::string_view e) {
  auto dot = e.find('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  std::string alias(e.substr(0, dot));
  if (!is_identifier(alias)) return std::nullopt;
  return std::make_pair(alias, std::string(e.substr(dot + 1)));
}

}  // namespace

Field parse_field(std::string_view text) {
  std::string t = trim(text);
  if (t == "QQ") return Field::rationals();
  if (t.rfind("Fp:", 0) == 0) {
    long p = to_int(t.substr(3));
    if (p < 2) throw Error(ErrorKind::Argument, "field characteristic must be a prime");
    return Field::prime(static_cast<std::uint64_t>(p));
  }
  throw Error(ErrorKind::Argument, "unknown field '" + t + "' (use QQ or Fp:<p>)");
}

const Fixture& Session::fixture(const std::string& alias) const {
  auto it = fixtures.find(alias);
  if (it == fixtures.end()) throw Error(ErrorKind::NotFound, "unknown fixture alias " + alias);
  return load_fixture(it->second, ring->field());
}

ModulePresentation Session::module(std::string_view expr) const {
  Call c = split_call(expr);
  if (!c.is_call) {
    auto it = modules.find(c.head);
    if (it != modules.end()) return it->second;
    if (auto ref = split_ref(c.head)) return fixture(ref->first).module(ref->second);
    throw Error(ErrorKind::NotFound, "unknown module '" + c.head + "'");
  }
  const std::string& h = c.head;
  auto M = [&](std::size_t i) { return module(c.args[i]); };
  auto I = [&](std::size_t i) { return static_cast<int>(to_int(c.args[i])); };
  if (h == "coker") {
    need_args(c, 1, 1);
    return ModulePresentation(matrix(c.args[0]));
  }
  if (h == "quotient") {
    if (c.args.size() == 1) {
      try {
        return ModulePresentation::quotient(ring, ideal(c.args[0]));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotFound) throw;
      }
    }
    Ideal gens;
    for (const auto& a : c.args) gens.push_back(parse_polynomial(ring, a));
    return ModulePresentation::quotient(ring, gens);
  }
  if (h == "O") {
    need_args(c, 1, 1);
    return ModulePresentation::free(ring, {-I(0)});
  }
  if (h == "free") {
    Twists tw;
    for (std::size_t i = 0; i < c.args.size(); ++i) tw.push_back(I(i));
    return ModulePresentation::free(ring, tw);
  }
  if (h == "point") {
    need_args(c, 1, 1);
    return ModulePresentation::quotient(ring, point_ideal(ring, point(c.args[0])));
  }
  if (h == "twist") {
    need_args(c, 2, 2);
    return M(0).twist(I(1));
  }
  if (h == "tensor") {
    need_args(c, 2, 2);
    return tensor_presentation(M(0), M(1));
  }
  if (h == "sum") {
    if (c.args.empty()) throw Error(ErrorKind::Argument, "sum needs at least one module");
    std::vector<ModulePresentation> parts;
    for (std::size_t i = 0; i < c.args.size(); ++i) parts.push_back(M(i));
    return direct_sum(parts);
  }
  if (h == "tor" || h == "ext") {
    need_args(c, 3, 3);
    return h == "tor" ? tor_module(M(1), M(2), I(0)) : ext_module(M(1), M(2), I(0));
  }
  if (h == "dual") {
    need_args(c, 1, 1);
    return dual_sheaf(M(0));
  }
  if (h == "truncate") {
    need_args(c, 2, 2);
    return truncate(M(0), I(1));
  }
  if (h == "saturate") {
    need_args(c, 1, 1);
    return saturate(M(0), irrelevant_ideal(ring));
  }
  if (h == "minimize") {
    need_args(c, 1, 1);
    return minimal_presentation(M(0));
  }
  if (h == "restrict") {
    // restrict(M, z, w): M must be annihilated by the other variables.
    if (c.args.size() < 2) throw Error(ErrorKind::Argument, "restrict expects a module and the variables to keep");
    std::vector<int> keep;
    std::vector<std::string> names;
    for (std::size_t i = 1; i < c.args.size(); ++i) {
      int v = ring->var_index(c.args[i]);
      if (v < 0) throw Error(ErrorKind::NotFound, "unknown variable " + c.args[i]);
      keep.push_back(v);
      names.push_back(c.args[i]);
    }
    return restrict_to_subring(M(0), make_ring(names, ring->field()), keep);
  }
  if (h == "plane") {
    need_args(c, 2, 2);
    int v = ring->var_index(c.args[1]);
    if (v < 0) throw Error(ErrorKind::NotFound, "unknown variable " + c.args[1]);
    return restrict_to_plane(M(0), v);
  }
  if (h == "hyperplane") {
    need_args(c, 2, 2);
    return restrict_to_hyperplane(M(0), parse_polynomial(ring, c.args[1]));
  }
  if (h == "extension") {
    need_args(c, 3, 3);
    return extension_from_class(M(0), M(1), I(2)).module;
  }
  if (h == "omega") {
    need_args(c, 1, 1);
    return omega(ring, I(0));
  }
  throw Error(ErrorKind::NotFound, "unknown module constructor '" + h + "'");
}

GradedMatrix Session::matrix(std::string_view expr) const {
  std::string e = trim(expr);
  auto it = matrices.find(e);
  if (it != matrices.end()) return it->second;
  if (auto ref = split_ref(e)) return fixture(ref->first).matrix(ref->second);
  throw Error(ErrorKind::NotFound, "unknown matrix '" + e + "'");
}

Ideal Session::ideal(std::string_view expr) const {
  Call c = split_call(expr);
  if (c.is_call && c.head == "ann") {
    need_args(c, 1, 1);
    return annihilator(module(c.args[0]));
  }
  auto it = ideals.find(c.head);
  if (!c.is_call && it != ideals.end()) return it->second;
  if (!c.is_call)
    if (auto ref = split_ref(c.head)) return fixture(ref->first).ideal(ref->second);
  throw Error(ErrorKind::NotFound, "unknown ideal '" + trim(expr) + "'");
}

std::vector<Scalar> Session::point(std::string_view expr) const {
  std::string e = trim(expr);
  if (e.size() >= 2 && e.front() == '[' && e.back() == ']') {
    std::vector<Scalar> p;
    for (auto& [piece, off] : split_top_level(e.substr(1, e.size() - 2), ':')) p.emplace_back(trim(piece));
    if (static_cast<int>(p.size()) != ring->nvars()) throw Error(ErrorKind::Argument, "point " + e + " has the wrong length");
    for (auto& x : p) x.canonicalize();
    return p;
  }
  auto it = points.find(e);
  if (it != points.end()) return it->second;
  if (auto ref = split_ref(e)) return fixture(ref->first).point(ref->second);
  throw Error(ErrorKind::NotFound, "unknown point '" + e + "'");
}

// ---------------------------------------------------------------- parsing

namespace {

struct Statement {
  std::string text;
  int line = 0;
  std::vector<std::pair<int, int>> loc;  // (line, column) of every character of text
};

// Splits on newlines outside brackets; '#' starts a comment outside quotes.
std::vector<Statement> split_statements(std::string_view src) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1, col = 0, depth = 0;
  bool quote = false, comment = false;
  auto flush = [&] {
    if (!trim(cur.text).empty()) {
      auto first = cur.text.find_first_not_of(" \t\r");
      cur.line = cur.loc[first].first;
      out.push_back(std::move(cur));
    }
    cur = Statement{};
  };
  for (char ch : src) {
    ++col;
    if (ch == '\n') {
      comment = false;
      if (depth > 0) {
        cur.text.push_back(' ');
        cur.loc.emplace_back(line, col);
      } else {
        flush();
      }
      ++line;
      col = 0;
      continue;
    }
    if (comment) continue;
    if (ch == '"') quote = !quote;
    if (!quote) {
      if (ch == '#') {
        comment = true;
        continue;
      }
      if (ch == '[' || ch == '(') ++depth;
      if (ch == ']' || ch == ')') depth = std::max(0, depth - 1);
    }
    cur.text.push_back(ch);
    cur.loc.emplace_back(line, col);
  }
  if (depth > 0) {
    auto first = cur.text.find_first_not_of(" \t\r");
    throw ParseError("unclosed bracket", cur.loc[first].first, cur.loc[first].second);
  }
  flush();
  return out;
}

Twists parse_twists(const std::string& text, std::pair<int, int> at) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError("twists must be written as (a, b, ...)", at.first, at.second);
  Twists tw;
  std::string inner = trim(t.substr(1, t.size() - 2));
  if (inner.empty()) return tw;
  for (auto& [piece, off] : split_top_level(inner, ',')) tw.push_back(static_cast<int>(to_int(piece)));
  return tw;
}

class Parser {
 public:
  Parser(Session& s, const SessionOptions& opt) : s_(s), opt_(opt) {}

  void statement(const Statement& st) {
    st_ = &st;
    cursor_ = 0;
    line_ = st.line;
    std::string t = trim(st.text);
    std::string kw = t.substr(0, t.find_first_of(" \t"));
    std::string rest = trim(t.substr(kw.size()));
    try {
      if (kw == "ring") return ring(rest);
      if (kw == "use") return use(rest);
      if (!s_.ring) fail("declare a ring (or use a fixture) before '" + kw + "'");
      if (kw == "ideal") return ideal(rest);
      if (kw == "point") return point(rest);
      if (kw == "matrix") return matrix(rest);
      if (kw == "module") return module(rest);
      if (kw == "claim") return claim(rest);
      fail("unknown statement '" + kw + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_, column_of_statement());
    }
  }

 private:
  int column_of_statement() const {
    auto first = st_->text.find_first_not_of(" \t\r");
    return st_->loc[first].second;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_of_statement()); }
  // Location of `piece` in the statement. Pieces are looked up left to right
  // from cursor_, which each statement handler first moves past its header.
  std::pair<int, int> where(const std::string& piece) {
    std::string p = trim(piece);
    auto at = p.empty() ? std::string::npos : st_->text.find(p, cursor_);
    if (at == std::string::npos) return {line_, column_of_statement()};
    cursor_ = at + p.size();
    return st_->loc[at];
  }
  void skip_past(char c) {
    auto at = st_->text.find(c);
    if (at != std::string::npos) cursor_ = at + 1;
  }
  [[noreturn]] void fail_at(const std::string& piece, const std::string& msg) {
    auto [l, c] = where(piece);
    throw ParseError(msg, l, c);
  }
  Polynomial poly_at(const std::string& piece, std::pair<int, int>* loc = nullptr) {
    std::string p = trim(piece);
    auto at = where(p);
    if (loc) *loc = at;
    return parse_polynomial(s_.ring, p, at.first, at.second);
  }

  std::pair<std::string, std::string> name_and_value(const std::string& rest, char sep = '=') {
    auto eq = rest.find(sep);
    if (eq == std::string::npos) fail(std::string("expected '") + sep + "'");
    std::string name = trim(rest.substr(0, eq));
    if (!is_identifier(name)) fail("invalid name '" + name + "'");
    if (taken(name)) fail("name '" + name + "' is already defined");
    return {name, trim(rest.substr(eq + 1))};
  }

  bool taken(const std::string& n) const {
    return s_.ideals.count(n) || s_.matrices.count(n) || s_.modules.count(n) || s_.points.count(n) || s_.fixtures.count(n);
  }

  void ring(const std::string& rest) {
    if (s_.ring) fail("only one ring per session");
    std::string vars = rest;
    Field f = Field::rationals();
    auto over = rest.find(" over ");
    if (over != std::string::npos) {
      vars = rest.substr(0, over);
      f = parse_field(rest.substr(over + 6));
    }
    if (opt_.field) f = *opt_.field;
    std::vector<std::string> names;
    for (auto& [piece, off] : split_top_level(vars, ',')) {
      std::string v = trim(piece);
      if (!is_identifier(v)) fail("invalid variable name '" + v + "'");
      names.push_back(v);
    }
    if (names.empty()) fail("ring needs at least one variable");
    s_.ring = make_ring(names, f);
  }

  void use(const std::string& rest) {
    std::string name = rest, alias;
    auto as = rest.find(" as ");
    if (as != std::string::npos) {
      name = trim(rest.substr(0, as));
      alias = trim(rest.substr(as + 4));
    } else {
      alias = name;
    }
    if (!is_identifier(alias)) fail("invalid alias '" + alias + "'");
    if (taken(alias)) fail("name '" + alias + "' is already defined");
    if (!s_.ring) s_.ring = p3_ring(opt_.field.value_or(Field::rationals()));
    const Fixture& fx = load_fixture(name, s_.ring->field());
    if (!(*fx.ring == *s_.ring)) fail("fixture " + name + " lives in " + fx.ring->describe() + ", not the session ring");
    s_.fixtures[alias] = name;
  }

  void ideal(const std::string& rest) {
    skip_past('=');
    auto [name, value] = name_and_value(rest);
    Call c = split_call(value);
    Ideal I;
    if ((c.is_call && c.head == "ann") || (!c.is_call && (s_.ideals.count(c.head) || split_ref(c.head)))) {
      I = s_.ideal(value);
    } else {
      for (auto& [piece, off] : split_top_level(value, ',')) {
        std::pair<int, int> at;
        Polynomial g = poly_at(piece, &at);
        if (!g.is_zero() && !g.homogeneous_degree())
          throw ParseError("ideal " + name + " has a non-homogeneous generator", at.first, at.second);
        I.push_back(std::move(g));
      }
    }
    s_.ideals[name] = std::move(I);
  }

  void point(const std::string& rest) {
    auto [name, value] = name_and_value(rest);
    s_.points[name] = s_.point(value);
  }

  // matrix NAME : (targets) <- (sources) = [a, b; c, d]   or   matrix NAME = alias.key
  void matrix(const std::string& rest) {
    skip_past(':');
    auto colon = rest.find(':');
    auto eq = rest.find('=');
    if (colon == std::string::npos || (eq != std::string::npos && eq < colon)) {
      auto [name, value] = name_and_value(rest);
      s_.matrices[name] = s_.matrix(value);
      return;
    }
    std::string name = trim(rest.substr(0, colon));
    if (!is_identifier(name)) fail("invalid name '" + name + "'");
    if (taken(name)) fail("name '" + name + "' is already defined");
    if (eq == std::string::npos) fail("expected '=' in matrix definition");
    std::string shape = rest.substr(colon + 1, eq - colon - 1);
    auto arrow = shape.find("<-");
    if (arrow == std::string::npos) fail("expected (targets) <- (sources)");
    Twists target = parse_twists(shape.substr(0, arrow), where(shape.substr(0, arrow)));
    Twists source = parse_twists(shape.substr(arrow + 2), where(shape.substr(arrow + 2)));
    std::string body = trim(rest.substr(eq + 1));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') fail("matrix entries must be enclosed in [ ]");
    std::string inner = trim(body.substr(1, body.size() - 2));
    std::vector<std::vector<Polynomial>> rows;
    std::vector<std::vector<std::pair<int, int>>> locs;
    if (!inner.empty())
      for (auto& [row, roff] : split_top_level(inner, ';')) {
        rows.emplace_back();
        locs.emplace_back();
        for (auto& [entry, eoff] : split_top_level(row, ',')) {
          locs.back().emplace_back();
          rows.back().push_back(poly_at(entry, &locs.back().back()));
        }
      }
    if (rows.empty() && !target.empty()) rows.assign(target.size(), {});
    if (!source.empty())
      for (auto& r : rows)
        if (r.empty()) fail("matrix " + name + " has an empty row");
    for (std::size_t i = 0; i < rows.size() && i < target.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size() && j < source.size(); ++j) {
        const auto& p = rows[i][j];
        if (p.is_zero()) continue;
        auto d = p.homogeneous_degree();
        if (!d)
          throw ParseError("matrix " + name + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not homogeneous",
                           locs[i][j].first, locs[i][j].second);
        if (*d != source[j] - target[i])
          throw ParseError("matrix " + name + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has degree " +
                               std::to_string(*d) + ", expected " + std::to_string(source[j] - target[i]),
                           locs[i][j].first, locs[i][j].second);
      }
    s_.matrices[name] = GradedMatrix::from_rows(s_.ring, target, source, rows);
  }

  void module(const std::string& rest) {
    auto [name, value] = name_and_value(rest);
    s_.modules[name] = s_.module(value);
  }

  // claim ID [qq]: op(args) = expected   cite "text"
  void claim(const std::string& rest) {
    skip_past(':');
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail("expected ':' after the claim id");
    ClaimSpec c;
    c.line = line_;
    std::string head = trim(rest.substr(0, colon));
    if (head.size() > 4 && head.substr(head.size() - 4) == "[qq]") {
      c.qq_only = true;
      head = trim(head.substr(0, head.size() - 4));
    }
    if (!is_identifier(head)) fail("invalid claim id '" + head + "'");
    for (const auto& o : s_.claims)
      if (o.id == head) fail("duplicate claim id '" + head + "'");
    c.id = head;
    std::string body = trim(rest.substr(colon + 1));
    auto cite = body.find(" cite \"");
    if (cite != std::string::npos) {
      std::string q = body.substr(cite + 7);
      auto close = q.find('"');
      if (close == std::string::npos || !trim(q.substr(close + 1)).empty()) fail("malformed cite text");
      c.citation = q.substr(0, close);
      body = trim(body.substr(0, cite));
    }
    // '=' at bracket depth 0 separates the computation from the expected value
    int depth = 0;
    std::size_t eq = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char ch = body[i];
      if (ch == '(' || ch == '[' || ch == '<') ++depth;
      if (ch == ')' || ch == ']' || ch == '>') --depth;
      if (ch == '=' && depth == 0) {
        eq = i;
        break;
      }
    }
    if (eq == std::string::npos) fail("claim " + c.id + " has no expected value");
    Call call = split_call(body.substr(0, eq));
    c.expected = trim(body.substr(eq + 1));
    if (c.expected.empty()) fail("claim " + c.id + " has an empty expected value");
    if (!call.is_call) fail("claim " + c.id + ": expected op(args)");
    const auto& ops = claim_operations();
    auto op = std::find_if(ops.begin(), ops.end(), [&](const OperationInfo& o) { return o.name == call.head; });
    if (op == ops.end()) fail_at(call.head, "unknown operation '" + call.head + "' in claim " + c.id);
    if (static_cast<int>(call.args.size()) < op->min_args || static_cast<int>(call.args.size()) > op->max_args)
      fail("claim " + c.id + ": " + op->signature + " called with " + std::to_string(call.args.size()) + " arguments");
    c.op = call.head;
    c.args = call.args;
    s_.claims.push_back(std::move(c));
  }

  Session& s_;
  const SessionOptions& opt_;
  const Statement* st_ = nullptr;
  std::size_t cursor_ = 0;
  int line_ = 0;
};

}  // namespace

Session parse_session(std::string_view text, const SessionOptions& opt) {
  Session s;
  Parser p(s, opt);
  for (const auto& st : split_statements(text)) p.statement(st);
  if (!s.ring) throw ParseError("session declares no ring", 1, 1);
  return s;
}

}  // namespace sheafkit
