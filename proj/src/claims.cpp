#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "sheafkit/session.hpp"

#ifndef SHEAFKIT_VERSION
#define SHEAFKIT_VERSION "0.0.0"
#endif

namespace sheafkit {

const char* tool_version() { return SHEAFKIT_VERSION; }

namespace {

using Kind = ClaimValue::Kind;

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

int as_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw Error(ErrorKind::Argument, "expected an integer, got '" + s + "'");
  return v;
}

std::string list_text(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::string betti_text(const BettiTable& b) {
  std::string s;
  for (const auto& [ij, v] : b.entries) {
    if (v == 0) continue;
    if (!s.empty()) s += " ";
    s += "(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")=" + std::to_string(v);
  }
  return s.empty() ? "0" : s;
}

std::map<std::pair<int, int>, int> parse_betti(const std::string& text) {
  std::map<std::pair<int, int>, int> m;
  std::string t = strip_spaces(text);
  if (t == "0") return m;
  std::size_t i = 0;
  while (i < t.size()) {
    int a, b, v, n = 0;
    if (std::sscanf(t.c_str() + i, "(%d,%d)=%d%n", &a, &b, &v, &n) != 3 || n == 0)
      throw Error(ErrorKind::Argument, "malformed Betti entry near '" + t.substr(i) + "'");
    if (v != 0) m[{a, b}] += v;
    i += static_cast<std::size_t>(n);
  }
  return m;
}

std::string ideal_text(const Ideal& I) {
  std::string s = "<";
  Ideal r = reduced_gens(I);
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + r[i].to_string();
  return s + ">";
}

Ideal parse_ideal_literal(const std::string& text, const RingPtr& ring) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != '<' || t.back() != '>') throw Error(ErrorKind::Argument, "ideal literal must look like <f, g>");
  Ideal I;
  std::string inner = trim(t.substr(1, t.size() - 2));
  if (!inner.empty())
    for (auto& [piece, off] : split_top_level(inner, ',')) I.push_back(parse_polynomial(ring, piece));
  return I;
}

Polynomial parse_hp(const std::string& text) {
  static const RingPtr m = make_ring({"m"});
  return parse_polynomial(m, text);
}

struct Context {
  const Session& s;
  const ClaimSpec& c;
  int agree;

  ModulePresentation M(std::size_t i) const { return s.module(c.args[i]); }
  int I(std::size_t i) const { return as_int(trim(c.args[i])); }
  SheafExtOptions ext_opts() const {
    SheafExtOptions o;
    o.agree = agree;
    o.max_steps = std::max(o.max_steps, agree + 7);
    return o;
  }
};

ClaimValue val(Kind k, std::string t) { return ClaimValue{k, std::move(t)}; }
ClaimValue int_val(long v) { return val(Kind::Integer, std::to_string(v)); }
ClaimValue bool_val(bool b) { return val(Kind::Boolean, b ? "true" : "false"); }

std::string walls_text(const std::vector<Wall>& ws) {
  if (ws.empty()) return "none";
  std::string s;
  for (const auto& w : ws) {
    if (!s.empty()) s += "; ";
    s += "alpha=" + format_scalar(w.alpha) + ": " + w.sub.to_string() + " + " + w.quotient.to_string();
  }
  return s;
}

struct OpImpl {
  OperationInfo info;
  std::function<ClaimValue(const Context&)> run;
};

const std::vector<OpImpl>& op_table() {
  static const std::vector<OpImpl> ops = [] {
    std::vector<OpImpl> v;
    auto add = [&](std::string name, int lo, int hi, Kind k, std::string sig, std::function<ClaimValue(const Context&)> f) {
      v.push_back({{std::move(name), lo, hi, k, std::move(sig)}, std::move(f)});
    };
    add("hp", 1, 1, Kind::Polynomial, "hp(M)",
        [](const Context& x) { return val(Kind::Polynomial, hilbert_polynomial(x.M(0)).to_string()); });
    add("hf", 2, 2, Kind::Integer, "hf(M, d)", [](const Context& x) { return int_val(hilbert_function(x.M(0), x.I(1))); });
    add("hf_window", 3, 3, Kind::List, "hf_window(M, a, b)",
        [](const Context& x) { return val(Kind::List, list_text(hilbert_function(x.M(0), x.I(1), x.I(2)))); });
    add("betti", 1, 1, Kind::Betti, "betti(M)",
        [](const Context& x) { return val(Kind::Betti, betti_text(free_resolution(x.M(0)).betti())); });
    add("regularity", 1, 1, Kind::Integer, "regularity(M)", [](const Context& x) { return int_val(regularity(x.M(0))); });
    add("gens", 1, 1, Kind::List, "gens(M)", [](const Context& x) {
      Twists t = minimal_presentation(x.M(0)).gens();
      std::sort(t.begin(), t.end());
      return val(Kind::List, list_text(t));
    });
    add("ann", 1, 1, Kind::Ideal, "ann(M)", [](const Context& x) { return val(Kind::Ideal, ideal_text(annihilator(x.M(0)))); });
    add("h", 3, 3, Kind::Integer, "h(q, M, d)", [](const Context& x) {
      return int_val(SheafCohomology(x.M(1)).h(x.I(0), x.I(2)));
    });
    add("h_window", 4, 4, Kind::List, "h_window(q, M, a, b)", [](const Context& x) {
      SheafCohomology C(x.M(1));
      std::vector<int> out;
      for (int d = x.I(2); d <= x.I(3); ++d) out.push_back(C.h(x.I(0), d));
      return val(Kind::List, list_text(out));
    });
    add("ext", 4, 4, Kind::Integer, "ext(i, M, N, d)", [](const Context& x) {
      int d = x.I(3);
      return int_val(ext_dims(x.M(1), x.M(2), x.I(0), d, d).front());
    });
    add("tor", 4, 4, Kind::Integer, "tor(i, M, N, d)", [](const Context& x) {
      int d = x.I(3);
      return int_val(tor_dims(x.M(1), x.M(2), x.I(0), d, d).front());
    });
    add("sheaf_ext", 3, 3, Kind::Integer, "sheaf_ext(M, N, i)",
        [](const Context& x) { return int_val(sheaf_ext(x.M(0), x.M(1), x.I(2), x.ext_opts()).dim); });
    add("serre", 3, 3, Kind::Boolean, "serre(A, B, i)", [](const Context& x) {
      ModulePresentation A = x.M(0), B = x.M(1);
      const int n = A.ring()->nvars(), i = x.I(2);
      int lhs = sheaf_ext(A, B, i, x.ext_opts()).dim;
      int rhs = sheaf_ext(B, A.twist(-n), n - 1 - i, x.ext_opts()).dim;
      return bool_val(lhs == rhs);
    });
    add("jumpext", 2, 2, Kind::Integer, "jumpext(I, p)",
        [](const Context& x) { return int_val(jumpext_case(x.s.ideal(x.c.args[0]), x.s.point(x.c.args[1])).computed_ext); });
    add("jumpext_rank", 2, 2, Kind::Integer, "jumpext_rank(I, p)",
        [](const Context& x) { return int_val(jumpext_case(x.s.ideal(x.c.args[0]), x.s.point(x.c.args[1])).rank_at_p); });
    add("jumpext_agree", 2, 2, Kind::Boolean, "jumpext_agree(I, p)",
        [](const Context& x) { return bool_val(jumpext_case(x.s.ideal(x.c.args[0]), x.s.point(x.c.args[1])).agree()); });
    add("beilinson", 1, 1, Kind::Text, "beilinson(M)", [](const Context& x) {
      auto b = beilinson_table(x.M(0));
      return val(Kind::Text, b.type + " (" + std::to_string(b.h0_omega2) + "," + std::to_string(b.h0_omega1) + "," +
                                 std::to_string(b.h0) + ")");
    });
    add("planar", 1, 1, Kind::Boolean, "planar(M)", [](const Context& x) { return bool_val(is_planar(x.M(0))); });
    add("walls", 2, 2, Kind::Text, "walls(d, chi)",
        [](const Context& x) { return val(Kind::Text, walls_text(admissible_walls(walls(x.I(0), x.I(1))))); });
    add("wall_count", 2, 2, Kind::Integer, "wall_count(d, chi)",
        [](const Context& x) { return int_val(static_cast<long>(admissible_walls(walls(x.I(0), x.I(1))).size())); });
    add("composes_to_zero", 2, 2, Kind::Boolean, "composes_to_zero(A, B)", [](const Context& x) {
      return bool_val(x.s.matrix(x.c.args[0]).compose(x.s.matrix(x.c.args[1])).is_zero());
    });
    return v;
  }();
  return ops;
}

}  // namespace

const std::vector<OperationInfo>& claim_operations() {
  static const std::vector<OperationInfo> infos = [] {
    std::vector<OperationInfo> v;
    for (const auto& o : op_table()) v.push_back(o.info);
    return v;
  }();
  return infos;
}

ClaimValue evaluate_claim(const Session& s, const ClaimSpec& c, int agree) {
  for (const auto& o : op_table())
    if (o.info.name == c.op) {
      Context ctx{s, c, agree};
      return o.run(ctx);
    }
  throw Error(ErrorKind::NotFound, "unknown operation '" + c.op + "'");
}

bool claim_matches(const ClaimValue& computed, const std::string& expected, const RingPtr& ring) {
  switch (computed.kind) {
    case Kind::Integer:
      return as_int(trim(expected)) == as_int(computed.text);
    case Kind::Boolean: {
      std::string e = trim(expected);
      if (e != "true" && e != "false") throw Error(ErrorKind::Argument, "expected true or false, got '" + e + "'");
      return e == computed.text;
    }
    case Kind::List:
      return strip_spaces(expected) == strip_spaces(computed.text);
    case Kind::Polynomial:
      return parse_hp(expected) == parse_hp(computed.text);
    case Kind::Betti:
      return parse_betti(expected) == parse_betti(computed.text);
    case Kind::Ideal:
      return reduced_gens(parse_ideal_literal(expected, ring)) == reduced_gens(parse_ideal_literal(computed.text, ring));
    case Kind::Text:
      break;
  }
  auto norm = [](std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : trim(s)) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = true;
        continue;
      }
      if (space && !out.empty()) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
    return out;
  };
  return norm(expected) == norm(computed.text);
}

std::string status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass:
      return "pass";
    case ClaimStatus::Fail:
      return "fail";
    case ClaimStatus::Skipped:
      return "skipped";
  }
  return "unknown";
}

namespace {

ClaimStatus status_from(const std::string& s) {
  if (s == "pass") return ClaimStatus::Pass;
  if (s == "fail") return ClaimStatus::Fail;
  if (s == "skipped") return ClaimStatus::Skipped;
  throw Error(ErrorKind::Parse, "unknown claim status '" + s + "'");
}

std::string computation_text(const ClaimSpec& c) {
  std::string s = c.op + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) s += (i ? ", " : "") + c.args[i];
  return s + ")";
}

}  // namespace

bool ClaimResult::operator==(const ClaimResult& o) const {
  return id == o.id && operation == o.operation && expected == o.expected && computed == o.computed &&
         citation == o.citation && detail == o.detail && status == o.status && seconds == o.seconds;
}

int Report::count(ClaimStatus s) const {
  return static_cast<int>(std::count_if(claims.begin(), claims.end(), [&](const ClaimResult& c) { return c.status == s; }));
}

bool Report::operator==(const Report& o) const {
  return schema == o.schema && tool_version == o.tool_version && field == o.field && source == o.source &&
         windows == o.windows && claims == o.claims;
}

std::string Report::to_json(int indent) const {
  nlohmann::json j;
  j["schema"] = schema;
  j["tool_version"] = tool_version;
  j["field"] = field;
  j["source"] = source;
  j["windows"] = windows;
  j["summary"] = {{"pass", count(ClaimStatus::Pass)}, {"fail", count(ClaimStatus::Fail)}, {"skipped", count(ClaimStatus::Skipped)}};
  j["claims"] = nlohmann::json::array();
  for (const auto& c : claims)
    j["claims"].push_back({{"id", c.id},
                           {"operation", c.operation},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"citation", c.citation},
                           {"detail", c.detail},
                           {"status", status_name(c.status)},
                           {"seconds", c.seconds}});
  return j.dump(indent);
}

Report Report::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kSchema) throw Error(ErrorKind::Parse, "unsupported report schema " + r.schema);
    r.tool_version = j.at("tool_version").get<std::string>();
    r.field = j.at("field").get<std::string>();
    r.source = j.at("source").get<std::string>();
    r.windows = j.at("windows").get<std::map<std::string, std::string>>();
    for (const auto& c : j.at("claims")) {
      ClaimResult cr;
      cr.id = c.at("id").get<std::string>();
      cr.operation = c.at("operation").get<std::string>();
      cr.expected = c.at("expected").get<std::string>();
      cr.computed = c.at("computed").get<std::string>();
      cr.citation = c.at("citation").get<std::string>();
      cr.detail = c.at("detail").get<std::string>();
      cr.status = status_from(c.at("status").get<std::string>());
      cr.seconds = c.at("seconds").get<double>();
      r.claims.push_back(std::move(cr));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed report: ") + e.what());
  }
}

std::string Report::to_text() const {
  std::ostringstream os;
  for (const auto& c : claims) {
    std::string tag = c.status == ClaimStatus::Pass ? "PASS" : c.status == ClaimStatus::Fail ? "FAIL" : "SKIP";
    os << tag << "  " << c.id << ": " << c.operation << " = " << c.computed;
    if (c.status == ClaimStatus::Fail) os << "  (expected " << c.expected << ")";
    if (!c.detail.empty()) os << "  [" << c.detail << "]";
    os << "\n";
  }
  os << count(ClaimStatus::Pass) << " passed, " << count(ClaimStatus::Fail) << " failed, " << count(ClaimStatus::Skipped)
     << " skipped (" << field << ")\n";
  return os.str();
}

Report run_claims(const Session& s, const RunOptions& opt, const std::string& source) {
  Report r;
  r.tool_version = tool_version();
  r.field = s.ring->field().name();
  r.source = source;
  r.windows["sheaf_ext_agree"] = std::to_string(opt.agree);
  r.windows["sheaf_ext_start"] = "reg(N)+1";
  for (const auto& c : s.claims) {
    ClaimResult cr;
    cr.id = c.id;
    cr.operation = computation_text(c);
    cr.expected = c.expected;
    cr.citation = c.citation;
    if (c.qq_only && !s.ring->field().is_rational()) {
      cr.status = ClaimStatus::Skipped;
      cr.detail = "claim is stated over the rationals";
      r.claims.push_back(std::move(cr));
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      ClaimValue v = evaluate_claim(s, c, opt.agree);
      cr.computed = v.text;
      cr.status = claim_matches(v, c.expected, s.ring) ? ClaimStatus::Pass : ClaimStatus::Fail;
    } catch (const Error& e) {
      cr.status = ClaimStatus::Fail;
      cr.computed = "error";
      cr.detail = e.what();
    }
    cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.claims.push_back(std::move(cr));
  }
  return r;
}

Report catalog_suite(const RunOptions& opt) {
  SessionOptions so;
  so.field = opt.field;
  return run_claims(parse_session(catalog_text(), so), opt, "catalog");
}

}  // namespace sheafkit
