#include <algorithm>
#include "sheafkit/sheafkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "sheafkit/session.hpp"

using namespace sheafkit;

struct sk_session {
  Session s;
};
struct sk_module {
  ModulePresentation m;
};
struct sk_report {
  Report r;
};

namespace {

thread_local std::string g_error;
thread_local int g_error_line = 0;

sk_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return SK_ERR_PARSE;
    case ErrorKind::Argument:
      return SK_ERR_ARGUMENT;
    case ErrorKind::Degree:
      return SK_ERR_DEGREE;
    case ErrorKind::Math:
      return SK_ERR_MATH;
    case ErrorKind::NotFound:
      return SK_ERR_NOT_FOUND;
    case ErrorKind::Internal:
      return SK_ERR_INTERNAL;
  }
  return SK_ERR_INTERNAL;
}

template <class F>
sk_status guarded(F&& f) {
  g_error.clear();
  g_error_line = 0;
  try {
    f();
    return SK_OK;
  } catch (const ParseError& e) {
    g_error = e.what();
    g_error_line = e.line();
    return SK_ERR_PARSE;
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return SK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return SK_ERR_INTERNAL;
  }
}

sk_status null_arg(const char* what) {
  g_error = std::string("null argument: ") + what;
  g_error_line = 0;
  return SK_ERR_NULL;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::optional<Field> field_opt(const char* field) {
  if (!field || !*field) return std::nullopt;
  return parse_field(field);
}

nlohmann::json pair_json(const PairClass& p) {
  return {{"d", p.d}, {"chi", p.chi}, {"section", p.has_section}};
}

nlohmann::json wall_json(const Wall& w) {
  return {{"alpha", format_scalar(w.alpha)},
          {"sub", pair_json(w.sub)},
          {"quotient", pair_json(w.quotient)},
          {"admissible", w.admissible},
          {"reason", w.reason}};
}

}  // namespace

#define SK_REQUIRE(p) \
  if (!(p)) return null_arg(#p)

extern "C" {

const char* sk_version(void) { return tool_version(); }
const char* sk_last_error(void) { return g_error.c_str(); }
int sk_last_error_line(void) { return g_error_line; }
void sk_string_free(char* s) { std::free(s); }

sk_status sk_session_parse(const char* text, const char* field, sk_session** out) {
  SK_REQUIRE(text);
  SK_REQUIRE(out);
  return guarded([&] {
    SessionOptions o;
    o.field = field_opt(field);
    *out = new sk_session{parse_session(text, o)};
  });
}

sk_status sk_session_fixture(const char* fixture, const char* alias, const char* field, sk_session** out) {
  SK_REQUIRE(fixture);
  SK_REQUIRE(alias);
  SK_REQUIRE(out);
  return guarded([&] {
    const auto names = fixture_names();
    if (std::find(names.begin(), names.end(), fixture) == names.end())
      throw Error(ErrorKind::NotFound, std::string("unknown fixture '") + fixture + "'");
    SessionOptions o;
    o.field = field_opt(field);
    *out = new sk_session{parse_session(std::string("use ") + fixture + " as " + alias + "\n", o)};
  });
}

void sk_session_free(sk_session* s) { delete s; }

sk_status sk_session_ring(const sk_session* s, char** out) {
  SK_REQUIRE(s);
  SK_REQUIRE(out);
  return guarded([&] { *out = dup(s->s.ring->describe()); });
}

sk_status sk_session_groebner(const sk_session* s, const char* expr, const char* order, char** out) {
  SK_REQUIRE(s);
  SK_REQUIRE(expr);
  SK_REQUIRE(out);
  return guarded([&] {
    std::string ord = order ? order : "grevlex";
    MonomialOrder mo;
    if (ord == "lex")
      mo = MonomialOrder::lex();
    else if (ord != "grevlex")
      throw Error(ErrorKind::Argument, "unknown monomial order '" + ord + "' (use grevlex or lex)");
    try {
      *out = dup(ideal_groebner_basis(s->s.ideal(expr), mo).to_string());
      return;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotFound) throw;
    }
    if (ord != "grevlex") throw Error(ErrorKind::Argument, "module Groebner bases use grevlex");
    ModulePresentation M = s->s.module(expr);
    const GradedMatrix& R = M.relations();
    *out = dup(groebner_basis(M.ring(), R.target(), R.columns()).to_string());
  });
}

sk_status sk_session_module(const sk_session* s, const char* expr, sk_module** out) {
  SK_REQUIRE(s);
  SK_REQUIRE(expr);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_module{s->s.module(expr)}; });
}

void sk_module_free(sk_module* m) { delete m; }

sk_status sk_module_presentation(const sk_module* m, char** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] {
    std::string g;
    for (int t : m->m.gens()) g += (g.empty() ? "" : ", ") + std::to_string(t);
    *out = dup("generators in degrees (" + g + ")\nrelations:\n" + m->m.relations().to_string());
  });
}

sk_status sk_module_twist(const sk_module* m, int k, sk_module** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_module{m->m.twist(k)}; });
}

sk_status sk_module_dual(const sk_module* m, sk_module** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_module{dual_sheaf(m->m)}; });
}

sk_status sk_module_tor(const sk_module* a, const sk_module* b, int i, sk_module** out) {
  SK_REQUIRE(a);
  SK_REQUIRE(b);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_module{tor_module(a->m, b->m, i)}; });
}

sk_status sk_module_ext(const sk_module* a, const sk_module* b, int i, sk_module** out) {
  SK_REQUIRE(a);
  SK_REQUIRE(b);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_module{ext_module(a->m, b->m, i)}; });
}

sk_status sk_hilbert_polynomial(const sk_module* m, char** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = dup(hilbert_polynomial(m->m).to_string()); });
}

sk_status sk_hilbert_function(const sk_module* m, int d, int* out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = hilbert_function(m->m, d); });
}

sk_status sk_resolution(const sk_module* m, char** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] {
    FreeResolution F = free_resolution(m->m);
    std::string s = F.betti().to_string();
    for (int i = 0; i < F.length(); ++i)
      s += "\nd" + std::to_string(i + 1) + ":\n" + F.maps[static_cast<std::size_t>(i)].to_string();
    *out = dup(s);
  });
}

sk_status sk_betti(const sk_module* m, char** out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = dup(free_resolution(m->m).betti().to_string()); });
}

sk_status sk_regularity(const sk_module* m, int* out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = regularity(m->m); });
}

sk_status sk_sheaf_cohomology(const sk_module* m, int q, int d, int* out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = sheaf_cohomology(m->m, q, d); });
}

sk_status sk_ext_dim(const sk_module* a, const sk_module* b, int i, int d, int* out) {
  SK_REQUIRE(a);
  SK_REQUIRE(b);
  SK_REQUIRE(out);
  return guarded([&] { *out = ext_dims(a->m, b->m, i, d, d).front(); });
}

sk_status sk_tor_dim(const sk_module* a, const sk_module* b, int i, int d, int* out) {
  SK_REQUIRE(a);
  SK_REQUIRE(b);
  SK_REQUIRE(out);
  return guarded([&] { *out = tor_dims(a->m, b->m, i, d, d).front(); });
}

sk_status sk_sheaf_ext(const sk_module* a, const sk_module* b, int i, int agree, int* out, int* stable_degree) {
  SK_REQUIRE(a);
  SK_REQUIRE(b);
  SK_REQUIRE(out);
  return guarded([&] {
    SheafExtOptions o;
    if (agree > 0) o.agree = agree;
    o.max_steps = std::max(o.max_steps, o.agree + 7);
    SheafExtResult r = sheaf_ext(a->m, b->m, i, o);
    *out = r.dim;
    if (stable_degree) *stable_degree = r.e;
  });
}

sk_status sk_beilinson(const sk_module* m, int sig[5], char** type) {
  SK_REQUIRE(m);
  SK_REQUIRE(sig);
  return guarded([&] {
    BeilinsonSignature b = beilinson_table(m->m);
    sig[0] = b.h0_omega2;
    sig[1] = b.h0_omega1;
    sig[2] = b.h0;
    sig[3] = b.h0_minus1;
    sig[4] = b.h1;
    if (type) *type = dup(b.type);
  });
}

sk_status sk_is_planar(const sk_module* m, int* out) {
  SK_REQUIRE(m);
  SK_REQUIRE(out);
  return guarded([&] { *out = is_planar(m->m) ? 1 : 0; });
}

sk_status sk_walls(int d, int chi, int chi_lo, int chi_hi, int include_all, char** json) {
  SK_REQUIRE(json);
  return guarded([&] {
    auto all = walls(d, chi, chi_lo, chi_hi);
    auto list = include_all ? all : admissible_walls(all);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& w : list) j.push_back(wall_json(w));
    *json = dup(j.dump());
  });
}

sk_status sk_crossing_report(int d, int chi, char** json) {
  SK_REQUIRE(json);
  return guarded([&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : crossing_report(d, chi)) {
      auto order = [](const ExtensionOrder& o) {
        return nlohmann::json{{"side", o.side}, {"sub", pair_json(o.sub)}, {"quotient", pair_json(o.quotient)}, {"display", o.display}};
      };
      j.push_back({{"wall", wall_json(c.wall)}, {"above", order(c.above)}, {"below", order(c.below)}});
    }
    *json = dup(j.dump());
  });
}

sk_status sk_session_run(const sk_session* s, int agree, const char* source, sk_report** out) {
  SK_REQUIRE(s);
  SK_REQUIRE(out);
  return guarded([&] {
    RunOptions o;
    if (agree > 0) o.agree = agree;
    *out = new sk_report{run_claims(s->s, o, source ? source : "session")};
  });
}

sk_status sk_catalog_suite(const char* field, int agree, sk_report** out) {
  SK_REQUIRE(out);
  return guarded([&] {
    RunOptions o;
    o.field = field_opt(field);
    if (agree > 0) o.agree = agree;
    *out = new sk_report{catalog_suite(o)};
  });
}

const char* sk_catalog_text(void) { return catalog_text().data(); }

sk_status sk_report_json(const sk_report* r, char** out) {
  SK_REQUIRE(r);
  SK_REQUIRE(out);
  return guarded([&] { *out = dup(r->r.to_json()); });
}

sk_status sk_report_text(const sk_report* r, char** out) {
  SK_REQUIRE(r);
  SK_REQUIRE(out);
  return guarded([&] { *out = dup(r->r.to_text()); });
}

sk_status sk_report_counts(const sk_report* r, int* pass, int* fail, int* skipped) {
  SK_REQUIRE(r);
  if (pass) *pass = r->r.count(ClaimStatus::Pass);
  if (fail) *fail = r->r.count(ClaimStatus::Fail);
  if (skipped) *skipped = r->r.count(ClaimStatus::Skipped);
  return SK_OK;
}

sk_status sk_report_from_json(const char* json, sk_report** out) {
  SK_REQUIRE(json);
  SK_REQUIRE(out);
  return guarded([&] { *out = new sk_report{Report::from_json(json)}; });
}

void sk_report_free(sk_report* r) { delete r; }

}  // extern "C"
