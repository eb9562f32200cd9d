// Command-line front end. Talks to the library only through the C interface.
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sheafkit/sheafkit.h"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kClaimFailed = 1, kInputError = 2, kComputeError = 3 };

struct Failure {
  sk_status status;
  std::string message;
};

void check(sk_status st) {
  if (st != SK_OK) throw Failure{st, sk_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sk_string_free(s);
  return out;
}

using SessionPtr = std::unique_ptr<sk_session, decltype(&sk_session_free)>;
using ModulePtr = std::unique_ptr<sk_module, decltype(&sk_module_free)>;
using ReportPtr = std::unique_ptr<sk_report, decltype(&sk_report_free)>;

struct Options {
  std::string field;
  bool json = false;
  std::string order = "grevlex";
  std::string window;
  int agree = 0;
};

std::pair<int, int> parse_window(const std::string& w, std::pair<int, int> dflt) {
  if (w.empty()) return dflt;
  auto dots = w.find("..");
  if (dots == std::string::npos) throw Failure{SK_ERR_ARGUMENT, "window must look like a..b, got '" + w + "'"};
  try {
    int a = std::stoi(w.substr(0, dots)), b = std::stoi(w.substr(dots + 2));
    if (a > b) throw Failure{SK_ERR_ARGUMENT, "empty window " + w};
    return {a, b};
  } catch (const std::logic_error&) {
    throw Failure{SK_ERR_ARGUMENT, "window must look like a..b, got '" + w + "'"};
  }
}

// A session file path, or @name for a fixture (objects are then fx.<key>).
SessionPtr open_session(const std::string& source, const Options& o) {
  sk_session* s = nullptr;
  const char* field = o.field.empty() ? nullptr : o.field.c_str();
  if (!source.empty() && source[0] == '@') {
    check(sk_session_fixture(source.c_str() + 1, "fx", field, &s));
  } else {
    std::ifstream in(source);
    if (!in) throw Failure{SK_ERR_NOT_FOUND, "cannot read " + source};
    std::stringstream ss;
    ss << in.rdbuf();
    check(sk_session_parse(ss.str().c_str(), field, &s));
  }
  return SessionPtr(s, sk_session_free);
}

ModulePtr get_module(const SessionPtr& s, const std::string& expr) {
  sk_module* m = nullptr;
  check(sk_session_module(s.get(), expr.c_str(), &m));
  return ModulePtr(m, sk_module_free);
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int run_report(sk_report* raw, const Options& o) {
  ReportPtr r(raw, sk_report_free);
  char* out = nullptr;
  if (o.json)
    check(sk_report_json(r.get(), &out));
  else
    check(sk_report_text(r.get(), &out));
  std::cout << take(out);
  if (o.json) std::cout << "\n";
  int pass = 0, fail = 0, skipped = 0;
  check(sk_report_counts(r.get(), &pass, &fail, &skipped));
  return fail == 0 ? kOk : kClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sheafkit: Groebner bases, resolutions and sheaf cohomology on projective space"};
  app.set_version_flag("--version", std::string(sk_version()));
  app.require_subcommand(1);
  Options o;
  app.add_option("--field", o.field, "coefficient field: QQ or Fp:<p>");
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--order", o.order, "monomial order for gb: grevlex or lex")->check(CLI::IsMember({"grevlex", "lex"}));
  app.add_option("--window", o.window, "degree window a..b");
  app.add_option("--agree", o.agree, "equal consecutive truncations required by sheaf Ext (default 3)");
  app.fallthrough();

  std::string file, expr, expr2;
  int index = 0;
  auto session_cmd = [&](const char* name, const char* help, int nmods, bool with_index) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", file, "session file, or @fixture")->required();
    c->add_option("module", expr, nmods == 0 ? "ideal or module expression" : "module expression")->required();
    if (nmods == 2) c->add_option("second", expr2, "second module expression")->required();
    if (with_index) c->add_option("index", index, "homological index")->required();
    return c;
  };
  auto* gb = session_cmd("gb", "Groebner basis of an ideal or of a module's relations", 0, false);
  auto* res = session_cmd("res", "minimal free resolution and Betti table", 1, false);
  auto* hilb = session_cmd("hilb", "Hilbert polynomial and Hilbert function", 1, false);
  auto* cohom = session_cmd("cohom", "sheaf cohomology table h^q(F(d))", 1, false);
  auto* ext = session_cmd("ext", "graded pieces of Ext^i_S(M, N)", 2, true);
  auto* sheafext = session_cmd("sheafext", "dim Ext^i of the associated sheaves", 2, true);
  auto* tor = session_cmd("tor", "graded pieces of Tor_i^S(M, N)", 2, true);
  auto* dual = session_cmd("dual", "dual sheaf Ext^{n-2}(M, S(-n)) of a one-dimensional sheaf", 1, false);
  auto* beil = session_cmd("beilinson", "Beilinson cohomology signature of a 4m+1 sheaf", 1, false);

  auto* wl = app.add_subcommand("walls", "walls for pairs with Hilbert polynomial d*m + chi");
  int wd = 0, wchi = 0;
  std::string chi_range;
  bool all_walls = false, crossing = false;
  wl->add_option("d", wd, "degree")->required();
  wl->add_option("chi", wchi, "Euler characteristic")->required();
  wl->add_option("--chi-range", chi_range, "range a..b for chi of the sub-piece (default chi-2d..chi+2d)");
  wl->add_flag("--all", all_walls, "include candidates that fail the admissibility filter");
  wl->add_flag("--crossing", crossing, "print the two extension orders at each admissible wall");

  auto* verify = app.add_subcommand("verify", "check claims; exit 1 if any fails");
  bool paper = false, list_claims = false;
  std::string claim_file;
  verify->add_flag("--paper", paper, "run the built-in claim catalog");
  verify->add_flag("--print-catalog", list_claims, "print the built-in catalog instead of running it");
  verify->add_option("file", claim_file, "session file with claim lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gb) {
      auto s = open_session(file, o);
      char* out = nullptr;
      check(sk_session_groebner(s.get(), expr.c_str(), o.order.c_str(), &out));
      std::string text = take(out);
      emit(o, {{"command", "gb"}, {"object", expr}, {"order", o.order}, {"basis", text}}, text + "\n");
    } else if (*res) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr);
      char* out = nullptr;
      check(sk_resolution(m.get(), &out));
      std::string text = take(out);
      char* betti = nullptr;
      check(sk_betti(m.get(), &betti));
      int reg = 0;
      check(sk_regularity(m.get(), &reg));
      emit(o, {{"command", "res"}, {"object", expr}, {"betti", take(betti)}, {"regularity", reg}, {"resolution", text}},
           text + "\nregularity " + std::to_string(reg) + "\n");
    } else if (*hilb) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr);
      auto [a, b] = parse_window(o.window, {0, 10});
      char* hp = nullptr;
      check(sk_hilbert_polynomial(m.get(), &hp));
      std::string p = take(hp);
      json vals = json::object();
      std::string text = p + "\n";
      for (int d = a; d <= b; ++d) {
        int v = 0;
        check(sk_hilbert_function(m.get(), d, &v));
        vals[std::to_string(d)] = v;
        text += "  HF(" + std::to_string(d) + ") = " + std::to_string(v) + "\n";
      }
      emit(o, {{"command", "hilb"}, {"object", expr}, {"hilbert_polynomial", p}, {"window", {a, b}}, {"hilbert_function", vals}},
           text);
    } else if (*cohom) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr);
      auto [a, b] = parse_window(o.window, {-3, 5});
      char* ring = nullptr;
      check(sk_session_ring(s.get(), &ring));
      take(ring);
      json table = json::object();
      std::ostringstream text;
      text << "d    ";
      for (int d = a; d <= b; ++d) text << std::setw(5) << d;
      text << "\n";
      for (int q = 0;; ++q) {
        std::vector<int> row;
        sk_status st = SK_OK;
        for (int d = a; d <= b && st == SK_OK; ++d) {
          int v = 0;
          st = sk_sheaf_cohomology(m.get(), q, d, &v);
          row.push_back(v);
        }
        if (st == SK_ERR_ARGUMENT) break;  // q beyond the dimension of projective space
        check(st);
        table["h" + std::to_string(q)] = row;
        text << "h^" << q << "  ";
        for (int v : row) text << std::setw(5) << v;
        text << "\n";
      }
      emit(o, {{"command", "cohom"}, {"object", expr}, {"window", {a, b}}, {"table", table}}, text.str());
    } else if (*ext || *tor) {
      const bool is_ext = ext->parsed();
      auto s = open_session(file, o);
      auto m = get_module(s, expr), n = get_module(s, expr2);
      auto [a, b] = parse_window(o.window, {-5, 5});
      json vals = json::object();
      std::string text;
      for (int d = a; d <= b; ++d) {
        int v = 0;
        check(is_ext ? sk_ext_dim(m.get(), n.get(), index, d, &v) : sk_tor_dim(m.get(), n.get(), index, d, &v));
        vals[std::to_string(d)] = v;
        text += std::string(is_ext ? "Ext^" : "Tor_") + std::to_string(index) + " degree " + std::to_string(d) + ": " +
                std::to_string(v) + "\n";
      }
      emit(o, {{"command", is_ext ? "ext" : "tor"}, {"objects", {expr, expr2}}, {"index", index}, {"window", {a, b}}, {"dims", vals}},
           text);
    } else if (*sheafext) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr), n = get_module(s, expr2);
      int v = 0, e = 0;
      check(sk_sheaf_ext(m.get(), n.get(), index, o.agree, &v, &e));
      emit(o, {{"command", "sheafext"}, {"objects", {expr, expr2}}, {"index", index}, {"dim", v}, {"stable_from", e}},
           std::to_string(v) + "\n");
    } else if (*dual) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr);
      sk_module* d = nullptr;
      check(sk_module_dual(m.get(), &d));
      ModulePtr dm(d, sk_module_free);
      char* pres = nullptr;
      check(sk_module_presentation(dm.get(), &pres));
      char* hp = nullptr;
      check(sk_hilbert_polynomial(dm.get(), &hp));
      std::string p = take(pres), h = take(hp);
      emit(o, {{"command", "dual"}, {"object", expr}, {"presentation", p}, {"hilbert_polynomial", h}},
           p + "\nHilbert polynomial " + h + "\n");
    } else if (*beil) {
      auto s = open_session(file, o);
      auto m = get_module(s, expr);
      int sig[5] = {0, 0, 0, 0, 0};
      char* type = nullptr;
      check(sk_beilinson(m.get(), sig, &type));
      std::string t = take(type);
      std::ostringstream text;
      text << "type " << t << "\n  h0(F(x)Omega2(2)) = " << sig[0] << "\n  h0(F(x)Omega1(1)) = " << sig[1]
           << "\n  h0(F) = " << sig[2] << "\n  h0(F(-1)) = " << sig[3] << "\n  h1(F) = " << sig[4] << "\n";
      emit(o,
           {{"command", "beilinson"},
            {"object", expr},
            {"type", t},
            {"h0_omega2", sig[0]},
            {"h0_omega1", sig[1]},
            {"h0", sig[2]},
            {"h0_minus1", sig[3]},
            {"h1", sig[4]}},
           text.str());
    } else if (*wl) {
      auto [lo, hi] = parse_window(chi_range, {wchi - 2 * wd, wchi + 2 * wd});
      char* out = nullptr;
      if (crossing)
        check(sk_crossing_report(wd, wchi, &out));
      else
        check(sk_walls(wd, wchi, lo, hi, all_walls ? 1 : 0, &out));
      json j = json::parse(take(out));
      std::ostringstream text;
      if (j.empty()) text << "no " << (all_walls ? "" : "admissible ") << "walls\n";
      for (const auto& w : j) {
        const json& wall = crossing ? w.at("wall") : w;
        auto piece = [](const json& p) {
          return "(" + std::to_string(p.at("d").get<int>()) + "," + std::to_string(p.at("chi").get<int>()) + "," +
                 (p.at("section").get<bool>() ? "section" : "no-section") + ")";
        };
        text << "alpha=" << wall.at("alpha").get<std::string>() << ": " << piece(wall.at("sub")) << " + "
             << piece(wall.at("quotient"));
        if (all_walls) text << (wall.at("admissible").get<bool>() ? "  admissible" : "  rejected") << " (" << wall.at("reason").get<std::string>() << ")";
        text << "\n";
        if (crossing) {
          text << "  " << w.at("above").at("side").get<std::string>() << ": " << w.at("above").at("display").get<std::string>() << "\n";
          text << "  " << w.at("below").at("side").get<std::string>() << ": " << w.at("below").at("display").get<std::string>() << "\n";
        }
      }
      emit(o, {{"command", "walls"}, {"d", wd}, {"chi", wchi}, {"chi_range", {lo, hi}}, {"walls", j}}, text.str());
    } else if (*verify) {
      if (list_claims) {
        std::cout << sk_catalog_text();
        return kOk;
      }
      if (paper == !claim_file.empty()) throw Failure{SK_ERR_ARGUMENT, "verify needs exactly one of --paper or a claim file"};
      sk_report* r = nullptr;
      if (paper) {
        check(sk_catalog_suite(o.field.empty() ? nullptr : o.field.c_str(), o.agree, &r));
      } else {
        auto s = open_session(claim_file, o);
        check(sk_session_run(s.get(), o.agree, claim_file.c_str(), &r));
      }
      return run_report(r, o);
    }
  } catch (const Failure& f) {
    std::cerr << "sheafkit: " << f.message << "\n";
    return f.status == SK_ERR_MATH || f.status == SK_ERR_INTERNAL ? kComputeError : kInputError;
  }
  return kOk;
}
