#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sheafkit/scenarios.hpp"
#include "sheafkit/walls.hpp"

namespace sheafkit {

// A claim line: `claim <id>: <op>(<args>) = <expected> [cite "<text>"]`.
struct ClaimSpec {
  std::string id;
  std::string op;
  std::vector<std::string> args;
  std::string expected;
  std::string citation;
  bool qq_only = false;  // `claim id [qq]: ...`; skipped over prime fields
  int line = 0;
};

// "QQ" or "Fp:<p>".
Field parse_field(std::string_view text);

struct SessionOptions {
  // Overrides the field named in the `ring` line (and the field fixtures are built over).
  std::optional<Field> field;
};

// One ring, named objects, and claims. Module definitions are evaluated while
// parsing, so a successfully parsed session holds only validated objects.
class Session {
 public:
  RingPtr ring;
  std::map<std::string, Ideal> ideals;
  std::map<std::string, GradedMatrix> matrices;
  std::map<std::string, ModulePresentation> modules;
  std::map<std::string, std::vector<Scalar>> points;
  std::map<std::string, std::string> fixtures;  // alias -> fixture name
  std::vector<ClaimSpec> claims;

  // Expression evaluation. Names, `alias.key` fixture references and calls such
  // as twist(M, -1), tensor(A, B), tor(1, A, B) are accepted (see the README).
  ModulePresentation module(std::string_view expr) const;
  GradedMatrix matrix(std::string_view expr) const;
  Ideal ideal(std::string_view expr) const;
  std::vector<Scalar> point(std::string_view expr) const;

  const Fixture& fixture(const std::string& alias) const;
};

Session parse_session(std::string_view text, const SessionOptions& opt = {});

// Result of evaluating a claim operation, in canonical text form.
struct ClaimValue {
  enum class Kind { Integer, Boolean, Text, List, Polynomial, Betti, Ideal };
  Kind kind = Kind::Text;
  std::string text;
};

struct OperationInfo {
  std::string name;
  int min_args = 0;
  int max_args = 0;
  ClaimValue::Kind result;
  std::string signature;  // e.g. "sheaf_ext(M, N, i)"
};
const std::vector<OperationInfo>& claim_operations();

ClaimValue evaluate_claim(const Session& s, const ClaimSpec& c, int agree = 3);
// Exact comparison of a computed value with the expected literal of the claim.
bool claim_matches(const ClaimValue& computed, const std::string& expected, const RingPtr& ring);

enum class ClaimStatus { Pass, Fail, Skipped };
std::string status_name(ClaimStatus s);

struct ClaimResult {
  std::string id;
  std::string operation;  // the claim's computation as written
  std::string expected;
  std::string computed;
  std::string citation;
  std::string detail;  // error message on failure, skip reason when skipped
  ClaimStatus status = ClaimStatus::Skipped;
  double seconds = 0;

  bool operator==(const ClaimResult& o) const;
};

struct Report {
  static constexpr const char* kSchema = "sheafkit.report/1";
  std::string schema = kSchema;
  std::string tool_version;
  std::string field;
  std::string source;  // "catalog" or a file name
  std::map<std::string, std::string> windows;  // parameters that shape windowed computations
  std::vector<ClaimResult> claims;

  int count(ClaimStatus s) const;
  bool all_passed() const { return count(ClaimStatus::Fail) == 0; }
  std::string to_json(int indent = 2) const;
  static Report from_json(std::string_view text);
  std::string to_text() const;
  bool operator==(const Report& o) const;
};

const char* tool_version();

struct RunOptions {
  std::optional<Field> field;
  int agree = 3;  // consecutive agreeing truncations required by sheaf Ext
};

Report run_claims(const Session& s, const RunOptions& opt = {}, const std::string& source = "session");
// The shipped claim catalog (embedded at build time).
std::string_view catalog_text();
Report catalog_suite(const RunOptions& opt = {});

}  // namespace sheafkit
