#pragma once

// Claims, the runner that checks them, and the built-in ledger.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivl/dsl.hpp"
#include "ivl/ratfunc.hpp"

namespace ivl {

enum class ClaimKind { Identity, Invariance, GroupOrder, MatrixEq, Rank, ActionMatches };

const char* kind_name(ClaimKind k);

enum class CheckMode {
  Exact,          // eq_exact only
  Probabilistic,  // probable_eq first; exact check confirms a pass
};

enum class ClaimStatus { Pass, Fail, Error, Inconclusive };

const char* status_name(ClaimStatus s);

struct ClaimOutcome {
  ClaimStatus status = ClaimStatus::Pass;
  std::string witness;  // counterexample, error text or certificate detail
};

// Pairs of rational functions that must agree for the claim to hold.
using IdentityPairs = std::vector<std::pair<RatFunc, RatFunc>>;

struct Claim {
  std::string id;
  ClaimKind kind = ClaimKind::Identity;
  std::string paper_ref;  // the mathematical statement checked
  std::string expected;
  std::function<ClaimOutcome(CheckMode)> check;
  // Set for claims that reduce to function identities.
  std::function<IdentityPairs()> pairs;
};

struct ClaimResult {
  std::string claim_id;
  ClaimKind kind = ClaimKind::Identity;
  std::string paper_ref;
  ClaimStatus status = ClaimStatus::Pass;
  std::string witness;
  double millis = 0;
};

struct LedgerReport {
  std::vector<ClaimResult> results;  // in claim order
  std::vector<dsl::Diagnostic> diagnostics;

  std::size_t count(ClaimStatus s) const;
  bool all_passed() const;
  // Fixed-width table, one row per claim, then a summary line.
  std::string to_text() const;
  // {"schema":1,"claims":[...],"summary":{...}}
  std::string to_json() const;
};

struct RunOptions {
  CheckMode mode = CheckMode::Exact;
  unsigned threads = 1;
};

// A thrown ivl::Error becomes an Error status on that claim only.
LedgerReport run(const std::vector<Claim>& claims, const RunOptions& opt = {});

// Comparison used by identity-type claims; the witness describes the first
// disagreement.
ClaimOutcome compare_pairs(const IdentityPairs& pairs, CheckMode mode);

// Claim that `value` equals the `witness` expression, e.g. a norm form
// exhibiting membership in a subgroup of squares.
Claim membership_witness(std::string id, std::string paper_ref, RatFunc value, RatFunc witness);

// ---- scripts

// Bindings of a compiled script: variables, lets, matrices, automorphisms
// and charts.
class ScriptContext;

struct CompiledScript {
  std::vector<Claim> claims;
  std::vector<dsl::Diagnostic> diagnostics;
  std::shared_ptr<const ScriptContext> context;
  bool ok() const { return diagnostics.empty(); }
};

const VarSet& context_vars(const ScriptContext& c);
const FieldDescriptor& context_field(const ScriptContext& c);
// Evaluates an expression against the script's bindings. Throws Error for
// unknown names and for failed arithmetic.
RatFunc evaluate(const ScriptContext& c, const dsl::Expr& e);

// Resolves names, builds automorphisms and charts, and packages each assert
// as a claim. Never throws; problems become diagnostics.
CompiledScript compile(const dsl::Script& script);
CompiledScript compile_source(std::string_view source);

// Parse, compile and run. Parse or resolution problems are returned as
// diagnostics with no results.
LedgerReport execute(std::string_view source, const RunOptions& opt = {});

struct EmbeddedScript {
  const char* name;
  const char* text;
};

// The ledger scripts compiled into the binary, in file-name order.
const std::vector<EmbeddedScript>& embedded_scripts();

// Section names of the built-in ledger (script names without the suffix),
// excluding the mutation scripts (names starting with "mutations").
std::vector<std::string> ledger_sections();

// "all" or a section name; "mutations" selects the corrupted claims of every
// mutation script, which are expected to fail. Throws Error for unknown sections or a script that
// does not compile.
std::vector<Claim> build_ledger(std::string_view section = "all");

}  // namespace ivl
