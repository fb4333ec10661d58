#include "ivl/ledger.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "ivl/errors.hpp"

namespace ivl {

const char* kind_name(ClaimKind k) {
  switch (k) {
    case ClaimKind::Identity: return "Identity";
    case ClaimKind::Invariance: return "Invariance";
    case ClaimKind::GroupOrder: return "GroupOrder";
    case ClaimKind::MatrixEq: return "MatrixEq";
    case ClaimKind::Rank: return "Rank";
    case ClaimKind::ActionMatches: return "ActionMatches";
  }
  return "?";
}

const char* status_name(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Error: return "error";
    case ClaimStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::string clip(std::string s, std::size_t limit = 400) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit) + "... (" + std::to_string(s.size()) + " chars)";
}

ClaimResult run_one(const Claim& c, CheckMode mode) {
  ClaimResult r;
  r.claim_id = c.id;
  r.kind = c.kind;
  r.paper_ref = c.paper_ref;
  auto t0 = std::chrono::steady_clock::now();
  try {
    if (!c.check) throw Error("claim has no check");
    ClaimOutcome o = c.check(mode);
    r.status = o.status;
    r.witness = std::move(o.witness);
  } catch (const std::exception& e) {
    r.status = ClaimStatus::Error;
    r.witness = e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

ClaimOutcome compare_pairs(const IdentityPairs& pairs, CheckMode mode) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [lhs, rhs] = pairs[i];
    std::string where = pairs.size() > 1 ? "component " + std::to_string(i + 1) + ": " : "";
    if (mode == CheckMode::Probabilistic) {
      auto pr = probable_eq_detail(lhs, rhs, ProbableEqOptions{});
      if (!pr.equal) {
        std::ostringstream os;
        os << where << "values differ at (";
        auto sup = lhs.vars().names();
        for (std::size_t k = 0; k < pr.witness.size(); ++k)
          os << (k ? ", " : "") << sup[k] << "=" << to_string(pr.witness[k]);
        os << ")";
        return {ClaimStatus::Fail, os.str()};
      }
    }
    if (!eq_exact(lhs, rhs)) {
      RatFunc diff = lhs - rhs;
      return {ClaimStatus::Fail, where + "difference " + clip(diff.num().to_string())};
    }
  }
  return {ClaimStatus::Pass, ""};
}

Claim membership_witness(std::string id, std::string paper_ref, RatFunc value, RatFunc witness) {
  Claim c;
  c.id = std::move(id);
  c.kind = ClaimKind::Identity;
  c.expected = value.to_string() + " = " + witness.to_string();
  c.paper_ref = paper_ref.empty() ? c.expected : std::move(paper_ref);
  c.pairs = [value, witness] { return IdentityPairs{{value, witness}}; };
  c.check = [pairs = c.pairs](CheckMode mode) { return compare_pairs(pairs(), mode); };
  return c;
}

LedgerReport run(const std::vector<Claim>& claims, const RunOptions& opt) {
  LedgerReport rep;
  rep.results.resize(claims.size());
  unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(claims.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < claims.size(); ++i) rep.results[i] = run_one(claims[i], opt.mode);
    return rep;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < claims.size();) rep.results[i] = run_one(claims[i], opt.mode);
    });
  }
  for (auto& th : pool) th.join();
  return rep;
}

namespace {

bool is_mutation_script(std::string_view name) { return name.starts_with("mutations"); }

}  // namespace

std::vector<std::string> ledger_sections() {
  std::vector<std::string> out;
  for (const auto& s : embedded_scripts()) {
    if (!is_mutation_script(s.name)) out.emplace_back(s.name);
  }
  return out;
}

namespace {

const EmbeddedScript* find_script(std::string_view name) {
  for (const auto& s : embedded_scripts()) {
    if (name == s.name) return &s;
  }
  return nullptr;
}

std::vector<Claim> compile_embedded(const EmbeddedScript& s) {
  CompiledScript c = compile_source(s.text);
  if (!c.ok()) {
    std::string msg = std::string("built-in script '") + s.name + "' does not compile:";
    for (const auto& d : c.diagnostics) msg += "\n  " + d.to_string();
    throw Error(msg);
  }
  return std::move(c.claims);
}

}  // namespace

std::vector<Claim> build_ledger(std::string_view section) {
  // Fixed reading order, matching the order of the text.
  static const char* kOrder[] = {"theorems", "s3", "s4", "s5", "s6", "appendix"};
  if (section == "all") {
    std::vector<Claim> out;
    for (const char* name : kOrder) {
      const EmbeddedScript* s = find_script(name);
      if (!s) throw Error(std::string("missing built-in script '") + name + "'");
      auto part = compile_embedded(*s);
      for (auto& c : part) out.push_back(std::move(c));
    }
    return out;
  }
  if (section == "mutations") {
    std::vector<Claim> out;
    for (const auto& s : embedded_scripts()) {
      if (!is_mutation_script(s.name)) continue;
      auto part = compile_embedded(s);
      for (auto& c : part) out.push_back(std::move(c));
    }
    return out;
  }
  const EmbeddedScript* s = find_script(section);
  if (!s) throw Error("unknown ledger section '" + std::string(section) + "'");
  return compile_embedded(*s);
}

}  // namespace ivl
