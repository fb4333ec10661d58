#include <set>

#include <gtest/gtest.h>
#include "json.hpp"

#include "ivl/ledger.hpp"

namespace ivl {
namespace {

std::set<std::string> ids(const std::vector<Claim>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.id);
  return out;
}

TEST(BuildLedger, Sections) {
  auto secs = ledger_sections();
  EXPECT_EQ(secs, (std::vector<std::string>{"appendix", "s3", "s4", "s5", "s6", "theorems"}));
  EXPECT_EQ(build_ledger("theorems").size(), 8u);
  EXPECT_TRUE(ids(build_ledger("s4")).count("rel-4.7"));
  EXPECT_THROW(build_ledger("s9"), Error);
}

TEST(BuildLedger, AllIsConcatenation) {
  std::vector<std::string> expected;
  for (const char* s : {"theorems", "s3", "s4", "s5", "s6", "appendix"})
    for (const auto& c : build_ledger(s)) expected.push_back(c.id);
  std::vector<std::string> all;
  for (const auto& c : build_ledger("all")) all.push_back(c.id);
  EXPECT_EQ(all, expected);
  EXPECT_EQ(ids(build_ledger("all")).size(), all.size()) << "claim ids must be unique";
}

TEST(BuildLedger, EveryClaimHasRef) {
  for (const auto& c : build_ledger("all")) {
    EXPECT_FALSE(c.paper_ref.empty()) << c.id;
    EXPECT_FALSE(c.id.empty());
  }
}

TEST(BuildLedger, RequiredClaimsPresent) {
  auto all = ids(build_ledger("all"));
  for (const char* id : {"s3.conj.lambda1", "s3.group.4-33-11", "s4.step6.rho-X1", "rel-4.4a",
                         "rel-5.1", "rel-6.4a", "app.order.sigma"}) {
    EXPECT_TRUE(all.count(id)) << id;
  }
}

TEST(Run, EmptyReport) {
  auto rep = run({});
  EXPECT_TRUE(rep.results.empty());
  EXPECT_TRUE(rep.all_passed());
  auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_TRUE(j["claims"].empty());
}

TEST(Run, TheoremsPassInBothModes) {
  auto claims = build_ledger("theorems");
  auto exact = run(claims);
  auto fast = run(claims, {CheckMode::Probabilistic, 2});
  EXPECT_TRUE(exact.all_passed());
  EXPECT_TRUE(fast.all_passed());
  ASSERT_EQ(exact.results.size(), claims.size());
  for (std::size_t k = 0; k < claims.size(); ++k) EXPECT_EQ(exact.results[k].claim_id, claims[k].id);
}

TEST(Run, IdempotentAndOrderIndependent) {
  auto claims = build_ledger("s3");
  auto a = run(claims);
  std::vector<Claim> rev(claims.rbegin(), claims.rend());
  auto b = run(rev, {CheckMode::Exact, 4});
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t k = 0; k < claims.size(); ++k) {
    const auto& x = a.results[k];
    const auto& y = b.results[claims.size() - 1 - k];
    EXPECT_EQ(x.claim_id, y.claim_id);
    EXPECT_EQ(x.status, y.status);
  }
}

TEST(Run, MutationsFailInBothModes) {
  auto claims = build_ledger("mutations");
  ASSERT_GE(claims.size(), 10u);
  EXPECT_TRUE(ids(claims).count("mut.cyclic-u-misprint"));
  for (auto mode : {CheckMode::Exact, CheckMode::Probabilistic}) {
    auto rep = run(claims, {mode, 4});
    for (const auto& r : rep.results) {
      EXPECT_EQ(r.status, ClaimStatus::Fail) << r.claim_id;
      EXPECT_FALSE(r.witness.empty()) << r.claim_id;
    }
  }
}

TEST(Run, ThrownErrorIsolatedToClaim) {
  Claim bad{"bad", ClaimKind::Identity, "r", "", [](CheckMode) -> ClaimOutcome { throw PoleAtPoint("boom"); }, {}};
  Claim good{"good", ClaimKind::Identity, "r", "", [](CheckMode) { return ClaimOutcome{}; }, {}};
  auto rep = run({bad, good});
  EXPECT_EQ(rep.results[0].status, ClaimStatus::Error);
  EXPECT_EQ(rep.results[1].status, ClaimStatus::Pass);
  EXPECT_FALSE(rep.all_passed());
  EXPECT_EQ(rep.count(ClaimStatus::Error), 1u);
}

TEST(Report, JsonSchema) {
  auto rep = run(build_ledger("appendix"));
  auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j["schema"], 1);
  ASSERT_EQ(j["claims"].size(), rep.results.size());
  for (const auto& c : j["claims"]) {
    for (const char* k : {"claim_id", "kind", "paper_ref", "status", "millis"}) EXPECT_TRUE(c.contains(k)) << k;
    EXPECT_TRUE(c["millis"].is_number());
    EXPECT_EQ(c["status"], "pass");
  }
  EXPECT_TRUE(j.contains("summary"));
  EXPECT_NE(rep.to_text().find("app.order.sigma"), std::string::npos);
}

TEST(Membership, WitnessClaims) {
  VarSet v{"a", "b", "c", "d"};
  auto x = [&](std::size_t k) { return RatFunc::variable(v, k); };
  RatFunc value = (x(0) * x(0) + x(1) * x(1)) * (x(2) * x(2) + x(3) * x(3));
  RatFunc ac = x(0) * x(2), bd = x(1) * x(3), ad = x(0) * x(3), bc = x(1) * x(2);
  RatFunc witness = (ac - bd).pow(2) + (ad + bc).pow(2);
  auto ok = run({membership_witness("m.ok", "(a^2 + b^2)(c^2 + d^2) = (ac - bd)^2 + (ad + bc)^2", value, witness)});
  EXPECT_TRUE(ok.all_passed());
  RatFunc wrong = (ac + bd).pow(2) + (ad + bc).pow(2);
  auto bad = run({membership_witness("m.bad", "sign error", value, wrong)});
  EXPECT_EQ(bad.results[0].status, ClaimStatus::Fail);
  EXPECT_FALSE(bad.results[0].witness.empty());
}

TEST(ComparePairs, Modes) {
  VarSet v{"x"};
  RatFunc x = RatFunc::variable(v, 0);
  IdentityPairs same{{x * x, x * x}}, diff{{x, x + RatFunc(v, FieldElem(1))}};
  EXPECT_EQ(compare_pairs(same, CheckMode::Exact).status, ClaimStatus::Pass);
  EXPECT_EQ(compare_pairs(same, CheckMode::Probabilistic).status, ClaimStatus::Pass);
  EXPECT_EQ(compare_pairs(diff, CheckMode::Exact).status, ClaimStatus::Fail);
  EXPECT_EQ(compare_pairs(diff, CheckMode::Probabilistic).status, ClaimStatus::Fail);
}

}  // namespace
}  // namespace ivl
