#include <iomanip>
#include "json.hpp"
#include <sstream>

#include "ivl/ledger.hpp"

namespace ivl {

std::size_t LedgerReport::count(ClaimStatus s) const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.status == s;
  return n;
}

bool LedgerReport::all_passed() const { return diagnostics.empty() && count(ClaimStatus::Pass) == results.size(); }

std::string LedgerReport::to_text() const {
  std::ostringstream os;
  for (const auto& d : diagnostics) os << d.to_string() << "\n";
  std::size_t w = 8;
  for (const auto& r : results) w = std::max(w, r.claim_id.size());
  double total = 0;
  for (const auto& r : results) {
    total += r.millis;
    os << std::left << std::setw(static_cast<int>(w) + 2) << r.claim_id << std::setw(14) << kind_name(r.kind)
       << std::setw(13) << status_name(r.status) << std::right << std::setw(9) << std::fixed << std::setprecision(1)
       << r.millis << " ms";
    if (r.status != ClaimStatus::Pass && !r.witness.empty()) os << "  " << r.witness;
    os << "\n";
  }
  os << results.size() << " claims: " << count(ClaimStatus::Pass) << " passed, " << count(ClaimStatus::Fail)
     << " failed, " << count(ClaimStatus::Error) << " errors, " << count(ClaimStatus::Inconclusive)
     << " inconclusive (" << std::fixed << std::setprecision(0) << total << " ms)\n";
  return os.str();
}

std::string LedgerReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["claims"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["claim_id"] = r.claim_id;
    c["kind"] = kind_name(r.kind);
    c["paper_ref"] = r.paper_ref;
    c["status"] = status_name(r.status);
    if (!r.witness.empty()) c["witness"] = r.witness;
    c["millis"] = r.millis;
    j["claims"].push_back(std::move(c));
  }
  if (!diagnostics.empty()) {
    j["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : diagnostics)
      j["diagnostics"].push_back({{"line", d.span.line}, {"col", d.span.col}, {"message", d.message}});
  }
  j["summary"] = {{"total", results.size()},
                  {"pass", count(ClaimStatus::Pass)},
                  {"fail", count(ClaimStatus::Fail)},
                  {"error", count(ClaimStatus::Error)},
                  {"inconclusive", count(ClaimStatus::Inconclusive)}};
  return j.dump(2);
}

}  // namespace ivl
