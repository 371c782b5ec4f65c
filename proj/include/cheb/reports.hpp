#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cheb/minor_verifier.hpp"
#include "cheb/uncertainty.hpp"
#include "cheb/zhang_gamma.hpp"

namespace cheb {

using json = nlohmann::ordered_json;

// Version tag of the pair-enumeration order contract. Changing the order in
// PairEnumerator requires bumping this string: progress cursors are only
// meaningful against a fixed order.
inline constexpr std::string_view kEnumContractName = "pair-enumeration-contract-v1";
u64 enum_contract_hash();

// Canonical text form of a spec; identifies a campaign for resume purposes.
// Excludes jobs (parallelism does not change the stream).
std::string canonical_spec_string(const CampaignSpec& spec);
u64 spec_hash(const CampaignSpec& spec);

json to_json(const CampaignSpec& spec);
CampaignSpec campaign_spec_from_json(const json& j);

// Element/set wire forms. Layers of an index set are derived data and are
// always recomputed on load; coefficients travel as decimal strings.
json to_json(const LayeredIndexSet& set);
LayeredIndexSet layered_set_from_json(const json& j);

json to_json(const CycElem& elem);
CycElem cyc_elem_from_json(const json& j);

json to_json(const FFElem& elem);
FFElem ff_elem_from_json(const json& j);

json to_json(const DetCertificate& cert);
DetCertificate certificate_from_json(const json& j);

json to_json(const Finding& finding);
Finding finding_from_json(const json& j);

json to_json(const CampaignCounts& counts);
CampaignCounts counts_from_json(const json& j);

json to_json(const HypothesisReport& hyp);
HypothesisReport hypothesis_from_json(const json& j);

json to_json(const CampaignReport& report);
CampaignReport campaign_report_from_json(const json& j);

json to_json(const GammaTable& table);
json to_json(const ZhangReport& report);
json feasibility_to_json(unsigned r, unsigned m, const FeasibilityResult& result);

// JSONL progress log: one cumulative line every progress stride, atomic
// appends from the single aggregator thread.
struct ResumeState {
    u64 cursor = 0;
    CampaignCounts counts;
    std::vector<Finding> findings;
};

class ProgressLog {
public:
    ProgressLog(std::filesystem::path path, u64 spec_hash);

    void append(u64 cursor, const CampaignCounts& counts, const std::vector<Finding>& findings);

    // nullopt when the log does not exist; throws std::domain_error when the
    // recorded spec or enumeration-contract hash does not match.
    static std::optional<ResumeState> load(const std::filesystem::path& path, u64 expected_spec_hash);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    u64 spec_hash_;
};

// CHEB_CACHE_DIR (default ".cheb-cache"), file keyed by the spec hash.
std::filesystem::path progress_path(const CampaignSpec& spec);

}  // namespace cheb
