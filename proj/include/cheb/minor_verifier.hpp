#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cheb/crt_index.hpp"
#include "cheb/exact_linalg.hpp"
#include "cheb/numeric.hpp"

namespace cheb {

enum class CampaignMode { all_square, principal, layered, single_pair };

std::string to_string(CampaignMode mode);
CampaignMode campaign_mode_from_string(const std::string& s);

struct Sampling {
    bool exhaustive = true;
    u64 count = 0;
    u64 seed = 0;

    friend bool operator==(const Sampling&, const Sampling&) = default;
};

struct CampaignSpec {
    unsigned n = 0;
    CampaignMode mode = CampaignMode::principal;
    unsigned layer_r = 0;  // layered mode: prime layer modulus with gcd(r, n/r) = 1
    unsigned min_size = 1;
    unsigned max_size = 0;  // 0 = no upper bound
    Sampling sampling;
    bool screening = true;
    std::vector<unsigned> single_I, single_J;  // single-pair mode
    u64 max_class_size = 10000000;             // exhaustive ceiling; larger runs are opt-in
    unsigned jobs = 1;                         // 0 = hardware concurrency

    friend bool operator==(const CampaignSpec&, const CampaignSpec&) = default;
};

void validate(const CampaignSpec& spec);

// Exact number of pairs the exhaustive stream would emit.
Int campaign_class_size(const CampaignSpec& spec);

// Deterministic pair stream. Order contract (v1): subsets in lexicographic
// order of their sorted members, J nested inside I; layered pairs grouped by
// layer-size profile, profiles in lexicographic order, per-layer combinations
// odometer-style with layer 0 outermost. Sampled streams draw profiles
// proportional to class size, then sets uniformly, from the documented Lcg64.
class PairEnumerator {
public:
    explicit PairEnumerator(const CampaignSpec& spec);

    bool next(std::vector<unsigned>& I, std::vector<unsigned>& J);
    u64 cursor() const { return cursor_; }
    void skip_to(u64 cursor);  // fast-forward by replay

private:
    bool next_raw(std::vector<unsigned>& I, std::vector<unsigned>& J);
    bool advance_profile();
    void reset_profile_state();
    bool draw_sample(std::vector<unsigned>& I, std::vector<unsigned>& J);

    CampaignSpec spec_;
    u64 cursor_ = 0;
    bool done_ = false;

    // exhaustive state
    std::vector<unsigned> subset_;       // principal / all-square row set
    std::vector<unsigned> col_subset_;   // all-square column set
    std::optional<CrtContext> crt_;      // layered
    std::vector<std::vector<unsigned>> layer_members_;
    std::vector<unsigned> profile_;                    // layer sizes
    std::vector<std::vector<unsigned>> row_choice_;    // per-layer combinations (positions)
    std::vector<std::vector<unsigned>> col_choice_;
    bool emitted_single_ = false;

    // sampled state
    Lcg64 rng_{0};
    u64 samples_left_ = 0;
};

struct CampaignCounts {
    u64 checked = 0;
    u64 nonsingular = 0;
    u64 singular = 0;
    u64 screened_only = 0;
    u64 escalated = 0;

    friend bool operator==(const CampaignCounts&, const CampaignCounts&) = default;
};

struct Finding {
    std::vector<unsigned> I, J;
    DetCertificate certificate;
};

// Hypothesis gate for the two-prime nonsingularity statements: which factor
// of n can serve as p. For n = 2p the layered statement is unconditional;
// for n = p*r (odd primes) it needs p primitive mod r and p > Gamma_r.
struct HypothesisReport {
    enum class Kind { even_two_prime, gated_two_prime, not_applicable };

    struct Orientation {
        unsigned p = 0, r = 0;
        u64 order_p_mod_r = 0;
        bool primitive = false;
        std::string gamma_r;     // exact decimal string of Gamma_r
        bool exceeds_gamma = false;
        bool applicable = false;
    };

    unsigned n = 0;
    Kind kind = Kind::not_applicable;
    unsigned p = 0, r = 0;  // chosen orientation when applicable
    std::vector<Orientation> orientations;
    std::vector<std::string> reasons;  // failure reasons when not applicable
};

HypothesisReport two_prime_hypothesis(unsigned n);

struct CampaignReport {
    CampaignSpec spec;
    Int class_size;  // exhaustive class size (or sample count)
    CampaignCounts counts;
    std::vector<Finding> singular_findings;
    std::optional<HypothesisReport> hypothesis;
    u64 screen_q = 0;
    u64 screen_root = 0;
    bool completed = true;  // false when halted early via hooks
    u64 runtime_ms = 0;     // excluded from determinism comparisons
};

// Resume/progress plumbing: the engine reports cumulative state at every
// progress_stride pairs; a resumed run starts from a recorded cursor.
struct ProgressHooks {
    u64 start_cursor = 0;
    CampaignCounts start_counts;
    std::vector<Finding> start_findings;
    u64 halt_after = 0;  // stop cleanly once this many pairs are checked (0 = off)
    u64 progress_stride = 10000;
    std::function<void(u64 cursor, const CampaignCounts&, const std::vector<Finding>&)> on_progress;
};

CampaignReport run_campaign(const CampaignSpec& spec, const ProgressHooks* hooks = nullptr);

}  // namespace cheb
