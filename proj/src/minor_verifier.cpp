#include "cheb/minor_verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cheb/combinatorics.hpp"
#include "cheb/zhang_gamma.hpp"

namespace cheb {

std::string to_string(CampaignMode mode) {
    switch (mode) {
        case CampaignMode::all_square: return "all-square";
        case CampaignMode::principal: return "principal";
        case CampaignMode::layered: return "layered";
        case CampaignMode::single_pair: return "single-pair";
    }
    throw std::logic_error("to_string(CampaignMode): bad mode");
}

CampaignMode campaign_mode_from_string(const std::string& s) {
    if (s == "all-square") return CampaignMode::all_square;
    if (s == "principal") return CampaignMode::principal;
    if (s == "layered") return CampaignMode::layered;
    if (s == "single-pair") return CampaignMode::single_pair;
    throw std::invalid_argument("unknown campaign mode: " + s);
}

void validate(const CampaignSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("campaign: n must be >= 2");
    if (spec.min_size < 1) throw std::invalid_argument("campaign: min_size must be >= 1");
    if (spec.max_size != 0 && spec.max_size < spec.min_size)
        throw std::invalid_argument("campaign: empty size range");
    if (spec.mode == CampaignMode::layered) {
        if (spec.layer_r == 0) throw std::invalid_argument("campaign: layered mode needs layer modulus r");
        CrtContext check(spec.n, spec.layer_r);  // validates r | n, coprimality
        (void)check;
    }
    if (spec.mode == CampaignMode::single_pair) {
        if (spec.single_I.size() != spec.single_J.size() || spec.single_I.empty())
            throw std::invalid_argument("campaign: single-pair needs |I| = |J| >= 1");
        for (unsigned v : spec.single_I)
            if (v >= spec.n) throw std::out_of_range("campaign: I index out of range");
        for (unsigned v : spec.single_J)
            if (v >= spec.n) throw std::out_of_range("campaign: J index out of range");
    }
    if (!spec.sampling.exhaustive && spec.sampling.count == 0)
        throw std::invalid_argument("campaign: sampled run needs a positive sample count");
}

namespace {

unsigned effective_max(const CampaignSpec& spec) {
    unsigned cap = spec.mode == CampaignMode::layered ? spec.n : spec.n;
    return spec.max_size == 0 ? cap : std::min(spec.max_size, cap);
}

}  // namespace

Int campaign_class_size(const CampaignSpec& spec) {
    validate(spec);
    if (spec.mode == CampaignMode::single_pair) return 1;
    if (!spec.sampling.exhaustive) return Int(static_cast<unsigned long>(spec.sampling.count));
    const unsigned lo = spec.min_size, hi = effective_max(spec);
    Int total(0);
    switch (spec.mode) {
        case CampaignMode::principal:
            for (unsigned k = lo; k <= std::min(hi, spec.n); ++k) total += binomial(spec.n, k);
            break;
        case CampaignMode::all_square:
            for (unsigned k = lo; k <= std::min(hi, spec.n); ++k) {
                Int c = binomial(spec.n, k);
                total += c * c;
            }
            break;
        case CampaignMode::layered: {
            const unsigned r = spec.layer_r, m = spec.n / spec.layer_r;
            // dp over layers of sum-of-products of C(m, s)^2 by total size
            std::vector<Int> dp{Int(1)};
            std::vector<Int> w(m + 1);
            for (unsigned s = 0; s <= m; ++s) {
                Int c = binomial(m, s);
                w[s] = c * c;
            }
            for (unsigned layer = 0; layer < r; ++layer) {
                std::vector<Int> next(dp.size() + m, Int(0));
                for (size_t t = 0; t < dp.size(); ++t)
                    for (unsigned s = 0; s <= m; ++s) next[t + s] += dp[t] * w[s];
                dp = std::move(next);
            }
            for (unsigned t = lo; t <= std::min<unsigned>(hi, spec.n) && t < dp.size(); ++t)
                total += dp[t];
            break;
        }
        case CampaignMode::single_pair: break;
    }
    return total;
}

PairEnumerator::PairEnumerator(const CampaignSpec& spec) : spec_(spec), rng_(spec.sampling.seed) {
    validate(spec_);
    if (!spec_.sampling.exhaustive) {
        samples_left_ = spec_.sampling.count;
    }
    switch (spec_.mode) {
        case CampaignMode::principal:
        case CampaignMode::all_square:
            subset_ = {0};
            col_subset_ = first_combination(1);
            break;
        case CampaignMode::layered: {
            crt_.emplace(spec_.n, spec_.layer_r);
            layer_members_.assign(crt_->r, {});
            for (unsigned i = 0; i < spec_.n; ++i)
                layer_members_[crt_split(*crt_, i).b].push_back(i);
            for (auto& l : layer_members_) std::sort(l.begin(), l.end());
            profile_.assign(crt_->r, 0);
            profile_.back() = 0;  // advance_profile() moves to the first nonempty profile
            if (spec_.sampling.exhaustive && !advance_profile())
                done_ = true;
            break;
        }
        case CampaignMode::single_pair: break;
    }
}

bool PairEnumerator::advance_profile() {
    const unsigned m = crt_->m;
    while (true) {
        // odometer increment over profiles, lexicographic ascending
        int pos = static_cast<int>(profile_.size()) - 1;
        while (pos >= 0) {
            if (profile_[static_cast<unsigned>(pos)] < m) {
                ++profile_[static_cast<unsigned>(pos)];
                for (size_t j = static_cast<size_t>(pos) + 1; j < profile_.size(); ++j) profile_[j] = 0;
                break;
            }
            --pos;
        }
        if (pos < 0) return false;
        unsigned total = 0;
        for (unsigned s : profile_) total += s;
        if (total >= spec_.min_size && total <= effective_max(spec_)) {
            reset_profile_state();
            return true;
        }
    }
}

void PairEnumerator::reset_profile_state() {
    const unsigned r = crt_->r;
    row_choice_.assign(r, {});
    col_choice_.assign(r, {});
    for (unsigned k = 0; k < r; ++k) {
        row_choice_[k] = first_combination(profile_[k]);
        col_choice_[k] = first_combination(profile_[k]);
    }
}

bool PairEnumerator::next_raw(std::vector<unsigned>& I, std::vector<unsigned>& J) {
    if (done_) return false;
    if (!spec_.sampling.exhaustive) {
        if (samples_left_ == 0) return false;
        --samples_left_;
        return draw_sample(I, J);
    }
    switch (spec_.mode) {
        case CampaignMode::single_pair: {
            if (emitted_single_) return false;
            emitted_single_ = true;
            I = spec_.single_I;
            J = spec_.single_J;
            std::sort(I.begin(), I.end());
            std::sort(J.begin(), J.end());
            return true;
        }
        case CampaignMode::principal: {
            while (subset_.size() < spec_.min_size || subset_.size() > effective_max(spec_)) {
                if (!next_subset_lex(subset_, spec_.n)) {
                    done_ = true;
                    return false;
                }
            }
            I = subset_;
            J = subset_;
            if (!next_subset_lex(subset_, spec_.n)) done_ = true;
            return true;
        }
        case CampaignMode::all_square: {
            while (subset_.size() < spec_.min_size || subset_.size() > effective_max(spec_)) {
                if (!next_subset_lex(subset_, spec_.n)) {
                    done_ = true;
                    return false;
                }
                col_subset_ = first_combination(static_cast<unsigned>(subset_.size()));
            }
            I = subset_;
            J = col_subset_;
            if (!next_combination(col_subset_, spec_.n)) {
                if (!next_subset_lex(subset_, spec_.n)) {
                    done_ = true;
                } else {
                    col_subset_ = first_combination(static_cast<unsigned>(subset_.size()));
                }
            }
            return true;
        }
        case CampaignMode::layered: {
            const unsigned r = crt_->r;
            I.clear();
            J.clear();
            for (unsigned k = 0; k < r; ++k) {
                for (unsigned pos : row_choice_[k]) I.push_back(layer_members_[k][pos]);
                for (unsigned pos : col_choice_[k]) J.push_back(layer_members_[k][pos]);
            }
            std::sort(I.begin(), I.end());
            std::sort(J.begin(), J.end());
            // advance: J odometer first (layer r-1 fastest), then I, then profile
            int k = static_cast<int>(r) - 1;
            while (k >= 0) {
                if (next_combination(col_choice_[static_cast<unsigned>(k)], crt_->m)) break;
                col_choice_[static_cast<unsigned>(k)] = first_combination(profile_[static_cast<unsigned>(k)]);
                --k;
            }
            if (k < 0) {
                k = static_cast<int>(r) - 1;
                while (k >= 0) {
                    if (next_combination(row_choice_[static_cast<unsigned>(k)], crt_->m)) break;
                    row_choice_[static_cast<unsigned>(k)] =
                        first_combination(profile_[static_cast<unsigned>(k)]);
                    --k;
                }
                if (k < 0 && !advance_profile()) done_ = true;
            }
            return true;
        }
    }
    return false;
}

bool PairEnumerator::draw_sample(std::vector<unsigned>& I, std::vector<unsigned>& J) {
    const unsigned n = spec_.n;
    const unsigned lo = spec_.min_size, hi = effective_max(spec_);
    switch (spec_.mode) {
        case CampaignMode::principal:
        case CampaignMode::all_square: {
            bool square = spec_.mode == CampaignMode::all_square;
            std::vector<u64> weights(hi + 1, 0);
            u64 total = 0;
            for (unsigned k = lo; k <= hi && k <= n; ++k) {
                Int w = binomial(n, k);
                if (square) w *= binomial(n, k);
                if (!w.fits_ulong_p()) throw std::length_error("sampling: class too large for draw");
                weights[k] = w.get_ui();
                total += weights[k];
            }
            u64 u = rng_.below(total);
            unsigned k = lo;
            while (u >= weights[k]) {
                u -= weights[k];
                ++k;
            }
            Int ci = binomial(n, k);
            I = unrank_combination(n, k, Int(static_cast<unsigned long>(rng_.below(ci.get_ui()))));
            J = square
                    ? unrank_combination(n, k, Int(static_cast<unsigned long>(rng_.below(ci.get_ui()))))
                    : I;
            return true;
        }
        case CampaignMode::layered: {
            const unsigned r = crt_->r, m = crt_->m;
            std::vector<u64> w(m + 1);
            u64 wsum = 0;
            for (unsigned s = 0; s <= m; ++s) {
                Int c = binomial(m, s);
                c *= c;
                w[s] = c.get_ui();
                wsum += w[s];
            }
            std::vector<unsigned> sizes(r);
            while (true) {
                unsigned total = 0;
                for (unsigned k = 0; k < r; ++k) {
                    u64 u = rng_.below(wsum);
                    unsigned s = 0;
                    while (u >= w[s]) {
                        u -= w[s];
                        ++s;
                    }
                    sizes[k] = s;
                    total += s;
                }
                if (total >= lo && total <= hi) break;
            }
            I.clear();
            J.clear();
            for (unsigned k = 0; k < r; ++k) {
                Int c = binomial(m, sizes[k]);
                auto pick_I = unrank_combination(m, sizes[k],
                                                 Int(static_cast<unsigned long>(rng_.below(c.get_ui()))));
                for (unsigned pos : pick_I) I.push_back(layer_members_[k][pos]);
            }
            for (unsigned k = 0; k < r; ++k) {
                Int c = binomial(m, sizes[k]);
                auto pick_J = unrank_combination(m, sizes[k],
                                                 Int(static_cast<unsigned long>(rng_.below(c.get_ui()))));
                for (unsigned pos : pick_J) J.push_back(layer_members_[k][pos]);
            }
            std::sort(I.begin(), I.end());
            std::sort(J.begin(), J.end());
            return true;
        }
        case CampaignMode::single_pair:
            throw std::logic_error("draw_sample: single-pair mode is never sampled");
    }
    return false;
}

bool PairEnumerator::next(std::vector<unsigned>& I, std::vector<unsigned>& J) {
    if (!next_raw(I, J)) return false;
    ++cursor_;
    return true;
}

void PairEnumerator::skip_to(u64 cursor) {
    std::vector<unsigned> I, J;
    while (cursor_ < cursor) {
        if (!next(I, J)) throw std::out_of_range("PairEnumerator::skip_to: cursor beyond stream");
    }
}

HypothesisReport two_prime_hypothesis(unsigned n) {
    HypothesisReport report;
    report.n = n;
    std::vector<unsigned> factors;
    unsigned rest = n;
    for (unsigned d = 2; d <= rest; ++d) {
        if (rest % d == 0) {
            unsigned count = 0;
            while (rest % d == 0) {
                rest /= d;
                ++count;
            }
            if (count > 1) throw std::invalid_argument("two_prime_hypothesis: n is not square-free");
            factors.push_back(d);
        }
    }
    if (factors.size() != 2)
        throw std::invalid_argument(
            "two_prime_hypothesis: n must be a product of two distinct primes");

    if (factors[0] == 2) {
        if (factors[1] < 3) throw std::invalid_argument("two_prime_hypothesis: bad factorization");
        report.kind = HypothesisReport::Kind::even_two_prime;
        report.p = factors[1];
        report.r = 2;
        report.reasons.push_back("n = 2p with p odd: the layered statement applies unconditionally");
        return report;
    }

    // Two odd primes: try the larger factor as p first.
    std::vector<std::pair<unsigned, unsigned>> orientations{{factors[1], factors[0]},
                                                            {factors[0], factors[1]}};
    for (auto [p, r] : orientations) {
        HypothesisReport::Orientation o;
        o.p = p;
        o.r = r;
        o.order_p_mod_r = mult_order(p, r);
        o.primitive = o.order_p_mod_r == r - 1;
        GammaTable gt = gamma_capital(r);
        o.gamma_r = to_decimal(gt.gamma_capital);
        o.exceeds_gamma = Rat(p) > gt.gamma_capital;
        o.applicable = o.primitive && o.exceeds_gamma;
        if (!o.primitive) {
            std::ostringstream msg;
            msg << "order of " << p << " in Z_" << r << "^* is " << o.order_p_mod_r << ", not "
                << (r - 1);
            report.reasons.push_back(msg.str());
        } else if (!o.exceeds_gamma) {
            std::ostringstream msg;
            msg << p << " is not greater than Gamma_" << r << " = " << o.gamma_r;
            report.reasons.push_back(msg.str());
        }
        report.orientations.push_back(std::move(o));
    }
    for (const auto& o : report.orientations) {
        if (o.applicable) {
            report.kind = HypothesisReport::Kind::gated_two_prime;
            report.p = o.p;
            report.r = o.r;
            report.reasons.clear();
            return report;
        }
    }
    report.kind = HypothesisReport::Kind::not_applicable;
    return report;
}

namespace {

struct PairBatch {
    std::vector<std::vector<unsigned>> I, J;
    std::vector<uint8_t> verdict;  // 0 screened nonsingular, 1 exact nonsingular, 2 singular
};

void certify_batch(const SubmatrixCertifier& certifier, PairBatch& batch, unsigned jobs) {
    const size_t count = batch.I.size();
    batch.verdict.assign(count, 0);
    auto work = [&](std::atomic<size_t>& next) {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= count) break;
            auto result = certifier.certify(batch.I[idx], batch.J[idx]);
            batch.verdict[idx] = result.nonsingular ? (result.screened_only ? 0 : 1) : 2;
        }
    };
    if (jobs <= 1) {
        std::atomic<size_t> next{0};
        work(next);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back([&] { work(next); });
    for (auto& th : pool) th.join();
}

}  // namespace

CampaignReport run_campaign(const CampaignSpec& spec, const ProgressHooks* hooks) {
    validate(spec);
    const auto t0 = std::chrono::steady_clock::now();

    CampaignReport report;
    report.spec = spec;
    report.class_size = campaign_class_size(spec);
    if (spec.sampling.exhaustive && report.class_size > Int(static_cast<unsigned long>(spec.max_class_size))) {
        std::ostringstream msg;
        msg << "campaign: exhaustive class has " << report.class_size.get_str()
            << " pairs, above the ceiling " << spec.max_class_size
            << "; raise --max-class-size or use --samples";
        throw std::length_error(msg.str());
    }

    CycCtx ctx = make_cyclotomic_context(spec.n);
    SubmatrixCertifier certifier(ctx, spec.screening);
    if (certifier.screen()) {
        report.screen_q = certifier.screen()->q;
        report.screen_root = certifier.screen()->root;
    }

    try {
        report.hypothesis = two_prime_hypothesis(spec.n);
    } catch (const std::invalid_argument&) {
        report.hypothesis.reset();  // n not of the 2p / pq shape
    }

    unsigned jobs = spec.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.jobs;
    u64 stride = hooks && hooks->progress_stride ? hooks->progress_stride : 10000;

    PairEnumerator en(spec);
    CampaignCounts counts;
    std::vector<Finding> findings;
    if (hooks) {
        counts = hooks->start_counts;
        findings = hooks->start_findings;
        en.skip_to(hooks->start_cursor);
    }

    PairBatch batch;
    std::vector<unsigned> I, J;
    bool stream_open = true;
    while (stream_open) {
        batch.I.clear();
        batch.J.clear();
        u64 budget = stride;
        if (hooks && hooks->halt_after > 0) {
            if (en.cursor() >= hooks->halt_after) {
                report.completed = false;
                break;
            }
            budget = std::min<u64>(budget, hooks->halt_after - en.cursor());
        }
        while (budget-- > 0 && (stream_open = en.next(I, J))) {
            batch.I.push_back(I);
            batch.J.push_back(J);
        }
        if (batch.I.empty()) break;

        certify_batch(certifier, batch, jobs);

        for (size_t i = 0; i < batch.I.size(); ++i) {
            ++counts.checked;
            switch (batch.verdict[i]) {
                case 0:
                    ++counts.nonsingular;
                    ++counts.screened_only;
                    break;
                case 1:
                    ++counts.nonsingular;
                    ++counts.escalated;
                    break;
                case 2: {
                    ++counts.singular;
                    ++counts.escalated;
                    Finding f;
                    f.I = batch.I[i];
                    f.J = batch.J[i];
                    f.certificate = certifier.certificate(f.I, f.J);
                    findings.push_back(std::move(f));
                    break;
                }
            }
        }
        if (hooks && hooks->on_progress) hooks->on_progress(en.cursor(), counts, findings);
    }

    report.counts = counts;
    report.singular_findings = std::move(findings);
    report.runtime_ms = static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count());
    return report;
}

}  // namespace cheb
