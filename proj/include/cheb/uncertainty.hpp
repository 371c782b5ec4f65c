#pragma once

#include <optional>
#include <vector>

#include "cheb/cyclotomic.hpp"
#include "cheb/numeric.hpp"

namespace cheb {

// G = Z_r x Z_m identified with Z_n, n = r*m, gcd(r, m) = 1. The layer G_k is
// the set of i whose Z_r component is k; r = 1 is the degenerate single-layer
// case (plain Z_m).
struct GroupContext {
    unsigned r = 1, m = 1, n = 1;

    GroupContext(unsigned r_, unsigned m_);

    unsigned layer_of(unsigned i) const;

    friend bool operator==(const GroupContext&, const GroupContext&) = default;
};

// Exact function G -> Q(zeta_n); supports are decided by exact zero tests.
class GroupFunction {
public:
    GroupFunction(GroupContext group, CycCtx ctx, std::vector<CycElem> values);

    static GroupFunction zero(const GroupContext& group, const CycCtx& ctx);
    static GroupFunction indicator(const GroupContext& group, const CycCtx& ctx,
                                   const std::vector<unsigned>& support);

    const GroupContext& group() const { return group_; }
    const CycCtx& context() const { return ctx_; }
    const std::vector<CycElem>& values() const { return values_; }

    bool is_zero() const;
    std::vector<unsigned> support() const;

private:
    GroupContext group_;
    CycCtx ctx_;
    std::vector<CycElem> values_;
};

// fhat(j) = sum_i f(i) zeta_n^{ij}: unnormalized, positive exponent.
GroupFunction dft(const GroupFunction& f);

// Conjugate transform scaled by 1/n; inverse of dft.
GroupFunction inverse_dft(const GroupFunction& fhat);

struct SupportProfile {
    std::vector<unsigned> s;      // |supp(f) ^ G_k|
    std::vector<unsigned> s_hat;  // |supp(fhat) ^ Ghat_k|
    unsigned m = 0;
    bool meets_uncertainty = false;  // max_k (s_k + shat_k) >= m + 1
};

SupportProfile support_profile(const GroupFunction& f);

struct FeasibilityResult {
    bool found = false;
    std::vector<unsigned> I, J;
    std::optional<GroupFunction> witness;  // kernel f: supp in I, fhat|_J = 0
    u64 pairs_checked = 0;
};

// Sweeps all layered pairs (|I ^ G_k| = |J ^ Ghat_k| for all k) and tests
// singularity of (zeta_n^{ji}). The first singular pair yields the exact
// kernel witness f, verified against the per-layer support bound before
// returning; an empty sweep certifies the uncertainty principle for (r, m).
FeasibilityResult feasibility_search(unsigned r, unsigned m, u64 max_class_size = 10000000,
                                     bool screening = true);

// Exact kernel witness for a singular layered pair: supp(f) within I,
// fhat|_J = 0, and the per-layer support bound verified before returning.
GroupFunction uncertainty_kernel_witness(unsigned r, unsigned m, const std::vector<unsigned>& I,
                                         const std::vector<unsigned>& J);

struct EquivalenceCheck {
    bool dft_vanishes_on_J = false;
    bool submatrix_singular = false;
    bool layered_bound_holds = false;  // per-layer s_k + shat_k <= m
    bool ok = false;
};

// Concrete check of the support/singularity equivalence for one (I, J, f).
// Preconditions (distinct errors): f nonzero, supp(f) within I, equal layer
// profiles of I and J.
EquivalenceCheck verify_equivalence(unsigned r, unsigned m, const std::vector<unsigned>& I,
                                    const std::vector<unsigned>& J, const GroupFunction& f);

}  // namespace cheb
