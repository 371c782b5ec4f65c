#include "cheb/uncertainty.hpp"

#include <algorithm>
#include <stdexcept>

#include "cheb/crt_index.hpp"
#include "cheb/exact_linalg.hpp"
#include "cheb/minor_verifier.hpp"

namespace cheb {

GroupContext::GroupContext(unsigned r_, unsigned m_) : r(r_), m(m_), n(r_ * m_) {
    if (r == 0 || m == 0) throw std::invalid_argument("GroupContext: r, m must be positive");
    if (gcd_u64(r, m) != 1) throw std::invalid_argument("GroupContext: gcd(r, m) != 1");
    if (n < 2) throw std::invalid_argument("GroupContext: group must have at least 2 elements");
}

unsigned GroupContext::layer_of(unsigned i) const {
    if (i >= n) throw std::out_of_range("GroupContext::layer_of: index out of range");
    if (r == 1) return 0;
    return crt_split(CrtContext(n, r), i).b;
}

GroupFunction::GroupFunction(GroupContext group, CycCtx ctx, std::vector<CycElem> values)
    : group_(group), ctx_(std::move(ctx)), values_(std::move(values)) {
    if (!ctx_ || ctx_->n() != group_.n)
        throw std::invalid_argument("GroupFunction: cyclotomic context must match |G|");
    if (values_.size() != group_.n)
        throw std::invalid_argument("GroupFunction: need one value per group element");
}

GroupFunction GroupFunction::zero(const GroupContext& group, const CycCtx& ctx) {
    return GroupFunction(group, ctx, std::vector<CycElem>(group.n, CycElem::zero(ctx)));
}

GroupFunction GroupFunction::indicator(const GroupContext& group, const CycCtx& ctx,
                                       const std::vector<unsigned>& support) {
    std::vector<CycElem> values(group.n, CycElem::zero(ctx));
    for (unsigned i : support) {
        if (i >= group.n) throw std::out_of_range("GroupFunction::indicator: index out of range");
        values[i] = CycElem::one(ctx);
    }
    return GroupFunction(group, ctx, std::move(values));
}

bool GroupFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const CycElem& v) { return v.is_zero(); });
}

std::vector<unsigned> GroupFunction::support() const {
    std::vector<unsigned> s;
    for (unsigned i = 0; i < values_.size(); ++i)
        if (!values_[i].is_zero()) s.push_back(i);
    return s;
}

GroupFunction dft(const GroupFunction& f) {
    const unsigned n = f.group().n;
    const CycCtx& ctx = f.context();
    std::vector<CycElem> out(n, CycElem::zero(ctx));
    for (unsigned j = 0; j < n; ++j) {
        CycElem acc = CycElem::zero(ctx);
        for (unsigned i = 0; i < n; ++i) {
            if (f.values()[i].is_zero()) continue;
            acc = acc + f.values()[i] * CycElem::root_power(ctx, static_cast<long>(
                                                                     (static_cast<u64>(i) * j) % n));
        }
        out[j] = acc;
    }
    return GroupFunction(f.group(), ctx, std::move(out));
}

GroupFunction inverse_dft(const GroupFunction& fhat) {
    const unsigned n = fhat.group().n;
    const CycCtx& ctx = fhat.context();
    CycElem inv_n = CycElem::scalar(ctx, Rat(1) / Rat(static_cast<unsigned long>(n)));
    std::vector<CycElem> out(n, CycElem::zero(ctx));
    for (unsigned i = 0; i < n; ++i) {
        CycElem acc = CycElem::zero(ctx);
        for (unsigned j = 0; j < n; ++j) {
            if (fhat.values()[j].is_zero()) continue;
            long e = static_cast<long>(n) - static_cast<long>((static_cast<u64>(i) * j) % n);
            acc = acc + fhat.values()[j] * CycElem::root_power(ctx, e);
        }
        out[i] = acc * inv_n;
    }
    return GroupFunction(fhat.group(), ctx, std::move(out));
}

SupportProfile support_profile(const GroupFunction& f) {
    if (f.is_zero()) throw std::invalid_argument("support_profile: f must be nonzero");
    const GroupContext& g = f.group();
    SupportProfile profile;
    profile.m = g.m;
    profile.s.assign(g.r, 0);
    profile.s_hat.assign(g.r, 0);
    for (unsigned i : f.support()) ++profile.s[g.layer_of(i)];
    GroupFunction fhat = dft(f);
    for (unsigned j : fhat.support()) ++profile.s_hat[g.layer_of(j)];
    for (unsigned k = 0; k < g.r; ++k)
        if (profile.s[k] + profile.s_hat[k] >= g.m + 1) profile.meets_uncertainty = true;
    return profile;
}

namespace {

// Kernel of the map l2(I) -> l2(J), g -> ghat|_J: rows indexed by J, columns
// by I, entry (j, i) = zeta^{ji}.
std::optional<GroupFunction> kernel_function(const GroupContext& g, const CycCtx& ctx,
                                             const std::vector<unsigned>& I,
                                             const std::vector<unsigned>& J) {
    const unsigned k = static_cast<unsigned>(I.size());
    std::vector<unsigned> exps = submatrix_exponents(g.n, J, I);
    auto kernel = kernel_vector(build_cyc_matrix(ctx, exps, k));
    if (!kernel) return std::nullopt;
    std::vector<CycElem> values(g.n, CycElem::zero(ctx));
    for (unsigned a = 0; a < k; ++a) values[I[a]] = (*kernel)[a];
    return GroupFunction(g, ctx, std::move(values));
}

}  // namespace

GroupFunction uncertainty_kernel_witness(unsigned r, unsigned m, const std::vector<unsigned>& I,
                                         const std::vector<unsigned>& J) {
    GroupContext g(r, m);
    CycCtx ctx = make_cyclotomic_context(g.n);
    auto witness = kernel_function(g, ctx, I, J);
    if (!witness) throw std::invalid_argument("uncertainty_kernel_witness: pair is nonsingular");
    GroupFunction fhat = dft(*witness);
    for (unsigned j : J)
        if (!fhat.values()[j].is_zero())
            throw std::logic_error("uncertainty_kernel_witness: transform does not vanish on J");
    SupportProfile profile = support_profile(*witness);
    for (unsigned k = 0; k < g.r; ++k)
        if (profile.s[k] + profile.s_hat[k] > g.m)
            throw std::logic_error("uncertainty_kernel_witness: layered bound violated");
    return std::move(*witness);
}

FeasibilityResult feasibility_search(unsigned r, unsigned m, u64 max_class_size, bool screening) {
    GroupContext g(r, m);
    CycCtx ctx = make_cyclotomic_context(g.n);

    CampaignSpec spec;
    spec.n = g.n;
    spec.mode = r == 1 ? CampaignMode::all_square : CampaignMode::layered;
    spec.layer_r = r == 1 ? 0 : r;
    spec.screening = screening;
    spec.max_class_size = max_class_size;
    Int class_size = campaign_class_size(spec);
    if (class_size > Int(static_cast<unsigned long>(max_class_size)))
        throw std::length_error("feasibility_search: layered class above ceiling " +
                                std::to_string(max_class_size));

    SubmatrixCertifier certifier(ctx, screening);
    PairEnumerator en(spec);
    FeasibilityResult result;
    std::vector<unsigned> I, J;
    while (en.next(I, J)) {
        ++result.pairs_checked;
        if (certifier.certify(J, I).nonsingular) continue;
        result.found = true;
        result.I = I;
        result.J = J;
        result.witness = uncertainty_kernel_witness(r, m, I, J);
        return result;
    }
    return result;
}

EquivalenceCheck verify_equivalence(unsigned r, unsigned m, const std::vector<unsigned>& I,
                                    const std::vector<unsigned>& J, const GroupFunction& f) {
    GroupContext g(r, m);
    if (!(f.group() == g)) throw std::invalid_argument("verify_equivalence: group mismatch");
    if (f.is_zero()) throw std::invalid_argument("verify_equivalence: f must be nonzero");
    std::vector<unsigned> supp = f.support();
    for (unsigned i : supp)
        if (std::find(I.begin(), I.end(), i) == I.end())
            throw std::invalid_argument("verify_equivalence: supp(f) not contained in I");
    std::vector<unsigned> layer_I(g.r, 0), layer_J(g.r, 0);
    for (unsigned i : I) ++layer_I[g.layer_of(i)];
    for (unsigned j : J) ++layer_J[g.layer_of(j)];
    if (layer_I != layer_J)
        throw std::invalid_argument("verify_equivalence: layer profiles of I and J differ");

    EquivalenceCheck check;
    GroupFunction fhat = dft(f);
    check.dft_vanishes_on_J = true;
    for (unsigned j : J)
        if (!fhat.values()[j].is_zero()) check.dft_vanishes_on_J = false;

    SubmatrixCertifier certifier(f.context(), false);
    check.submatrix_singular = !certifier.certify(J, I).nonsingular;

    SupportProfile profile = support_profile(f);
    check.layered_bound_holds = true;
    for (unsigned k = 0; k < g.r; ++k)
        if (profile.s[k] + profile.s_hat[k] > g.m) check.layered_bound_holds = false;

    bool implication = !check.dft_vanishes_on_J || check.submatrix_singular;
    check.ok = implication && (!check.dft_vanishes_on_J || check.layered_bound_holds);
    return check;
}

}  // namespace cheb
