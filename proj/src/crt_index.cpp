#include "cheb/crt_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace cheb {

CrtContext::CrtContext(unsigned n_, unsigned r_) : n(n_), r(r_) {
    if (r < 2) throw std::invalid_argument("CrtContext: layer modulus r must be >= 2");
    if (n < 4 || n % r != 0) throw std::invalid_argument("CrtContext: r must divide n");
    m = n / r;
    if (m < 2) throw std::invalid_argument("CrtContext: cofactor m must be >= 2");
    if (gcd_u64(r, m) != 1) throw std::invalid_argument("CrtContext: gcd(r, m) != 1");
    r_inv_mod_m = static_cast<unsigned>(inv_mod(r, m));
    m_inv_mod_r = static_cast<unsigned>(inv_mod(m, r));
}

CrtPair crt_split(const CrtContext& ctx, unsigned i) {
    if (i >= ctx.n) throw std::out_of_range("crt_split: index out of range");
    // i = a*r + b*m (mod n)  =>  a = i*r^{-1} (mod m), b = i*m^{-1} (mod r)
    unsigned a = static_cast<unsigned>((static_cast<u64>(i) * ctx.r_inv_mod_m) % ctx.m);
    unsigned b = static_cast<unsigned>((static_cast<u64>(i) * ctx.m_inv_mod_r) % ctx.r);
    return {a, b};
}

unsigned crt_join(const CrtContext& ctx, CrtPair pair) {
    if (pair.a >= ctx.m || pair.b >= ctx.r)
        throw std::out_of_range("crt_join: component out of range");
    return static_cast<unsigned>(
        (static_cast<u64>(pair.a) * ctx.r + static_cast<u64>(pair.b) * ctx.m) % ctx.n);
}

LayeredIndexSet decompose(const CrtContext& ctx, std::vector<unsigned> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    LayeredIndexSet set{ctx, std::move(members), {}};
    set.layers.assign(ctx.r, {});
    for (unsigned i : set.members) set.layers[crt_split(ctx, i).b].push_back(i);
    return set;
}

bool layer_profile_equal(const LayeredIndexSet& I, const LayeredIndexSet& J) {
    if (!(I.ctx == J.ctx)) throw std::invalid_argument("layer_profile_equal: context mismatch");
    for (unsigned k = 0; k < I.ctx.r; ++k)
        if (I.layers[k].size() != J.layers[k].size()) return false;
    return true;
}

}  // namespace cheb
