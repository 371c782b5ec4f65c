#pragma once

#include <vector>

#include "cheb/numeric.hpp"

namespace cheb {

// Coprime splitting n = r*m of the index group Z_n, with r the layer modulus.
// A residue i splits into (a, b) with i = a*r + b*m (mod n); the layer of i is b.
// Immutable after construction.
struct CrtContext {
    unsigned n;
    unsigned r;  // layer modulus
    unsigned m;  // cofactor, n = r*m, gcd(r, m) = 1
    unsigned r_inv_mod_m;
    unsigned m_inv_mod_r;

    CrtContext(unsigned n_, unsigned r_);

    friend bool operator==(const CrtContext&, const CrtContext&) = default;
};

struct CrtPair {
    unsigned a;  // residue mod m
    unsigned b;  // residue mod r

    friend bool operator==(const CrtPair&, const CrtPair&) = default;
};

CrtPair crt_split(const CrtContext& ctx, unsigned i);
unsigned crt_join(const CrtContext& ctx, CrtPair pair);

// A subset of Z_n together with its layer decomposition {I_r^k}. Layers are
// derived data: they are always recomputed from members, never trusted.
struct LayeredIndexSet {
    CrtContext ctx;
    std::vector<unsigned> members;              // sorted ascending
    std::vector<std::vector<unsigned>> layers;  // layers[k] sorted ascending

    std::vector<unsigned> layer_sizes() const {
        std::vector<unsigned> s;
        s.reserve(layers.size());
        for (const auto& l : layers) s.push_back(static_cast<unsigned>(l.size()));
        return s;
    }
};

LayeredIndexSet decompose(const CrtContext& ctx, std::vector<unsigned> members);

// True iff |I_r^k| = |J_r^k| for every k. Contexts must match.
bool layer_profile_equal(const LayeredIndexSet& I, const LayeredIndexSet& J);

}  // namespace cheb
