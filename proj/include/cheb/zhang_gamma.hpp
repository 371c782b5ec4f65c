#pragma once

#include <string>
#include <vector>

#include "cheb/finite_field.hpp"
#include "cheb/numeric.hpp"

namespace cheb {

// V_n(x_1..x_n) = prod_{i<j} (x_j - x_i); strictly increasing input required,
// so the value is a positive integer.
Int vandermonde_value(const std::vector<long>& points);

struct GammaEntry {
    unsigned n = 0;
    Rat gamma;                                  // max V(a) / V(0..n-1)
    std::vector<std::vector<unsigned>> argmax;  // every attaining tuple
};

struct GammaTable {
    unsigned r = 0;
    std::vector<GammaEntry> entries;  // n = 2 .. r-1
    Rat gamma_capital;                // max over the table
    std::vector<unsigned> argmax_n;   // which n attain the max

    // Annotation only (never asserted as the max): the tuple a_i = 2i at
    // n = (r-1)/2 witnesses Gamma_r >= 2^{C(n,2)}.
    std::vector<unsigned> lower_bound_tuple;
    Rat lower_bound_ratio;
};

// Exhaustive exact maximum of V_n(a)/V_n(0..n-1) over increasing n-tuples in
// [0, r-1].
GammaEntry gamma_n(unsigned r, unsigned n);

GammaTable gamma_capital(unsigned r);

struct ZhangReport {
    unsigned r = 0;
    u64 p = 0;
    u64 order_p_mod_r = 0;
    std::string gamma_r;  // exact decimal string
    bool gamma_ok = false;
    bool waived = false;
    u64 checked = 0;
    u64 nonsingular = 0;
    std::vector<std::pair<std::vector<unsigned>, std::vector<unsigned>>> singular;
};

// Verifies the finite-field statement directly: builds F_{p^{r-1}} with
// omega = ybar and certifies every square submatrix of (omega^{ij}) by field
// elimination. p must be primitive mod r; p > Gamma_r unless waived.
ZhangReport zhang_verify(unsigned r, u64 p, bool waive_gamma = false);

}  // namespace cheb
