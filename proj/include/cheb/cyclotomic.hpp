#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cheb/finite_field.hpp"
#include "cheb/numeric.hpp"

namespace cheb {

// The ring Z[zeta_n] (and its fraction field Q(zeta_n)) presented in the power
// basis modulo Phi_n. Phi_n is computed by iterated exact division of x^n - 1
// by the Phi_d of proper divisors, and checked to divide x^n - 1 exactly.
class CyclotomicContext {
public:
    explicit CyclotomicContext(unsigned n);

    unsigned n() const { return n_; }
    unsigned degree() const { return degree_; }  // phi(n)
    const std::vector<Int>& cyclo_poly() const { return cyclo_; }

    // Canonical power-basis coefficients of zeta_n^k for k in [0, n).
    const std::vector<Int>& root_power_coeffs(unsigned k) const { return powers_.at(k); }

    // Row k-degree() holds the coefficients of x^k mod Phi_n, degree() <= k <= 2*degree()-2.
    const std::vector<std::vector<Int>>& reduction_rows() const { return reduction_rows_; }

private:
    unsigned n_;
    unsigned degree_;
    std::vector<Int> cyclo_;  // monic, length degree_+1, low to high
    std::vector<std::vector<Int>> reduction_rows_;
    std::vector<std::vector<Int>> powers_;
};

using CycCtx = std::shared_ptr<const CyclotomicContext>;
CycCtx make_cyclotomic_context(unsigned n);

// Element of Q(zeta_n): canonical coefficient vector of length phi(n) in the
// power basis. Elements of Z[zeta_n] are exactly those with denominator 1.
class CycElem {
public:
    CycElem() = default;
    CycElem(CycCtx ctx, std::vector<Rat> coeffs);

    static CycElem zero(const CycCtx& ctx);
    static CycElem one(const CycCtx& ctx);
    static CycElem scalar(const CycCtx& ctx, const Rat& value);
    static CycElem root_power(const CycCtx& ctx, long k);  // zeta_n^k, any integer k

    const CycCtx& context() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_integral() const;  // all denominators 1
    bool is_rational() const;  // lies in Q
    Rat rational_value() const;

    CycElem inverse() const;
    CycElem operator-() const;
    friend CycElem operator+(const CycElem& x, const CycElem& y);
    friend CycElem operator-(const CycElem& x, const CycElem& y);
    friend CycElem operator*(const CycElem& x, const CycElem& y);
    friend bool operator==(const CycElem& x, const CycElem& y);
    friend bool operator!=(const CycElem& x, const CycElem& y) { return !(x == y); }

private:
    CycCtx ctx_;
    std::vector<Rat> coeffs_;
};

// Field norm N_{Q(zeta_n)/Q}(a) as the resultant of Phi_n with the
// representative; multiplicative, and norm(c) = c^{phi(n)} for rational c.
Rat cyc_norm(const CycElem& a);

// True iff a/d lies in Z[zeta_n]. Both must be integral, d nonzero.
bool cyc_divides(const CycElem& d, const CycElem& a);

// Largest k with (1 - zeta_p)^k dividing a, for an odd prime p | n whose ideal
// <1 - zeta_p> is prime in Z[zeta_n] (see quotient_is_field).
unsigned cyc_valuation(const CycElem& a, unsigned p);

// Complex conjugation as the ring automorphism zeta_n -> zeta_n^{n-1}.
CycElem cyc_conj(const CycElem& a);

// Whether Z[zeta_{p*m}]/<1 - zeta_p> is a field: the order of p in Z_m^* must
// equal phi(m). Trivially true for m = 1, 2.
bool quotient_is_field(unsigned p, unsigned m);

// The quotient map Z[zeta_n] -> Z[zeta_n]/<1 - zeta_p> = F_{p^{phi(m)}},
// n = p*m, determined by zeta_p -> 1 and zeta_m -> ybar. Only the cases
// m in {1, 2} or m an odd prime with p primitive mod m are constructed.
class ReductionHom {
public:
    ReductionHom(CycCtx ctx, unsigned p);

    const CycCtx& source() const { return ctx_; }
    const FFPtr& target() const { return target_; }
    unsigned p() const { return p_; }
    unsigned m() const { return m_; }

    FFElem operator()(const CycElem& a) const;

private:
    CycCtx ctx_;
    FFPtr target_;
    unsigned p_, m_;
    unsigned exp_scale_;               // p^{-1} mod m: zeta_n^k -> ybar^{k * exp_scale_ mod m}
    std::vector<FFElem> ybar_powers_;  // ybar^0 .. ybar^{m-1}
};

// Element text grammar: integer-coefficient expressions in the symbol z,
// e.g. "1 - z^3". Printing uses the same grammar (rationals as "a/b").
std::string to_string(const CycElem& a);
CycElem parse_cyc(const CycCtx& ctx, std::string_view text);

inline CycElem ring_zero(const CycElem& x) { return CycElem::zero(x.context()); }
inline CycElem ring_one(const CycElem& x) { return CycElem::one(x.context()); }
inline CycElem ring_inverse(const CycElem& x) { return x.inverse(); }

}  // namespace cheb
