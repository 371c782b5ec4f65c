#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cheb/numeric.hpp"

namespace cheb {

class FiniteField;
using FFPtr = std::shared_ptr<const FiniteField>;

// F_p[y]/f(y) with f monic irreducible of degree k >= 1. Irreducibility is
// verified deterministically at construction: gcd(f, y^{p^d} - y) must be
// trivial for every d <= k/2.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    u64 characteristic() const { return p_; }
    unsigned degree() const { return deg_; }
    const std::vector<u64>& modulus() const { return modulus_; }
    Int element_count() const;

    // Order of the canonical root of unity ybar when the modulus is a
    // cyclotomic polynomial Phi_r; 0 for a generic modulus.
    unsigned unity_order() const { return unity_order_; }

    friend FFPtr make_finite_field(u64 p, std::vector<u64> modulus, unsigned unity_order);

private:
    FiniteField(u64 p, std::vector<u64> modulus, unsigned unity_order);

    u64 p_;
    unsigned deg_;
    std::vector<u64> modulus_;  // monic, length deg_ + 1, coefficients in [0, p)
    unsigned unity_order_;
};

FFPtr make_finite_field(u64 p, std::vector<u64> modulus, unsigned unity_order = 0);

// F_p[y]/Phi_r(y). For odd prime r this requires p primitive modulo r (the
// order of p in Z_r^* equals r-1), which is exactly when Phi_r stays
// irreducible mod p. r = 1 and r = 2 give the degree-1 moduli y-1 and y+1.
FFPtr build_quotient_field(u64 p, u64 r);

class FFElem {
public:
    FFElem() = default;
    FFElem(FFPtr field, std::vector<u64> coeffs);

    static FFElem zero(const FFPtr& field);
    static FFElem one(const FFPtr& field);
    static FFElem from_integer(const FFPtr& field, const Int& value);

    const FFPtr& field() const { return field_; }
    const std::vector<u64>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    FFElem inverse() const;
    FFElem pow(u64 e) const;

    FFElem operator-() const;
    friend FFElem operator+(const FFElem& x, const FFElem& y);
    friend FFElem operator-(const FFElem& x, const FFElem& y);
    friend FFElem operator*(const FFElem& x, const FFElem& y);
    friend bool operator==(const FFElem& x, const FFElem& y);
    friend bool operator!=(const FFElem& x, const FFElem& y) { return !(x == y); }

private:
    FFPtr field_;
    std::vector<u64> coeffs_;  // length degree(), low to high
};

// The class of y in F_p[y]/Phi_r(y); verified to have multiplicative order
// exactly r before being returned.
FFElem ff_primitive_rth_root(const FFPtr& field);

// "3y + 4" style rendering, coefficients in 0..p-1, highest power first.
std::string to_string(const FFElem& x);

struct FrenkelResult {
    unsigned multiplicity;  // t: multiplicity of a as a root of g
    unsigned support;       // s: number of nonzero coefficients of g
    bool ok;                // t < s
};

// g given low-to-high over the field; requires g != 0, deg g < characteristic,
// a != 0. The multiplicity comes from repeated exact synthetic division.
FrenkelResult frenkel_check(const FFPtr& field, const std::vector<FFElem>& g, const FFElem& a);

inline FFElem ring_zero(const FFElem& x) { return FFElem::zero(x.field()); }
inline FFElem ring_one(const FFElem& x) { return FFElem::one(x.field()); }
inline FFElem ring_inverse(const FFElem& x) { return x.inverse(); }

}  // namespace cheb
