#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace cheb {

using Int = mpz_class;
using Rat = mpq_class;

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Trial division; everything in this workbench is desk-scale.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a modulo m, gcd(a, m) = 1 required.
inline u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, t1 = 1;
    i64 r = static_cast<i64>(m), r1 = static_cast<i64>(a % m);
    while (r1 != 0) {
        i64 q = r / r1;
        i64 tmp = t - q * t1;
        t = t1;
        t1 = tmp;
        tmp = r - q * r1;
        r = r1;
        r1 = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: arguments not coprime");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

inline u64 euler_phi(u64 n) {
    u64 result = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Multiplicative order of a modulo m; gcd(a, m) = 1 required.
inline u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    a %= m;
    if (gcd_u64(a, m) != 1) throw std::domain_error("mult_order: gcd(a, m) != 1");
    u64 x = a % m, k = 1;
    while (x != 1 % m) {
        x = mul_mod(x, a, m);
        if (++k > m) throw std::logic_error("mult_order: did not terminate");
    }
    return k;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// The one random source of the workbench: 64-bit linear congruential recurrence
//   state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
// with the splitmix64 finalizer as output function (the raw LCG state has
// lattice structure in its low bits, which modulo reduction would expose).
// Both maps are spelled out here so samples replay from any implementation;
// the seed is recorded in campaign reports.
struct Lcg64 {
    u64 state;

    explicit Lcg64(u64 seed) : state(seed) {}

    u64 next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        u64 z = state;
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    // Uniform in [0, bound) by rejection on the top multiple of bound.
    u64 below(u64 bound) {
        if (bound == 0) throw std::invalid_argument("Lcg64::below: bound 0");
        u64 limit = ~u64(0) - (~u64(0) % bound);
        u64 v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }
};

inline u64 fnv1a(std::string_view s) {
    u64 h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string to_decimal(const Int& v) { return v.get_str(); }

// Rationals print as "a" or "a/b"; input side of the same grammar lives in cyclotomic.
inline std::string to_decimal(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline u64 ring_zero(u64) { return 0; }
inline Int ring_zero(const Int&) { return Int(0); }
inline Int ring_one(const Int&) { return Int(1); }
inline Rat ring_zero(const Rat&) { return Rat(0); }
inline Rat ring_one(const Rat&) { return Rat(1); }
inline Rat ring_inverse(const Rat& x) {
    if (x == 0) throw std::domain_error("ring_inverse: division by zero");
    return Rat(1) / x;
}

}  // namespace cheb
