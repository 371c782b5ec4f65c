#include "cheb/exact_linalg.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cheb {

namespace {

std::vector<u64> prime_factors(u64 v) {
    std::vector<u64> fs;
    for (u64 d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

u64 find_generator(u64 q) {
    std::vector<u64> fs = prime_factors(q - 1);
    for (u64 g = 2; g < q; ++g) {
        bool ok = true;
        for (u64 f : fs) {
            if (pow_mod(g, (q - 1) / f, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("find_generator: no generator found");
}

ScreenContext build_screen(unsigned n, u64 q) {
    ScreenContext sc;
    sc.n = n;
    sc.q = q;
    u64 g = find_generator(q);
    sc.root = pow_mod(g, (q - 1) / n, q);
    sc.powers.resize(n);
    u64 cur = 1;
    for (unsigned k = 0; k < n; ++k) {
        sc.powers[k] = cur;
        cur = mul_mod(cur, sc.root, q);
    }
    return sc;
}

// ---------------------------------------------------------------------------
// int64 fast path for elements of Z[zeta_n]: fixed-capacity coefficient
// vectors with checked arithmetic. Any overflow raises and the caller redoes
// the computation with big integers.
// ---------------------------------------------------------------------------

constexpr unsigned kSmallCap = 16;

struct SmallOverflow {};

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw SmallOverflow{};
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw SmallOverflow{};
    return r;
}

struct SmallCyc {
    std::array<i64, kSmallCap> c;
};

struct SmallTables {
    unsigned deg = 0;
    bool usable = false;
    // reduction_rows[k][i]: coefficient i of x^{deg+k} mod Phi_n
    std::vector<std::array<i64, kSmallCap>> rows;
    std::vector<SmallCyc> powers;  // zeta^k for k in [0, n)

    explicit SmallTables(const CyclotomicContext& ctx) {
        deg = ctx.degree();
        if (deg > kSmallCap) return;
        usable = true;
        for (const auto& row : ctx.reduction_rows()) {
            std::array<i64, kSmallCap> r{};
            for (unsigned i = 0; i < deg; ++i) {
                if (!row[i].fits_slong_p()) {
                    usable = false;
                    return;
                }
                r[i] = row[i].get_si();
            }
            rows.push_back(r);
        }
        for (unsigned k = 0; k < ctx.n(); ++k) {
            SmallCyc e{};
            const auto& coeffs = ctx.root_power_coeffs(k);
            for (unsigned i = 0; i < deg; ++i) {
                if (!coeffs[i].fits_slong_p()) {
                    usable = false;
                    return;
                }
                e.c[i] = coeffs[i].get_si();
            }
            powers.push_back(e);
        }
    }

    SmallCyc zero() const { return SmallCyc{{}}; }

    SmallCyc one() const {
        SmallCyc e{{}};
        e.c[0] = 1;
        return e;
    }

    SmallCyc add(const SmallCyc& a, const SmallCyc& b) const {
        SmallCyc r{{}};
        for (unsigned i = 0; i < deg; ++i) r.c[i] = checked_add(a.c[i], b.c[i]);
        return r;
    }

    SmallCyc sub(const SmallCyc& a, const SmallCyc& b) const {
        SmallCyc r{{}};
        for (unsigned i = 0; i < deg; ++i) r.c[i] = checked_add(a.c[i], -b.c[i]);
        return r;
    }

    SmallCyc mul(const SmallCyc& a, const SmallCyc& b) const {
        std::array<i64, 2 * kSmallCap> conv{};
        for (unsigned i = 0; i < deg; ++i) {
            if (a.c[i] == 0) continue;
            for (unsigned j = 0; j < deg; ++j) {
                if (b.c[j] == 0) continue;
                conv[i + j] = checked_add(conv[i + j], checked_mul(a.c[i], b.c[j]));
            }
        }
        SmallCyc r{{}};
        for (unsigned i = 0; i < deg; ++i) r.c[i] = conv[i];
        for (unsigned k = deg; k + 1 <= 2 * deg - 1; ++k) {
            if (conv[k] == 0) continue;
            const auto& row = rows[k - deg];
            for (unsigned i = 0; i < deg; ++i)
                if (row[i] != 0) r.c[i] = checked_add(r.c[i], checked_mul(conv[k], row[i]));
        }
        return r;
    }

    bool is_zero(const SmallCyc& a) const {
        for (unsigned i = 0; i < deg; ++i)
            if (a.c[i] != 0) return false;
        return true;
    }
};

// Berkowitz over the fixed-capacity elements; entries indexed through exps.
SmallCyc small_det_berkowitz(const SmallTables& tab, const std::vector<unsigned>& exps,
                             unsigned k) {
    auto entry = [&](unsigned i, unsigned j) -> const SmallCyc& {
        return tab.powers[exps[static_cast<size_t>(i) * k + j]];
    };
    std::vector<SmallCyc> C{tab.one(), tab.sub(tab.zero(), entry(0, 0))};
    for (unsigned r = 2; r <= k; ++r) {
        std::vector<SmallCyc> t;
        t.reserve(r + 1);
        t.push_back(tab.one());
        t.push_back(tab.sub(tab.zero(), entry(r - 1, r - 1)));
        std::vector<SmallCyc> v(r - 1);
        for (unsigned i = 0; i < r - 1; ++i) v[i] = entry(i, r - 1);
        for (unsigned j = 2; j <= r; ++j) {
            SmallCyc dot = tab.zero();
            for (unsigned i = 0; i < r - 1; ++i)
                dot = tab.add(dot, tab.mul(entry(r - 1, i), v[i]));
            t.push_back(tab.sub(tab.zero(), dot));
            if (j == r) break;
            std::vector<SmallCyc> w(r - 1);
            for (unsigned i = 0; i < r - 1; ++i) {
                SmallCyc acc = tab.zero();
                for (unsigned l = 0; l < r - 1; ++l) acc = tab.add(acc, tab.mul(entry(i, l), v[l]));
                w[i] = acc;
            }
            v = std::move(w);
        }
        std::vector<SmallCyc> next(r + 1, tab.zero());
        for (unsigned u = 0; u <= r; ++u)
            for (unsigned w = 0; w < C.size() && w <= u; ++w)
                next[u] = tab.add(next[u], tab.mul(t[u - w], C[w]));
        C = std::move(next);
    }
    SmallCyc det = C.back();
    if (k % 2 == 1) det = tab.sub(tab.zero(), det);
    return det;
}

}  // namespace

ScreenContext ScreenContext::choose(unsigned n) {
    u64 lower = std::max<u64>(n, 50);
    for (u64 q = (lower / n) * n + 1; q < 1000000; q += n) {
        if (q > lower && is_prime(q)) return build_screen(n, q);
    }
    throw std::runtime_error("ScreenContext::choose: no screening prime below bound");
}

ScreenContext ScreenContext::with_prime(unsigned n, u64 q) {
    if (!is_prime(q) || q % n != 1)
        throw std::invalid_argument("ScreenContext: q must be a prime = 1 (mod n)");
    return build_screen(n, q);
}

ScreenVerdict screen_determinant(const ScreenContext& sc, const std::vector<unsigned>& exps,
                                 unsigned k) {
    if (exps.size() != static_cast<size_t>(k) * k)
        throw std::invalid_argument("screen_determinant: exponent table size mismatch");
    const u64 q = sc.q;
    std::vector<u64> m(exps.size());
    for (size_t i = 0; i < exps.size(); ++i) m[i] = sc.powers[exps[i]];
    auto at = [&](unsigned i, unsigned j) -> u64& { return m[static_cast<size_t>(i) * k + j]; };
    for (unsigned col = 0; col < k; ++col) {
        unsigned pivot = col;
        while (pivot < k && at(pivot, col) == 0) ++pivot;
        if (pivot == k) return ScreenVerdict::unknown;
        if (pivot != col)
            for (unsigned j = col; j < k; ++j) std::swap(at(pivot, j), at(col, j));
        u64 pinv = pow_mod(at(col, col), q - 2, q);
        for (unsigned i = col + 1; i < k; ++i) {
            if (at(i, col) == 0) continue;
            u64 factor = mul_mod(at(i, col), pinv, q);
            for (unsigned j = col; j < k; ++j) {
                u64 sub = mul_mod(factor, at(col, j), q);
                at(i, j) = (at(i, j) + q - sub) % q;
            }
        }
    }
    return ScreenVerdict::nonsingular;
}

ScreenVerdict screen_nonsingular(const ScreenContext& sc, const Matrix<CycElem>& M) {
    if (!M.square() || M.rows() == 0)
        throw std::invalid_argument("screen_nonsingular: matrix must be square and nonempty");
    const CycCtx& ctx = M.at(0, 0).context();
    if (ctx->n() != sc.n) throw std::invalid_argument("screen_nonsingular: context mismatch");
    const unsigned k = M.rows();
    std::vector<unsigned> exps(static_cast<size_t>(k) * k);
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = 0; j < k; ++j) {
            bool found = false;
            for (unsigned e = 0; e < ctx->n(); ++e) {
                const auto& tab = ctx->root_power_coeffs(e);
                bool match = true;
                for (unsigned d = 0; d < ctx->degree(); ++d) {
                    if (M.at(i, j).coeffs()[d] != Rat(tab[d])) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    exps[static_cast<size_t>(i) * k + j] = e;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::invalid_argument("screen_nonsingular: entry is not a power of zeta_n");
        }
    }
    return screen_determinant(sc, exps, k);
}

std::vector<unsigned> submatrix_exponents(unsigned n, const std::vector<unsigned>& I,
                                          const std::vector<unsigned>& J) {
    if (I.size() != J.size() || I.empty())
        throw std::invalid_argument("submatrix_exponents: need |I| = |J| >= 1");
    std::vector<unsigned> exps(I.size() * J.size());
    for (size_t a = 0; a < I.size(); ++a) {
        if (I[a] >= n) throw std::out_of_range("submatrix_exponents: row index out of range");
        for (size_t b = 0; b < J.size(); ++b) {
            if (J[b] >= n) throw std::out_of_range("submatrix_exponents: column index out of range");
            exps[a * J.size() + b] =
                static_cast<unsigned>((static_cast<u64>(I[a]) * J[b]) % n);
        }
    }
    return exps;
}

Matrix<CycElem> build_cyc_matrix(const CycCtx& ctx, const std::vector<unsigned>& exps, unsigned k) {
    Matrix<CycElem> M(k, k, CycElem::zero(ctx));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
            M.at(i, j) = CycElem::root_power(ctx, exps[static_cast<size_t>(i) * k + j]);
    return M;
}

SubmatrixCertifier::SubmatrixCertifier(CycCtx ctx, bool screening) : ctx_(std::move(ctx)) {
    if (screening) {
        try {
            screen_ = ScreenContext::choose(ctx_->n());
        } catch (const std::runtime_error&) {
            screen_.reset();  // no usable prime: silently exact-only
        }
    }
}

SubmatrixCertifier::SubmatrixCertifier(CycCtx ctx, ScreenContext screen)
    : ctx_(std::move(ctx)), screen_(std::move(screen)) {
    if (screen_->n != ctx_->n()) throw std::invalid_argument("SubmatrixCertifier: n mismatch");
}

CycElem SubmatrixCertifier::det_exponent_matrix(const std::vector<unsigned>& exps,
                                                unsigned k) const {
    static thread_local std::shared_ptr<const SmallTables> cached;
    static thread_local unsigned cached_n = 0;
    if (cached_n != ctx_->n() || !cached) {
        cached = std::make_shared<const SmallTables>(*ctx_);
        cached_n = ctx_->n();
    }
    if (cached->usable) {
        try {
            SmallCyc det = small_det_berkowitz(*cached, exps, k);
            std::vector<Rat> coeffs(ctx_->degree());
            for (unsigned i = 0; i < ctx_->degree(); ++i) coeffs[i] = Rat(static_cast<long>(det.c[i]));
            return CycElem(ctx_, std::move(coeffs));
        } catch (const SmallOverflow&) {
            // fall through to the big-integer path
        }
    }
    return det_berkowitz(build_cyc_matrix(ctx_, exps, k));
}

CycElem SubmatrixCertifier::det_exact(const std::vector<unsigned>& I,
                                      const std::vector<unsigned>& J) const {
    return det_exponent_matrix(submatrix_exponents(ctx_->n(), I, J),
                               static_cast<unsigned>(I.size()));
}

SubmatrixCertifier::Result SubmatrixCertifier::certify(const std::vector<unsigned>& I,
                                                       const std::vector<unsigned>& J) const {
    std::vector<unsigned> exps = submatrix_exponents(ctx_->n(), I, J);
    unsigned k = static_cast<unsigned>(I.size());
    if (screen_ && screen_determinant(*screen_, exps, k) == ScreenVerdict::nonsingular)
        return {true, true};
    CycElem det = det_exponent_matrix(exps, k);
    return {!det.is_zero(), false};
}

DetCertificate SubmatrixCertifier::certificate(const std::vector<unsigned>& I,
                                               const std::vector<unsigned>& J) const {
    std::vector<unsigned> exps = submatrix_exponents(ctx_->n(), I, J);
    unsigned k = static_cast<unsigned>(I.size());
    DetCertificate cert;
    if (screen_ && screen_determinant(*screen_, exps, k) == ScreenVerdict::nonsingular) {
        cert.verdict = DetCertificate::Verdict::nonsingular;
        cert.method = DetCertificate::Method::modular_screen;
        cert.screen_q = screen_->q;
        cert.screen_root = screen_->root;
        return cert;
    }
    CycElem det = det_exponent_matrix(exps, k);
    cert.method = DetCertificate::Method::exact_division_free;
    if (det.is_zero()) {
        cert.verdict = DetCertificate::Verdict::singular;
        for (const CycElem& e : exact_kernel_witness(ctx_, I, J)) cert.kernel.push_back(to_string(e));
    } else {
        cert.verdict = DetCertificate::Verdict::nonsingular;
    }
    return cert;
}

std::vector<CycElem> exact_kernel_witness(const CycCtx& ctx, const std::vector<unsigned>& I,
                                          const std::vector<unsigned>& J) {
    std::vector<unsigned> exps = submatrix_exponents(ctx->n(), I, J);
    unsigned k = static_cast<unsigned>(I.size());
    auto kernel = kernel_vector(build_cyc_matrix(ctx, exps, k));
    if (!kernel) throw std::logic_error("exact_kernel_witness: matrix is nonsingular");

    // Scale to a primitive integral vector with positive leading coefficient.
    Int den_lcm(1);
    for (const CycElem& e : *kernel)
        for (const Rat& c : e.coeffs())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Int content(0);
    for (const CycElem& e : *kernel)
        for (const Rat& c : e.coeffs()) {
            Int scaled = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
        }
    if (content == 0) throw std::logic_error("exact_kernel_witness: zero kernel vector");
    Rat scale = Rat(den_lcm) / Rat(content);
    int sign = 0;
    for (const CycElem& e : *kernel) {
        for (const Rat& c : e.coeffs()) {
            if (c != 0) {
                sign = c < 0 ? -1 : 1;
                break;
            }
        }
        if (sign != 0) break;
    }
    if (sign < 0) scale = -scale;
    std::vector<CycElem> out;
    out.reserve(kernel->size());
    for (const CycElem& e : *kernel) out.push_back(CycElem::scalar(ctx, scale) * e);
    return out;
}

}  // namespace cheb
