#include "cheb/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cheb {

namespace {

// Dense rational polynomials, low-to-high, trimmed.

void trim(std::vector<Rat>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree_of(const std::vector<Rat>& f) { return static_cast<int>(f.size()) - 1; }

std::vector<Rat> poly_mul(const std::vector<Rat>& f, const std::vector<Rat>& g) {
    if (f.empty() || g.empty()) return {};
    std::vector<Rat> h(f.size() + g.size() - 1, Rat(0));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    }
    trim(h);
    return h;
}

// f = q*g + r with deg r < deg g; g nonzero.
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> f,
                                                          const std::vector<Rat>& g) {
    trim(f);
    int dg = degree_of(g);
    if (dg < 0) throw std::domain_error("poly_divmod: division by zero polynomial");
    std::vector<Rat> q(std::max(degree_of(f) - dg + 1, 0), Rat(0));
    while (degree_of(f) >= dg) {
        Rat c = f.back() / g.back();
        size_t shift = f.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
        trim(f);
    }
    return {std::move(q), std::move(f)};
}

// Res(f, g) = lc(f)^{deg g} * prod g(alpha_i) over the roots of f.
Rat resultant(std::vector<Rat> f, std::vector<Rat> g) {
    trim(f);
    trim(g);
    int df = degree_of(f), dg = degree_of(g);
    if (df < 0 || dg < 0) return Rat(0);
    if (df == 0) {
        Rat r(1);
        for (int i = 0; i < dg; ++i) r *= f[0];
        return r;
    }
    if (dg == 0) {
        Rat r(1);
        for (int i = 0; i < df; ++i) r *= g[0];
        return r;
    }
    if (df < dg) {
        Rat sign = (df % 2 == 1 && dg % 2 == 1) ? Rat(-1) : Rat(1);
        return sign * resultant(std::move(g), std::move(f));
    }
    auto [q, r] = poly_divmod(f, g);
    (void)q;
    if (r.empty()) return Rat(0);
    int dr = degree_of(r);
    Rat sign = (df % 2 == 1 && dg % 2 == 1) ? Rat(-1) : Rat(1);
    Rat lead(1);
    for (int i = 0; i < df - dr; ++i) lead *= g.back();
    return sign * lead * resultant(std::move(g), std::move(r));
}

// Extended Euclid over Q[x]: u with u*a = gcd (mod m), gcd normalized monic.
std::pair<std::vector<Rat>, std::vector<Rat>> half_xgcd(std::vector<Rat> a, std::vector<Rat> m) {
    std::vector<Rat> s0{Rat(1)}, s1;
    trim(a);
    trim(m);
    std::vector<Rat> r0 = std::move(a), r1 = std::move(m);
    while (!r1.empty()) {
        auto [q, rem] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        std::vector<Rat> qs = poly_mul(q, s1);
        std::vector<Rat> s2(std::max(s0.size(), qs.size()), Rat(0));
        for (size_t i = 0; i < s2.size(); ++i) {
            if (i < s0.size()) s2[i] += s0[i];
            if (i < qs.size()) s2[i] -= qs[i];
        }
        trim(s2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!r0.empty() && r0.back() != 1) {
        Rat lead = r0.back();
        for (auto& c : s0) c /= lead;
        for (auto& c : r0) c /= lead;
    }
    return {std::move(r0), std::move(s0)};
}

std::vector<Int> int_divide_exact(std::vector<Int> f, const std::vector<Int>& g) {
    // g monic; division must be exact.
    std::vector<Int> q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Int(0));
    while (f.size() >= g.size()) {
        while (!f.empty() && f.back() == 0) f.pop_back();
        if (f.size() < g.size()) break;
        Int c = f.back();
        size_t shift = f.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
    }
    for (const Int& c : f)
        if (c != 0) throw std::logic_error("cyclotomic: inexact polynomial division");
    return q;
}

std::vector<Int> compute_cyclotomic(unsigned n, std::vector<std::vector<Int>>& cache) {
    if (!cache[n].empty()) return cache[n];
    std::vector<Int> f(n + 1, Int(0));
    f[0] = -1;
    f[n] = 1;  // x^n - 1
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        f = int_divide_exact(std::move(f), compute_cyclotomic(d, cache));
    }
    cache[n] = f;
    return f;
}

}  // namespace

CyclotomicContext::CyclotomicContext(unsigned n) : n_(n) {
    if (n < 2) throw std::invalid_argument("CyclotomicContext: n must be >= 2");
    std::vector<std::vector<Int>> cache(n + 1);
    cache[1] = {Int(-1), Int(1)};
    cyclo_ = compute_cyclotomic(n, cache);
    degree_ = static_cast<unsigned>(cyclo_.size() - 1);
    if (degree_ != euler_phi(n)) throw std::logic_error("CyclotomicContext: deg Phi_n != phi(n)");

    // Check Phi_n | x^n - 1 exactly (throws otherwise).
    std::vector<Int> xn(n + 1, Int(0));
    xn[0] = -1;
    xn[n] = 1;
    (void)int_divide_exact(std::move(xn), cyclo_);

    // x^k mod Phi_n for k = degree_ .. 2*degree_ - 2.
    std::vector<Int> row(degree_, Int(0));
    for (unsigned i = 0; i < degree_; ++i) row[i] = -cyclo_[i];  // x^degree_
    reduction_rows_.push_back(row);
    for (unsigned k = degree_ + 1; k + 2 <= 2 * degree_; ++k) {
        std::vector<Int> next(degree_, Int(0));
        for (unsigned i = 0; i + 1 < degree_; ++i) next[i + 1] = row[i];
        if (row[degree_ - 1] != 0) {
            const std::vector<Int>& top = reduction_rows_.front();
            for (unsigned i = 0; i < degree_; ++i) next[i] += row[degree_ - 1] * top[i];
        }
        reduction_rows_.push_back(next);
        row = std::move(next);
    }

    // zeta^k for k in [0, n): shift and fold through the reduction rows.
    powers_.assign(n_, {});
    std::vector<Int> cur(degree_, Int(0));
    cur[0] = 1;
    powers_[0] = cur;
    for (unsigned k = 1; k < n_; ++k) {
        std::vector<Int> next(degree_, Int(0));
        for (unsigned i = 0; i + 1 < degree_; ++i) next[i + 1] = cur[i];
        if (cur[degree_ - 1] != 0) {
            const std::vector<Int>& top = reduction_rows_.front();
            for (unsigned i = 0; i < degree_; ++i) next[i] += cur[degree_ - 1] * top[i];
        }
        powers_[k] = next;
        cur = std::move(next);
    }
}

CycCtx make_cyclotomic_context(unsigned n) { return std::make_shared<const CyclotomicContext>(n); }

CycElem::CycElem(CycCtx ctx, std::vector<Rat> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (!ctx_) throw std::invalid_argument("CycElem: null context");
    coeffs_.resize(ctx_->degree(), Rat(0));
    for (auto& c : coeffs_) c.canonicalize();
}

CycElem CycElem::zero(const CycCtx& ctx) { return CycElem(ctx, {}); }

CycElem CycElem::one(const CycCtx& ctx) { return CycElem(ctx, {Rat(1)}); }

CycElem CycElem::scalar(const CycCtx& ctx, const Rat& value) { return CycElem(ctx, {value}); }

CycElem CycElem::root_power(const CycCtx& ctx, long k) {
    long n = static_cast<long>(ctx->n());
    long kk = ((k % n) + n) % n;
    const auto& ints = ctx->root_power_coeffs(static_cast<unsigned>(kk));
    std::vector<Rat> c(ints.size());
    for (size_t i = 0; i < ints.size(); ++i) c[i] = Rat(ints[i]);
    return CycElem(ctx, std::move(c));
}

bool CycElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

bool CycElem::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c.get_den() == 1; });
}

bool CycElem::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rat CycElem::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycElem::rational_value: element not rational");
    return coeffs_.empty() ? Rat(0) : coeffs_[0];
}

static void check_same_context(const CycElem& x, const CycElem& y) {
    if (!x.context() || !y.context() || x.context()->n() != y.context()->n())
        throw std::invalid_argument("CycElem: context mismatch");
}

CycElem operator+(const CycElem& x, const CycElem& y) {
    check_same_context(x, y);
    std::vector<Rat> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs()[i];
    return CycElem(x.context(), std::move(c));
}

CycElem operator-(const CycElem& x, const CycElem& y) {
    check_same_context(x, y);
    std::vector<Rat> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs()[i];
    return CycElem(x.context(), std::move(c));
}

CycElem CycElem::operator-() const {
    std::vector<Rat> c(coeffs_);
    for (auto& v : c) v = -v;
    return CycElem(ctx_, std::move(c));
}

CycElem operator*(const CycElem& x, const CycElem& y) {
    check_same_context(x, y);
    const unsigned deg = x.context()->degree();
    std::vector<Rat> prod(2 * deg - 1, Rat(0));
    for (unsigned i = 0; i < deg; ++i) {
        if (x.coeffs()[i] == 0) continue;
        for (unsigned j = 0; j < deg; ++j) {
            if (y.coeffs()[j] == 0) continue;
            prod[i + j] += x.coeffs()[i] * y.coeffs()[j];
        }
    }
    const auto& rows = x.context()->reduction_rows();
    std::vector<Rat> out(prod.begin(), prod.begin() + deg);
    for (unsigned k = deg; k < prod.size(); ++k) {
        if (prod[k] == 0) continue;
        const auto& row = rows[k - deg];
        for (unsigned i = 0; i < deg; ++i)
            if (row[i] != 0) out[i] += prod[k] * Rat(row[i]);
    }
    return CycElem(x.context(), std::move(out));
}

bool operator==(const CycElem& x, const CycElem& y) {
    check_same_context(x, y);
    return x.coeffs() == y.coeffs();
}

CycElem CycElem::inverse() const {
    if (is_zero()) throw std::domain_error("CycElem::inverse: division by zero");
    std::vector<Rat> rep(coeffs_);
    trim(rep);
    std::vector<Rat> phi(ctx_->cyclo_poly().size());
    for (size_t i = 0; i < phi.size(); ++i) phi[i] = Rat(ctx_->cyclo_poly()[i]);
    auto [g, u] = half_xgcd(rep, phi);
    if (degree_of(g) != 0)
        throw std::logic_error("CycElem::inverse: representative shares a factor with Phi_n");
    // g is monic constant 1 after normalization, so u * rep = 1 (mod Phi_n).
    auto [q, r] = poly_divmod(std::move(u), phi);
    (void)q;
    return CycElem(ctx_, std::move(r));
}

Rat cyc_norm(const CycElem& a) {
    if (a.is_zero()) return Rat(0);
    std::vector<Rat> phi(a.context()->cyclo_poly().size());
    for (size_t i = 0; i < phi.size(); ++i) phi[i] = Rat(a.context()->cyclo_poly()[i]);
    std::vector<Rat> rep(a.coeffs());
    trim(rep);
    return resultant(std::move(phi), std::move(rep));
}

bool cyc_divides(const CycElem& d, const CycElem& a) {
    if (d.is_zero()) throw std::domain_error("cyc_divides: divisor is zero");
    if (!d.is_integral() || !a.is_integral())
        throw std::invalid_argument("cyc_divides: both elements must be integral");
    CycElem q = a * d.inverse();
    return q.is_integral();
}

unsigned cyc_valuation(const CycElem& a, unsigned p) {
    const auto& ctx = a.context();
    if (a.is_zero()) throw std::domain_error("cyc_valuation: valuation of zero is undefined");
    if (!a.is_integral()) throw std::invalid_argument("cyc_valuation: element must be integral");
    unsigned n = ctx->n();
    if (p < 3 || !is_prime(p) || n % p != 0)
        throw std::invalid_argument("cyc_valuation: p must be an odd prime factor of n");
    unsigned m = n / p;
    if (!quotient_is_field(p, m))
        throw std::domain_error("cyc_valuation: <1 - zeta_p> is not prime (order of p in Z_m^* below phi(m))");
    CycElem lambda = CycElem::one(ctx) - CycElem::root_power(ctx, n / p);
    CycElem lambda_inv = lambda.inverse();
    unsigned k = 0;
    CycElem cur = a;
    while (true) {
        CycElem q = cur * lambda_inv;
        if (!q.is_integral()) break;
        cur = q;
        ++k;
    }
    return k;
}

CycElem cyc_conj(const CycElem& a) {
    const auto& ctx = a.context();
    unsigned n = ctx->n();
    CycElem out = CycElem::zero(ctx);
    for (unsigned k = 0; k < ctx->degree(); ++k) {
        if (a.coeffs()[k] == 0) continue;
        CycElem term = CycElem::scalar(ctx, a.coeffs()[k]) *
                       CycElem::root_power(ctx, static_cast<long>((n - k) % n));
        out = out + term;
    }
    return out;
}

bool quotient_is_field(unsigned p, unsigned m) {
    if (m <= 2) return true;
    if (gcd_u64(p, m) != 1) return false;
    return mult_order(p, m) == euler_phi(m);
}

ReductionHom::ReductionHom(CycCtx ctx, unsigned p) : ctx_(std::move(ctx)), p_(p) {
    unsigned n = ctx_->n();
    if (p_ < 3 || !is_prime(p_) || n % p_ != 0)
        throw std::invalid_argument("ReductionHom: p must be an odd prime factor of n");
    m_ = n / p_;
    if (gcd_u64(p_, m_) != 1) throw std::invalid_argument("ReductionHom: p^2 divides n");
    if (m_ > 2 && !is_prime(m_))
        throw std::invalid_argument(
            "ReductionHom: only m in {1, 2} or m an odd prime are constructed");
    target_ = build_quotient_field(p_, m_);  // checks primitivity for odd prime m
    exp_scale_ = m_ == 1 ? 0 : static_cast<unsigned>(inv_mod(p_, m_));
    FFElem ybar = ff_primitive_rth_root(target_);
    ybar_powers_.reserve(m_);
    FFElem cur = FFElem::one(target_);
    for (unsigned e = 0; e < m_; ++e) {
        ybar_powers_.push_back(cur);
        cur = cur * ybar;
    }
}

FFElem ReductionHom::operator()(const CycElem& a) const {
    if (a.context()->n() != ctx_->n()) throw std::invalid_argument("ReductionHom: context mismatch");
    Int p(static_cast<unsigned long>(p_));
    FFElem acc = FFElem::zero(target_);
    for (unsigned k = 0; k < ctx_->degree(); ++k) {
        const Rat& c = a.coeffs()[k];
        if (c == 0) continue;
        Int den = c.get_den();
        if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
            throw std::domain_error("ReductionHom: denominator divisible by p");
        Int num_mod, den_mod;
        mpz_mod(num_mod.get_mpz_t(), c.get_num().get_mpz_t(), p.get_mpz_t());
        mpz_mod(den_mod.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        u64 value = mul_mod(num_mod.get_ui(), inv_mod(den_mod.get_ui(), p_), p_);
        unsigned e = static_cast<unsigned>((static_cast<u64>(exp_scale_) * k) % m_);
        FFElem coeff(target_, {value});
        acc = acc + coeff * ybar_powers_[e];
    }
    return acc;
}

std::string to_string(const CycElem& a) {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < a.coeffs().size(); ++k) {
        const Rat& c = a.coeffs()[k];
        if (c == 0) continue;
        Rat abs = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool unit = (abs == 1);
        if (k == 0 || !unit) {
            os << to_decimal(abs);
            if (k > 0) os << " ";
        }
        if (k >= 1) {
            os << "z";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

struct ElemParser {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool peek_digit() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }

    Int parse_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("parse_cyc: expected integer");
        return Int(std::string(s.substr(start, pos - start)));
    }

    unsigned parse_exponent() {
        Int e = parse_integer();
        if (e < 0 || e > 1000000) throw std::invalid_argument("parse_cyc: exponent out of range");
        return static_cast<unsigned>(e.get_ui());
    }
};

}  // namespace

CycElem parse_cyc(const CycCtx& ctx, std::string_view text) {
    ElemParser p{text};
    CycElem acc = CycElem::zero(ctx);
    bool expect_term = true;
    int sign = 1;
    while (true) {
        p.skip_ws();
        if (p.pos >= p.s.size()) break;
        if (!expect_term) {
            if (p.eat('+')) {
                sign = 1;
            } else if (p.eat('-')) {
                sign = -1;
            } else {
                throw std::invalid_argument("parse_cyc: expected '+' or '-'");
            }
            expect_term = true;
            continue;
        }
        while (p.eat('-')) sign = -sign;
        while (p.eat('+')) {
        }
        Rat coeff(1);
        bool saw_coeff = false;
        if (p.peek_digit()) {
            Int num = p.parse_integer();
            Int den(1);
            if (p.eat('/')) den = p.parse_integer();
            if (den == 0) throw std::invalid_argument("parse_cyc: zero denominator");
            coeff = Rat(num) / Rat(den);
            saw_coeff = true;
        }
        unsigned power = 0;
        p.skip_ws();
        bool star = p.eat('*');
        if (p.eat('z')) {
            power = 1;
            if (p.eat('^')) power = p.parse_exponent();
        } else if (star || !saw_coeff) {
            throw std::invalid_argument("parse_cyc: expected coefficient or z term");
        }
        CycElem term = CycElem::scalar(ctx, Rat(sign) * coeff);
        if (power > 0) term = term * CycElem::root_power(ctx, static_cast<long>(power));
        acc = acc + term;
        sign = 1;
        expect_term = false;
    }
    if (expect_term) throw std::invalid_argument("parse_cyc: empty or dangling expression");
    return acc;
}

}  // namespace cheb
