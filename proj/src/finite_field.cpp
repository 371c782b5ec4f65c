#include "cheb/finite_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cheb {

namespace {

// Dense polynomials over F_p, low-to-high, always trimmed.

void trim(std::vector<u64>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree_of(const std::vector<u64>& f) { return static_cast<int>(f.size()) - 1; }

std::vector<u64> poly_mul(const std::vector<u64>& f, const std::vector<u64>& g, u64 p) {
    if (f.empty() || g.empty()) return {};
    std::vector<u64> h(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j)
            h[i + j] = (h[i + j] + mul_mod(f[i], g[j], p)) % p;
    }
    trim(h);
    return h;
}

// Remainder of f modulo monic g.
std::vector<u64> poly_mod(std::vector<u64> f, const std::vector<u64>& g, u64 p) {
    trim(f);
    int dg = degree_of(g);
    while (degree_of(f) >= dg) {
        u64 lead = f.back();
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) {
            u64 sub = mul_mod(lead, g[i], p);
            u64& c = f[shift + i];
            c = (c + p - sub) % p;
        }
        trim(f);
    }
    return f;
}

std::vector<u64> poly_scale(std::vector<u64> f, u64 s, u64 p) {
    for (auto& c : f) c = mul_mod(c, s, p);
    trim(f);
    return f;
}

std::vector<u64> poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        u64 lead_inv = inv_mod(b.back(), p);
        std::vector<u64> bm = poly_scale(b, lead_inv, p);  // monic
        std::vector<u64> r = poly_mod(a, bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<u64> poly_pow_mod(std::vector<u64> base, u64 exp, const std::vector<u64>& m, u64 p) {
    std::vector<u64> result{1};
    base = poly_mod(std::move(base), m, p);
    while (exp) {
        if (exp & 1) result = poly_mod(poly_mul(result, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        exp >>= 1;
    }
    return result;
}

// Extended Euclid: returns (g, s) with s*a = g (mod m), g the monic gcd.
std::pair<std::vector<u64>, std::vector<u64>> poly_half_xgcd(std::vector<u64> a,
                                                             std::vector<u64> m, u64 p) {
    std::vector<u64> s0{1}, s1{};
    trim(a);
    trim(m);
    std::vector<u64> r0 = std::move(a), r1 = std::move(m);
    while (!r1.empty()) {
        // r0 = q*r1 + r
        std::vector<u64> q;
        {
            std::vector<u64> rem = r0;
            int dr1 = degree_of(r1);
            u64 lead_inv = inv_mod(r1.back(), p);
            q.assign(std::max<int>(degree_of(rem) - dr1 + 1, 0), 0);
            while (degree_of(rem) >= dr1) {
                u64 c = mul_mod(rem.back(), lead_inv, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i) {
                    u64 sub = mul_mod(c, r1[i], p);
                    rem[shift + i] = (rem[shift + i] + p - sub) % p;
                }
                trim(rem);
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
        }
        // s' = s0 - q*s1
        std::vector<u64> qs = poly_mul(q, s1, p);
        std::vector<u64> s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            u64 x = i < s0.size() ? s0[i] : 0;
            u64 y = i < qs.size() ? qs[i] : 0;
            s2[i] = (x + p - y) % p;
        }
        trim(s2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!r0.empty() && r0.back() != 1) {
        u64 lead_inv = inv_mod(r0.back(), p);
        s0 = poly_scale(std::move(s0), lead_inv, p);
        r0 = poly_scale(std::move(r0), lead_inv, p);
    }
    return {r0, s0};
}

bool is_irreducible(const std::vector<u64>& f, u64 p) {
    int k = degree_of(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    // A reducible f of degree k has an irreducible factor of degree d <= k/2,
    // so gcd(f, y^{p^d} - y) is nontrivial for that d.
    std::vector<u64> x_power{0, 1};  // y^{p^d} mod f, starting at d = 0
    for (int d = 1; 2 * d <= k; ++d) {
        x_power = poly_pow_mod(std::move(x_power), p, f, p);
        // y^{p^d} - y
        std::vector<u64> diff = x_power;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        std::vector<u64> g = poly_gcd(f, diff, p);
        if (degree_of(g) > 0) return false;
    }
    return true;
}

std::vector<u64> cyclotomic_modulus(u64 p, u64 r) {
    if (r == 1) {
        return {p - 1, 1};  // y - 1
    }
    if (r == 2) {
        return {1, 1};  // y + 1
    }
    // For prime r, Phi_r = 1 + y + ... + y^{r-1}.
    std::vector<u64> f(r, 1);
    return f;
}

}  // namespace

FiniteField::FiniteField(u64 p, std::vector<u64> modulus, unsigned unity_order)
    : p_(p), modulus_(std::move(modulus)), unity_order_(unity_order) {
    if (!is_prime(p_)) throw std::invalid_argument("FiniteField: characteristic must be prime");
    trim(modulus_);
    if (modulus_.size() < 2) throw std::invalid_argument("FiniteField: modulus must have degree >= 1");
    for (u64 c : modulus_)
        if (c >= p_) throw std::invalid_argument("FiniteField: modulus coefficients out of range");
    if (modulus_.back() != 1) throw std::invalid_argument("FiniteField: modulus must be monic");
    deg_ = static_cast<unsigned>(modulus_.size() - 1);
    if (!is_irreducible(modulus_, p_))
        throw std::invalid_argument("FiniteField: modulus reducible over F_p");
}

Int FiniteField::element_count() const {
    Int c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(p_), deg_);
    return c;
}

FFPtr make_finite_field(u64 p, std::vector<u64> modulus, unsigned unity_order) {
    return FFPtr(new FiniteField(p, std::move(modulus), unity_order));
}

FFPtr build_quotient_field(u64 p, u64 r) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("build_quotient_field: p must be an odd prime");
    if (r >= 3) {
        if (!is_prime(r)) throw std::invalid_argument("build_quotient_field: r must be prime");
        if (p % r == 0) throw std::invalid_argument("build_quotient_field: p and r must be distinct");
        u64 order = mult_order(p, r);
        if (order != r - 1) {
            std::ostringstream msg;
            msg << "build_quotient_field: p is not primitive mod r (the order of " << p
                << " in Z_" << r << "^* is " << order << ", not " << (r - 1)
                << "); Phi_" << r << " is reducible mod " << p;
            throw std::domain_error(msg.str());
        }
    } else if (r == 0) {
        throw std::invalid_argument("build_quotient_field: r must be positive");
    }
    return make_finite_field(p, cyclotomic_modulus(p, r), static_cast<unsigned>(r));
}

FFElem::FFElem(FFPtr field, std::vector<u64> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("FFElem: null field");
    coeffs_.resize(field_->degree(), 0);
    for (auto& c : coeffs_) c %= field_->characteristic();
}

FFElem FFElem::zero(const FFPtr& field) { return FFElem(field, {}); }

FFElem FFElem::one(const FFPtr& field) { return FFElem(field, {1}); }

FFElem FFElem::from_integer(const FFPtr& field, const Int& value) {
    Int m(static_cast<unsigned long>(field->characteristic()));
    Int res;
    mpz_mod(res.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
    return FFElem(field, {res.get_ui()});
}

bool FFElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

static void check_same_field(const FFElem& x, const FFElem& y) {
    if (x.field() != y.field() &&
        !(x.field() && y.field() && x.field()->characteristic() == y.field()->characteristic() &&
          x.field()->modulus() == y.field()->modulus()))
        throw std::invalid_argument("FFElem: field mismatch");
}

FFElem operator+(const FFElem& x, const FFElem& y) {
    check_same_field(x, y);
    u64 p = x.field()->characteristic();
    std::vector<u64> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + y.coeffs()[i]) % p;
    return FFElem(x.field(), std::move(c));
}

FFElem operator-(const FFElem& x, const FFElem& y) {
    check_same_field(x, y);
    u64 p = x.field()->characteristic();
    std::vector<u64> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + p - y.coeffs()[i]) % p;
    return FFElem(x.field(), std::move(c));
}

FFElem FFElem::operator-() const {
    u64 p = field_->characteristic();
    std::vector<u64> c(coeffs_);
    for (auto& v : c) v = (p - v) % p;
    return FFElem(field_, std::move(c));
}

FFElem operator*(const FFElem& x, const FFElem& y) {
    check_same_field(x, y);
    u64 p = x.field()->characteristic();
    std::vector<u64> prod = poly_mul(x.coeffs(), y.coeffs(), p);
    prod = poly_mod(std::move(prod), x.field()->modulus(), p);
    return FFElem(x.field(), std::move(prod));
}

bool operator==(const FFElem& x, const FFElem& y) {
    check_same_field(x, y);
    return x.coeffs() == y.coeffs();
}

FFElem FFElem::inverse() const {
    if (is_zero()) throw std::domain_error("FFElem::inverse: zero has no inverse");
    u64 p = field_->characteristic();
    std::vector<u64> rep(coeffs_);
    trim(rep);
    auto [g, s] = poly_half_xgcd(rep, field_->modulus(), p);
    if (degree_of(g) != 0)
        throw std::logic_error("FFElem::inverse: modulus not coprime to element");
    s = poly_mod(std::move(s), field_->modulus(), p);
    return FFElem(field_, std::move(s));
}

FFElem FFElem::pow(u64 e) const {
    FFElem result = one(field_);
    FFElem base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

FFElem ff_primitive_rth_root(const FFPtr& field) {
    unsigned r = field->unity_order();
    if (r == 0)
        throw std::invalid_argument("ff_primitive_rth_root: field was not built from a cyclotomic modulus");
    std::vector<u64> y{0, 1};
    y = poly_mod(std::move(y), field->modulus(), field->characteristic());
    FFElem ybar(field, std::move(y));
    if (!(ybar.pow(r) == FFElem::one(field)))
        throw std::logic_error("ff_primitive_rth_root: ybar^r != 1");
    for (unsigned d = 1; d < r; ++d)
        if (r % d == 0 && ybar.pow(d) == FFElem::one(field))
            throw std::logic_error("ff_primitive_rth_root: order of ybar is a proper divisor of r");
    return ybar;
}

std::string to_string(const FFElem& x) {
    std::ostringstream os;
    bool first = true;
    const auto& c = x.coeffs();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        if (i == 0 || c[i] != 1) os << c[i];
        if (i >= 1) {
            os << "y";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FrenkelResult frenkel_check(const FFPtr& field, const std::vector<FFElem>& g, const FFElem& a) {
    if (a.is_zero()) throw std::invalid_argument("frenkel_check: a must be nonzero");
    int deg = -1;
    unsigned support = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_zero()) {
            deg = static_cast<int>(i);
            ++support;
        }
    }
    if (deg < 0) throw std::invalid_argument("frenkel_check: g must be nonzero");
    if (static_cast<u64>(deg) >= field->characteristic())
        throw std::invalid_argument("frenkel_check: deg(g) must be below the characteristic");

    // Synthetic division by (x - a), repeated while the remainder is zero.
    std::vector<FFElem> cur(g.begin(), g.begin() + deg + 1);
    unsigned t = 0;
    while (true) {
        // Horner: remainder = cur(a); quotient coefficients fall out on the way.
        std::vector<FFElem> quot;
        quot.reserve(cur.size());
        FFElem acc = FFElem::zero(field);
        for (int i = static_cast<int>(cur.size()) - 1; i >= 0; --i) {
            acc = acc * a + cur[i];
            if (i > 0) quot.push_back(acc);
        }
        if (!acc.is_zero()) break;
        ++t;
        std::reverse(quot.begin(), quot.end());
        cur = std::move(quot);
        if (cur.empty()) break;
    }
    return {t, support, t < support};
}

}  // namespace cheb
