#include "cheb/zhang_gamma.hpp"

#include <sstream>
#include <stdexcept>

#include "cheb/combinatorics.hpp"
#include "cheb/exact_linalg.hpp"

namespace cheb {

Int vandermonde_value(const std::vector<long>& points) {
    for (size_t i = 1; i < points.size(); ++i)
        if (points[i] <= points[i - 1])
            throw std::invalid_argument("vandermonde_value: points must be strictly increasing");
    Int v(1);
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j) v *= Int(points[j] - points[i]);
    return v;
}

GammaEntry gamma_n(unsigned r, unsigned n) {
    if (r < 3 || !is_prime(r)) throw std::invalid_argument("gamma_n: r must be an odd prime");
    if (n < 2 || n > r - 1) throw std::out_of_range("gamma_n: need 2 <= n <= r-1");
    std::vector<long> base(n);
    for (unsigned i = 0; i < n; ++i) base[i] = i;
    const Int denom = vandermonde_value(base);

    GammaEntry entry;
    entry.n = n;
    entry.gamma = Rat(0);
    std::vector<unsigned> tuple = first_combination(n);
    while (true) {
        std::vector<long> pts(tuple.begin(), tuple.end());
        Rat ratio = Rat(vandermonde_value(pts)) / Rat(denom);
        if (ratio > entry.gamma) {
            entry.gamma = ratio;
            entry.argmax.clear();
            entry.argmax.push_back(tuple);
        } else if (ratio == entry.gamma) {
            entry.argmax.push_back(tuple);
        }
        if (!next_combination(tuple, r)) break;
    }
    return entry;
}

GammaTable gamma_capital(unsigned r) {
    if (r < 3 || !is_prime(r)) throw std::invalid_argument("gamma_capital: r must be an odd prime");
    GammaTable table;
    table.r = r;
    table.gamma_capital = Rat(0);
    for (unsigned n = 2; n <= r - 1; ++n) {
        GammaEntry e = gamma_n(r, n);
        if (e.gamma > table.gamma_capital) {
            table.gamma_capital = e.gamma;
            table.argmax_n.clear();
            table.argmax_n.push_back(n);
        } else if (e.gamma == table.gamma_capital) {
            table.argmax_n.push_back(n);
        }
        table.entries.push_back(std::move(e));
    }
    // Lower-bound witness a_i = 2i at n = (r-1)/2.
    unsigned nw = (r - 1) / 2;
    if (nw >= 2) {
        std::vector<long> pts(nw);
        for (unsigned i = 0; i < nw; ++i) {
            table.lower_bound_tuple.push_back(2 * i);
            pts[i] = 2 * i;
        }
        std::vector<long> base(nw);
        for (unsigned i = 0; i < nw; ++i) base[i] = i;
        table.lower_bound_ratio = Rat(vandermonde_value(pts)) / Rat(vandermonde_value(base));
    }
    return table;
}

ZhangReport zhang_verify(unsigned r, u64 p, bool waive_gamma) {
    if (r < 3 || !is_prime(r)) throw std::invalid_argument("zhang_verify: r must be an odd prime");
    if (p < 3 || !is_prime(p) || p == r)
        throw std::invalid_argument("zhang_verify: p must be an odd prime distinct from r");
    ZhangReport report;
    report.r = r;
    report.p = p;
    report.order_p_mod_r = mult_order(p, r);
    if (report.order_p_mod_r != r - 1) {
        std::ostringstream msg;
        msg << "zhang_verify: p is not primitive in Z_r (order of " << p << " mod " << r << " is "
            << report.order_p_mod_r << ", not " << (r - 1) << ")";
        throw std::domain_error(msg.str());
    }
    GammaTable gamma = gamma_capital(r);
    report.gamma_r = to_decimal(gamma.gamma_capital);
    report.gamma_ok = Rat(static_cast<unsigned long>(p)) > gamma.gamma_capital;
    report.waived = waive_gamma;
    if (!report.gamma_ok && !waive_gamma) {
        std::ostringstream msg;
        msg << "zhang_verify: p = " << p << " does not exceed Gamma_" << r << " = "
            << report.gamma_r << " (pass waive_gamma for an exploratory run)";
        throw std::domain_error(msg.str());
    }

    FFPtr field = build_quotient_field(p, r);
    FFElem omega = ff_primitive_rth_root(field);
    std::vector<FFElem> omega_pow;
    omega_pow.reserve(r);
    FFElem cur = FFElem::one(field);
    for (unsigned k = 0; k < r; ++k) {
        omega_pow.push_back(cur);
        cur = cur * omega;
    }

    for (unsigned k = 1; k <= r; ++k) {
        std::vector<unsigned> I = first_combination(k);
        while (true) {
            std::vector<unsigned> J = first_combination(k);
            while (true) {
                Matrix<FFElem> M(k, k, FFElem::zero(field));
                for (unsigned a = 0; a < k; ++a)
                    for (unsigned b = 0; b < k; ++b)
                        M.at(a, b) = omega_pow[(I[a] * J[b]) % r];
                ++report.checked;
                if (det_field(M).is_zero())
                    report.singular.emplace_back(I, J);
                else
                    ++report.nonsingular;
                if (!next_combination(J, r)) break;
            }
            if (!next_combination(I, r)) break;
        }
    }
    return report;
}

}  // namespace cheb
