#include "cheb/complement.hpp"

#include <algorithm>
#include <stdexcept>

namespace cheb {

Matrix<CycElem> dft_matrix(const CycCtx& ctx) {
    const unsigned n = ctx->n();
    Matrix<CycElem> A(n, n, CycElem::zero(ctx));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            A.at(i, j) = CycElem::root_power(ctx, static_cast<long>((static_cast<u64>(i) * j) % n));
    return A;
}

Matrix<CycElem> conj_transpose(const Matrix<CycElem>& M) {
    Matrix<CycElem> T(M.cols(), M.rows(), CycElem::zero(M.at(0, 0).context()));
    for (unsigned i = 0; i < M.rows(); ++i)
        for (unsigned j = 0; j < M.cols(); ++j) T.at(j, i) = cyc_conj(M.at(i, j));
    return T;
}

Matrix<CycElem> mat_mul(const Matrix<CycElem>& A, const Matrix<CycElem>& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    const CycCtx& ctx = A.at(0, 0).context();
    Matrix<CycElem> C(A.rows(), B.cols(), CycElem::zero(ctx));
    for (unsigned i = 0; i < A.rows(); ++i)
        for (unsigned j = 0; j < B.cols(); ++j) {
            CycElem acc = CycElem::zero(ctx);
            for (unsigned l = 0; l < A.cols(); ++l) acc = acc + A.at(i, l) * B.at(l, j);
            C.at(i, j) = acc;
        }
    return C;
}

std::vector<unsigned> complement_of(unsigned n, const std::vector<unsigned>& S) {
    std::vector<bool> in(n, false);
    for (unsigned v : S) {
        if (v >= n) throw std::out_of_range("complement_of: index out of range");
        in[v] = true;
    }
    std::vector<unsigned> out;
    out.reserve(n - S.size());
    for (unsigned v = 0; v < n; ++v)
        if (!in[v]) out.push_back(v);
    return out;
}

namespace {

void check_proper(unsigned n, const std::vector<unsigned>& I, const std::vector<unsigned>& J) {
    if (I.size() != J.size()) throw std::invalid_argument("complement: need |I| = |J|");
    if (I.empty() || I.size() >= n)
        throw std::invalid_argument("complement: I, J must be proper nonempty subsets");
}

int parity_sign(const std::vector<unsigned>& I, const std::vector<unsigned>& J) {
    u64 s = 0;
    for (unsigned v : I) s += v;
    for (unsigned v : J) s += v;
    return s % 2 == 0 ? 1 : -1;
}

// det of the conjugated submatrix conj(A)_{R,C}: entries zeta^{-rc}.
CycElem det_conj_submatrix(const SubmatrixCertifier& certifier, unsigned n,
                           const std::vector<unsigned>& R, const std::vector<unsigned>& C) {
    const unsigned k = static_cast<unsigned>(R.size());
    std::vector<unsigned> exps(static_cast<size_t>(k) * k);
    for (unsigned a = 0; a < k; ++a)
        for (unsigned b = 0; b < k; ++b) {
            unsigned e = static_cast<unsigned>((static_cast<u64>(R[a]) * C[b]) % n);
            exps[static_cast<size_t>(a) * k + b] = (n - e) % n;
        }
    return certifier.det_exponent_matrix(exps, k);
}

}  // namespace

JacobiCheck jacobi_check(const CycCtx& ctx, const std::vector<unsigned>& I,
                         const std::vector<unsigned>& J) {
    const unsigned n = ctx->n();
    check_proper(n, I, J);
    SubmatrixCertifier certifier(ctx, false);

    JacobiCheck result;
    result.lhs = certifier.det_exact(I, J);

    std::vector<unsigned> full(n);
    for (unsigned i = 0; i < n; ++i) full[i] = i;
    CycElem det_A = certifier.det_exact(full, full);

    // (A^{-1})_{Jc,Ic} = (1/n) * conj(A)_{Jc,Ic}, so its determinant is
    // n^{-k} * det(conj(A)_{Jc,Ic}) with k = n - |I|.
    std::vector<unsigned> Ic = complement_of(n, I);
    std::vector<unsigned> Jc = complement_of(n, J);
    CycElem minor_inv = det_conj_submatrix(certifier, n, Jc, Ic);
    Rat n_pow(1);
    for (size_t i = 0; i < Ic.size(); ++i) n_pow *= Rat(static_cast<unsigned long>(n));
    CycElem det_inv_minor = CycElem::scalar(ctx, Rat(1) / n_pow) * minor_inv;

    CycElem rhs = det_A * det_inv_minor;
    if (parity_sign(I, J) < 0) rhs = -rhs;
    result.rhs = rhs;
    result.equal = result.lhs == result.rhs;
    return result;
}

DualityCheck complement_duality(const CycCtx& ctx, const std::vector<unsigned>& I,
                                const std::vector<unsigned>& J) {
    const unsigned n = ctx->n();
    check_proper(n, I, J);
    SubmatrixCertifier certifier(ctx, false);

    std::vector<unsigned> Ic = complement_of(n, I);
    std::vector<unsigned> Jc = complement_of(n, J);

    DualityCheck check;
    CycElem det_IJ = certifier.det_exact(I, J);
    CycElem det_IcJc = certifier.det_exact(Ic, Jc);
    check.det_IJ_nonzero = !det_IJ.is_zero();
    check.det_IcJc_nonzero = !det_IcJc.is_zero();
    check.consistent = check.det_IJ_nonzero == check.det_IcJc_nonzero;

    std::vector<unsigned> full(n);
    for (unsigned i = 0; i < n; ++i) full[i] = i;
    CycElem det_A = certifier.det_exact(full, full);
    Rat n_pow(1);
    for (size_t i = 0; i < Ic.size(); ++i) n_pow *= Rat(static_cast<unsigned long>(n));
    CycElem rhs = CycElem::scalar(ctx, Rat(1) / n_pow) * det_A * cyc_conj(det_IcJc);
    if (parity_sign(I, J) < 0) rhs = -rhs;
    check.formula_ok = det_IJ == rhs;
    return check;
}

}  // namespace cheb
