#pragma once

#include <vector>

#include "cheb/cyclotomic.hpp"
#include "cheb/exact_linalg.hpp"

namespace cheb {

// Full n x n DFT matrix (zeta_n^{ij}).
Matrix<CycElem> dft_matrix(const CycCtx& ctx);

// Entrywise conjugate transpose (conjugation = zeta_n -> zeta_n^{n-1}).
Matrix<CycElem> conj_transpose(const Matrix<CycElem>& M);

Matrix<CycElem> mat_mul(const Matrix<CycElem>& A, const Matrix<CycElem>& B);

std::vector<unsigned> complement_of(unsigned n, const std::vector<unsigned>& S);

// det(A_{I,J}) against (-1)^{sum I + sum J} * det(A) * det((A^{-1})_{Jc,Ic}),
// both sides exact over Q(zeta_n). A^{-1} comes from character orthogonality
// as conj(A)/n.
struct JacobiCheck {
    CycElem lhs;
    CycElem rhs;
    bool equal = false;
};

JacobiCheck jacobi_check(const CycCtx& ctx, const std::vector<unsigned>& I,
                         const std::vector<unsigned>& J);

// Certifies A_{I,J} and A_{Ic,Jc}; also checks the derived identity
// det(A_{I,J}) = (-1)^{sum I + sum J} * (det A / n^k) * conj(det(A_{Ic,Jc})),
// k = n - |I|.
struct DualityCheck {
    bool det_IJ_nonzero = false;
    bool det_IcJc_nonzero = false;
    bool consistent = false;  // both zero or both nonzero
    bool formula_ok = false;
};

DualityCheck complement_duality(const CycCtx& ctx, const std::vector<unsigned>& I,
                                const std::vector<unsigned>& J);

}  // namespace cheb
