#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheb/cyclotomic.hpp"
#include "cheb/numeric.hpp"

namespace cheb {

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(unsigned rows, unsigned cols, const T& fill)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& at(unsigned i, unsigned j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(unsigned i, unsigned j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    unsigned rows_, cols_;
    std::vector<T> data_;
};

// Division-free determinant via the characteristic-polynomial (Samuelson -
// Berkowitz) recurrence; valid over any commutative ring. Requires
// ring_zero/ring_one overloads for T.
template <class T>
T det_berkowitz(const Matrix<T>& A) {
    if (!A.square()) throw std::invalid_argument("det_berkowitz: matrix not square");
    const unsigned n = A.rows();
    if (n == 0) throw std::invalid_argument("det_berkowitz: empty matrix");
    const T zero = ring_zero(A.at(0, 0));
    const T one = ring_one(A.at(0, 0));

    // C holds the coefficients of det(lambda*I - A_r) for the leading r x r
    // principal submatrix, highest power first.
    std::vector<T> C{one, zero - A.at(0, 0)};
    for (unsigned r = 2; r <= n; ++r) {
        // Toeplitz column: t_0 = 1, t_1 = -a, t_{j} = -(R * M^{j-2} * S).
        std::vector<T> t;
        t.reserve(r + 1);
        t.push_back(one);
        t.push_back(zero - A.at(r - 1, r - 1));
        std::vector<T> v(r - 1, zero);
        for (unsigned i = 0; i < r - 1; ++i) v[i] = A.at(i, r - 1);  // v = S
        for (unsigned j = 2; j <= r; ++j) {
            T dot = zero;
            for (unsigned i = 0; i < r - 1; ++i) dot = dot + A.at(r - 1, i) * v[i];
            t.push_back(zero - dot);
            if (j == r) break;
            std::vector<T> w(r - 1, zero);
            for (unsigned i = 0; i < r - 1; ++i) {
                T acc = zero;
                for (unsigned l = 0; l < r - 1; ++l) acc = acc + A.at(i, l) * v[l];
                w[i] = acc;
            }
            v = std::move(w);
        }
        std::vector<T> next(r + 1, zero);
        for (unsigned u = 0; u <= r; ++u)
            for (unsigned w = 0; w < C.size() && w <= u; ++w)
                next[u] = next[u] + t[u - w] * C[w];
        C = std::move(next);
    }
    // det(lambda*I - A) evaluated at 0 is (-1)^n det(A).
    T det = C.back();
    if (n % 2 == 1) det = zero - det;
    return det;
}

// Determinant by Gaussian elimination; T must be a field (ring_inverse).
template <class T>
T det_field(Matrix<T> A) {
    if (!A.square()) throw std::invalid_argument("det_field: matrix not square");
    const unsigned n = A.rows();
    if (n == 0) throw std::invalid_argument("det_field: empty matrix");
    const T zero = ring_zero(A.at(0, 0));
    T det = ring_one(A.at(0, 0));
    bool negate = false;
    for (unsigned col = 0; col < n; ++col) {
        unsigned pivot = col;
        while (pivot < n && A.at(pivot, col) == zero) ++pivot;
        if (pivot == n) return zero;
        if (pivot != col) {
            for (unsigned j = col; j < n; ++j) std::swap(A.at(pivot, j), A.at(col, j));
            negate = !negate;
        }
        const T p = A.at(col, col);
        det = det * p;
        const T pinv = ring_inverse(p);
        for (unsigned i = col + 1; i < n; ++i) {
            if (A.at(i, col) == zero) continue;
            T factor = A.at(i, col) * pinv;
            for (unsigned j = col; j < n; ++j)
                A.at(i, j) = A.at(i, j) - factor * A.at(col, j);
        }
    }
    return negate ? zero - det : det;
}

// A nonzero v with A*v = 0, if the columns are dependent; T must be a field.
template <class T>
std::optional<std::vector<T>> kernel_vector(Matrix<T> A) {
    if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("kernel_vector: empty matrix");
    const unsigned rows = A.rows(), cols = A.cols();
    const T zero = ring_zero(A.at(0, 0));
    const T one = ring_one(A.at(0, 0));
    std::vector<int> pivot_of_col(cols, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned pivot = rank;
        while (pivot < rows && A.at(pivot, col) == zero) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (unsigned j = 0; j < cols; ++j) std::swap(A.at(pivot, j), A.at(rank, j));
        const T pinv = ring_inverse(A.at(rank, col));
        for (unsigned j = 0; j < cols; ++j) A.at(rank, j) = A.at(rank, j) * pinv;
        for (unsigned i = 0; i < rows; ++i) {
            if (i == rank || A.at(i, col) == zero) continue;
            T factor = A.at(i, col);
            for (unsigned j = 0; j < cols; ++j)
                A.at(i, j) = A.at(i, j) - factor * A.at(rank, j);
        }
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    // Free column -> kernel vector by back-substituting the reduced rows.
    for (unsigned col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<T> v(cols, zero);
        v[col] = one;
        for (unsigned j = 0; j < cols; ++j)
            if (pivot_of_col[j] >= 0)
                v[j] = zero - A.at(static_cast<unsigned>(pivot_of_col[j]), col);
        return v;
    }
    return std::nullopt;
}

// Sound one-sided nonsingularity filter: map zeta_n to an element of exact
// order n modulo a prime q = 1 (mod n) and compute the determinant in F_q.
// Nonzero certifies nonsingular; zero says nothing.
struct ScreenContext {
    unsigned n = 0;
    u64 q = 0;
    u64 root = 0;            // element of order n mod q
    std::vector<u64> powers; // root^k mod q for k in [0, n)

    // Smallest prime q = 1 (mod n) above max(n, 50), generator by trial.
    static ScreenContext choose(unsigned n);
    static ScreenContext with_prime(unsigned n, u64 q);
};

enum class ScreenVerdict { nonsingular, unknown };

// exps is a k x k row-major table of exponents of zeta_n.
ScreenVerdict screen_determinant(const ScreenContext& sc, const std::vector<unsigned>& exps,
                                 unsigned k);

// Entries must be powers of zeta_n (throws otherwise).
ScreenVerdict screen_nonsingular(const ScreenContext& sc, const Matrix<CycElem>& M);

struct DetCertificate {
    enum class Verdict { nonsingular, singular };
    enum class Method { modular_screen, exact_division_free, field_elimination };

    Verdict verdict;
    Method method;
    u64 screen_q = 0;
    u64 screen_root = 0;
    std::vector<std::string> kernel;  // exact witness in element grammar (singular only)
};

// Exponent-table view of the DFT submatrix (zeta_n^{ij}) for i in I, j in J.
std::vector<unsigned> submatrix_exponents(unsigned n, const std::vector<unsigned>& I,
                                          const std::vector<unsigned>& J);

// Certifier for submatrices of the n-th DFT matrix. Screen-first policy:
// one modular screen, then the exact division-free path; singular verdicts
// always carry an exact kernel witness. Immutable and safe to share across
// worker threads.
class SubmatrixCertifier {
public:
    SubmatrixCertifier(CycCtx ctx, bool screening);
    SubmatrixCertifier(CycCtx ctx, ScreenContext screen);

    struct Result {
        bool nonsingular;
        bool screened_only;  // settled by the modular screen alone
    };

    Result certify(const std::vector<unsigned>& I, const std::vector<unsigned>& J) const;
    DetCertificate certificate(const std::vector<unsigned>& I, const std::vector<unsigned>& J) const;

    // Exact determinant of (zeta_n^{ij}); int64 fast path with automatic
    // big-integer fallback.
    CycElem det_exact(const std::vector<unsigned>& I, const std::vector<unsigned>& J) const;

    // Exact determinant for an arbitrary exponent table (used for conjugated
    // submatrices).
    CycElem det_exponent_matrix(const std::vector<unsigned>& exps, unsigned k) const;

    const CycCtx& context() const { return ctx_; }
    const std::optional<ScreenContext>& screen() const { return screen_; }

private:
    CycCtx ctx_;
    std::optional<ScreenContext> screen_;
};

// Exact kernel witness for a singular power submatrix, scaled to a primitive
// integral vector whose first nonzero entry is positive.
std::vector<CycElem> exact_kernel_witness(const CycCtx& ctx, const std::vector<unsigned>& I,
                                          const std::vector<unsigned>& J);

Matrix<CycElem> build_cyc_matrix(const CycCtx& ctx, const std::vector<unsigned>& exps, unsigned k);

}  // namespace cheb
