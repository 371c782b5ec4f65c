#pragma once

// Test-only oracles, deliberately independent of the library's determinant
// and enumeration paths.

#include <cheb/exact_linalg.hpp>

namespace cheb::oracle {

// Naive Laplace cofactor expansion along the first row.
template <class T>
T det_cofactor(const Matrix<T>& A) {
    const unsigned n = A.rows();
    if (n == 1) return A.at(0, 0);
    T acc = ring_zero(A.at(0, 0));
    for (unsigned j = 0; j < n; ++j) {
        Matrix<T> minor(n - 1, n - 1, ring_zero(A.at(0, 0)));
        for (unsigned i = 1; i < n; ++i) {
            unsigned cc = 0;
            for (unsigned c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = A.at(i, c);
            }
        }
        T term = A.at(0, j) * det_cofactor(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace cheb::oracle
