#pragma once

#include <vector>

#include "cheb/numeric.hpp"

namespace cheb {

// Lexicographic k-combinations of {0..n-1}. Start with {0,1,..,k-1}; returns
// false once the last combination has been consumed.
inline bool next_combination(std::vector<unsigned>& c, unsigned n) {
    const unsigned k = static_cast<unsigned>(c.size());
    if (k == 0 || k > n) return false;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[static_cast<unsigned>(i)] == n - k + static_cast<unsigned>(i)) --i;
    if (i < 0) return false;
    ++c[static_cast<unsigned>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

inline std::vector<unsigned> first_combination(unsigned k) {
    std::vector<unsigned> c(k);
    for (unsigned i = 0; i < k; ++i) c[i] = i;
    return c;
}

// The idx-th k-combination of {0..n-1} in lexicographic order (combinadic
// unranking); idx in [0, C(n,k)).
inline std::vector<unsigned> unrank_combination(unsigned n, unsigned k, Int idx) {
    if (idx < 0 || idx >= binomial(n, k)) throw std::out_of_range("unrank_combination: bad index");
    std::vector<unsigned> c;
    c.reserve(k);
    unsigned next = 0;
    for (unsigned slot = 0; slot < k; ++slot) {
        for (unsigned v = next;; ++v) {
            Int block = binomial(n - v - 1, k - slot - 1);
            if (idx < block) {
                c.push_back(v);
                next = v + 1;
                break;
            }
            idx -= block;
        }
    }
    return c;
}

// All nonempty subsets of {0..n-1} in lexicographic order of their sorted
// member sequences: {0}, {0,1}, {0,1,2}, ..., {n-1}. Start with {0}.
inline bool next_subset_lex(std::vector<unsigned>& s, unsigned n) {
    if (s.empty()) return false;
    if (s.back() + 1 < n) {
        s.push_back(s.back() + 1);
        return true;
    }
    s.pop_back();
    if (s.empty()) return false;
    ++s.back();
    return true;
}

}  // namespace cheb
