#pragma once

#include <algorithm>
#include <array>

#include "d2/algebra.hpp"

namespace fx {

using namespace d2;

inline Vec vec(std::initializer_list<Scalar> xs) { return Vec(xs); }

// Q[x]/x^2, basis 1, x
inline Algebra dual_numbers(Field f = {}) {
    return Algebra::from_structure(f, 2, {f.one(), f.zero()},
                                   {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}, "K[x]/x^2");
}

// upper triangular 2x2, basis e11, e12, e22
inline Algebra upper_triangular(Field f = {}) {
    return Algebra::from_structure(f, 3, {f.one(), f.zero(), f.one()},
                                   {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 2, 1, 1}, {2, 2, 2, 1}}, "T_2");
}

// K^n with orthogonal idempotents
inline Algebra split(int n, Field f = {}) {
    std::vector<Algebra::Entry> m;
    Vec u(n);
    for (int i = 0; i < n; ++i) {
        m.emplace_back(i, i, i, 1);
        u[i] = f.one();
    }
    return Algebra::from_structure(f, n, u, m, "K^" + std::to_string(n));
}

inline std::vector<std::vector<int>> cyclic_table(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

// S_3 with elements in lexicographic order of permutations of {0,1,2}; (gh)(x) = g(h(x))
inline std::vector<std::vector<int>> s3_table() {
    std::vector<std::array<int, 3>> el;
    std::array<int, 3> p{0, 1, 2};
    do el.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> c{el[i][el[j][0]], el[i][el[j][1]], el[i][el[j][2]]};
            t[i][j] = static_cast<int>(std::find(el.begin(), el.end(), c) - el.begin());
        }
    return t;
}

}  // namespace fx
