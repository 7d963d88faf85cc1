#pragma once

// Independent reference computations used only by the tests.

#include "totpos/matrix.hpp"
#include "totpos/minors.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using totpos::Matrix;
using totpos::Rational;

// Laplace expansion along the first row.
template <class T>
T cofactor_det(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    if (n == 0) return T(1);
    if (n == 1) return a(0, 0);
    T sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) cols.push_back(k);
        T term = a(0, j) * cofactor_det(a.submatrix(rows, cols));
        if (j % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

// Brute force: every minor of every order up to p, exact.
inline bool all_minors(const Matrix<Rational>& a, std::size_t p, bool strict) {
    for (std::size_t k = 1; k <= p; ++k)
        for (const auto& r : totpos::combinations(a.rows(), k))
            for (const auto& c : totpos::combinations(a.cols(), k)) {
                int s = sgn(cofactor_det(a.submatrix(r, c)));
                if (strict ? s <= 0 : s < 0) return false;
            }
    return true;
}

inline Matrix<Rational> random_rational(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi,
                                        int den = 1) {
    std::uniform_int_distribution<int> num(lo, hi), d(1, den);
    Matrix<Rational> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Rational q(num(rng), d(rng));
            q.canonicalize();
            m(i, j) = q;
        }
    return m;
}

// Matrix with all minors positive: product of bidiagonal factors with
// positive off-diagonals (Whitney/Loewner factorization).
inline Matrix<Rational> random_tp(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> pos(1, 4);
    Matrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = pos(rng);
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t s = n - 1; s > k; --s) {
            Matrix<Rational> l(n, n), u(n, n);
            for (std::size_t i = 0; i < n; ++i) l(i, i) = u(i, i) = 1;
            l(s, s - 1) = pos(rng);
            u(s - 1, s) = pos(rng);
            a = l * a * u;
        }
    return a;
}

// det(A B)[rows; cols] as the Cauchy-Binet sum over k-subsets of the inner index.
template <class T>
T cauchy_binet(const Matrix<T>& a, const Matrix<T>& b, const std::vector<std::size_t>& rows,
               const std::vector<std::size_t>& cols) {
    T sum = 0;
    for (const auto& s : totpos::combinations(a.cols(), rows.size()))
        sum += cofactor_det(a.submatrix(rows, s)) * cofactor_det(b.submatrix(s, cols));
    return sum;
}

}  // namespace oracle
