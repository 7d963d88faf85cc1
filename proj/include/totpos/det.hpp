#pragma once

#include "matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace totpos {

// Fraction-free elimination: rows are cleared to integers first, then Bareiss over Z.
inline Rational bareiss_det(const Matrix<Rational>& a) {
    if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<mpz_class> m(n * n);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j).get_num() * (l / a(i, j).get_den());
    }
    auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return m[i * n + j]; };
    mpz_class prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return Rational(0);
            for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = at(k, k);
    }
    Rational d(sgn * at(n - 1, n - 1), scale);
    d.canonicalize();
    return d;
}

inline double lu_det(const Matrix<double>& a) {
    if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const auto n = static_cast<Eigen::Index>(a.rows());
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Eigen::MatrixXd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) e(i, j) = a(i, j);
    return e.partialPivLu().determinant();
}

inline Scalar det(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    return m.is_exact() ? Scalar(bareiss_det(m.exact())) : Scalar(lu_det(m.floating()));
}

// Product of row 2-norms; bounds |det| of any square matrix.
inline double hadamard_bound(const Matrix<double>& a) {
    double h = 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
        h *= std::sqrt(s);
    }
    return h;
}

}  // namespace totpos
