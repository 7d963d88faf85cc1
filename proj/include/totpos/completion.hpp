#pragma once

#include "check.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

struct Affine {
    double slope = 0.0, intercept = 0.0;
    double operator()(double t) const { return slope * t + intercept; }
};

// lambda^{-1} exp(alpha_i beta_j): alpha indexes rows, beta columns.
struct VandermondeEmbedding {
    std::string branch;
    double log_lambda = 0.0;
    std::array<double, 2> u{};          // bases before normalization
    std::array<double, 2> exponents{};  // exponents before normalization
    bool flipped = false;
    std::array<double, 2> alpha{}, beta{};
    Affine phi_x, phi_y;
    std::size_t m = 0, n = 0, i1 = 0, i2 = 0, j1 = 0, j2 = 0;
    Matrix<double> matrix;

    double lambda() const { return std::exp(log_lambda); }
};

namespace detail {

struct Entries {
    double v, w, x, y;
};

struct Rep {
    std::string branch;
    double log_lambda;
    std::array<double, 2> u, e;
};

inline bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// Routes A = [[v,w],[x,y]] to the equal-entry cases A1..A8 or the generic formulas.
template <class Eq>
Rep represent(const Entries& a, Eq eq) {
    const double v = a.v, w = a.w, x = a.x, y = a.y;
    const bool vw = eq(0), vx = eq(1), wy = eq(2), xy = eq(3);
    if (!vw && !vx && wy && xy) return {"A1", -std::log(y), {v / y, 1}, {1, 0}};
    if (vx && xy && !vw) return {"A2", -std::log(v), {w / v, 1}, {0, 1}};
    if (vw && wy && !vx) return {"A3", -std::log(v), {1, x / v}, {1, 0}};
    if (vw && vx) return {"A4", -std::log(v), {1, y / v}, {0, 1}};
    if (vw) {
        const double xs = x / v, ys = y / v;
        return {"A5", -std::log(v), {1, xs}, {1, std::log(ys) / std::log(xs)}};
    }
    if (xy) {
        const double ys = v / x, xs = w / x;
        return {"A6", -std::log(x), {ys, 1}, {1, std::log(xs) / std::log(ys)}};
    }
    if (wy) return {"A7", -std::log(w), {v / w, x / w}, {1, 0}};
    if (vx) return {"A8", -std::log(v), {w / v, y / v}, {0, 1}};
    const double V = std::log(v), W = std::log(w), X = std::log(x), Y = std::log(y);
    const double L = (W * X - V * Y) / (V + Y - W - X);
    return {"generic", L, {std::exp(L + V), std::exp(L + X)}, {1, (W - Y) / (V - X)}};
}

}  // namespace detail

inline bool is_tp_2x2(const RationalMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) return false;
    return check(a, 2, true, CheckOptions{0.0}).holds();
}

// Embeds a TP 2x2 matrix at rows (i1,i2), columns (j1,j2) (0-based) of an
// m x n positive multiple of a generalized Vandermonde matrix.
inline VandermondeEmbedding embed_tp_2x2(const RationalMatrix& a, std::size_t m, std::size_t n, std::size_t i1,
                                         std::size_t i2, std::size_t j1, std::size_t j2) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("input must be 2x2");
    if (!(i1 < i2 && i2 < m && j1 < j2 && j2 < n)) throw std::invalid_argument("placement outside target shape");
    if (!is_tp_2x2(a)) throw std::domain_error("input matrix is not TP");
    auto d = a.to_double();
    detail::Entries e{d(0, 0), d(0, 1), d(1, 0), d(1, 1)};
    // v=w, v=x, w=y, x=y
    const std::array<std::pair<int, int>, 4> pairs{{{0, 1}, {0, 2}, {1, 3}, {2, 3}}};
    auto eq = [&](int which) {
        auto [p, q] = pairs[static_cast<std::size_t>(which)];
        auto at = [&](int k) { return std::pair<std::size_t, std::size_t>(k / 2, k % 2); };
        auto [pr, pc] = at(p);
        auto [qr, qc] = at(q);
        if (a.is_exact()) return a.exact()(pr, pc) == a.exact()(qr, qc);
        return detail::close(d(pr, pc), d(qr, qc));
    };
    auto rep = detail::represent(e, eq);

    VandermondeEmbedding out;
    out.branch = rep.branch;
    out.log_lambda = rep.log_lambda;
    out.u = rep.u;
    out.exponents = rep.e;
    out.alpha = {std::log(rep.u[0]), std::log(rep.u[1])};
    out.beta = rep.e;
    if (out.alpha[0] > out.alpha[1]) {
        out.flipped = true;
        for (auto* arr : {&out.alpha, &out.beta}) (*arr)[0] = -(*arr)[0], (*arr)[1] = -(*arr)[1];
    }
    out.m = m, out.n = n, out.i1 = i1, out.i2 = i2, out.j1 = j1, out.j2 = j2;
    const double di = static_cast<double>(i2 - i1), dj = static_cast<double>(j2 - j1);
    out.phi_x.slope = (out.alpha[1] - out.alpha[0]) / di;
    out.phi_x.intercept = out.alpha[0] - out.phi_x.slope * static_cast<double>(i1);
    out.phi_y.slope = (out.beta[1] - out.beta[0]) / dj;
    out.phi_y.intercept = out.beta[0] - out.phi_y.slope * static_cast<double>(j1);

    // lambda^{-1} exp(phi_X(i) phi_Y(j)) is bilinear in the log domain; using
    // the four log-entries directly avoids cancellation when lambda is extreme.
    const double V = std::log(e.v), W = std::log(e.w), X = std::log(e.x), Y = std::log(e.y);
    const double twist = (V + Y) - (W + X);
    out.matrix = Matrix<double>(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = (static_cast<double>(i) - static_cast<double>(i1)) / di;
            const double t = (static_cast<double>(j) - static_cast<double>(j1)) / dj;
            out.matrix(i, j) = std::exp(V + s * (X - V) + t * (W - V) + s * t * twist);
        }
    return out;
}

// K(s,t) = a exp(alpha (s+t)^2 + beta (s+t)) after mapping (x1, x2) to (0, 1).
struct HankelEmbedding {
    double a = 0.0, alpha = 0.0, beta = 0.0;
    double x1 = 0.0, x2 = 1.0;

    double operator()(double s, double t) const {
        const double u = (s - x1) / (x2 - x1) + (t - x1) / (x2 - x1);
        return a * std::exp(alpha * u * u + beta * u);
    }
    Matrix<double> sample(const std::vector<double>& grid) const {
        Matrix<double> out(grid.size(), grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = 0; j < grid.size(); ++j) out(i, j) = (*this)(grid[i], grid[j]);
        return out;
    }
};

inline HankelEmbedding embed_sym_2x2(const RationalMatrix& m, double x1 = 0.0, double x2 = 1.0) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("input must be 2x2");
    if (!(x1 < x2)) throw std::invalid_argument("placement needs x1 < x2");
    const bool symmetric = m.is_exact() ? m.exact()(0, 1) == m.exact()(1, 0)
                                        : detail::close(m.floating()(0, 1), m.floating()(1, 0));
    if (!symmetric || !is_tp_2x2(m)) throw std::domain_error("input is not a symmetric TP matrix");
    auto d = m.to_double();
    const double a = d(0, 0), b = d(0, 1), c = d(1, 1);
    HankelEmbedding h;
    h.a = a;
    h.alpha = 0.5 * (std::log(a) + std::log(c) - 2 * std::log(b));
    h.beta = 0.5 * (4 * std::log(b) - 3 * std::log(a) - std::log(c));
    h.x1 = x1;
    h.x2 = x2;
    return h;
}

// Strict TP of the stored doubles, decided exactly on contiguous minors.
inline Verdict certify_tp(const Matrix<double>& grid) {
    return fekete_tp(RationalMatrix(RationalMatrix(grid).to_exact()));
}

}  // namespace totpos
