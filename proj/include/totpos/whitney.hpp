#pragma once

#include "check.hpp"
#include "kernel_grid.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

inline double gauss(double kappa, double x, double y) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    const double d = x - y;
    return std::exp(-kappa * d * d);
}

struct ConvolutionPlan {
    double kappa = 1.0;
    std::vector<double> z, w;

    double delta_weight() const { return std::exp(-kappa); }
};

// T(K)(x,y) = sum_j sum_k G(x,z_j) K(z_j,w_k) G(w_k,y), ascending j then k.
inline double convolve_step(const KernelGrid& k, const ConvolutionPlan& plan, double x, double y) {
    double total = 0.0;
    for (double zj : plan.z) {
        const std::size_t i = k.x_index(zj);
        const double gx = gauss(plan.kappa, x, zj);
        for (double wk : plan.w) total += gx * k(i, k.y_index(wk)) * gauss(plan.kappa, wk, y);
    }
    return total;
}

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
    Eigen::MatrixXd e(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
    return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
    Matrix<double> a(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) a(i, j) = e(i, j);
    return a;
}

inline Eigen::MatrixXd gauss_matrix(double kappa, const std::vector<double>& a, const std::vector<double>& b) {
    Eigen::MatrixXd g(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) g(i, j) = gauss(kappa, a[i], b[j]);
    return g;
}

inline double max_exponent(double kappa, const std::vector<double>& a, const std::vector<double>& b) {
    double lo = std::min(a.front(), b.front()), hi = std::max(a.back(), b.back());
    return kappa * (hi - lo) * (hi - lo);
}

// Node-grid recursion: returns P with K^(m)(x,y) = G(x,z) P G(w,y).
inline Eigen::MatrixXd lift_core(const Eigen::MatrixXd& kz, const Eigen::MatrixXd& gzz, const Eigen::MatrixXd& gww,
                                 std::size_t m, double delta) {
    if (m == 1) return kz;
    Eigen::MatrixXd s = gzz * kz * gww;
    for (std::size_t i = 2; i < m; ++i) {
        s(0, 0) += delta;
        s = (gzz * s * gww).eval();
    }
    s(0, 0) += delta;
    return s;
}

}  // namespace detail

// Singular values below rel_tol * (largest singular value) count as zero.
inline std::size_t numeric_rank(const Matrix<double>& a, double rel_tol = 1e-10) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(detail::to_eigen(a));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

inline std::size_t lift_rounds(std::size_t p, std::size_t r) { return (p > r ? p - r : 0) + 1; }

struct LiftResult {
    KernelGrid kernel;
    std::size_t rank = 0;
    std::size_t rounds = 0;
    double entry_error = 0.0;  // relative accuracy estimate for the lifted values
};

// K^(m) = T^m(K) + e^{-kappa} sum_{j=1}^{m-1} T^j(delta at (z_1, w_1)), sampled on K's grid.
inline LiftResult tp_lift(const KernelGrid& k, std::size_t p, const ConvolutionPlan& plan) {
    if (p < 1) throw std::invalid_argument("order must be at least 1");
    if (plan.z.size() < p || plan.w.size() < p) throw std::invalid_argument("plan has fewer than p nodes");
    for (std::size_t i = 1; i < plan.z.size(); ++i)
        if (!(plan.z[i - 1] < plan.z[i])) throw std::invalid_argument("z nodes must be strictly increasing");
    for (std::size_t i = 1; i < plan.w.size(); ++i)
        if (!(plan.w[i - 1] < plan.w[i])) throw std::invalid_argument("w nodes must be strictly increasing");
    const std::size_t pk = std::min({p, k.x().size(), k.y().size()});
    auto tn = check(k.matrix(), pk, false);
    if (!tn.holds())
        throw std::domain_error("kernel is not TN_" + std::to_string(p) + " on its grid (witness " +
                                tn.value->str() + ")");
    Matrix<double> kz(plan.z.size(), plan.w.size());
    for (std::size_t a = 0; a < plan.z.size(); ++a)
        for (std::size_t b = 0; b < plan.w.size(); ++b) kz(a, b) = k(k.x_index(plan.z[a]), k.y_index(plan.w[b]));
    const std::size_t r = numeric_rank(kz);
    const std::size_t m = lift_rounds(p, r);
    auto gzz = detail::gauss_matrix(plan.kappa, plan.z, plan.z);
    auto gww = detail::gauss_matrix(plan.kappa, plan.w, plan.w);
    auto core = detail::lift_core(detail::to_eigen(kz), gzz, gww, m, plan.delta_weight());
    Eigen::MatrixXd out = detail::gauss_matrix(plan.kappa, k.x(), plan.z) * core *
                          detail::gauss_matrix(plan.kappa, plan.w, k.y());
    const double terms = static_cast<double>(plan.z.size() + plan.w.size() + 4) +
                         detail::max_exponent(plan.kappa, k.x(), plan.z) + detail::max_exponent(plan.kappa, plan.w, k.y());
    return {KernelGrid(k.x(), k.y(), detail::from_eigen(out)), r, m, 2.0 * static_cast<double>(m) * terms * DBL_EPSILON};
}

enum class ApproxMode { fc, cc };

inline const char* mode_name(ApproxMode m) { return m == ApproxMode::fc ? "fc" : "cc"; }

inline double fc_scale(std::size_t m, std::size_t n) {
    return std::pow(2.0, -static_cast<double>(m * n)) * std::pow(static_cast<double>(n) / M_PI, m / 2.0);
}

inline double cc_scale(std::size_t m, std::size_t n) {
    return std::pow(4.0, -static_cast<double>(m * n)) * std::pow(static_cast<double>(n) / M_PI, static_cast<double>(m));
}

// (-n, -n + 2^-n, ..., n): n 2^(n+1) + 1 nodes.
inline std::vector<double> resolution_nodes(std::size_t n) {
    const std::size_t count = n * (std::size_t{1} << (n + 1)) + 1;
    std::vector<double> z(count);
    for (std::size_t i = 0; i < count; ++i)
        z[i] = -static_cast<double>(n) + std::ldexp(static_cast<double>(i), -static_cast<int>(n));
    return z;
}

struct ApproxPoint {
    double x, y, value, target, error;
};

struct ApproxReport {
    ApproxMode mode = ApproxMode::fc;
    std::size_t n = 0, p = 0, d = 0, rank = 0, rounds = 0, nodes = 0;
    double scale = 0.0;
    std::vector<ApproxPoint> points;
    double max_error = 0.0;
    Verdict verdict;
};

namespace detail {

// S * G where G_kl = g[|k - l|] is the Gaussian on the uniform node grid.
inline Eigen::MatrixXd times_toeplitz(const Eigen::MatrixXd& s, const std::vector<double>& g) {
    const Eigen::Index n = s.cols();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(s.rows(), n);
    for (Eigen::Index a = 0; a < s.rows(); ++a)
        for (Eigen::Index l = 0; l < n; ++l) {
            double acc = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) acc += s(a, k) * g[static_cast<std::size_t>(k > l ? k - l : l - k)];
            out(a, l) = acc;
        }
    return out;
}

}  // namespace detail

// Finite-continuum (fc, first factor [d] = {1..d}) or continuum-continuum (cc)
// approximation of a bounded TN_p kernel by scaled TP_p kernels with kappa = n.
// `points` are user-declared continuity points in the continuous variable(s).
inline ApproxReport approximate(const std::function<double(double, double)>& k, std::size_t p, std::size_t n,
                                ApproxMode mode, const std::vector<double>& points, std::size_t d = 0,
                                std::size_t max_n = 10) {
    if (n < 1 || n < p) throw std::invalid_argument("resolution n must be at least max(1, p)");
    if (n > max_n) throw std::invalid_argument("resolution n exceeds the cap " + std::to_string(max_n));
    if (mode == ApproxMode::fc && d < 1) throw std::invalid_argument("fc mode needs a finite first factor d >= 1");
    if (points.empty()) throw std::invalid_argument("no continuity points given");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1] < points[i])) throw std::invalid_argument("continuity points must be strictly increasing");

    const double kappa = static_cast<double>(n);
    const auto w = resolution_nodes(n);
    std::vector<double> z = w;
    if (mode == ApproxMode::fc) {
        z.resize(d);
        for (std::size_t i = 0; i < d; ++i) z[i] = static_cast<double>(i + 1);
    }
    Matrix<double> kz(z.size(), w.size());
    for (std::size_t a = 0; a < z.size(); ++a)
        for (std::size_t b = 0; b < w.size(); ++b) {
            kz(a, b) = k(z[a], w[b]);
            if (!std::isfinite(kz(a, b))) throw std::domain_error("kernel is unbounded on the node grid");
        }

    ApproxReport rep;
    rep.mode = mode;
    rep.n = n;
    rep.p = p;
    rep.d = d;
    rep.nodes = w.size();
    rep.rank = numeric_rank(kz);
    rep.rounds = lift_rounds(p, rep.rank);
    rep.scale = mode == ApproxMode::fc ? fc_scale(rep.rounds, n) : cc_scale(rep.rounds, n);

    std::vector<double> g(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) g[t] = gauss(kappa, w[0], w[t]);
    const auto gzz = detail::gauss_matrix(kappa, z, z);
    Eigen::MatrixXd core = detail::to_eigen(kz);
    if (rep.rounds > 1) {
        auto step = [&](const Eigen::MatrixXd& s) -> Eigen::MatrixXd {
            if (mode == ApproxMode::fc) return detail::times_toeplitz(gzz * s, g);
            return gzz * s * gzz;
        };
        core = step(core);
        for (std::size_t i = 2; i < rep.rounds; ++i) {
            core(0, 0) += std::exp(-kappa);
            core = step(core);
        }
        core(0, 0) += std::exp(-kappa);
    }

    const std::vector<double>& rows = mode == ApproxMode::fc ? z : points;
    Eigen::MatrixXd vals = detail::gauss_matrix(kappa, rows, z) * core * detail::gauss_matrix(kappa, w, points);
    vals *= rep.scale;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) {
            const double target = k(rows[i], points[j]);
            const double v = vals(i, j);
            rep.points.push_back({rows[i], points[j], v, target, std::abs(v - target)});
            rep.max_error = std::max(rep.max_error, std::abs(v - target));
        }

    CheckOptions opt;
    opt.gate = FloatGate::certified;
    const double reach = std::max(std::abs(w.front()), std::abs(w.back())) + 1.0;
    opt.entry_error = 2.0 * static_cast<double>(rep.rounds) *
                      (static_cast<double>(z.size() + w.size() + 4) + 4.0 * kappa * reach * reach) * DBL_EPSILON;
    RationalMatrix sampled(detail::from_eigen(vals));
    rep.verdict = check(sampled, std::min({p, sampled.rows(), sampled.cols()}), true, opt);
    return rep;
}

struct GaussianProduct {
    std::vector<double> mu;
    Matrix<double> v;
    double det_v = 0.0;
    double lhs = 0.0, rhs = 0.0, rel_error = 0.0;
};

// prod_j G(x_{j-1}, x_j) = exp(-kappa x0^2) exp(-x'Vx/2 + x'V mu) with
// mu = x0 (1,..,1) and V = 2 kappa Q_m, Q_m tridiagonal (2,..,2,1; -1).
inline GaussianProduct gaussian_product_identity(double kappa, const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("need x_0 and at least one further point");
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    const std::size_t m = xs.size() - 1;
    GaussianProduct out;
    out.mu.assign(m, xs[0]);
    out.v = Matrix<double>(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        out.v(i, i) = 2 * kappa * (i + 1 == m ? 1.0 : 2.0);
        if (i + 1 < m) out.v(i, i + 1) = out.v(i + 1, i) = -2 * kappa;
    }
    out.det_v = lu_det(out.v);
    out.lhs = 1.0;
    for (std::size_t j = 1; j <= m; ++j) out.lhs *= gauss(kappa, xs[j - 1], xs[j]);
    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            quad += xs[i + 1] * out.v(i, j) * xs[j + 1];
            lin += xs[i + 1] * out.v(i, j) * out.mu[j];
        }
    out.rhs = std::exp(-kappa * xs[0] * xs[0] - 0.5 * quad + lin);
    out.rel_error = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
    return out;
}

}  // namespace totpos
