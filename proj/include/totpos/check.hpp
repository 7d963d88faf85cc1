#pragma once

#include "minors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace totpos {

enum class Status { tn, tp, fail };

// hadamard: |minor| <= tol * (product of row norms) is treated as zero.
// certified: the stored binary64 entries are taken exactly, and a minor only
// counts as a sign if it clears a first-order bound for relative entry error
// `entry_error`.
enum class FloatGate { hadamard, certified };

inline constexpr double default_float_tol = 1e-9;

struct CheckOptions {
    std::optional<double> tol;
    FloatGate gate = FloatGate::hadamard;
    double entry_error = 4 * DBL_EPSILON;
    unsigned threads = 0;
};

struct Verdict {
    Status status = Status::fail;
    std::size_t order = 0;
    bool strict = false;
    std::optional<MinorIndex> witness;
    std::optional<Scalar> value;
    double tol = 0.0;
    std::string gate = "exact";
    bool ambiguous = false;

    bool holds() const { return status != Status::fail; }
    std::string status_name() const {
        if (status == Status::fail) return "FAIL";
        return std::string(status == Status::tp ? "TP_" : "TN_") + std::to_string(order);
    }
};

inline unsigned worker_count(unsigned requested = 0) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("TOTPOS_THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, n);
}

namespace detail {

struct MinorEval {
    Scalar value;
    bool violates = false;
    bool ambiguous = false;
};

inline double lu_allowance(std::size_t k, double h) {
    return 8.0 * static_cast<double>(k * k * k) * DBL_EPSILON * h;
}

inline MinorEval eval_exact(const Matrix<Rational>& sub, bool strict) {
    Rational v = bareiss_det(sub);
    int s = sgn(v);
    return {Scalar(v), strict ? s <= 0 : s < 0, false};
}

inline MinorEval eval_hadamard(const Matrix<double>& sub, bool strict, double tol) {
    double v = lu_det(sub);
    double g = tol * hadamard_bound(sub);
    MinorEval e{Scalar(v)};
    if (strict) {
        e.violates = v <= g;
        e.ambiguous = e.violates ? v > g / 10 : v <= 10 * g;
    } else {
        e.violates = v < -g;
        e.ambiguous = e.violates ? v >= -10 * g : v < -g / 10;
    }
    return e;
}

// Sum of |a_ij| * |C_ij| with each cofactor padded by its own LU allowance.
inline double cofactor_weight(const Matrix<double>& sub) {
    const std::size_t k = sub.rows();
    if (k == 1) return std::abs(sub(0, 0));
    double total = 0.0;
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < k; ++i) {
        rs.clear();
        for (std::size_t r = 0; r < k; ++r)
            if (r != i) rs.push_back(r);
        for (std::size_t j = 0; j < k; ++j) {
            if (sub(i, j) == 0.0) continue;
            cs.clear();
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) cs.push_back(c);
            auto m = sub.submatrix(rs, cs);
            total += std::abs(sub(i, j)) * (std::abs(lu_det(m)) + lu_allowance(k - 1, hadamard_bound(m)));
        }
    }
    return total;
}

inline MinorEval eval_certified(const Matrix<double>& sub, bool strict, double rho) {
    const std::size_t k = sub.rows();
    const double h = hadamard_bound(sub);
    const double vf = lu_det(sub);
    const double slack = lu_allowance(k, h);
    if (!strict && vf - slack >= 0) return {Scalar(vf)};
    if (strict && vf - slack > 2 * rho * std::pow(static_cast<double>(k), 1.5) * h) return {Scalar(vf)};
    Rational ve = bareiss_det(sub.map(exact_from_double));
    const double v = ve.get_d();
    const double bound = 2 * rho * cofactor_weight(sub);
    MinorEval e{Scalar(v)};
    if (strict) {
        e.violates = !(sgn(ve) > 0 && v > bound);
        e.ambiguous = e.violates && std::abs(v) <= bound;
    } else {
        e.violates = sgn(ve) < 0 && v < -bound;
        e.ambiguous = !e.violates && sgn(ve) < 0;
    }
    return e;
}

struct ScanResult {
    std::optional<std::size_t> first_failure;
    bool ambiguous = false;
};

// Finds the smallest failing position in [0, count); ties across workers
// resolve to the canonical enumeration order.
template <class Violates>
ScanResult scan(std::size_t count, Violates&& test, unsigned threads) {
    ScanResult res;
    if (threads <= 1 || count < 512) {
        for (std::size_t i = 0; i < count; ++i) {
            auto [bad, amb] = test(i);
            if (bad) {
                res.first_failure = i;
                return res;
            }
            res.ambiguous |= amb;
        }
        return res;
    }
    std::atomic<std::size_t> next{0}, best{count};
    std::atomic<bool> amb_any{false};
    constexpr std::size_t block = 32;
    auto worker = [&] {
        while (true) {
            std::size_t s = next.fetch_add(block);
            if (s >= count || s > best.load()) return;
            for (std::size_t i = s; i < std::min(count, s + block); ++i) {
                if (i > best.load()) return;
                auto [bad, amb] = test(i);
                if (bad) {
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
                if (amb) amb_any = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (best.load() < count) res.first_failure = best.load();
    res.ambiguous = amb_any.load();
    return res;
}

class MinorJudge {
public:
    MinorJudge(const RationalMatrix& m, bool strict, const CheckOptions& opt) : m_(m), strict_(strict), opt_(opt) {
        if (opt.tol && *opt.tol < 0) throw std::invalid_argument("tolerance must be non-negative");
        if (m.is_exact()) {
            if (opt.tol && *opt.tol > 0) throw std::invalid_argument("exact matrices require tol = 0");
            tol_ = 0.0;
        } else {
            tol_ = opt.tol.value_or(default_float_tol);
        }
    }

    MinorEval operator()(const MinorIndex& idx) const {
        if (m_.is_exact()) return eval_exact(m_.exact().submatrix(idx.rows, idx.cols), strict_);
        auto sub = m_.floating().submatrix(idx.rows, idx.cols);
        if (opt_.gate == FloatGate::certified) return eval_certified(sub, strict_, opt_.entry_error);
        return eval_hadamard(sub, strict_, tol_);
    }

    void stamp(Verdict& v) const {
        v.strict = strict_;
        if (m_.is_exact()) {
            v.gate = "exact";
            v.tol = 0.0;
        } else if (opt_.gate == FloatGate::certified) {
            v.gate = "certified";
            v.tol = opt_.entry_error;
        } else {
            v.gate = "hadamard";
            v.tol = tol_;
        }
    }

private:
    const RationalMatrix& m_;
    bool strict_;
    CheckOptions opt_;
    double tol_ = 0.0;
};

// Enumerates order k minors, either all of them or only the contiguous ones.
struct OrderPlan {
    std::size_t k;
    bool contiguous;
    std::vector<std::vector<std::size_t>> rc, cc;
    std::size_t nr, nc;

    OrderPlan(std::size_t rows, std::size_t cols, std::size_t k_, bool contig) : k(k_), contiguous(contig) {
        if (contig) {
            nr = rows - k + 1;
            nc = cols - k + 1;
        } else {
            rc = combinations(rows, k);
            cc = combinations(cols, k);
            nr = rc.size();
            nc = cc.size();
        }
    }
    std::size_t count() const { return nr * nc; }
    MinorIndex at(std::size_t pos) const {
        std::size_t i = pos / nc, j = pos % nc;
        if (contiguous) return {index_range(i, k), index_range(j, k)};
        return {rc[i], cc[j]};
    }
};

inline Verdict run_check(const RationalMatrix& m, std::size_t p, bool strict, const CheckOptions& opt,
                         bool contiguous) {
    MinorJudge judge(m, strict, opt);
    Verdict v;
    v.order = p;
    judge.stamp(v);
    const unsigned threads = worker_count(opt.threads);
    for (std::size_t k = 1; k <= p; ++k) {
        OrderPlan plan(m.rows(), m.cols(), k, contiguous);
        auto res = scan(
            plan.count(),
            [&](std::size_t pos) {
                auto e = judge(plan.at(pos));
                return std::pair<bool, bool>{e.violates, e.ambiguous};
            },
            threads);
        v.ambiguous |= res.ambiguous;
        if (res.first_failure) {
            auto idx = plan.at(*res.first_failure);
            auto e = judge(idx);
            v.status = Status::fail;
            v.witness = idx;
            v.value = e.value;
            v.ambiguous = e.ambiguous;
            return v;
        }
    }
    v.status = strict ? Status::tp : Status::tn;
    return v;
}

}  // namespace detail

inline Verdict check(const RationalMatrix& m, std::size_t p, bool strict, const CheckOptions& opt) {
    require_order(m, p);
    return detail::run_check(m, p, strict, opt, false);
}

inline Verdict check(const RationalMatrix& m, std::size_t p, bool strict, std::optional<double> tol = std::nullopt) {
    CheckOptions opt;
    opt.tol = tol;
    return check(m, p, strict, opt);
}

// Fekete: positivity of all contiguous minors certifies full total positivity.
inline Verdict fekete_tp(const RationalMatrix& m, const CheckOptions& opt) {
    return detail::run_check(m, std::min(m.rows(), m.cols()), true, opt, true);
}

inline Verdict fekete_tp(const RationalMatrix& m, std::optional<double> tol = std::nullopt) {
    CheckOptions opt;
    opt.tol = tol;
    return fekete_tp(m, opt);
}

namespace detail {

template <class T>
Matrix<T> hankel_from(const std::vector<T>& mom, std::size_t n, std::size_t shift) {
    Matrix<T> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = mom[i + j + shift];
    return a;
}

// Principal minors of `a`: leading ones only when `leading`, else all of them.
// `row_shift` maps indices of the shifted Hankel block back to the full matrix.
inline std::optional<std::pair<MinorIndex, Rational>> first_bad_principal(const Matrix<Rational>& a, bool strict,
                                                                          std::size_t row_shift) {
    const std::size_t n = a.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        auto sets = strict ? std::vector<std::vector<std::size_t>>{index_range(0, k)} : combinations(n, k);
        for (const auto& s : sets) {
            Rational d = bareiss_det(a.submatrix(s, s));
            if (strict ? sgn(d) <= 0 : sgn(d) < 0) {
                MinorIndex idx{s, s};
                for (auto& r : idx.rows) r += row_shift;
                return std::make_pair(idx, d);
            }
        }
    }
    return std::nullopt;
}

inline double min_eigenvalue(const Matrix<double>& a) {
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) e(i, j) = a(i, j);
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

inline double spectral_scale(const Matrix<double>& a) {
    double mx = 0.0;
    for (double x : a.data()) mx = std::max(mx, std::abs(x));
    return mx * static_cast<double>(a.rows());
}

}  // namespace detail

// Hankel A_ij = moments[i+j] with A^(1) its shifted block (drop first row and
// last column). Strict: both positive definite; lax: both positive semidefinite.
inline Verdict hankel_check(const std::vector<Rational>& moments, bool strict) {
    if (moments.size() % 2 == 0) throw std::invalid_argument("moment sequence must have odd length 2n-1");
    const std::size_t n = (moments.size() + 1) / 2;
    Verdict v;
    v.order = n;
    v.strict = strict;
    v.gate = "exact";
    auto a = detail::hankel_from(moments, n, 0);
    auto bad = detail::first_bad_principal(a, strict, 0);
    if (!bad && n > 1) bad = detail::first_bad_principal(detail::hankel_from(moments, n - 1, 1), strict, 1);
    if (bad) {
        v.status = Status::fail;
        v.witness = bad->first;
        v.value = Scalar(bad->second);
    } else {
        v.status = strict ? Status::tp : Status::tn;
    }
    return v;
}

inline Verdict hankel_check(const std::vector<double>& moments, bool strict,
                            std::optional<double> tol = std::nullopt) {
    if (moments.size() % 2 == 0) throw std::invalid_argument("moment sequence must have odd length 2n-1");
    const double t = tol.value_or(default_float_tol);
    if (t < 0) throw std::invalid_argument("tolerance must be non-negative");
    const std::size_t n = (moments.size() + 1) / 2;
    Verdict v;
    v.order = n;
    v.strict = strict;
    v.gate = "eigenvalue";
    v.tol = t;
    for (std::size_t shift = 0; shift < 2 && n - shift >= 1; ++shift) {
        auto a = detail::hankel_from(moments, n - shift, shift);
        const double g = t * detail::spectral_scale(a);
        const double lo = detail::min_eigenvalue(a);
        const bool bad = strict ? lo <= g : lo < -g;
        v.ambiguous |= strict ? (lo > g / 10 && lo <= 10 * g) : (lo < -g / 10 && lo >= -10 * g);
        if (!bad) continue;
        // Report the first principal minor that carries the failure; the whole
        // block serves as witness when rounding hides it in every minor.
        MinorIndex w{index_range(0, a.rows()), index_range(0, a.rows())};
        double wv = lu_det(a);
        bool found = false;
        for (std::size_t k = 1; k <= a.rows() && !found; ++k) {
            for (const auto& s : strict ? std::vector<std::vector<std::size_t>>{index_range(0, k)}
                                        : combinations(a.rows(), k)) {
                double d = lu_det(a.submatrix(s, s));
                double gh = t * hadamard_bound(a.submatrix(s, s));
                if (strict ? d <= gh : d < -gh) {
                    w = {s, s};
                    wv = d;
                    found = true;
                    break;
                }
            }
        }
        for (auto& r : w.rows) r += shift;
        v.status = Status::fail;
        v.witness = w;
        v.value = Scalar(wv);
        return v;
    }
    v.status = strict ? Status::tp : Status::tn;
    return v;
}

}  // namespace totpos
