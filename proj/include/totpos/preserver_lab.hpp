#pragma once

#include "check.hpp"
#include "transform.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace totpos {

enum class Family { A2, B2, SYM2, MONO2, C3, APRIME3, BPRIME3, N4, MOMENT, T5 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::A2: return "A2";
        case Family::B2: return "B2";
        case Family::SYM2: return "SYM2";
        case Family::MONO2: return "MONO2";
        case Family::C3: return "C3";
        case Family::APRIME3: return "APRIME3";
        case Family::BPRIME3: return "BPRIME3";
        case Family::N4: return "N4";
        case Family::MOMENT: return "MOMENT";
        case Family::T5: return "T5";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (Family f : {Family::A2, Family::B2, Family::SYM2, Family::MONO2, Family::C3, Family::APRIME3,
                     Family::BPRIME3, Family::N4, Family::MOMENT, Family::T5})
        if (s == family_name(f)) return f;
    throw std::invalid_argument("unknown family '" + s + "'");
}

struct FamilyId {
    Family tag = Family::C3;
    Rational x = 0, y = 0, eps = 0;
    std::size_t n = 0;  // MOMENT size

    static FamilyId a2(Rational x, Rational y) { return {Family::A2, x, y}; }
    static FamilyId b2(Rational x, Rational y) { return {Family::B2, x, y}; }
    static FamilyId sym2(Rational x, Rational y) { return {Family::SYM2, x, y}; }
    static FamilyId mono2(Rational x, Rational y) { return {Family::MONO2, x, y}; }
    static FamilyId c3() { return {Family::C3}; }
    static FamilyId aprime3(Rational x, Rational y) { return {Family::APRIME3, x, y}; }
    static FamilyId bprime3(Rational x, Rational y) { return {Family::BPRIME3, x, y}; }
    static FamilyId n4(Rational eps, Rational x) { return {Family::N4, x, 0, eps}; }
    static FamilyId moment(Rational x, std::size_t n) { return {Family::MOMENT, x, 0, 0, n}; }
    static FamilyId t5(Rational x) { return {Family::T5, x}; }

    std::size_t size() const {
        switch (tag) {
            case Family::C3:
            case Family::APRIME3:
            case Family::BPRIME3: return 3;
            case Family::N4: return 4;
            case Family::MOMENT: return n;
            case Family::T5: return 5;
            default: return 2;
        }
    }
    bool symmetric() const { return tag != Family::A2 && tag != Family::B2 && tag != Family::N4; }
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(std::string("family parameter out of range: ") + what);
}

inline const int t5_base[5][5] = {{2, 3, 6, 14, 36},
                                  {3, 6, 14, 36, 98},
                                  {6, 14, 36, 98, 276},
                                  {14, 36, 98, 284, 842},
                                  {36, 98, 276, 842, 2604}};

inline Matrix<Rational> n4_shape(const Rational& eps) {
    return {{0, 0, 0, 0},
            {0, 1, 2, 3},
            {0, 2, Rational(4) + eps, Rational(6) + Rational(5, 2) * eps},
            {0, 3, 8, Rational(14) + eps}};
}

}  // namespace detail

inline RationalMatrix make_family(const FamilyId& id) {
    using detail::require;
    const Rational &x = id.x, &y = id.y;
    switch (id.tag) {
        case Family::A2:
            require(x >= 0 && y >= 0, "A2 needs x, y >= 0");
            return Matrix<Rational>{{x, x * y}, {1, y}};
        case Family::B2:
            require(x >= 0 && y >= 0, "B2 needs x, y >= 0");
            return Matrix<Rational>{{x * y, x}, {y, 1}};
        case Family::SYM2: {
            require(x >= 0 && y >= 0, "SYM2 needs x, y >= 0");
            const double g = std::sqrt(x.get_d() * y.get_d());
            return Matrix<double>{{x.get_d(), g}, {g, y.get_d()}};
        }
        case Family::MONO2:
            require(x >= 0 && y >= x, "MONO2 needs 0 <= x <= y");
            return Matrix<Rational>{{y, x}, {x, y}};
        case Family::C3: {
            const double r = 1.0 / std::sqrt(2.0);
            return Matrix<double>{{1, r, 0}, {r, 1, r}, {0, r, 1}};
        }
        case Family::APRIME3:
            require(x >= 0 && y >= 0, "APRIME3 needs x, y >= 0");
            return Matrix<Rational>{{x * x, x, x * y}, {x, 1, y}, {x * y, y, y * y}};
        case Family::BPRIME3:
            require(x >= 0 && y > 0, "BPRIME3 needs x >= 0, y > 0");
            return Matrix<Rational>{{x * x * y, x * y, x}, {x * y, y, 1}, {x, 1, 1 / y}};
        case Family::N4: {
            require(id.eps > 0 && id.eps < 1 && x > 0, "N4 needs 0 < eps < 1, x > 0");
            auto m = detail::n4_shape(id.eps);
            return m.map([&](const Rational& v) { return Rational(1 + x * v); });
        }
        case Family::MOMENT: {
            require(x > 0 && x < 1 && id.n >= 1, "MOMENT needs 0 < x < 1, n >= 1");
            Matrix<Rational> m(id.n, id.n);
            for (std::size_t i = 0; i < id.n; ++i)
                for (std::size_t j = 0; j < id.n; ++j)
                    m(i, j) = 1 + rational_pow(x, static_cast<unsigned long>(i + j));
            return m;
        }
        case Family::T5: {
            require(x >= 0, "T5 needs x >= 0");
            Matrix<Rational> m(5, 5);
            for (std::size_t i = 0; i < 5; ++i)
                for (std::size_t j = 0; j < 5; ++j) m(i, j) = 1 + x * detail::t5_base[i][j];
            return m;
        }
    }
    throw std::logic_error("unhandled family");
}

inline std::string describe(const FamilyId& id) {
    auto num = [](const Rational& q) { return format_double(q.get_d()); };
    switch (id.tag) {
        case Family::C3: return "C3";
        case Family::N4: return "N4(eps=" + num(id.eps) + ", x=" + num(id.x) + ")";
        case Family::MOMENT: return "MOMENT(x=" + num(id.x) + ", n=" + std::to_string(id.n) + ")";
        case Family::T5: return "T5(x=" + num(id.x) + ")";
        default: return std::string(family_name(id.tag)) + "(x=" + num(id.x) + ", y=" + num(id.y) + ")";
    }
}

// 10^(lo + (hi-lo) i / count) for i = 0..count-1; the upper end is excluded.
inline std::vector<double> log_grid(double lo_exp, double hi_exp, std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * static_cast<double>(i) / static_cast<double>(count));
    return g;
}

struct GridSpec {
    std::vector<double> eps, x, y, t5_x;

    // T5 reaches down to 1e-6: at alpha = 3 its determinant only turns
    // negative below x ~ 7.6e-5.
    static GridSpec defaults() {
        GridSpec g;
        g.eps = log_grid(-4, 0, 25);
        g.x = log_grid(-4, 0, 25);
        g.y = g.x;
        g.t5_x = log_grid(-6, -1, 50);
        g.t5_x.push_back(0.1);
        return g;
    }
};

// Parameter points of one family in lexicographic grid order.
inline std::vector<FamilyId> family_points(Family f, const GridSpec& g, std::size_t moment_n = 4) {
    std::vector<FamilyId> out;
    auto q = [](double v) { return exact_from_double(v); };
    switch (f) {
        case Family::C3: out.push_back(FamilyId::c3()); break;
        case Family::N4:
            for (double e : g.eps)
                if (e > 0 && e < 1)
                    for (double x : g.x) out.push_back(FamilyId::n4(q(e), q(x)));
            break;
        case Family::MOMENT:
            for (double x : g.x)
                if (x > 0 && x < 1) out.push_back(FamilyId::moment(q(x), moment_n));
            break;
        case Family::T5:
            for (double x : g.t5_x) out.push_back(FamilyId::t5(q(x)));
            break;
        default:
            for (double x : g.x)
                for (double y : g.y) {
                    if (f == Family::MONO2 && y < x) continue;
                    out.push_back({f, q(x), q(y)});
                }
    }
    return out;
}

inline std::vector<Family> relevant_families(std::size_t d, bool symmetric) {
    std::vector<Family> out;
    for (Family f : {Family::A2, Family::B2, Family::SYM2, Family::MONO2, Family::C3, Family::APRIME3,
                     Family::BPRIME3, Family::N4, Family::MOMENT, Family::T5}) {
        FamilyId probe{f};
        probe.n = d;
        if (symmetric && !probe.symmetric()) continue;
        if (probe.size() > d) continue;
        out.push_back(f);
    }
    return out;
}

struct Witness {
    FamilyId family;
    MinorIndex minor;
    Scalar value;
    bool ambiguous = false;
};

inline CheckOptions lab_options(const TransformSpec& f) {
    CheckOptions opt;
    opt.gate = FloatGate::certified;
    double a = f.type == TransformSpec::Type::power ? std::abs(f.alpha.get_d()) : 0.0;
    opt.entry_error = (a + 4) * DBL_EPSILON;
    opt.threads = 1;
    return opt;
}

// Materializes F[family], zero-padded to d x d when d exceeds the family size.
inline RationalMatrix transformed_family(const FamilyId& id, const TransformSpec& f, std::size_t d = 0) {
    RationalMatrix m = make_family(id);
    if (d > m.rows()) {
        m = m.is_exact() ? RationalMatrix(embed_top_left(m.exact(), d))
                         : RationalMatrix(embed_top_left(m.floating(), d));
    }
    return apply_entrywise(m, f);
}

// First grid point whose transformed matrix fails the lax check at full order.
inline std::optional<Witness> search_counterexample(const TransformSpec& f, Family family, const GridSpec& grid,
                                                    std::size_t d = 0, unsigned threads = 0) {
    FamilyId probe{family};
    probe.n = d ? d : 4;
    auto points = family_points(family, grid, probe.n);
    const auto opt = lab_options(f);
    auto run = [&](std::size_t i) {
        auto m = transformed_family(points[i], f, d);
        return check(m, m.rows(), false, opt);
    };
    auto res = detail::scan(
        points.size(), [&](std::size_t i) { return std::pair<bool, bool>{!run(i).holds(), false}; },
        worker_count(threads));
    if (!res.first_failure) return std::nullopt;
    auto v = run(*res.first_failure);
    return Witness{points[*res.first_failure], *v.witness, *v.value, v.ambiguous};
}

enum class Bucket { preserves, fails };

inline const char* bucket_name(Bucket b) { return b == Bucket::preserves ? "PRESERVES" : "FAILS"; }

struct Expectation {
    Bucket bucket;
    std::string rule;
};

// Which powers c*x^alpha preserve TN (lax) or TP (strict) on d x d matrices.
inline Expectation expected_verdict(double alpha, std::size_t d, bool symmetric, bool strict) {
    auto yes = [](std::string r) { return Expectation{Bucket::preserves, std::move(r)}; };
    auto no = [](std::string r) { return Expectation{Bucket::fails, std::move(r)}; };
    auto pick = [](bool ok, std::string r) { return Expectation{ok ? Bucket::preserves : Bucket::fails, std::move(r)}; };
    if (d == 0) throw std::invalid_argument("dimension must be positive");
    if (alpha < 0) {
        if (strict && d == 1) return yes("d=1: any positive map");
        return no("negative powers are not admissible");
    }
    if (alpha == 0) {
        if (!strict) return yes("non-negative constants preserve TN");
        return pick(d == 1, "constants preserve TP only for d=1");
    }
    if (d <= 2) return yes("d<=2: every c*x^alpha with alpha>0");
    if (d == 3) return pick(alpha >= 1, "d=3: alpha >= 1");
    if (d == 4 && symmetric) return pick(alpha == 1 || alpha >= 2, "symmetric d=4: alpha in {1} U [2,inf)");
    if (d == 4) return pick(alpha == 1, "d=4: alpha = 1");
    return pick(alpha == 1, "d>=5: alpha = 1");
}

struct PreserverReport {
    TransformSpec transform;
    std::size_t d = 0;
    bool symmetric = false;
    Expectation expected;
    bool refuted = false;
    std::optional<Witness> witness;
    std::vector<Family> families;
    std::size_t points_tested = 0;

    // PASS only speaks for the sampled grid.
    std::string empirical() const { return refuted ? "REFUTED" : "PASS (grid-relative)"; }
    bool consistent() const { return refuted == (expected.bucket == Bucket::fails); }
};

inline PreserverReport test_power_preserver(double alpha, double c, std::size_t d, bool symmetric,
                                            const GridSpec& grid = GridSpec::defaults(), unsigned threads = 0) {
    if (d < 2 || d > 5) throw std::invalid_argument("dimension must be in {2,3,4,5}");
    if (!(c > 0)) throw std::invalid_argument("c must be positive");
    PreserverReport r;
    r.transform = TransformSpec::power(alpha, c);
    r.d = d;
    r.symmetric = symmetric;
    r.expected = expected_verdict(alpha, d, symmetric, false);
    r.families = relevant_families(d, symmetric);
    for (Family f : r.families) {
        r.points_tested += family_points(f, grid, d).size();
        if (auto w = search_counterexample(r.transform, f, grid, d, threads)) {
            r.refuted = true;
            r.witness = w;
            break;
        }
    }
    return r;
}

// Two-term small-x expansion of det N(eps,x)^alpha.
inline double n4_expansion(double eps, double alpha, double x) {
    const double a3 = alpha * alpha * alpha, a4 = a3 * alpha;
    return eps * eps * a3 * x * x * x +
           0.25 * (8 - 70 * eps - 59 * eps * eps - 4 * eps * eps * eps) * (a3 - a4) * x * x * x * x;
}

// det N(eps,x)^alpha after subtracting the all-ones first row: the remaining
// 3x3 block (1 + x m_ij)^alpha - 1 is formed with expm1/log1p and its
// determinant taken exactly.
inline double n4_power_det(double eps, double alpha, double x) {
    const double m[3][3] = {{1, 2, 3}, {2, 4 + eps, 6 + 2.5 * eps}, {3, 8, 14 + eps}};
    Matrix<double> b(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = std::expm1(alpha * std::log1p(x * m[i][j]));
    return bareiss_det(b.map(exact_from_double)).get_d();
}

}  // namespace totpos
