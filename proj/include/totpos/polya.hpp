#pragma once

#include "check.hpp"
#include "kernel_grid.hpp"
#include "polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// sum c_i e^{-a_i x} 1{x >= 0} (one-sided) or sum c_i e^{-a_i |x|} (two-sided, even).
template <class T>
struct ExpPoly {
    bool two_sided = false;
    std::vector<T> c, a;

    double operator()(double x) const {
        if (!two_sided && x < 0) return 0.0;
        const double t = two_sided ? std::abs(x) : x;
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += to_double(c[i]) * std::exp(-to_double(a[i]) * t);
        return s;
    }
};

template <class T>
ExpPoly<T> operator+(const ExpPoly<T>& f, const ExpPoly<T>& g) {
    if (f.two_sided != g.two_sided) throw std::invalid_argument("cannot add one-sided and two-sided densities");
    ExpPoly<T> h = f;
    h.c.insert(h.c.end(), g.c.begin(), g.c.end());
    h.a.insert(h.a.end(), g.a.begin(), g.a.end());
    return h;
}

struct PffFamily {
    enum class Type { lambda_d, phi, gauss, m_alpha, one_sided_n, exp_poly };
    Type type = Type::lambda_d;
    Rational d = 1;                // lambda_d value at the origin
    double gamma = 1.0;            // Gaussian parameter
    Rational alpha = 1;            // M_alpha
    std::array<double, 3> a{};     // OneSidedN exponents
    std::optional<std::array<Rational, 3>> a_exact;
    ExpPoly<Rational> poly;        // general exponential polynomial

    static PffFamily lambda(Rational d = 1) {
        if (d < 0 || d > 1) throw std::domain_error("lambda_d needs d in [0,1]");
        PffFamily f;
        f.d = d;
        return f;
    }
    static PffFamily phi() { return {Type::phi}; }
    static PffFamily gauss_density(double gamma) {
        if (!(gamma > 0)) throw std::domain_error("Gaussian parameter must be positive");
        PffFamily f{Type::gauss};
        f.gamma = gamma;
        return f;
    }
    static PffFamily m_alpha(Rational alpha) {
        if (!(alpha > 0)) throw std::domain_error("M_alpha needs alpha > 0");
        PffFamily f{Type::m_alpha};
        f.alpha = alpha;
        return f;
    }
    static PffFamily one_sided_n(double a1, double a2, double a3) {
        if (!(0 <= a1 && a1 < a2 && a2 < a3)) throw std::domain_error("OneSidedN needs 0 <= a1 < a2 < a3");
        PffFamily f{Type::one_sided_n};
        f.a = {a1, a2, a3};
        return f;
    }
    static PffFamily one_sided_n(Rational a1, Rational a2, Rational a3) {
        PffFamily f = one_sided_n(a1.get_d(), a2.get_d(), a3.get_d());
        if (!(a1 < a2 && a2 < a3)) throw std::domain_error("OneSidedN needs a1 < a2 < a3");
        f.a_exact = std::array<Rational, 3>{a1, a2, a3};
        return f;
    }
    static PffFamily exp_poly(ExpPoly<Rational> p) {
        if (p.c.size() != p.a.size() || p.c.empty()) throw std::invalid_argument("exponential polynomial needs matching c, a");
        PffFamily f{Type::exp_poly};
        f.poly = std::move(p);
        return f;
    }

    // Canonical coefficients (a3-a2, -(a3-a1), a2-a1).
    template <class T>
    static std::array<T, 3> canonical_c(const std::array<T, 3>& a) {
        return {T(a[2] - a[1]), T(-(a[2] - a[0])), T(a[1] - a[0])};
    }

    std::string name() const {
        switch (type) {
            case Type::lambda_d: return "lambda_" + to_string(d);
            case Type::phi: return "phi";
            case Type::gauss: return "gauss(" + format_double(gamma) + ")";
            case Type::m_alpha: return "M_" + to_string(alpha);
            case Type::one_sided_n:
                return "N(" + format_double(a[0]) + "," + format_double(a[1]) + "," + format_double(a[2]) + ")";
            case Type::exp_poly: return "exp_poly";
        }
        return "?";
    }
};

// Exponential-polynomial form of M_alpha, OneSidedN (exact exponents) and exp_poly.
inline ExpPoly<Rational> exp_poly_of(const PffFamily& f) {
    switch (f.type) {
        case PffFamily::Type::m_alpha: return {true, {f.alpha + 1, -f.alpha}, {f.alpha, f.alpha + 1}};
        case PffFamily::Type::lambda_d: return {false, {1}, {1}};
        case PffFamily::Type::exp_poly: return f.poly;
        case PffFamily::Type::one_sided_n: {
            if (!f.a_exact) throw std::domain_error("irrational exponents have no exact form");
            auto c = PffFamily::canonical_c(*f.a_exact);
            return {false, {c[0], c[1], c[2]}, {(*f.a_exact)[0], (*f.a_exact)[1], (*f.a_exact)[2]}};
        }
        default: throw std::domain_error("family is not an exponential polynomial");
    }
}

inline ExpPoly<double> exp_poly_float(const PffFamily& f) {
    if (f.type == PffFamily::Type::one_sided_n) {
        auto c = PffFamily::canonical_c(f.a);
        return {false, {c[0], c[1], c[2]}, {f.a[0], f.a[1], f.a[2]}};
    }
    auto e = exp_poly_of(f);
    ExpPoly<double> out{e.two_sided};
    for (std::size_t i = 0; i < e.c.size(); ++i) {
        out.c.push_back(e.c[i].get_d());
        out.a.push_back(e.a[i].get_d());
    }
    return out;
}

inline double eval_pff(const PffFamily& f, double x) {
    switch (f.type) {
        case PffFamily::Type::lambda_d:
            if (x < 0) return 0.0;
            if (x == 0) return f.d.get_d();
            return std::exp(-x);
        case PffFamily::Type::phi: return x > 0 ? x * std::exp(-x) : 0.0;
        case PffFamily::Type::gauss:
            return std::exp(-x * x / (4 * f.gamma)) / (2 * std::sqrt(M_PI * f.gamma));
        case PffFamily::Type::one_sided_n: return exp_poly_float(f)(x);
        default: return exp_poly_of(f)(x);
    }
}

// p / q with q monic. Common factors are kept and reported by gcd().
template <class T>
struct RationalFunction {
    Polynomial<T> p, q;
    bool exact = std::is_same_v<T, Rational>;
    double strip_lo = -INFINITY, strip_hi = INFINITY;

    template <class U>
    U operator()(const U& s) const {
        return p(s) / q(s);
    }
    bool same_as(const RationalFunction& o) const { return p * o.q == o.p * q; }
};

inline Polynomial<Rational> gcd(const RationalFunction<Rational>& r) { return gcd(r.p, r.q); }

template <class T>
RationalFunction<T> operator+(const RationalFunction<T>& f, const RationalFunction<T>& g) {
    RationalFunction<T> h;
    h.p = f.p * g.q + g.p * f.q;
    h.q = f.q * g.q;
    h.strip_lo = std::max(f.strip_lo, g.strip_lo);
    h.strip_hi = std::min(f.strip_hi, g.strip_hi);
    return h;
}

namespace detail {

// Denominator factor for exponent a: (s + a) one-sided, (s^2 - a^2) two-sided.
template <class T>
Polynomial<T> pole_factor(const T& a, bool two_sided) {
    if (two_sided) return Polynomial<T>(std::vector<T>{T(-(a * a)), T(0), T(1)});
    return Polynomial<T>::linear(a);
}

// Numerator attached to c e^{-a x}: c (one-sided) or -2ac (two-sided).
template <class T>
T pole_weight(const T& c, const T& a, bool two_sided) {
    return two_sided ? T(-2 * a * c) : c;
}

template <class T>
ExpPoly<T> merged(const ExpPoly<T>& f) {
    ExpPoly<T> out{f.two_sided};
    for (std::size_t i = 0; i < f.a.size(); ++i) {
        auto it = std::find(out.a.begin(), out.a.end(), f.a[i]);
        if (it == out.a.end()) {
            out.a.push_back(f.a[i]);
            out.c.push_back(f.c[i]);
        } else {
            out.c[static_cast<std::size_t>(it - out.a.begin())] += f.c[i];
        }
    }
    ExpPoly<T> nz{f.two_sided};
    for (std::size_t i = 0; i < out.a.size(); ++i)
        if (out.c[i] != T(0)) {
            nz.a.push_back(out.a[i]);
            nz.c.push_back(out.c[i]);
        }
    return nz;
}

}  // namespace detail

template <class T>
RationalFunction<T> laplace(const ExpPoly<T>& f0) {
    auto f = detail::merged(f0);
    if (f.a.empty()) throw std::domain_error("zero density has no Laplace transform of interest");
    for (const auto& a : f.a)
        if (f.two_sided ? !(a > T(0)) : false) throw std::domain_error("two-sided exponents must be positive");
    RationalFunction<T> r;
    r.q = Polynomial<T>::constant(T(1));
    r.p = Polynomial<T>();
    for (std::size_t i = 0; i < f.a.size(); ++i) {
        Polynomial<T> term = Polynomial<T>::constant(detail::pole_weight(f.c[i], f.a[i], f.two_sided));
        for (std::size_t j = 0; j < f.a.size(); ++j)
            if (j != i) term = term * detail::pole_factor(f.a[j], f.two_sided);
        r.p = r.p + term;
        r.q = r.q * detail::pole_factor(f.a[i], f.two_sided);
    }
    double amin = INFINITY;
    for (const auto& a : f.a) amin = std::min(amin, to_double(a));
    r.strip_lo = -amin;
    r.strip_hi = f.two_sided ? amin : INFINITY;
    return r;
}

inline RationalFunction<Rational> laplace(const PffFamily& f) {
    switch (f.type) {
        case PffFamily::Type::gauss: throw std::domain_error("the Gaussian has a transcendental Laplace transform");
        case PffFamily::Type::phi: {
            RationalFunction<Rational> r;
            r.p = Polynomial<Rational>::constant(1);
            r.q = Polynomial<Rational>::linear(1) * Polynomial<Rational>::linear(1);
            r.strip_lo = -1;
            return r;
        }
        case PffFamily::Type::lambda_d: {
            // The value at the origin does not affect the integral.
            return laplace(ExpPoly<Rational>{false, {1}, {1}});
        }
        default: return laplace(exp_poly_of(f));
    }
}

inline RationalFunction<double> laplace_float(const PffFamily& f) {
    if (f.type == PffFamily::Type::one_sided_n && !f.a_exact) return laplace(exp_poly_float(f));
    auto r = laplace(f);
    RationalFunction<double> out;
    std::vector<double> p, q;
    for (const auto& c : r.p.coeffs()) p.push_back(c.get_d());
    for (const auto& c : r.q.coeffs()) q.push_back(c.get_d());
    out.p = Polynomial<double>(p);
    out.q = Polynomial<double>(q);
    out.exact = false;
    out.strip_lo = r.strip_lo;
    out.strip_hi = r.strip_hi;
    return out;
}

// Multinomial expansion of f^n; exponents are kept separate (not merged) so
// coincidences can be detected by the caller.
template <class T>
ExpPoly<T> power_terms(const ExpPoly<T>& f, unsigned n) {
    ExpPoly<T> out{f.two_sided, {T(1)}, {T(0)}};
    for (unsigned k = 0; k < n; ++k) {
        ExpPoly<T> next{f.two_sided};
        for (std::size_t i = 0; i < out.c.size(); ++i)
            for (std::size_t j = 0; j < f.c.size(); ++j) {
                next.c.push_back(out.c[i] * f.c[j]);
                next.a.push_back(out.a[i] + f.a[j]);
            }
        out = detail::merged(next);
    }
    return out;
}

enum class PowerVerdict { compatible, obstructed };

inline const char* verdict_name(PowerVerdict v) {
    return v == PowerVerdict::compatible ? "PFF-COMPATIBLE" : "OBSTRUCTED";
}

struct RootCheck {
    double root;       // root of q_n in s
    double value;      // p_n at that root
    bool nonzero;
};

struct PowerObstruction {
    unsigned n = 1;
    bool exact = true;
    RationalFunction<Rational> exact_fn;  // when exact
    RationalFunction<double> float_fn;    // always filled
    long p_degree = 0;
    PowerVerdict verdict = PowerVerdict::compatible;
    bool coprime = false;
    bool certificate = false;  // deg p_n >= 1 and p_n nonzero at every root of q_n
    std::vector<RootCheck> roots;
    std::optional<double> gamma;          // OneSidedN: p_n(-n a3) / p_n(-n a1)
    std::optional<double> gamma_formula;  // same from the product formula
    std::optional<double> end_ratio;      // M_alpha: p_n(n alpha) / p_n(n alpha + n)
    std::optional<double> end_ratio_formula;
};

namespace detail {

struct Term {
    double weight;  // coefficient of the exponential
    double rate;    // exponent
};

// p_n at a root of q_n keeps only the term whose pole sits there:
// one-sided  p(-r_t) = c_t prod_{u != t} (r_u - r_t)
// two-sided  p(r_t)  = -2 r_t c_t prod_{u != t} (r_t^2 - r_u^2)
inline double p_at_pole(const std::vector<Term>& terms, std::size_t t, bool two_sided) {
    double v = two_sided ? -2 * terms[t].rate * terms[t].weight : terms[t].weight;
    for (std::size_t u = 0; u < terms.size(); ++u) {
        if (u == t) continue;
        v *= two_sided ? terms[t].rate * terms[t].rate - terms[u].rate * terms[u].rate : terms[u].rate - terms[t].rate;
    }
    return v;
}

inline long float_degree(const Polynomial<double>& p, double rel = 1e-9) {
    double scale = 0.0;
    for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
    long d = p.degree();
    while (d > 0 && std::abs(p.coeff(static_cast<std::size_t>(d))) <= rel * scale) --d;
    return d;
}

}  // namespace detail

inline PowerObstruction power_obstruction(const PffFamily& f, unsigned n) {
    if (n < 1) throw std::invalid_argument("power must be at least 1");
    if (f.type != PffFamily::Type::m_alpha && f.type != PffFamily::Type::one_sided_n)
        throw std::invalid_argument("power obstruction is defined for M_alpha and OneSidedN");
    PowerObstruction out;
    out.n = n;
    const bool exact = f.type == PffFamily::Type::m_alpha || f.a_exact.has_value();
    out.exact = exact;
    const bool two_sided = f.type == PffFamily::Type::m_alpha;

    // Multinomial terms with exponents kept apart to expose coincidences.
    std::vector<detail::Term> terms;
    std::vector<std::array<unsigned, 3>> multi;
    if (f.type == PffFamily::Type::one_sided_n) {
        auto c = PffFamily::canonical_c(f.a);
        for (unsigned i = 0; i <= n; ++i)
            for (unsigned j = 0; i + j <= n; ++j) {
                unsigned k = n - i - j;
                double mult = std::tgamma(n + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(j + 1.0) * std::tgamma(k + 1.0));
                terms.push_back({mult * std::pow(c[0], i) * std::pow(c[1], j) * std::pow(c[2], k),
                                 i * f.a[0] + j * f.a[1] + k * f.a[2]});
                multi.push_back({i, j, k});
            }
        double spread = f.a[2] * n;
        for (std::size_t s = 0; s < terms.size(); ++s)
            for (std::size_t t = s + 1; t < terms.size(); ++t) {
                bool hit = exact ? (Rational(multi[s][0]) * (*f.a_exact)[0] + Rational(multi[s][1]) * (*f.a_exact)[1] +
                                    Rational(multi[s][2]) * (*f.a_exact)[2]) ==
                                       (Rational(multi[t][0]) * (*f.a_exact)[0] + Rational(multi[t][1]) * (*f.a_exact)[1] +
                                        Rational(multi[t][2]) * (*f.a_exact)[2])
                                 : std::abs(terms[s].rate - terms[t].rate) <= 1e-9 * std::max(1.0, spread);
                if (hit) throw std::domain_error("coincident roots of q_n: exponents are rationally dependent");
            }
    } else {
        const double al = f.alpha.get_d();
        for (unsigned k = 0; k <= n; ++k) {
            double binom = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
            terms.push_back({binom * std::pow(al + 1, n - k) * std::pow(-al, k), n * al + k});
        }
    }

    if (exact) {
        auto base = exp_poly_of(f);
        out.exact_fn = laplace(power_terms(base, n));
        std::vector<double> p, q;
        for (const auto& c : out.exact_fn.p.coeffs()) p.push_back(c.get_d());
        for (const auto& c : out.exact_fn.q.coeffs()) q.push_back(c.get_d());
        out.float_fn.p = Polynomial<double>(p);
        out.float_fn.q = Polynomial<double>(q);
        out.float_fn.strip_lo = out.exact_fn.strip_lo;
        out.float_fn.strip_hi = out.exact_fn.strip_hi;
        out.p_degree = out.exact_fn.p.degree();
        out.coprime = gcd(out.exact_fn).degree() == 0;
        auto [quot, rem] = Polynomial<Rational>::divmod(out.exact_fn.q, out.exact_fn.p);
        out.verdict = rem.is_zero() ? PowerVerdict::compatible : PowerVerdict::obstructed;
        // Exact evaluation of p_n at each root of q_n.
        auto be = power_terms(base, n);
        for (const auto& a : be.a) {
            Rational root = two_sided ? a : Rational(-a);
            Rational val = out.exact_fn.p(root);
            out.roots.push_back({root.get_d(), val.get_d(), sgn(val) != 0});
        }
    } else {
        ExpPoly<double> e{false};
        for (const auto& t : terms) {
            e.c.push_back(t.weight);
            e.a.push_back(t.rate);
        }
        out.float_fn = laplace(e);
        out.p_degree = detail::float_degree(out.float_fn.p);
        for (std::size_t t = 0; t < terms.size(); ++t) {
            // A product vanishes only through a vanishing factor; rates were separated above.
            double v = detail::p_at_pole(terms, t, false);
            out.roots.push_back({-terms[t].rate, v, terms[t].weight != 0.0 && v != 0.0});
        }
        out.coprime = std::all_of(out.roots.begin(), out.roots.end(), [](const RootCheck& r) { return r.nonzero; });
        out.verdict = out.p_degree == 0 ? PowerVerdict::compatible : PowerVerdict::obstructed;
    }

    if (f.type == PffFamily::Type::one_sided_n) {
        // Terms are ordered with i descending from n: first is (n,0,0), last (0,0,n).
        std::size_t t1 = 0, t3 = 0;
        for (std::size_t t = 0; t < multi.size(); ++t) {
            if (multi[t][0] == n) t1 = t;
            if (multi[t][2] == n) t3 = t;
        }
        out.gamma = detail::p_at_pole(terms, t3, false) / detail::p_at_pole(terms, t1, false);
        auto c = PffFamily::canonical_c(f.a);
        const double ratio = c[0] / c[1];
        double g = 1.0;
        for (unsigned m = 1; m < n; ++m) {
            double step = (m % 2 == 0) ? 1.0 : -1.0;
            for (unsigned j = 1; j <= m; ++j) step *= (m + 1 - (ratio + 1) * j) / (m + 1 + ratio * j);
            g *= step;
        }
        out.gamma_formula = g;
    } else {
        const double al = f.alpha.get_d();
        std::size_t lo = 0, hi = terms.size() - 1;
        out.end_ratio = detail::p_at_pole(terms, lo, true) / detail::p_at_pole(terms, hi, true);
        double r = 1.0;
        for (unsigned j = 1; j < n; ++j) r *= (2 * n * al + j) * (al + 1) / ((2 * n * (al + 1) - j) * al);
        out.end_ratio_formula = r;
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const RootCheck& a, const RootCheck& b) { return a.root < b.root; });
    const bool nonconstant = out.p_degree >= 1 && (!out.gamma || std::abs(*out.gamma - 1.0) > 1e-9);
    out.certificate = out.verdict == PowerVerdict::obstructed && nonconstant && out.coprime &&
                      std::all_of(out.roots.begin(), out.roots.end(), [](const RootCheck& r) { return r.nonzero; });
    return out;
}

// Finitely supported sequence a_offset, a_offset+1, ...
struct PfSequence {
    long offset = 0;
    Kind kind = Kind::exact;
    std::vector<Rational> q;
    std::vector<double> f;

    static PfSequence exact(std::vector<Rational> v, long offset = 0) {
        PfSequence s{offset, Kind::exact, std::move(v)};
        s.validate();
        return s;
    }
    static PfSequence floating(std::vector<double> v, long offset = 0) {
        PfSequence s{offset, Kind::floating, {}, std::move(v)};
        s.validate();
        return s;
    }
    std::size_t size() const { return kind == Kind::exact ? q.size() : f.size(); }
    double value(long n) const {
        long k = n - offset;
        if (k < 0 || k >= static_cast<long>(size())) return 0.0;
        return kind == Kind::exact ? q[static_cast<std::size_t>(k)].get_d() : f[static_cast<std::size_t>(k)];
    }

private:
    void validate() const {
        bool any = false;
        if (kind == Kind::exact)
            for (const auto& x : q) any |= x != 0;
        else
            for (double x : f) any |= x != 0.0;
        if (!any) throw std::invalid_argument("sequence needs at least one nonzero term");
    }
};

// W x W window of the Toeplitz matrix (a_{i-j}), shifted so the support sits
// on the main diagonal; shifts do not change total non-negativity.
inline RationalMatrix toeplitz_window(const PfSequence& a, std::size_t window) {
    if (window < 1) throw std::invalid_argument("window must be positive");
    const long shift = a.offset + static_cast<long>(a.size() - 1) / 2;
    if (a.kind == Kind::exact) {
        Matrix<Rational> m(window, window);
        for (std::size_t i = 0; i < window; ++i)
            for (std::size_t j = 0; j < window; ++j) {
                long k = static_cast<long>(i) - static_cast<long>(j) + shift - a.offset;
                if (k >= 0 && k < static_cast<long>(a.size())) m(i, j) = a.q[static_cast<std::size_t>(k)];
            }
        return m;
    }
    Matrix<double> m(window, window);
    for (std::size_t i = 0; i < window; ++i)
        for (std::size_t j = 0; j < window; ++j) m(i, j) = a.value(static_cast<long>(i) - static_cast<long>(j) + shift);
    return m;
}

inline Verdict pf_sequence_check(const PfSequence& a, std::size_t p, std::size_t window,
                                 const CheckOptions& opt = {}) {
    if (p > window) throw std::invalid_argument("order exceeds window");
    return check(toeplitz_window(a, window), p, false, opt);
}

struct PolyPfVerdict {
    bool pass = false;
    std::string reason;
    long degree = 0;
    std::size_t zero_multiplicity = 0;
    int distinct_roots = 0;       // of the square-free part, excluding 0
    int distinct_real_roots = 0;
    int distinct_negative_roots = 0;
};

// PASS iff every root of sum coeffs[k] z^k is real and <= 0.
inline PolyPfVerdict generating_poly_pf_check(const std::vector<Rational>& coeffs) {
    Polynomial<Rational> p(coeffs);
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    PolyPfVerdict v;
    v.degree = p.degree();
    std::size_t z = 0;
    while (p.coeff(z) == 0) ++z;
    v.zero_multiplicity = z;
    std::vector<Rational> rest(p.coeffs().begin() + static_cast<long>(z), p.coeffs().end());
    Polynomial<Rational> r(rest);
    const int s0 = sgn(r.coeff(0));
    for (const auto& c : r.coeffs())
        if (sgn(c) != s0) {
            v.reason = "coefficients are not all of one sign";
            return v;
        }
    if (r.degree() == 0) {
        v.pass = true;
        v.reason = "no nonzero roots";
        return v;
    }
    auto g = gcd(r, r.derivative());
    auto sq = Polynomial<Rational>::divmod(r, g).first;
    SturmChain chain(sq);
    v.distinct_roots = static_cast<int>(sq.degree());
    v.distinct_real_roots = chain.real_roots();
    v.distinct_negative_roots = chain.negative_roots();
    v.pass = v.distinct_negative_roots == v.distinct_roots;
    v.reason = v.pass ? "all roots real and non-positive" : "square-free part has non-real or positive roots";
    return v;
}

// Samples f(n/N) for n = lo..hi, optionally raised to an integer power.
inline PfSequence discretize_pff(const PffFamily& f, unsigned N, long lo, long hi, unsigned power = 1) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    if (hi < lo) throw std::invalid_argument("empty window");
    std::vector<double> v;
    for (long n = lo; n <= hi; ++n) {
        double x = eval_pff(f, static_cast<double>(n) / static_cast<double>(N));
        v.push_back(power == 1 ? x : std::pow(x, power));
    }
    return PfSequence::floating(std::move(v), lo);
}

struct JainReport {
    Matrix<double> matrix;
    double min_eigenvalue = 0.0;
    double psd_tol = 0.0;
    bool psd = false;
    Verdict tn;
    double max_rank2_error = 0.0;  // base matrix: |det_2 - sin * sin|
    double max_abs_minor3 = 0.0;   // base matrix: all 3x3 minors
    double min_minor2 = 0.0;       // base matrix: increasing 2x2 minors
};

inline Matrix<double> cosine_matrix(std::size_t n, double theta) {
    Matrix<double> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = std::cos((static_cast<double>(i) - static_cast<double>(j)) * theta);
    return a;
}

inline JainReport cosine_jain(std::size_t n, double theta, double alpha) {
    if (n < 1) throw std::invalid_argument("size must be positive");
    if (n >= 2 && !(theta > 0 && theta < M_PI / (2.0 * static_cast<double>(n) - 2.0)))
        throw std::domain_error("theta must lie in (0, pi/(2n-2))");
    if (alpha < 0) throw std::domain_error("power must be non-negative");
    JainReport r;
    const auto base = cosine_matrix(n, theta);
    r.matrix = base.map([&](double x) { return alpha == 0 ? 1.0 : std::pow(x, alpha); });
    double mx = 0.0;
    for (double x : r.matrix.data()) mx = std::max(mx, std::abs(x));
    r.psd_tol = 1e-9 * mx * static_cast<double>(n);
    r.min_eigenvalue = detail::min_eigenvalue(r.matrix);
    r.psd = r.min_eigenvalue >= -r.psd_tol;
    r.tn = check(RationalMatrix(r.matrix), n, false);
    r.min_minor2 = INFINITY;
    if (n >= 2) {
        for (const auto& rows : combinations(n, 2))
            for (const auto& cols : combinations(n, 2)) {
                double d = lu_det(base.submatrix(rows, cols));
                double expect = std::sin((static_cast<double>(rows[1]) - static_cast<double>(rows[0])) * theta) *
                                std::sin((static_cast<double>(cols[1]) - static_cast<double>(cols[0])) * theta);
                r.max_rank2_error = std::max(r.max_rank2_error, std::abs(d - expect));
                r.min_minor2 = std::min(r.min_minor2, d);
            }
    }
    if (n >= 3)
        for (const auto& rows : combinations(n, 3))
            for (const auto& cols : combinations(n, 3))
                r.max_abs_minor3 = std::max(r.max_abs_minor3, std::abs(lu_det(base.submatrix(rows, cols))));
    return r;
}

// K(x,y) = sum_k c_k u_k^{x+y}.
inline KernelGrid moment_hankel(const std::vector<double>& atoms, const std::vector<double>& weights,
                                const std::vector<double>& grid) {
    if (atoms.empty() || atoms.size() != weights.size()) throw std::invalid_argument("atoms and weights must match");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i] > 0) || !(weights[i] > 0)) throw std::domain_error("atoms and weights must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (atoms[i] == atoms[j]) throw std::domain_error("atoms must be distinct");
    }
    return KernelGrid::sample(grid, grid, [&](double x, double y) {
        double s = 0.0;
        for (std::size_t k = 0; k < atoms.size(); ++k) s += weights[k] * std::pow(atoms[k], x + y);
        return s;
    });
}

}  // namespace totpos
