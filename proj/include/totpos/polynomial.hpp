#pragma once

#include "scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace totpos {

// Dense univariate polynomial, coefficients from the constant term up.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }

    static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
    static Polynomial monomial(std::size_t k, T v = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(v);
        return Polynomial(std::move(c));
    }
    // Monic linear factor s + r.
    static Polynomial linear(T r) { return Polynomial(std::vector<T>{std::move(r), T(1)}); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T lead() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U operator()(const U& x) const {
        U acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
        return acc;
    }

    Polynomial derivative() const {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return Polynomial(std::move(d));
    }
    Polynomial monic() const {
        if (is_zero()) throw std::domain_error("zero polynomial has no monic form");
        return *this * (T(1) / lead());
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<T> c = a.c_;
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const T& s) {
        std::vector<T> c = a.c_;
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    // Euclidean division: a = q b + r with deg r < deg b.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
        std::vector<T> r = a.c_, q;
        const std::size_t db = b.c_.size() - 1;
        if (r.size() > db) q.assign(r.size() - db, T(0));
        for (std::size_t k = r.size(); k-- > db;) {
            T f = r[k] / b.c_.back();
            q[k - db] = f;
            for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
            r[k] = T(0);
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    std::string str(const char* var = "s") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

inline std::string coeff_str(const Rational& q) { return to_string(q); }
inline std::string coeff_str(double x) { return format_double(x); }

template <class T>
std::string Polynomial<T>::str(const char* var) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == T(0)) continue;
        const bool neg = c_[k] < T(0);
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        s += coeff_str(T(neg ? T(-c_[k]) : c_[k]));
        if (k >= 1) s += std::string("*") + var;
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

// Monic gcd over the rationals.
inline Polynomial<Rational> gcd(Polynomial<Rational> a, Polynomial<Rational> b) {
    while (!b.is_zero()) {
        auto r = Polynomial<Rational>::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// Sign changes of the Sturm chain at x (or at -inf / +inf via `at_infinity`).
class SturmChain {
public:
    explicit SturmChain(const Polynomial<Rational>& p) {
        if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
        chain_.push_back(p);
        if (p.degree() >= 1) chain_.push_back(p.derivative());
        while (chain_.size() >= 2 && chain_.back().degree() >= 1) {
            auto r = Polynomial<Rational>::divmod(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero()) break;
            chain_.push_back(-r);
        }
    }

    int variations(const Rational& x) const {
        std::vector<int> signs;
        for (const auto& q : chain_) signs.push_back(sgn(q(x)));
        return count(signs);
    }
    // sign = -1 for -infinity, +1 for +infinity.
    int variations_at_infinity(int sign) const {
        std::vector<int> signs;
        for (const auto& q : chain_) {
            int s = sgn(q.lead());
            if (sign < 0 && q.degree() % 2 == 1) s = -s;
            signs.push_back(s);
        }
        return count(signs);
    }
    // Distinct real roots in (a, b] for a square-free input.
    int roots_between(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
    int real_roots() const { return variations_at_infinity(-1) - variations_at_infinity(1); }
    int negative_roots() const { return variations_at_infinity(-1) - variations(Rational(0)); }

private:
    static int count(const std::vector<int>& signs) {
        int v = 0, prev = 0;
        for (int s : signs) {
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }
    std::vector<Polynomial<Rational>> chain_;
};

}  // namespace totpos
