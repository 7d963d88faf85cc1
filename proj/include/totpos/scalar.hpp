#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace totpos {

using Rational = mpq_class;

enum class Kind { exact, floating };

inline const char* kind_name(Kind k) { return k == Kind::exact ? "exact" : "float"; }

// Accepts "p/q", integers and plain decimals such as "-0.125" or "3e-2".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    s = s.substr(b);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long exp10 = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        char c = s[i];
        if (c == '.' && !seen_dot) { seen_dot = true; continue; }
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal '" + s + "'");
        digits.push_back(c);
        any = true;
        if (seen_dot) --exp10;
    }
    if (!any) throw std::invalid_argument("bad rational literal '" + s + "'");
    if (i < s.size()) {
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(s.substr(i + 1), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        if (used != s.size() - i - 1) throw std::invalid_argument("bad exponent in '" + s + "'");
        exp10 += e;
    }
    mpz_class num(digits, 10);
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 < 0 ? Rational(num, pw) : Rational(num * pw);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational exact_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite float cannot be made exact");
    return Rational(x);
}

inline Rational rational_pow(const Rational& b, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double x) { return (x > 0) - (x < 0); }

// Homogeneous-kind scalar as carried by witnesses and determinants.
class Scalar {
public:
    Scalar() : v_(0.0) {}
    Scalar(Rational q) : v_(std::move(q)) {}
    Scalar(double x) : v_(x) {
        if (!std::isfinite(x)) throw std::domain_error("non-finite float scalar");
    }

    Kind kind() const { return std::holds_alternative<Rational>(v_) ? Kind::exact : Kind::floating; }
    bool is_exact() const { return kind() == Kind::exact; }
    const Rational& exact() const { return std::get<Rational>(v_); }
    double as_double() const { return is_exact() ? std::get<Rational>(v_).get_d() : std::get<double>(v_); }
    int sign() const { return is_exact() ? totpos::sign(exact()) : totpos::sign(std::get<double>(v_)); }
    std::string str() const;

private:
    std::variant<Rational, double> v_;
};

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string Scalar::str() const { return is_exact() ? to_string(exact()) : format_double(as_double()); }

}  // namespace totpos
