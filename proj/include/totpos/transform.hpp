#pragma once

#include "matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace totpos {

// Entrywise maps F applied as (a_ij) -> (F(a_ij)).
struct TransformSpec {
    enum class Type { constant, power, step, atom, polynomial };
    Type type = Type::power;
    Rational c = 1;              // leading multiplier
    Rational alpha = 1;          // exponent for power
    std::vector<Rational> coeffs;  // polynomial coefficients, constant term first

    static TransformSpec constant(Rational c) { return {Type::constant, std::move(c)}; }
    static TransformSpec power(Rational alpha, Rational c = 1) { return {Type::power, std::move(c), std::move(alpha)}; }
    static TransformSpec power(double alpha, double c = 1.0) {
        return power(exact_from_double(alpha), exact_from_double(c));
    }
    static TransformSpec step(Rational c = 1) { return {Type::step, std::move(c)}; }
    static TransformSpec atom(Rational c = 1) { return {Type::atom, std::move(c)}; }
    static TransformSpec polynomial(std::vector<Rational> coeffs) {
        TransformSpec t{Type::polynomial};
        t.coeffs = std::move(coeffs);
        return t;
    }

    bool integer_power() const {
        return type == Type::power && alpha.get_den() == 1 && alpha >= 0 && alpha.get_num().fits_ulong_p();
    }
    // Whether an exact matrix stays exact under this map.
    bool keeps_exact() const { return type != Type::power || integer_power(); }

    std::string describe() const {
        switch (type) {
            case Type::constant: return to_string(c);
            case Type::power: return to_string(c) + "*x^" + to_string(alpha);
            case Type::step: return to_string(c) + "*1{x>0}";
            case Type::atom: return to_string(c) + "*1{x=0}";
            case Type::polynomial: {
                std::string s;
                for (std::size_t i = 0; i < coeffs.size(); ++i)
                    s += (i ? " + " : "") + to_string(coeffs[i]) + "*x^" + std::to_string(i);
                return s.empty() ? "0" : s;
            }
        }
        return "";
    }

    Rational apply(const Rational& x) const {
        switch (type) {
            case Type::constant: return c;
            case Type::power: {
                if (!integer_power()) throw std::logic_error("non-integer power leaves the rationals");
                if (alpha == 0) return c;  // 0^0 := 1
                return c * rational_pow(x, alpha.get_num().get_ui());
            }
            case Type::step: return x > 0 ? c : Rational(0);
            case Type::atom: return x == 0 ? c : Rational(0);
            case Type::polynomial: {
                Rational acc = 0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
                return acc;
            }
        }
        return 0;
    }

    double apply(double x) const {
        switch (type) {
            case Type::constant: return c.get_d();
            case Type::power: {
                const double a = alpha.get_d();
                if (alpha == 0) return c.get_d();
                if (x < 0 && alpha.get_den() != 1) throw std::domain_error("negative base with non-integer power");
                if (x == 0 && alpha < 0) throw std::domain_error("zero base with negative power");
                return c.get_d() * std::pow(x, a);
            }
            case Type::step: return x > 0 ? c.get_d() : 0.0;
            case Type::atom: return x == 0 ? c.get_d() : 0.0;
            case Type::polynomial: {
                double acc = 0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->get_d();
                return acc;
            }
        }
        return 0;
    }
};

inline RationalMatrix apply_entrywise(const RationalMatrix& m, const TransformSpec& f) {
    if (m.is_exact()) {
        if (f.type == TransformSpec::Type::power && f.alpha.get_den() != 1)
            for (const auto& x : m.exact().data())
                if (x < 0) throw std::domain_error("negative base with non-integer power");
        if (f.keeps_exact()) return RationalMatrix(m.exact().map([&](const Rational& x) { return f.apply(x); }));
        return RationalMatrix(m.to_double().map([&](double x) { return f.apply(x); }));
    }
    return RationalMatrix(m.floating().map([&](double x) { return f.apply(x); }));
}

}  // namespace totpos
