#pragma once

#include "matrix.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace totpos {

// A kernel sampled on strictly increasing coordinates X x Y.
class KernelGrid {
public:
    KernelGrid(std::vector<double> x, std::vector<double> y, Matrix<double> values)
        : x_(std::move(x)), y_(std::move(y)), v_(std::move(values)) {
        check_increasing(x_, "x");
        check_increasing(y_, "y");
        if (v_.rows() != x_.size() || v_.cols() != y_.size())
            throw std::invalid_argument("kernel grid values do not match coordinate lengths");
        for (double t : v_.data())
            if (!std::isfinite(t)) throw std::domain_error("non-finite kernel value");
    }

    static KernelGrid sample(std::vector<double> x, std::vector<double> y,
                             const std::function<double(double, double)>& k) {
        Matrix<double> v(x.size(), y.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) v(i, j) = k(x[i], y[j]);
        return KernelGrid(std::move(x), std::move(y), std::move(v));
    }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }
    const Matrix<double>& values() const { return v_; }
    double operator()(std::size_t i, std::size_t j) const { return v_(i, j); }
    RationalMatrix matrix() const { return RationalMatrix(v_); }

    std::size_t x_index(double t) const { return locate(x_, t, "x"); }
    std::size_t y_index(double t) const { return locate(y_, t, "y"); }

private:
    static void check_increasing(const std::vector<double>& c, const char* name) {
        if (c.empty()) throw std::invalid_argument(std::string("empty ") + name + " coordinates");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!std::isfinite(c[i])) throw std::domain_error("non-finite coordinate");
            if (i && !(c[i - 1] < c[i]))
                throw std::invalid_argument(std::string(name) + " coordinates must be strictly increasing");
        }
    }
    static std::size_t locate(const std::vector<double>& c, double t, const char* name) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] == t) return i;
        throw std::invalid_argument(std::string("node not on ") + name + " grid");
    }

    std::vector<double> x_, y_;
    Matrix<double> v_;
};

}  // namespace totpos
