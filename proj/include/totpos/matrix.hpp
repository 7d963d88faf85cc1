#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace totpos {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m;
        m.rows_ = rows.size();
        m.cols_ = m.rows_ ? rows[0].size() : 0;
        for (const auto& r : rows) {
            if (r.size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            m.data_.insert(m.data_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& data() const { return data_; }

    Matrix submatrix(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const {
        Matrix s(r.size(), c.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = 0; j < c.size(); ++j) s(i, j) = (*this)(r[i], c[j]);
        return s;
    }
    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    // Reverses both row and column order.
    Matrix reversed() const {
        Matrix t(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(i, j) = (*this)(rows_ - 1 - i, cols_ - 1 - j);
        return t;
    }
    template <class F>
    auto map(F&& f) const {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

// Dense matrix of a single scalar kind; the object all minor tests run on.
class RationalMatrix {
public:
    RationalMatrix(Matrix<Rational> m) : kind_(Kind::exact), q_(std::move(m)) { validate(q_); }
    RationalMatrix(Matrix<double> m) : kind_(Kind::floating), f_(std::move(m)) {
        validate(f_);
        for (double x : f_.data())
            if (!std::isfinite(x)) throw std::domain_error("non-finite matrix entry");
    }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    std::size_t rows() const { return is_exact() ? q_.rows() : f_.rows(); }
    std::size_t cols() const { return is_exact() ? q_.cols() : f_.cols(); }
    const Matrix<Rational>& exact() const {
        if (!is_exact()) throw std::logic_error("matrix is float kind");
        return q_;
    }
    const Matrix<double>& floating() const {
        if (is_exact()) throw std::logic_error("matrix is exact kind");
        return f_;
    }
    Scalar at(std::size_t i, std::size_t j) const {
        return is_exact() ? Scalar(q_(i, j)) : Scalar(f_(i, j));
    }
    Matrix<double> to_double() const {
        return is_exact() ? q_.map([](const Rational& q) { return q.get_d(); }) : f_;
    }
    // Exact image of the stored binary64 entries.
    Matrix<Rational> to_exact() const { return is_exact() ? q_ : f_.map(exact_from_double); }

    RationalMatrix reversed() const {
        return is_exact() ? RationalMatrix(q_.reversed()) : RationalMatrix(f_.reversed());
    }
    RationalMatrix transpose() const {
        return is_exact() ? RationalMatrix(q_.transpose()) : RationalMatrix(f_.transpose());
    }

private:
    template <class T>
    static void validate(const Matrix<T>& m) {
        if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("matrix must be at least 1x1");
    }

    Kind kind_;
    Matrix<Rational> q_;
    Matrix<double> f_;
};

// Zero-pads m into the top-left corner of a d x d matrix.
template <class T>
Matrix<T> embed_top_left(const Matrix<T>& m, std::size_t d) {
    if (m.rows() > d || m.cols() > d) throw std::invalid_argument("matrix larger than target size");
    Matrix<T> out(d, d, T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

}  // namespace totpos
