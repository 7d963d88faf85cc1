#pragma once

#include "det.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace totpos {

struct MinorIndex {
    std::vector<std::size_t> rows, cols;
    std::size_t order() const { return rows.size(); }
    friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

inline std::vector<std::size_t> index_range(std::size_t start, std::size_t k) {
    std::vector<std::size_t> r(k);
    std::iota(r.begin(), r.end(), start);
    return r;
}

inline void require_order(const RationalMatrix& m, std::size_t p) {
    if (p < 1 || p > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("order p=" + std::to_string(p) + " outside [1, " +
                                std::to_string(std::min(m.rows(), m.cols())) + "]");
}

inline Scalar minor_value(const RationalMatrix& m, const MinorIndex& idx) {
    if (m.is_exact()) return Scalar(bareiss_det(m.exact().submatrix(idx.rows, idx.cols)));
    return Scalar(lu_det(m.floating().submatrix(idx.rows, idx.cols)));
}

// Visits every minor of order <= p: by order, then lexicographically in (rows, cols).
// The visitor returns false to stop early.
template <class Visitor>
void for_each_minor(const RationalMatrix& m, std::size_t p, Visitor&& visit) {
    require_order(m, p);
    for (std::size_t k = 1; k <= p; ++k) {
        auto rc = combinations(m.rows(), k);
        auto cc = combinations(m.cols(), k);
        for (const auto& r : rc)
            for (const auto& c : cc) {
                MinorIndex idx{r, c};
                if (!visit(idx, minor_value(m, idx))) return;
            }
    }
}

inline std::vector<std::pair<MinorIndex, Scalar>> minors(const RationalMatrix& m, std::size_t p) {
    std::vector<std::pair<MinorIndex, Scalar>> out;
    for_each_minor(m, p, [&](const MinorIndex& i, const Scalar& v) {
        out.emplace_back(i, v);
        return true;
    });
    return out;
}

}  // namespace totpos
