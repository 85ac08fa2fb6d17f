#pragma once

#include "ellrec/exactnum.hpp"

#include <optional>
#include <vector>

namespace ellrec {

template <class F>
using Matrix = std::vector<std::vector<typename F::value_type>>;

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& k, Matrix<F>& m) {
    using K = typename F::value_type;
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && k.is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        K inv = k.inv(m[r][c]);
        for (auto& v : m[r]) {
            K t = v * inv;
            v = t;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || k.is_zero(m[i][c])) continue;
            K f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) {
                K t = f * m[r][j];
                m[i][j] -= t;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& k, Matrix<F> m) {
    return rref(k, m).size();
}

// Basis of {v : m v = 0}.
template <class F>
std::vector<std::vector<typename F::value_type>> nullspace(const F& k, Matrix<F> m, std::size_t cols) {
    using K = typename F::value_type;
    std::vector<std::vector<K>> basis;
    if (m.empty()) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<K> v(cols, k.zero());
            v[c] = k.one();
            basis.push_back(v);
        }
        return basis;
    }
    auto piv = rref(k, m);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<K> v(cols, k.zero());
        v[free] = k.one();
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][free];
        basis.push_back(v);
    }
    return basis;
}

// One solution of m v = b, or nullopt if inconsistent.
template <class F>
std::optional<std::vector<typename F::value_type>> solve(const F& k, Matrix<F> m,
                                                         const std::vector<typename F::value_type>& b,
                                                         std::size_t cols) {
    using K = typename F::value_type;
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
    auto piv = rref(k, m);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<K> v(cols, k.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = m[i][cols];
    return v;
}

}  // namespace ellrec
