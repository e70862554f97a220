#pragma once

#include <optional>
#include <vector>

#include "qma/sparse_op.hpp"

namespace qma {

// Dense exact linear algebra over the coefficient field K. Matrices here are
// small (side <= a few hundred at desk scale), so plain fraction-arithmetic
// Gaussian elimination is the whole story.

template <class K>
using DenseMat = std::vector<std::vector<K>>;

template <class K>
DenseMat<K> to_dense(const SparseOp<K>& op) {
    const FlatIndex n = op.side();
    DenseMat<K> m(n, std::vector<K>(n, K(0)));
    for (const auto& [i, row] : op.rows())
        for (const auto& [j, v] : row) m[i][j] = v;
    return m;
}

// Rank by exhaustive elimination; destroys its argument.
template <class K>
int rank_dense(DenseMat<K>& m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && scalar_is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        const K inv = K(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (scalar_is_zero(m[i][c])) continue;
            const K f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

// Exact rank of an operator as a matrix over K.
template <class K>
int rank_exact(const SparseOp<K>& op) {
    DenseMat<K> m = to_dense(op);
    return rank_dense(m);
}

// Solves A X = B by Gauss-Jordan on the augmented matrix; nullopt when A is
// singular over K.
template <class K>
std::optional<DenseMat<K>> solve_multi(const DenseMat<K>& a, const DenseMat<K>& b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw ShapeError("solve_multi: shape mismatch");
    const std::size_t w = b[0].size();
    DenseMat<K> m(n, std::vector<K>(n + w, K(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        for (std::size_t j = 0; j < w; ++j) m[i][n + j] = b[i][j];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && scalar_is_zero(m[piv][c])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[c], m[piv]);
        const K inv = K(1) / m[c][c];
        for (std::size_t j = c; j < n + w; ++j) m[c][j] = m[c][j] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || scalar_is_zero(m[i][c])) continue;
            const K f = m[i][c];
            for (std::size_t j = c; j < n + w; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    DenseMat<K> x(n, std::vector<K>(w, K(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) x[i][j] = m[i][n + j];
    return x;
}

// Inverse of an operator over K; nullopt when singular.
template <class K>
std::optional<SparseOp<K>> inverse(const SparseOp<K>& op) {
    const FlatIndex n = op.side();
    DenseMat<K> id(n, std::vector<K>(n, K(0)));
    for (FlatIndex i = 0; i < n; ++i) id[i][i] = K(1);
    auto x = solve_multi(to_dense(op), id);
    if (!x) return std::nullopt;
    SparseOp<K> r(op.dim(), op.arity());
    for (FlatIndex i = 0; i < n; ++i)
        for (FlatIndex j = 0; j < n; ++j) r.set(i, j, (*x)[i][j]);
    return r;
}

} // namespace qma
