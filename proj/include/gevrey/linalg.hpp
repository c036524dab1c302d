#pragma once

#include <cstddef>
#include <vector>

#include "gevrey/rational.hpp"

namespace gevrey {

using QMatrix = std::vector<std::vector<Rat>>;

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row in order.
inline std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rat inv = 1 / m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

// Basis of the right kernel {x : M x = 0}, one vector per free column, in
// reduced form: basis k has 1 at its free column and zeros at the others.
inline std::vector<std::vector<Rat>> kernel_basis(QMatrix m, std::size_t cols) {
    if (m.empty()) m.push_back(std::vector<Rat>(cols, Rat(0)));
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace gevrey
