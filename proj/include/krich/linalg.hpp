#pragma once

#include <cstddef>
#include <vector>

#include "krich/error.hpp"
#include "krich/rational.hpp"

namespace krich::exactgeom {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// In-place reduced row echelon form over the rationals: leading entries 1,
/// zeros above and below every pivot, zero rows dropped. Returns the pivot
/// column indices in increasing order. The result is the unique RREF of the
/// row space, so equal row spaces give identical matrices.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Rational lead = m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

/// Basis of the right nullspace of a matrix already in RREF (with the given
/// pivot columns), one vector per free column, in increasing free-column
/// order. Each vector v satisfies R v = 0.
inline Matrix nullspace_from_rref(const Matrix& r, std::size_t cols,
                                  const std::vector<std::size_t>& pivots) {
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    Matrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Row v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational dot(const Row& a, const Row& b) {
    detail::ensure(a.size() == b.size(), "dot product length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace krich::exactgeom
