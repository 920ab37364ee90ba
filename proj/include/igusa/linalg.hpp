#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "types.hpp"

namespace igusa::linalg {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

inline RationalMatrix to_rational(const std::vector<IntVector>& rows, std::size_t ncols) {
    RationalMatrix m(rows.size(), std::vector<Rational>(ncols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            m[i][j] = rows[i][j];
        }
    }
    return m;
}

/// In-place reduced row echelon form; pivots are searched in the first ncols columns only,
/// any further (augmented) columns are carried along. Returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[row], m[sel]);
        const Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) {
                continue;
            }
            const Rational f = m[r][col];
            for (std::size_t c = 0; c < m[r].size(); ++c) {
                m[r][c] -= f * m[row][c];
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const std::vector<IntVector>& rows, std::size_t ncols) {
    auto m = to_rational(rows, ncols);
    return row_reduce(m, ncols).size();
}

/// Scales a rational vector to a primitive integer vector with the same direction.
inline IntVector primitive_integer(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) {
        l = boost::multiprecision::lcm(l, denominator(x));
    }
    std::vector<Integer> w;
    Integer g = 0;
    for (const auto& x : v) {
        w.push_back(numerator(x) * (l / denominator(x)));
        g = boost::multiprecision::gcd(g, w.back());
    }
    IntVector out;
    for (auto& x : w) {
        out.push_back(to_int64(g == 0 ? x : x / g));
    }
    return out;
}

/// Integer basis of {x in Q^ncols : rows * x = 0}, each vector primitive.
inline std::vector<IntVector> nullspace(const std::vector<IntVector>& rows, std::size_t ncols) {
    auto m = to_rational(rows, ncols);
    const auto pivots = row_reduce(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<IntVector> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Rational> v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m[r][free];
        }
        basis.push_back(primitive_integer(v));
    }
    return basis;
}

/// Solves A x = b for square invertible A; nullopt if singular.
inline std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        a[i].push_back(b[i]);
    }
    const auto pivots = row_reduce(a, n);
    if (pivots.size() != n) {
        return std::nullopt;
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = a[i][n];
    }
    return x;
}

/// For linearly independent integer rows W (l x n), computes W = H * B where B (l x n) is a
/// basis of the saturated lattice span_Q(W) cap Z^n and H (l x l) is lower triangular with a
/// positive diagonal. Column-style Hermite reduction with a tracked unimodular inverse.
struct Saturation {
    IntegerMatrix h;
    std::vector<IntVector> basis;
};

inline Saturation saturate(const std::vector<IntVector>& w) {
    const std::size_t l = w.size();
    const std::size_t n = l ? w.front().size() : 0;
    IntegerMatrix m(l, std::vector<Integer>(n));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = w[i][j];
        }
    }
    IntegerMatrix uinv(n, std::vector<Integer>(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        uinv[i][i] = 1;
    }
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : m) {
            std::swap(row[a], row[b]);
        }
        std::swap(uinv[a], uinv[b]);
    };
    for (std::size_t i = 0; i < l; ++i) {
        if (i >= n) {
            throw Error("more generators than dimensions");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            while (m[i][j] != 0) {
                const Integer q = m[i][i] / m[i][j];
                if (q != 0) {
                    // col_i -= q col_j ; inverse: row_j += q row_i
                    for (auto& row : m) {
                        row[i] -= q * row[j];
                    }
                    for (std::size_t c = 0; c < n; ++c) {
                        uinv[j][c] += q * uinv[i][c];
                    }
                }
                swap_cols(i, j);
            }
        }
        if (m[i][i] == 0) {
            throw Error("generators are linearly dependent");
        }
        if (m[i][i] < 0) {
            for (auto& row : m) {
                row[i] = -row[i];
            }
            for (auto& x : uinv[i]) {
                x = -x;
            }
        }
    }
    Saturation s;
    s.h.assign(l, std::vector<Integer>(l));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            s.h[i][j] = m[i][j];
        }
        IntVector b;
        for (std::size_t c = 0; c < n; ++c) {
            b.push_back(to_int64(uinv[i][c]));
        }
        s.basis.push_back(std::move(b));
    }
    return s;
}

} // namespace igusa::linalg
