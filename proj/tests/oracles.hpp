#pragma once

// Test-only reference implementations, deliberately independent of the
// library code paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracles {

// Carry-less multiply with bitwise shift-and-reduce under 0x11D; no
// tables involved.
inline std::uint8_t mul_shift_reduce(std::uint8_t a, std::uint8_t b) {
    std::uint16_t acc = 0;
    std::uint16_t shifted = a;
    while (b) {
        if (b & 1) acc ^= shifted;
        shifted <<= 1;
        if (shifted & 0x100) shifted ^= 0x11D;
        b >>= 1;
    }
    return static_cast<std::uint8_t>(acc);
}

// Inverse by exhaustive search over all 255 candidates.
inline std::uint8_t inv_search(std::uint8_t a) {
    for (int c = 1; c < 256; ++c)
        if (mul_shift_reduce(a, static_cast<std::uint8_t>(c)) == 1)
            return static_cast<std::uint8_t>(c);
    return 0;  // only reachable for a == 0
}

// Leibniz-expansion determinant: XOR over all permutation products
// (characteristic 2, so signs drop out). k is small enough that k! terms
// are fine.
inline std::uint8_t det_leibniz(const std::vector<std::vector<std::uint8_t>>& m) {
    const std::size_t k = m.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint8_t det = 0;
    do {
        std::uint8_t prod = 1;
        for (std::size_t i = 0; i < k; ++i) prod = mul_shift_reduce(prod, m[i][perm[i]]);
        det ^= prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// Brute-force rank: the largest k for which some k x k minor has a
// nonzero determinant. Row/column subsets enumerated by bitmask.
inline std::size_t rank_brute_force(const std::vector<std::vector<std::uint8_t>>& rows,
                                    std::size_t n_cols) {
    const std::size_t n_rows = rows.size();
    for (std::size_t k = std::min(n_rows, n_cols); k >= 1; --k) {
        for (std::uint32_t rmask = 0; rmask < (1u << n_rows); ++rmask) {
            if (static_cast<std::size_t>(__builtin_popcount(rmask)) != k) continue;
            for (std::uint32_t cmask = 0; cmask < (1u << n_cols); ++cmask) {
                if (static_cast<std::size_t>(__builtin_popcount(cmask)) != k) continue;
                std::vector<std::vector<std::uint8_t>> minor;
                for (std::size_t r = 0; r < n_rows; ++r) {
                    if (!(rmask & (1u << r))) continue;
                    std::vector<std::uint8_t> row;
                    for (std::size_t c = 0; c < n_cols; ++c)
                        if (cmask & (1u << c)) row.push_back(rows[r][c]);
                    minor.push_back(std::move(row));
                }
                if (det_leibniz(minor) != 0) return k;
            }
        }
    }
    return 0;
}

}  // namespace oracles
