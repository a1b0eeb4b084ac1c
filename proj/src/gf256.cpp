#include "ncrest/gf256.hpp"

#include <array>
#include <string>

#include "ncrest/errors.hpp"

namespace ncrest::gf256 {

namespace {

struct Tables {
    // exp is doubled so mul can skip the mod-255 on the exponent sum.
    std::array<Element, 512> exp{};
    std::array<std::uint8_t, 256> log{};

    Tables() {
        std::uint16_t x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<Element>(x);
            exp[i + 255] = static_cast<Element>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;  // multiply by the generator 0x02
            if (x & 0x100) x ^= kModulus;
        }
        exp[510] = exp[0];
        exp[511] = exp[1];
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

Element mul(Element a, Element b) {
    if (a == 0 || b == 0) return 0;
    const Tables& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

Element inv(Element a) {
    if (a == 0) throw DivisionByZeroError();
    const Tables& t = tables();
    return t.exp[255 - t.log[a]];
}

void Matrix::append_row(std::span<const Element> row) {
    append_row(std::vector<Element>(row.begin(), row.end()));
}

void Matrix::append_row(std::vector<Element> row) {
    if (row.size() != n_cols_)
        throw DimensionError("gf256: row arity " + std::to_string(row.size()) +
                             " != matrix width " + std::to_string(n_cols_));
    rows_.push_back(std::move(row));
}

void Matrix::insert_cols(std::size_t at, std::size_t count, bool pivot_eligible) {
    if (pivot_eligible ? (at > pivot_limit_) : (at < pivot_limit_))
        throw DimensionError("gf256: column insertion crosses the pivot boundary");
    for (auto& r : rows_) r.insert(r.begin() + static_cast<std::ptrdiff_t>(at), count, 0);
    n_cols_ += count;
    if (pivot_eligible) pivot_limit_ += count;
}

void Matrix::erase_col(std::size_t at) {
    for (auto& r : rows_) r.erase(r.begin() + static_cast<std::ptrdiff_t>(at));
    --n_cols_;
    if (at < pivot_limit_) --pivot_limit_;
}

void Matrix::erase_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
}

PivotReport Matrix::reduce() {
    PivotReport report;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < pivot_limit_ && next_row < rows_.size(); ++col) {
        // Find a row at or below next_row with a nonzero entry in col.
        std::size_t pivot = next_row;
        while (pivot < rows_.size() && rows_[pivot][col] == 0) ++pivot;
        if (pivot == rows_.size()) continue;
        if (pivot != next_row) std::swap(rows_[pivot], rows_[next_row]);

        // Normalize the pivot to 1.
        const Element p = rows_[next_row][col];
        if (p != 1) {
            const Element pinv = inv(p);
            for (auto& v : rows_[next_row]) v = mul(v, pinv);
        }
        // Clear col everywhere else (Gauss-Jordan, not just Gauss).
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (r == next_row) continue;
            const Element factor = rows_[r][col];
            if (factor == 0) continue;
            for (std::size_t c = 0; c < n_cols_; ++c)
                rows_[r][c] = add(rows_[r][c], mul(factor, rows_[next_row][c]));
        }
        report.pivot_cols.push_back(col);
        ++next_row;
    }

    // Everything from next_row down has a zero pivot-eligible part: the
    // combinations were dependent, so they are dropped.
    report.dropped_zero_rows = rows_.size() - next_row;
    rows_.resize(next_row);
    report.rank = report.pivot_cols.size();
    return report;
}

bool Matrix::rank_increases(std::span<const Element> row) const {
    if (row.size() != n_cols_)
        throw DimensionError("gf256: probe row arity " + std::to_string(row.size()) +
                             " != matrix width " + std::to_string(n_cols_));
    Matrix scratch = *this;
    const std::size_t before = reduced(scratch).second.rank;
    scratch = *this;
    scratch.append_row(row);
    const std::size_t after = scratch.reduce().rank;
    return after > before;
}

std::pair<Matrix, PivotReport> reduced(const Matrix& m) {
    Matrix copy = m;
    PivotReport r = copy.reduce();
    return {std::move(copy), std::move(r)};
}

}  // namespace ncrest::gf256
