#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ncrest::gf256 {

// GF(2^8) with the Reed-Solomon reduction polynomial
// x^8 + x^4 + x^3 + x^2 + 1. 0x02 is a generator for this modulus, which
// is what the log/antilog tables are built from.
inline constexpr std::uint16_t kModulus = 0x11D;

using Element = std::uint8_t;

// Addition and subtraction coincide: carry-less, characteristic 2.
inline Element add(Element a, Element b) { return a ^ b; }
inline Element sub(Element a, Element b) { return a ^ b; }

// Table-driven product; the GJE inner loop dominates decoding time, so
// this is a 512-entry antilog lookup rather than shift-and-reduce.
Element mul(Element a, Element b);

// Multiplicative inverse. Throws DivisionByZeroError for 0.
Element inv(Element a);

struct PivotReport {
    std::vector<std::size_t> pivot_cols;  // strictly increasing
    std::size_t rank = 0;                 // == pivot_cols.size()
    std::size_t dropped_zero_rows = 0;    // dependent rows removed by reduce()
};

// Dense row matrix over GF(2^8). Columns at index >= pivot_limit() never
// host a pivot but still undergo every row operation, which is how an
// augmented system [coefficients | payload] is reduced in one pass.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n_cols) : n_cols_(n_cols), pivot_limit_(n_cols) {}
    Matrix(std::size_t n_cols, std::size_t pivot_limit)
        : n_cols_(n_cols), pivot_limit_(pivot_limit) {}

    std::size_t n_cols() const { return n_cols_; }
    std::size_t n_rows() const { return rows_.size(); }
    std::size_t pivot_limit() const { return pivot_limit_; }

    // Throws DimensionError if the row arity is wrong.
    void append_row(std::span<const Element> row);
    void append_row(std::vector<Element> row);

    std::span<const Element> row(std::size_t i) const { return rows_[i]; }
    std::vector<Element>& row_mut(std::size_t i) { return rows_[i]; }

    // Inserts `count` zero columns starting at `at` in every row.
    // `pivot_eligible` says which side of the pivot boundary the new
    // columns belong to; this matters when `at` is exactly the boundary.
    void insert_cols(std::size_t at, std::size_t count, bool pivot_eligible);
    // Removes one column from every row. The caller is responsible for the
    // algebraic meaning (e.g. only dropping a decoded pivot column).
    void erase_col(std::size_t at);
    void erase_row(std::size_t i);

    // In-place Gauss-Jordan elimination to reduced row echelon form.
    // Rows whose pivot-eligible part eliminates to zero are dropped from
    // the matrix and counted in the report.
    PivotReport reduce();

    // True iff appending `row` would increase the rank. `*this` is left
    // untouched. Throws DimensionError on arity mismatch.
    bool rank_increases(std::span<const Element> row) const;

    bool operator==(const Matrix&) const = default;

  private:
    std::vector<std::vector<Element>> rows_;
    std::size_t n_cols_ = 0;
    std::size_t pivot_limit_ = 0;
};

// Convenience for tests: reduce a copy, return it with the report.
std::pair<Matrix, PivotReport> reduced(const Matrix& m);

}  // namespace ncrest::gf256
