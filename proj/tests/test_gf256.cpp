#include <doctest.h>

#include <random>

#include "ncrest/errors.hpp"
#include "ncrest/gf256.hpp"
#include "oracles.hpp"

using namespace ncrest;
using gf256::Element;
using gf256::Matrix;

namespace {

Matrix make_matrix(const std::vector<std::vector<Element>>& rows, std::size_t n_cols) {
    Matrix m(n_cols);
    for (const auto& r : rows) m.append_row(std::vector<Element>(r));
    return m;
}

std::vector<std::vector<Element>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<Element>> rows;
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
        const auto r = m.row(i);
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

}  // namespace

TEST_CASE("gf256 addition") {
    CHECK(gf256::add(0x00, 0x57) == 0x57);
    CHECK(gf256::add(0x57, 0x57) == 0x00);
    CHECK(gf256::add(0x57, 0x83) == (0x57 ^ 0x83));
    CHECK(gf256::add(0x57, 0x83) == 0xD4);
}

TEST_CASE("gf256 multiplication known values") {
    CHECK(gf256::mul(0x01, 0xAB) == 0xAB);
    CHECK(gf256::mul(0x00, 0xAB) == 0x00);
    CHECK(gf256::mul(0xAB, 0x00) == 0x00);
    // 0x80 * 0x02 = x^8, reduced: 0x100 ^ 0x11D = 0x1D.
    CHECK(gf256::mul(0x80, 0x02) == 0x1D);
}

TEST_CASE("gf256 multiplication matches shift-and-reduce for all pairs") {
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b)
            REQUIRE(gf256::mul(static_cast<Element>(a), static_cast<Element>(b)) ==
                    oracles::mul_shift_reduce(static_cast<Element>(a), static_cast<Element>(b)));
}

TEST_CASE("gf256 inverse") {
    CHECK(gf256::inv(0x01) == 0x01);
    CHECK(gf256::inv(0x02) == oracles::inv_search(0x02));
    CHECK(gf256::inv(0x02) == 0x8E);
    CHECK_THROWS_AS(gf256::inv(0x00), DivisionByZeroError);
    // Defining property, exhaustive.
    for (int a = 1; a < 256; ++a)
        REQUIRE(gf256::mul(static_cast<Element>(a), gf256::inv(static_cast<Element>(a))) == 1);
}

TEST_CASE("gf256 distributivity over 10^4 random triples") {
    std::mt19937 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const auto a = static_cast<Element>(rng());
        const auto b = static_cast<Element>(rng());
        const auto c = static_cast<Element>(rng());
        REQUIRE(gf256::mul(a, gf256::add(b, c)) ==
                gf256::add(gf256::mul(a, b), gf256::mul(a, c)));
        REQUIRE(gf256::mul(a, b) == gf256::mul(b, a));
        REQUIRE(gf256::mul(gf256::mul(a, b), c) == gf256::mul(a, gf256::mul(b, c)));
    }
}

TEST_CASE("reduce leaves the identity untouched") {
    Matrix m = make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
    const Matrix before = m;
    const auto report = m.reduce();
    CHECK(m == before);
    CHECK(report.rank == 3);
    CHECK(report.pivot_cols == std::vector<std::size_t>{0, 1, 2});
    CHECK(report.dropped_zero_rows == 0);
}

TEST_CASE("reduce on the worked two-combination example") {
    // d1 = p1 + 2 p2 and d2 = p1 + 4 p2 + 5 p3 + p4: p1 and p2 end up
    // seen (pivots in columns 0 and 1), p3 and p4 do not.
    Matrix m = make_matrix({{1, 2, 0, 0}, {1, 4, 5, 1}}, 4);
    const auto report = m.reduce();
    CHECK(report.rank == 2);
    CHECK(report.pivot_cols == std::vector<std::size_t>{0, 1});
    CHECK(oracles::rank_brute_force(matrix_rows(m), 4) == 2);
}

TEST_CASE("reduce detects the scalar-multiple dependence in-field") {
    // [2,4] = 2 * [1,2] over GF(2^8), so the rank is 1 and the dependent
    // row is dropped.
    Matrix m = make_matrix({{1, 2}, {2, 4}}, 2);
    const auto report = m.reduce();
    CHECK(report.rank == 1);
    CHECK(report.dropped_zero_rows == 1);
    CHECK(m.n_rows() == 1);
    CHECK(oracles::rank_brute_force({{1, 2}, {2, 4}}, 2) == 1);
}

TEST_CASE("reduce is idempotent and pivots are well-formed") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n_rows = 1 + rng() % 5;
        const std::size_t n_cols = 1 + rng() % 8;
        Matrix m(n_cols);
        for (std::size_t r = 0; r < n_rows; ++r) {
            std::vector<Element> row(n_cols);
            for (auto& v : row) v = static_cast<Element>(rng());
            m.append_row(std::move(row));
        }
        const auto report = m.reduce();
        Matrix again = m;
        const auto report2 = again.reduce();
        CHECK(again == m);
        CHECK(report2.rank == report.rank);

        // Pivot columns strictly increase and hold exactly one nonzero.
        for (std::size_t i = 0; i + 1 < report.pivot_cols.size(); ++i)
            CHECK(report.pivot_cols[i] < report.pivot_cols[i + 1]);
        for (std::size_t i = 0; i < report.pivot_cols.size(); ++i) {
            const std::size_t col = report.pivot_cols[i];
            CHECK(m.row(i)[col] == 1);
            for (std::size_t r = 0; r < m.n_rows(); ++r)
                if (r != i) CHECK(m.row(r)[col] == 0);
        }
    }
}

TEST_CASE("reduce rank agrees with the brute-force minor oracle, 10^3 matrices") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n_rows = 1 + rng() % 5;
        const std::size_t n_cols = 1 + rng() % 8;
        std::vector<std::vector<Element>> rows(n_rows, std::vector<Element>(n_cols));
        for (auto& row : rows)
            for (auto& v : row)
                // Mix sparse and dense entries so rank deficiency happens.
                v = (rng() % 4 == 0) ? 0 : static_cast<Element>(rng());
        Matrix m = make_matrix(rows, n_cols);
        const auto report = m.reduce();
        REQUIRE(report.rank == oracles::rank_brute_force(rows, n_cols));
    }
}

TEST_CASE("rank_increases") {
    Matrix empty(2);
    CHECK(empty.rank_increases(std::vector<Element>{3, 7}));

    Matrix single = make_matrix({{1, 0}}, 2);
    CHECK_FALSE(single.rank_increases(std::vector<Element>{2, 0}));
    CHECK(single == make_matrix({{1, 0}}, 2));  // unchanged

    // Repair combination 2 p3 + 3 p4 against the worked example rows.
    Matrix paper = make_matrix({{1, 2, 0, 0}, {1, 4, 5, 1}}, 4);
    CHECK(paper.rank_increases(std::vector<Element>{0, 0, 2, 3}));

    CHECK_THROWS_AS(single.rank_increases(std::vector<Element>{1, 2, 3}), DimensionError);
}

TEST_CASE("reduce works on augmented matrices without pivoting past the limit") {
    // Two pivot-eligible columns, one carried column.
    Matrix m(3, 2);
    m.append_row(std::vector<Element>{0, 0, 9});  // zero coefficient part
    m.append_row(std::vector<Element>{0, 5, 1});
    const auto report = m.reduce();
    CHECK(report.rank == 1);
    CHECK(report.pivot_cols == std::vector<std::size_t>{1});
    // The zero-coefficient row was dropped even though its carried part
    // was nonzero.
    CHECK(report.dropped_zero_rows == 1);
    CHECK(m.n_rows() == 1);
}
