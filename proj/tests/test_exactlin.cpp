// Unit tests for exact linear algebra: row canonical forms, canonical
// nullspaces, incremental rank profiles, field arithmetic, serialization.
// Oracle values are small hand-worked examples frozen here.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "opident/exactlin.hpp"

using namespace opident;

TEST_CASE("prime field arithmetic", "[exactlin]") {
    PrimeField F(101);
    CHECK(F.add(100, 5) == 4);
    CHECK(F.sub(3, 7) == 97);
    CHECK(F.mul(51, 2) == 1);
    CHECK(F.inv(2) == 51);
    CHECK(F.mul(F.inv(37), 37) == 1);
    CHECK(F.from_int(-1) == 100);
    CHECK(F.from_int(-202) == 0);
    CHECK(F.signed_lift(100) == -1);
    CHECK(F.signed_lift(50) == 50);
    CHECK_THROWS(F.inv(0));
}

TEST_CASE("rcf of a 2x2 rank-1 matrix", "[exactlin]") {
    // [[2,4],[1,2]] over F_101 row-reduces to [[1,2],[0,0]].
    ModMatrix a = ModMatrix::from_rows({{2, 4}, {1, 2}});
    ModMatrix r = a.rcf();
    CHECK(r.rows() == 2);
    CHECK(r(0, 0) == 1);
    CHECK(r(0, 1) == 2);
    CHECK(r(1, 0) == 0);
    CHECK(r(1, 1) == 0);
    CHECK(a.rank() == 1);
    CHECK(a.pivot_columns() == std::vector<std::size_t>{0});
}

TEST_CASE("canonical nullspace convention", "[exactlin]") {
    // nullspace_canonical([[1,1]]) = [[-1,1]] = [[100,1]] over F_101.
    ModMatrix a = ModMatrix::from_rows({{1, 1}});
    ModMatrix ns = a.nullspace_canonical();
    REQUIRE(ns.rows() == 1);
    CHECK(ns(0, 0) == 100);
    CHECK(ns(0, 1) == 1);
}

TEST_CASE("rcf handles pivot discovery out of column order", "[exactlin]") {
    // Later rows introduce pivots to the left of earlier ones.
    ModMatrix a = ModMatrix::from_rows({{0, 1, 3}, {1, 0, 2}, {1, 1, 5}});
    ModMatrix r = a.rcf();
    CHECK(r(0, 0) == 1);
    CHECK(r(0, 1) == 0);
    CHECK(r(0, 2) == 2);
    CHECK(r(1, 0) == 0);
    CHECK(r(1, 1) == 1);
    CHECK(r(1, 2) == 3);
    CHECK(a.rank() == 2);
    ModMatrix ns = a.nullspace_canonical();
    REQUIRE(ns.rows() == 1);
    // Kernel vector with free column 2 set to 1: (-2, -3, 1).
    CHECK(ns(0, 0) == 99);
    CHECK(ns(0, 1) == 98);
    CHECK(ns(0, 2) == 1);
    // A * ns^T = 0.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t dot = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) dot += a(i, j) * ns(0, j);
        CHECK(dot % 101 == 0);
    }
}

TEST_CASE("rank profile extension matches batch rank", "[exactlin]") {
    std::mt19937 rng(12345);
    PrimeField F(101);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
        ModMatrix a(rows, cols, F);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng() % 3 ? 0 : rng() % 101;
        RrefBuilder b(cols, F);
        std::size_t grew = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<std::uint32_t> row(a.row_ptr(i), a.row_ptr(i) + cols);
            bool indep_pre = b.independent(row);
            bool grew_now = b.absorb(row);
            CHECK(indep_pre == grew_now);
            grew += grew_now ? 1 : 0;
        }
        CHECK(grew == a.rank());
        CHECK(b.rank() == a.rank());
        // basis() is the nonzero part of the rcf.
        ModMatrix r = a.rcf();
        ModMatrix basis = b.basis();
        REQUIRE(basis.rows() == a.rank());
        for (std::size_t i = 0; i < basis.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) CHECK(basis(i, j) == r(i, j));
    }
}

TEST_CASE("rcf is idempotent and kernel annihilates", "[exactlin]") {
    std::mt19937 rng(777);
    PrimeField F(101);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t rows = 1 + rng() % 15, cols = 1 + rng() % 15;
        ModMatrix a(rows, cols, F);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng() % 101;
        ModMatrix r = a.rcf();
        CHECK(r.rcf() == r);
        CHECK(r.rank() == a.rank());
        ModMatrix ns = a.nullspace_canonical();
        CHECK(ns.rows() + a.rank() == cols);
        for (std::size_t k = 0; k < ns.rows(); ++k)
            for (std::size_t i = 0; i < rows; ++i) {
                std::uint64_t dot = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    dot += static_cast<std::uint64_t>(a(i, j)) * ns(k, j);
                CHECK(dot % 101 == 0);
            }
    }
}

TEST_CASE("matrix inverse and multiplication", "[exactlin]") {
    ModMatrix a = ModMatrix::from_rows({{1, 2}, {3, 5}});
    ModMatrix inv = a.inverse();
    CHECK(a.multiply(inv) == ModMatrix::identity(2));
    CHECK(inv.multiply(a) == ModMatrix::identity(2));
    ModMatrix sing = ModMatrix::from_rows({{1, 2}, {2, 4}});
    CHECK_THROWS(sing.inverse());
}

TEST_CASE("rational rcf agrees with modular rcf on small matrices", "[exactlin]") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
        std::vector<std::vector<long long>> entries(rows, std::vector<long long>(cols));
        for (auto& row : entries)
            for (auto& v : row) v = static_cast<long long>(rng() % 7) - 3;
        ModMatrix a = ModMatrix::from_rows(entries);
        RatMatrix q = RatMatrix::from_rows(entries);
        CHECK(a.rank() == q.rank());
        CHECK(a.pivot_columns() == q.pivot_columns());
        CHECK(a.nullspace_canonical().rows() == q.nullspace_canonical().rows());
    }
}

TEST_CASE("rational exactness where floating point would fail", "[exactlin]") {
    // [[1, 10^18], [0, 1]] has rank 2 and the RCF recovers exact entries.
    RatMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = Rational("1000000000000000000");
    m(1, 0) = 0;
    m(1, 1) = 1;
    RatMatrix r = m.rcf();
    CHECK(r(0, 1) == 0);
    CHECK(m.rank() == 2);
}

TEST_CASE("json round trip", "[exactlin]") {
    ModMatrix a = ModMatrix::from_rows({{2, 4}, {1, 2}}, PrimeField(101));
    nlohmann::json j = to_json(a);
    CHECK(j["schema"] == 1);
    CHECK(j["field"] == "F101");
    CHECK(mod_matrix_from_json(j) == a);

    RatMatrix q(1, 2);
    q(0, 0) = Rational(1, 3);
    q(0, 1) = -2;
    nlohmann::json jq = to_json(q);
    CHECK(jq["entries"][0][0] == "1/3");
    CHECK(rat_matrix_from_json(jq) == q);
}

TEST_CASE("hcat vcat block identity", "[exactlin]") {
    ModMatrix a = ModMatrix::from_rows({{1, 2}, {3, 4}});
    ModMatrix l = a.hcat(ModMatrix::identity(2));
    CHECK(l.cols() == 4);
    CHECK(l(1, 3) == 1);
    CHECK(l.block(0, 2, 2, 2) == ModMatrix::identity(2));
    ModMatrix v = a.vcat(a);
    CHECK(v.rows() == 4);
    CHECK(v(3, 1) == 4);
}
