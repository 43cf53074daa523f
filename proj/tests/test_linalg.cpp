#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/linalg.hpp"

#include <random>

using namespace frobmod;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Residue p, std::size_t rows,
                     std::size_t cols) {
    Matrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = Residue(rng() % p);
    return m;
}

/// Independent rank oracle: plain Gaussian elimination with partial
/// pivoting, written separately from the library's rref.
std::size_t rank_oracle(Matrix m) {
    const Residue p = m.modulus();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            std::swap(m.at(r, j), m.at(pivot, j));
        Residue inv = fp::inv(m.at(r, c), p);
        for (std::size_t j = 0; j < m.cols(); ++j)
            m.at(r, j) = fp::mul(m.at(r, j), inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Residue factor = m.at(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = fp::sub(m.at(i, j),
                                     fp::mul(factor, m.at(r, j), p), p);
        }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    for (Residue p : {2u, 3u, 5u, 7u, 13u}) {
        CHECK(fp::is_prime(p));
        for (Residue a = 1; a < p; ++a) {
            Residue b = fp::inv(a, p);
            CHECK(fp::mul(a, b, p) == 1);
        }
        CHECK(fp::add(p - 1, 1, p) == 0);
        CHECK(fp::neg(0, p) == 0);
        CHECK(fp::sub(0, 1, p) == p - 1);
    }
    CHECK_FALSE(fp::is_prime(1));
    CHECK_FALSE(fp::is_prime(4));
    CHECK_FALSE(fp::is_prime(9));
}

TEST_CASE("matrix algebra basics") {
    const Residue p = 5;
    Matrix id = Matrix::identity(p, 3);
    std::mt19937_64 rng(1);
    Matrix a = random_matrix(rng, p, 3, 3);
    CHECK(a * id == a);
    CHECK(id * a == a);
    CHECK((a - a).is_zero());
    CHECK(-(-a) == a);
    CHECK(a.transposed().transposed() == a);
    Matrix b = random_matrix(rng, p, 3, 4);
    CHECK((a * b).transposed() == b.transposed() * a.transposed());
    CHECK(a.power(0) == id);
    CHECK(a.power(3) == a * a * a);
    CHECK(id.trace() == 3);
}

TEST_CASE("rref is idempotent and ranks match the oracle") {
    std::mt19937_64 rng(2);
    for (Residue p : {2u, 3u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            Matrix a = random_matrix(rng, p, rows, cols);
            RrefResult rr = rref(a);
            CHECK(rref(rr.reduced).reduced == rr.reduced);
            CHECK(rr.pivots.size() == rank(a));
            CHECK(rank(a) == rank_oracle(a));
        }
    }
}

TEST_CASE("rank-nullity and kernel vectors annihilate") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const Residue p = trial % 2 ? 3 : 2;
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        Matrix a = random_matrix(rng, p, rows, cols);
        auto ker = kernel_basis(a);
        CHECK(rank(a) + ker.size() == cols);
        for (const auto& v : ker) {
            CHECK((a * v).is_zero());
            CHECK_FALSE(v.is_zero());
        }
        auto img = image_basis(a);
        CHECK(img.size() == rank(a));
        for (const auto& v : img) CHECK(column_space_contains(a, v));
    }
}

TEST_CASE("solve returns consistent particular and homogeneous parts") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const Residue p = 5;
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        Matrix a = random_matrix(rng, p, rows, cols);
        Matrix x = random_matrix(rng, p, cols, 2);
        Matrix b = a * x; // consistent by construction
        auto sol = solve(a, b);
        REQUIRE(sol.has_value());
        CHECK(a * sol->particular == b);
        for (const auto& k : sol->kernel_basis) CHECK((a * k).is_zero());
    }
}

TEST_CASE("solve reports inconsistency") {
    const Residue p = 2;
    Matrix a(p, 2, 1);
    a.at(0, 0) = 1; // second row zero
    Matrix b(p, 2, 1);
    b.at(1, 0) = 1; // demands 0 = 1
    CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("inverse round-trips") {
    std::mt19937_64 rng(5);
    const Residue p = 7;
    int found = 0;
    while (found < 10) {
        Matrix a = random_matrix(rng, p, 4, 4);
        auto inv = inverse(a);
        if (!inv) continue;
        ++found;
        CHECK(a * *inv == Matrix::identity(p, 4));
        CHECK(*inv * a == Matrix::identity(p, 4));
    }
    CHECK_FALSE(inverse(Matrix(p, 2, 2)).has_value());
}

TEST_CASE("block and concatenation helpers") {
    const Residue p = 3;
    Matrix a = Matrix::identity(p, 2);
    Matrix b(p, 2, 2);
    b.at(0, 1) = 2;
    Matrix h = a.hcat(b);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 4);
    CHECK(h.at(0, 3) == 2);
    Matrix v = a.vcat(b);
    CHECK(v.rows() == 4);
    CHECK(v.at(2, 1) == 2);
    Matrix d = block_diag(a, b);
    CHECK(d.rows() == 4);
    CHECK(d.at(0, 0) == 1);
    CHECK(d.at(2, 3) == 2);
    CHECK(d.at(0, 2) == 0);
    CHECK(d.submatrix(2, 2, 2, 2) == b);
}
