#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobmod/algebra.hpp"

#include <string>
#include <vector>

using namespace frobmod;

namespace {

AlgebraPtr checked(const std::string& family,
                   const std::vector<std::int64_t>& params) {
    return CheckedAlgebra::validate(builtin_algebra(family, params));
}

/// Independent radical oracle for commutative algebras in characteristic
/// p: the radical is the set of nilpotents, which equals the kernel of a
/// sufficiently iterated Frobenius map x -> x^p.  The Frobenius is
/// F_p-linear, so the kernel is a plain linear-algebra computation that
/// does not share any code with the trace-based radical in the library.
std::size_t commutative_radical_dim_oracle(const AlgebraPtr& alg) {
    const Residue p = alg->modulus();
    const std::size_t d = alg->dim();
    // Multiplication via the left regular representation.
    auto times = [&](const Matrix& a, const Matrix& b) {
        Matrix result(p, d, 1);
        for (std::size_t i = 0; i < d; ++i)
            if (a.at(i, 0) != 0)
                result = result +
                         (alg->left_regular(i) * b).scaled(a.at(i, 0));
        return result;
    };
    // Matrix of the Frobenius x -> x^p in the algebra basis.
    Matrix frob(p, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Matrix bj(p, d, 1);
        bj.at(j, 0) = 1;
        Matrix pw = bj;
        for (Residue e = 1; e < p; ++e) pw = times(pw, bj);
        for (std::size_t i = 0; i < d; ++i) frob.at(i, j) = pw.at(i, 0);
    }
    // Iterate until p^k >= dim, so every nilpotent dies.
    Matrix iterated = frob;
    std::size_t power = p;
    while (power < d) {
        iterated = frob * iterated;
        power *= p;
    }
    return kernel_basis(iterated).size();
}

} // namespace

TEST_CASE("builtin algebras validate") {
    CHECK(checked("truncated_polynomial", {2, 2})->dim() == 2);
    CHECK(checked("truncated_polynomial", {3, 3})->dim() == 3);
    CHECK(checked("group_algebra_elementary_abelian", {2, 2})->dim() == 4);
    CHECK(checked("field", {5})->dim() == 1);
    CHECK_THROWS_AS(builtin_algebra("no_such_family", {}), ValidationError);
    CHECK_THROWS_AS(builtin_algebra("truncated_polynomial", {4, 2}),
                    ValidationError);
}

TEST_CASE("validation rejects broken presentations") {
    SUBCASE("non-prime modulus") {
        auto pres = builtin_algebra("truncated_polynomial", {2, 2});
        pres.p = 4;
        CHECK_THROWS_WITH_AS(CheckedAlgebra::validate(pres),
                             doctest::Contains("prime"), ValidationError);
    }
    SUBCASE("associativity failure names the triple") {
        auto pres = builtin_algebra("truncated_polynomial", {3, 3});
        // Corrupt x*x so that (x*x)*x != x*(x*x).
        pres.structure_constants[(1 * 3 + 1) * 3 + 0] = 1;
        CHECK_THROWS_WITH_AS(CheckedAlgebra::validate(pres),
                             doctest::Contains("associa"), ValidationError);
    }
    SUBCASE("unit failure") {
        auto pres = builtin_algebra("truncated_polynomial", {2, 2});
        pres.unit = {0, 1};
        CHECK_THROWS_AS(CheckedAlgebra::validate(pres), ValidationError);
    }
    SUBCASE("degenerate frobenius form") {
        auto pres = builtin_algebra("truncated_polynomial", {2, 2});
        pres.frobenius_functional = {1, 0}; // kills the socle direction
        CHECK_THROWS_WITH_AS(CheckedAlgebra::validate(pres),
                             doctest::Contains("frobenius form degenerate"),
                             ValidationError);
    }
}

TEST_CASE("radical dimensions match theory and the Frobenius oracle") {
    struct Row {
        const char* family;
        std::vector<std::int64_t> params;
        std::size_t radical_dim;
    };
    const Row rows[] = {
        {"truncated_polynomial", {2, 2}, 1},
        {"truncated_polynomial", {3, 3}, 2},
        {"group_algebra_elementary_abelian", {2, 2}, 3},
        {"field", {5}, 0},
        {"truncated_polynomial", {5, 4}, 3},
    };
    for (const auto& row : rows) {
        auto alg = checked(row.family, row.params);
        CAPTURE(alg->presentation().name);
        CHECK(alg->radical().size() == row.radical_dim);
        CHECK(commutative_radical_dim_oracle(alg) == row.radical_dim);
        // Membership: every computed radical element is nilpotent, i.e.
        // its left-multiplication matrix is nilpotent.
        for (const auto& r : alg->radical()) {
            Matrix lm = detail::left_mult_matrix(alg->presentation(), r);
            CHECK(lm.power(alg->dim()).is_zero());
        }
    }
}

TEST_CASE("gram matrix of the frobenius form is invertible") {
    for (auto alg : {checked("truncated_polynomial", {3, 3}),
                     checked("group_algebra_elementary_abelian", {2, 3})}) {
        CHECK(rank(alg->gram()) == alg->dim());
        CHECK(alg->gram() * alg->gram_inverse() ==
              Matrix::identity(alg->modulus(), alg->dim()));
    }
}

TEST_CASE("opposite algebra is involutive and valid") {
    auto alg = checked("group_algebra_elementary_abelian", {2, 2});
    AlgebraPtr op = alg->opposite();
    CHECK(op->dim() == alg->dim());
    CHECK(op->opposite().get() == alg.get());
    // Structure constants are transposed in the first two indices.
    for (std::size_t i = 0; i < alg->dim(); ++i)
        for (std::size_t j = 0; j < alg->dim(); ++j)
            for (std::size_t k = 0; k < alg->dim(); ++k)
                CHECK(op->presentation().c(i, j, k) ==
                      alg->presentation().c(j, i, k));
}

TEST_CASE("generator indices span the algebra") {
    for (auto alg : {checked("truncated_polynomial", {3, 3}),
                     checked("group_algebra_elementary_abelian", {2, 2}),
                     checked("field", {7})}) {
        const auto& gens = alg->generator_indices();
        // The unit alone spans one dimension; anything bigger needs
        // generators.
        if (alg->dim() > 1) CHECK_FALSE(gens.empty());
        // Close the span of the unit under left multiplication by the
        // generators; it must reach the whole algebra.
        const Residue p = alg->modulus();
        const std::size_t d = alg->dim();
        Matrix span(p, d, 1);
        Matrix u = alg->unit_vector();
        for (std::size_t i = 0; i < d; ++i) span.at(i, 0) = u.at(i, 0);
        bool grew = true;
        while (grew) {
            grew = false;
            Matrix next = span;
            for (std::size_t g : gens)
                next = next.hcat(alg->left_regular(g) * span);
            if (rank(next) > rank(span)) {
                span = next;
                grew = true;
            }
        }
        CHECK(rank(span) == d);
    }
}
