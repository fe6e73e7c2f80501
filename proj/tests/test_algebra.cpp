#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "hochwerk/algebra.hpp"

using namespace hochwerk;

TEST_CASE("validate accepts the standard examples") {
    CHECK_NOTHROW(validate(*fixtures::scalar_algebra()));
    CHECK_NOTHROW(validate(*fixtures::diagonal_algebra(3)));
    CHECK_NOTHROW(validate(*fixtures::matrix_algebra(2)));
    // matrix units satisfy e_pq e_rs = [q = r] e_ps
    CHECK_NOTHROW(validate(*fixtures::upper_triangular_algebra(2)));
    CHECK_NOTHROW(validate(*fixtures::truncated_poly_algebra(3)));
}

TEST_CASE("validate flags a broken product table") {
    Algebra a = make_algebra(2);
    a.mult[0][0] = {{1, Rat(1)}};  // e0 e0 = e1
    a.mult[0][1] = {{0, Rat(1)}};  // e0 e1 = e0
    a.unit[0] = 1;
    // (e0 e0) e1 = e1 e1 = 0 but e0 (e0 e1) = e0 e0 = e1
    CHECK_THROWS_AS(validate(a), NotAssociative);
}

TEST_CASE("validate flags a wrong unit") {
    Algebra a = *fixtures::diagonal_algebra(2);
    a.unit = {Rat(1), Rat(0)};  // e0 alone is not a two-sided unit
    CHECK_THROWS_AS(validate(a), UnitLawFails);
}

TEST_CASE("opposite") {
    AlgebraPtr d = fixtures::diagonal_algebra(3);
    CHECK(opposite(*d) == *d);  // commutative: nothing changes

    AlgebraPtr m2 = fixtures::matrix_algebra(2);
    CHECK(opposite(opposite(*m2)) == *m2);
    CHECK_NOTHROW(validate(opposite(*m2)));

    // in UT(2): e00 e01 = e01, so the opposite has e01 o e00 = e01
    AlgebraPtr ut = fixtures::upper_triangular_algebra(2);
    Algebra op = opposite(*ut);
    CHECK(op.mult[1][0] == SparseVec{{1, Rat(1)}});
    CHECK(op.mult[0][1].empty());
}

TEST_CASE("unitization") {
    // zero-product algebra gains a working unit
    Algebra zp = make_algebra(1);
    CHECK_THROWS_AS(validate(zp), UnitLawFails);  // no unit at all
    Algebra u = unitization(zp);
    CHECK(u.dim == 2);
    CHECK_NOTHROW(validate(u));

    // unitization of Q: the old unit and its complement are orthogonal idempotents
    Algebra uq = unitization(*fixtures::scalar_algebra());
    CHECK_NOTHROW(validate(uq));
    std::vector<Rat> e0 = basis_vector(2, 0);
    std::vector<Rat> f = {Rat(-1), Rat(1)};  // adjoined unit minus old one
    CHECK(product(uq, e0, e0) == e0);
    CHECK(product(uq, f, f) == f);
    CHECK(product(uq, e0, f) == std::vector<Rat>{Rat(0), Rat(0)});

    for (const AlgebraPtr& a :
         {fixtures::matrix_algebra(2), fixtures::upper_triangular_algebra(2)})
        CHECK_NOTHROW(validate(unitization(*a)));
}

TEST_CASE("tensor_op") {
    AlgebraPtr q = fixtures::scalar_algebra();
    AlgebraPtr m2 = fixtures::matrix_algebra(2);
    // Q (x) B^op collapses to the opposite of B on the nose
    CHECK(tensor_op(*q, *m2) == opposite(*m2));

    AlgebraPtr d2 = fixtures::diagonal_algebra(2);
    Algebra e = tensor_op(*d2, *d2);
    CHECK(e.dim == 4);
    CHECK_NOTHROW(validate(e));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) CHECK(e.mult[i][j] == e.mult[j][i]);

    CHECK(tensor_op(*m2, *d2).dim == 8);
    CHECK_NOTHROW(validate(tensor_op(*m2, *d2)));
}

TEST_CASE("direct_sum") {
    AlgebraPtr a = fixtures::matrix_algebra(2);
    AlgebraPtr b = fixtures::diagonal_algebra(2);
    Algebra s = direct_sum(*a, *b);
    CHECK(s.dim == 6);
    CHECK_NOTHROW(validate(s));
}

TEST_CASE("constructions preserve validity") {
    std::vector<AlgebraPtr> pool = {
        fixtures::scalar_algebra(),        fixtures::diagonal_algebra(2),
        fixtures::truncated_poly_algebra(2), fixtures::upper_triangular_algebra(2),
    };
    for (const auto& a : pool) {
        CHECK_NOTHROW(validate(opposite(*a)));
        CHECK_NOTHROW(validate(unitization(*a)));
        CHECK(opposite(opposite(*a)) == *a);
        for (const auto& b : pool) {
            CHECK_NOTHROW(validate(tensor_op(*a, *b)));
            CHECK(tensor_op(*a, *b).dim == a->dim * b->dim);
            CHECK_NOTHROW(validate(direct_sum(*a, *b)));
        }
    }
}

TEST_CASE("change of basis keeps algebras valid") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 5; ++iter) {
        AlgebraPtr tw = fixtures::change_of_basis(*fixtures::upper_triangular_algebra(2),
                                                  fixtures::random_invertible(rng, 3));
        CHECK_NOTHROW(validate(*tw));
    }
}
