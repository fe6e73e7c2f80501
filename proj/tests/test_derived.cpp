#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "hochwerk/derived.hpp"

using namespace hochwerk;

namespace {

LeftModule trivial_module_over_poly(const AlgebraPtr& e) {
    // Q[t]/(t^2) acting on Q through t |-> 0
    LeftModule m{e, 1, {}};
    RatMatrix one(1, 1);
    one.add(0, 0, Rat(1));
    m.act.push_back(one);
    m.act.push_back(RatMatrix(1, 1));
    return m;
}

LeftModule free_module(const AlgebraPtr& e, Index copies) {
    LeftModule m{e, e->dim * copies, {}};
    for (Index i = 0; i < e->dim; ++i)
        m.act.push_back(kron(RatMatrix::identity(copies), left_mult_matrix(*e, i)));
    return m;
}

}  // namespace

TEST_CASE("bar resolution of the scalars") {
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule x = regular_left_module(q);
    BarComplex bar = bar_resolution(q, x, 3);
    CHECK(bar.dims == std::vector<Index>{2, 2, 2, 2});
    CHECK(rank(bar.pi) == 1);  // surjective augmentation
    for (const RatMatrix& d : bar.d) CHECK(rank(d) == 1);  // alternating exactness
}

TEST_CASE("bar resolution exactness for assorted modules") {
    AlgebraPtr d2 = fixtures::diagonal_algebra(2);
    CHECK_NOTHROW(bar_resolution(d2, regular_left_module(d2), 3));

    AlgebraPtr poly = fixtures::truncated_poly_algebra(2);
    CHECK_NOTHROW(bar_resolution(poly, trivial_module_over_poly(poly), 3));
    CHECK_NOTHROW(bar_resolution(poly, free_module(poly, 2), 3));

    AlgebraPtr ut = fixtures::upper_triangular_algebra(2);
    CHECK_NOTHROW(bar_resolution(ut, regular_left_module(ut), 2));
}

TEST_CASE("a sabotaged differential is rejected") {
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule broken = regular_left_module(q);
    broken.act[0] = broken.act[0].scaled(Rat(2));  // no longer unital: d.d != 0
    CHECK_THROWS_AS(bar_resolution(q, broken, 2), ExactnessFailure);
}

TEST_CASE("Ext over the scalars") {
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule m = regular_left_module(q);
    CHECK(ext_dim(q, m, m, 0) == 1);  // End_Q(Q)
    CHECK(ext_dim(q, m, m, 1) == 0);
    CHECK(ext_dim(q, m, m, 2) == 0);
    for (Index n = 0; n <= 2; ++n) CHECK(ext_via_hochschild(q, m, m, n) == ext_dim(q, m, m, n));
}

TEST_CASE("Ext over the dual numbers never dies") {
    // classic: Ext^n_{Q[t]/(t^2)}(Q, Q) is one-dimensional in every degree
    AlgebraPtr e = fixtures::truncated_poly_algebra(2);
    LeftModule m = trivial_module_over_poly(e);
    for (Index n = 0; n <= 2; ++n) {
        CHECK(ext_dim(e, m, m, n) == 1);
        CHECK(ext_via_hochschild(e, m, m, n) == 1);
    }
}

TEST_CASE("Ext vanishes in positive degrees on free modules") {
    AlgebraPtr e = fixtures::truncated_poly_algebra(2);
    LeftModule f = free_module(e, 1);
    LeftModule y = trivial_module_over_poly(e);
    CHECK(ext_dim(e, f, y, 0) == 1);  // Hom(E, Q) = Q
    CHECK(ext_dim(e, f, y, 1) == 0);
    CHECK(ext_dim(e, f, y, 2) == 0);
}

TEST_CASE("degree-zero Ext equals the direct intertwiner count") {
    AlgebraPtr ut = fixtures::upper_triangular_algebra(2);
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule col{ut, 2, {}};
    {
        Bimodule cm = fixtures::ut_column_module(ut, 2, q);
        col.act = cm.left_act;
    }
    LeftModule reg = regular_left_module(ut);

    // direct solve: maps F with F L(e) = L(e) F for all e
    auto hom_dim = [&](const LeftModule& a, const LeftModule& b) {
        RatMatrix cons(ut->dim * a.dim * b.dim, a.dim * b.dim);
        Index base = 0;
        for (Index i = 0; i < ut->dim; ++i) {
            RatMatrix at = a.act[i].transpose();
            for (Index col_i = 0; col_i < a.dim; ++col_i)
                for (Index w = 0; w < b.dim; ++w) {
                    Index row = base + col_i * b.dim + w;
                    for (const auto& [v, c] : b.act[i].row(w)) cons.add(row, col_i * b.dim + v, c);
                    for (const auto& [cc, c] : at.row(col_i)) cons.add(row, cc * b.dim + w, -c);
                }
            base += a.dim * b.dim;
        }
        return kernel(cons).dim();
    };

    CHECK(ext_dim(ut, col, col, 0) == hom_dim(col, col));
    CHECK(ext_dim(ut, reg, col, 0) == hom_dim(reg, col));
    CHECK(ext_dim(ut, col, reg, 0) == hom_dim(col, reg));
}

TEST_CASE("Ext cross-oracle agreement on mixed instances") {
    AlgebraPtr ut = fixtures::upper_triangular_algebra(2);
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule col{ut, 2, {}};
    {
        Bimodule cm = fixtures::ut_column_module(ut, 2, q);
        col.act = cm.left_act;
    }
    LeftModule reg = regular_left_module(ut);
    for (Index n = 0; n <= 2; ++n) {
        CHECK(ext_dim(ut, col, col, n) == ext_via_hochschild(ut, col, col, n));
        CHECK(ext_dim(ut, col, reg, n) == ext_via_hochschild(ut, col, reg, n));
    }
}

TEST_CASE("Tor over the scalars and with zero arguments") {
    AlgebraPtr q = fixtures::scalar_algebra();
    LeftModule m = regular_left_module(q);
    RightModule x = regular_right_module(q);
    CHECK(tor_dim(q, x, m, 0) == 1);
    CHECK(tor_dim(q, x, m, 1) == 0);

    RightModule zero{q, 0, {RatMatrix(0, 0)}};
    for (Index n = 0; n <= 2; ++n) CHECK(tor_dim(q, zero, m, n) == 0);
}

TEST_CASE("Tor degree zero agrees with the direct tensor quotient") {
    AlgebraPtr d2 = fixtures::diagonal_algebra(2);
    RightModule x = regular_right_module(d2);
    LeftModule m = regular_left_module(d2);
    CHECK(tor_dim(d2, x, m, 0) == tensor_over(x, m).dim);

    // a pair of opposite characters: the tensor collapses completely
    RightModule x1{d2, 1, {}};
    {
        RatMatrix one(1, 1), zero(1, 1);
        one.add(0, 0, Rat(1));
        x1.act = {one, zero};
    }
    LeftModule m2{d2, 1, {}};
    {
        RatMatrix one(1, 1), zero(1, 1);
        one.add(0, 0, Rat(1));
        m2.act = {zero, one};
    }
    CHECK(tensor_over(x1, m2).dim == 0);
    for (Index n = 0; n <= 2; ++n) CHECK(tor_dim(d2, x1, m2, n) == 0);
}

TEST_CASE("Tor vanishes in positive degrees against free modules") {
    AlgebraPtr e = fixtures::truncated_poly_algebra(2);
    RightModule x{e, 1, {}};
    {
        RatMatrix one(1, 1);
        one.add(0, 0, Rat(1));
        x.act = {one, RatMatrix(1, 1)};  // trivial right module
    }
    CHECK(tor_dim(e, x, free_module(e, 1), 0) == 1);
    CHECK(tor_dim(e, x, free_module(e, 1), 1) == 0);
    CHECK(tor_dim(e, x, free_module(e, 1), 2) == 0);

    // against the trivial module Tor never dies (mirror of the Ext case)
    CHECK(tor_dim(e, x, trivial_module_over_poly(e), 0) == 1);
    CHECK(tor_dim(e, x, trivial_module_over_poly(e), 1) == 1);
    CHECK(tor_dim(e, x, trivial_module_over_poly(e), 2) == 1);
}

TEST_CASE("induced tensor differential kills the relation subspace") {
    // the quotient complex is only defined because id (x) d maps relations
    // into relations; verify it on a non-semisimple instance
    AlgebraPtr e = fixtures::truncated_poly_algebra(2);
    RightModule x = regular_right_module(e);
    LeftModule m = trivial_module_over_poly(e);
    BarComplex bar = bar_resolution(e, m, 2);

    for (Index k = 0; k < 2; ++k) {
        LeftModule bk{e, bar.dims[k], {}};
        LeftModule bk1{e, bar.dims[k + 1], {}};
        for (Index i = 0; i < e->dim; ++i) {
            bk.act.push_back(bar_slot_action(bar, k, i));
            bk1.act.push_back(bar_slot_action(bar, k + 1, i));
        }
        TensorOverResult vk = tensor_over(x, bk);
        TensorOverResult vk1 = tensor_over(x, bk1);
        RatMatrix full = kron(RatMatrix::identity(x.dim), bar.d[k]);
        for (const SparseVec& rel : vk1.relations.basis) {
            RatMatrix relcol(full.cols(), 1);
            for (const auto& [i, v] : rel) relcol.add(i, 0, v);
            CHECK(compose(vk.projection, compose(full, relcol)).is_zero());
        }
    }
}

TEST_CASE("E-module views of bimodules") {
    // M as a left module over E = A (x) B^op; the regular (A,B)-bimodule A
    // itself when B = Q gives E isomorphic to A
    TriangularData td = fixtures::td_q2_q();
    EModule em = as_left_e_module(td.m);
    CHECK(em.e->dim == td.dim_a() * td.dim_b());
    CHECK_NOTHROW(validate(*em.e));
    CHECK_NOTHROW(validate_left_module(em.left));

    Bimodule tdual = t_dual_bimodule(td);
    CornerSplit sd = corner_split(tdual, td.e_a, td.e_b);
    Bimodule ba = corner_as_bimodule(tdual, sd, Corner::BA, td.b, td.a, td.incl_b, td.incl_a);
    EModule er = as_right_e_module(ba);
    CHECK(*er.e == *em.e);
    CHECK(er.right.dim == td.dim_m());

    // Tor_0(M* as BA-corner, M) over E
    CHECK(tor_dim(em.e, er.right, em.left, 0) >= 0);
}
