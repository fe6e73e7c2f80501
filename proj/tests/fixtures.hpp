#pragma once

// Shared instance builders for the test and acceptance suites: small unital
// algebras, canonical modules over them, triangular assemblies, and seeded
// random change-of-basis twisting (which preserves every algebraic law
// exactly while scrambling all coordinates).

#include <random>
#include <vector>

#include "hochwerk/triangular.hpp"

namespace fixtures {

using namespace hochwerk;

inline AlgebraPtr scalar_algebra() {
    Algebra q = make_algebra(1);
    q.mult[0][0] = {{0, Rat(1)}};
    q.unit[0] = 1;
    return std::make_shared<Algebra>(std::move(q));
}

// Q^n with componentwise product.
inline AlgebraPtr diagonal_algebra(Index n) {
    Algebra a = make_algebra(n);
    for (Index i = 0; i < n; ++i) {
        a.mult[i][i] = {{i, Rat(1)}};
        a.unit[i] = 1;
    }
    return std::make_shared<Algebra>(std::move(a));
}

// Full matrix algebra M_n(Q); basis e_{pq} at flat index p*n+q.
inline AlgebraPtr matrix_algebra(Index n) {
    Algebra a = make_algebra(n * n);
    auto id = [n](Index p, Index q) { return p * n + q; };
    for (Index p = 0; p < n; ++p)
        for (Index q = 0; q < n; ++q)
            for (Index r = 0; r < n; ++r)
                for (Index s = 0; s < n; ++s)
                    if (q == r) a.mult[id(p, q)][id(r, s)] = {{id(p, s), Rat(1)}};
    for (Index p = 0; p < n; ++p) a.unit[id(p, p)] = 1;
    return std::make_shared<Algebra>(std::move(a));
}

// Upper-triangular n x n matrices; basis e_{pq} for p <= q, ordered
// lexicographically. n = 2 gives the three-dimensional algebra T3.
inline AlgebraPtr upper_triangular_algebra(Index n) {
    std::vector<std::pair<Index, Index>> basis;
    for (Index p = 0; p < n; ++p)
        for (Index q = p; q < n; ++q) basis.emplace_back(p, q);
    auto id = [&](Index p, Index q) {
        for (Index k = 0; k < (Index)basis.size(); ++k)
            if (basis[k] == std::make_pair(p, q)) return k;
        return (Index)-1;
    };
    Algebra a = make_algebra((Index)basis.size());
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) {
            auto [p, q] = basis[i];
            auto [r, s] = basis[j];
            if (q == r) a.mult[i][j] = {{id(p, s), Rat(1)}};
        }
    for (Index p = 0; p < n; ++p) a.unit[id(p, p)] = 1;
    return std::make_shared<Algebra>(std::move(a));
}

// Q[t]/(t^k); basis 1, t, ..., t^{k-1}. k = 2 is the dual numbers.
inline AlgebraPtr truncated_poly_algebra(Index k) {
    Algebra a = make_algebra(k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            if (i + j < k) a.mult[i][j] = {{i + j, Rat(1)}};
    a.unit[0] = 1;
    return std::make_shared<Algebra>(std::move(a));
}

// Inverse via row reduction of [m | I]; throws if singular.
inline RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    const Index n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (Index r = 0; r < n; ++r) {
        for (const auto& [c, v] : m.row(r)) aug.add(r, c, v);
        aug.add(r, n + r, Rat(1));
    }
    EchelonForm ef = rref(aug);
    RatMatrix inv(n, n);
    for (Index r = 0; r < (Index)ef.rows.size(); ++r) {
        if (ef.pivots[r] != r) throw DimensionMismatch("matrix is singular");
        for (const auto& [c, v] : ef.rows[r])
            if (c >= n) inv.add(r, c - n, v);
    }
    if ((Index)ef.rows.size() != n) throw DimensionMismatch("matrix is singular");
    return inv;
}

// Product of random elementary row operations: always invertible, entries stay small.
inline RatMatrix random_invertible(std::mt19937_64& rng, Index n, int ops = -1) {
    RatMatrix p = RatMatrix::identity(n);
    if (ops < 0) ops = 2 * n;
    std::uniform_int_distribution<Index> pick(0, n - 1);
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (int k = 0; k < ops; ++k) {
        Index i = pick(rng), j = pick(rng);
        if (i == j) continue;
        long c = coeff(rng);
        if (c == 0) c = 1;
        RatMatrix e = RatMatrix::identity(n);
        e.add(i, j, Rat(c));
        p = compose(e, p);
    }
    return p;
}

// Rewrites the structure constants in the basis f_j = sum_i P_{ij} e_i.
inline AlgebraPtr change_of_basis(const Algebra& a, const RatMatrix& p) {
    RatMatrix pinv = inverse(p);
    Algebra out = make_algebra(a.dim);
    for (Index i = 0; i < a.dim; ++i) {
        std::vector<Rat> fi = p.apply(basis_vector(a.dim, i));
        for (Index j = 0; j < a.dim; ++j) {
            std::vector<Rat> fj = p.apply(basis_vector(a.dim, j));
            std::vector<Rat> prod = pinv.apply(product(a, fi, fj));
            out.mult[i][j] = sv_from_dense(prod);
        }
    }
    out.unit = pinv.apply(a.unit);
    return std::make_shared<Algebra>(std::move(out));
}

// Same twist for a bimodule: module coordinates via S, algebra bases via the
// matrices used to rebase its two algebras (pass identity when unchanged).
inline Bimodule change_of_basis(const Bimodule& x, const AlgebraPtr& new_left,
                                const RatMatrix& p_left, const AlgebraPtr& new_right,
                                const RatMatrix& p_right, const RatMatrix& s) {
    RatMatrix sinv = inverse(s);
    Bimodule out;
    out.left_alg = new_left;
    out.right_alg = new_right;
    out.dim = x.dim;
    for (Index i = 0; i < new_left->dim; ++i) {
        std::vector<Rat> img = p_left.apply(basis_vector(new_left->dim, i));
        out.left_act.push_back(compose(sinv, compose(left_action_of(x, img), s)));
    }
    for (Index i = 0; i < new_right->dim; ++i) {
        std::vector<Rat> img = p_right.apply(basis_vector(new_right->dim, i));
        out.right_act.push_back(compose(sinv, compose(right_action_of(x, img), s)));
    }
    return out;
}

// One-dimensional (A,B)-bimodule through a pair of characters, given as the
// value of each basis element.
inline Bimodule character_bimodule(const AlgebraPtr& a, const std::vector<Rat>& chi_left,
                                   const AlgebraPtr& b, const std::vector<Rat>& chi_right) {
    Bimodule x;
    x.left_alg = a;
    x.right_alg = b;
    x.dim = 1;
    for (Index i = 0; i < a->dim; ++i) {
        RatMatrix m(1, 1);
        m.add(0, 0, chi_left[i]);
        x.left_act.push_back(std::move(m));
    }
    for (Index i = 0; i < b->dim; ++i) {
        RatMatrix m(1, 1);
        m.add(0, 0, chi_right[i]);
        x.right_act.push_back(std::move(m));
    }
    return x;
}

// Q^n as a left module over matrix_algebra(n), with the scalars acting on
// the right: the standard column module as an (M_n, Q)-bimodule.
inline Bimodule column_module(const AlgebraPtr& mat_alg, Index n, const AlgebraPtr& q) {
    Bimodule x;
    x.left_alg = mat_alg;
    x.right_alg = q;
    x.dim = n;
    for (Index p = 0; p < n; ++p)
        for (Index qq = 0; qq < n; ++qq) {
            RatMatrix m(n, n);
            m.add(p, qq, Rat(1));  // e_{pq} sends column q to column p
            x.left_act.push_back(std::move(m));
        }
    x.right_act.push_back(RatMatrix::identity(n));
    return x;
}

// Q^n as a left module over upper_triangular_algebra(n).
inline Bimodule ut_column_module(const AlgebraPtr& ut, Index n, const AlgebraPtr& q) {
    Bimodule x;
    x.left_alg = ut;
    x.right_alg = q;
    x.dim = n;
    for (Index p = 0; p < n; ++p)
        for (Index s = p; s < n; ++s) {
            RatMatrix m(n, n);
            m.add(p, s, Rat(1));
            x.left_act.push_back(std::move(m));
        }
    x.right_act.push_back(RatMatrix::identity(n));
    return x;
}

// Any vector space as a (Q,Q)-bimodule: the forced scalar actions.
inline Bimodule scalar_bimodule(const AlgebraPtr& qa, const AlgebraPtr& qb, Index dim) {
    Bimodule x;
    x.left_alg = qa;
    x.right_alg = qb;
    x.dim = dim;
    x.left_act = {RatMatrix::identity(dim).scaled(scalar_character(*qa))};
    x.right_act = {RatMatrix::identity(dim).scaled(scalar_character(*qb))};
    return x;
}

inline Bimodule zero_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
    Bimodule x;
    x.left_alg = a;
    x.right_alg = b;
    x.dim = 0;
    x.left_act.assign(a->dim, RatMatrix(0, 0));
    x.right_act.assign(b->dim, RatMatrix(0, 0));
    return x;
}

// Direct sum of bimodules over the same pair of algebras (block actions).
inline Bimodule direct_sum(const Bimodule& x, const Bimodule& y) {
    if (!(*x.left_alg == *y.left_alg) || !(*x.right_alg == *y.right_alg))
        throw AlgebraMismatch("direct_sum of modules over different algebras");
    Bimodule s;
    s.left_alg = x.left_alg;
    s.right_alg = x.right_alg;
    s.dim = x.dim + y.dim;
    auto block = [&](const RatMatrix& top, const RatMatrix& bot) {
        RatMatrix m(s.dim, s.dim);
        for (Index r = 0; r < top.rows(); ++r)
            for (const auto& [c, v] : top.row(r)) m.add(r, c, v);
        for (Index r = 0; r < bot.rows(); ++r)
            for (const auto& [c, v] : bot.row(r)) m.add(x.dim + r, x.dim + c, v);
        return m;
    };
    for (std::size_t i = 0; i < x.left_act.size(); ++i)
        s.left_act.push_back(block(x.left_act[i], y.left_act[i]));
    for (std::size_t i = 0; i < x.right_act.size(); ++i)
        s.right_act.push_back(block(x.right_act[i], y.right_act[i]));
    return s;
}

// An A-bimodule pulled back to a T-bimodule along the corner projection
// T -> A (an algebra map, because the strictly-upper block is an ideal).
// Corners land entirely in AA.
inline Bimodule pullback_a_bimodule(const TriangularData& td, const Bimodule& y) {
    Bimodule x;
    x.left_alg = td.t;
    x.right_alg = td.t;
    x.dim = y.dim;
    for (Index k = 0; k < td.dim_t(); ++k) {
        std::vector<Rat> a = td.proj_a.apply(basis_vector(td.dim_t(), k));
        x.left_act.push_back(left_action_of(y, a));
        x.right_act.push_back(right_action_of(y, a));
    }
    return x;
}

inline Bimodule pullback_b_bimodule(const TriangularData& td, const Bimodule& y) {
    Bimodule x;
    x.left_alg = td.t;
    x.right_alg = td.t;
    x.dim = y.dim;
    for (Index k = 0; k < td.dim_t(); ++k) {
        std::vector<Rat> b = td.proj_b.apply(basis_vector(td.dim_t(), k));
        x.left_act.push_back(left_action_of(y, b));
        x.right_act.push_back(right_action_of(y, b));
    }
    return x;
}

// -- canonical triangular fixtures -------------------------------------------

// T3 = [ Q Q ; 0 Q ]: the 3-dimensional upper-triangular algebra.
inline TriangularData td_t3() {
    AlgebraPtr q = scalar_algebra();
    return build_triangular(q, scalar_bimodule(q, q, 1), q);
}

// [ Q^2  Q ; 0  Q ] with the first diagonal component acting on M.
inline TriangularData td_q2_q() {
    AlgebraPtr a = diagonal_algebra(2);
    AlgebraPtr b = scalar_algebra();
    Bimodule m = character_bimodule(a, {Rat(1), Rat(0)}, b, {Rat(1)});
    return build_triangular(a, m, b);
}

// [ M_2(Q)  Q^2 ; 0  Q ] with the standard column module in the corner.
inline TriangularData td_m2() {
    AlgebraPtr a = matrix_algebra(2);
    AlgebraPtr b = scalar_algebra();
    return build_triangular(a, column_module(a, 2, b), b);
}

// M = 0: T degenerates to A (+) B.
inline TriangularData td_m0() {
    AlgebraPtr a = diagonal_algebra(2);
    AlgebraPtr b = scalar_algebra();
    return build_triangular(a, zero_bimodule(a, b), b);
}

// [ UT_2(Q)  Q^2 ; 0  Q ]: six-dimensional, A noncommutative.
inline TriangularData td_ut2() {
    AlgebraPtr a = upper_triangular_algebra(2);
    AlgebraPtr b = scalar_algebra();
    return build_triangular(a, ut_column_module(a, 2, b), b);
}

// A scalar-corner triangular with a higher-dimensional middle.
inline TriangularData td_wide(Index mdim) {
    AlgebraPtr q = scalar_algebra();
    return build_triangular(q, scalar_bimodule(q, q, mdim), q);
}

}  // namespace fixtures
