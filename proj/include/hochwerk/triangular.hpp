#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hochwerk/bimodule.hpp"

namespace hochwerk {

// The block algebra T = [ A  M ; 0  B ] for an (A,B)-bimodule M, together
// with its corner idempotents and the block embeddings/projections. Basis
// layout is frozen as [A-basis | M-basis | B-basis] so coordinates are
// deterministic across runs.
struct TriangularData {
    AlgebraPtr a;
    AlgebraPtr b;
    Bimodule m;  // over (a, b)
    AlgebraPtr t;
    std::vector<Rat> e_a, e_b;      // orthogonal idempotents with e_a + e_b = 1
    RatMatrix incl_a, incl_b;       // dim T x dim A, dim T x dim B
    RatMatrix proj_a, proj_b, proj_m;

    Index dim_a() const { return a->dim; }
    Index dim_b() const { return b->dim; }
    Index dim_m() const { return m.dim; }
    Index dim_t() const { return t->dim; }
};

// Multiplication is assembled blockwise:
// (a,m,b) * (a',m',b') = (a a', a.m' + m.b', b b').
// Both the input bimodule and the assembled algebra are validated; the
// associativity of T is a consequence of the bimodule axioms, but it is
// checked rather than assumed.
inline TriangularData build_triangular(const AlgebraPtr& a, const Bimodule& m,
                                       const AlgebraPtr& b) {
    if (!(*m.left_alg == *a) || !(*m.right_alg == *b))
        throw AlgebraMismatch("build_triangular: bimodule is not over (A, B)");
    validate(*a);
    validate(*b);
    validate_bimodule(m);

    const Index da = a->dim, dm = m.dim, db = b->dim;
    const Index dt = da + dm + db;
    Algebra t = make_algebra(dt);
    auto ai = [&](Index i) { return i; };
    auto mi = [&](Index i) { return da + i; };
    auto bi = [&](Index i) { return da + dm + i; };

    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) t.mult[ai(i)][ai(j)] = a->mult[i][j];
    for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j) {
            SparseVec v = b->mult[i][j];
            for (auto& [k, c] : v) k = bi(k);
            t.mult[bi(i)][bi(j)] = std::move(v);
        }
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < dm; ++j) {
            SparseVec v;  // e^A_i . e^M_j = column j of the left action
            for (Index k = 0; k < dm; ++k) {
                Rat c = m.left_act[i].at(k, j);
                if (sgn(c) != 0) v.emplace_back(mi(k), c);
            }
            t.mult[ai(i)][mi(j)] = std::move(v);
        }
    for (Index i = 0; i < dm; ++i)
        for (Index j = 0; j < db; ++j) {
            SparseVec v;  // e^M_i . e^B_j
            for (Index k = 0; k < dm; ++k) {
                Rat c = m.right_act[j].at(k, i);
                if (sgn(c) != 0) v.emplace_back(mi(k), c);
            }
            t.mult[mi(i)][bi(j)] = std::move(v);
        }
    for (Index i = 0; i < da; ++i) t.unit[ai(i)] = a->unit[i];
    for (Index i = 0; i < db; ++i) t.unit[bi(i)] = b->unit[i];
    validate(t);

    TriangularData td;
    td.a = a;
    td.b = b;
    td.m = m;
    td.t = std::make_shared<Algebra>(std::move(t));
    td.e_a.assign(dt, Rat(0));
    td.e_b.assign(dt, Rat(0));
    for (Index i = 0; i < da; ++i) td.e_a[ai(i)] = a->unit[i];
    for (Index i = 0; i < db; ++i) td.e_b[bi(i)] = b->unit[i];
    td.incl_a = RatMatrix(dt, da);
    for (Index i = 0; i < da; ++i) td.incl_a.add(ai(i), i, Rat(1));
    td.incl_b = RatMatrix(dt, db);
    for (Index i = 0; i < db; ++i) td.incl_b.add(bi(i), i, Rat(1));
    td.proj_a = RatMatrix(da, dt);
    for (Index i = 0; i < da; ++i) td.proj_a.add(i, ai(i), Rat(1));
    td.proj_b = RatMatrix(db, dt);
    for (Index i = 0; i < db; ++i) td.proj_b.add(i, bi(i), Rat(1));
    td.proj_m = RatMatrix(dm, dt);
    for (Index i = 0; i < dm; ++i) td.proj_m.add(i, mi(i), Rat(1));
    return td;
}

// T acting on itself by multiplication. Corner split (A, M, 0, B).
inline Bimodule t_as_bimodule(const TriangularData& td) { return regular_bimodule(td.t); }

// The dual module T*. Corner split (A*, 0, M*, B*).
inline Bimodule t_dual_bimodule(const TriangularData& td) {
    return dual(regular_bimodule(td.t));
}

// Lifts a unital (A,B)-bimodule to a T-bimodule through the corner
// projections: (a,m,b).x = a.x and x.(a,m,b) = x.b. Everything lands in the
// AB corner, which is what drives the vanishing results.
inline Bimodule module_over_t(const TriangularData& td, const Bimodule& n) {
    if (!(*n.left_alg == *td.a) || !(*n.right_alg == *td.b))
        throw AlgebraMismatch("module_over_t: bimodule is not over (A, B)");
    Bimodule x;
    x.left_alg = td.t;
    x.right_alg = td.t;
    x.dim = n.dim;
    const Index da = td.dim_a(), dm = td.dim_m(), db = td.dim_b();
    for (Index i = 0; i < da; ++i) x.left_act.push_back(n.left_act[i]);
    for (Index i = 0; i < dm + db; ++i) x.left_act.push_back(RatMatrix(n.dim, n.dim));
    for (Index i = 0; i < da + dm; ++i) x.right_act.push_back(RatMatrix(n.dim, n.dim));
    for (Index i = 0; i < db; ++i) x.right_act.push_back(n.right_act[i]);
    validate_bimodule(x);
    return x;
}

// M itself as a T-bimodule.
inline Bimodule m_as_t_bimodule(const TriangularData& td) { return module_over_t(td, td.m); }

// For a one-dimensional unital algebra, the scalar each basis element acts
// by in any unital module (a = chi(a) * 1 forces the action).
inline Rat scalar_character(const Algebra& a) {
    if (a.dim != 1 || sgn(a.unit[0]) == 0)
        throw ValidationError("scalar_character needs a 1-dimensional unital algebra");
    return Rat(1) / a.unit[0];
}

// T itself as an (A,B)-bimodule, available when A and B are scalars (the
// unique unital actions are scalar multiplication). This is the middle
// module of the next nesting level.
inline Bimodule triangular_as_scalar_bimodule(const TriangularData& td) {
    if (td.dim_a() != 1 || td.dim_b() != 1)
        throw ValidationError(
            "nested middle module needs scalar corner algebras: a general unital corner "
            "action on the far block does not exist");
    Bimodule n;
    n.left_alg = td.a;
    n.right_alg = td.b;
    n.dim = td.dim_t();
    n.left_act = {RatMatrix::identity(td.dim_t()).scaled(scalar_character(*td.a))};
    n.right_act = {RatMatrix::identity(td.dim_t()).scaled(scalar_character(*td.b))};
    return n;
}

// Iterated construction T_m = [ A  T_{m-1} ; 0  B ], T_0 = T. Each level is
// rebuilt blockwise and revalidated. Depth 0 returns the input unchanged.
inline TriangularData nested_triangular(const TriangularData& td, Index depth) {
    TriangularData cur = td;
    for (Index level = 0; level < depth; ++level)
        cur = build_triangular(td.a, triangular_as_scalar_bimodule(cur), td.b);
    return cur;
}

}  // namespace hochwerk
