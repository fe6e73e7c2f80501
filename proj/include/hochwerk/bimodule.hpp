#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "hochwerk/algebra.hpp"

namespace hochwerk {

// A bimodule over a pair of algebras, carried by one action matrix per basis
// element of each side. Column-vector convention: left_act[i] is x |-> e_i.x,
// right_act[j] is x |-> x.e_j, so the right action matrices anti-compose.
struct Bimodule {
    AlgebraPtr left_alg;
    AlgebraPtr right_alg;
    Index dim = 0;
    std::vector<RatMatrix> left_act;
    std::vector<RatMatrix> right_act;
};

// One-sided module views, used by the bar resolution and the derived functors.
struct LeftModule {
    AlgebraPtr alg;
    Index dim = 0;
    std::vector<RatMatrix> act;  // act[i] : m |-> e_i.m
};

struct RightModule {
    AlgebraPtr alg;
    Index dim = 0;
    std::vector<RatMatrix> act;  // act[i] : m |-> m.e_i
};

inline RatMatrix left_action_of(const Bimodule& x, const std::vector<Rat>& coeffs) {
    return linear_combination(x.left_act, coeffs);
}

inline RatMatrix right_action_of(const Bimodule& x, const std::vector<Rat>& coeffs) {
    return linear_combination(x.right_act, coeffs);
}

// Exact check of every bimodule axiom: the left action is a unital algebra
// homomorphism, the right action a unital anti-homomorphism, and the two
// commute. Diagnostics name the first failing basis pair.
inline void validate_bimodule(const Bimodule& x) {
    if (!x.left_alg || !x.right_alg) throw ValidationError("bimodule without algebras");
    const Algebra& a = *x.left_alg;
    const Algebra& b = *x.right_alg;
    if ((Index)x.left_act.size() != a.dim || (Index)x.right_act.size() != b.dim)
        throw ValidationError("bimodule action arity mismatch");
    for (const auto& m : x.left_act)
        if (m.rows() != x.dim || m.cols() != x.dim)
            throw ValidationError("left action matrix has wrong shape");
    for (const auto& m : x.right_act)
        if (m.rows() != x.dim || m.cols() != x.dim)
            throw ValidationError("right action matrix has wrong shape");

    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) {
            RatMatrix expect(x.dim, x.dim);
            for (const auto& [k, c] : a.mult[i][j]) expect = expect + x.left_act[k].scaled(c);
            if (!(compose(x.left_act[i], x.left_act[j]) == expect))
                throw LeftActionNotHom(i, j,
                                       "left action breaks at pair (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
        }
    for (Index i = 0; i < b.dim; ++i)
        for (Index j = 0; j < b.dim; ++j) {
            // x.(e_i e_j) = (x.e_i).e_j, i.e. R(e_i e_j) = R_j R_i
            RatMatrix expect(x.dim, x.dim);
            for (const auto& [k, c] : b.mult[i][j]) expect = expect + x.right_act[k].scaled(c);
            if (!(compose(x.right_act[j], x.right_act[i]) == expect))
                throw RightActionNotAntiHom(i, j,
                                            "right action breaks at pair (" + std::to_string(i) +
                                                "," + std::to_string(j) + ")");
        }
    if (!(left_action_of(x, a.unit) == RatMatrix::identity(x.dim)))
        throw NotUnital("left action of the unit is not the identity");
    if (!(right_action_of(x, b.unit) == RatMatrix::identity(x.dim)))
        throw NotUnital("right action of the unit is not the identity");
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < b.dim; ++j)
            if (!(compose(x.left_act[i], x.right_act[j]) ==
                  compose(x.right_act[j], x.left_act[i])))
                throw ActionsDontCommute(i, j,
                                         "actions fail to commute at (" + std::to_string(i) +
                                             "," + std::to_string(j) + ")");
}

inline void validate_left_module(const LeftModule& m) {
    Bimodule x;
    x.left_alg = m.alg;
    x.right_alg = std::make_shared<Algebra>([] {
        Algebra q = make_algebra(1);
        q.mult[0][0] = {{0, Rat(1)}};
        q.unit[0] = 1;
        return q;
    }());
    x.dim = m.dim;
    x.left_act = m.act;
    x.right_act = {RatMatrix::identity(m.dim)};
    validate_bimodule(x);
}

// The algebra acting on itself by multiplication on both sides.
inline Bimodule regular_bimodule(const AlgebraPtr& a) {
    Bimodule x;
    x.left_alg = a;
    x.right_alg = a;
    x.dim = a->dim;
    for (Index i = 0; i < a->dim; ++i) {
        x.left_act.push_back(left_mult_matrix(*a, i));
        x.right_act.push_back(right_mult_matrix(*a, i));
    }
    return x;
}

// Dual space with the transposed actions and swapped sides: for f in X*,
// (b.f)(x) = f(x.b) and (f.a)(x) = f(a.x). An (A,B)-bimodule dualizes to a
// (B,A)-bimodule; over a single algebra the sides swap back.
inline Bimodule dual(const Bimodule& x) {
    Bimodule d;
    d.left_alg = x.right_alg;
    d.right_alg = x.left_alg;
    d.dim = x.dim;
    d.left_act.reserve(x.right_act.size());
    for (const auto& m : x.right_act) d.left_act.push_back(m.transpose());
    d.right_act.reserve(x.left_act.size());
    for (const auto& m : x.left_act) d.right_act.push_back(m.transpose());
    return d;
}

// All linear maps M -> N between two left modules over the same algebra E,
// as an (E,E)-bimodule: (e.f)(v) = e.f(v), (f.e)(v) = f(e.v). A map F is
// vectorized column-major, so the actions are Kronecker products.
inline Bimodule hom_bimodule(const LeftModule& m, const LeftModule& n) {
    if (!(*m.alg == *n.alg)) throw AlgebraMismatch("hom_bimodule: modules over different algebras");
    Bimodule h;
    h.left_alg = m.alg;
    h.right_alg = m.alg;
    h.dim = m.dim * n.dim;
    const RatMatrix im = RatMatrix::identity(m.dim);
    const RatMatrix in = RatMatrix::identity(n.dim);
    for (Index i = 0; i < m.alg->dim; ++i) {
        h.left_act.push_back(kron(im, n.act[i]));
        h.right_act.push_back(kron(m.act[i].transpose(), in));
    }
    return h;
}

// Bimodule inputs with the right actions deliberately ignored.
inline Bimodule hom_bimodule(const Bimodule& m, const Bimodule& n) {
    LeftModule lm{m.left_alg, m.dim, m.left_act};
    LeftModule ln{n.left_alg, n.dim, n.left_act};
    return hom_bimodule(lm, ln);
}

enum class Corner { AA, AB, BA, BB };

inline const char* corner_name(Corner c) {
    switch (c) {
        case Corner::AA: return "AA";
        case Corner::AB: return "AB";
        case Corner::BA: return "BA";
        case Corner::BB: return "BB";
    }
    return "?";
}

// Decomposition of a bimodule over one algebra by a pair of orthogonal
// idempotents: X_uv = e_u X e_v with materialized bases.
struct CornerSplit {
    std::array<Subspace, 4> spaces;       // AA, AB, BA, BB
    std::array<RatMatrix, 4> projections; // P_uv = L(e_u) R(e_v)

    const Subspace& space(Corner c) const { return spaces[(int)c]; }
    const RatMatrix& projection(Corner c) const { return projections[(int)c]; }
    Index dim(Corner c) const { return spaces[(int)c].dim(); }
};

// Splits x by two idempotents supplied in the coordinates of the (single)
// acting algebra. Verifies the idempotent identities and that the four
// corners are independent and fill the module.
inline CornerSplit corner_split(const Bimodule& x, const std::vector<Rat>& e_a,
                                const std::vector<Rat>& e_b) {
    if (!(*x.left_alg == *x.right_alg))
        throw AlgebraMismatch("corner_split needs a bimodule over one algebra");
    const Algebra& t = *x.left_alg;

    std::vector<Rat> sum(t.dim, Rat(0));
    for (Index i = 0; i < t.dim; ++i) sum[i] = e_a[i] + e_b[i];
    if (product(t, e_a, e_a) != e_a || product(t, e_b, e_b) != e_b)
        throw NotIdempotent("corner idempotents fail e*e = e");
    std::vector<Rat> zero(t.dim, Rat(0));
    if (product(t, e_a, e_b) != zero || product(t, e_b, e_a) != zero)
        throw NotIdempotent("corner idempotents are not orthogonal");
    if (sum != t.unit) throw NotIdempotent("corner idempotents do not sum to the unit");

    const RatMatrix la = left_action_of(x, e_a), lb = left_action_of(x, e_b);
    const RatMatrix ra = right_action_of(x, e_a), rb = right_action_of(x, e_b);

    CornerSplit s;
    s.projections = {compose(la, ra), compose(la, rb), compose(lb, ra), compose(lb, rb)};
    Index total = 0;
    for (int c = 0; c < 4; ++c) {
        s.spaces[c] = image(s.projections[c]);
        total += s.spaces[c].dim();
    }
    if (total != x.dim)
        throw CornersDontSpan("corner dimensions sum to " + std::to_string(total) +
                              " in a module of dimension " + std::to_string(x.dim));
    return s;
}

// One corner of a split, re-expressed as a bimodule over the corner algebras
// through the supplied embeddings into the big algebra.
inline Bimodule corner_as_bimodule(const Bimodule& x, const CornerSplit& split, Corner which,
                                   const AlgebraPtr& left, const AlgebraPtr& right,
                                   const RatMatrix& embed_left, const RatMatrix& embed_right) {
    const Subspace& s = split.space(which);
    Bimodule out;
    out.left_alg = left;
    out.right_alg = right;
    out.dim = s.dim();

    auto restricted = [&](const RatMatrix& act) {
        RatMatrix m(s.dim(), s.dim());
        for (Index j = 0; j < s.dim(); ++j) {
            // act * (j-th basis vector), then coordinates in the corner basis
            std::vector<Rat> img = act.apply(sv_to_dense(s.basis[j], x.dim));
            auto coords = s.coordinates(sv_from_dense(img));
            if (!coords)
                throw ContainmentViolation("corner is not invariant under the requested action");
            for (Index i = 0; i < s.dim(); ++i) m.add(i, j, (*coords)[i]);
        }
        return m;
    };

    for (Index i = 0; i < left->dim; ++i) {
        std::vector<Rat> emb = embed_left.apply(basis_vector(left->dim, i));
        out.left_act.push_back(restricted(left_action_of(x, emb)));
    }
    for (Index i = 0; i < right->dim; ++i) {
        std::vector<Rat> emb = embed_right.apply(basis_vector(right->dim, i));
        out.right_act.push_back(restricted(right_action_of(x, emb)));
    }
    return out;
}

// X (x)_E Y for a right module X and a left module Y over the same algebra:
// the full tensor product modulo span{ x.e (x) y - x (x) e.y }. Basis of the
// ambient space is x_i (x) y_j at flat index i*dim(Y)+j. The quotient is
// carried by a projection onto canonical representatives and the section
// picking the transversal basis.
struct TensorOverResult {
    Index dim = 0;
    RatMatrix projection;              // quotient_dim x full_dim
    std::vector<Index> transversal;    // full-space indices of the chosen basis
    Subspace relations;
};

inline TensorOverResult tensor_over(const RightModule& x, const LeftModule& y) {
    if (!(*x.alg == *y.alg)) throw AlgebraMismatch("tensor_over: modules over different algebras");
    const Index dx = x.dim, dy = y.dim, full = dx * dy;
    const Index de = x.alg->dim;

    std::vector<SparseVec> gens;
    gens.reserve((std::size_t)de * dx * dy);
    for (Index e = 0; e < de; ++e) {
        const RatMatrix rxt = x.act[e].transpose();  // row i = column i of the action
        const RatMatrix lyt = y.act[e].transpose();
        for (Index i = 0; i < dx; ++i)
            for (Index j = 0; j < dy; ++j) {
                // (x_i.e) (x) y_j  -  x_i (x) (e.y_j)
                SparseVec g;
                for (const auto& [p, v] : rxt.row(i)) g.emplace_back(p * dy + j, v);
                for (const auto& [q, v] : lyt.row(j)) {
                    Rat w = -v;
                    Index f = i * dy + q;
                    // supports may overlap only when p*dy+j == i*dy+q
                    bool merged = false;
                    for (auto& [c, val] : g)
                        if (c == f) {
                            val += w;
                            merged = true;
                            break;
                        }
                    if (!merged) g.emplace_back(f, std::move(w));
                }
                std::sort(g.begin(), g.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                g.erase(std::remove_if(g.begin(), g.end(),
                                       [](const auto& e2) { return sgn(e2.second) == 0; }),
                        g.end());
                if (!g.empty()) gens.push_back(std::move(g));
            }
    }

    Subspace rel = Subspace::span(full, gens);
    std::vector<bool> is_pivot(full, false);
    for (Index p : rel.pivots) is_pivot[p] = true;

    TensorOverResult out;
    out.relations = rel;
    out.dim = full - rel.dim();
    out.projection = RatMatrix(out.dim, full);
    out.transversal.reserve(out.dim);
    std::vector<Index> slot_of(full, -1);
    for (Index f = 0; f < full; ++f)
        if (!is_pivot[f]) {
            slot_of[f] = (Index)out.transversal.size();
            out.transversal.push_back(f);
        }
    // canonical representative of each unit vector
    for (Index f = 0; f < full; ++f) {
        if (!is_pivot[f]) {
            out.projection.add(slot_of[f], f, Rat(1));
            continue;
        }
        // e_f == e_f - (relation row with pivot f), supported on non-pivots
        for (std::size_t r = 0; r < rel.basis.size(); ++r) {
            if (rel.pivots[r] != f) continue;
            for (const auto& [c, v] : rel.basis[r])
                if (c != f) out.projection.add(slot_of[c], f, -v);
            break;
        }
    }
    return out;
}

// Columns of the section matrix are the transversal unit vectors.
inline RatMatrix tensor_section(const TensorOverResult& t, Index full_dim) {
    RatMatrix s(full_dim, t.dim);
    for (Index j = 0; j < t.dim; ++j) s.add(t.transversal[j], j, Rat(1));
    return s;
}

// An (A,B)-bimodule repackaged as a one-sided module over E = A (x) B^op.
struct EModule {
    AlgebraPtr e;
    LeftModule left;
    RightModule right;
    bool is_left = true;
};

// Left E-module structure (a (x) b).m = a.m.b on an (A,B)-bimodule.
inline EModule as_left_e_module(const Bimodule& x) {
    EModule out;
    out.e = std::make_shared<Algebra>(tensor_op(*x.left_alg, *x.right_alg));
    out.is_left = true;
    out.left.alg = out.e;
    out.left.dim = x.dim;
    for (Index i = 0; i < x.left_alg->dim; ++i)
        for (Index j = 0; j < x.right_alg->dim; ++j)
            out.left.act.push_back(compose(x.left_act[i], x.right_act[j]));
    return out;
}

// Right E-module structure m.(a (x) b) = b.m.a on a (B,A)-bimodule, over the
// same E = A (x) B^op. This is the shape the off-diagonal corner X_BA takes
// as a Tor argument.
inline EModule as_right_e_module(const Bimodule& y) {
    EModule out;
    out.e = std::make_shared<Algebra>(tensor_op(*y.right_alg, *y.left_alg));
    out.is_left = false;
    out.right.alg = out.e;
    out.right.dim = y.dim;
    for (Index i = 0; i < y.right_alg->dim; ++i)
        for (Index j = 0; j < y.left_alg->dim; ++j)
            out.right.act.push_back(compose(y.left_act[j], y.right_act[i]));
    return out;
}

inline LeftModule regular_left_module(const AlgebraPtr& a) {
    LeftModule m{a, a->dim, {}};
    for (Index i = 0; i < a->dim; ++i) m.act.push_back(left_mult_matrix(*a, i));
    return m;
}

inline RightModule regular_right_module(const AlgebraPtr& a) {
    RightModule m{a, a->dim, {}};
    for (Index i = 0; i < a->dim; ++i) m.act.push_back(right_mult_matrix(*a, i));
    return m;
}

// The module commutant {v : e.v = v.e for all e}, dimension of H^0 computed
// without any complex machinery; used as an independent cross-check.
inline Index commutant_dim(const Bimodule& x) {
    if (!(*x.left_alg == *x.right_alg))
        throw AlgebraMismatch("commutant_dim needs a bimodule over one algebra");
    const Index d = x.left_alg->dim;
    RatMatrix stacked(d * x.dim, x.dim);
    for (Index i = 0; i < d; ++i) {
        RatMatrix diff = x.left_act[i] - x.right_act[i];
        for (Index r = 0; r < x.dim; ++r)
            for (const auto& [c, v] : diff.row(r)) stacked.add(i * x.dim + r, c, v);
    }
    return kernel(stacked).dim();
}

}  // namespace hochwerk
