#pragma once

#include <string>
#include <vector>

#include "hochwerk/bimodule.hpp"

namespace hochwerk {

// Cochains in degree n are functions on basis tuples: f is stored by the
// coordinates of f(e_{i1},...,e_{in}), giving dim C^n = (dim A)^n * dim X.
// Chains use the same enumeration for A^{(x)n} (x) X. The flat index of
// ((i1,...,in), v) is horner(i1..in) * dim X + v -- tuples lexicographic,
// coefficient index fastest. This order is frozen; golden tests depend on it.
struct TupleIndexer {
    Index alg_dim = 0;
    Index degree = 0;
    Index mod_dim = 0;

    long long space_dim() const {
        long long d = mod_dim;
        for (Index k = 0; k < degree; ++k) {
            d *= alg_dim;
            if (d > (1LL << 30)) throw BudgetExceeded("tuple space dimension overflows Index");
        }
        return d;
    }

    Index flat(const std::vector<Index>& tuple, Index v) const {
        long long f = 0;
        for (Index t : tuple) f = f * alg_dim + t;
        return (Index)(f * mod_dim + v);
    }

    bool next_tuple(std::vector<Index>& tuple) const {
        for (Index k = degree - 1; k >= 0; --k) {
            if (++tuple[k] < alg_dim) return true;
            tuple[k] = 0;
        }
        return false;
    }
};

namespace detail {

// expansions[k] lists the pairs (p, q, c) with e_p e_q = ... + c e_k + ...
inline std::vector<std::vector<std::tuple<Index, Index, Rat>>> product_expansions(
    const Algebra& a) {
    std::vector<std::vector<std::tuple<Index, Index, Rat>>> exp(a.dim);
    for (Index p = 0; p < a.dim; ++p)
        for (Index q = 0; q < a.dim; ++q)
            for (const auto& [k, c] : a.mult[p][q]) exp[k].emplace_back(p, q, c);
    return exp;
}

inline std::vector<RatMatrix> transposed(const std::vector<RatMatrix>& ms) {
    std::vector<RatMatrix> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.push_back(m.transpose());
    return out;
}

}  // namespace detail

// Matrix of the degree-n coboundary C^n -> C^{n+1}:
//   (df)(a_1,...,a_{n+1}) = a_1 f(a_2,...,a_{n+1})
//                         + sum_k (-1)^k f(a_1,...,a_k a_{k+1},...,a_{n+1})
//                         + (-1)^{n+1} f(a_1,...,a_n) a_{n+1}.
// Degree 0 is x |-> (a |-> a.x - x.a).
inline RatMatrix coboundary_matrix(const Algebra& a, const Bimodule& x, Index n) {
    if (!(*x.left_alg == a) || !(*x.right_alg == a))
        throw AlgebraMismatch("coboundary_matrix: module is not an (A,A)-bimodule");
    TupleIndexer src{a.dim, n, x.dim};
    TupleIndexer dst{a.dim, n + 1, x.dim};
    RatMatrix delta((Index)dst.space_dim(), (Index)src.space_dim());

    const auto expansions = detail::product_expansions(a);
    const auto lt = detail::transposed(x.left_act);   // row v = column v of L
    const auto rt = detail::transposed(x.right_act);
    const Rat last_sign((n + 1) % 2 == 0 ? 1 : -1);

    std::vector<Index> tup(n, 0);
    std::vector<Index> out(n + 1);
    do {
        for (Index v = 0; v < x.dim; ++v) {
            const Index col = src.flat(tup, v);
            // a_1 . f(a_2,...)
            for (Index i = 0; i < a.dim; ++i) {
                out[0] = i;
                std::copy(tup.begin(), tup.end(), out.begin() + 1);
                for (const auto& [w, c] : lt[i].row(v)) delta.add(dst.flat(out, w), col, c);
            }
            // contraction terms
            for (Index k = 1; k <= n; ++k) {
                const Rat sign(k % 2 == 0 ? 1 : -1);
                std::copy(tup.begin(), tup.begin() + (k - 1), out.begin());
                std::copy(tup.begin() + k, tup.end(), out.begin() + k + 1);
                for (const auto& [p, q, c] : expansions[tup[k - 1]]) {
                    out[k - 1] = p;
                    out[k] = q;
                    delta.add(dst.flat(out, v), col, sign * c);
                }
            }
            // (-1)^{n+1} f(...) . a_{n+1}
            std::copy(tup.begin(), tup.end(), out.begin());
            for (Index i = 0; i < a.dim; ++i) {
                out[n] = i;
                for (const auto& [w, c] : rt[i].row(v))
                    delta.add(dst.flat(out, w), col, last_sign * c);
            }
        }
    } while (n > 0 && src.next_tuple(tup));
    return delta;
}

// Matrix of the degree-n boundary C_{n+1} -> C_n:
//   d(a_1 (x)...(x) a_{n+1} (x) x) = a_2 (x)...(x) a_{n+1} (x) x.a_1
//                                  + sum_k (-1)^k a_1 (x)...(x) a_k a_{k+1} (x)...(x) x
//                                  + (-1)^{n+1} a_1 (x)...(x) a_n (x) a_{n+1}.x.
// The outer terms must carry these module actions (the coefficient meets the
// dropped factor from the side facing it); the other assignment fails d.d = 0.
// This boundary is the exact transpose of the coboundary on the dual module,
// which is what the homology/cohomology duality tests pin down.
inline RatMatrix boundary_matrix(const Algebra& a, const Bimodule& x, Index n) {
    if (!(*x.left_alg == a) || !(*x.right_alg == a))
        throw AlgebraMismatch("boundary_matrix: module is not an (A,A)-bimodule");
    TupleIndexer src{a.dim, n + 1, x.dim};
    TupleIndexer dst{a.dim, n, x.dim};
    RatMatrix d((Index)dst.space_dim(), (Index)src.space_dim());

    const auto lt = detail::transposed(x.left_act);
    const auto rt = detail::transposed(x.right_act);
    const Rat last_sign((n + 1) % 2 == 0 ? 1 : -1);

    std::vector<Index> tup(n + 1, 0);
    std::vector<Index> out(n);
    do {
        for (Index v = 0; v < x.dim; ++v) {
            const Index col = src.flat(tup, v);
            // drop a_1 onto the coefficient from the right
            std::copy(tup.begin() + 1, tup.end(), out.begin());
            for (const auto& [w, c] : rt[tup[0]].row(v)) d.add(dst.flat(out, w), col, c);
            // merge a_k a_{k+1}
            for (Index k = 1; k <= n; ++k) {
                const Rat sign(k % 2 == 0 ? 1 : -1);
                std::copy(tup.begin(), tup.begin() + (k - 1), out.begin());
                std::copy(tup.begin() + k + 1, tup.end(), out.begin() + k);
                for (const auto& [r, c] : a.mult[tup[k - 1]][tup[k]]) {
                    out[k - 1] = r;
                    d.add(dst.flat(out, v), col, sign * c);
                }
            }
            // drop a_{n+1} onto the coefficient from the left
            std::copy(tup.begin(), tup.begin() + n, out.begin());
            for (const auto& [w, c] : lt[tup[n]].row(v))
                d.add(dst.flat(out, w), col, last_sign * c);
        }
    } while (src.next_tuple(tup));
    return d;
}

// dim H^n = dim ker(delta^n) - dim im(delta^{n-1}), with the containment of
// coboundaries in cocycles checked, not assumed.
inline Index cohomology_dim(const Algebra& a, const Bimodule& x, Index n) {
    if (n < 0) throw DimensionMismatch("cohomology_dim: negative degree");
    Subspace cocycles = kernel(coboundary_matrix(a, x, n));
    Subspace coboundaries = n == 0 ? Subspace::zero(cocycles.ambient_dim)
                                   : image(coboundary_matrix(a, x, n - 1));
    return quotient_dim(cocycles, coboundaries);
}

inline Index homology_dim(const Algebra& a, const Bimodule& x, Index n) {
    if (n < 0) throw DimensionMismatch("homology_dim: negative degree");
    TupleIndexer level{a.dim, n, x.dim};
    Subspace cycles = n == 0 ? Subspace::full((Index)level.space_dim())
                             : kernel(boundary_matrix(a, x, n - 1));
    Subspace boundaries = image(boundary_matrix(a, x, n));
    return quotient_dim(cycles, boundaries);
}

// All cohomology dims 0..max_degree, building each differential once.
inline std::vector<Index> cohomology_dims(const Algebra& a, const Bimodule& x,
                                          Index max_degree) {
    std::vector<Index> dims;
    Subspace prev_image = Subspace::zero(0);
    for (Index n = 0; n <= max_degree; ++n) {
        RatMatrix delta = coboundary_matrix(a, x, n);
        Subspace cocycles = kernel(delta);
        if (n == 0) prev_image = Subspace::zero(cocycles.ambient_dim);
        dims.push_back(quotient_dim(cocycles, prev_image));
        if (n < max_degree) prev_image = image(delta);
    }
    return dims;
}

inline std::vector<Index> homology_dims(const Algebra& a, const Bimodule& x, Index max_degree) {
    std::vector<Index> dims;
    Subspace cycles = Subspace::full((Index)TupleIndexer{a.dim, 0, x.dim}.space_dim());
    for (Index n = 0; n <= max_degree; ++n) {
        RatMatrix d = boundary_matrix(a, x, n);  // C_{n+1} -> C_n
        dims.push_back(quotient_dim(cycles, image(d)));
        if (n < max_degree) cycles = kernel(d);
    }
    return dims;
}

enum class ComplexSide { Cochain, Chain };

struct DegreeReport {
    Index degree = 0;
    Index space_dim = 0;
    Index out_rank = 0;     // rank of the differential leaving this degree
    Index in_rank = 0;      // rank of the differential arriving here
    Index kernel_dim = 0;   // kernel of the outgoing differential
    Index homology_dim = 0;
};

struct ComplexReport {
    ComplexSide side = ComplexSide::Cochain;
    Index max_degree = 0;
    bool square_zero_certified = false;
    std::vector<DegreeReport> degrees;
};

// Per-degree dimensions with the complex law d.d = 0 certified by exact
// composition of consecutive differentials. Fails loudly on a broken complex.
inline ComplexReport complex_report(const Algebra& a, const Bimodule& x, ComplexSide side,
                                    Index max_degree) {
    if (max_degree < 0) throw DimensionMismatch("complex_report: negative degree");
    ComplexReport rep;
    rep.side = side;
    rep.max_degree = max_degree;

    RatMatrix prev;
    bool have_prev = false;
    Subspace prev_image = Subspace::zero(0);
    Subspace cycles = Subspace::zero(0);
    for (Index n = 0; n <= max_degree; ++n) {
        RatMatrix d = side == ComplexSide::Cochain ? coboundary_matrix(a, x, n)
                                                   : boundary_matrix(a, x, n);
        if (have_prev) {
            bool ok = side == ComplexSide::Cochain ? compose(d, prev).is_zero()
                                                   : compose(prev, d).is_zero();
            if (!ok)
                throw ContainmentViolation("complex law d.d = 0 fails entering degree " +
                                           std::to_string(n));
        }

        DegreeReport row;
        row.degree = n;
        row.space_dim = (Index)TupleIndexer{a.dim, n, x.dim}.space_dim();
        if (side == ComplexSide::Cochain) {
            Subspace ker = kernel(d);
            row.kernel_dim = ker.dim();
            row.out_rank = row.space_dim - ker.dim();
            row.in_rank = n == 0 ? 0 : prev_image.dim();
            if (n == 0) prev_image = Subspace::zero(row.space_dim);
            row.homology_dim = quotient_dim(ker, prev_image);
            prev_image = image(d);
        } else {
            // d leaves degree n+1; the map leaving degree n is the previous one
            if (n == 0) cycles = Subspace::full(row.space_dim);
            Subspace bd = image(d);
            row.kernel_dim = cycles.dim();
            row.out_rank = n == 0 ? 0 : row.space_dim - cycles.dim();
            row.in_rank = bd.dim();
            row.homology_dim = quotient_dim(cycles, bd);
            cycles = kernel(d);
        }
        rep.degrees.push_back(row);
        prev = std::move(d);
        have_prev = true;
    }
    rep.square_zero_certified = true;
    return rep;
}

}  // namespace hochwerk
