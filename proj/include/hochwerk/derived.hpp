#pragma once

#include <string>
#include <vector>

#include "hochwerk/bimodule.hpp"
#include "hochwerk/hochschild.hpp"

namespace hochwerk {

// Bar resolution of a left module X over a unital algebra E:
//   B_k(X) = E+ (x) E^{(x)k} (x) X,
// with E+ the unitization (slot zero carries E+ even though E is unital; the
// formulas then transcribe directly and the extra dimension changes nothing
// downstream). Basis flat index of (a, i_1..i_k, v) runs slot-major with the
// module index fastest, matching the cochain enumeration elsewhere.
//
// The differentials are
//   d_k(a (x) a_1 (x)...(x) a_{k+1} (x) x) =
//       (a a_1) (x) a_2 (x)...(x) x
//     + sum_j (-1)^j a (x)...(x) a_j a_{j+1} (x)...(x) x
//     + (-1)^{k+1} a (x) a_1 (x)...(x) a_k (x) (a_{k+1}.x),
// and the augmentation pi(a (x) x) = a.x.
struct BarComplex {
    AlgebraPtr alg;                // E
    Algebra eplus;                 // its unitization, basis [E | u]
    LeftModule module;
    Index max_degree = 0;
    std::vector<Index> dims;       // dims[k] = dim B_k
    RatMatrix pi;                  // dim X  x  dim B_0
    std::vector<RatMatrix> d;      // d[k] : B_{k+1} -> B_k, k < max_degree
};

namespace detail {

struct BarIndexer {
    Index eplus_dim, e_dim, degree, x_dim;

    long long space_dim() const {
        long long d = (long long)eplus_dim * x_dim;
        for (Index k = 0; k < degree; ++k) {
            d *= e_dim;
            if (d > (1LL << 30)) throw BudgetExceeded("bar space dimension overflows Index");
        }
        return d;
    }

    Index flat(Index a, const std::vector<Index>& tuple, Index v) const {
        long long f = a;
        for (Index t : tuple) f = f * e_dim + t;
        return (Index)(f * x_dim + v);
    }
};

}  // namespace detail

// Action of E on B_k by multiplication in slot zero, as matrices. Used by
// the intertwiner solves and by the degreewise tensor quotients.
inline RatMatrix bar_slot_action(const BarComplex& bar, Index k, Index e_index) {
    const Index rest = bar.dims[k] / (bar.alg->dim + 1);
    RatMatrix slot(bar.alg->dim + 1, bar.alg->dim + 1);
    for (Index a = 0; a <= bar.alg->dim; ++a)
        for (const auto& [r, c] : bar.eplus.mult[e_index][a]) slot.add(r, a, c);
    return kron(slot, RatMatrix::identity(rest));
}

inline BarComplex bar_resolution(const AlgebraPtr& e, const LeftModule& x, Index max_degree) {
    if (!(*x.alg == *e)) throw AlgebraMismatch("bar_resolution: module is not over E");
    if (max_degree < 0) throw DimensionMismatch("bar_resolution: negative degree");

    BarComplex bar;
    bar.alg = e;
    bar.eplus = unitization(*e);
    bar.module = x;
    bar.max_degree = max_degree;
    const Index de = e->dim, dp = de + 1, dx = x.dim;

    for (Index k = 0; k <= max_degree; ++k)
        bar.dims.push_back((Index)detail::BarIndexer{dp, de, k, dx}.space_dim());

    // augmentation: (a (x) x) |-> a.x, the adjoined unit acting as identity
    bar.pi = RatMatrix(dx, bar.dims[0]);
    for (Index a = 0; a < dp; ++a) {
        RatMatrix act = a < de ? x.act[a] : RatMatrix::identity(dx);
        for (Index r = 0; r < dx; ++r)
            for (const auto& [v, c] : act.row(r)) bar.pi.add(r, a * dx + v, c);
    }

    const auto xt = detail::transposed(x.act);
    for (Index k = 0; k < max_degree; ++k) {
        detail::BarIndexer src{dp, de, k + 1, dx};
        detail::BarIndexer dst{dp, de, k, dx};
        RatMatrix d((Index)dst.space_dim(), (Index)src.space_dim());
        const Rat last_sign((k + 1) % 2 == 0 ? 1 : -1);

        std::vector<Index> tup(k + 1, 0);
        std::vector<Index> out(k);
        for (Index a = 0; a < dp; ++a) {
            std::fill(tup.begin(), tup.end(), 0);
            do {
                for (Index v = 0; v < dx; ++v) {
                    const Index col = src.flat(a, tup, v);
                    // slot-zero product (a a_1)
                    std::copy(tup.begin() + 1, tup.end(), out.begin());
                    for (const auto& [r, c] : bar.eplus.mult[a][tup[0]])
                        d.add(dst.flat(r, out, v), col, c);
                    // interior contractions
                    for (Index j = 1; j <= k; ++j) {
                        const Rat sign(j % 2 == 0 ? 1 : -1);
                        std::copy(tup.begin(), tup.begin() + (j - 1), out.begin());
                        std::copy(tup.begin() + j + 1, tup.end(), out.begin() + j);
                        for (const auto& [r, c] : e->mult[tup[j - 1]][tup[j]]) {
                            out[j - 1] = r;
                            d.add(dst.flat(a, out, v), col, sign * c);
                        }
                    }
                    // last factor lands on the module
                    std::copy(tup.begin(), tup.begin() + k, out.begin());
                    for (const auto& [w, c] : xt[tup[k]].row(v))
                        d.add(dst.flat(a, out, w), col, last_sign * c);
                }
            } while ([&] {
                for (Index t = k; t >= 0; --t) {
                    if (++tup[t] < de) return true;
                    tup[t] = 0;
                }
                return false;
            }());
        }
        bar.d.push_back(std::move(d));
    }

    // exactness of the augmented complex at every degree we can see: the
    // consecutive composites vanish and the ranks fill each space. The bar
    // complex is exact, so failure means assembly bugs.
    if (dx > 0) {
        Index rank_pi = rank(bar.pi);
        if (rank_pi != dx) throw ExactnessFailure("bar augmentation is not surjective");
        Index prev = rank_pi;  // rank of the map out of B_0
        for (Index k = 0; k < max_degree; ++k) {
            bool composite_zero = k == 0 ? compose(bar.pi, bar.d[0]).is_zero()
                                         : compose(bar.d[k - 1], bar.d[k]).is_zero();
            if (!composite_zero)
                throw ExactnessFailure("bar complex is not a complex at degree " +
                                       std::to_string(k));
            Index rk = rank(bar.d[k]);
            if (rk + prev != bar.dims[k])
                throw ExactnessFailure("bar complex fails exactness at degree " +
                                       std::to_string(k));
            prev = rk;
        }
    }
    return bar;
}

namespace detail {

// Intertwiner space Hom_E(B_k, Y) inside Lin(B_k, Y), as the kernel of the
// stacked constraints L^Y_i F - F L^{B_k}_i = 0. Linear maps are vectorized
// column-major: flat(row w of Y, column b of B_k) = b*dimY + w.
inline Subspace module_map_space(const BarComplex& bar, Index k, const LeftModule& y) {
    const Index db = bar.dims[k], dy = y.dim, de = bar.alg->dim;
    RatMatrix constraints(de * db * dy, db * dy);
    Index row_base = 0;
    for (Index i = 0; i < de; ++i) {
        const RatMatrix slot_t = bar_slot_action(bar, k, i).transpose();
        // (I (x) L^Y_i - (L^B_i)^T (x) I) vec F
        for (Index b = 0; b < db; ++b) {
            for (Index w = 0; w < dy; ++w) {
                const Index row = row_base + b * dy + w;
                for (const auto& [v, c] : y.act[i].row(w)) constraints.add(row, b * dy + v, c);
                for (const auto& [bb, c] : slot_t.row(b)) constraints.add(row, bb * dy + w, -c);
            }
        }
        row_base += db * dy;
    }
    return kernel(constraints);
}

// Precomposition with d_k applied to a vectorized map: F |-> F . d_k.
inline SparseVec precompose(const RatMatrix& d, Index dy, const SparseVec& f) {
    std::map<Index, Rat> acc;
    for (const auto& [idx, val] : f) {
        const Index col_b = idx / dy, w = idx % dy;
        for (const auto& [p, c] : d.row(col_b)) acc[p * dy + w] += val * c;
    }
    SparseVec out;
    for (auto& [i, v] : acc)
        if (sgn(v) != 0) out.emplace_back(i, std::move(v));
    return out;
}

}  // namespace detail

// dim Ext^n_E(M, Y), computed by applying Hom_E(-, Y) to the bar resolution
// of M degreewise (each hom space solved as an intertwining-constraint
// kernel) and taking cohomology of the restricted precomposition maps.
inline Index ext_dim(const AlgebraPtr& e, const LeftModule& m, const LeftModule& y, Index n) {
    if (!(*y.alg == *e)) throw AlgebraMismatch("ext_dim: Y is not over E");
    if (n < 0) throw DimensionMismatch("ext_dim: negative degree");
    BarComplex bar = bar_resolution(e, m, n + 1);
    if (m.dim == 0 || y.dim == 0) return 0;

    std::vector<Subspace> hom;  // Hom_E(B_k, Y), k = 0..n+1
    for (Index k = 0; k <= n + 1; ++k) hom.push_back(detail::module_map_space(bar, k, y));

    // restricted maps R_k : Hom(B_k, Y) -> Hom(B_{k+1}, Y)
    std::vector<RatMatrix> r;
    for (Index k = 0; k <= n; ++k) {
        RatMatrix rk(hom[k + 1].dim(), hom[k].dim());
        for (Index j = 0; j < hom[k].dim(); ++j) {
            SparseVec img = detail::precompose(bar.d[k], y.dim, hom[k].basis[j]);
            auto coords = hom[k + 1].coordinates(img);
            if (!coords)
                throw ContainmentViolation(
                    "precomposition left the module-map space; intertwiner solve is broken");
            for (Index i = 0; i < hom[k + 1].dim(); ++i) rk.add(i, j, (*coords)[i]);
        }
        r.push_back(std::move(rk));
    }

    Subspace cocycles = kernel(r[n]);
    Subspace coboundaries =
        n == 0 ? Subspace::zero(cocycles.ambient_dim) : image(r[n - 1]);
    return quotient_dim(cocycles, coboundaries);
}

// Independent oracle for ext_dim through the standard cohomology complex
// with hom-module coefficients: Ext^n_E(M, Y) = H^n(E, Hom(M, Y)).
inline Index ext_via_hochschild(const AlgebraPtr& e, const LeftModule& m, const LeftModule& y,
                                Index n) {
    return cohomology_dim(*e, hom_bimodule(m, y), n);
}

// dim Tor_n^E(X, M) for a right module X and left module M: tensor X over E
// with the bar resolution of M degreewise and take homology.
inline Index tor_dim(const AlgebraPtr& e, const RightModule& x, const LeftModule& m, Index n) {
    if (!(*x.alg == *e)) throw AlgebraMismatch("tor_dim: X is not over E");
    if (n < 0) throw DimensionMismatch("tor_dim: negative degree");
    BarComplex bar = bar_resolution(e, m, n + 1);
    if (x.dim == 0 || m.dim == 0) return 0;

    // quotients X (x)_E B_k and the induced differentials
    std::vector<TensorOverResult> v;
    for (Index k = 0; k <= n + 1; ++k) {
        LeftModule bk{e, bar.dims[k], {}};
        for (Index i = 0; i < e->dim; ++i) bk.act.push_back(bar_slot_action(bar, k, i));
        v.push_back(tensor_over(x, bk));
    }

    std::vector<RatMatrix> induced;  // D_k : V_{k+1} -> V_k
    for (Index k = 0; k <= n; ++k) {
        RatMatrix full = kron(RatMatrix::identity(x.dim), bar.d[k]);
        induced.push_back(
            compose(v[k].projection, compose(full, tensor_section(v[k + 1], full.cols()))));
    }

    Subspace cycles = n == 0 ? Subspace::full(v[0].dim) : kernel(induced[n - 1]);
    return quotient_dim(cycles, image(induced[n]));
}

}  // namespace hochwerk
