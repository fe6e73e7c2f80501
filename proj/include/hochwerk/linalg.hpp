#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hochwerk/matrix.hpp"

namespace hochwerk {

// Elimination switches to a plain dense sweep below this edge length.
inline constexpr Index kDenseEliminationLimit = 64;

// Reduced row echelon form: rows carry leading 1s at strictly increasing
// pivot columns and are fully reduced against each other. The RREF of a row
// space is unique, so these rows are a canonical representative of the space
// they span.
struct EchelonForm {
    Index cols = 0;
    std::vector<SparseVec> rows;
    std::vector<Index> pivots;  // pivot column of each row, increasing

    Index rank() const { return (Index)rows.size(); }
};

namespace detail {

inline EchelonForm finalize_echelon(Index cols, std::vector<SparseVec> rows,
                                    std::vector<Index> pivot_cols) {
    // Sort by pivot column, then clear entries sitting over later pivots.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivot_cols[a] < pivot_cols[b]; });

    EchelonForm ef;
    ef.cols = cols;
    ef.rows.resize(rows.size());
    ef.pivots.resize(rows.size());
    std::vector<Index> row_of_pivot(cols, -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        ef.rows[i] = std::move(rows[order[i]]);
        ef.pivots[i] = pivot_cols[order[i]];
        row_of_pivot[ef.pivots[i]] = (Index)i;
    }
    for (Index i = (Index)ef.rows.size() - 2; i >= 0; --i) {
        // gather foreign pivot entries first; axpy introduces non-pivot cols only
        SparseVec hits;
        for (const auto& [c, v] : ef.rows[i])
            if (c != ef.pivots[i] && row_of_pivot[c] >= 0) hits.emplace_back(c, v);
        for (const auto& [c, v] : hits) sv_axpy(ef.rows[i], -v, ef.rows[row_of_pivot[c]]);
    }
    return ef;
}

inline EchelonForm rref_sparse(const RatMatrix& m) {
    std::vector<SparseVec> pivot_rows;
    std::vector<Index> pivot_cols;
    std::vector<Index> row_of_pivot(m.cols(), -1);
    for (Index r = 0; r < m.rows(); ++r) {
        SparseVec v = m.row(r);
        while (!v.empty()) {
            Index lead = v.front().first;
            Index pr = row_of_pivot[lead];
            if (pr < 0) break;
            sv_axpy(v, -v.front().second, pivot_rows[pr]);
        }
        if (v.empty()) continue;
        Rat inv = Rat(1) / v.front().second;
        sv_scale(v, inv);
        row_of_pivot[v.front().first] = (Index)pivot_rows.size();
        pivot_cols.push_back(v.front().first);
        pivot_rows.push_back(std::move(v));
    }
    return finalize_echelon(m.cols(), std::move(pivot_rows), std::move(pivot_cols));
}

inline EchelonForm rref_dense(const RatMatrix& m) {
    std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols(), Rat(0)));
    for (Index r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;

    std::vector<Index> pivot_cols;
    Index lead = 0;
    for (Index r = 0; r < m.rows() && lead < m.cols(); ++lead) {
        Index p = -1;
        for (Index i = r; i < m.rows(); ++i)
            if (sgn(a[i][lead]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Rat inv = Rat(1) / a[r][lead];
        for (Index c = lead; c < m.cols(); ++c) a[r][c] *= inv;
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(a[i][lead]) == 0) continue;
            Rat f = a[i][lead];
            for (Index c = lead; c < m.cols(); ++c) a[i][c] -= f * a[r][c];
        }
        pivot_cols.push_back(lead);
        ++r;
    }

    EchelonForm ef;
    ef.cols = m.cols();
    ef.pivots = pivot_cols;
    ef.rows.reserve(pivot_cols.size());
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) ef.rows.push_back(sv_from_dense(a[i]));
    return ef;
}

}  // namespace detail

inline EchelonForm rref(const RatMatrix& m) {
    if (m.rows() <= kDenseEliminationLimit && m.cols() <= kDenseEliminationLimit)
        return detail::rref_dense(m);
    return detail::rref_sparse(m);
}

// A subspace of Q^ambient_dim held by its unique reduced-echelon basis, so
// equal subspaces compare equal entry for entry.
struct Subspace {
    Index ambient_dim = 0;
    std::vector<SparseVec> basis;  // RREF rows
    std::vector<Index> pivots;

    Index dim() const { return (Index)basis.size(); }

    static Subspace zero(Index ambient) {
        Subspace s;
        s.ambient_dim = ambient;
        return s;
    }

    static Subspace full(Index ambient) {
        Subspace s;
        s.ambient_dim = ambient;
        s.basis.resize(ambient);
        s.pivots.resize(ambient);
        for (Index i = 0; i < ambient; ++i) {
            s.basis[i] = {{i, Rat(1)}};
            s.pivots[i] = i;
        }
        return s;
    }

    static Subspace from_echelon(EchelonForm ef) {
        Subspace s;
        s.ambient_dim = ef.cols;
        s.basis = std::move(ef.rows);
        s.pivots = std::move(ef.pivots);
        return s;
    }

    // Span of arbitrary generators.
    static Subspace span(Index ambient, const std::vector<SparseVec>& gens) {
        RatMatrix m((Index)gens.size(), ambient);
        for (Index i = 0; i < (Index)gens.size(); ++i) m.set_row(i, gens[i]);
        return from_echelon(rref(m));
    }

    // Remainder of v after reduction against the basis; zero iff v lies here.
    SparseVec reduce(SparseVec v) const {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Rat c = sv_get(v, pivots[i]);
            if (sgn(c) != 0) sv_axpy(v, -c, basis[i]);
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    // Coordinates of v in the echelon basis; nullopt if v is outside.
    std::optional<std::vector<Rat>> coordinates(const SparseVec& v) const {
        std::vector<Rat> coeff(basis.size(), Rat(0));
        SparseVec w = v;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Rat c = sv_get(w, pivots[i]);
            if (sgn(c) != 0) {
                sv_axpy(w, -c, basis[i]);
                coeff[i] = std::move(c);
            }
        }
        if (!w.empty()) return std::nullopt;
        return coeff;
    }

    bool operator==(const Subspace& o) const {
        return ambient_dim == o.ambient_dim && basis == o.basis;
    }
};

inline Index rank(const RatMatrix& m) { return rref(m).rank(); }

// Canonical echelon basis of the null space; dim = cols - rank.
inline Subspace kernel(const RatMatrix& m) {
    EchelonForm ef = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (Index p : ef.pivots) is_pivot[p] = true;

    std::vector<SparseVec> gens;
    gens.reserve(m.cols() - ef.rank());
    for (Index c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        SparseVec v;
        for (std::size_t i = 0; i < ef.rows.size(); ++i) {
            Rat e = sv_get(ef.rows[i], c);
            if (sgn(e) != 0) v.emplace_back(ef.pivots[i], -e);
        }
        v.emplace_back(c, Rat(1));
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        gens.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), gens);
}

// Canonical echelon basis of the column space.
inline Subspace image(const RatMatrix& m) {
    return Subspace::from_echelon(rref(m.transpose()));
}

// dim(big) - dim(small) after checking small really sits inside big. The
// containment check is what turns a broken complex into a hard failure
// instead of a silently wrong homology number.
inline Index quotient_dim(const Subspace& big, const Subspace& small) {
    if (big.ambient_dim != small.ambient_dim)
        throw DimensionMismatch("quotient_dim: ambient dimensions differ");
    for (const auto& v : small.basis)
        if (!big.contains(v))
            throw ContainmentViolation("quotient_dim: subspace not contained in the larger one");
    return big.dim() - small.dim();
}

}  // namespace hochwerk
