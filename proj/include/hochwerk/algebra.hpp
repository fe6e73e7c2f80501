#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hochwerk/linalg.hpp"

namespace hochwerk {

// A finite-dimensional unital associative algebra over Q, given by structure
// constants: mult[i][j] holds the coordinates of e_i * e_j in the chosen
// basis. The unit is an explicit coordinate vector, not a basis element.
struct Algebra {
    Index dim = 0;
    std::vector<std::vector<SparseVec>> mult;  // mult[i][j] = e_i * e_j
    std::vector<Rat> unit;

    bool operator==(const Algebra& o) const {
        return dim == o.dim && mult == o.mult && unit == o.unit;
    }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline Algebra make_algebra(Index dim) {
    Algebra a;
    a.dim = dim;
    a.mult.assign(dim, std::vector<SparseVec>(dim));
    a.unit.assign(dim, Rat(0));
    return a;
}

// Product of two coordinate vectors.
inline std::vector<Rat> product(const Algebra& a, const std::vector<Rat>& x,
                                const std::vector<Rat>& y) {
    std::vector<Rat> out(a.dim, Rat(0));
    for (Index i = 0; i < a.dim; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (Index j = 0; j < a.dim; ++j) {
            if (sgn(y[j]) == 0) continue;
            Rat f = x[i] * y[j];
            for (const auto& [k, c] : a.mult[i][j]) out[k] += f * c;
        }
    }
    return out;
}

inline std::vector<Rat> basis_vector(Index dim, Index i) {
    std::vector<Rat> v(dim, Rat(0));
    v[i] = 1;
    return v;
}

// Matrix of x |-> e_i * x on column coordinates.
inline RatMatrix left_mult_matrix(const Algebra& a, Index i) {
    RatMatrix m(a.dim, a.dim);
    for (Index j = 0; j < a.dim; ++j)
        for (const auto& [k, c] : a.mult[i][j]) m.add(k, j, c);
    return m;
}

// Matrix of x |-> x * e_j.
inline RatMatrix right_mult_matrix(const Algebra& a, Index j) {
    RatMatrix m(a.dim, a.dim);
    for (Index i = 0; i < a.dim; ++i)
        for (const auto& [k, c] : a.mult[i][j]) m.add(k, i, c);
    return m;
}

// Full associativity and two-sided unit check, exact, all basis triples.
// Throws naming the first failing triple.
inline void validate(const Algebra& a) {
    if (a.dim <= 0) throw ValidationError("algebra must have positive dimension");
    if ((Index)a.mult.size() != a.dim || (Index)a.unit.size() != a.dim)
        throw ValidationError("algebra table sizes inconsistent with dim");
    for (Index i = 0; i < a.dim; ++i) {
        if ((Index)a.mult[i].size() != a.dim)
            throw ValidationError("algebra table sizes inconsistent with dim");
        for (Index j = 0; j < a.dim; ++j)
            for (const auto& [k, c] : a.mult[i][j])
                if (k < 0 || k >= a.dim || sgn(c) == 0)
                    throw ValidationError("structure constants malformed at (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
    }
    for (Index i = 0; i < a.dim; ++i) {
        std::vector<Rat> ei = basis_vector(a.dim, i);
        for (Index j = 0; j < a.dim; ++j) {
            std::vector<Rat> eij = product(a, ei, basis_vector(a.dim, j));
            for (Index k = 0; k < a.dim; ++k) {
                std::vector<Rat> lhs = product(a, eij, basis_vector(a.dim, k));
                std::vector<Rat> rhs =
                    product(a, ei, product(a, basis_vector(a.dim, j), basis_vector(a.dim, k)));
                if (lhs != rhs)
                    throw NotAssociative(i, j, k,
                                         "associativity fails at basis triple (" +
                                             std::to_string(i) + "," + std::to_string(j) + "," +
                                             std::to_string(k) + ")");
            }
        }
    }
    for (Index i = 0; i < a.dim; ++i) {
        std::vector<Rat> ei = basis_vector(a.dim, i);
        if (product(a, a.unit, ei) != ei || product(a, ei, a.unit) != ei)
            throw UnitLawFails(i, "unit law fails at basis element " + std::to_string(i));
    }
}

// Same space, multiplication reversed. Involutive on the table representation.
inline Algebra opposite(const Algebra& a) {
    Algebra o = make_algebra(a.dim);
    o.unit = a.unit;
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) o.mult[i][j] = a.mult[j][i];
    return o;
}

// Adjoins a fresh two-sided unit as the last basis element, even when the
// input already has one. Basis layout: [old | adjoined unit].
inline Algebra unitization(const Algebra& a) {
    Algebra u = make_algebra(a.dim + 1);
    Index one = a.dim;
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) u.mult[i][j] = a.mult[i][j];
    for (Index i = 0; i < a.dim; ++i) {
        u.mult[one][i] = {{i, Rat(1)}};
        u.mult[i][one] = {{i, Rat(1)}};
    }
    u.mult[one][one] = {{one, Rat(1)}};
    u.unit[one] = 1;
    return u;
}

// A (x) B with the second factor multiplied in reverse:
// (a1 (x) b1)(a2 (x) b2) = a1 a2 (x) b2 b1. Basis e_i (x) f_j at i*dim(B)+j.
inline Algebra tensor_op(const Algebra& a, const Algebra& b) {
    Algebra e = make_algebra(a.dim * b.dim);
    auto flat = [&](Index i, Index j) { return i * b.dim + j; };
    for (Index i1 = 0; i1 < a.dim; ++i1)
        for (Index j1 = 0; j1 < b.dim; ++j1)
            for (Index i2 = 0; i2 < a.dim; ++i2)
                for (Index j2 = 0; j2 < b.dim; ++j2) {
                    SparseVec& out = e.mult[flat(i1, j1)][flat(i2, j2)];
                    for (const auto& [k, ca] : a.mult[i1][i2])
                        for (const auto& [l, cb] : b.mult[j2][j1]) {
                            // entries appended in (k,l) lexicographic order
                            out.emplace_back(flat(k, l), ca * cb);
                        }
                    std::sort(out.begin(), out.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                }
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < b.dim; ++j) e.unit[flat(i, j)] = a.unit[i] * b.unit[j];
    return e;
}

inline Algebra direct_sum(const Algebra& a, const Algebra& b) {
    Algebra s = make_algebra(a.dim + b.dim);
    for (Index i = 0; i < a.dim; ++i)
        for (Index j = 0; j < a.dim; ++j) s.mult[i][j] = a.mult[i][j];
    for (Index i = 0; i < b.dim; ++i)
        for (Index j = 0; j < b.dim; ++j) {
            SparseVec v = b.mult[i][j];
            for (auto& [k, c] : v) k += a.dim;
            s.mult[a.dim + i][a.dim + j] = std::move(v);
        }
    for (Index i = 0; i < a.dim; ++i) s.unit[i] = a.unit[i];
    for (Index i = 0; i < b.dim; ++i) s.unit[a.dim + i] = b.unit[i];
    return s;
}

}  // namespace hochwerk
