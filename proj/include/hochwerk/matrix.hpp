#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "hochwerk/error.hpp"
#include "hochwerk/rational.hpp"

namespace hochwerk {

using Index = int;

// One sparse vector: (index, value) pairs, sorted by index, values nonzero.
using SparseVec = std::vector<std::pair<Index, Rat>>;

inline Rat sv_get(const SparseVec& v, Index i) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto& e, Index x) { return e.first < x; });
    if (it != v.end() && it->first == i) return it->second;
    return Rat(0);
}

// dst += c * src, merging sorted supports.
inline void sv_axpy(SparseVec& dst, const Rat& c, const SparseVec& src) {
    if (sgn(c) == 0 || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
            out.push_back(std::move(dst[a++]));
        } else if (a == dst.size() || src[b].first < dst[a].first) {
            out.emplace_back(src[b].first, c * src[b].second);
            ++b;
        } else {
            Rat s = dst[a].second + c * src[b].second;
            if (sgn(s) != 0) out.emplace_back(dst[a].first, std::move(s));
            ++a, ++b;
        }
    }
    dst = std::move(out);
}

inline void sv_scale(SparseVec& v, const Rat& c) {
    if (sgn(c) == 0) {
        v.clear();
        return;
    }
    for (auto& e : v) e.second *= c;
}

inline SparseVec sv_from_dense(const std::vector<Rat>& d) {
    SparseVec v;
    for (Index i = 0; i < (Index)d.size(); ++i)
        if (sgn(d[i]) != 0) v.emplace_back(i, d[i]);
    return v;
}

inline std::vector<Rat> sv_to_dense(const SparseVec& v, Index n) {
    std::vector<Rat> d(n, Rat(0));
    for (const auto& [i, x] : v) d[i] = x;
    return d;
}

// Dense matrix of exact rationals, stored as sparse rows. Entries held are
// always nonzero and indices always in bounds.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static RatMatrix identity(Index n) {
        RatMatrix m(n, n);
        for (Index i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rat(1));
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    const SparseVec& row(Index r) const {
        check_row(r);
        return data_[r];
    }

    void set_row(Index r, SparseVec v) {
        check_row(r);
        if (!v.empty() && (v.front().first < 0 || v.back().first >= cols_))
            throw DimensionMismatch("row entry out of bounds");
        data_[r] = std::move(v);
    }

    // Accumulates: entry (r, c) += v, erasing the slot if it cancels.
    void add(Index r, Index c, const Rat& v) {
        check_row(r);
        check_col(c);
        if (sgn(v) == 0) return;
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, Index x) { return e.first < x; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (sgn(it->second) == 0) row.erase(it);
        } else {
            row.emplace(it, c, v);
        }
    }

    void set(Index r, Index c, const Rat& v) {
        check_row(r);
        check_col(c);
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, Index x) { return e.first < x; });
        if (it != row.end() && it->first == c) {
            if (sgn(v) == 0)
                row.erase(it);
            else
                it->second = v;
        } else if (sgn(v) != 0) {
            row.emplace(it, c, v);
        }
    }

    Rat at(Index r, Index c) const {
        check_row(r);
        check_col(c);
        return sv_get(data_[r], c);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        std::vector<std::size_t> counts(cols_, 0);
        for (const auto& r : data_)
            for (const auto& [c, v] : r) ++counts[c];
        for (Index c = 0; c < cols_; ++c) t.data_[c].reserve(counts[c]);
        for (Index r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
        return t;
    }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        if ((Index)x.size() != cols_) throw DimensionMismatch("apply: size mismatch");
        std::vector<Rat> y(rows_, Rat(0));
        for (Index r = 0; r < rows_; ++r)
            for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
        return y;
    }

    RatMatrix operator+(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix out(rows_, cols_);
        for (Index r = 0; r < rows_; ++r) {
            SparseVec v = data_[r];
            sv_axpy(v, Rat(1), o.data_[r]);
            out.data_[r] = std::move(v);
        }
        return out;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        require_same_shape(o);
        RatMatrix out(rows_, cols_);
        for (Index r = 0; r < rows_; ++r) {
            SparseVec v = data_[r];
            sv_axpy(v, Rat(-1), o.data_[r]);
            out.data_[r] = std::move(v);
        }
        return out;
    }

    RatMatrix scaled(const Rat& c) const {
        RatMatrix out(rows_, cols_);
        if (sgn(c) == 0) return out;
        for (Index r = 0; r < rows_; ++r) {
            out.data_[r] = data_[r];
            sv_scale(out.data_[r], c);
        }
        return out;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    void check_row(Index r) const {
        if (r < 0 || r >= rows_) throw DimensionMismatch("row index out of range");
    }
    void check_col(Index c) const {
        if (c < 0 || c >= cols_) throw DimensionMismatch("column index out of range");
    }
    void require_same_shape(const RatMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("matrix shape mismatch");
    }

    Index rows_ = 0, cols_ = 0;
    std::vector<SparseVec> data_;
};

// Exact product f * g.
inline RatMatrix compose(const RatMatrix& f, const RatMatrix& g) {
    if (f.cols() != g.rows())
        throw DimensionMismatch("compose: " + std::to_string(f.cols()) + " vs " +
                                std::to_string(g.rows()));
    RatMatrix out(f.rows(), g.cols());
    for (Index r = 0; r < f.rows(); ++r) {
        std::map<Index, Rat> acc;
        for (const auto& [k, v] : f.row(r))
            for (const auto& [c, w] : g.row(k)) acc[c] += v * w;
        SparseVec row;
        for (auto& [c, v] : acc)
            if (sgn(v) != 0) row.emplace_back(c, std::move(v));
        out.set_row(r, std::move(row));
    }
    return out;
}

inline RatMatrix operator*(const RatMatrix& f, const RatMatrix& g) { return compose(f, g); }

// Kronecker product, row-major block convention:
// (a (x) b)[ia*b.rows+ib, ja*b.cols+jb] = a[ia,ja] * b[ib,jb].
inline RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index ia = 0; ia < a.rows(); ++ia)
        for (const auto& [ja, va] : a.row(ia))
            for (Index ib = 0; ib < b.rows(); ++ib)
                for (const auto& [jb, vb] : b.row(ib))
                    out.add(ia * b.rows() + ib, ja * b.cols() + jb, va * vb);
    return out;
}

// Sum of coeffs[i] * mats[i]; the linear extension of a basis-indexed action.
inline RatMatrix linear_combination(const std::vector<RatMatrix>& mats,
                                    const std::vector<Rat>& coeffs) {
    if (mats.size() != coeffs.size())
        throw DimensionMismatch("linear_combination: arity mismatch");
    if (mats.empty()) return RatMatrix(0, 0);
    RatMatrix out(mats[0].rows(), mats[0].cols());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        out = out + mats[i].scaled(coeffs[i]);
    }
    return out;
}

}  // namespace hochwerk
