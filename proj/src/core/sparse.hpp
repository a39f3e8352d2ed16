#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace cubeph {

template <class Scalar>
struct Entry {
    std::size_t row;
    Scalar value;
};

/// Column-major sparse matrix. Columns are sorted by row and never hold zeros.
template <class Scalar>
class SparseMatrix {
public:
    using Column = std::vector<Entry<Scalar>>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const Column& column(std::size_t j) const { return columns_[j]; }
    Column& column(std::size_t j) { return columns_[j]; }

    /// Sorts, merges duplicates and drops zeros.
    void set_column(std::size_t j, Column entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry<Scalar>& a, const Entry<Scalar>& b) { return a.row < b.row; });
        Column clean;
        for (auto& e : entries) {
            if (e.row >= rows_) throw std::out_of_range("row index outside matrix");
            if (!clean.empty() && clean.back().row == e.row)
                clean.back().value = clean.back().value + e.value;
            else
                clean.push_back(std::move(e));
            if (is_zero(clean.back().value)) clean.pop_back();
        }
        columns_[j] = std::move(clean);
    }

    void append_column(Column entries) {
        columns_.emplace_back();
        set_column(columns_.size() - 1, std::move(entries));
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    std::optional<Scalar> at(std::size_t i, std::size_t j) const {
        for (const auto& e : columns_[j])
            if (e.row == i) return e.value;
        return std::nullopt;
    }

    /// Coordinate text dump, one "row col value" line per stored entry.
    void dump(std::ostream& os) const {
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& e : columns_[j]) os << e.row << ' ' << j << ' ' << e.value << '\n';
    }

    static SparseMatrix identity(std::size_t n) {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, Scalar(1)});
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

/// target += factor * source, both sorted.
template <class Scalar>
void add_scaled(typename SparseMatrix<Scalar>::Column& target,
                const typename SparseMatrix<Scalar>::Column& source, const Scalar& factor) {
    typename SparseMatrix<Scalar>::Column merged;
    merged.reserve(target.size() + source.size());
    auto a = target.begin();
    auto b = source.begin();
    while (a != target.end() || b != source.end()) {
        if (b == source.end() || (a != target.end() && a->row < b->row)) {
            merged.push_back(std::move(*a++));
        } else if (a == target.end() || b->row < a->row) {
            merged.push_back({b->row, factor * b->value});
            ++b;
        } else {
            Scalar v = a->value + factor * b->value;
            if (!is_zero(v)) merged.push_back({a->row, std::move(v)});
            ++a;
            ++b;
        }
    }
    target = std::move(merged);
}

/// Left-to-right column elimination with pivot = lowest nonzero row.
///
/// Columns may be reduced in any order the caller likes, as long as every
/// column whose pivot could collide has been reduced first; the persistence
/// code uses this to process dimensions top-down with clearing.
template <class Scalar>
class ColumnReducer {
public:
    static constexpr std::ptrdiff_t kNone = -1;

    ColumnReducer(SparseMatrix<Scalar>& matrix, bool track_basis_change)
        : m_(matrix), owner_(matrix.rows(), kNone), low_(matrix.cols(), kNone) {
        if (track_basis_change) v_ = SparseMatrix<Scalar>::identity(matrix.cols());
    }

    /// Reduces column j; returns its pivot row or kNone if it became zero.
    std::ptrdiff_t reduce(std::size_t j) {
        auto& col = m_.column(j);
        while (!col.empty()) {
            const std::size_t pivot = col.back().row;
            const std::ptrdiff_t other = owner_[pivot];
            if (other == kNone) {
                owner_[pivot] = static_cast<std::ptrdiff_t>(j);
                low_[j] = static_cast<std::ptrdiff_t>(pivot);
                return low_[j];
            }
            const auto& src = m_.column(static_cast<std::size_t>(other));
            const Scalar factor = -(col.back().value / src.back().value);
            add_scaled<Scalar>(col, src, factor);
            if (v_) add_scaled<Scalar>(v_->column(j), v_->column(static_cast<std::size_t>(other)), factor);
        }
        return kNone;
    }

    void reduce_all() {
        for (std::size_t j = 0; j < m_.cols(); ++j) reduce(j);
    }

    /// Zeroes a column known to reduce to zero (clearing).
    void clear(std::size_t j) { m_.column(j).clear(); }

    std::ptrdiff_t low(std::size_t j) const { return low_[j]; }
    std::ptrdiff_t owner(std::size_t row) const { return owner_[row]; }
    const SparseMatrix<Scalar>& basis_change() const { return *v_; }

    std::size_t rank() const {
        return static_cast<std::size_t>(
            std::count_if(low_.begin(), low_.end(), [](std::ptrdiff_t l) { return l != kNone; }));
    }

private:
    SparseMatrix<Scalar>& m_;
    std::vector<std::ptrdiff_t> owner_;
    std::vector<std::ptrdiff_t> low_;
    std::optional<SparseMatrix<Scalar>> v_;
};

template <class Scalar>
std::size_t rank(SparseMatrix<Scalar> matrix) {
    ColumnReducer<Scalar> reducer(matrix, false);
    reducer.reduce_all();
    return reducer.rank();
}

/// Basis of the null space, as columns over the matrix's column index set.
template <class Scalar>
std::vector<typename SparseMatrix<Scalar>::Column> kernel_basis(SparseMatrix<Scalar> matrix) {
    ColumnReducer<Scalar> reducer(matrix, true);
    reducer.reduce_all();
    std::vector<typename SparseMatrix<Scalar>::Column> basis;
    for (std::size_t j = 0; j < matrix.cols(); ++j)
        if (reducer.low(j) == ColumnReducer<Scalar>::kNone) basis.push_back(reducer.basis_change().column(j));
    return basis;
}

}  // namespace cubeph
