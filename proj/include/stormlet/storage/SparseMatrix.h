#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stormlet/utility/BitVector.h"
#include "stormlet/utility/Exceptions.h"
#include "stormlet/utility/Numbers.h"

namespace stormlet::storage {

using index_type = std::uint64_t;
inline constexpr index_type kNoIndex = std::numeric_limits<index_type>::max();

template<typename ValueType>
struct MatrixEntry {
    index_type row;
    index_type column;
    ValueType value;
};

/// Compressed-sparse-row matrix over a single scalar domain.
///
/// Invariants enforced on construction: rowOffsets is nondecreasing and ends at the entry
/// count, columns are strictly increasing inside each row, and no stored value is zero.
template<typename ValueType>
class SparseMatrix {
   public:
    using value_type = ValueType;

    struct Row {
        std::span<index_type const> columns;
        std::span<ValueType const> values;

        std::size_t size() const noexcept {
            return columns.size();
        }
    };

    SparseMatrix() : rowOffsets_(1, 0) {}

    SparseMatrix(index_type rows, index_type cols, std::vector<index_type> rowOffsets, std::vector<index_type> columns, std::vector<ValueType> values)
        : rows_(rows), cols_(cols), rowOffsets_(std::move(rowOffsets)), columns_(std::move(columns)), values_(std::move(values)) {
        validate();
    }

    index_type rows() const noexcept {
        return rows_;
    }
    index_type cols() const noexcept {
        return cols_;
    }
    index_type entryCount() const noexcept {
        return static_cast<index_type>(values_.size());
    }

    std::span<index_type const> rowOffsets() const noexcept {
        return rowOffsets_;
    }
    std::span<index_type const> columnIndices() const noexcept {
        return columns_;
    }
    std::span<ValueType const> values() const noexcept {
        return values_;
    }

    Row row(index_type row) const {
        auto const begin = rowOffsets_[row];
        auto const length = rowOffsets_[row + 1] - begin;
        return Row{std::span<index_type const>(columns_).subspan(begin, length), std::span<ValueType const>(values_).subspan(begin, length)};
    }

    /// Value at (row, column), zero when the entry is structurally absent.
    ValueType at(index_type row, index_type column) const {
        auto const r = this->row(row);
        auto it = std::lower_bound(r.columns.begin(), r.columns.end(), column);
        if (it == r.columns.end() || *it != column) {
            return utility::zero<ValueType>();
        }
        return r.values[static_cast<std::size_t>(it - r.columns.begin())];
    }

    bool operator==(SparseMatrix const& other) const = default;

   private:
    void validate() const {
        if (rowOffsets_.size() != rows_ + 1 || rowOffsets_.front() != 0 || rowOffsets_.back() != values_.size() || columns_.size() != values_.size()) {
            throw Error(ErrorCode::InvalidArgument, "inconsistent CSR arrays");
        }
        for (index_type r = 0; r < rows_; ++r) {
            if (rowOffsets_[r] > rowOffsets_[r + 1]) {
                throw Error(ErrorCode::InvalidArgument, "row offsets must be nondecreasing");
            }
            for (auto k = rowOffsets_[r]; k < rowOffsets_[r + 1]; ++k) {
                if (columns_[k] >= cols_) {
                    throw Error(ErrorCode::IndexOutOfRange, "column index " + std::to_string(columns_[k]) + " out of range");
                }
                if (k > rowOffsets_[r] && columns_[k] <= columns_[k - 1]) {
                    throw Error(ErrorCode::InvalidArgument, "columns must be strictly increasing within row " + std::to_string(r));
                }
                if (utility::isZero(values_[k])) {
                    throw Error(ErrorCode::InvalidArgument, "explicit zero stored in row " + std::to_string(r));
                }
            }
        }
    }

    index_type rows_ = 0;
    index_type cols_ = 0;
    std::vector<index_type> rowOffsets_;
    std::vector<index_type> columns_;
    std::vector<ValueType> values_;
};

/// Builds a CSR matrix from (row, column, value) triples. Duplicates are summed, entries
/// whose (summed) value is zero are dropped. The result does not depend on triple order.
template<typename ValueType>
SparseMatrix<ValueType> buildSparse(std::vector<MatrixEntry<ValueType>> triples, index_type rows, index_type cols) {
    for (auto const& entry : triples) {
        if (entry.row >= rows || entry.column >= cols) {
            throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(entry.row) + ", " + std::to_string(entry.column) + ") outside " +
                                                        std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        }
        if (!utility::isFinite(entry.value)) {
            throw Error(ErrorCode::NonFiniteValue, "non-finite value at (" + std::to_string(entry.row) + ", " + std::to_string(entry.column) + ")");
        }
    }
    // Sorting on the value as well makes the summation order of duplicates canonical.
    std::sort(triples.begin(), triples.end(), [](auto const& a, auto const& b) {
        if (a.row != b.row) {
            return a.row < b.row;
        }
        if (a.column != b.column) {
            return a.column < b.column;
        }
        return a.value < b.value;
    });

    std::vector<index_type> offsets(rows + 1, 0);
    std::vector<index_type> columns;
    std::vector<ValueType> values;
    columns.reserve(triples.size());
    values.reserve(triples.size());

    std::size_t i = 0;
    while (i < triples.size()) {
        auto const row = triples[i].row;
        auto const column = triples[i].column;
        ValueType sum = triples[i].value;
        std::size_t j = i + 1;
        while (j < triples.size() && triples[j].row == row && triples[j].column == column) {
            sum += triples[j].value;
            ++j;
        }
        if (!utility::isZero(sum)) {
            columns.push_back(column);
            values.push_back(std::move(sum));
            ++offsets[row + 1];
        }
        i = j;
    }
    for (index_type r = 0; r < rows; ++r) {
        offsets[r + 1] += offsets[r];
    }
    return SparseMatrix<ValueType>(rows, cols, std::move(offsets), std::move(columns), std::move(values));
}

template<typename ValueType>
std::vector<ValueType> rowSums(SparseMatrix<ValueType> const& matrix) {
    std::vector<ValueType> sums(matrix.rows(), utility::zero<ValueType>());
    for (index_type r = 0; r < matrix.rows(); ++r) {
        for (auto const& value : matrix.row(r).values) {
            sums[r] += value;
        }
    }
    return sums;
}

template<typename ValueType>
SparseMatrix<ValueType> transpose(SparseMatrix<ValueType> const& matrix) {
    std::vector<index_type> offsets(matrix.cols() + 1, 0);
    for (auto column : matrix.columnIndices()) {
        ++offsets[column + 1];
    }
    for (index_type c = 0; c < matrix.cols(); ++c) {
        offsets[c + 1] += offsets[c];
    }
    std::vector<index_type> columns(matrix.entryCount());
    std::vector<ValueType> values(matrix.entryCount());
    std::vector<index_type> next(offsets.begin(), offsets.end() - 1);
    // Rows are visited in ascending order, so every transposed row comes out sorted.
    for (index_type r = 0; r < matrix.rows(); ++r) {
        auto const row = matrix.row(r);
        for (std::size_t k = 0; k < row.size(); ++k) {
            auto const position = next[row.columns[k]]++;
            columns[position] = r;
            values[position] = row.values[k];
        }
    }
    return SparseMatrix<ValueType>(matrix.cols(), matrix.rows(), std::move(offsets), std::move(columns), std::move(values));
}

template<typename ValueType>
struct Submatrix {
    SparseMatrix<ValueType> matrix;
    /// old row -> new row, kNoIndex for dropped rows
    std::vector<index_type> rowMap;
    /// old column -> new column, kNoIndex for dropped columns
    std::vector<index_type> columnMap;
};

/// Order-preserving submatrix; entries in dropped columns are discarded.
template<typename ValueType>
Submatrix<ValueType> restrict(SparseMatrix<ValueType> const& matrix, BitVector const& keepRows, BitVector const& keepColumns) {
    if (keepRows.size() != matrix.rows() || keepColumns.size() != matrix.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "restriction masks do not match matrix dimensions");
    }
    Submatrix<ValueType> result;
    result.rowMap.assign(matrix.rows(), kNoIndex);
    result.columnMap.assign(matrix.cols(), kNoIndex);
    index_type newRows = 0;
    index_type newCols = 0;
    keepRows.forEachSet([&](index_type r) { result.rowMap[r] = newRows++; });
    keepColumns.forEachSet([&](index_type c) { result.columnMap[c] = newCols++; });

    std::vector<index_type> offsets(newRows + 1, 0);
    std::vector<index_type> columns;
    std::vector<ValueType> values;
    keepRows.forEachSet([&](index_type r) {
        auto const row = matrix.row(r);
        index_type kept = 0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            auto const mapped = result.columnMap[row.columns[k]];
            if (mapped != kNoIndex) {
                columns.push_back(mapped);
                values.push_back(row.values[k]);
                ++kept;
            }
        }
        offsets[result.rowMap[r] + 1] = offsets[result.rowMap[r]] + kept;
    });
    result.matrix = SparseMatrix<ValueType>(newRows, newCols, std::move(offsets), std::move(columns), std::move(values));
    return result;
}

template<typename To, typename From>
SparseMatrix<To> convertMatrix(SparseMatrix<From> const& matrix) {
    std::vector<To> values;
    values.reserve(matrix.entryCount());
    for (auto const& value : matrix.values()) {
        values.push_back(utility::convertNumber<To>(value));
    }
    return SparseMatrix<To>(matrix.rows(), matrix.cols(), std::vector<index_type>(matrix.rowOffsets().begin(), matrix.rowOffsets().end()),
                            std::vector<index_type>(matrix.columnIndices().begin(), matrix.columnIndices().end()), std::move(values));
}

template<typename To, typename From>
std::vector<To> convertVector(std::vector<From> const& vector) {
    std::vector<To> result;
    result.reserve(vector.size());
    for (auto const& value : vector) {
        result.push_back(utility::convertNumber<To>(value));
    }
    return result;
}

}  // namespace stormlet::storage
