#pragma once

#include <vector>

#include "stormlet/solver/SolverEnvironment.h"
#include "stormlet/storage/SparseMatrix.h"
#include "stormlet/utility/Parallel.h"

namespace stormlet::solver {

using storage::index_type;

/// y = A x (+ b when offsets is given). Each row accumulates left to right starting from
/// zero, so the result is bit-identical for any thread count.
template<typename ValueType>
void multiply(storage::SparseMatrix<ValueType> const& matrix, std::vector<ValueType> const& x, std::vector<ValueType>& result,
              std::vector<ValueType> const* offset = nullptr, unsigned threads = 1) {
    if (x.size() != matrix.cols() || (offset && offset->size() != matrix.rows())) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimensions disagree");
    }
    result.resize(matrix.rows());
    auto kernel = [&](std::uint64_t begin, std::uint64_t end) {
        for (auto row = begin; row < end; ++row) {
            auto const r = matrix.row(row);
            ValueType sum = utility::zero<ValueType>();
            for (std::size_t k = 0; k < r.size(); ++k) {
                sum += r.values[k] * x[r.columns[k]];
            }
            if (offset) {
                sum += (*offset)[row];
            }
            result[row] = std::move(sum);
        }
    };
    if constexpr (NumberTraits<ValueType>::IsExact) {
        kernel(0, matrix.rows());
    } else {
        utility::parallelForChunks(matrix.rows(), threads, kernel);
    }
}

template<typename ValueType>
std::vector<ValueType> multiply(storage::SparseMatrix<ValueType> const& matrix, std::vector<ValueType> const& x) {
    std::vector<ValueType> result;
    multiply(matrix, x, result);
    return result;
}

/// Per state, the optimum over its choice rows of (b_c +) A_c x. The optimizing choice
/// (lowest index among ties, as a local offset) is written to `choices` when non-null.
template<typename ValueType>
void multiplyAndReduce(storage::SparseMatrix<ValueType> const& matrix, std::vector<index_type> const& choiceOffsets, std::vector<ValueType> const& x,
                       OptimizationDirection direction, std::vector<ValueType>& result, std::vector<ValueType> const* offset = nullptr,
                       std::vector<index_type>* choices = nullptr) {
    if (x.size() != matrix.cols() || choiceOffsets.empty() || choiceOffsets.back() != matrix.rows() || (offset && offset->size() != matrix.rows())) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimensions disagree");
    }
    index_type const states = choiceOffsets.size() - 1;
    result.resize(states);
    if (choices) {
        choices->assign(states, 0);
    }
    for (index_type state = 0; state < states; ++state) {
        bool first = true;
        ValueType best = utility::zero<ValueType>();
        for (auto row = choiceOffsets[state]; row < choiceOffsets[state + 1]; ++row) {
            auto const r = matrix.row(row);
            ValueType sum = utility::zero<ValueType>();
            for (std::size_t k = 0; k < r.size(); ++k) {
                sum += r.values[k] * x[r.columns[k]];
            }
            if (offset) {
                sum += (*offset)[row];
            }
            if (first || improves(direction, sum, best)) {
                best = std::move(sum);
                first = false;
                if (choices) {
                    (*choices)[state] = row - choiceOffsets[state];
                }
            }
        }
        result[state] = std::move(best);
    }
}

template<typename ValueType>
std::vector<ValueType> multiplyAndReduce(storage::SparseMatrix<ValueType> const& matrix, std::vector<index_type> const& choiceOffsets,
                                         std::vector<ValueType> const& x, OptimizationDirection direction) {
    std::vector<ValueType> result;
    multiplyAndReduce(matrix, choiceOffsets, x, direction, result);
    return result;
}

}  // namespace stormlet::solver
