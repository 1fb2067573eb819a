#include "stormlet/solver/LinearEquationSolver.h"

#include <algorithm>
#include <set>

#include "stormlet/solver/Multiply.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::solver {

void SolverEnvironment::validate() const {
    if (!(precision > 0)) {
        throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    }
    if (maxIterations == 0) {
        throw Error(ErrorCode::InvalidArgument, "the iteration limit must be at least 1");
    }
}

std::string_view toString(LinearMethod method) {
    switch (method) {
        case LinearMethod::Jacobi:
            return "jacobi";
        case LinearMethod::GaussSeidel:
            return "gauss-seidel";
        case LinearMethod::Exact:
            return "exact";
    }
    return "unknown";
}

std::string_view toString(MinMaxMethod method) {
    switch (method) {
        case MinMaxMethod::ValueIteration:
            return "value-iteration";
        case MinMaxMethod::PolicyIteration:
            return "policy-iteration";
    }
    return "unknown";
}

bool hasConverged(std::vector<double> const& previous, std::vector<double> const& current, double precision, ConvergenceCriterion criterion) {
    for (std::size_t i = 0; i < current.size(); ++i) {
        if (!hasConverged(previous[i], current[i], precision, criterion)) {
            return false;
        }
    }
    return true;
}

namespace {

void requireSquare(LinearSystem<double> const& system) {
    if (system.matrix.rows() != system.matrix.cols() || system.offset.size() != system.matrix.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "linear system must be square with one offset per row");
    }
}

}  // namespace

SolveOutcome<double> solveJacobi(LinearSystem<double> const& system, SolverEnvironment const& env) {
    env.validate();
    requireSquare(system);
    std::vector<double> x = system.offset;
    std::vector<double> next;
    ConvergenceTracker tracker(env.precision, env.criterion);
    for (std::uint64_t iteration = 1; iteration <= env.maxIterations; ++iteration) {
        multiply(system.matrix, x, next, &system.offset, env.threads);
        tracker.observe(x, next);
        bool const done = tracker.converged();
        x.swap(next);
        if (done) {
            return {std::move(x), iteration, true, std::nullopt, "jacobi"};
        }
    }
    throw NotConvergedError("Jacobi iteration did not converge within " + std::to_string(env.maxIterations) + " iterations", env.maxIterations, std::move(x));
}

SolveOutcome<double> solveGaussSeidel(LinearSystem<double> const& system, SolverEnvironment const& env) {
    env.validate();
    requireSquare(system);
    auto const& matrix = system.matrix;
    index_type const n = matrix.rows();
    std::vector<double> diagonal(n, 0.0);
    for (index_type i = 0; i < n; ++i) {
        diagonal[i] = matrix.at(i, i);
        if (diagonal[i] >= 1.0) {
            throw Error(ErrorCode::DiagonalOne, "diagonal entry of row " + std::to_string(i) + " is at least 1");
        }
    }
    std::vector<double> x = system.offset;
    ConvergenceTracker tracker(env.precision, env.criterion);
    for (std::uint64_t iteration = 1; iteration <= env.maxIterations; ++iteration) {
        for (index_type i = 0; i < n; ++i) {
            auto const row = matrix.row(i);
            double sum = system.offset[i];
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row.columns[k] != i) {
                    sum += row.values[k] * x[row.columns[k]];
                }
            }
            double const updated = sum / (1.0 - diagonal[i]);
            tracker.observe(x[i], updated);
            x[i] = updated;
        }
        if (tracker.converged()) {
            return {std::move(x), iteration, true, std::nullopt, "gauss-seidel"};
        }
    }
    throw NotConvergedError("Gauss-Seidel iteration did not converge within " + std::to_string(env.maxIterations) + " iterations", env.maxIterations,
                            std::move(x));
}

namespace {

using SparseRow = std::vector<std::pair<index_type, Rational>>;

Rational const* findEntry(SparseRow const& row, index_type column) {
    auto it = std::lower_bound(row.begin(), row.end(), column, [](auto const& entry, index_type c) { return entry.first < c; });
    if (it == row.end() || it->first != column) {
        return nullptr;
    }
    return &it->second;
}

}  // namespace

std::vector<Rational> solveLinearExact(storage::SparseMatrix<Rational> const& matrix, std::vector<Rational> const& offset) {
    if (matrix.rows() != matrix.cols() || offset.size() != matrix.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "linear system must be square with one offset per row");
    }
    index_type const n = matrix.rows();

    // Rows of I - A, kept sparse and sorted by column.
    std::vector<SparseRow> rows(n);
    std::vector<Rational> rhs = offset;
    std::vector<std::set<index_type>> rowsWithColumn(n);
    for (index_type i = 0; i < n; ++i) {
        auto const row = matrix.row(i);
        bool diagonalSeen = false;
        for (std::size_t k = 0; k < row.size(); ++k) {
            index_type const column = row.columns[k];
            if (column == i) {
                diagonalSeen = true;
                Rational value = 1 - row.values[k];
                if (sgn(value) != 0) {
                    rows[i].emplace_back(column, std::move(value));
                }
            } else {
                if (!diagonalSeen && column > i) {
                    rows[i].emplace_back(i, Rational(1));
                    diagonalSeen = true;
                }
                rows[i].emplace_back(column, Rational(-row.values[k]));
            }
        }
        if (!diagonalSeen) {
            rows[i].emplace_back(i, Rational(1));
        }
        for (auto const& [column, value] : rows[i]) {
            rowsWithColumn[column].insert(i);
        }
    }

    std::vector<index_type> pivotRowOf(n, storage::kNoIndex);
    for (index_type column = 0; column < n; ++column) {
        index_type pivot = storage::kNoIndex;
        Rational pivotMagnitude;
        for (auto candidate : rowsWithColumn[column]) {
            Rational magnitude = ::abs(*findEntry(rows[candidate], column));
            if (pivot == storage::kNoIndex || magnitude > pivotMagnitude) {
                pivot = candidate;
                pivotMagnitude = std::move(magnitude);
            }
        }
        if (pivot == storage::kNoIndex) {
            throw Error(ErrorCode::SingularMatrix, "matrix is singular (no pivot for column " + std::to_string(column) + ")");
        }
        pivotRowOf[column] = pivot;
        for (auto const& [c, value] : rows[pivot]) {
            rowsWithColumn[c].erase(pivot);
        }

        Rational const pivotValue = *findEntry(rows[pivot], column);
        std::vector<index_type> const targets(rowsWithColumn[column].begin(), rowsWithColumn[column].end());
        for (auto target : targets) {
            SparseRow& row = rows[target];
            Rational const factor = *findEntry(row, column) / pivotValue;
            SparseRow merged;
            merged.reserve(row.size() + rows[pivot].size());
            auto a = row.begin();
            auto b = rows[pivot].begin();
            while (a != row.end() || b != rows[pivot].end()) {
                if (b == rows[pivot].end() || (a != row.end() && a->first < b->first)) {
                    merged.push_back(std::move(*a));
                    ++a;
                } else if (a == row.end() || b->first < a->first) {
                    merged.emplace_back(b->first, Rational(-factor * b->second));
                    rowsWithColumn[b->first].insert(target);
                    ++b;
                } else {
                    Rational value = a->second - factor * b->second;
                    if (sgn(value) != 0 && a->first != column) {
                        merged.emplace_back(a->first, std::move(value));
                    } else {
                        rowsWithColumn[a->first].erase(target);
                    }
                    ++a;
                    ++b;
                }
            }
            row = std::move(merged);
            rhs[target] -= factor * rhs[pivot];
        }
    }

    std::vector<Rational> x(n);
    for (index_type k = n; k-- > 0;) {
        SparseRow const& row = rows[pivotRowOf[k]];
        Rational sum = rhs[pivotRowOf[k]];
        Rational diagonal;
        for (auto const& [column, value] : row) {
            if (column == k) {
                diagonal = value;
            } else if (column > k) {
                sum -= value * x[column];
            }
        }
        x[k] = sum / diagonal;
    }
    return x;
}

SolveOutcome<double> solveLinear(LinearSystem<double> const& system, SolverEnvironment const& env) {
    switch (env.linearMethod) {
        case LinearMethod::Jacobi:
            return solveJacobi(system, env);
        case LinearMethod::GaussSeidel:
            return solveGaussSeidel(system, env);
        case LinearMethod::Exact: {
            requireSquare(system);
            auto exact = solveLinearExact(storage::convertMatrix<Rational>(system.matrix), storage::convertVector<Rational>(system.offset));
            return {storage::convertVector<double>(exact), 1, true, std::nullopt, "exact"};
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown linear method");
}

SolveOutcome<Rational> solveLinear(LinearSystem<Rational> const& system, SolverEnvironment const&) {
    return {solveLinearExact(system.matrix, system.offset), 1, true, std::nullopt, "exact"};
}

}  // namespace stormlet::solver
