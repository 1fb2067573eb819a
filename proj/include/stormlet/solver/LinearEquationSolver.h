#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "stormlet/solver/SolverEnvironment.h"
#include "stormlet/storage/SparseMatrix.h"

namespace stormlet::solver {

using storage::index_type;

/// Fixed-point form x = A x + b. For reachability systems A is strictly substochastic.
template<typename ValueType>
struct LinearSystem {
    storage::SparseMatrix<ValueType> matrix;
    std::vector<ValueType> offset;
};

template<typename ValueType>
struct SolveOutcome {
    std::vector<ValueType> x;
    std::uint64_t iterations = 0;
    bool converged = false;
    /// Bellman systems only: chosen choice per state, as an offset into the state's choices.
    std::optional<std::vector<index_type>> scheduler;
    std::string method;
};

/// Whether the step from `previous` to `current` meets the stopping criterion.
/// Under the relative criterion components below kRelativeCutoff are compared absolutely.
inline bool hasConverged(double previous, double current, double precision, ConvergenceCriterion criterion) {
    double const difference = std::fabs(current - previous);
    if (criterion == ConvergenceCriterion::Absolute || std::fabs(current) < kRelativeCutoff) {
        return difference <= precision;
    }
    return difference <= precision * std::fabs(current);
}

bool hasConverged(std::vector<double> const& previous, std::vector<double> const& current, double precision, ConvergenceCriterion criterion);

/// Stopping test for iterative methods. A step must meet the criterion after being scaled by
/// rho / (1 - rho), where rho is the larger of the last two step-size ratios (max norm). This estimates
/// the remaining distance to the fixed point under geometric convergence; it is not a bound.
class ConvergenceTracker {
   public:
    ConvergenceTracker(double precision, ConvergenceCriterion criterion) : precision_(precision), criterion_(criterion) {}

    /// Records the change of one component within the current sweep.
    void observe(double previous, double current) {
        double const difference = std::fabs(current - previous);
        bool const absolute = criterion_ == ConvergenceCriterion::Absolute || std::fabs(current) < kRelativeCutoff;
        double const tolerance = absolute ? precision_ : precision_ * std::fabs(current);
        step_ = std::max(step_, difference);
        ratio_ = std::max(ratio_, difference / tolerance);
    }

    void observe(std::vector<double> const& previous, std::vector<double> const& current) {
        for (std::size_t i = 0; i < current.size(); ++i) {
            observe(previous[i], current[i]);
        }
    }

    /// Ends a sweep; true once the estimated remaining error meets the criterion.
    bool converged() {
        bool done = step_ == 0.0;
        double const contraction = lastStep_ > 0.0 ? step_ / lastStep_ : 1.0;
        if (!done && contraction < 1.0 && lastContraction_ < 1.0) {
            double const rho = std::max(contraction, lastContraction_);
            done = ratio_ * std::max(1.0, rho / (1.0 - rho)) <= 1.0;
        }
        lastContraction_ = contraction;
        lastStep_ = step_;
        step_ = 0.0;
        ratio_ = 0.0;
        return done;
    }

   private:
    double precision_;
    ConvergenceCriterion criterion_;
    double step_ = 0.0;
    double lastStep_ = 0.0;
    double lastContraction_ = 1.0;
    /// Largest step in units of its tolerance.
    double ratio_ = 0.0;
};

/// Synchronous iteration x' = A x + b starting from x = b.
SolveOutcome<double> solveJacobi(LinearSystem<double> const& system, SolverEnvironment const& env);

/// In-place ascending sweep x_i = (b_i + sum_{j != i} a_ij x_j) / (1 - a_ii), starting from x = b.
/// Throws DiagonalOne when some a_ii >= 1.
SolveOutcome<double> solveGaussSeidel(LinearSystem<double> const& system, SolverEnvironment const& env);

/// Exact solution of (I - A) x = b by Gaussian elimination with partial (magnitude) pivoting.
/// Throws SingularMatrix.
std::vector<Rational> solveLinearExact(storage::SparseMatrix<Rational> const& matrix, std::vector<Rational> const& offset);

/// Dispatches on env.linearMethod. Exact on a double system solves the exact rational
/// image of the system and rounds the result.
SolveOutcome<double> solveLinear(LinearSystem<double> const& system, SolverEnvironment const& env);

/// Rational systems are always solved exactly.
SolveOutcome<Rational> solveLinear(LinearSystem<Rational> const& system, SolverEnvironment const& env);

}  // namespace stormlet::solver
