#pragma once

#include <cstdint>
#include <string_view>

namespace stormlet::solver {

enum class LinearMethod { Jacobi, GaussSeidel, Exact };
enum class MinMaxMethod { ValueIteration, PolicyIteration };
enum class ConvergenceCriterion { Absolute, Relative };
enum class OptimizationDirection { Minimize, Maximize };

/// Components with magnitude below this are compared absolutely under the relative criterion.
inline constexpr double kRelativeCutoff = 1e-30;

struct SolverEnvironment {
    LinearMethod linearMethod = LinearMethod::GaussSeidel;
    MinMaxMethod minMaxMethod = MinMaxMethod::ValueIteration;
    double precision = 1e-6;
    ConvergenceCriterion criterion = ConvergenceCriterion::Relative;
    std::uint64_t maxIterations = 1'000'000;
    /// Worker threads for row-parallel kernels; 0 picks the hardware concurrency.
    unsigned threads = 1;

    /// Throws InvalidArgument when precision <= 0 or maxIterations == 0.
    void validate() const;
};

std::string_view toString(LinearMethod method);
std::string_view toString(MinMaxMethod method);

template<typename ValueType>
bool improves(OptimizationDirection direction, ValueType const& candidate, ValueType const& incumbent) {
    return direction == OptimizationDirection::Maximize ? candidate > incumbent : candidate < incumbent;
}

inline OptimizationDirection invert(OptimizationDirection direction) {
    return direction == OptimizationDirection::Maximize ? OptimizationDirection::Minimize : OptimizationDirection::Maximize;
}

}  // namespace stormlet::solver
