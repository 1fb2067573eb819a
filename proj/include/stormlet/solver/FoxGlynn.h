#pragma once

#include <cstdint>
#include <vector>

namespace stormlet::solver {

/// Truncated, unnormalised Poisson weights: weights[k - left] / totalWeight approximates
/// the Poisson(lambda) pmf at k for k in [left, right].
struct FoxGlynnResult {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    std::vector<double> weights;
    double totalWeight = 0.0;
};

inline constexpr double kMaxFoxGlynnLambda = 1e9;

/// Poisson truncation window whose combined left and right tail mass is at most epsilon.
/// lambda < 25 accumulates the pmf directly; larger rates use the Fox-Glynn finder and
/// weighter. Throws InvalidArgument for lambda <= 0 or epsilon outside (0, 1), and
/// LambdaTooLarge above kMaxFoxGlynnLambda.
FoxGlynnResult foxGlynn(double lambda, double epsilon);

}  // namespace stormlet::solver
