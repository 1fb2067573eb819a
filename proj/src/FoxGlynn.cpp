#include "stormlet/solver/FoxGlynn.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stormlet/utility/Exceptions.h"

namespace stormlet::solver {

namespace {

/// Below this rate the pmf is accumulated directly from e^-lambda.
constexpr double kDirectLambdaLimit = 25.0;

FoxGlynnResult directWeights(double lambda, double epsilon) {
    FoxGlynnResult result;
    double pmf = std::exp(-lambda);
    result.weights.push_back(pmf);
    std::uint64_t k = 0;
    while (true) {
        double const nextPmf = pmf * lambda / static_cast<double>(k + 1);
        // Beyond the mode the pmf ratio is at most lambda / (k + 2), so the tail past k
        // is bounded by a geometric series.
        if (static_cast<double>(k + 2) > lambda) {
            double const ratio = lambda / static_cast<double>(k + 2);
            if (nextPmf / (1.0 - ratio) <= epsilon) {
                break;
            }
        }
        pmf = nextPmf;
        result.weights.push_back(pmf);
        ++k;
    }
    result.left = 0;
    result.right = k;
    return result;
}

FoxGlynnResult finderAndWeighter(double lambda, double epsilon) {
    double const sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    double const mode = std::floor(lambda);

    // Right truncation point; rates below 400 use the bound for 400.
    double const boundLambda = std::max(lambda, 400.0);
    double const aLambda = (1.0 + 1.0 / boundLambda) * std::exp(1.0 / 16.0) * std::sqrt(2.0);
    double k = 3.0;
    while (true) {
        double const d = 1.0 / (1.0 - std::exp(-(2.0 / 9.0) * (k * std::sqrt(2.0 * boundLambda) + 1.5)));
        if (aLambda * d * std::exp(-k * k / 2.0) / (k * sqrt2pi) <= epsilon / 2.0) {
            break;
        }
        k += 1.0;
    }
    auto const right = static_cast<std::uint64_t>(std::ceil(mode + k * std::sqrt(2.0 * boundLambda) + 1.5));

    // Left truncation point.
    double const bLambda = (1.0 + 1.0 / lambda) * std::exp(1.0 / (8.0 * lambda));
    k = 3.0;
    while (bLambda * std::exp(-k * k / 2.0) / (k * sqrt2pi) > epsilon / 2.0) {
        k += 1.0;
    }
    double const leftPoint = std::floor(mode - k * std::sqrt(lambda) - 1.5);
    auto const left = static_cast<std::uint64_t>(std::max(0.0, leftPoint));

    // Weighter: start at the mode with a large value and recurse outwards.
    FoxGlynnResult result;
    result.left = left;
    result.right = right;
    result.weights.assign(right - left + 1, 0.0);
    auto const m = static_cast<std::uint64_t>(mode);
    result.weights[m - left] = std::numeric_limits<double>::max() / (1e10 * static_cast<double>(right - left));
    for (std::uint64_t j = m; j > left; --j) {
        result.weights[j - 1 - left] = (static_cast<double>(j) / lambda) * result.weights[j - left];
    }
    for (std::uint64_t j = m; j < right; ++j) {
        result.weights[j + 1 - left] = (lambda / static_cast<double>(j + 1)) * result.weights[j - left];
    }
    return result;
}

/// Sums from both ends, always adding the smaller weight first.
double totalWeight(std::vector<double> const& weights) {
    std::size_t low = 0;
    std::size_t high = weights.size() - 1;
    double total = 0.0;
    while (low < high) {
        if (weights[low] <= weights[high]) {
            total += weights[low++];
        } else {
            total += weights[high--];
        }
    }
    return total + weights[low];
}

}  // namespace

FoxGlynnResult foxGlynn(double lambda, double epsilon) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::InvalidArgument, "Poisson rate must be positive and finite");
    }
    if (!(epsilon > 0) || !(epsilon < 1)) {
        throw Error(ErrorCode::InvalidArgument, "truncation error must lie in (0, 1)");
    }
    if (lambda > kMaxFoxGlynnLambda) {
        throw Error(ErrorCode::LambdaTooLarge, "Poisson rate " + std::to_string(lambda) + " exceeds the supported maximum of 1e9");
    }
    FoxGlynnResult result = lambda < kDirectLambdaLimit ? directWeights(lambda, epsilon) : finderAndWeighter(lambda, epsilon);
    result.totalWeight = totalWeight(result.weights);
    return result;
}

}  // namespace stormlet::solver
