#pragma once

// Independent reference implementations used only by tests. Nothing here calls into the
// library's precomputation or solver code; everything is dense and brute force.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "stormlet/utility/Numbers.h"

namespace stormlet::test {

using DenseRational = std::vector<std::vector<Rational>>;

/// A dense stochastic model: probabilities[choice][successor], choicesOf[state] = choice rows.
struct DenseModel {
    std::size_t states = 0;
    std::vector<std::vector<Rational>> probabilities;
    std::vector<std::vector<std::size_t>> choicesOf;
    std::vector<Rational> stateReward;
    std::vector<Rational> choiceReward;

    std::size_t choices() const {
        return probabilities.size();
    }
};

/// Solves M x = b by Gauss-Jordan elimination (first nonzero pivot). Returns nullopt if singular.
inline std::optional<std::vector<Rational>> gaussJordan(DenseRational matrix, std::vector<Rational> rhs) {
    std::size_t const n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r) {
            if (sgn(matrix[r][col]) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(matrix[pivot], matrix[col]);
        std::swap(rhs[pivot], rhs[col]);
        Rational const inverse = 1 / matrix[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            matrix[col][c] *= inverse;
        }
        rhs[col] *= inverse;
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && sgn(matrix[r][col]) != 0) {
                Rational const factor = matrix[r][col];
                for (std::size_t c = 0; c < n; ++c) {
                    matrix[r][c] -= factor * matrix[col][c];
                }
                rhs[r] -= factor * rhs[col];
            }
        }
    }
    return rhs;
}

/// States that can reach `target` along edges of the given successor relation while
/// staying inside `safe` (target states always count).
inline std::vector<bool> bfsCanReach(std::vector<std::vector<std::size_t>> const& successors, std::vector<bool> const& safe, std::vector<bool> const& target) {
    std::size_t const n = successors.size();
    std::vector<bool> reach = target;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (reach[s] || !safe[s]) {
                continue;
            }
            for (auto t : successors[s]) {
                if (reach[t]) {
                    reach[s] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    return reach;
}

/// Dense DTMC reachability P(safe U target), exactly.
inline std::vector<Rational> dtmcUntil(DenseRational const& p, std::vector<bool> const& safe, std::vector<bool> const& target) {
    std::size_t const n = p.size();
    std::vector<std::vector<std::size_t>> successors(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (sgn(p[s][t]) != 0) {
                successors[s].push_back(t);
            }
        }
    }
    auto const reach = bfsCanReach(successors, safe, target);
    // Unknowns: every state; equations x_s = 1 (target), 0 (cannot reach), else sum p x.
    DenseRational m(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> rhs(n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
        m[s][s] = 1;
        if (target[s]) {
            rhs[s] = 1;
        } else if (reach[s]) {
            for (std::size_t t = 0; t < n; ++t) {
                m[s][t] -= p[s][t];
            }
        }
    }
    return *gaussJordan(std::move(m), std::move(rhs));
}

/// Dense DTMC expected reward until reaching `target` (state + per-state action reward);
/// nullopt entries are infinite.
inline std::vector<std::optional<Rational>> dtmcReachReward(DenseRational const& p, std::vector<Rational> const& reward, std::vector<bool> const& target) {
    std::size_t const n = p.size();
    std::vector<bool> all(n, true);
    auto const probability = dtmcUntil(p, all, target);
    std::vector<bool> finite(n);
    for (std::size_t s = 0; s < n; ++s) {
        finite[s] = probability[s] == 1;
    }
    DenseRational m(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> rhs(n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
        m[s][s] = 1;
        if (!target[s] && finite[s]) {
            rhs[s] = reward[s];
            for (std::size_t t = 0; t < n; ++t) {
                m[s][t] -= p[s][t];
            }
        }
    }
    auto const x = *gaussJordan(std::move(m), std::move(rhs));
    std::vector<std::optional<Rational>> result(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (finite[s]) {
            result[s] = x[s];
        }
    }
    return result;
}

/// Calls `visit(scheduler)` for every memoryless deterministic scheduler (choice offset per state).
inline void forEachScheduler(DenseModel const& model, std::function<void(std::vector<std::size_t> const&)> const& visit) {
    std::vector<std::size_t> scheduler(model.states, 0);
    while (true) {
        visit(scheduler);
        std::size_t s = 0;
        while (s < model.states) {
            if (++scheduler[s] < model.choicesOf[s].size()) {
                break;
            }
            scheduler[s] = 0;
            ++s;
        }
        if (s == model.states) {
            return;
        }
    }
}

inline DenseRational inducedChain(DenseModel const& model, std::vector<std::size_t> const& scheduler) {
    DenseRational p(model.states);
    for (std::size_t s = 0; s < model.states; ++s) {
        p[s] = model.probabilities[model.choicesOf[s][scheduler[s]]];
    }
    return p;
}

struct OptimalValues {
    std::vector<Rational> min;
    std::vector<Rational> max;
};

/// Min/max of P(safe U target) over all memoryless deterministic schedulers.
inline OptimalValues mdpUntilByEnumeration(DenseModel const& model, std::vector<bool> const& safe, std::vector<bool> const& target) {
    OptimalValues result;
    bool first = true;
    forEachScheduler(model, [&](std::vector<std::size_t> const& scheduler) {
        auto const values = dtmcUntil(inducedChain(model, scheduler), safe, target);
        if (first) {
            result.min = values;
            result.max = values;
            first = false;
            return;
        }
        for (std::size_t s = 0; s < model.states; ++s) {
            if (values[s] < result.min[s]) {
                result.min[s] = values[s];
            }
            if (values[s] > result.max[s]) {
                result.max[s] = values[s];
            }
        }
    });
    return result;
}

struct OptimalRewards {
    std::vector<std::optional<Rational>> min;
    std::vector<std::optional<Rational>> max;
};

/// Min/max expected total reward until target; infinite (nullopt) when target is missed with
/// positive probability.
inline OptimalRewards mdpRewardByEnumeration(DenseModel const& model, std::vector<bool> const& target) {
    OptimalRewards result;
    result.min.assign(model.states, std::nullopt);
    result.max.assign(model.states, Rational(0));
    std::vector<bool> maxInfinite(model.states, false);
    std::vector<bool> minSeen(model.states, false);
    forEachScheduler(model, [&](std::vector<std::size_t> const& scheduler) {
        std::vector<Rational> reward(model.states);
        for (std::size_t s = 0; s < model.states; ++s) {
            auto const choice = model.choicesOf[s][scheduler[s]];
            reward[s] = model.stateReward[s] + model.choiceReward[choice];
        }
        auto const values = dtmcReachReward(inducedChain(model, scheduler), reward, target);
        for (std::size_t s = 0; s < model.states; ++s) {
            if (!values[s]) {
                maxInfinite[s] = true;
            } else {
                if (!minSeen[s] || *values[s] < *result.min[s]) {
                    result.min[s] = *values[s];
                    minSeen[s] = true;
                }
                if (*values[s] > *result.max[s]) {
                    result.max[s] = *values[s];
                }
            }
        }
    });
    for (std::size_t s = 0; s < model.states; ++s) {
        if (maxInfinite[s]) {
            result.max[s] = std::nullopt;
        }
    }
    return result;
}

/// Bounded until by enumerating every path of length <= k (double arithmetic, fixed order).
inline double boundedUntilByPaths(std::vector<std::vector<double>> const& p, std::vector<bool> const& left, std::vector<bool> const& right, std::size_t state,
                                  std::size_t k) {
    if (right[state]) {
        return 1.0;
    }
    if (!left[state] || k == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
        if (p[state][t] != 0.0) {
            sum += p[state][t] * boundedUntilByPaths(p, left, right, t, k - 1);
        }
    }
    return sum;
}

/// Expected reward collected over the first k steps (reward of the current state per step).
inline double cumulativeRewardByPaths(std::vector<std::vector<double>> const& p, std::vector<double> const& reward, std::size_t state, std::size_t k) {
    if (k == 0) {
        return 0.0;
    }
    double sum = reward[state];
    for (std::size_t t = 0; t < p.size(); ++t) {
        if (p[state][t] != 0.0) {
            sum += p[state][t] * cumulativeRewardByPaths(p, reward, t, k - 1);
        }
    }
    return sum;
}

/// Poisson pmf evaluated in log space with long double.
inline long double poissonPmf(double lambda, std::uint64_t k) {
    long double const l = lambda;
    return std::exp(-l + static_cast<long double>(k) * std::log(l) - std::lgamma(static_cast<long double>(k) + 1.0L));
}

/// Random distribution over `support` with small-denominator rational weights.
inline std::vector<Rational> randomDistribution(std::mt19937_64& rng, std::size_t size, std::size_t supportSize) {
    std::vector<std::size_t> indices(size);
    for (std::size_t i = 0; i < size; ++i) {
        indices[i] = i;
    }
    std::shuffle(indices.begin(), indices.end(), rng);
    std::uniform_int_distribution<int> weight(1, 9);
    std::vector<Rational> result(size, Rational(0));
    long total = 0;
    std::vector<long> weights(supportSize);
    for (std::size_t i = 0; i < supportSize; ++i) {
        weights[i] = weight(rng);
        total += weights[i];
    }
    for (std::size_t i = 0; i < supportSize; ++i) {
        result[indices[i]] = Rational(weights[i], total);
        result[indices[i]].canonicalize();
    }
    return result;
}

/// Random dense MDP (or DTMC when maxChoices == 1) with rational probabilities and rewards.
inline DenseModel randomDenseModel(std::mt19937_64& rng, std::size_t states, std::size_t maxChoices, std::size_t maxSupport = 3) {
    DenseModel model;
    model.states = states;
    model.choicesOf.resize(states);
    std::uniform_int_distribution<std::size_t> choiceCount(1, maxChoices);
    std::uniform_int_distribution<std::size_t> supportCount(1, std::min(maxSupport, states));
    std::uniform_int_distribution<int> rewardValue(0, 4);
    for (std::size_t s = 0; s < states; ++s) {
        auto const count = choiceCount(rng);
        for (std::size_t c = 0; c < count; ++c) {
            model.choicesOf[s].push_back(model.probabilities.size());
            model.probabilities.push_back(randomDistribution(rng, states, supportCount(rng)));
            model.choiceReward.push_back(Rational(rewardValue(rng)));
        }
        model.stateReward.push_back(Rational(rewardValue(rng)));
    }
    return model;
}

inline std::vector<bool> randomSubset(std::mt19937_64& rng, std::size_t size, double probability) {
    std::bernoulli_distribution coin(probability);
    std::vector<bool> result(size);
    for (std::size_t i = 0; i < size; ++i) {
        result[i] = coin(rng);
    }
    return result;
}

}  // namespace stormlet::test
