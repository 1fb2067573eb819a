#pragma once

#include <string_view>

namespace stormlet::models {

enum class TimeDomain { Discrete, Continuous };

enum class ModelKind { Dtmc, Ctmc, Mdp };

/// Maps (time domain, nondeterminism) to a model kind. The continuous nondeterministic
/// cell (Markov automata) is rejected with ErrorCode::Unsupported.
ModelKind classify(TimeDomain time, bool nondeterministic);

inline bool isNondeterministic(ModelKind kind) {
    return kind == ModelKind::Mdp;
}

inline bool isContinuousTime(ModelKind kind) {
    return kind == ModelKind::Ctmc;
}

/// "dtmc", "ctmc" or "mdp".
std::string_view toString(ModelKind kind);

}  // namespace stormlet::models
