#pragma once

#include <cstdint>

#include "stormlet/models/Model.h"
#include "stormlet/prism/StateMap.h"
#include "stormlet/prism/TypeChecker.h"

namespace stormlet::prism {

struct ExplorationOptions {
    /// Give states without enabled commands a probability-1 self-loop instead of failing.
    bool fixDeadlocks = false;
    std::uint64_t maxStates = 10'000'000;
};

template<typename ValueType>
struct ExploredModel {
    models::Model<ValueType> model;
    StateMap states;
};

/// Builds the reachable state space breadth-first from the initial valuation. States are numbered
/// in discovery order; choices follow module and command order, a synchronised action being
/// placed at its first command. DTMC states choose uniformly among enabled commands, CTMC rates
/// are summed, and every MDP (combined) command is one choice.
template<typename ValueType>
ExploredModel<ValueType> explore(CheckedProgram const& program, ExplorationOptions const& options = {});

/// Evaluates the program's labels on every state and adds the built-ins `init` (state 0) and
/// `deadlock` (the given states).
models::StateLabeling buildLabeling(CheckedProgram const& program, StateMap const& states, BitVector const& deadlocks);

}  // namespace stormlet::prism
