#include "stormlet/graph/Precomputation.h"

namespace stormlet::graph {

void TransitionGraph::buildPredecessors() {
    index_type const states = numberOfStates();
    std::vector<std::vector<index_type>> lists(states);
    for (index_type state = 0; state < states; ++state) {
        for (auto choice = offsets[state]; choice < offsets[state + 1]; ++choice) {
            for (auto successor : successors(choice)) {
                if (lists[successor].empty() || lists[successor].back() != state) {
                    lists[successor].push_back(state);
                }
            }
        }
    }
    predecessorOffsets.assign(states + 1, 0);
    for (index_type state = 0; state < states; ++state) {
        predecessorOffsets[state + 1] = predecessorOffsets[state] + lists[state].size();
    }
    predecessorList.reserve(predecessorOffsets.back());
    for (auto const& list : lists) {
        predecessorList.insert(predecessorList.end(), list.begin(), list.end());
    }
}

namespace {

void requireSize(TransitionGraph const& graph, BitVector const& vector) {
    if (vector.size() != graph.numberOfStates()) {
        throw Error(ErrorCode::DimensionMismatch, "state set has " + std::to_string(vector.size()) + " bits for " + std::to_string(graph.numberOfStates()) + " states");
    }
}

/// Backward closure of `seed`: a predecessor joins when it lies in `through` and `accept` holds.
template<typename Accept>
BitVector backwardClosure(TransitionGraph const& graph, BitVector seed, BitVector const& through, Accept&& accept) {
    std::vector<index_type> stack = seed.setIndices();
    while (!stack.empty()) {
        index_type const current = stack.back();
        stack.pop_back();
        for (auto predecessor : graph.predecessors(current)) {
            if (!seed.get(predecessor) && through.get(predecessor) && accept(predecessor, seed)) {
                seed.set(predecessor);
                stack.push_back(predecessor);
            }
        }
    }
    return seed;
}

}  // namespace

BitVector probGreater0E(TransitionGraph const& graph, BitVector const& safe, BitVector const& target) {
    requireSize(graph, safe);
    requireSize(graph, target);
    return backwardClosure(graph, target, safe, [](index_type, BitVector const&) { return true; });
}

BitVector prob0(TransitionGraph const& graph, BitVector const& safe, BitVector const& target) {
    return ~probGreater0E(graph, safe, target);
}

BitVector prob1(TransitionGraph const& graph, BitVector const& safe, BitVector const& target, BitVector const& prob0States) {
    requireSize(graph, safe);
    requireSize(graph, prob0States);
    // A state misses target with positive probability iff it can reach a prob0 state
    // without passing through target first.
    BitVector const notTarget = ~target;
    BitVector canFail = backwardClosure(graph, prob0States, notTarget, [](index_type, BitVector const&) { return true; });
    return ~canFail;
}

Prob01 prob01Max(TransitionGraph const& graph, BitVector const& safe, BitVector const& target) {
    requireSize(graph, safe);
    requireSize(graph, target);
    Prob01 result;
    result.prob0 = ~probGreater0E(graph, safe, target);

    // prob1E: greatest fixed point over `current`, least fixed point over `next`.
    BitVector current(graph.numberOfStates(), true);
    while (true) {
        BitVector next = backwardClosure(graph, target, safe, [&](index_type state, BitVector const& reached) {
            for (auto choice = graph.firstChoice(state); choice < graph.endChoice(state); ++choice) {
                bool allInCurrent = true;
                bool someInNext = false;
                for (auto successor : graph.successors(choice)) {
                    if (!current.get(successor)) {
                        allInCurrent = false;
                        break;
                    }
                    someInNext = someInNext || reached.get(successor);
                }
                if (allInCurrent && someInNext) {
                    return true;
                }
            }
            return false;
        });
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    result.prob1 = std::move(current);
    return result;
}

Prob01 prob01Min(TransitionGraph const& graph, BitVector const& safe, BitVector const& target) {
    requireSize(graph, safe);
    requireSize(graph, target);
    Prob01 result;
    // probGreater0A: every choice must lead into the set with positive probability.
    BitVector const greater0A = backwardClosure(graph, target, safe, [&](index_type state, BitVector const& reached) {
        for (auto choice = graph.firstChoice(state); choice < graph.endChoice(state); ++choice) {
            bool hit = false;
            for (auto successor : graph.successors(choice)) {
                if (reached.get(successor)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                return false;
            }
        }
        return true;
    });
    result.prob0 = ~greater0A;
    // Some scheduler misses target with positive probability iff a prob0E state is reachable
    // without passing through target.
    BitVector const notTarget = ~target;
    result.prob1 = ~backwardClosure(graph, result.prob0, notTarget, [](index_type, BitVector const&) { return true; });
    return result;
}

std::vector<index_type> attractorChoices(TransitionGraph const& graph, BitVector const& goal, BitVector const& region,
                                         std::optional<BitVector> const& allowedChoices) {
    requireSize(graph, goal);
    requireSize(graph, region);
    std::vector<index_type> choices(graph.numberOfStates(), storage::kNoIndex);
    BitVector attracted = goal;
    std::vector<index_type> queue = goal.setIndices();
    for (std::size_t head = 0; head < queue.size(); ++head) {
        index_type const current = queue[head];
        for (auto predecessor : graph.predecessors(current)) {
            if (attracted.get(predecessor) || !region.get(predecessor)) {
                continue;
            }
            for (auto choice = graph.firstChoice(predecessor); choice < graph.endChoice(predecessor); ++choice) {
                if (allowedChoices && !allowedChoices->get(choice)) {
                    continue;
                }
                bool leadsIn = false;
                for (auto successor : graph.successors(choice)) {
                    if (attracted.get(successor)) {
                        leadsIn = true;
                        break;
                    }
                }
                if (leadsIn) {
                    choices[predecessor] = choice;
                    attracted.set(predecessor);
                    queue.push_back(predecessor);
                    break;
                }
            }
        }
    }
    return choices;
}

BitVector choicesStayingIn(TransitionGraph const& graph, BitVector const& states) {
    requireSize(graph, states);
    BitVector result(graph.choiceOffsets().back());
    for (index_type choice = 0; choice < graph.choiceOffsets().back(); ++choice) {
        bool stays = true;
        for (auto successor : graph.successors(choice)) {
            if (!states.get(successor)) {
                stays = false;
                break;
            }
        }
        result.set(choice, stays);
    }
    return result;
}

}  // namespace stormlet::graph
