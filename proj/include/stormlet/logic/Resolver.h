#pragma once

#include "stormlet/logic/Formula.h"
#include "stormlet/models/ModelKind.h"
#include "stormlet/models/StateLabeling.h"
#include "stormlet/prism/StateMap.h"
#include "stormlet/prism/TypeChecker.h"

namespace stormlet::logic {

/// What atoms are resolved against. Predicates need the program and state map of a
/// PRISM-built model.
struct ResolutionContext {
    models::ModelKind kind = models::ModelKind::Dtmc;
    models::StateLabeling const* labeling = nullptr;
    prism::CheckedProgram const* program = nullptr;
    prism::StateMap const* states = nullptr;
};

/// Replaces atoms by state sets and folds boolean structure over them. Also checks that
/// operators carry an optimum exactly when the model is nondeterministic.
/// Throws UnknownLabel, PredicateWithoutStateMap, OptimumMissingForMdp,
/// OptimumGivenForDeterministic, or TypeMismatch for a non-boolean predicate.
StateFormulaPtr resolve(StateFormulaPtr const& formula, ResolutionContext const& context);

}  // namespace stormlet::logic
