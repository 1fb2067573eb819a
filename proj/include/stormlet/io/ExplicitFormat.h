#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stormlet/models/Model.h"

namespace stormlet::io {

using storage::index_type;

/// Text of one reward model: state rewards (.srew) and/or action rewards (.trew).
struct RewardTexts {
    std::optional<std::string> stateRewards;
    std::optional<std::string> actionRewards;

    bool operator==(RewardTexts const& other) const = default;
};

/// The files of one explicit model. Reward models are keyed by name.
struct ExplicitBundle {
    std::string transitions;
    std::string labels;
    std::map<std::string, RewardTexts> rewards;

    bool operator==(ExplicitBundle const& other) const = default;
};

template<typename ValueType>
struct ParsedTransitions {
    models::ModelKind kind = models::ModelKind::Dtmc;
    storage::SparseMatrix<ValueType> matrix;
    std::vector<index_type> choiceOffsets;
    std::optional<std::vector<ValueType>> exitRates;
    /// States without outgoing transitions that received a self-loop.
    BitVector patchedDeadlocks;
    /// Non-fatal diagnostics, e.g. repeated transitions that were added up.
    std::vector<std::string> warnings;
};

struct ExplicitOptions {
    /// Give states without outgoing transitions a probability-1 self-loop instead of failing.
    bool fixDeadlocks = false;
};

/// Parses a transitions file. Rows within 1e-6 of a distribution are renormalised; CTMC rates
/// are split into embedded probabilities and exit rates.
template<typename ValueType>
ParsedTransitions<ValueType> parseTransitions(std::string_view text, ExplicitOptions const& options = {});

models::StateLabeling parseLabels(std::string_view text, index_type states);

template<typename ValueType>
std::vector<ValueType> parseStateRewards(std::string_view text, index_type states);

/// Lines are `state choice reward` for MDPs and `state reward` otherwise.
template<typename ValueType>
std::vector<ValueType> parseActionRewards(std::string_view text, models::ModelKind kind, std::vector<index_type> const& choiceOffsets);

/// Builds a model from a bundle. Initial states are the `init` label, or state 0 without one.
template<typename ValueType>
models::Model<ValueType> loadExplicit(ExplicitBundle const& bundle, ExplicitOptions const& options = {});

/// Canonical text of a model: ascending state, choice and column; floats in shortest round-trip
/// form, rationals as p/q.
template<typename ValueType>
ExplicitBundle writeModel(models::Model<ValueType> const& model);

/// Reads the given files. A reward model is named after the stem of its file.
ExplicitBundle readExplicitFiles(std::filesystem::path const& transitions, std::filesystem::path const& labels,
                                 std::optional<std::filesystem::path> const& stateRewards = std::nullopt,
                                 std::optional<std::filesystem::path> const& actionRewards = std::nullopt);

/// Writes <stem>.tra, <stem>.lab and <reward name>.srew / .trew into `directory`.
void writeExplicitFiles(ExplicitBundle const& bundle, std::filesystem::path const& directory, std::string const& stem = "model");

std::string readFile(std::filesystem::path const& path);

}  // namespace stormlet::io
