#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stormlet/models/ModelKind.h"
#include "stormlet/prism/Expression.h"
#include "stormlet/prism/Program.h"

namespace stormlet::prism {

/// Values for undefined constants, as text (`N=5` binds "5").
using ConstantBindings = std::map<std::string, std::string>;

/// Parses `name=value,name=value`. Throws UsageError on malformed input.
ConstantBindings parseConstantBindings(std::string_view text);

struct VariableInfo {
    std::string name;
    ExpressionType type = ExpressionType::Int;
    /// Bool variables range over [0, 1].
    std::int64_t lower = 0;
    std::int64_t upper = 1;
    std::int64_t initial = 0;
    std::size_t module = 0;
};

struct CheckedAssignment {
    std::uint32_t slot = 0;
    Expression expression;
};

struct CheckedUpdate {
    Expression weight;
    std::vector<CheckedAssignment> assignments;
    std::size_t line = 0;
};

struct CheckedCommand {
    /// Empty for unlabelled commands.
    std::string action;
    Expression guard;
    std::vector<CheckedUpdate> updates;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct CheckedModule {
    std::string name;
    std::vector<CheckedCommand> commands;
};

struct CheckedLabel {
    std::string name;
    Expression expression;
};

struct CheckedRewardItem {
    std::optional<std::string> action;
    Expression guard;
    Expression value;
};

struct CheckedRewardBlock {
    std::string name;
    std::vector<CheckedRewardItem> items;
};

/// A program whose expressions are typed, with constants and formulas substituted and
/// variables resolved to valuation slots.
struct CheckedProgram {
    models::ModelKind modelType = models::ModelKind::Dtmc;
    std::vector<VariableInfo> variables;
    std::vector<CheckedModule> modules;
    /// Action labels in order of first appearance.
    std::vector<std::string> actions;
    std::vector<CheckedLabel> labels;
    std::vector<CheckedRewardBlock> rewards;
    /// Checked definitions of constants and formulas, by name.
    std::map<std::string, Expression> definitions;

    /// Types an expression written against this program, e.g. a property predicate.
    Expression resolve(Expression const& expression) const;
};

CheckedProgram typecheck(Program const& program, ConstantBindings const& bindings = {});

}  // namespace stormlet::prism
