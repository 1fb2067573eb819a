#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stormlet/models/ModelKind.h"
#include "stormlet/prism/Expression.h"

namespace stormlet::prism {

struct Constant {
    std::string name;
    ExpressionType type = ExpressionType::Int;
    std::optional<Expression> definition;
    std::size_t line = 0;
};

struct Formula {
    std::string name;
    Expression definition;
    std::size_t line = 0;
};

struct Label {
    std::string name;
    Expression expression;
    std::size_t line = 0;
};

struct Variable {
    std::string name;
    ExpressionType type = ExpressionType::Int;
    /// Bounds of an int variable (unset for bool).
    std::optional<Expression> lower;
    std::optional<Expression> upper;
    std::optional<Expression> initial;
    std::size_t line = 0;
};

struct Assignment {
    std::string variable;
    Expression expression;
    std::size_t line = 0;
};

struct Update {
    /// Probability (DTMC/MDP) or rate (CTMC); absent means 1.
    std::optional<Expression> weight;
    std::vector<Assignment> assignments;
    std::size_t line = 0;
};

struct Command {
    /// Empty for unlabelled commands.
    std::string action;
    Expression guard;
    std::vector<Update> updates;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Module {
    std::string name;
    std::vector<Variable> variables;
    std::vector<Command> commands;
    std::size_t line = 0;
};

struct RewardItem {
    /// Set for transition items `[a] guard : value;` (empty string for `[]`).
    std::optional<std::string> action;
    Expression guard;
    Expression value;
    std::size_t line = 0;
};

struct RewardBlock {
    std::string name;
    std::vector<RewardItem> items;
    std::size_t line = 0;
};

struct Program {
    models::ModelKind modelType = models::ModelKind::Dtmc;
    std::vector<Constant> constants;
    std::vector<Formula> formulas;
    std::vector<Label> labels;
    std::vector<Module> modules;
    std::vector<RewardBlock> rewards;
};

}  // namespace stormlet::prism
