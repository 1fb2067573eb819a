#include "stormlet/prism/Parser.h"

#include <charconv>
#include <map>
#include <set>

#include "stormlet/utility/Exceptions.h"

namespace stormlet::prism {

TokenCursor::TokenCursor(std::vector<Token> tokens) : tokens(std::move(tokens)) {
    if (this->tokens.empty() || this->tokens.back().kind != TokenKind::End) {
        this->tokens.push_back(Token{});
    }
}

Token const& TokenCursor::peek(std::size_t offset) const {
    return tokens[std::min(index + offset, tokens.size() - 1)];
}

bool TokenCursor::accept(TokenKind kind) {
    if (check(kind)) {
        advance();
        return true;
    }
    return false;
}

Token const& TokenCursor::expect(TokenKind kind, std::string_view context) {
    if (!check(kind)) {
        std::string expected = describe(kind);
        if (!context.empty()) {
            expected += " " + std::string(context);
        }
        fail(expected);
    }
    return advance();
}

Token const& TokenCursor::advance() {
    Token const& token = tokens[index];
    if (index + 1 < tokens.size()) {
        ++index;
    }
    return token;
}

bool TokenCursor::checkWord(std::string_view word, std::size_t offset) const {
    return check(TokenKind::Identifier, offset) && peek(offset).text == word;
}

void TokenCursor::fail(std::string const& expected) const {
    Token const& found = peek();
    std::string const shown = found.kind == TokenKind::End ? "end of input" : "'" + found.text + "'";
    throw SourceError(ErrorCode::SyntaxError, "expected " + expected + ", found " + shown, found.line, found.column);
}

namespace {

Expression located(Expression expression, Token const& token) {
    expression.line = token.line;
    expression.column = token.column;
    return expression;
}

Expression parseUnary(TokenCursor& cursor);

Expression parsePrimary(TokenCursor& cursor) {
    Token const& token = cursor.peek();
    switch (token.kind) {
        case TokenKind::IntegerLiteral: {
            cursor.advance();
            std::int64_t value = 0;
            auto [end, error] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
            if (error != std::errc() || end != token.text.data() + token.text.size()) {
                throw SourceError(ErrorCode::SyntaxError, "integer literal " + token.text + " is out of range", token.line, token.column);
            }
            return located(Expression::integer(value), token);
        }
        case TokenKind::DoubleLiteral:
            cursor.advance();
            return located(Expression::number(token.text), token);
        case TokenKind::KwTrue:
            cursor.advance();
            return located(Expression::boolean(true), token);
        case TokenKind::KwFalse:
            cursor.advance();
            return located(Expression::boolean(false), token);
        case TokenKind::LParen: {
            cursor.advance();
            Expression inner = parseExpression(cursor);
            cursor.expect(TokenKind::RParen, "to close '('");
            return inner;
        }
        case TokenKind::Identifier: {
            cursor.advance();
            if (!cursor.check(TokenKind::LParen)) {
                return located(Expression::identifier(token.text), token);
            }
            static std::map<std::string, std::pair<Operator, std::size_t>> const functions{
                {"min", {Operator::Min, 0}},   {"max", {Operator::Max, 0}}, {"floor", {Operator::Floor, 1}},
                {"ceil", {Operator::Ceil, 1}}, {"pow", {Operator::Pow, 2}}, {"mod", {Operator::Mod, 2}}};
            auto const function = functions.find(token.text);
            if (function == functions.end()) {
                throw SourceError(ErrorCode::SyntaxError, "unknown function '" + token.text + "'", token.line, token.column);
            }
            cursor.advance();
            std::vector<Expression> arguments;
            arguments.push_back(parseExpression(cursor));
            while (cursor.accept(TokenKind::Comma)) {
                arguments.push_back(parseExpression(cursor));
            }
            cursor.expect(TokenKind::RParen, "to close the argument list");
            auto const [op, arity] = function->second;
            if ((arity == 0 && arguments.size() < 2) || (arity != 0 && arguments.size() != arity)) {
                throw SourceError(ErrorCode::SyntaxError, "wrong number of arguments for '" + token.text + "'", token.line, token.column);
            }
            return located(Expression::operation(op, std::move(arguments)), token);
        }
        default:
            cursor.fail("expression");
    }
}

Expression parseUnary(TokenCursor& cursor) {
    if (cursor.check(TokenKind::Minus)) {
        Token const& token = cursor.advance();
        return located(Expression::operation(Operator::Negate, {parseUnary(cursor)}), token);
    }
    return parsePrimary(cursor);
}

Expression parseMultiplicative(TokenCursor& cursor) {
    Expression left = parseUnary(cursor);
    while (cursor.check(TokenKind::Times) || cursor.check(TokenKind::Divide)) {
        Token const& token = cursor.advance();
        Operator const op = token.kind == TokenKind::Times ? Operator::Times : Operator::Divide;
        left = located(Expression::operation(op, {std::move(left), parseUnary(cursor)}), token);
    }
    return left;
}

Expression parseAdditive(TokenCursor& cursor) {
    Expression left = parseMultiplicative(cursor);
    while (cursor.check(TokenKind::Plus) || cursor.check(TokenKind::Minus)) {
        Token const& token = cursor.advance();
        Operator const op = token.kind == TokenKind::Plus ? Operator::Plus : Operator::Minus;
        left = located(Expression::operation(op, {std::move(left), parseMultiplicative(cursor)}), token);
    }
    return left;
}

Expression parseNot(TokenCursor& cursor) {
    if (cursor.check(TokenKind::Not)) {
        Token const& token = cursor.advance();
        return located(Expression::operation(Operator::Not, {parseNot(cursor)}), token);
    }
    return parseRelationalExpression(cursor);
}

Expression parseAnd(TokenCursor& cursor) {
    Expression left = parseNot(cursor);
    while (cursor.check(TokenKind::And)) {
        Token const& token = cursor.advance();
        left = located(Expression::operation(Operator::And, {std::move(left), parseNot(cursor)}), token);
    }
    return left;
}

std::string parseName(TokenCursor& cursor, std::string_view context) {
    return cursor.expect(TokenKind::Identifier, context).text;
}

Assignment parseAssignment(TokenCursor& cursor) {
    Token const& open = cursor.expect(TokenKind::LParen, "to start an assignment");
    Assignment assignment;
    assignment.line = open.line;
    assignment.variable = parseName(cursor, "in assignment");
    cursor.expect(TokenKind::Prime, "after the assigned variable");
    cursor.expect(TokenKind::Eq, "in assignment");
    assignment.expression = parseExpression(cursor);
    cursor.expect(TokenKind::RParen, "to close the assignment");
    return assignment;
}

bool startsAssignmentList(TokenCursor const& cursor) {
    if (cursor.check(TokenKind::KwTrue)) {
        return !cursor.check(TokenKind::Colon, 1);
    }
    return cursor.check(TokenKind::LParen) && cursor.check(TokenKind::Identifier, 1) && cursor.check(TokenKind::Prime, 2);
}

Update parseUpdate(TokenCursor& cursor) {
    Update update;
    update.line = cursor.peek().line;
    if (!startsAssignmentList(cursor)) {
        update.weight = parseExpression(cursor);
        cursor.expect(TokenKind::Colon, "after the update weight");
    }
    if (cursor.accept(TokenKind::KwTrue)) {
        return update;
    }
    std::set<std::string> assigned;
    do {
        auto assignment = parseAssignment(cursor);
        if (!assigned.insert(assignment.variable).second) {
            throw SourceError(ErrorCode::DuplicateAssignment, "variable '" + assignment.variable + "' is assigned twice in one update", assignment.line);
        }
        update.assignments.push_back(std::move(assignment));
    } while (cursor.accept(TokenKind::And));
    return update;
}

Command parseCommand(TokenCursor& cursor) {
    Token const& open = cursor.expect(TokenKind::LBracket, "to start a command");
    Command command;
    command.line = open.line;
    command.column = open.column;
    if (cursor.check(TokenKind::Identifier)) {
        command.action = cursor.advance().text;
    }
    cursor.expect(TokenKind::RBracket, "after the action label");
    command.guard = parseExpression(cursor);
    cursor.expect(TokenKind::Arrow, "after the guard");
    command.updates.push_back(parseUpdate(cursor));
    while (cursor.accept(TokenKind::Plus)) {
        command.updates.push_back(parseUpdate(cursor));
    }
    cursor.expect(TokenKind::Semicolon, "to end the command");
    return command;
}

Variable parseVariable(TokenCursor& cursor) {
    Variable variable;
    variable.line = cursor.peek().line;
    variable.name = parseName(cursor, "as variable name");
    cursor.expect(TokenKind::Colon, "after the variable name");
    if (cursor.accept(TokenKind::KwBool)) {
        variable.type = ExpressionType::Bool;
    } else if (cursor.accept(TokenKind::LBracket)) {
        variable.type = ExpressionType::Int;
        variable.lower = parseExpression(cursor);
        cursor.expect(TokenKind::DotDot, "in the variable range");
        variable.upper = parseExpression(cursor);
        cursor.expect(TokenKind::RBracket, "to close the variable range");
    } else {
        cursor.fail("'bool' or '[' in variable declaration");
    }
    if (cursor.accept(TokenKind::KwInit)) {
        variable.initial = parseExpression(cursor);
    }
    cursor.expect(TokenKind::Semicolon, "to end the variable declaration");
    return variable;
}

Module parseModule(TokenCursor& cursor) {
    Token const& keyword = cursor.expect(TokenKind::KwModule);
    Module module;
    module.line = keyword.line;
    module.name = parseName(cursor, "as module name");
    while (cursor.check(TokenKind::Identifier)) {
        module.variables.push_back(parseVariable(cursor));
    }
    while (cursor.check(TokenKind::LBracket)) {
        module.commands.push_back(parseCommand(cursor));
    }
    if (!cursor.check(TokenKind::KwEndModule)) {
        cursor.fail("'[' or 'endmodule'");
    }
    cursor.advance();
    return module;
}

RewardBlock parseRewards(TokenCursor& cursor) {
    Token const& keyword = cursor.expect(TokenKind::KwRewards);
    RewardBlock block;
    block.line = keyword.line;
    block.name = cursor.expect(TokenKind::StringLiteral, "as reward structure name").text;
    while (!cursor.check(TokenKind::KwEndRewards)) {
        if (cursor.check(TokenKind::End)) {
            cursor.fail("'endrewards'");
        }
        RewardItem item;
        item.line = cursor.peek().line;
        if (cursor.accept(TokenKind::LBracket)) {
            item.action = cursor.check(TokenKind::Identifier) ? cursor.advance().text : std::string();
            cursor.expect(TokenKind::RBracket, "after the action label");
        }
        item.guard = parseExpression(cursor);
        cursor.expect(TokenKind::Colon, "after the reward guard");
        item.value = parseExpression(cursor);
        cursor.expect(TokenKind::Semicolon, "to end the reward item");
        block.items.push_back(std::move(item));
    }
    cursor.advance();
    return block;
}

}  // namespace

Expression parseRelationalExpression(TokenCursor& cursor) {
    Expression left = parseAdditive(cursor);
    static std::map<TokenKind, Operator> const relations{{TokenKind::Eq, Operator::Equal},        {TokenKind::Neq, Operator::NotEqual},
                                                         {TokenKind::Less, Operator::Less},       {TokenKind::LessEq, Operator::LessEqual},
                                                         {TokenKind::Greater, Operator::Greater}, {TokenKind::GreaterEq, Operator::GreaterEqual}};
    auto const relation = relations.find(cursor.peek().kind);
    if (relation != relations.end()) {
        Token const& token = cursor.advance();
        left = located(Expression::operation(relation->second, {std::move(left), parseAdditive(cursor)}), token);
    }
    return left;
}

Expression parseExpression(TokenCursor& cursor) {
    Expression left = parseAnd(cursor);
    while (cursor.check(TokenKind::Or)) {
        Token const& token = cursor.advance();
        left = located(Expression::operation(Operator::Or, {std::move(left), parseAnd(cursor)}), token);
    }
    return left;
}

Program parseProgram(std::string_view text) {
    TokenCursor cursor(tokenize(text));
    Program program;
    switch (cursor.peek().kind) {
        case TokenKind::KwDtmc:
            program.modelType = models::ModelKind::Dtmc;
            break;
        case TokenKind::KwCtmc:
            program.modelType = models::ModelKind::Ctmc;
            break;
        case TokenKind::KwMdp:
            program.modelType = models::ModelKind::Mdp;
            break;
        default:
            cursor.fail("model type 'dtmc', 'ctmc' or 'mdp'");
    }
    cursor.advance();
    while (!cursor.check(TokenKind::End)) {
        Token const& token = cursor.peek();
        switch (token.kind) {
            case TokenKind::KwConst: {
                cursor.advance();
                Constant constant;
                constant.line = token.line;
                if (cursor.accept(TokenKind::KwInt)) {
                    constant.type = ExpressionType::Int;
                } else if (cursor.accept(TokenKind::KwDouble)) {
                    constant.type = ExpressionType::Double;
                } else if (cursor.accept(TokenKind::KwBool)) {
                    constant.type = ExpressionType::Bool;
                } else {
                    cursor.fail("constant type 'int', 'double' or 'bool'");
                }
                constant.name = parseName(cursor, "as constant name");
                if (cursor.accept(TokenKind::Eq)) {
                    constant.definition = parseExpression(cursor);
                }
                cursor.expect(TokenKind::Semicolon, "to end the constant declaration");
                program.constants.push_back(std::move(constant));
                break;
            }
            case TokenKind::KwFormula: {
                cursor.advance();
                Formula formula;
                formula.line = token.line;
                formula.name = parseName(cursor, "as formula name");
                cursor.expect(TokenKind::Eq, "after the formula name");
                formula.definition = parseExpression(cursor);
                cursor.expect(TokenKind::Semicolon, "to end the formula");
                program.formulas.push_back(std::move(formula));
                break;
            }
            case TokenKind::KwLabel: {
                cursor.advance();
                Label label;
                label.line = token.line;
                label.name = cursor.expect(TokenKind::StringLiteral, "as label name").text;
                cursor.expect(TokenKind::Eq, "after the label name");
                label.expression = parseExpression(cursor);
                cursor.expect(TokenKind::Semicolon, "to end the label");
                program.labels.push_back(std::move(label));
                break;
            }
            case TokenKind::KwModule:
                program.modules.push_back(parseModule(cursor));
                break;
            case TokenKind::KwRewards:
                program.rewards.push_back(parseRewards(cursor));
                break;
            default:
                cursor.fail("'const', 'formula', 'label', 'module' or 'rewards'");
        }
    }
    return program;
}

}  // namespace stormlet::prism
