#include "stormlet/logic/PropertyParser.h"

#include <cctype>

#include "stormlet/prism/Parser.h"
#include "stormlet/utility/Exceptions.h"

namespace stormlet::logic {

namespace {

using prism::TokenCursor;
using prism::TokenKind;

class PropertyParser {
   public:
    explicit PropertyParser(TokenCursor& cursor) : cursor(cursor) {}

    StateFormulaPtr property() {
        if (!startsOperator()) {
            cursor.fail("'P', 'Pmin', 'Pmax', 'R', 'Rmin' or 'Rmax'");
        }
        StateFormulaPtr result = operatorFormula();
        if (!cursor.check(TokenKind::End)) {
            cursor.fail("end of property");
        }
        return result;
    }

   private:
    bool startsOperator() const {
        for (char const* word : {"P", "Pmin", "Pmax", "R", "Rmin", "Rmax"}) {
            if (cursor.checkWord(word)) {
                return true;
            }
        }
        return false;
    }

    StateFormulaPtr operatorFormula() {
        std::string const name = cursor.advance().text;
        std::optional<OptimizationDirection> optimum;
        if (name.size() > 1) {
            optimum = name.substr(1) == "min" ? OptimizationDirection::Minimize : OptimizationDirection::Maximize;
        }
        if (name.front() == 'P') {
            ProbabilityOperator op;
            op.optimum = optimum;
            op.bound = boundOrQuery();
            cursor.expect(TokenKind::LBracket, "to open the path formula");
            op.path = path();
            if (cursor.accept(TokenKind::OrOr)) {
                op.condition = path();
            }
            cursor.expect(TokenKind::RBracket, "to close the path formula");
            return StateFormula::probabilityOperator(std::move(op));
        }

        RewardOperator op;
        op.optimum = optimum;
        if (cursor.accept(TokenKind::LBrace)) {
            op.rewardModel = cursor.expect(TokenKind::StringLiteral, "as reward model name").text;
            cursor.expect(TokenKind::RBrace, "after the reward model name");
        }
        if (!op.optimum && (cursor.checkWord("min") || cursor.checkWord("max"))) {
            op.optimum = cursor.advance().text == "min" ? OptimizationDirection::Minimize : OptimizationDirection::Maximize;
        }
        op.bound = boundOrQuery();
        cursor.expect(TokenKind::LBracket, "to open the reward objective");
        if (cursor.checkWord("F")) {
            cursor.advance();
            op.target = RewardOperator::Target::Reachability;
            op.goal = stateFormula();
        } else if (cursor.checkWord("C")) {
            cursor.advance();
            cursor.expect(TokenKind::LessEq, "after 'C'");
            op.target = RewardOperator::Target::Cumulative;
            op.cumulativeBound = number();
        } else {
            cursor.fail("'F' or 'C' in reward objective");
        }
        cursor.expect(TokenKind::RBracket, "to close the reward objective");
        return StateFormula::rewardOperator(std::move(op));
    }

    std::optional<Bound> boundOrQuery() {
        if (cursor.check(TokenKind::Eq) && cursor.check(TokenKind::Question, 1)) {
            cursor.advance();
            cursor.advance();
            return std::nullopt;
        }
        Bound bound;
        switch (cursor.peek().kind) {
            case TokenKind::Less: bound.comparison = ComparisonType::Less; break;
            case TokenKind::LessEq: bound.comparison = ComparisonType::LessEqual; break;
            case TokenKind::Greater: bound.comparison = ComparisonType::Greater; break;
            case TokenKind::GreaterEq: bound.comparison = ComparisonType::GreaterEqual; break;
            default: cursor.fail("'=?' or a comparison ('<', '<=', '>', '>=')");
        }
        cursor.advance();
        bound.threshold = number();
        return bound;
    }

    Number number() {
        if (!cursor.check(TokenKind::IntegerLiteral) && !cursor.check(TokenKind::DoubleLiteral)) {
            cursor.fail("number");
        }
        return Number::parse(cursor.advance().text);
    }

    std::optional<Number> optionalBound() {
        if (cursor.accept(TokenKind::LessEq)) {
            return number();
        }
        return std::nullopt;
    }

    PathFormula path() {
        PathFormula result;
        if (cursor.checkWord("X")) {
            cursor.advance();
            result.kind = PathFormula::Kind::Next;
            result.right = stateFormula();
            return result;
        }
        if (cursor.checkWord("F") || cursor.checkWord("G")) {
            bool const eventually = cursor.advance().text == "F";
            result.kind = eventually ? PathFormula::Kind::Until : PathFormula::Kind::Globally;
            result.bound = optionalBound();
            if (eventually) {
                result.left = StateFormula::boolean(true);
            }
            result.right = stateFormula();
            return result;
        }
        result.left = stateFormula();
        if (!cursor.checkWord("U")) {
            cursor.fail("'U'");
        }
        cursor.advance();
        result.kind = PathFormula::Kind::Until;
        result.bound = optionalBound();
        result.right = stateFormula();
        return result;
    }

    StateFormulaPtr stateFormula() {
        StateFormulaPtr left = conjunction();
        while (cursor.accept(TokenKind::Or)) {
            left = StateFormula::disjunction(std::move(left), conjunction());
        }
        return left;
    }

    StateFormulaPtr conjunction() {
        StateFormulaPtr left = negation();
        while (cursor.accept(TokenKind::And)) {
            left = StateFormula::conjunction(std::move(left), negation());
        }
        return left;
    }

    StateFormulaPtr negation() {
        if (cursor.accept(TokenKind::Not)) {
            return StateFormula::negation(negation());
        }
        return atom();
    }

    StateFormulaPtr atom() {
        if (cursor.check(TokenKind::StringLiteral)) {
            return StateFormula::labelAtom(cursor.advance().text);
        }
        if (cursor.accept(TokenKind::KwTrue)) {
            return StateFormula::boolean(true);
        }
        if (cursor.accept(TokenKind::KwFalse)) {
            return StateFormula::boolean(false);
        }
        if (startsOperator()) {
            return operatorFormula();
        }
        if (cursor.check(TokenKind::LParen)) {
            std::size_t const start = cursor.position();
            cursor.advance();
            try {
                prism::Expression expression = prism::parseExpression(cursor);
                if (cursor.accept(TokenKind::RParen)) {
                    return StateFormula::predicateAtom(std::move(expression));
                }
            } catch (SourceError const&) {
            }
            cursor.reset(start);
            cursor.advance();
            StateFormulaPtr inner = stateFormula();
            cursor.expect(TokenKind::RParen, "to close '('");
            return inner;
        }
        cursor.fail("state formula (label, '(' predicate ')', 'true', 'false', '!' or nested operator)");
    }

    TokenCursor& cursor;
};

}  // namespace

Property parseProperty(std::string_view text) {
    TokenCursor cursor(prism::tokenize(text));
    PropertyParser parser(cursor);
    return Property{std::string(text), parser.property()};
}

std::vector<Property> parsePropertyFile(std::string_view text) {
    std::vector<Property> result;
    std::size_t lineNumber = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineNumber;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (auto const comment = line.find("//"); comment != std::string_view::npos) {
            line = line.substr(0, comment);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        std::string_view trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
            trimmed.remove_prefix(1);
        }
        if (trimmed.empty()) {
            continue;
        }
        try {
            result.push_back(parseProperty(line));
            result.back().text = std::string(trimmed);
        } catch (SourceError const& e) {
            std::string message = e.what();
            if (auto const prefix = message.find(": "); message.rfind("line ", 0) == 0 && prefix != std::string::npos) {
                message = message.substr(prefix + 2);
            }
            throw SourceError(e.code(), message, lineNumber, e.column());
        }
    }
    return result;
}

}  // namespace stormlet::logic
