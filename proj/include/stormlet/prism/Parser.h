#pragma once

#include <string_view>
#include <vector>

#include "stormlet/prism/Expression.h"
#include "stormlet/prism/Lexer.h"
#include "stormlet/prism/Program.h"

namespace stormlet::prism {

/// Cursor over a token stream with diagnostics that name the expected tokens.
class TokenCursor {
   public:
    explicit TokenCursor(std::vector<Token> tokens);

    Token const& peek(std::size_t offset = 0) const;
    bool check(TokenKind kind, std::size_t offset = 0) const {
        return peek(offset).kind == kind;
    }
    /// Consumes the next token if it has the given kind.
    bool accept(TokenKind kind);
    Token const& expect(TokenKind kind, std::string_view context = {});
    Token const& advance();
    /// Identifier with the given spelling.
    bool checkWord(std::string_view word, std::size_t offset = 0) const;

    std::size_t position() const noexcept {
        return index;
    }
    void reset(std::size_t position) noexcept {
        index = position;
    }

    [[noreturn]] void fail(std::string const& expected) const;

   private:
    std::vector<Token> tokens;
    std::size_t index = 0;
};

/// Parses an expression (lowest precedence level `|`).
Expression parseExpression(TokenCursor& cursor);

/// Parses a relational-level expression: no top-level `!`, `&` or `|`.
Expression parseRelationalExpression(TokenCursor& cursor);

Program parseProgram(std::string_view text);

}  // namespace stormlet::prism
