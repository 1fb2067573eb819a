#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stormlet::prism {

enum class TokenKind {
    Identifier,
    IntegerLiteral,
    DoubleLiteral,
    StringLiteral,
    KwDtmc,
    KwCtmc,
    KwMdp,
    KwConst,
    KwInt,
    KwDouble,
    KwBool,
    KwModule,
    KwEndModule,
    KwInit,
    KwRewards,
    KwEndRewards,
    KwLabel,
    KwFormula,
    KwTrue,
    KwFalse,
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semicolon,
    Colon,
    Comma,
    Prime,
    Eq,
    Neq,
    Less,
    LessEq,
    Greater,
    GreaterEq,
    Plus,
    Minus,
    Times,
    Divide,
    And,
    Or,
    OrOr,
    Not,
    Arrow,
    DotDot,
    Question,
    End
};

struct Token {
    TokenKind kind = TokenKind::End;
    /// Source text; string literals without their quotes.
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Splits source text into tokens (ending with an End token). `//` comments and whitespace are
/// skipped. Throws SourceError(UnknownCharacter) on characters outside the language.
std::vector<Token> tokenize(std::string_view text);

/// Human-readable spelling used in diagnostics, e.g. "'endmodule'" or "identifier".
std::string describe(TokenKind kind);

}  // namespace stormlet::prism
