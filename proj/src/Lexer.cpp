#include "stormlet/prism/Lexer.h"

#include <cctype>
#include <cstdio>
#include <unordered_map>

#include "stormlet/utility/Exceptions.h"

namespace stormlet::prism {

namespace {

std::unordered_map<std::string_view, TokenKind> const& keywords() {
    static std::unordered_map<std::string_view, TokenKind> const table{
        {"dtmc", TokenKind::KwDtmc},       {"ctmc", TokenKind::KwCtmc},           {"mdp", TokenKind::KwMdp},
        {"const", TokenKind::KwConst},     {"int", TokenKind::KwInt},             {"double", TokenKind::KwDouble},
        {"bool", TokenKind::KwBool},       {"module", TokenKind::KwModule},       {"endmodule", TokenKind::KwEndModule},
        {"init", TokenKind::KwInit},       {"rewards", TokenKind::KwRewards},     {"endrewards", TokenKind::KwEndRewards},
        {"label", TokenKind::KwLabel},     {"formula", TokenKind::KwFormula},     {"true", TokenKind::KwTrue},
        {"false", TokenKind::KwFalse}};
    return table;
}

bool isIdentifierStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool isIdentifierPart(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool isDigit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t lineStart = 0;
    auto peek = [&](std::size_t offset) { return i + offset < text.size() ? text[i + offset] : '\0'; };
    while (true) {
        while (i < text.size()) {
            char const c = text[i];
            if (c == '\n') {
                ++line;
                lineStart = ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == '/' && peek(1) == '/') {
                while (i < text.size() && text[i] != '\n') {
                    ++i;
                }
            } else {
                break;
            }
        }
        Token token;
        token.line = line;
        token.column = i - lineStart + 1;
        if (i == text.size()) {
            tokens.push_back(std::move(token));
            return tokens;
        }
        std::size_t const start = i;
        char const c = text[i];
        auto single = [&](TokenKind kind, std::size_t length = 1) {
            token.kind = kind;
            i += length;
        };
        if (isIdentifierStart(c)) {
            while (i < text.size() && isIdentifierPart(text[i])) {
                ++i;
            }
            auto const word = text.substr(start, i - start);
            auto const keyword = keywords().find(word);
            token.kind = keyword == keywords().end() ? TokenKind::Identifier : keyword->second;
        } else if (isDigit(c) || (c == '.' && isDigit(peek(1)))) {
            bool isDouble = false;
            while (i < text.size() && isDigit(text[i])) {
                ++i;
            }
            if (peek(0) == '.' && peek(1) != '.') {
                isDouble = true;
                ++i;
                while (i < text.size() && isDigit(text[i])) {
                    ++i;
                }
            }
            if ((peek(0) == 'e' || peek(0) == 'E') && (isDigit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && isDigit(peek(2))))) {
                isDouble = true;
                i += 2;
                while (i < text.size() && isDigit(text[i])) {
                    ++i;
                }
            }
            token.kind = isDouble ? TokenKind::DoubleLiteral : TokenKind::IntegerLiteral;
        } else if (c == '"') {
            ++i;
            while (i < text.size() && text[i] != '"' && text[i] != '\n') {
                ++i;
            }
            if (i == text.size() || text[i] != '"') {
                throw SourceError(ErrorCode::SyntaxError, "unterminated string literal", token.line, token.column);
            }
            token.kind = TokenKind::StringLiteral;
            token.text = std::string(text.substr(start + 1, i - start - 1));
            ++i;
            tokens.push_back(std::move(token));
            continue;
        } else {
            switch (c) {
                case '[': single(TokenKind::LBracket); break;
                case ']': single(TokenKind::RBracket); break;
                case '(': single(TokenKind::LParen); break;
                case ')': single(TokenKind::RParen); break;
                case '{': single(TokenKind::LBrace); break;
                case '}': single(TokenKind::RBrace); break;
                case ';': single(TokenKind::Semicolon); break;
                case ':': single(TokenKind::Colon); break;
                case ',': single(TokenKind::Comma); break;
                case '\'': single(TokenKind::Prime); break;
                case '=': single(TokenKind::Eq); break;
                case '+': single(TokenKind::Plus); break;
                case '*': single(TokenKind::Times); break;
                case '/': single(TokenKind::Divide); break;
                case '&': single(TokenKind::And); break;
                case '?': single(TokenKind::Question); break;
                case '!':
                    peek(1) == '=' ? single(TokenKind::Neq, 2) : single(TokenKind::Not);
                    break;
                case '<':
                    peek(1) == '=' ? single(TokenKind::LessEq, 2) : single(TokenKind::Less);
                    break;
                case '>':
                    peek(1) == '=' ? single(TokenKind::GreaterEq, 2) : single(TokenKind::Greater);
                    break;
                case '-':
                    peek(1) == '>' ? single(TokenKind::Arrow, 2) : single(TokenKind::Minus);
                    break;
                case '|':
                    peek(1) == '|' ? single(TokenKind::OrOr, 2) : single(TokenKind::Or);
                    break;
                case '.':
                    if (peek(1) != '.') {
                        throw SourceError(ErrorCode::UnknownCharacter, "unexpected character '.'", token.line, token.column);
                    }
                    single(TokenKind::DotDot, 2);
                    break;
                default: {
                    std::string shown(1, c);
                    if (!std::isprint(static_cast<unsigned char>(c))) {
                        char buffer[8];
                        std::snprintf(buffer, sizeof(buffer), "\\x%02x", static_cast<unsigned>(static_cast<unsigned char>(c)));
                        shown = buffer;
                    }
                    throw SourceError(ErrorCode::UnknownCharacter, "unexpected character '" + shown + "'", token.line, token.column);
                }
            }
        }
        token.text = std::string(text.substr(start, i - start));
        tokens.push_back(std::move(token));
    }
}

std::string describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::IntegerLiteral: return "integer";
        case TokenKind::DoubleLiteral: return "number";
        case TokenKind::StringLiteral: return "string";
        case TokenKind::KwDtmc: return "'dtmc'";
        case TokenKind::KwCtmc: return "'ctmc'";
        case TokenKind::KwMdp: return "'mdp'";
        case TokenKind::KwConst: return "'const'";
        case TokenKind::KwInt: return "'int'";
        case TokenKind::KwDouble: return "'double'";
        case TokenKind::KwBool: return "'bool'";
        case TokenKind::KwModule: return "'module'";
        case TokenKind::KwEndModule: return "'endmodule'";
        case TokenKind::KwInit: return "'init'";
        case TokenKind::KwRewards: return "'rewards'";
        case TokenKind::KwEndRewards: return "'endrewards'";
        case TokenKind::KwLabel: return "'label'";
        case TokenKind::KwFormula: return "'formula'";
        case TokenKind::KwTrue: return "'true'";
        case TokenKind::KwFalse: return "'false'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Comma: return "','";
        case TokenKind::Prime: return "'''";
        case TokenKind::Eq: return "'='";
        case TokenKind::Neq: return "'!='";
        case TokenKind::Less: return "'<'";
        case TokenKind::LessEq: return "'<='";
        case TokenKind::Greater: return "'>'";
        case TokenKind::GreaterEq: return "'>='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Times: return "'*'";
        case TokenKind::Divide: return "'/'";
        case TokenKind::And: return "'&'";
        case TokenKind::Or: return "'|'";
        case TokenKind::OrOr: return "'||'";
        case TokenKind::Not: return "'!'";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::DotDot: return "'..'";
        case TokenKind::Question: return "'?'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

}  // namespace stormlet::prism
