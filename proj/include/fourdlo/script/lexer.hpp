#pragma once

// Tokens of the sequencing language. '#' starts a comment except where it
// begins a six-digit hex colour (#RRGGBB not followed by a letter or digit).

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace fourdlo::script {

struct Pos {
    int line = 1;
    int column = 1;
    friend bool operator==(const Pos&, const Pos&) = default;
};

struct Diagnostic {
    Pos pos;
    std::string message;

    std::string to_string() const {
        return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
    }
};

enum class Tok { Ident, Number, String, HexColor, LParen, RParen, LBrace, RBrace, Comma, Semicolon, Equals, End, Error };

struct Token {
    Tok kind = Tok::End;
    std::string text;  ///< identifier, digits, unescaped string body, or the six hex digits
    Pos pos;
};

inline const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::String: return "string";
        case Tok::HexColor: return "hex colour";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Equals: return "'='";
        case Tok::End: return "end of input";
        case Tok::Error: return "invalid token";
    }
    return "?";
}

/// Splits `src` into tokens. Lexical errors become a single Tok::Error token
/// (its text is the message) followed by Tok::End.
inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    Pos pos;
    auto advance = [&] {
        if (src[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
        ++i;
    };
    auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    auto fail = [&](Pos at, std::string msg) {
        out.push_back({Tok::Error, std::move(msg), at});
        out.push_back({Tok::End, "", pos});
        return out;
    };

    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        const Pos start = pos;
        if (c == '#') {
            bool hex = i + 7 <= src.size();
            for (std::size_t k = 1; hex && k <= 6; ++k) hex = std::isxdigit(static_cast<unsigned char>(src[i + k]));
            if (hex && (i + 7 == src.size() || !alnum(src[i + 7]))) {
                out.push_back({Tok::HexColor, std::string(src.substr(i + 1, 6)), start});
                for (int k = 0; k < 7; ++k) advance();
                continue;
            }
            while (i < src.size() && src[i] != '\n') advance();
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (i < src.size() && alnum(src[i])) {
                word += src[i];
                advance();
            }
            out.push_back({Tok::Ident, std::move(word), start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
            (c == '-' && i + 1 < src.size() && (std::isdigit(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '.'))) {
            std::string num;
            if (c == '-') {
                num += c;
                advance();
            }
            bool digits = false, dot = false;
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || (src[i] == '.' && !dot))) {
                if (src[i] == '.') dot = true;
                else digits = true;
                num += src[i];
                advance();
            }
            if (!digits) return fail(start, "malformed number '" + num + "'");
            out.push_back({Tok::Number, std::move(num), start});
            continue;
        }
        if (c == '"') {
            advance();
            std::string body;
            while (true) {
                if (i >= src.size() || src[i] == '\n') return fail(start, "unterminated string");
                if (src[i] == '"') {
                    advance();
                    break;
                }
                if (src[i] == '\\') {
                    advance();
                    if (i >= src.size()) return fail(start, "unterminated string");
                    if (src[i] != '"' && src[i] != '\\') return fail(pos, std::string("unknown escape '\\") + src[i] + "'");
                }
                body += src[i];
                advance();
            }
            out.push_back({Tok::String, std::move(body), start});
            continue;
        }
        Tok single = Tok::Error;
        switch (c) {
            case '(': single = Tok::LParen; break;
            case ')': single = Tok::RParen; break;
            case '{': single = Tok::LBrace; break;
            case '}': single = Tok::RBrace; break;
            case ',': single = Tok::Comma; break;
            case ';': single = Tok::Semicolon; break;
            case '=': single = Tok::Equals; break;
            default: break;
        }
        if (single == Tok::Error) return fail(start, std::string("unexpected character '") + c + "'");
        out.push_back({single, std::string(1, c), start});
        advance();
    }
    out.push_back({Tok::End, "", pos});
    return out;
}

}  // namespace fourdlo::script
