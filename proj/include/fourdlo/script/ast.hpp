#pragma once

// Syntax tree of a script, its pretty printer, and structural equality
// (positions are ignored).

#include <charconv>
#include <string>
#include <vector>

#include "fourdlo/script/lexer.hpp"

namespace fourdlo::script {

struct Expr {
    enum class Kind { Number, String, Color, Ident, Call };
    Kind kind = Kind::Number;
    double number = 0;
    std::string text;  ///< string body, identifier / callee name, or six hex digits
    std::vector<Expr> args;
    Pos pos;

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.kind == b.kind && a.number == b.number && a.text == b.text && a.args == b.args;
    }
};

struct Stmt {
    std::string key;
    Expr value;
    Pos pos;

    friend bool operator==(const Stmt& a, const Stmt& b) { return a.key == b.key && a.value == b.value; }
};

struct SceneAst {
    std::string name;
    double duration = 0;
    std::vector<Stmt> stmts;
    Pos pos;

    friend bool operator==(const SceneAst& a, const SceneAst& b) {
        return a.name == b.name && a.duration == b.duration && a.stmts == b.stmts;
    }
};

struct ProgramAst {
    std::vector<SceneAst> scenes;
    friend bool operator==(const ProgramAst&, const ProgramAst&) = default;
};

/// Shortest text that reads back as the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string print(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return format_number(e.number);
        case Expr::Kind::String: return quote(e.text);
        case Expr::Kind::Color: return "#" + e.text;
        case Expr::Kind::Ident: return e.text;
        case Expr::Kind::Call: {
            std::string s = e.text + "(";
            for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + print(e.args[i]);
            return s + ")";
        }
    }
    return {};
}

inline std::string print(const ProgramAst& p) {
    std::string s;
    for (const auto& sc : p.scenes) {
        s += "scene " + quote(sc.name) + " duration " + format_number(sc.duration) + "s {\n";
        for (const auto& st : sc.stmts) s += "  " + st.key + " = " + print(st.value) + ";\n";
        s += "}\n";
    }
    return s;
}

}  // namespace fourdlo::script
