#pragma once

// Recursive-descent parser and name resolution for the sequencing language.
//
//   program := scene+
//   scene   := "scene" STRING "duration" NUMBER "s" "{" stmt* "}"
//   stmt    := KEY "=" expr ";"        KEY in {group, color, animate, brightness}
//   expr    := call | NUMBER | STRING | HEXCOLOR | IDENT
//   call    := IDENT "(" (expr ("," expr)*)? ")"
//
// Syntax errors stop at the first one; resolution reports every bad name.

#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fourdlo/script/ast.hpp"
#include "fourdlo/script/lexer.hpp"
#include "fourdlo/script/program.hpp"

namespace fourdlo::script {

struct ParseResult {
    std::optional<ProgramAst> ast;
    std::optional<Program> program;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return program.has_value(); }
    std::string message() const {
        std::string s;
        for (const auto& d : diagnostics) s += d.to_string() + "\n";
        return s;
    }
};

namespace detail {

struct SyntaxError {
    Diagnostic diag;
};

class SyntaxParser {
public:
    explicit SyntaxParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<Pos> duration_positions;  ///< one per parsed scene, for the resolver's diagnostics

    ProgramAst program() {
        ProgramAst p;
        if (peek().kind == Tok::Error) fail(peek().pos, peek().text);
        if (peek().kind == Tok::End) fail(peek().pos, "expected at least one scene");
        while (peek().kind != Tok::End) p.scenes.push_back(scene());
        return p;
    }

private:
    const Token& peek() const { return toks_[i_]; }

    const Token& take() {
        const Token& t = toks_[i_];
        if (t.kind != Tok::End) ++i_;
        return t;
    }

    [[noreturn]] void fail(Pos at, std::string msg) { throw SyntaxError{{at, std::move(msg)}}; }

    [[noreturn]] void unexpected(const std::string& wanted) {
        const Token& t = peek();
        if (t.kind == Tok::Error) fail(t.pos, t.text);
        std::string got = describe(t.kind);
        if (t.kind == Tok::Ident) got += " '" + t.text + "'";
        fail(t.pos, "expected " + wanted + ", found " + got);
    }

    const Token& expect(Tok k, const std::string& wanted) {
        if (peek().kind != k) unexpected(wanted);
        return take();
    }

    void keyword(std::string_view word) {
        if (peek().kind != Tok::Ident || peek().text != word) unexpected("'" + std::string(word) + "'");
        take();
    }

    SceneAst scene() {
        SceneAst s;
        s.pos = peek().pos;
        keyword("scene");
        s.name = expect(Tok::String, "scene name string").text;
        keyword("duration");
        const Token& n = expect(Tok::Number, "duration in seconds");
        s.duration = std::strtod(n.text.c_str(), nullptr);
        duration_positions.push_back(n.pos);
        keyword("s");
        expect(Tok::LBrace, "'{'");
        while (peek().kind != Tok::RBrace) {
            if (peek().kind == Tok::End) fail(peek().pos, "expected '}' to close scene \"" + s.name + "\"");
            s.stmts.push_back(stmt());
        }
        take();
        return s;
    }

    Stmt stmt() {
        Stmt st;
        st.pos = peek().pos;
        st.key = expect(Tok::Ident, "statement key").text;
        expect(Tok::Equals, "'='");
        st.value = expr();
        expect(Tok::Semicolon, "';'");
        return st;
    }

    Expr expr() {
        const Token& t = peek();
        Expr e;
        e.pos = t.pos;
        switch (t.kind) {
            case Tok::Number:
                e.kind = Expr::Kind::Number;
                e.number = std::strtod(t.text.c_str(), nullptr);
                take();
                return e;
            case Tok::String:
                e.kind = Expr::Kind::String;
                e.text = t.text;
                take();
                return e;
            case Tok::HexColor:
                e.kind = Expr::Kind::Color;
                e.text = t.text;
                take();
                return e;
            case Tok::Ident:
                e.kind = Expr::Kind::Ident;
                e.text = t.text;
                take();
                break;
            default: unexpected("expression");
        }
        if (peek().kind != Tok::LParen) return e;
        take();
        e.kind = Expr::Kind::Call;
        if (peek().kind != Tok::RParen) {
            e.args.push_back(expr());
            while (peek().kind == Tok::Comma) {
                take();
                e.args.push_back(expr());
            }
        }
        expect(Tok::RParen, "',' or ')'");
        return e;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

class Resolver {
public:
    std::vector<Diagnostic> diags;

    Program program(const ProgramAst& ast, const std::vector<Pos>& duration_pos) {
        Program p;
        for (std::size_t i = 0; i < ast.scenes.size(); ++i) {
            const SceneAst& sa = ast.scenes[i];
            Scene sc;
            sc.name = sa.name;
            sc.duration = sa.duration;
            if (!(sa.duration > 0)) error(i < duration_pos.size() ? duration_pos[i] : sa.pos, "duration must be > 0");
            std::set<std::string> seen;
            for (const auto& st : sa.stmts) {
                if (!seen.insert(st.key).second) {
                    error(st.pos, "duplicate key '" + st.key + "'");
                    continue;
                }
                if (st.key == "group") sc.group = group(st.value);
                else if (st.key == "color") sc.color = color(st.value);
                else if (st.key == "animate") sc.animate = animation(st.value);
                else if (st.key == "brightness") sc.brightness = number(st.value);
                else error(st.pos, "unknown key '" + st.key + "'; expected group, color, animate or brightness");
            }
            p.scenes.push_back(std::move(sc));
        }
        return p;
    }

private:
    void error(Pos at, std::string msg) { diags.push_back({at, std::move(msg)}); }

    bool arity(const Expr& e, std::size_t n) {
        if (e.args.size() == n) return true;
        error(e.pos, e.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
        return false;
    }

    bool is_call(const Expr& e, std::string_view name) { return e.kind == Expr::Kind::Call && e.text == name; }

    std::optional<double> literal(const Expr& e, const std::string& what) {
        if (e.kind == Expr::Kind::Number) return e.number;
        error(e.pos, "expected a number for " + what);
        return std::nullopt;
    }

    std::optional<double> positive(const Expr& e, const std::string& what) {
        auto v = literal(e, what);
        if (v && !(*v > 0)) {
            error(e.pos, what + " must be > 0");
            return std::nullopt;
        }
        return v;
    }

    GroupSelector group(const Expr& e) {
        using K = GroupSelector::Kind;
        if (e.kind == Expr::Kind::Ident) {
            if (e.text == "full24") return {K::Full24, 0};
            if (e.text == "dualpair") return {K::DualPair, 0};
            if (e.text == "directed24") return {K::Directed24, 0};
            if (e.text == "rings") return {K::Rings, 0};
            if (e.text == "trivial") return {K::Trivial, 0};
        }
        if (e.kind == Expr::Kind::Call && (e.text == "tess" || e.text == "sixteen")) {
            const K kind = e.text == "tess" ? K::Tess : K::Sixteen;
            if (!arity(e, 1)) return {};
            const auto v = literal(e.args[0], e.text + " index");
            if (!v) return {};
            if (*v != 0 && *v != 1 && *v != 2) {
                error(e.args[0].pos, e.text + " index must be 0, 1 or 2");
                return {};
            }
            return {kind, static_cast<int>(*v)};
        }
        error(e.pos, "unknown group '" + print(e) + "'");
        return {};
    }

    ColorRule color(const Expr& e) {
        using K = ColorRule::Kind;
        ColorRule c;
        if (e.kind == Expr::Kind::Color) {
            c.solid = *parse_hex(e.text);
            return c;
        }
        if (is_call(e, "solid")) {
            if (!arity(e, 1)) return c;
            if (e.args[0].kind != Expr::Kind::Color) {
                error(e.args[0].pos, "solid expects a hex colour like #FFAA00");
                return c;
            }
            c.solid = *parse_hex(e.args[0].text);
            return c;
        }
        if (is_call(e, "orbit")) {
            if (!arity(e, 1)) return c;
            const Expr& pe = e.args[0];
            if (!is_call(pe, "palette") || pe.args.size() != 1 || pe.args[0].kind != Expr::Kind::String) {
                error(pe.pos, "orbit expects palette(\"name\")");
                return c;
            }
            const Palette* p = find_palette(pe.args[0].text);
            if (!p) {
                error(pe.args[0].pos, "unknown palette '" + pe.args[0].text + "'");
                return c;
            }
            c.kind = K::Orbit;
            c.palette = p;
            return c;
        }
        if (is_call(e, "hueshift")) {
            if (e.args.size() != 1 && e.args.size() != 2) {
                error(e.pos, "hueshift takes (amount) or (color, amount)");
                return c;
            }
            c.kind = K::HueShift;
            if (e.args.size() == 2) {
                c.inner.push_back(color(e.args[0]));
            } else {
                ColorRule base;
                base.kind = K::Orbit;
                base.palette = find_palette("rainbow");
                c.inner.push_back(base);
            }
            c.shift = number(e.args.back());
            return c;
        }
        error(e.pos, "unknown colour rule '" + print(e) + "'");
        return c;
    }

    Animation animation(const Expr& e) {
        using K = Animation::Kind;
        Animation a;
        if (e.kind == Expr::Kind::Ident && e.text == "none") return a;
        if (is_call(e, "sweep")) {
            if (!arity(e, 2)) return a;
            const Expr& target = e.args[0];
            static const std::vector<std::pair<std::string, SweepTarget>> targets = {
                {"cells", SweepTarget::Cells}, {"cubes", SweepTarget::Cubes},
                {"rings", SweepTarget::Rings}, {"edges", SweepTarget::Edges}};
            bool found = false;
            for (const auto& [name, t] : targets)
                if (target.kind == Expr::Kind::Ident && target.text == name) {
                    a.target = t;
                    found = true;
                }
            if (!found) error(target.pos, "sweep target must be cells, cubes, rings or edges");
            const auto step = positive(e.args[1], "sweep step");
            if (!found || !step) return a;
            a.kind = K::Sweep;
            a.step = *step;
            return a;
        }
        if (is_call(e, "slide")) {
            if (!arity(e, 2)) return a;
            const Expr& f = e.args[0];
            if (!is_call(f, "fiber") || f.args.size() != 2 || f.args[0].kind != Expr::Kind::String ||
                f.args[1].kind != Expr::Kind::String) {
                error(f.pos, "slide expects fiber(\"i|j|k\", \"left|right\")");
                return a;
            }
            const std::string& ax = f.args[0].text;
            const std::string& side = f.args[1].text;
            bool ok = true;
            if (ax != "i" && ax != "j" && ax != "k") {
                error(f.args[0].pos, "fiber axis must be \"i\", \"j\" or \"k\"");
                ok = false;
            }
            if (side != "left" && side != "right") {
                error(f.args[1].pos, "fiber side must be \"left\" or \"right\"");
                ok = false;
            }
            const auto speed = literal(e.args[1], "slide speed");
            if (!ok || !speed) return a;
            a.kind = K::Slide;
            a.axis = ax[0] - 'i';
            a.side = side == "left" ? Side::Left : Side::Right;
            a.speed = *speed;
            return a;
        }
        if (is_call(e, "chase")) {
            if (!arity(e, 1)) return a;
            const auto speed = literal(e.args[0], "chase speed");
            if (!speed) return a;
            a.kind = K::Chase;
            a.speed = *speed;
            return a;
        }
        error(e.pos, "unknown animation '" + print(e) + "'");
        return a;
    }

    NumExpr number(const Expr& e) {
        using Op = NumExpr::Op;
        switch (e.kind) {
            case Expr::Kind::Number: return NumExpr::constant(e.number);
            case Expr::Kind::Ident:
                if (e.text == "signal") return NumExpr::signal();
                if (e.text == "time") return {Op::Time, 0, {}};
                error(e.pos, "unknown name '" + e.text + "'; expected signal or time");
                return NumExpr::constant(0);
            case Expr::Kind::Call: break;
            default:
                error(e.pos, "expected a numeric expression");
                return NumExpr::constant(0);
        }
        if (e.text == "osc") {
            if (!arity(e, 1)) return NumExpr::constant(0);
            const auto period = positive(e.args[0], "osc period");
            return period ? NumExpr{Op::Osc, *period, {}} : NumExpr::constant(0);
        }
        static const std::vector<std::pair<std::string, Op>> ops = {
            {"mul", Op::Mul}, {"add", Op::Add}, {"sub", Op::Sub}, {"min", Op::Min}, {"max", Op::Max}};
        for (const auto& [name, op] : ops) {
            if (e.text != name) continue;
            if (op == Op::Sub ? e.args.size() != 2 : e.args.size() < 2) {
                error(e.pos, name + (op == Op::Sub ? " takes 2 arguments" : " takes at least 2 arguments"));
                return NumExpr::constant(0);
            }
            NumExpr n{op, 0, {}};
            for (const auto& a : e.args) n.args.push_back(number(a));
            return n;
        }
        error(e.pos, "unknown function '" + e.text + "'");
        return NumExpr::constant(0);
    }
};

}  // namespace detail

/// Parses and resolves a script. Never throws on bad input; failures come
/// back as positioned diagnostics.
inline ParseResult parse(std::string_view text) {
    ParseResult r;
    detail::SyntaxParser sp(lex(text));
    try {
        r.ast = sp.program();
    } catch (const detail::SyntaxError& e) {
        r.diagnostics.push_back(e.diag);
        return r;
    }
    detail::Resolver res;
    Program p = res.program(*r.ast, sp.duration_positions);
    r.diagnostics = std::move(res.diags);
    if (r.diagnostics.empty()) r.program = std::move(p);
    return r;
}

}  // namespace fourdlo::script
