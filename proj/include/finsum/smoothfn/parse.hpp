#pragma once

#include <cstdlib>
#include <string>
#include <string_view>

#include "finsum/error.hpp"
#include "finsum/smoothfn/ast.hpp"

namespace finsum::smoothfn {

/// Grammar (documented in docs/grammar.md):
///   expr   = term { ("+" | "-") term }
///   term   = unary { ("*" | "/") unary }
///   unary  = "-" unary | power
///   power  = atom [ "^" unary ]
///   atom   = number | "x" | "y" | name "(" expr ")" | "(" expr ")"
///   name   = "exp" | "log" | "sin" | "cos" | "sqrt"
/// Precedence: power > unary minus > "*","/" > "+","-". Power is
/// right-associative; there is no implicit multiplication. "y" is accepted
/// only when parsing a bivariate expression.
namespace detail {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokKind kind;
    std::size_t begin;
    std::size_t end;
    double number = 0.0;
    std::string_view text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {TokKind::End, start, start, 0.0, {}};
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {TokKind::Plus, start, pos_, 0.0, {}};
            case '-': ++pos_; return {TokKind::Minus, start, pos_, 0.0, {}};
            case '*': ++pos_; return {TokKind::Star, start, pos_, 0.0, {}};
            case '/': ++pos_; return {TokKind::Slash, start, pos_, 0.0, {}};
            case '^': ++pos_; return {TokKind::Caret, start, pos_, 0.0, {}};
            case '(': ++pos_; return {TokKind::LParen, start, pos_, 0.0, {}};
            case ')': ++pos_; return {TokKind::RParen, start, pos_, 0.0, {}};
            default: break;
        }
        if (c >= '0' && c <= '9') return lex_number(start);
        if (is_alpha(c)) {
            while (pos_ < src_.size() && is_alpha(src_[pos_])) ++pos_;
            return {TokKind::Ident, start, pos_, 0.0, src_.substr(start, pos_ - start)};
        }
        throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
    }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    Token lex_number(std::size_t start) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && is_digit(src_[pos_])) {
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            } else {
                pos_ = mark;  // "2e" with no digits: the 'e' is not part of the number
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        const double v = std::strtod(text.c_str(), nullptr);
        if (!std::isfinite(v)) throw ParseError(start, "number out of range");
        return {TokKind::Number, start, pos_, v, {}};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view src, bool allow_y) : lexer_(src), allow_y_(allow_y) { advance(); }

    Expression run() {
        NodePtr e = parse_expr();
        if (tok_.kind != TokKind::End)
            throw ParseError(tok_.begin, "expected '+', '-', '*', '/', '^' or end of input");
        return Expression{std::move(e)};
    }

private:
    void advance() { tok_ = lexer_.next(); }

    bool accept(TokKind k) {
        if (tok_.kind != k) return false;
        advance();
        return true;
    }

    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (accept(TokKind::Plus)) e = binary(NodeKind::Add, e, parse_term());
            else if (accept(TokKind::Minus)) e = binary(NodeKind::Sub, e, parse_term());
            else return e;
        }
    }

    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (accept(TokKind::Star)) e = binary(NodeKind::Mul, e, parse_unary());
            else if (accept(TokKind::Slash)) e = binary(NodeKind::Div, e, parse_unary());
            else return e;
        }
    }

    NodePtr parse_unary() {
        if (accept(TokKind::Minus)) return unary(NodeKind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept(TokKind::Caret)) return binary(NodeKind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_atom() {
        if (tok_.kind == TokKind::Number) {
            const double v = tok_.number;
            advance();
            return lit(v);
        }
        if (tok_.kind == TokKind::Ident) {
            const Token ident = tok_;
            advance();
            if (ident.text == "x") return var_x();
            if (ident.text == "y") {
                if (!allow_y_)
                    throw ParseError(ident.begin,
                                     "unknown identifier 'y' (only allowed in bivariate expressions)");
                return var_y();
            }
            const NodeKind fn = function_kind(ident);
            if (tok_.kind != TokKind::LParen)
                throw ParseError(tok_.begin, "expected '(' after function name");
            advance();
            NodePtr arg = parse_expr();
            if (!accept(TokKind::RParen)) throw ParseError(tok_.begin, "expected ')'");
            return unary(fn, std::move(arg));
        }
        if (accept(TokKind::LParen)) {
            NodePtr e = parse_expr();
            if (!accept(TokKind::RParen)) throw ParseError(tok_.begin, "expected ')'");
            return e;
        }
        throw ParseError(tok_.begin, "expected number, 'x', '-', '(' or function name");
    }

    static NodeKind function_kind(const Token& ident) {
        if (ident.text == "exp") return NodeKind::Exp;
        if (ident.text == "log") return NodeKind::Log;
        if (ident.text == "sin") return NodeKind::Sin;
        if (ident.text == "cos") return NodeKind::Cos;
        if (ident.text == "sqrt") return NodeKind::Sqrt;
        throw ParseError(ident.begin, "unknown identifier '" + std::string(ident.text) + "'");
    }

    Lexer lexer_;
    bool allow_y_;
    Token tok_{TokKind::End, 0, 0, 0.0, {}};
};

}  // namespace detail

inline Expression parse(std::string_view source) { return detail::Parser(source, false).run(); }

inline Expression parse_bivariate(std::string_view source) {
    return detail::Parser(source, true).run();
}

}  // namespace finsum::smoothfn
