#pragma once

#include <cstdio>
#include <string>

#include "finsum/smoothfn/ast.hpp"

namespace finsum::smoothfn {

namespace detail {

inline int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;  // literals, variables, function calls
    }
}

inline std::string format_literal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void print_node(const NodePtr& n, std::string& out);

inline void print_child(const NodePtr& child, int min_prec, std::string& out) {
    if (precedence(child->kind) < min_prec) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

inline void print_node(const NodePtr& n, std::string& out) {
    switch (n->kind) {
        case NodeKind::Literal: out += format_literal(n->value); return;
        case NodeKind::VarX: out += 'x'; return;
        case NodeKind::VarY: out += 'y'; return;
        case NodeKind::Add:
            print_child(n->lhs, 1, out);
            out += " + ";
            print_child(n->rhs, 2, out);
            return;
        case NodeKind::Sub:
            print_child(n->lhs, 1, out);
            out += " - ";
            print_child(n->rhs, 2, out);
            return;
        case NodeKind::Mul:
            print_child(n->lhs, 2, out);
            out += "*";
            print_child(n->rhs, 3, out);
            return;
        case NodeKind::Div:
            print_child(n->lhs, 2, out);
            out += "/";
            print_child(n->rhs, 3, out);
            return;
        case NodeKind::Neg:
            out += '-';
            print_child(n->lhs, 3, out);
            return;
        case NodeKind::Pow:
            print_child(n->lhs, 5, out);
            out += '^';
            print_child(n->rhs, 3, out);
            return;
        case NodeKind::Exp: out += "exp("; break;
        case NodeKind::Log: out += "log("; break;
        case NodeKind::Sin: out += "sin("; break;
        case NodeKind::Cos: out += "cos("; break;
        case NodeKind::Sqrt: out += "sqrt("; break;
    }
    print_node(n->lhs, out);
    out += ')';
}

}  // namespace detail

inline std::string print(const Expression& e) {
    std::string out;
    detail::print_node(e.root, out);
    return out;
}

}  // namespace finsum::smoothfn
