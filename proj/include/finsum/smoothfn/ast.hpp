#pragma once

#include <cmath>
#include <memory>
#include <utility>

#include "finsum/error.hpp"

namespace finsum::smoothfn {

enum class NodeKind {
    Literal,
    VarX,
    VarY,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression tree. Canonical form keeps literals non-negative;
/// negative constants are spelled Neg(Literal), which is what the parser
/// produces and what keeps print/parse round trips structural.
struct Node {
    NodeKind kind;
    double value = 0.0;
    NodePtr lhs;
    NodePtr rhs;
};

struct Expression {
    NodePtr root;

    bool valid() const { return root != nullptr; }
};

inline NodePtr lit(double v) {
    if (!std::isfinite(v) || v < 0.0)
        throw Error("expression literal must be finite and non-negative");
    return std::make_shared<Node>(Node{NodeKind::Literal, v, nullptr, nullptr});
}

inline NodePtr var_x() { return std::make_shared<Node>(Node{NodeKind::VarX, 0.0, nullptr, nullptr}); }
inline NodePtr var_y() { return std::make_shared<Node>(Node{NodeKind::VarY, 0.0, nullptr, nullptr}); }

inline NodePtr unary(NodeKind k, NodePtr a) {
    return std::make_shared<Node>(Node{k, 0.0, std::move(a), nullptr});
}

inline NodePtr binary(NodeKind k, NodePtr a, NodePtr b) {
    return std::make_shared<Node>(Node{k, 0.0, std::move(a), std::move(b)});
}

inline bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    if (a->kind == NodeKind::Literal) {
        // Bit-level comparison: round-trip printing preserves the exact double.
        return a->value == b->value;
    }
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

inline bool structurally_equal(const Expression& a, const Expression& b) {
    return structurally_equal(a.root, b.root);
}

inline bool uses_variable_y(const NodePtr& n) {
    if (!n) return false;
    if (n->kind == NodeKind::VarY) return true;
    return uses_variable_y(n->lhs) || uses_variable_y(n->rhs);
}

}  // namespace finsum::smoothfn
