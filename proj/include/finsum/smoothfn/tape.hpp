#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "finsum/error.hpp"
#include "finsum/smoothfn/ast.hpp"
#include "finsum/smoothfn/jet.hpp"

namespace finsum::smoothfn {

inline constexpr int kMaxTapeStack = 64;
inline constexpr int kMaxIntExponent = 64;

namespace jetops {

// Scalar overloads so the tape evaluator is one template over double / Jet /
// Jet11. Domain checks mirror the jet versions.
inline double add(double a, double b) { return a + b; }
inline double sub(double a, double b) { return a - b; }
inline double mul(double a, double b) { return a * b; }
inline double neg(double a) { return -a; }

inline double div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
}

inline double exp(double a) { return std::exp(a); }

inline double log(double a) {
    if (!(a > 0.0)) throw DomainError("log of non-positive value");
    return std::log(a);
}

inline double sin(double a) { return std::sin(a); }
inline double cos(double a) { return std::cos(a); }

inline double sqrt(double a) {
    if (a < 0.0) throw DomainError("sqrt of negative value");
    return std::sqrt(a);
}

inline double pow_int(double a, int e) {
    if (e < 0) return div(1.0, pow_int(a, -e));
    double acc = 1.0, base = a;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= base;
        base *= base;
    }
    return acc;
}

// Overwrites a value (copied from a prototype that fixes the jet length)
// with the given constant.
inline void scale_to(double& v, double c) { v = c; }

inline void scale_to(Jet& v, double c) {
    for (int i = 0; i < v.len; ++i) v.c[i] = 0.0;
    v.c[0] = c;
}

inline void scale_to(Jet11& v, double c) { v = Jet11::constant(c); }

}  // namespace jetops

enum class OpCode : std::uint8_t {
    PushConst,
    PushX,
    PushY,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
    PowInt,
};

struct TapeOp {
    OpCode op;
    int iarg = 0;
    double darg = 0.0;
};

/// Postfix program compiled from an Expression. Evaluation walks the ops with
/// a value stack and no other state, so one Tape may be evaluated from many
/// threads at once.
struct Tape {
    std::vector<TapeOp> ops;
    int max_stack = 0;
    bool uses_y = false;
};

namespace detail {

// Recognizes Literal and Neg(Literal) exponents that are exactly a small
// integer, which compile to the exact repeated-multiplication power.
inline bool small_int_exponent(const NodePtr& n, int& out) {
    double v;
    if (n->kind == NodeKind::Literal) v = n->value;
    else if (n->kind == NodeKind::Neg && n->lhs->kind == NodeKind::Literal) v = -n->lhs->value;
    else return false;
    if (v != std::floor(v) || std::abs(v) > kMaxIntExponent) return false;
    out = static_cast<int>(v);
    return true;
}

inline void compile_node(const NodePtr& n, Tape& tape, int& depth) {
    auto push = [&](OpCode op, int iarg = 0, double darg = 0.0) {
        tape.ops.push_back({op, iarg, darg});
    };
    auto grow = [&](int delta) {
        depth += delta;
        if (depth > kMaxTapeStack) throw CapacityError("expression nesting exceeds stack capacity");
        if (depth > tape.max_stack) tape.max_stack = depth;
    };
    switch (n->kind) {
        case NodeKind::Literal: push(OpCode::PushConst, 0, n->value); grow(+1); return;
        case NodeKind::VarX: push(OpCode::PushX); grow(+1); return;
        case NodeKind::VarY: push(OpCode::PushY); grow(+1); tape.uses_y = true; return;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div: {
            compile_node(n->lhs, tape, depth);
            compile_node(n->rhs, tape, depth);
            const OpCode op = n->kind == NodeKind::Add   ? OpCode::Add
                              : n->kind == NodeKind::Sub ? OpCode::Sub
                              : n->kind == NodeKind::Mul ? OpCode::Mul
                                                         : OpCode::Div;
            push(op);
            grow(-1);
            return;
        }
        case NodeKind::Pow: {
            int e = 0;
            if (small_int_exponent(n->rhs, e)) {
                compile_node(n->lhs, tape, depth);
                push(OpCode::PowInt, e);
                return;
            }
            // General power lowers to exp(e * log(b)), which also enforces
            // the positive-base requirement for non-integer exponents.
            compile_node(n->lhs, tape, depth);
            push(OpCode::Log);
            compile_node(n->rhs, tape, depth);
            push(OpCode::Mul);
            grow(-1);
            push(OpCode::Exp);
            return;
        }
        case NodeKind::Neg: compile_node(n->lhs, tape, depth); push(OpCode::Neg); return;
        case NodeKind::Exp: compile_node(n->lhs, tape, depth); push(OpCode::Exp); return;
        case NodeKind::Log: compile_node(n->lhs, tape, depth); push(OpCode::Log); return;
        case NodeKind::Sin: compile_node(n->lhs, tape, depth); push(OpCode::Sin); return;
        case NodeKind::Cos: compile_node(n->lhs, tape, depth); push(OpCode::Cos); return;
        case NodeKind::Sqrt: compile_node(n->lhs, tape, depth); push(OpCode::Sqrt); return;
    }
    throw Error("compile: unhandled node kind");
}

}  // namespace detail

inline Tape compile(const Expression& e) {
    if (!e.valid()) throw Error("compile: empty expression");
    Tape tape;
    int depth = 0;
    detail::compile_node(e.root, tape, depth);
    return tape;
}

/// Evaluates the tape over any value type with jetops overloads. The y slot
/// is only read by PushY; univariate callers pass a dummy.
template <class T>
T eval_tape(const Tape& tape, const T& x, const T& y, const T& one) {
    T stack[kMaxTapeStack];
    int top = 0;
    auto bin = [&](auto fn) {
        const T r = fn(stack[top - 2], stack[top - 1]);
        stack[top - 2] = r;
        --top;
    };
    for (const TapeOp& op : tape.ops) {
        using namespace jetops;
        switch (op.op) {
            case OpCode::PushConst: {
                T v = one;
                scale_to(v, op.darg);
                stack[top++] = v;
                break;
            }
            case OpCode::PushX: stack[top++] = x; break;
            case OpCode::PushY: stack[top++] = y; break;
            case OpCode::Add: bin([](const T& a, const T& b) { return add(a, b); }); break;
            case OpCode::Sub: bin([](const T& a, const T& b) { return sub(a, b); }); break;
            case OpCode::Mul: bin([](const T& a, const T& b) { return mul(a, b); }); break;
            case OpCode::Div: bin([](const T& a, const T& b) { return div(a, b); }); break;
            case OpCode::Neg: stack[top - 1] = neg(stack[top - 1]); break;
            case OpCode::Exp: stack[top - 1] = exp(stack[top - 1]); break;
            case OpCode::Log: stack[top - 1] = log(stack[top - 1]); break;
            case OpCode::Sin: stack[top - 1] = sin(stack[top - 1]); break;
            case OpCode::Cos: stack[top - 1] = cos(stack[top - 1]); break;
            case OpCode::Sqrt: stack[top - 1] = sqrt(stack[top - 1]); break;
            case OpCode::PowInt: stack[top - 1] = pow_int(stack[top - 1], op.iarg); break;
        }
    }
    return stack[0];
}

}  // namespace finsum::smoothfn
