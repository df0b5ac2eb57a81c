#include <charconv>
#include <string>

#include "rigidlab/expr.hpp"

namespace rigidlab {

namespace {

// Binding strength used to decide where parentheses are required.
int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Binary:
            return (n.binary == BinaryOp::Add || n.binary == BinaryOp::Sub) ? 1 : 2;
        case NodeKind::Unary: return n.unary == UnaryOp::Neg ? 3 : 5;
        case NodeKind::Power: return 4;
        case NodeKind::Literal: return n.literal < 0 ? 3 : 5;
        case NodeKind::Variable: return 5;
    }
    return 0;
}

const char* function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Tan: return "tan";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Neg: return "-";
    }
    return "?";
}

void print_number(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

void print(std::string& out, const Node& n);

void print_wrapped(std::string& out, const Node& n, bool parens) {
    if (parens) out += '(';
    print(out, n);
    if (parens) out += ')';
}

void print(std::string& out, const Node& n) {
    switch (n.kind) {
        case NodeKind::Variable:
            out += 'x';
            out += std::to_string(n.variable);
            return;
        case NodeKind::Literal:
            if (n.literal < 0) {
                out += "(-";
                print_number(out, -n.literal);
                out += ')';
            } else {
                print_number(out, n.literal);
            }
            return;
        case NodeKind::Unary:
            if (n.unary == UnaryOp::Neg) {
                out += '-';
                print_wrapped(out, *n.lhs, precedence(*n.lhs) < 3);
            } else {
                out += function_name(n.unary);
                out += '(';
                print(out, *n.lhs);
                out += ')';
            }
            return;
        case NodeKind::Power:
            print_wrapped(out, *n.lhs, precedence(*n.lhs) < 5);
            out += '^';
            if (n.exponent < 0) {
                out += "(-" + std::to_string(-n.exponent) + ')';
            } else {
                out += std::to_string(n.exponent);
            }
            return;
        case NodeKind::Binary: {
            const int p = precedence(n);
            print_wrapped(out, *n.lhs, precedence(*n.lhs) < p);
            switch (n.binary) {
                case BinaryOp::Add: out += " + "; break;
                case BinaryOp::Sub: out += " - "; break;
                case BinaryOp::Mul: out += '*'; break;
                case BinaryOp::Div: out += '/'; break;
            }
            print_wrapped(out, *n.rhs, precedence(*n.rhs) <= p);
            return;
        }
    }
}

}  // namespace

std::string Expression::to_string() const {
    std::string out;
    if (root_) print(out, *root_);
    return out;
}

}  // namespace rigidlab
