#include <vector>

#include "rigidlab/expr.hpp"

namespace rigidlab {

namespace {

Jet eval(const Node& n, std::span<const Jet> vars) {
    switch (n.kind) {
        case NodeKind::Variable: return vars[n.variable - 1];
        case NodeKind::Literal: {
            const Jet& v = vars.front();
            return Jet::constant(n.literal, v.dim(), v.order());
        }
        case NodeKind::Unary: {
            Jet a = eval(*n.lhs, vars);
            switch (n.unary) {
                case UnaryOp::Neg: return -a;
                case UnaryOp::Sin: return sin(a);
                case UnaryOp::Cos: return cos(a);
                case UnaryOp::Tan: return tan(a);
                case UnaryOp::Exp: return exp(a);
                case UnaryOp::Log: return log(a);
                case UnaryOp::Sqrt: return sqrt(a);
            }
            break;
        }
        case NodeKind::Power: return ipow(eval(*n.lhs, vars), n.exponent);
        case NodeKind::Binary: {
            Jet a = eval(*n.lhs, vars);
            Jet b = eval(*n.rhs, vars);
            switch (n.binary) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div: return a / b;
            }
            break;
        }
    }
    throw std::logic_error("malformed expression tree");
}

}  // namespace

Jet Expression::evaluate(std::span<const Jet> variables) const {
    if (!root_) throw std::logic_error("evaluating an empty expression");
    if (static_cast<int>(variables.size()) < dim_) throw std::invalid_argument("too few chart variables");
    return eval(*root_, variables);
}

Jet Expression::evaluate(std::span<const double> point, int order) const {
    if (static_cast<int>(point.size()) != dim_) throw std::invalid_argument("point dimension mismatch");
    std::vector<Jet> vars;
    vars.reserve(point.size());
    for (int i = 0; i < dim_; ++i) vars.push_back(Jet::variable(i, point[i], dim_, order));
    return evaluate(vars);
}

double Expression::value(std::span<const double> point) const { return evaluate(point, 0).value(); }

JetValue to_jet_value(const Jet& jet) {
    JetValue out;
    out.dim = jet.dim();
    out.order = jet.order();
    out.value = jet.value();
    const int n = jet.dim();
    for (int i = 0; i < n; ++i) {
        if (jet.order() >= 1) out.grad[i] = jet.d(i);
        for (int j = 0; j < n; ++j) {
            if (jet.order() >= 2) out.hess[i][j] = jet.d(i, j);
            for (int k = 0; k < n; ++k)
                if (jet.order() >= 3) out.third[i][j][k] = jet.d(i, j, k);
        }
    }
    return out;
}

JetValue evaluate_jet(const Expression& ast, std::span<const double> point, int order) {
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order must be 0..3");
    return to_jet_value(ast.evaluate(point, order));
}

}  // namespace rigidlab
