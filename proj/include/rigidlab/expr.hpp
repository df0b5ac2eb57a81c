#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rigidlab/jet.hpp"

namespace rigidlab {

/// Raised by the expression parser. `offset()` is the 1-based byte column of
/// the offending character (one past the end for unexpected end of input).
class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnknownIdentifier, VariableOutOfRange };

    ParseError(Kind kind, std::size_t offset, const std::string& what);

    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

enum class NodeKind { Variable, Literal, Unary, Binary, Power };
enum class UnaryOp { Neg, Sin, Cos, Tan, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Variables are 1-based (`x1` is index 1).
struct Node {
    NodeKind kind = NodeKind::Literal;
    int variable = 0;
    double literal = 0.0;
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    int exponent = 0;
    NodePtr lhs;
    NodePtr rhs;
};

/// Scalar expression in the chart variables x1..xn.
///
/// Grammar (see docs/expression-grammar.md):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('+' | '-') unary | power
///     power   := primary ('^' exponent)?
///     exponent:= ('+' | '-')? integer | '(' ('+' | '-')? integer ')'
///     primary := number | 'x' integer | 'pi' | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | tan | exp | log | sqrt
class Expression {
public:
    Expression() = default;
    Expression(NodePtr root, int dim);

    static Expression parse(std::string_view text, int dim);

    static Expression literal(double value, int dim);
    static Expression variable(int index, int dim);

    int dim() const { return dim_; }
    const NodePtr& root() const { return root_; }
    bool empty() const { return !root_; }

    /// Canonical text form; `parse(to_string())` rebuilds the same tree.
    std::string to_string() const;

    /// Evaluates the expression and its partial derivatives up to `order`.
    Jet evaluate(std::span<const double> point, int order) const;

    /// Evaluates with caller-supplied jets for the chart variables.
    Jet evaluate(std::span<const Jet> variables) const;

    double value(std::span<const double> point) const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);
    friend Expression apply(UnaryOp op, const Expression& a);
    friend Expression pow(const Expression& a, int exponent);

private:
    NodePtr root_;
    int dim_ = 0;
};

/// Structural equality of two trees (literals compared exactly).
bool same_tree(const NodePtr& a, const NodePtr& b);

/// Value plus coordinate derivatives of a scalar at a chart point.
struct JetValue {
    int dim = 0;
    int order = 0;
    double value = 0.0;
    double grad[kMaxDim] = {};
    double hess[kMaxDim][kMaxDim] = {};
    double third[kMaxDim][kMaxDim][kMaxDim] = {};
};

JetValue to_jet_value(const Jet& jet);

/// Convenience wrapper: evaluates `ast` at `point` up to `order` (0..3).
JetValue evaluate_jet(const Expression& ast, std::span<const double> point, int order);

}  // namespace rigidlab
