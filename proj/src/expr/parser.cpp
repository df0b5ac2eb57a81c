#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "rigidlab/expr.hpp"

namespace rigidlab {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), kind_(kind),
      offset_(offset) {}

namespace {

NodePtr make_literal(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Literal;
    n->literal = v;
    return n;
}

NodePtr make_variable(int index) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Variable;
    n->variable = index;
    return n;
}

NodePtr make_unary(UnaryOp op, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Unary;
    n->unary = op;
    n->lhs = std::move(a);
    return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Binary;
    n->binary = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_power(NodePtr a, int e) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Power;
    n->exponent = e;
    n->lhs = std::move(a);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, ParseError::Kind kind = ParseError::Kind::Syntax,
                           std::size_t at = std::string_view::npos) const {
        throw ParseError(kind, (at == std::string_view::npos ? pos_ : at) + 1, what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(BinaryOp::Add, lhs, term());
            else if (accept('-'))
                lhs = make_binary(BinaryOp::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(BinaryOp::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make_binary(BinaryOp::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make_unary(UnaryOp::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (!accept('^')) return base;
        return make_power(base, exponent());
    }

    int exponent() {
        const bool paren = accept('(');
        int sign = 1;
        if (accept('-'))
            sign = -1;
        else
            accept('+');
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("exponent must be an integer literal");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            fail("exponent must be an integer literal");
        int value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc()) fail("exponent out of range", ParseError::Kind::Syntax, start);
        if (paren) expect(')');
        return sign * value;
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;
            }
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_) fail("malformed number", ParseError::Kind::Syntax, start);
        return make_literal(v);
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view id = text_.substr(start, pos_ - start);
            if (id.size() > 1 && id[0] == 'x' &&
                id.find_first_not_of("0123456789", 1) == std::string_view::npos) {
                int index = 0;
                auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), index);
                if (ec != std::errc() || index < 1 || index > dim_)
                    fail("variable '" + std::string(id) + "' exceeds chart dimension " +
                             std::to_string(dim_),
                         ParseError::Kind::VariableOutOfRange, start);
                return make_variable(index);
            }
            if (id == "pi") return make_literal(std::numbers::pi);
            UnaryOp op;
            if (id == "sin")
                op = UnaryOp::Sin;
            else if (id == "cos")
                op = UnaryOp::Cos;
            else if (id == "tan")
                op = UnaryOp::Tan;
            else if (id == "exp")
                op = UnaryOp::Exp;
            else if (id == "log")
                op = UnaryOp::Log;
            else if (id == "sqrt")
                op = UnaryOp::Sqrt;
            else
                fail("unknown identifier '" + std::string(id) + "'", ParseError::Kind::UnknownIdentifier,
                     start);
            expect('(');
            NodePtr arg = expr();
            expect(')');
            return make_unary(op, arg);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    int dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {}

Expression Expression::parse(std::string_view text, int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("chart dimension must be in 1..4");
    return Expression(Parser(text, dim).parse(), dim);
}

Expression Expression::literal(double value, int dim) { return Expression(make_literal(value), dim); }

Expression Expression::variable(int index, int dim) {
    if (index < 1 || index > dim) throw std::invalid_argument("variable index out of range");
    return Expression(make_variable(index), dim);
}

Expression operator+(const Expression& a, const Expression& b) {
    return Expression(make_binary(BinaryOp::Add, a.root_, b.root_), std::max(a.dim_, b.dim_));
}
Expression operator-(const Expression& a, const Expression& b) {
    return Expression(make_binary(BinaryOp::Sub, a.root_, b.root_), std::max(a.dim_, b.dim_));
}
Expression operator*(const Expression& a, const Expression& b) {
    return Expression(make_binary(BinaryOp::Mul, a.root_, b.root_), std::max(a.dim_, b.dim_));
}
Expression operator/(const Expression& a, const Expression& b) {
    return Expression(make_binary(BinaryOp::Div, a.root_, b.root_), std::max(a.dim_, b.dim_));
}
Expression operator-(const Expression& a) { return Expression(make_unary(UnaryOp::Neg, a.root_), a.dim_); }
Expression apply(UnaryOp op, const Expression& a) { return Expression(make_unary(op, a.root_), a.dim_); }
Expression pow(const Expression& a, int exponent) {
    return Expression(make_power(a.root_, exponent), a.dim_);
}

bool same_tree(const NodePtr& a, const NodePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Variable: return a->variable == b->variable;
        case NodeKind::Literal: return a->literal == b->literal;
        case NodeKind::Unary: return a->unary == b->unary && same_tree(a->lhs, b->lhs);
        case NodeKind::Binary:
            return a->binary == b->binary && same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
        case NodeKind::Power: return a->exponent == b->exponent && same_tree(a->lhs, b->lhs);
    }
    return false;
}

}  // namespace rigidlab
