#include "merodiv/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "literal.hpp"
#include "merodiv/errors.hpp"

namespace merodiv {

struct Expression::Node {
    NodeKind kind;
    std::string literal;
    std::complex<double> value;
    int exponent = 0;
    Expression lhs;
    Expression rhs;
};

namespace {

std::complex<double> literal_value(std::string_view literal) {
    if (literal == "i") return {0.0, 1.0};
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
    if (ec != std::errc{} || ptr != literal.data() + literal.size() || !std::isfinite(v)) {
        throw DomainError("numeric literal out of range: " + std::string(literal));
    }
    return {v, 0.0};
}

}  // namespace

Expression Expression::variable() {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Variable, "z", {}, 0, {}, {}}));
}

Expression Expression::constant(std::string_view literal) {
    if (literal != "i" && !detail::is_number_literal(literal)) {
        throw DomainError("not a numeric literal: " + std::string(literal));
    }
    const auto value = literal_value(literal);
    return Expression(std::make_shared<const Node>(Node{NodeKind::Constant, std::string(literal), value, 0, {}, {}}));
}

Expression Expression::constant(double value) {
    if (!std::isfinite(value) || std::signbit(value)) {
        throw DomainError("constant must be finite and non-negative");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return constant(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

Expression Expression::add(Expression a, Expression b) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Add, {}, {}, 0, std::move(a), std::move(b)}));
}

Expression Expression::sub(Expression a, Expression b) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Sub, {}, {}, 0, std::move(a), std::move(b)}));
}

Expression Expression::mul(Expression a, Expression b) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Mul, {}, {}, 0, std::move(a), std::move(b)}));
}

Expression Expression::div(Expression a, Expression b) {
    if (b.kind() == NodeKind::Constant && b.constant_value() == std::complex<double>{}) {
        throw DomainError("division by the literal constant 0");
    }
    return Expression(std::make_shared<const Node>(Node{NodeKind::Div, {}, {}, 0, std::move(a), std::move(b)}));
}

Expression Expression::neg(Expression a) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Neg, {}, {}, 0, std::move(a), {}}));
}

Expression Expression::int_pow(Expression base, int exponent) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::IntPow, {}, {}, exponent, std::move(base), {}}));
}

Expression Expression::exp(Expression arg) {
    return Expression(std::make_shared<const Node>(Node{NodeKind::Exp, {}, {}, 0, std::move(arg), {}}));
}

NodeKind Expression::kind() const noexcept { return node_->kind; }
const Expression &Expression::lhs() const { return node_->lhs; }
const Expression &Expression::rhs() const { return node_->rhs; }
int Expression::exponent() const { return node_->exponent; }
const std::string &Expression::literal() const { return node_->literal; }
std::complex<double> Expression::constant_value() const { return node_->value; }

std::size_t Expression::size() const {
    switch (kind()) {
        case NodeKind::Variable:
        case NodeKind::Constant: return 1;
        case NodeKind::Neg:
        case NodeKind::IntPow:
        case NodeKind::Exp: return 1 + lhs().size();
        default: return 1 + lhs().size() + rhs().size();
    }
}

std::size_t Expression::depth() const {
    switch (kind()) {
        case NodeKind::Variable:
        case NodeKind::Constant: return 1;
        case NodeKind::Neg:
        case NodeKind::IntPow:
        case NodeKind::Exp: return 1 + lhs().depth();
        default: return 1 + std::max(lhs().depth(), rhs().depth());
    }
}

bool Expression::contains_exp() const {
    switch (kind()) {
        case NodeKind::Variable:
        case NodeKind::Constant: return false;
        case NodeKind::Exp: return true;
        case NodeKind::Neg:
        case NodeKind::IntPow: return lhs().contains_exp();
        default: return lhs().contains_exp() || rhs().contains_exp();
    }
}

bool operator==(const Expression &a, const Expression &b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case NodeKind::Variable: return true;
        case NodeKind::Constant: return a.literal() == b.literal();
        case NodeKind::IntPow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
        case NodeKind::Neg:
        case NodeKind::Exp: return a.lhs() == b.lhs();
        default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

std::string print_canonical(const Expression &e) {
    auto binary = [&](const char *op) {
        return "(" + print_canonical(e.lhs()) + " " + op + " " + print_canonical(e.rhs()) + ")";
    };
    switch (e.kind()) {
        case NodeKind::Variable: return "z";
        case NodeKind::Constant: return e.literal();
        case NodeKind::Add: return binary("+");
        case NodeKind::Sub: return binary("-");
        case NodeKind::Mul: return binary("*");
        case NodeKind::Div: return binary("/");
        case NodeKind::Neg: return "(-" + print_canonical(e.lhs()) + ")";
        case NodeKind::IntPow: return "(" + print_canonical(e.lhs()) + " ^ " + std::to_string(e.exponent()) + ")";
        case NodeKind::Exp: return "exp(" + print_canonical(e.lhs()) + ")";
    }
    return {};
}

}  // namespace merodiv
