#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "merodiv/jet.hpp"
#include "merodiv/rational_function.hpp"

namespace merodiv {

enum class NodeKind { Variable, Constant, Add, Sub, Mul, Div, Neg, IntPow, Exp };

/// Immutable expression tree in the single variable z.
///
/// Nodes are shared and never modified after construction, so copies are
/// cheap and a single Expression may be evaluated from many threads.
///
/// Constants remember the literal they were written as; the exact bridge
/// converts that literal, never the rounded double.
class Expression {
public:
    static Expression variable();
    /// Numeric literal ("3", "0.25", "1e-3") or the imaginary unit "i".
    /// Throws DomainError when the text is neither.
    static Expression constant(std::string_view literal);
    /// Literal chosen as the shortest text that round-trips to `value`.
    /// Throws DomainError for negative or non-finite values (use neg()).
    static Expression constant(double value);
    static Expression imaginary_unit() { return constant("i"); }

    static Expression add(Expression a, Expression b);
    static Expression sub(Expression a, Expression b);
    static Expression mul(Expression a, Expression b);
    /// Throws DomainError when the denominator is the literal constant 0.
    static Expression div(Expression a, Expression b);
    static Expression neg(Expression a);
    static Expression int_pow(Expression base, int exponent);
    static Expression exp(Expression arg);

    NodeKind kind() const noexcept;
    /// Left operand of a binary node, or the sole operand of Neg/IntPow/Exp.
    const Expression &lhs() const;
    const Expression &rhs() const;
    int exponent() const;
    const std::string &literal() const;
    std::complex<double> constant_value() const;

    /// Number of nodes; depth of the tree (a leaf has depth 1).
    std::size_t size() const;
    std::size_t depth() const;
    bool contains_exp() const;

    friend bool operator==(const Expression &a, const Expression &b);
    friend bool operator!=(const Expression &a, const Expression &b) { return !(a == b); }

private:
    struct Node;
    Expression() = default;
    explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' intlit)?
///   atom   := 'z' | 'i' | number | 'exp' '(' expr ')' | '(' expr ')'
/// Throws SyntaxError carrying the zero-based byte offset of the offending token.
Expression parse(std::string_view text);

/// Fully parenthesized text; parse(print_canonical(e)) == e.
std::string print_canonical(const Expression &e);

/// Forward-mode (f(z), f'(z)). Throws PoleError when a denominator is exactly
/// zero or an intermediate is non-finite.
JetValue eval_jet(const Expression &e, std::complex<double> z);

/// Same derivative rules carried in scaled form; never overflows on large |z|.
/// Throws PoleError under the same conditions as eval_jet, except that
/// magnitude overflow is not an error here.
ScaledJet eval_scaled_jet(const Expression &e, std::complex<double> z);

/// Exact coprime form of an exp-free expression, or std::nullopt when the
/// tree contains exp. Throws ConversionError for a literal with no exact
/// form and DomainError when the expression is identically zero or divides
/// by an identically zero subexpression.
std::optional<RationalFunctionExact> as_exact_rational(const Expression &e);

/// Exact value of a numeric literal (or "i"). Throws ConversionError.
GaussianRational literal_to_exact(std::string_view literal);

/// Expression tree denoting an exact rational function.
Expression to_expression(const RationalFunctionExact &f);

}  // namespace merodiv
