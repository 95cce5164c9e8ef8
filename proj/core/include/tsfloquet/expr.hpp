#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace tsfloquet {

/// Comparison used by If nodes: `lhs <op> constant`.
enum class Cmp { Eq, Lt, Le, Gt, Ge };

/// Immutable AST for the scalar coefficient functions p(t), q(t).
///
/// Grammar (whitespace-insensitive):
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' atom)?
///   atom  := number | 't' | 'pi' | func '(' args ')' | '(' expr ')'
/// with func in {sin, cos, exp, sqrt, abs, mod, neg1pow, if} and conditions
/// eq/lt/le/gt/ge(expr, constant) as the first argument of `if`.
class Expression {
public:
    enum class Kind {
        Constant,
        Variable,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Neg,
        Sin,
        Cos,
        Exp,
        Sqrt,
        Abs,
        Mod,
        Neg1Pow,
        If,
        NonDiff,  // produced by differentiate(); fails when evaluated
    };

    /// Defaults to the constant 0.
    Expression();

    static Expression constant(double v);
    static Expression variable();
    static Expression unary(Kind k, Expression arg);
    static Expression binary(Kind k, Expression lhs, Expression rhs);
    /// `exponent` must be a constant.
    static Expression pow(Expression base, double exponent);
    static Expression mod(Expression arg, double modulus);
    static Expression if_then_else(Cmp cmp, Expression lhs, double rhs, Expression then_e, Expression else_e);
    static Expression non_differentiable(Expression arg, std::string what);

    [[nodiscard]] Kind kind() const noexcept;
    /// Constant value, Pow exponent, Mod modulus, or If comparison constant.
    [[nodiscard]] double value() const noexcept;
    [[nodiscard]] Cmp cmp() const noexcept;
    [[nodiscard]] const std::vector<Expression>& args() const noexcept;

    /// IEEE evaluation. Throws DomainError, NonIntegerNeg1Pow, NonDifferentiableNode.
    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double eval(double t) const { return (*this)(t); }

    /// True when the tree does not mention t.
    [[nodiscard]] bool is_constant() const noexcept;

    /// Fully parenthesised text that parses back to an identical tree.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Expression& l, const Expression& r) noexcept;

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Throws Error{SyntaxError (with byte offset), ArityError, NonConstantExponent, NonConstantArgument}.
[[nodiscard]] Expression parse_expression(std::string_view text);

/// Symbolic derivative with respect to t. Neg1Pow and Mod become NonDiff nodes
/// that fail only if evaluated; If keeps its condition and differentiates both branches.
[[nodiscard]] Expression differentiate(const Expression& e);

}  // namespace tsfloquet
