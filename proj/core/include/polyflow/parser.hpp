#pragma once

#include "polyflow/ratio.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyflow {

class ParseError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,
        UnknownIdentifier,
        UnboundParameter,
        NonIntegerExponent,
        NonPolynomial,
        DivisionByZero,
        Model,
    };

    ParseError(Kind kind, const std::string& message, int line, int column);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    Kind kind_;
    int line_;
    int column_;
};

/// Names an expression may mention. The token `t` is reserved for the
/// argument of exp(...).
struct Declarations {
    VarNames variables = kDefaultNames;
    std::vector<std::string> parameters;
};

using Bindings = std::map<std::string, Rational>;

struct ExprNode;

/// A syntax tree whose identifiers have been resolved against the
/// declarations. Parameter values are supplied at evaluation time.
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
    [[nodiscard]] const ExprNode* root() const { return root_.get(); }
    [[nodiscard]] bool empty() const { return !root_; }
    /// Source position of the root operator or atom.
    [[nodiscard]] int line() const;
    [[nodiscard]] int column() const;

private:
    std::shared_ptr<const ExprNode> root_;
};

/// Grammar, loosest first:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' exponent)?
///   atom    := number | identifier | 'exp' '(' linear-in-t ')' | '(' sum ')'
/// Numbers may be integers or decimals; "1/2" is division. Exponents must
/// evaluate to integers; negative ones are allowed on nonzero bases and the
/// result is a ratio. `line`/`column` locate src inside a larger file.
Expr parse_ast(std::string_view src, const Declarations& decl, int line = 1, int column = 1);

Ratio evaluate(const Expr& e, const Bindings& bindings);
/// The value as a polynomial; fails with NonPolynomial when a spatial
/// denominator remains.
Polynomial evaluate_polynomial(const Expr& e, const Bindings& bindings);
/// The value as a rational constant (no variables, no clock).
Rational evaluate_constant(const Expr& e, const Bindings& bindings);

/// Every parameter referenced by e.
std::vector<std::string> referenced_parameters(const Expr& e);

Ratio parse_ratio(std::string_view src, const Declarations& decl = {}, const Bindings& bindings = {});
Polynomial parse_expression(std::string_view src, const Declarations& decl = {}, const Bindings& bindings = {});
Rational parse_constant(std::string_view src, const Declarations& decl = {}, const Bindings& bindings = {});

}  // namespace polyflow
