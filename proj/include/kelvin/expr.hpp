#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "kelvin/error.hpp"

namespace kelvin {

/// A parsed function of x.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-'? atom
///   atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | log | sqrt | abs
///
/// '^' is right-associative and its base is a unary, so -x^2 means (-x)^2.
/// Cheap to copy; the tree is shared and immutable.
class FunctionExpr {
public:
    struct Node;

    const std::string& source() const noexcept { return source_; }

    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }

    /// Canonical text with the fewest parentheses that parse back to the same
    /// tree. Numbers use the shortest round-trip decimal form.
    std::string to_string() const;

private:
    friend FunctionExpr parse_expr(std::string_view source);
    FunctionExpr(std::string source, std::shared_ptr<const Node> root);

    std::string source_;
    std::shared_ptr<const Node> root_;
};

/// Throws ParseError with the byte offset of the offending token for syntax
/// errors, unknown identifiers and wrong argument counts.
FunctionExpr parse_expr(std::string_view source);

}  // namespace kelvin
