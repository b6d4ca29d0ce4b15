// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <memory>
#include <string>

#include "motslab/errors.hpp"

namespace motslab {

namespace detail {
struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;
}  // namespace detail

// A closed-form radial profile in the single variable r.
//
// Grammar: numbers, r, + - * / ^, parentheses, sqrt log exp sin cos abs.
// ^ is right-associative; unary minus binds looser than ^ (-r^2 == -(r^2)).
//
// Trees are immutable after parse and safe to evaluate concurrently.
class ProfileExpr {
public:
    ProfileExpr() = default;

    // Throws parse_error (with 0-based byte offset) on bad input.
    static ProfileExpr parse(const std::string& text);

    // Evaluation in double or extended precision.  Division by zero, log of
    // a non-positive value, sqrt of a negative value, and invalid powers
    // throw eval_domain_error carrying the offending subexpression.
    template <class T>
    T eval(T r) const;

    // Exact symbolic derivative (with light literal-identity folding).
    ProfileExpr differentiate() const;

    // Fully parenthesized form; parse(print(e)) evaluates identically to e.
    std::string print() const;

    // Text this expression was parsed from (or the printed form, for trees
    // produced by differentiate()).
    const std::string& source() const { return source_; }

    // True when the tree is the literal constant 0 (used to shortcut
    // time-symmetric data paths).
    bool is_literal_zero() const;

    bool valid() const { return root_ != nullptr; }

private:
    ProfileExpr(detail::NodePtr root, std::string source);

    detail::NodePtr root_;
    std::string source_;
};

}  // namespace motslab
