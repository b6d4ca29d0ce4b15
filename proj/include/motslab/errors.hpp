// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#pragma once

#include <stdexcept>
#include <string>

namespace motslab {

// Base class for everything this library throws on purpose.  The stage name
// is prepended by the CLI when an error crosses a pipeline boundary.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Expression text failed to parse.  `offset` is a 0-based byte offset into
// the source string.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : error(what + " (byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation hit a pole, log of a non-positive value, sqrt of a negative
// value, or similar.  `subexpr` is the printed form of the offending node.
class eval_domain_error : public error {
public:
    eval_domain_error(const std::string& what, const std::string& subexpr)
        : error(what + " in subexpression: " + subexpr), subexpr_(subexpr) {}
    const std::string& subexpr() const noexcept { return subexpr_; }

private:
    std::string subexpr_;
};

// A solver, quadrature rule, or fit could not deliver the requested result.
class numeric_error : public error {
public:
    using error::error;
};

// Configuration file rejected (syntax, unknown keys, invariant violations).
class config_error : public error {
public:
    using error::error;
};

}  // namespace motslab
