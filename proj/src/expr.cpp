// motslab: radial Jang-equation toolkit.
// SPDX-License-Identifier: MIT

#include "motslab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "motslab/dd.hpp"
#include "motslab/numerics.hpp"

namespace motslab {
namespace detail {

enum class Fn { sqrt, log, exp, sin, cos, abs };

struct ExprNode {
    enum class Kind { number, var, neg, binary, call };

    Kind kind;
    double value = 0.0;  // number
    char op = 0;         // + - * / ^
    Fn fn = Fn::sqrt;    // call
    NodePtr a, b;
};

namespace {

NodePtr mk_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::number;
    n->value = v;
    return n;
}

NodePtr mk_var() {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::var;
    return n;
}

bool is_num(const NodePtr& n, double v) {
    return n->kind == ExprNode::Kind::number && n->value == v;
}

bool is_number(const NodePtr& n) { return n->kind == ExprNode::Kind::number; }

NodePtr mk_neg(NodePtr a) {
    if (is_number(a)) return mk_number(-a->value);
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::neg;
    n->a = std::move(a);
    return n;
}

NodePtr mk_binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

// Folding helpers used when building derivative trees.  Only exact literal
// identities fold; parsed user input is kept verbatim.
NodePtr mk_add(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0)) return b;
    if (is_num(b, 0.0)) return a;
    if (is_number(a) && is_number(b)) return mk_number(a->value + b->value);
    return mk_binary('+', std::move(a), std::move(b));
}

NodePtr mk_sub(NodePtr a, NodePtr b) {
    if (is_num(b, 0.0)) return a;
    if (is_num(a, 0.0)) return mk_neg(std::move(b));
    if (is_number(a) && is_number(b)) return mk_number(a->value - b->value);
    return mk_binary('-', std::move(a), std::move(b));
}

NodePtr mk_mul(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0) || is_num(b, 0.0)) return mk_number(0.0);
    if (is_num(a, 1.0)) return b;
    if (is_num(b, 1.0)) return a;
    if (is_number(a) && is_number(b)) return mk_number(a->value * b->value);
    return mk_binary('*', std::move(a), std::move(b));
}

NodePtr mk_div(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0)) return mk_number(0.0);
    if (is_num(b, 1.0)) return a;
    return mk_binary('/', std::move(a), std::move(b));
}

NodePtr mk_pow(NodePtr a, NodePtr b) {
    if (is_num(b, 1.0)) return a;
    if (is_num(b, 0.0)) return mk_number(1.0);
    return mk_binary('^', std::move(a), std::move(b));
}

NodePtr mk_call(Fn fn, NodePtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::call;
    n->fn = fn;
    n->a = std::move(a);
    return n;
}

const char* fn_name(Fn fn) {
    switch (fn) {
        case Fn::sqrt: return "sqrt";
        case Fn::log: return "log";
        case Fn::exp: return "exp";
        case Fn::sin: return "sin";
        case Fn::cos: return "cos";
        case Fn::abs: return "abs";
    }
    return "?";
}

void print_node(const NodePtr& n, std::string& out) {
    switch (n->kind) {
        case ExprNode::Kind::number:
            out += format_double(n->value);
            break;
        case ExprNode::Kind::var:
            out += 'r';
            break;
        case ExprNode::Kind::neg:
            out += "(-";
            print_node(n->a, out);
            out += ')';
            break;
        case ExprNode::Kind::binary:
            out += '(';
            print_node(n->a, out);
            out += n->op;
            print_node(n->b, out);
            out += ')';
            break;
        case ExprNode::Kind::call:
            out += fn_name(n->fn);
            out += '(';
            print_node(n->a, out);
            out += ')';
            break;
    }
}

std::string print_tree(const NodePtr& n) {
    std::string s;
    print_node(n, s);
    return s;
}

[[noreturn]] void domain_fail(const char* what, const NodePtr& n) {
    throw eval_domain_error(what, print_tree(n));
}

// Unqualified calls so ADL picks up the dd overloads next to std's.
template <class T>
T eval_node(const NodePtr& n, T r) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::floor;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sqrt;
    switch (n->kind) {
        case ExprNode::Kind::number:
            return static_cast<T>(n->value);
        case ExprNode::Kind::var:
            return r;
        case ExprNode::Kind::neg:
            return -eval_node(n->a, r);
        case ExprNode::Kind::binary: {
            const T a = eval_node(n->a, r);
            const T b = eval_node(n->b, r);
            switch (n->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == T(0)) domain_fail("division by zero", n);
                    return a / b;
                case '^': {
                    if (a == T(0) && b < T(0))
                        domain_fail("zero raised to a negative power", n);
                    if (a < T(0) && b != floor(b))
                        domain_fail("negative base with non-integer exponent", n);
                    return pow(a, b);
                }
            }
            break;
        }
        case ExprNode::Kind::call: {
            const T a = eval_node(n->a, r);
            switch (n->fn) {
                case Fn::sqrt:
                    if (a < T(0)) domain_fail("sqrt of a negative value", n);
                    return sqrt(a);
                case Fn::log:
                    if (a <= T(0)) domain_fail("log of a non-positive value", n);
                    return log(a);
                case Fn::exp: return exp(a);
                case Fn::sin: return sin(a);
                case Fn::cos: return cos(a);
                case Fn::abs: return abs(a);
            }
            break;
        }
    }
    throw numeric_error("corrupt expression tree");
}

NodePtr diff_node(const NodePtr& n) {
    using K = ExprNode::Kind;
    switch (n->kind) {
        case K::number:
            return mk_number(0.0);
        case K::var:
            return mk_number(1.0);
        case K::neg:
            return mk_neg(diff_node(n->a));
        case K::binary: {
            const NodePtr& a = n->a;
            const NodePtr& b = n->b;
            switch (n->op) {
                case '+': return mk_add(diff_node(a), diff_node(b));
                case '-': return mk_sub(diff_node(a), diff_node(b));
                case '*':
                    return mk_add(mk_mul(diff_node(a), b), mk_mul(a, diff_node(b)));
                case '/':
                    return mk_div(
                        mk_sub(mk_mul(diff_node(a), b), mk_mul(a, diff_node(b))),
                        mk_pow(b, mk_number(2.0)));
                case '^': {
                    if (is_number(b)) {
                        // c * a^(c-1) * a'
                        const double c = b->value;
                        return mk_mul(
                            mk_mul(mk_number(c), mk_pow(a, mk_number(c - 1.0))),
                            diff_node(a));
                    }
                    // a^b * (b' log a + b a'/a)
                    return mk_mul(
                        mk_pow(a, b),
                        mk_add(mk_mul(diff_node(b), mk_call(Fn::log, a)),
                               mk_div(mk_mul(b, diff_node(a)), a)));
                }
            }
            break;
        }
        case K::call: {
            const NodePtr& a = n->a;
            NodePtr da = diff_node(a);
            switch (n->fn) {
                case Fn::sqrt:
                    return mk_div(da, mk_mul(mk_number(2.0), mk_call(Fn::sqrt, a)));
                case Fn::log:
                    return mk_div(da, a);
                case Fn::exp:
                    return mk_mul(mk_call(Fn::exp, a), da);
                case Fn::sin:
                    return mk_mul(mk_call(Fn::cos, a), da);
                case Fn::cos:
                    return mk_neg(mk_mul(mk_call(Fn::sin, a), da));
                case Fn::abs:
                    // sign(a) * a', written as (a/abs(a)); undefined at 0.
                    return mk_mul(mk_div(a, mk_call(Fn::abs, a)), da);
            }
            break;
        }
    }
    throw numeric_error("corrupt expression tree");
}

// ----------------------------------------------------------------- the parser

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected trailing input", pos_);
        return e;
    }

private:
    // expression := term (('+'|'-') term)*
    NodePtr expression() {
        NodePtr e = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = mk_binary('+', e, term());
            } else if (peek() == '-') {
                ++pos_;
                e = mk_binary('-', e, term());
            } else {
                return e;
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                e = mk_binary('*', e, unary());
            } else if (peek() == '/') {
                ++pos_;
                e = mk_binary('/', e, unary());
            } else {
                return e;
            }
        }
    }

    // unary := '-' unary | power.  Minus at this level binds looser than ^,
    // so -r^2 parses as -(r^2).
    NodePtr unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            NodePtr inner = unary();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::neg;
            n->a = std::move(inner);
            return n;
        }
        return power();
    }

    // power := primary ('^' unary)?   (right-associative via unary)
    NodePtr power() {
        NodePtr base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return mk_binary('^', base, unary());
        }
        return base;
    }

    NodePtr primary() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw parse_error(c == '\0' ? "unexpected end of input"
                                    : "expected a number, r, function, or (",
                          pos_);
    }

    NodePtr number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) throw parse_error("malformed number", pos_);
        // strtod also accepts inf/nan/hex; the grammar starts numbers with a
        // digit or '.', which already excludes those spellings.
        pos_ += static_cast<std::size_t>(end - start);
        return mk_number(v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "r") return mk_var();
        Fn fn;
        if (name == "sqrt") fn = Fn::sqrt;
        else if (name == "log") fn = Fn::log;
        else if (name == "exp") fn = Fn::exp;
        else if (name == "sin") fn = Fn::sin;
        else if (name == "cos") fn = Fn::cos;
        else if (name == "abs") fn = Fn::abs;
        else throw parse_error("unknown identifier '" + name + "'", start);
        skip_ws();
        expect('(');
        NodePtr arg = expression();
        expect(')');
        return mk_call(fn, std::move(arg));
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw parse_error(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

ProfileExpr::ProfileExpr(detail::NodePtr root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

ProfileExpr ProfileExpr::parse(const std::string& text) {
    detail::Parser p(text);
    return ProfileExpr(p.run(), text);
}

template <class T>
T ProfileExpr::eval(T r) const {
    using std::isnan;
    if (!root_) throw numeric_error("eval of an empty ProfileExpr");
    const T v = detail::eval_node(root_, r);
    if (isnan(v))
        throw eval_domain_error("evaluation produced NaN", source_);
    return v;
}

template double ProfileExpr::eval<double>(double) const;
template long double ProfileExpr::eval<long double>(long double) const;
template dd ProfileExpr::eval<dd>(dd) const;

ProfileExpr ProfileExpr::differentiate() const {
    if (!root_) throw numeric_error("differentiate of an empty ProfileExpr");
    detail::NodePtr d = detail::diff_node(root_);
    std::string printed = detail::print_tree(d);
    return ProfileExpr(std::move(d), std::move(printed));
}

std::string ProfileExpr::print() const {
    if (!root_) throw numeric_error("print of an empty ProfileExpr");
    return detail::print_tree(root_);
}

bool ProfileExpr::is_literal_zero() const {
    return root_ && root_->kind == detail::ExprNode::Kind::number &&
           root_->value == 0.0;
}

}  // namespace motslab
