#pragma once

#include "lyap/numeric.hpp"

#include <memory>
#include <optional>
#include <string>

namespace lyap {

// Expression tree over rational literals, the parameter t, + - * /, integer
// powers, sqrt and log.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum Kind { Const, Param, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Log } kind;
    Rational value;  // Const
    long exponent = 0;  // Pow
    Expr lhs, rhs;
};

Expr parse_expr(const std::string& text);
std::string print(const Expr& e);

Expr constant(const Rational& q);
Expr parameter();
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

bool depends_on_t(const Expr& e);
// Exact value when e evaluates within Q at t (sqrt only of rational squares).
std::optional<Rational> try_rational(const Expr& e, const Rational& t);
bool structurally_equal(const Expr& a, const Expr& b);

template <class S>
S eval(const Expr& e, const S& t)
{
    switch (e->kind) {
    case ExprNode::Const: return Num<S>::from(e->value);
    case ExprNode::Param: return t;
    case ExprNode::Add: return eval(e->lhs, t) + eval(e->rhs, t);
    case ExprNode::Sub: return eval(e->lhs, t) - eval(e->rhs, t);
    case ExprNode::Mul: return eval(e->lhs, t) * eval(e->rhs, t);
    case ExprNode::Div: {
        S den = eval(e->rhs, t);
        if (den == S(0))
            throw DomainError("division by zero in " + print(e));
        return eval(e->lhs, t) / den;
    }
    case ExprNode::Neg: return -eval(e->lhs, t);
    case ExprNode::Pow: {
        S b = eval(e->lhs, t);
        if (e->exponent < 0 && b == S(0))
            throw DomainError("negative power of zero in " + print(e));
        return ipow(b, e->exponent);
    }
    case ExprNode::Sqrt:
    case ExprNode::Log: {
        S a = eval(e->lhs, t);
        if constexpr (std::is_same_v<S, Rational>) {
            throw DomainError("irrational function in exact evaluation: " + print(e));
        } else {
            bool is_log = e->kind == ExprNode::Log;
            if constexpr (!is_complex_scalar<S>::value) {
                if (is_log ? Num<S>::real(a) <= 0 : Num<S>::real(a) < 0)
                    throw DomainError((is_log ? "log of non-positive value in " : "sqrt of negative value in ") + print(e));
            }
            return is_log ? S(log(a)) : S(sqrt(a));
        }
    }
    }
    throw DomainError("bad expression node");
}

} // namespace lyap
