#include "lyap/family.hpp"

#include <cctype>

namespace lyap {

namespace {

Expr make(ExprNode::Kind k, Expr l = nullptr, Expr r = nullptr)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

bool is_const(const Expr& e) { return e->kind == ExprNode::Const; }

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr run()
    {
        Expr e = sum();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr sum()
    {
        Expr e = product();
        for (;;) {
            if (eat('+'))
                e = e + product();
            else if (eat('-'))
                e = e - product();
            else
                return e;
        }
    }
    Expr product()
    {
        Expr e = unary();
        for (;;) {
            if (eat('*'))
                e = e * unary();
            else if (eat('/'))
                e = e / unary();
            else
                return e;
        }
    }
    Expr unary()
    {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }
    Expr power()
    {
        Expr base = primary();
        if (!eat('^'))
            return base;
        bool paren = eat('(');
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer exponent");
        long k = std::stol(s_.substr(start, pos_ - start));
        if (paren && !eat(')'))
            fail("expected ')'");
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Pow;
        n->lhs = base;
        n->exponent = neg ? -k : k;
        if (is_const(base) && !(base->value == 0 && k != 0 && neg))
            return constant(ipow(base->value, n->exponent));
        return n;
    }
    Expr primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
                ++pos_;
            try {
                return constant(parse_rational(s_.substr(start, pos_ - start)));
            } catch (const ParseError&) {
                pos_ = start;
                fail("bad number");
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "t")
                return parameter();
            if (id == "sqrt" || id == "log") {
                if (!eat('('))
                    fail("expected '(' after " + id);
                Expr arg = sum();
                if (!eat(')'))
                    fail("expected ')'");
                return make(id == "sqrt" ? ExprNode::Sqrt : ExprNode::Log, arg);
            }
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::optional<Rational> exact_sqrt(const Rational& q)
{
    if (q < 0)
        return std::nullopt;
    Integer n = numerator(q), d = denominator(q);
    Integer rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d)
        return std::nullopt;
    return Rational(rn, rd);
}

} // namespace

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

Expr constant(const Rational& q)
{
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Const;
    n->value = q;
    return n;
}

Expr parameter() { return make(ExprNode::Param); }

Expr operator+(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b))
        return constant(a->value + b->value);
    if (is_const(a) && a->value == 0)
        return b;
    if (is_const(b) && b->value == 0)
        return a;
    return make(ExprNode::Add, a, b);
}
Expr operator-(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b))
        return constant(a->value - b->value);
    return make(ExprNode::Sub, a, b);
}
Expr operator*(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b))
        return constant(a->value * b->value);
    if ((is_const(a) && a->value == 0) || (is_const(b) && b->value == 0))
        return constant(Rational(0));
    if ((is_const(a) && a->value == 1))
        return b;
    if ((is_const(b) && b->value == 1))
        return a;
    return make(ExprNode::Mul, a, b);
}
Expr operator/(const Expr& a, const Expr& b)
{
    if (is_const(a) && is_const(b) && b->value != 0)
        return constant(a->value / b->value);
    return make(ExprNode::Div, a, b);
}
Expr operator-(const Expr& a)
{
    if (is_const(a))
        return constant(-a->value);
    return make(ExprNode::Neg, a);
}

std::string print(const Expr& e)
{
    switch (e->kind) {
    case ExprNode::Const: return "(" + e->value.str() + ")";
    case ExprNode::Param: return "t";
    case ExprNode::Add: return "(" + print(e->lhs) + " + " + print(e->rhs) + ")";
    case ExprNode::Sub: return "(" + print(e->lhs) + " - " + print(e->rhs) + ")";
    case ExprNode::Mul: return "(" + print(e->lhs) + " * " + print(e->rhs) + ")";
    case ExprNode::Div: return "(" + print(e->lhs) + " / " + print(e->rhs) + ")";
    case ExprNode::Neg: return "(-" + print(e->lhs) + ")";
    case ExprNode::Pow: return "(" + print(e->lhs) + "^(" + std::to_string(e->exponent) + "))";
    case ExprNode::Sqrt: return "sqrt(" + print(e->lhs) + ")";
    case ExprNode::Log: return "log(" + print(e->lhs) + ")";
    }
    return "?";
}

bool depends_on_t(const Expr& e)
{
    if (!e)
        return false;
    if (e->kind == ExprNode::Param)
        return true;
    return depends_on_t(e->lhs) || depends_on_t(e->rhs);
}

std::optional<Rational> try_rational(const Expr& e, const Rational& t)
{
    auto sub = [&](const Expr& x) { return try_rational(x, t); };
    switch (e->kind) {
    case ExprNode::Const: return e->value;
    case ExprNode::Param: return t;
    case ExprNode::Neg: {
        auto a = sub(e->lhs);
        if (!a)
            return std::nullopt;
        return Rational(-*a);
    }
    case ExprNode::Pow: {
        auto a = sub(e->lhs);
        if (!a || (*a == 0 && e->exponent < 0))
            return std::nullopt;
        return ipow(*a, e->exponent);
    }
    case ExprNode::Sqrt: {
        auto a = sub(e->lhs);
        return a ? exact_sqrt(*a) : std::nullopt;
    }
    case ExprNode::Log: {
        auto a = sub(e->lhs);
        if (a && *a == 1)
            return Rational(0);
        return std::nullopt;
    }
    default: break;
    }
    auto a = sub(e->lhs), b = sub(e->rhs);
    if (!a || !b)
        return std::nullopt;
    switch (e->kind) {
    case ExprNode::Add: return *a + *b;
    case ExprNode::Sub: return *a - *b;
    case ExprNode::Mul: return *a * *b;
    case ExprNode::Div:
        if (*b == 0)
            return std::nullopt;
        return *a / *b;
    default: return std::nullopt;
    }
}

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (!a || !b)
        return !a && !b;
    if (a->kind != b->kind)
        return false;
    if (a->kind == ExprNode::Const && a->value != b->value)
        return false;
    if (a->kind == ExprNode::Pow && a->exponent != b->exponent)
        return false;
    return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

} // namespace lyap
