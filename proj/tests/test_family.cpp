#include "fixtures.hpp"

#include <doctest.h>

using namespace lyap;

TEST_CASE("parse and evaluate")
{
    PrecisionScope ps(128);
    Expr e = parse_expr("sqrt(3)/(2*t^2)");
    Real v = eval(e, Real(3));
    CHECK(near(v, sqrt(Real(3)) / 18, pow2(-120)));

    Expr p = parse_expr("1/2 + (t - 3)");
    CHECK(try_rational(p, Rational(3)) == Rational(1, 2));
    CHECK(try_rational(p, Rational(7, 2)) == Rational(1));

    try {
        parse_expr("1/(t");
        FAIL("no parse error");
    } catch (const ParseError& err) {
        CHECK(err.offset == 4);
    }
    CHECK_THROWS_AS(parse_expr("2*u"), ParseError);
    CHECK_THROWS_AS(eval(parse_expr("1/(t-3)"), Real(3)), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("log(t-3)"), Real(3)), DomainError);
}

TEST_CASE("precedence")
{
    CHECK(try_rational(parse_expr("-2^2"), Rational(0)) == Rational(-4));
    CHECK(try_rational(parse_expr("2*3+4/2"), Rational(0)) == Rational(8));
    CHECK(try_rational(parse_expr("2^-1"), Rational(0)) == Rational(1, 2));
}

TEST_CASE("print round trip")
{
    for (const char* s : {"sqrt(3)/(2*t^2)", "1/2 + (t - 3)", "-(t*t - 1)/log(t)", "t^-2*3/4"}) {
        Expr e = parse_expr(s);
        CHECK(structurally_equal(parse_expr(print(e)), e));
    }
}

TEST_CASE("jet evaluation")
{
    PrecisionScope ps(128);
    {
        JetOrderScope q(2);
        Jet<Real> t = Jet<Real>::variable(Real(3));
        Jet<Real> r = eval(parse_expr("t*t"), t);
        CHECK(r[0] == 9);
        CHECK(r[1] == 6);
        CHECK(r[2] == 1);
    }
    JetOrderScope q(1);
    Jet<Real> t = Jet<Real>::variable(Real(3));
    Jet<Real> p = eval(parse_expr("1/2 + (t - 3)"), t);
    CHECK(p[0] == Real(0.5));
    CHECK(p[1] == 1);
    // f(0) of the (xy, xy) state: -1/(9 t^2)
    Jet<Real> f0 = eval(parse_expr("-t^2/(9*t^4)"), t);
    CHECK(near(f0[0], Real(-1) / 81, pow2(-120)));
    CHECK(near(f0[1], Real(2) / 243, pow2(-120)));
}

TEST_CASE("jet series against symbolic derivatives")
{
    PrecisionScope ps(128);
    JetOrderScope q(4);
    // (2t^3 - t + 5)^2 = 4t^6 - 4t^4 + 20t^3 + t^2 - 10t + 25 at t0 = 1/2
    Real t0(0.5);
    Jet<Real> j = eval(parse_expr("(2*t^3 - t + 5)^2"), Jet<Real>::variable(t0));
    auto poly = [](const std::vector<Real>& c, const Real& x) {
        Real s(0);
        for (std::size_t k = c.size(); k-- > 0;)
            s = s * x + c[k];
        return s;
    };
    std::vector<Real> c{25, -10, 1, 20, -4, 0, 4};
    Real fact(1);
    for (int k = 0; k <= 4; ++k) {
        CHECK(near(j[k] * fact, poly(c, t0), pow2(-110)));
        std::vector<Real> d;
        for (std::size_t i = 1; i < c.size(); ++i)
            d.push_back(c[i] * Real(static_cast<int>(i)));
        c = d;
        fact *= k + 1;
    }
}

TEST_CASE("jet linear solve")
{
    PrecisionScope ps(128);
    JetOrderScope q(3);
    using J = Jet<Real>;
    J t = J::variable(Real(0));
    Matrix<J> M(2, 2);
    M << J(1), J(0), J(0), J(1);
    Vector<J> b(2);
    b << t, J(5);
    Vector<J> x = solve_linear<J>(M, b);
    CHECK(x(0) == t);
    CHECK(x(1) == J(5));

    Matrix<J> A(1, 1);
    A(0, 0) = J(2) + t;
    Vector<J> one(1);
    one(0) = J(1);
    Vector<J> y = solve_linear<J>(A, one);
    CHECK(y(0)[0] == Real(0.5));
    CHECK(y(0)[1] == Real(-0.25));
    CHECK(y(0)[2] == Real(0.125));
}

TEST_CASE("jet stationary vector of the two-step family")
{
    // pi = (p^2, p(1-p), p(1-p), (1-p)^2) on the four lifted states
    PrecisionScope ps(192);
    JetOrderScope q(1);
    auto spec = load_fixture("example2.json");
    auto plan = plan_lift(spec);
    auto ls = instantiate(spec, plan, Jet<Real>::variable(Real(3)));
    REQUIRE(ls.size() == 4);
    Real sum0(0), sum1(0);
    for (int r = 0; r < 4; ++r) {
        CHECK(near(ls.pi(r)[0], Real(0.25), pow2(-180)));
        sum0 += ls.pi(r)[0];
        sum1 += ls.pi(r)[1];
    }
    CHECK(near(sum0, Real(1), pow2(-180)));
    CHECK(abs(sum1) <= pow2(-180));
    // derivatives: 2p p' = 1, (1-2p) p' = 0, -2(1-p) p' = -1, in some state order
    std::vector<Real> d;
    for (int r = 0; r < 4; ++r)
        d.push_back(ls.pi(r)[1]);
    std::sort(d.begin(), d.end());
    CHECK(near(d[0], Real(-1), pow2(-180)));
    CHECK(abs(d[1]) <= pow2(-180));
    CHECK(abs(d[2]) <= pow2(-180));
    CHECK(near(d[3], Real(1), pow2(-180)));
    // pi Q - pi vanishes as a jet
    for (int s = 0; s < 4; ++s) {
        Jet<Real> acc(0);
        for (int r = 0; r < 4; ++r)
            acc += ls.pi(r) * ls.Q(r, s);
        acc -= ls.pi(s);
        CHECK(abs(acc[0]) <= pow2(24 - 192));
        CHECK(abs(acc[1]) <= pow2(24 - 192));
    }
}
