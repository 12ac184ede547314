#include "fixtures.hpp"

#include <doctest.h>

using namespace lyap;

using Q = Rational;

TEST_CASE("validation")
{
    Matrix<Q> P(2, 2);
    P << Q(1, 2), Q(1, 2), 0, 0;
    CHECK_THROWS_AS(validate_stochastic(P, {"a", "b"}), ValidationError);
    Matrix<Q> one(1, 1);
    one << 1;
    CHECK_NOTHROW(validate_stochastic(one, {"a"}));

    auto spec = load_fixture("example1.json");
    Matrix<Q> P1 = evaluate_transition(spec, Q(0));
    CHECK_NOTHROW(validate_stochastic(P1, spec.alphabet));
    CHECK_NOTHROW(require_irreducible(support_of(P1), spec.alphabet));
    CHECK(period(support_of(P1)) == 1);
}

TEST_CASE("period")
{
    CHECK(period(Digraph{{1}, {2}, {0}}) == 3);
    CHECK(period(Digraph{{0, 1}, {0}}) == 1);
    auto spec = load_fixture("example2_base.json");
    Matrix<Q> P = evaluate_transition(spec, Q(3));
    CHECK(period(support_of(P)) == 2);
    try {
        require_irreducible(Digraph{{0}, {1}}, {"a", "b"});
        FAIL("reducible accepted");
    } catch (const ValidationError& e) {
        std::string w = e.what();
        CHECK(w.find("a") != std::string::npos);
        CHECK(w.find("b") != std::string::npos);
    }
}

TEST_CASE("stationary vectors")
{
    Matrix<Q> C(3, 3);
    C << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    Vector<Q> pi = stationary(C, 0);
    for (int i = 0; i < 3; ++i)
        CHECK(pi(i) == Q(1, 3));

    auto spec = load_fixture("example1.json");
    auto plan = plan_lift(spec);
    auto ls = instantiate(spec, plan, Q(0));
    REQUIRE(ls.size() == 12);
    for (int r = 0; r < 12; ++r)
        CHECK(ls.pi(r) == Q(1, 12));
    // projection onto letters recovers the base stationary vector
    Vector<Q> p = stationary(evaluate_transition(spec, Q(0)), 0);
    for (int i = 0; i < 4; ++i) {
        Q s(0);
        for (int r = 0; r < 12; ++r)
            if (plan.branches.states[plan.C[r]].i == i)
                s += ls.pi(r);
        CHECK(s == p(i));
    }

    auto spec2 = load_fixture("example2.json");
    auto plan2 = plan_lift(spec2);
    PrecisionScope ps(128);
    auto ls2 = instantiate(spec2, plan2, Real(3));
    for (int r = 0; r < 4; ++r)
        CHECK(near(ls2.pi(r), Real(0.25), pow2(16 - 128)));
}

TEST_CASE("stationary residual in floating point")
{
    PrecisionScope ps(128);
    Matrix<Real> P(3, 3);
    auto r = [](int n) { return to_real(Q(n, 10)); };
    P << r(2), r(5), r(3), r(6), r(0), r(4), r(1), r(1), r(8);
    Vector<Real> pi = stationary(P, 0);
    Eigen::Matrix<Real, 1, Eigen::Dynamic> res = pi.transpose() * P - pi.transpose();
    for (int i = 0; i < 3; ++i)
        CHECK(abs(res(i)) <= pow2(16 - 128));
    CHECK(near(pi.sum(), Real(1), pow2(16 - 128)));
}

TEST_CASE("base-chain reduction")
{
    auto base = load_fixture("example2_base.json");
    SystemSpec r = reduce_base(base);
    CHECK(r.alphabet == std::vector<std::string>{"xy", "Xy"});
    CHECK(r.base_period == 2);
    for (int a = 0; a < 2; ++a) {
        CHECK(try_rational(r.transition[a][0], Q(3)) == Q(1, 2));
        CHECK(try_rational(r.transition[a][1], Q(3)) == Q(1, 2));
        CHECK(try_rational(r.transition[a][0], Q(13, 4)) == Q(3, 4));
    }
    // block (x, y) carries A_y A_x
    PrecisionScope ps(128);
    Real t(3.1);
    auto A = evaluate_matrices(base, t);
    auto B = evaluate_matrices(r, t);
    Mat2<Real> expect = A[2] * A[0];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(near(B[0](i, j), expect(i, j), pow2(-120)));

    SystemSpec same = reduce_base(load_fixture("example1.json"));
    CHECK(same.alphabet.size() == 4);
    CHECK(same.base_period == 1);

    SystemSpec bad = load_fixture("diagonal.json");
    bad.alphabet = {"a", "b"};
    bad.matrices.push_back(bad.matrices[0]);
    bad.transition = {{constant(Q(1)), constant(Q(0))}, {constant(Q(0)), constant(Q(1))}};
    CHECK_THROWS_AS(reduce_base(bad), ValidationError);
}

TEST_CASE("accelerated blocks are aperiodic and stochastic")
{
    Digraph g{{1, 2}, {3}, {3}, {0}};  // period 3
    int d = period(g);
    REQUIRE(d == 3);
    auto blocks = block_paths(g, d, 0);
    Digraph bg = block_graph(g, blocks);
    CHECK(period(bg) == 1);
    Matrix<Q> P = Matrix<Q>::Zero(4, 4);
    P(0, 1) = Q(1, 3);
    P(0, 2) = Q(2, 3);
    P(1, 3) = 1;
    P(2, 3) = 1;
    P(3, 0) = 1;
    Matrix<Q> Pt = block_transition(P, blocks);
    for (int a = 0; a < Pt.rows(); ++a)
        CHECK(Pt.row(a).sum() == 1);
}
