#include "fixtures.hpp"

#include <doctest.h>

using namespace lyap;

using Q = Rational;

TEST_CASE("branch system of the reduced-word example")
{
    auto spec = load_fixture("example1.json");
    auto plan = plan_lift(spec);
    CHECK(plan.branches.states.size() == 12);
    CHECK(plan.branches.classes.size() == 1);
    CHECK(plan.C.size() == 12);
    CHECK(plan.lift_period == 1);
    // unique lift step
    auto P = evaluate_transition(spec, Q(0));
    for (int x = 0; x < 12; ++x)
        for (int k = 0; k < 4; ++k) {
            if (P(plan.branches.states[x].j, k) == 0)
                continue;
            int count = 0;
            for (int y : plan.branches.graph[x])
                count += plan.branches.states[y].j == k;
            CHECK(count == 1);
        }
}

TEST_CASE("multicone failures")
{
    // the i.i.d. walk on four letters with the same intervals
    auto spec = load_fixture("example1.json");
    for (auto& row : spec.transition)
        for (auto& e : row)
            e = constant(Q(1, 4));
    try {
        plan_lift(spec);
        FAIL("multicone accepted");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("(x,1,X)") != std::string::npos);
    }

    auto broken = load_fixture("broken_multicone.json");
    CHECK_THROWS_AS(plan_lift(broken), ValidationError);

    auto degenerate = load_fixture("diagonal.json");
    degenerate.multicone[0][0].q = degenerate.multicone[0][0].p;
    CHECK_THROWS_AS(plan_lift(degenerate), ValidationError);
}

TEST_CASE("two-step family and trivial systems")
{
    auto plan = plan_lift(load_fixture("example2.json"));
    CHECK(plan.branches.states.size() == 4);
    CHECK(plan.C.size() == 4);

    auto diag = plan_lift(load_fixture("diagonal.json"));
    CHECK(diag.branches.states.size() == 1);
    CHECK(diag.branches.graph[0] == std::vector<int>{0});
}

TEST_CASE("class selection")
{
    // two letters, each a sink with its own self-loop, reached from a transient letter
    BranchSystem B;
    B.states = {{0, 0, 0, 0}, {1, 0, 1, 0}, {2, 0, 0, 0}};
    B.graph = {{0}, {1}, {0, 1}};
    B.classes = sink_components(B.graph);
    REQUIRE(B.classes.size() == 2);
    CHECK(select_class(B, std::nullopt) == std::vector<int>{0});
    CHECK(select_class(B, 1) == std::vector<int>{1});
    CHECK_THROWS_AS(select_class(B, 2), ValidationError);
}
