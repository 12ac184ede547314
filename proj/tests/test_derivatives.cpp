#include "fixtures.hpp"

#include <doctest.h>

using namespace lyap;

using Q = Rational;

namespace {

struct Family {
    SystemSpec spec;
    LiftPlan plan;
    Family() : spec(load_fixture("example2.json")), plan(plan_lift(spec)) {}
};

} // namespace

TEST_CASE("Omega conditions of the two-step family")
{
    PrecisionScope ps(128);
    Family f;
    auto rep = check_omega(f.spec, f.plan, Q(3), to_real(Q(1, 5)), to_real(Q(1, 20)));
    CHECK(rep.ok());
    Real maxf = to_real(Q(10525, 213444));
    CHECK(rep.max_f <= to_real(Q(1, 20)));
    CHECK(abs(rep.max_f - maxf) < Real(1e-3) * maxf);
    Real Qbar = sqrt(Real(29)) / 5;
    CHECK(abs(rep.max_row_sum - Qbar) < Real(1e-3) * Qbar);
    CHECK(rep.max_row_sum <= Qbar * (1 + pow2(-100)));
}

TEST_CASE("Omega maxima of a constant family")
{
    PrecisionScope ps(128);
    auto spec = load_fixture("example1.json");
    auto plan = plan_lift(spec);
    auto rep = check_omega(spec, plan, Q(0), Real(0.1), Real(0.9));
    auto ls = instantiate(spec, plan, Real(0));
    CHECK(near(rep.max_row_sum, Real(1), pow2(-100)));
    CHECK(near(rep.max_transpose, transpose_bound(ls), pow2(-100)));
    CHECK(near(rep.max_sum_pi, Real(1), pow2(-100)));
    CHECK(near(rep.min_pi, Real(1) / 12, pow2(-100)));
}

TEST_CASE("Omega data from options")
{
    PrecisionScope ps(192);
    Family f;
    auto w = omega_from_options(f.spec, f.plan, false);
    CHECK(w.provenance == "user-certified");
    CHECK(near(w.k.Qbar, sqrt(Real(29)) / 5, pow2(-180)));
    CHECK(w.k.mpi == to_real(Q(9, 100)));

    auto bare = f.spec;
    bare.options.omega_constants.reset();
    CHECK_THROWS_AS(omega_from_options(bare, f.plan, false), ValidationError);
    auto est = omega_from_options(bare, f.plan, true);
    CHECK(est.provenance == "boundary-estimated");

    auto wide = f.spec;
    wide.options.omega_constants->at("Qbar") = "30";
    CHECK_THROWS_AS(omega_from_options(wide, f.plan, false), ValidationError);
}

TEST_CASE("derivative series")
{
    PrecisionScope ps(192);
    Family f;
    auto a = derivative_series(f.spec, f.plan, Q(3), 0, 20, 20);
    auto ls = instantiate(f.spec, f.plan, Real(3));
    CHECK(a[0] == partial_sum(ls, 20, 20));

    auto a10 = derivative_series(f.spec, f.plan, Q(3), 10, 25, 26);
    CHECK(abs(a10[1] - parse_real("0.33334463276727235751442614547568")) < parse_real("1e-30"));
    CHECK(abs(a10[2] - parse_real("-0.0639419036457356072034216310930")) < parse_real("1e-30"));
    for (int j : {1, 3, 6}) {
        auto aj = derivative_series(f.spec, f.plan, Q(3), j, 25, 26);
        CHECK(abs(aj[j] - a10[j]) <= pow2(24 - 192));
    }

    auto iv = derivative_series_interval(f.spec, f.plan, Q(3), 2, 25, 26);
    for (int j = 0; j <= 2; ++j)
        CHECK(abs(iv[j].mid() - a10[j]) <= iv[j].rad() + pow2(-150));
}

TEST_CASE("Cauchy bound")
{
    PrecisionScope ps(192);
    Family f;
    auto w = omega_from_options(f.spec, f.plan, false);
    Real K = k_rho(w.rho_bar);
    const auto& k = w.k;
    for (int q : {0, 1, 3}) {
        Real qf(1);
        for (int j = 2; j <= q; ++j)
            qf *= j;
        Real expect = qf * k.Qbar / (pow(w.c, q) * 2) * k.Msum_pi * k.Ml * artanh_checked(w.rho_bar) /
                      (1 - w.rho_bar * k.Qbar);
        CHECK(near(derivative_error_bound(w, 2, q, 1, 2, K), expect, pow2(-170) * expect));
        CHECK(derivative_error_bound(w, 2, q, 90, 90, K) / qf < parse_real("1e-65"));
    }
    // at q = 0 the scalar bound is sharper
    auto ls = instantiate(f.spec, f.plan, Real(3));
    auto c = bound_constants(ls, false);
    for (int n : {5, 10, 20})
        CHECK(error_bound(c, n, n) < derivative_error_bound(w, 2, 0, n, n, K));
}

TEST_CASE("Taylor coefficients of a constant family")
{
    PrecisionScope ps(128);
    auto spec = parse_system(R"({"alphabet": ["a", "b"],
        "matrices": {"a": [["2", "1"], ["1", "1"]], "b": [["1", "1"], ["1", "3"]]},
        "transition": [["1/2", "1/2"], ["1/2", "1/2"]],
        "multicone": {"a": [["0", "inf"]], "b": [["0", "inf"]]},
        "parameter": {"t0": "0"}, "options": {"disk_radius": "1/10"}})");
    auto plan = plan_lift(spec);
    auto w = omega_from_options(spec, plan, true);
    auto t = taylor(spec, plan, 3, parse_real("1e-10"), w);
    CHECK(t.rigor() == "conditionally rigorous");
    for (int j = 1; j <= 3; ++j) {
        CHECK(t.certified(j));
        CHECK(abs(t.coefficients[j]) <= t.bounds[j] + t.allowances[j]);
    }
}

TEST_CASE("first-order bound")
{
    PrecisionScope ps(128);
    FirstOrderConstants z;
    z.m_pi = Real(0.25);
    z.M_pi1 = z.M_sum_pi1 = z.M_Q1 = z.M_T1 = z.M_f1 = Real(0);
    z.M_l2 = z.M_l22 = z.M_l12 = z.M_g12 = z.M_g22 = Real(0);
    z.rho = Real(0.5);
    z.rho_bar = Real(0.75);
    z.D = Real(0.5);
    auto t0 = first_order_bound(z, 30, 30);
    CHECK(t0.total == 0);

    Family f;
    auto k = estimate_first_order_constants(f.spec, f.plan, Q(3), to_real(Q(1, 20)));
    k.d = 2;
    Real prev = first_order_bound(k, 10, 10).total;
    CHECK(prev > 0);
    for (int n : {20, 40, 80}) {
        Real b = first_order_bound(k, n, n).total;
        CHECK(b < prev);
        prev = b;
    }
    CHECK(prev < parse_real("1e-20"));
}
