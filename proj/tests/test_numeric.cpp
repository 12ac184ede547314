#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace lyap;

TEST_CASE("to_real rounding")
{
    PrecisionScope ps(53);
    CHECK(to_real(Rational(1, 2)) == Real(0.5));
    Real third = to_real(Rational(1, 3));
    CHECK(abs(Rational(third.convert_to<Rational>()) - Rational(1, 3)) <= Rational(1, 3) * Rational(1, Integer(1) << 52));

    set_precision(128);
    Real rho = to_real(Rational(279, 359));
    CHECK(to_string(rho, 6).rfind("7.77158", 0) == 0);
}

TEST_CASE("artanh")
{
    PrecisionScope ps(200);
    CHECK(artanh_checked(Real(0)) == 0);
    // independent: log(3)/2 straight from MPFR
    mpfr_t l3;
    mpfr_init2(l3, 260);
    mpfr_set_ui(l3, 3, MPFR_RNDN);
    mpfr_log(l3, l3, MPFR_RNDN);
    mpfr_div_2ui(l3, l3, 1, MPFR_RNDN);
    Real ref;
    mpfr_set(ref.backend().data(), l3, MPFR_RNDN);
    mpfr_clear(l3);
    CHECK(near(artanh_checked(Real(0.5)), ref, pow2(-195)));
    CHECK(near(artanh_checked(Real(tanh(Real(1)))), Real(1), pow2(-190)));
    CHECK_THROWS_AS(artanh_checked(Real(1)), DomainError);
    CHECK_THROWS_AS(artanh_checked(Real(-2)), DomainError);
}

TEST_CASE("rational arithmetic is exact")
{
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> num(-1000, 1000), den(1, 1000);
    for (int k = 0; k < 200; ++k) {
        Rational a(num(gen), den(gen)), b(num(gen), den(gen));
        CHECK((a + b) - b == a);
        if (b != 0)
            CHECK((a * b) / b == a);
    }
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK(parse_rational("-3e-2") == Rational(-3, 100));
}

TEST_CASE("hyperbolic distance is a metric")
{
    PrecisionScope ps(128);
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> u(-0.999, 0.999);
    auto dh = [](const Real& x, const Real& y) { return 2 * abs(artanh_checked(x) - artanh_checked(y)); };
    for (int k = 0; k < 200; ++k) {
        Real x(u(gen)), y(u(gen)), z(u(gen));
        CHECK(dh(x, y) == dh(y, x));
        CHECK(dh(x, z) <= dh(x, y) + dh(y, z) + pow2(-120));
    }
}

TEST_CASE("precision round trip of a pipeline quantity")
{
    auto spec = load_fixture("example1.json");
    auto plan = plan_lift(spec);
    auto value_at = [&](unsigned p) {
        PrecisionScope ps(p);
        auto ls = instantiate(spec, plan, to_real(spec.base_point()));
        return bound_constants(ls, false).EC;
    };
    Real a = value_at(128), b = value_at(256);
    PrecisionScope ps(128);
    CHECK(abs(a - b) <= pow2(8 - 128) * abs(b));
}
