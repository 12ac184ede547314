#include "fixtures.hpp"
#include "lyap/complex.hpp"

#include <doctest.h>

#include <random>

using namespace lyap;

using Q = Rational;

namespace {

Mat2<Q> random_matrix(std::mt19937& gen, int lo, int hi)
{
    std::uniform_int_distribution<int> num(lo, hi), den(1, 9);
    for (;;) {
        Mat2<Q> m = mat2<Q>(Q(num(gen), den(gen)), Q(num(gen), den(gen)), Q(num(gen), den(gen)), Q(num(gen), den(gen)));
        if (det2(m) != 0)
            return m;
    }
}

Arc<Q> slope_arc(const Q& p, const Q& q)
{
    Mat2<Q> f;
    f << p, q, 1, 1;
    if (p > q)
        f.col(1) = -f.col(1);
    return Arc<Q>{f};
}

} // namespace

TEST_CASE("F conjugation")
{
    Mat2<Q> I = Mat2<Q>::Identity();
    CHECK(f_conjugate(I) == I);
    Mat2<Q> m = mat2<Q>(1, 0, 1, 4);
    CHECK(f_conjugate(m) == mat2<Q>(2, -2, -1, 3));
}

TEST_CASE("Mobius evaluation and derivative")
{
    auto id = Mobius<Q>::identity();
    CHECK(mobius_eval(id, Q(3, 10)) == Q(3, 10));
    CHECK(id.transpose().alpha == 1);
    CHECK(id.transpose().beta == 0);
    CHECK(id.derivative_at(Q(7)) == 1);
    Mobius<Q> inv{0, 1, 1, 0};
    CHECK(inv.derivative_at(Q(2)) == Q(-1, 4));
    CHECK_THROWS_AS(mobius_eval(inv, Q(0)), PoleError);

    Mobius<Q> sym{2, 5, 5, 7};
    auto t = sym.transpose();
    CHECK((t.alpha == sym.alpha && t.beta == sym.beta && t.gamma == sym.gamma && t.delta == sym.delta));
}

TEST_CASE("the (xy, xy) map of the two-step family")
{
    // f(u) = (9u - t^2)/(9 t^2 (3u + t^2)); at t = 3: (9u - 9)/(81(3u + 9))
    auto spec = load_fixture("example2.json");
    auto plan = plan_lift(spec);
    PrecisionScope ps(192);
    auto ls = instantiate(spec, plan, Real(3));
    int r = -1;
    for (int k = 0; k < ls.size(); ++k)
        if (ls.labels[k] == "xy1>xy1")
            r = k;
    REQUIRE(r >= 0);
    for (double u : {-0.7, 0.0, 0.4, 1.0}) {
        Real x(u);
        Real expect = (9 * x - 9) / (81 * (3 * x + 9));
        CHECK(near(ls.f[r](x), expect, pow2(-180)));
    }
    CHECK(near(ls.at_zero(r), Real(-1) / 81, pow2(-180)));
    // d/du (9u - 9)/(81(3u + 9)) at 0 = (9*9 + 9*3)/(81*81)
    CHECK(near(ls.derivative_at_zero(r), Real(108) / 6561, pow2(-180)));
}

TEST_CASE("chart psi")
{
    auto p0 = chart_psi(Q(0));
    CHECK(p0.v(0) == p0.v(1));
    auto p1 = chart_psi(Q(1));
    CHECK(p1.v(1) == 0);
    auto pm = chart_psi(Q(-1));
    CHECK(pm.v(0) == 0);
    CHECK(chart_psi_inv(chart_psi(Q(3, 7))) == Q(3, 7));
    ProjPoint<Q> bad;
    bad.v << 1, -1;
    CHECK_THROWS_AS(chart_psi_inv(bad), PoleError);
}

TEST_CASE("arc membership")
{
    Arc<Q> cone{Mat2<Q>::Identity()};
    CHECK(arc_contains(cone, ProjPoint<Q>::slope(1), true));
    Arc<Q> Mx = slope_arc(Q(-5, 12), Q(31, 30));
    CHECK(arc_contains(Mx, ProjPoint<Q>::slope(Q(-5, 43)), true));
    CHECK_FALSE(arc_contains(Mx, ProjPoint<Q>::slope(2), false));
    CHECK_FALSE(arc_contains(Mx, ProjPoint<Q>::infinity(), false));
}

TEST_CASE("strict image containment")
{
    Arc<Q> cone{Mat2<Q>::Identity()};
    CHECK(strict_image_containment(cone, mat2<Q>(1, 2, 3, 4), cone) == 1);

    Mat2<Q> Lx;
    Lx << Q(-5, 12), Q(93, 200), 1, Q(9, 20);
    Arc<Q> Mx{Lx};
    auto s = strict_image_containment(Mx, mat2<Q>(1, 0, 1, 4), Mx);
    CHECK(s.has_value());

    Arc<Q> wider = slope_arc(Q(-1), Q(2));
    CHECK_FALSE(strict_image_containment(Mx, Mat2<Q>(Mat2<Q>::Identity()), wider).has_value());
}

TEST_CASE("containment agrees with sampled images")
{
    std::mt19937 gen(3);
    std::uniform_int_distribution<int> sl(-20, 20);
    int hits = 0;
    for (int k = 0; k < 300; ++k) {
        Q p(sl(gen), 4), q(sl(gen), 4);
        if (p == q)
            continue;
        Arc<Q> src = slope_arc(p, q);
        Q a(sl(gen), 3), b(sl(gen), 3);
        if (a == b)
            continue;
        Arc<Q> tgt = slope_arc(a, b);
        Mat2<Q> m = random_matrix(gen, -6, 6);
        bool ok = strict_image_containment(tgt, m, src).has_value();
        // exact oracle: both endpoint images strictly inside, and a point of
        // the complement of the target not on the image arc
        Vec2<Q> u = m * src.frame.col(0), v = m * src.frame.col(1), mid = m * (src.frame.col(0) + src.frame.col(1));
        Vec2<Q> outside = tgt.frame.col(0) - tgt.frame.col(1);
        bool inside = arc_contains(tgt, ProjPoint<Q>{u}, true) && arc_contains(tgt, ProjPoint<Q>{v}, true) &&
                      !arc_contains(Arc<Q>{Mat2<Q>(m * src.frame)}, ProjPoint<Q>{outside}, false);
        if (ok)
            CHECK(arc_contains(tgt, ProjPoint<Q>{mid}, true));
        CHECK(ok == inside);
        hits += ok;
    }
    CHECK(hits > 0);
}

TEST_CASE("projective action in the simplex chart is the F Mobius map")
{
    std::mt19937 gen(5);
    std::uniform_int_distribution<int> x(-9, 9);
    for (int k = 0; k < 100; ++k) {
        Mat2<Q> m = random_matrix(gen, -5, 5);
        Q u(x(gen), 10);
        Vec2<Q> img = m * chart_psi(u).v;
        if (img(0) + img(1) == 0)
            continue;
        auto f = Mobius<Q>::from_mat(f_conjugate(m));
        if (f.denominator(u) == 0)
            continue;
        CHECK(chart_psi_inv(ProjPoint<Q>{img}) == mobius_eval(f, u));
    }
}

TEST_CASE("contraction lemmas for positive matrices")
{
    PrecisionScope ps(128);
    std::mt19937 gen(9);
    for (int k = 0; k < 60; ++k) {
        Mat2<Q> m = random_matrix(gen, 1, 9);
        auto f = Mobius<Q>::from_mat(f_conjugate(m));
        // gamma x + delta > 0 on [-1, 1]
        CHECK(f.denominator(Q(-1)) > 0);
        CHECK(f.denominator(Q(1)) > 0);
        Q rho = std::max(abs(mobius_eval(f, Q(-1))), abs(mobius_eval(f, Q(1))));
        CHECK(rho < 1);
        CHECK(abs(f.gamma / f.delta) < 1);
        // |f(z)| <= rho on the unit circle
        Mobius<Complex<Real>> fc{Complex<Real>(to_real(f.alpha)), Complex<Real>(to_real(f.beta)),
                                 Complex<Real>(to_real(f.gamma)), Complex<Real>(to_real(f.delta))};
        Real worst(0);
        const Real pi = boost::math::constants::pi<Real>();
        for (int j = 0; j < 256; ++j) {
            Real th = 2 * pi * j / 256;
            worst = std::max(worst, abs(fc(Complex<Real>(cos(th), sin(th)))));
        }
        CHECK(worst <= to_real(rho) * (1 + pow2(-100)));
        // grid never exceeds the endpoint maximum
        for (int j = 0; j <= 100; ++j)
            CHECK(abs(mobius_eval(f, Q(2 * j - 100, 100))) <= rho);
    }
}
