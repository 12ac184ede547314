#pragma once

#include "lyap/numeric.hpp"

#include <Eigen/Core>
#include <optional>

namespace lyap {

template <class S> using Mat2 = Eigen::Matrix<S, 2, 2>;
template <class S> using Vec2 = Eigen::Matrix<S, 2, 1>;

template <class S>
Mat2<S> mat2(const S& a, const S& b, const S& c, const S& d)
{
    Mat2<S> m;
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

template <class S> S det2(const Mat2<S>& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

// Largest entry magnitude, used as the scale of relative sign tests.
template <class S> Real scale_of(const Mat2<S>& m)
{
    Real s(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s = std::max(s, abs(Num<S>::real(m(i, j))));
    return s;
}

template <class S>
Mat2<S> inverse2(const Mat2<S>& m)
{
    S det = det2(m);
    bool singular;
    if constexpr (is_complex_scalar<S>::value)
        singular = Num<S>::mag(det) == 0;
    else
        singular = Num<S>::sign(det, scale_of(m) * scale_of(m)) == 0;
    if (singular)
        throw SingularError("2x2 matrix");
    return mat2<S>(m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det);
}

// Conjugation by the simplex chart: the projective action of m read in the
// coordinate x = (v1 - v2)/(v1 + v2).
template <class S>
Mat2<S> f_conjugate(const Mat2<S>& m)
{
    const S &a = m(0, 0), &b = m(0, 1), &c = m(1, 0), &d = m(1, 1);
    S h = Num<S>::from(Rational(1, 2));
    return mat2<S>(h * (a - b - c + d), h * (a + b - c - d),
                   h * (a - b + c - d), h * (a + b + c + d));
}

// x -> (alpha x + beta)/(gamma x + delta)
template <class S>
struct Mobius {
    S alpha, beta, gamma, delta;

    static Mobius identity() { return {S(1), S(0), S(0), S(1)}; }
    static Mobius from_mat(const Mat2<S>& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }
    Mat2<S> mat() const { return mat2(alpha, beta, gamma, delta); }

    S denominator(const S& x) const { return gamma * x + delta; }

    template <class X> X operator()(const X& x) const
    {
        X den = X(gamma) * x + X(delta);
        return (X(alpha) * x + X(beta)) / den;
    }
    // f^T: swap beta and gamma
    Mobius transpose() const { return {alpha, gamma, beta, delta}; }
    S derivative_at(const S& x) const
    {
        S den = gamma * x + delta;
        return (alpha * delta - beta * gamma) / (den * den);
    }
    // (this o g)
    Mobius compose(const Mobius& g) const { return from_mat(mat() * g.mat()); }
};

template <class S>
S mobius_eval(const Mobius<S>& f, const S& x)
{
    S den = f.denominator(x);
    if (Num<S>::exact ? Num<S>::sign(den) == 0 : Num<S>::mag(den) == 0)
        throw PoleError("Mobius denominator vanishes");
    return (f.alpha * x + f.beta) / den;
}

// Point of RP^1 in slope coordinate v1/v2.
template <class S>
struct ProjPoint {
    Vec2<S> v;

    static ProjPoint slope(const S& s)
    {
        ProjPoint p;
        p.v << s, S(1);
        return p;
    }
    static ProjPoint infinity()
    {
        ProjPoint p;
        p.v << S(1), S(0);
        return p;
    }
};

// psi(x) = ½(1+x, 1-x)
template <class S>
ProjPoint<S> chart_psi(const S& x)
{
    S h = Num<S>::from(Rational(1, 2));
    ProjPoint<S> p;
    p.v << h * (S(1) + x), h * (S(1) - x);
    return p;
}

template <class S>
S chart_psi_inv(const ProjPoint<S>& p)
{
    S den = p.v(0) + p.v(1);
    if (Num<S>::sign(den, abs(Num<S>::real(p.v(0))) + abs(Num<S>::real(p.v(1)))) == 0)
        throw PoleError("chart_psi_inv at [1;-1]");
    return (p.v(0) - p.v(1)) / den;
}

// Closed arc {[a u + b v] : a, b >= 0} spanned by the frame columns u, v.
template <class S>
struct Arc {
    Mat2<S> frame;
};

// Equal-sign coordinates in the frame basis; strict also excludes the endpoints.
template <class S>
bool arc_contains(const Arc<S>& a, const ProjPoint<S>& p, bool strict)
{
    Vec2<S> c = inverse2(a.frame) * p.v;
    Real guard = std::max(std::max(abs(Num<S>::real(c(0))), abs(Num<S>::real(c(1)))), Real(1));
    if (Num<S>::exact) {
        int s0 = Num<S>::sign(c(0)), s1 = Num<S>::sign(c(1));
        if (strict)
            return s0 != 0 && s0 == s1;
        return s0 * s1 >= 0;
    }
    // floating mode: a coordinate near zero (point near an endpoint) throws,
    // so strict and closed membership coincide
    return Num<S>::sign(c(0), guard) == Num<S>::sign(c(1), guard);
}

// Strictly outside the closed arc: coordinates of strictly opposite sign.
template <class S>
bool arc_excludes(const Arc<S>& a, const ProjPoint<S>& p)
{
    Vec2<S> c = inverse2(a.frame) * p.v;
    Real guard = std::max(std::max(abs(Num<S>::real(c(0))), abs(Num<S>::real(c(1)))), Real(1));
    int s0 = Num<S>::sign(c(0), guard), s1 = Num<S>::sign(c(1), guard);
    return s0 != 0 && s1 != 0 && s0 != s1;
}

// target^{-1} m source: +1 / -1 when all entries share a strict sign (this is
// [m](closure source) inside interior target), nullopt otherwise.
template <class S>
std::optional<int> strict_image_containment(const Arc<S>& target, const Mat2<S>& m, const Arc<S>& source)
{
    Mat2<S> b = inverse2(target.frame) * m * source.frame;
    Real sc = scale_of(b);
    int s[4] = {Num<S>::sign(b(0, 0), sc), Num<S>::sign(b(0, 1), sc),
                Num<S>::sign(b(1, 0), sc), Num<S>::sign(b(1, 1), sc)};
    if (s[0] != 0 && s[0] == s[1] && s[0] == s[2] && s[0] == s[3])
        return s[0];
    return std::nullopt;
}

} // namespace lyap
