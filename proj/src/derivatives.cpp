#include "lyap/derivatives.hpp"
#include "lyap/complex.hpp"

#include <boost/math/constants/constants.hpp>

#include <chrono>

namespace lyap {

namespace {

using C = Complex<Real>;

Real factorial(int q)
{
    Real f(1);
    for (int j = 2; j <= q; ++j)
        f *= j;
    return f;
}

struct Sample {
    Real max_f, max_row_sum, max_transpose, max_dl, max_sum_pi, min_pi, min_re_den;
};

Sample sample_circle(const SystemSpec& spec, const LiftPlan& plan, const Real& t0, const Real& c,
                     const Real& rho_bar, int N)
{
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    Sample s{Real(0), Real(0), Real(0), Real(0), Real(0), Real(-1), Real(-1)};
    auto first_min = [](Real& slot, const Real& v) {
        if (slot < 0 || v < slot)
            slot = v;
    };
    for (int k = 0; k < N; ++k) {
        C z = C(t0) + polar(c, Real(two_pi * k / N));
        LiftedSystem<C> ls = instantiate(spec, plan, z);
        Real sum_pi(0);
        for (int r = 0; r < ls.size(); ++r) {
            Real a = abs(ls.pi(r));
            sum_pi += a;
            first_min(s.min_pi, a);
            Real row(0);
            for (int q = 0; q < ls.size(); ++q)
                row += abs(ls.Q(r, q));
            s.max_row_sum = std::max(s.max_row_sum, row);

            const auto& f = ls.f[r];
            Real g = abs(f.gamma), dl = abs(f.delta);
            // Re(gamma x + delta) over |x| <= 1
            first_min(s.min_re_den, Real(f.delta.re() - g));
            Real k2 = norm(f.delta) - norm(f.gamma);
            if (k2 <= 0) {
                s.max_f = Real(1e300);  // pole in the closed unit disk
            } else {
                C center = (f.beta * conj(f.delta) - f.alpha * conj(f.gamma)) / C(k2);
                Real radius = abs(f.alpha * f.delta - f.beta * f.gamma) / k2;
                s.max_f = std::max(s.max_f, Real(abs(center) + radius));
            }
            s.max_transpose = std::max(s.max_transpose, Real(g / dl));
            Real room = dl - rho_bar * g;
            s.max_dl = std::max(s.max_dl, room > 0 ? Real(g / room) : Real(1e300));
        }
        s.max_sum_pi = std::max(s.max_sum_pi, sum_pi);
    }
    return s;
}

bool agree(const Sample& a, const Sample& b)
{
    auto close = [](const Real& x, const Real& y) { return abs(x - y) <= Real(0.01) * std::max(abs(x), abs(y)); };
    return close(a.max_f, b.max_f) && close(a.max_row_sum, b.max_row_sum) &&
           close(a.max_transpose, b.max_transpose) && close(a.max_dl, b.max_dl) &&
           close(a.max_sum_pi, b.max_sum_pi) && close(a.min_pi, b.min_pi) && close(a.min_re_den, b.min_re_den);
}

Real eval_constant(const std::string& text, const Rational& t0)
{
    return eval(parse_expr(text), to_real(t0));
}

} // namespace

OmegaConstants OmegaReport::constants() const
{
    return {std::max(Real(1), max_row_sum), max_transpose, max_dl, max_sum_pi, min_pi};
}

OmegaReport check_omega(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0, const Real& c,
                        const Real& rho_bar, int initial_samples)
{
    if (!(c > 0))
        throw ValidationError("disk radius must be positive");
    if (!(rho_bar > 0 && rho_bar < 1))
        throw ValidationError("rho_bar must lie in (0, 1)");
    Real t = to_real(t0);
    int N = initial_samples;
    Sample prev = sample_circle(spec, plan, t, c, rho_bar, N);
    for (;;) {
        Sample cur = sample_circle(spec, plan, t, c, rho_bar, 2 * N);
        N *= 2;
        if (agree(prev, cur) || N >= (1 << 16)) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    OmegaReport rep;
    rep.samples = N;
    rep.max_f = prev.max_f;
    rep.max_row_sum = prev.max_row_sum;
    rep.max_transpose = prev.max_transpose;
    rep.max_dl = prev.max_dl;
    rep.max_sum_pi = prev.max_sum_pi;
    rep.min_pi = prev.min_pi;
    rep.min_re_den = prev.min_re_den;

    auto ls = instantiate(spec, plan, t);
    Real rho = contraction_factor(ls);
    rep.omega2 = rep.min_pi > 0;
    rep.omega3 = rho < rho_bar && rep.max_f < rho_bar;
    rep.omega4 = rep.min_re_den > 0;
    rep.omega5 = rho_bar * rep.max_row_sum < 1;
    return rep;
}

OmegaData omega_from_options(const SystemSpec& spec, const LiftPlan& plan, bool estimate,
                             std::optional<std::string> radius_override)
{
    const Options& o = spec.options;
    Rational t0 = spec.base_point();
    OmegaData w;
    w.t0 = to_real(t0);
    auto radius = radius_override ? radius_override : o.disk_radius;
    if (!radius)
        throw ValidationError("no disk radius: set options.disk_radius or pass --radius");
    w.c = eval_constant(*radius, t0);
    auto ls = instantiate(spec, plan, to_real(t0));
    Real rho = contraction_factor(ls);
    w.rho_bar = o.rho_bar ? eval_constant(*o.rho_bar, t0) : Real((1 + rho) / 2);
    if (!(w.rho_bar > rho && w.rho_bar < 1))
        throw ValidationError("rho_bar must lie strictly between rho = " + to_string(rho, 10) + " and 1");

    if (o.omega_constants) {
        const auto& m = *o.omega_constants;
        auto get = [&](const char* key) {
            auto it = m.find(key);
            if (it == m.end())
                throw ValidationError(std::string("options.omega_constants is missing '") + key + "'");
            return eval_constant(it->second, t0);
        };
        w.k = {get("Qbar"), get("Dbar"), get("Ml"), get("Msum_pi"), get("mpi")};
        w.provenance = "user-certified";
    } else if (estimate) {
        OmegaReport rep = check_omega(spec, plan, t0, w.c, w.rho_bar);
        if (!rep.ok())
            throw ValidationError("Omega conditions fail on |z - t0| = " + to_string(w.c, 6) +
                                  "; try a smaller --radius");
        w.k = rep.constants();
        w.provenance = "boundary-estimated";
    } else {
        throw ValidationError("no Omega constants: add options.omega_constants {Qbar, Dbar, Ml, Msum_pi, mpi} "
                              "or pass --estimate to estimate them on the boundary circle");
    }
    if (!(w.k.Qbar >= 1))
        throw ValidationError("Qbar must be at least 1");
    if (!(w.rho_bar * w.k.Qbar < 1))
        throw ValidationError("rho_bar * Qbar >= 1: the derivative bound diverges; use a smaller disk radius");
    if (!(w.k.Dbar < 1))
        throw ValidationError("Dbar must be below 1");
    if (!(w.k.mpi > 0))
        throw ValidationError("mpi must be positive");
    return w;
}

std::vector<Real> derivative_series(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0, int order,
                                    int n, int m, KernelStats* stats)
{
    if (order == 0) {
        // order-0 jets are scalars: take the scalar pipeline
        auto ls = instantiate(spec, plan, to_real(t0));
        return {partial_sum(ls, n, m, stats)};
    }
    JetOrderScope scope(order);
    auto t = Jet<Real>::variable(to_real(t0));
    LiftedSystem<Jet<Real>> ls = instantiate(spec, plan, t);
    Jet<Real> s = partial_sum(ls, n, m, stats);
    std::vector<Real> a;
    for (int j = 0; j <= order; ++j)
        a.push_back(s[j]);
    return a;
}

std::vector<Interval> derivative_series_interval(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0,
                                                 int order, int n, int m)
{
    JetOrderScope scope(order);
    auto t = Jet<Interval>::variable(Interval(t0));
    LiftedSystem<Jet<Interval>> ls = instantiate(spec, plan, t);
    Jet<Interval> s = partial_sum(ls, n, m);
    std::vector<Interval> a;
    for (int j = 0; j <= order; ++j)
        a.push_back(s[j]);
    return a;
}

Real derivative_error_bound(const OmegaData& w, int d, int q, int n, int m, const Real& K)
{
    const Real& rb = w.rho_bar;
    const auto& k = w.k;
    if (!(rb * k.Qbar < 1))
        throw ValidationError("rho_bar * Qbar >= 1: the derivative bound diverges; use a smaller disk radius");
    Real rD = rb * k.Dbar;
    Real rho_m = pow(rb, m - 1) * K;
    Real head = k.Msum_pi * k.Ml * atanh(rb) / (rb * (1 - rb * k.Qbar)) * pow(rb, n);
    Real body = 2 * k.Msum_pi * k.Msum_pi / k.mpi *
                (alpha_bar(n, rho_m) * log(1 / (1 - rD)) + Real(n - 1) * pow(rD, m) / (Real(m) * (1 - rD)));
    return factorial(q) * pow(k.Qbar, n) / (pow(w.c, q) * Real(d)) * (head + body);
}

TaylorResult taylor(const SystemSpec& spec, const LiftPlan& plan, int order, const Real& eps, const OmegaData& w,
                    const std::string& mode)
{
    auto start = std::chrono::steady_clock::now();
    if (order < 0)
        throw ValidationError("order must be non-negative");
    if (!(eps > 0))
        throw ValidationError("epsilon must be positive");
    const int d = plan.total_period();
    const Real K = mode == "interval" ? k_rho_bound(w.rho_bar) : k_rho(w.rho_bar);
    auto coeff_bound = [&](int q, int n, int m) { return derivative_error_bound(w, d, q, n, m, K) / factorial(q); };

    // n: the head term (decaying like (rho_bar Qbar)^n) below eps/2 for every order
    int n = 2;
    for (int q = 0; q <= order; ++q) {
        const auto& k = w.k;
        auto head = [&](int nn) {
            return pow(k.Qbar, nn) / (pow(w.c, q) * Real(d)) * k.Msum_pi * k.Ml * atanh(w.rho_bar) /
                   (w.rho_bar * (1 - w.rho_bar * k.Qbar)) * pow(w.rho_bar, nn);
        };
        while (!(head(n) < eps / 2)) {
            if (++n > 1000000)
                throw ValidationError("no iteration count reaches epsilon");
        }
    }
    TaylorResult res;
    res.omega = w;
    res.epsilon = eps;
    res.mode = mode;
    res.precision = requested_precision();
    int m_max = 2;
    for (int q = 0; q <= order; ++q) {
        int m = 2;
        while (!(coeff_bound(q, n, m) < eps)) {
            if (++m > 100000)
                throw ValidationError("no truncation order reaches epsilon");
        }
        res.params.push_back({n, m});
        m_max = std::max(m_max, m);
    }
    res.n = n;
    res.m = m_max;
    Rational t0 = spec.base_point();
    if (mode == "interval") {
        auto a = derivative_series_interval(spec, plan, t0, order, n, m_max);
        for (const auto& x : a) {
            res.coefficients.push_back(x.mid());
            res.allowances.push_back(x.rad());
        }
    } else {
        res.coefficients = derivative_series(spec, plan, t0, order, n, m_max);
        for (const auto& a : res.coefficients)
            res.allowances.push_back(Real(n + m_max) * Real(order + 1) * tolerance() * std::max(Real(1), Real(abs(a))));
    }
    for (int q = 0; q <= order; ++q) {
        Real b = coeff_bound(q, n, m_max);
        if (mode == "interval")
            b = b * (1 + pow2(8 - static_cast<long>(precision())));
        res.bounds.push_back(b);
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

FirstOrderTerms first_order_bound(const FirstOrderConstants& k, int n, int m)
{
    if (n < 2 || m < 2)
        throw ValidationError("first-order bound needs n, m >= 2");
    if (!(k.rho_bar > k.rho && k.rho_bar < 1))
        throw ValidationError("rho_bar must lie in (rho, 1)");
    FirstOrderTerms t;
    const Real &rho = k.rho, &rb = k.rho_bar, &D = k.D;
    const Real one_r2 = 1 - rho * rho;
    Real d(k.d);
    t.Xi = k.M_f1 / ((1 - rho) * one_r2);
    t.L_g = k.M_g12 + t.Xi / one_r2 * k.M_g22;
    t.delta = 2 * k.M_f1 / (rb - rho);
    Real art = atanh(rho);
    t.A_tail = (t.L_g / rho + k.M_Q1) * k.M_l2 * art;
    t.B_tail = (k.M_sum_pi1 * k.M_l2 + k.M_l12 + t.Xi * k.M_l22 + t.Xi * k.M_l2 / one_r2) * art +
               k.M_f1 * k.M_l2 / one_r2;
    t.tail = ((Real(n) / (1 - rho) + rho / ((1 - rho) * (1 - rho))) * t.A_tail + t.B_tail / (1 - rho)) *
             pow(rho, n - 1) / d;

    auto beta = [&](int j) {
        if (j <= 0)
            return Real(0);
        return Real(2 * ((2 * k.M_pi1 + Real(j + 1) * k.M_Q1) / k.m_pi + Real(2 * j + 1) / (rb - rho) * k.M_f1));
    };
    Real rho_m = pow(rb, m - 1) * k_rho(rb);
    Real abar = alpha_bar(n, rho_m);
    Real rD = rho * D;
    t.truncation = ((beta(n - 2) + 2 * k.M_sum_pi1 + (4 * k.M_pi1 + 2 * k.M_Q1) / k.m_pi) * log(1 / (1 - rb * D)) +
                    2 * rho * k.M_T1 / (1 - rD)) *
                   abar / d;
    t.coordinate = (rD / Real(m) * (2 * Real(n - 1) * k.M_sum_pi1 + (4 * k.M_pi1 + Real(n) * k.M_Q1) / k.m_pi) +
                    rho * k.M_T1 + k.M_f1 * D * (1 - pow(rho, n - 1)) / (one_r2 * (1 - rho))) *
                   pow(rD, m - 1) / (1 - rD) / d;
    t.total = t.tail + t.truncation + t.coordinate;
    return t;
}

namespace {

// sup over a grid, doubling until successive values agree to 1%
template <class F>
Real grid_sup(F&& value_at, int N0)
{
    auto run = [&](int N) {
        Real best(0);
        for (int k = 0; k <= N; ++k)
            best = std::max(best, value_at(k, N));
        return best;
    };
    int N = N0;
    Real prev = run(N);
    for (;;) {
        N *= 2;
        Real cur = run(N);
        if (abs(cur - prev) <= Real(0.01) * std::max(abs(cur), abs(prev)) || N >= (1 << 16))
            return cur;
        prev = cur;
    }
}

} // namespace

FirstOrderConstants estimate_first_order_constants(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0,
                                                   const Real& rho_bar)
{
    using J = Jet<Real>;
    JetOrderScope scope(1);
    LiftedSystem<J> ls = instantiate(spec, plan, J::variable(to_real(t0)));
    LiftedSystem<Real> base = instantiate(spec, plan, to_real(t0));
    const int R = ls.size();

    FirstOrderConstants k;
    k.provenance = "grid-estimated";
    k.rho = contraction_factor(base);
    k.rho_bar = rho_bar;
    k.D = transpose_bound(base);
    k.d = ls.d;
    k.m_pi = Real(-1);
    k.M_pi1 = k.M_sum_pi1 = k.M_Q1 = k.M_T1 = k.M_f1 = Real(0);
    k.M_l2 = k.M_l22 = k.M_l12 = k.M_g12 = k.M_g22 = Real(0);
    for (int r = 0; r < R; ++r) {
        if (k.m_pi < 0 || ls.pi(r)[0] < k.m_pi)
            k.m_pi = ls.pi(r)[0];
        k.M_pi1 = std::max(k.M_pi1, Real(abs(ls.pi(r)[1])));
        k.M_sum_pi1 += abs(ls.pi(r)[1]);
        Real row(0), col(0);
        for (int s = 0; s < R; ++s) {
            row += abs(ls.Q(r, s)[1]);
            col += abs(ls.Q(s, r)[1]);
        }
        k.M_Q1 = std::max(k.M_Q1, std::max(row, col));
        k.M_T1 = std::max(k.M_T1, Real(abs(ls.transpose_at_zero(r)[1])));
    }

    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    for (int r = 0; r < R; ++r) {
        const auto& f = ls.f[r];
        C a(f.alpha[0]), b(f.beta[0]), g(f.gamma[0]), dd(f.delta[0]);
        C a1(f.alpha[1]), b1(f.beta[1]), g1(f.gamma[1]), d1(f.delta[1]);
        // d/dt f_r[t](x) on |x| = 1
        k.M_f1 = std::max(k.M_f1, grid_sup(
                                      [&](int j, int N) {
                                          C x = polar(Real(1), Real(two_pi * j / N));
                                          C den = g * x + dd;
                                          C num = (a1 * x + b1) * den - (a * x + b) * (g1 * x + d1);
                                          return abs(num / (den * den));
                                      },
                                      1024));
        // l-derivatives on [-rho, rho]: numerators are x-free, so the endpoints decide
        for (int s : {-1, 1}) {
            Real x = k.rho * s;
            Real den = f.gamma[0] * x + f.delta[0];
            k.M_l2 = std::max(k.M_l2, Real(abs(f.gamma[0] / den)));
            k.M_l22 = std::max(k.M_l22, Real(f.gamma[0] * f.gamma[0] / (den * den)));
            k.M_l12 = std::max(k.M_l12, Real(abs((f.gamma[1] * f.delta[0] - f.gamma[0] * f.delta[1]) / (den * den))));
        }
        // g_r(t, s) = artanh f_r[t](tanh s); h = d g / d s
        Real smax = atanh(k.rho);
        auto h_jet = [&](const Real& x) {
            J den = f.gamma * J(x) + f.delta;
            J det = f.alpha * f.delta - f.beta * f.gamma;
            J y = (f.alpha * J(x) + f.beta) / den;
            return det / (den * den) * J(Real(1 - x * x)) / (J(1) - y * y);
        };
        auto hs = [&](const Real& x) {
            const Real &al = f.alpha[0], &be = f.beta[0], &ga = f.gamma[0], &de = f.delta[0];
            Real den = ga * x + de, det = al * de - be * ga;
            Real A = det / (den * den), A1 = -2 * ga * det / (den * den * den);
            Real y = (al * x + be) / den, u = 1 - x * x, v = 1 - y * y;
            return u * ((A1 * u - 2 * x * A) / v + A * u * 2 * y * A / (v * v));
        };
        k.M_g12 = std::max(k.M_g12, grid_sup([&](int j, int N) { return abs(h_jet(tanh(smax * (2 * j - N) / N))[1]); },
                                             1024));
        k.M_g22 = std::max(k.M_g22, grid_sup([&](int j, int N) { return abs(hs(tanh(smax * (2 * j - N) / N))); },
                                             1024));
    }
    return k;
}

} // namespace lyap
