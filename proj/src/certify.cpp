#include "lyap/certify.hpp"

#include <boost/math/constants/constants.hpp>

#include <chrono>
#include <cmath>
#include <random>

namespace lyap {

namespace {
Real pi_real() { return boost::math::constants::pi<Real>(); }
}

Real k_rho(const Real& rho)
{
    // integrand is even in theta: average over [0, pi]
    auto trapezoid = [&](int N) {
        Real h = pi_real() / N, s(0);
        for (int j = 0; j <= N; ++j) {
            Real th = h * j;
            Real v = rho / sqrt(1 - 2 * rho * cos(th) + rho * rho);
            s += (j == 0 || j == N) ? Real(v / 2) : v;
        }
        return Real(s / N);
    };
    Real tol = pow2(8 - static_cast<long>(precision()));
    int N = 16;
    Real prev = trapezoid(N);
    for (;;) {
        N *= 2;
        Real cur = trapezoid(N);
        if (abs(cur - prev) <= tol * cur || N > (1 << 22))
            return cur;
        prev = cur;
    }
}

Real k_rho_bound(const Real& rho)
{
    Real a = rho / sqrt(1 - rho * rho);
    Real b = 2 * rho / (pi_real() * (1 + rho)) * (pi_real() / 2 + log((1 + rho) / (1 - rho)));
    return std::min(a, b);
}

Real alpha_bar(int n, const Real& x)
{
    const int N = n - 1;
    if (N < 2)
        return Real(0);
    Real tol = pow2(-static_cast<long>(precision()) - 4);
    // term_j = C(N,j) x^(j-1); term_{j+1} = term_j (N-j)/(j+1) x
    Real term = Real(N) * Real(N - 1) / 2 * x;
    Real sum = term;
    for (int j = 2; j < N; ++j) {
        term = term * Real(N - j) / Real(j + 1) * x;
        sum += term;
        if (term <= tol * sum && Real(j) > Real(N) * x)
            break;
    }
    return sum;
}

BoundTerms error_terms(const BoundConstants& c, int n, int m)
{
    BoundTerms t;
    Real d(c.d);
    t.rho_m = pow(c.rho, m - 1) * c.K;
    t.tail = c.EC / d * pow(c.rho, n - 1);
    Real rD = c.rho * c.D;
    t.truncation = 2 / d * log(1 / (1 - rD)) * alpha_bar(n, t.rho_m);
    t.coordinate = 2 * Real(n - 1) * pow(rD, m) / (Real(m) * d * (1 - rD));
    t.total = t.tail + t.truncation + t.coordinate;
    return t;
}

std::pair<int, int> choose_params(const BoundConstants& c, const Real& eps)
{
    if (!(eps > 0))
        throw ValidationError("epsilon must be positive");
    if (eps < pow2(32 - static_cast<long>(precision())))
        throw ValidationError("epsilon " + to_string(eps, 6) + " is below the rounding floor at " +
                              std::to_string(precision()) + " bits; increase precision_bits");
    int n = 1;
    Real d(c.d);
    if (c.EC > 0) {
        // closed-form first guess, then walk
        Real need = log(eps / 2 * d / c.EC) / log(c.rho);
        n = std::max(1, static_cast<int>(ceil(need).convert_to<long>()) + 1 - 1);
        while (n > 1 && c.EC / d * pow(c.rho, n - 2) < eps / 2)
            --n;
        while (!(c.EC / d * pow(c.rho, n - 1) < eps / 2))
            ++n;
    }
    auto ok = [&](int m) { return error_bound(c, n, m) < eps; };
    int hi = 2;
    while (!ok(hi)) {
        hi *= 2;
        if (hi > (1 << 24))
            throw std::logic_error("no truncation order reaches epsilon");
    }
    int lo = hi / 2;  // ok(lo) false unless lo < 2
    if (lo < 2)
        return {n, 2};
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return {n, hi};
}

namespace {

template <class S>
Certificate run(const SystemSpec& spec, const LiftPlan& plan, const S& t, const LambdaOptions& opt, bool rigorous)
{
    auto start = std::chrono::steady_clock::now();
    Certificate cert;
    cert.epsilon = opt.epsilon;
    cert.mode = opt.mode;
    cert.precision = requested_precision();
    LiftedSystem<S> ls = instantiate(spec, plan, t);
    require_positive(ls);
    cert.labels = ls.labels;
    cert.d = ls.d;
    cert.constants = bound_constants(ls, rigorous);
    auto [n, m] = opt.fixed ? *opt.fixed : choose_params(cert.constants, opt.epsilon);
    cert.n = n;
    cert.m = m;
    auto terms = error_terms(cert.constants, n, m);
    cert.bound = terms.total;
    cert.rho_m = terms.rho_m;
    KernelStats stats;
    S value = partial_sum(ls, n, m, &stats);
    cert.operations = stats.mul_adds;
    if constexpr (std::is_same_v<S, Interval>) {
        cert.value = value.mid();
        cert.allowance = value.rad();
        // the bound itself was evaluated in round-to-nearest
        cert.bound = cert.bound * (1 + pow2(8 - static_cast<long>(precision())));
    } else {
        cert.value = value;
        cert.allowance = Real(n + m) * tolerance() * std::max(Real(1), Real(abs(cert.value)));
    }
    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

} // namespace

Certificate compute_lambda(const SystemSpec& spec, const LiftPlan& plan, const Real& t, const LambdaOptions& opt)
{
    Certificate c = opt.mode == "interval" ? run<Interval>(spec, plan, Interval(t), opt, true)
                                           : run<Real>(spec, plan, t, opt, false);
    if (plan.exact && t == to_real(spec.base_point())) {
        auto ls = instantiate(spec, plan, spec.base_point());
        c.rho_exact = contraction_factor_exact(ls).str();
    }
    return c;
}

Certificate compute_lambda(const SystemSpec& spec, const LambdaOptions& opt)
{
    LiftPlan plan = plan_lift(spec);
    Real t0 = to_real(spec.base_point());
    if (opt.mode == "interval") {
        // exact base point as an enclosure
        Certificate c = run<Interval>(spec, plan, Interval(spec.base_point()), opt, true);
        if (plan.exact)
            c.rho_exact = contraction_factor_exact(instantiate(spec, plan, spec.base_point())).str();
        return c;
    }
    return compute_lambda(spec, plan, t0, opt);
}

MonteCarloResult monte_carlo_lambda(const std::vector<Mat2<double>>& A, const Matrix<double>& P,
                                    long steps, int trials, std::uint64_t seed)
{
    const int n = static_cast<int>(P.rows());
    // stationary law by power iteration on the row vector
    Eigen::RowVectorXd p = Eigen::RowVectorXd::Constant(n, 1.0 / n);
    for (int it = 0; it < 100000; ++it) {
        Eigen::RowVectorXd q = 0.5 * (p + p * P);  // lazy chain: aperiodic, same law
        if ((q - p).lpNorm<1>() < 1e-15) {
            p = q;
            break;
        }
        p = q;
    }
    std::vector<std::discrete_distribution<int>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<double> w(P.row(i).data(), P.row(i).data() + 0);
        for (int j = 0; j < n; ++j)
            w.push_back(P(i, j));
        rows.emplace_back(w.begin(), w.end());
    }
    std::vector<double> init(p.data(), p.data() + n);

    MonteCarloResult res;
    for (int k = 0; k < trials; ++k) {
        std::seed_seq ss{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(k)};
        std::mt19937_64 gen(ss);
        std::discrete_distribution<int> start(init.begin(), init.end());
        int x = start(gen);
        Eigen::Matrix2d M = A[x];
        double logsum = std::log(M.norm());
        M /= M.norm();
        for (long s = 1; s < steps; ++s) {
            x = rows[x](gen);
            M = A[x] * M;
            double nm = M.norm();
            logsum += std::log(nm);
            M /= nm;
        }
        res.trials.push_back(logsum / static_cast<double>(steps));
    }
    double mean = 0;
    for (double v : res.trials)
        mean += v;
    mean /= trials;
    double var = 0;
    for (double v : res.trials)
        var += (v - mean) * (v - mean);
    var = trials > 1 ? var / (trials - 1) : 0;
    res.mean = mean;
    res.stderr_ = std::sqrt(var / trials);
    return res;
}

MonteCarloResult monte_carlo_lambda(const SystemSpec& spec, long steps, int trials, std::uint64_t seed)
{
    Real t0 = to_real(spec.base_point());
    auto Ar = evaluate_matrices(spec, t0);
    auto Pr = evaluate_transition(spec, t0);
    std::vector<Mat2<double>> A;
    for (const auto& m : Ar) {
        Mat2<double> d;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                d(i, j) = m(i, j).convert_to<double>();
        A.push_back(d);
    }
    Matrix<double> P(Pr.rows(), Pr.cols());
    for (int i = 0; i < Pr.rows(); ++i)
        for (int j = 0; j < Pr.cols(); ++j)
            P(i, j) = Pr(i, j).convert_to<double>();
    MonteCarloResult r = monte_carlo_lambda(A, P, steps, trials, seed);
    // a d-step base system grows d times faster per block
    r.mean /= spec.base_period;
    r.stderr_ /= spec.base_period;
    for (auto& v : r.trials)
        v /= spec.base_period;
    return r;
}

} // namespace lyap
