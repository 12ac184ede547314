#pragma once

#include "lyap/interval.hpp"
#include "lyap/kernel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lyap {

// Constants entering the truncation bound.
struct BoundConstants {
    Real EC;         // tail constant
    Real D;          // max_r |f_r^T(0)|
    Real rho;        // contraction factor
    Real K;          // K(rho) used in the bound
    Real K_ceiling;  // closed-form upper bound for K(rho)
    int d = 1;
};

// (1/2pi) int_0^{2pi} rho / |1 - rho e^{i theta}| d theta by the trapezoid rule
// (spectrally accurate for this periodic analytic integrand).
Real k_rho(const Real& rho);
// min{ rho/sqrt(1-rho^2), (2 rho/(pi(1+rho))) (pi/2 + log((1+rho)/(1-rho))) }
Real k_rho_bound(const Real& rho);

// ((1+x)^N - 1 - N x)/x = sum_{j>=2} C(N,j) x^(j-1), N = n-1.
Real alpha_bar(int n, const Real& x);

template <class S>
Real tail_constant(const LiftedSystem<S>& ls, const Real& rho)
{
    Real worst(0);
    S hyp(0);
    for (int r = 0; r < ls.size(); ++r) {
        S a = ls.transpose_at_zero(r);
        S q = abs(a) / (S(1) + sqrt(S(1) - a * a));
        worst = std::max(worst, Num<S>::upper(q));
        S f0 = ls.at_zero(r);
        hyp += ls.pi(r) * S(2) * abs(S(atanh(f0)));
    }
    return worst * Num<S>::upper(hyp) / (1 - rho);
}

template <class S>
BoundConstants bound_constants(const LiftedSystem<S>& ls, bool closed_form_K)
{
    BoundConstants c;
    c.rho = contraction_factor(ls);
    c.D = transpose_bound(ls);
    c.EC = tail_constant(ls, c.rho);
    c.K_ceiling = k_rho_bound(c.rho);
    c.K = closed_form_K ? c.K_ceiling : k_rho(c.rho);
    c.d = ls.d;
    return c;
}

struct BoundTerms {
    Real tail, truncation, coordinate, total, rho_m;
};

BoundTerms error_terms(const BoundConstants& c, int n, int m);
inline Real error_bound(const BoundConstants& c, int n, int m) { return error_terms(c, n, m).total; }

// Smallest n with (EC/d) rho^(n-1) < eps/2, then the smallest m with bound < eps.
std::pair<int, int> choose_params(const BoundConstants& c, const Real& eps);

struct Certificate {
    Real value;
    Real epsilon;
    Real bound;
    Real allowance;
    int n = 0, m = 0;
    BoundConstants constants;
    Real rho_m;
    std::string rho_exact;  // rational contraction factor when decided exactly
    int d = 1;
    std::string mode = "float";
    unsigned precision = 0;
    std::uint64_t operations = 0;
    double seconds = 0;
    std::vector<std::string> labels;

    bool certified() const { return bound + allowance < epsilon; }
};

struct LambdaOptions {
    Real epsilon;
    std::string mode = "float";
    std::optional<std::pair<int, int>> fixed;  // skip parameter selection
};

// Full pipeline at the base point of the system (or at parameter value t).
Certificate compute_lambda(const SystemSpec& spec, const LambdaOptions& opt);
Certificate compute_lambda(const SystemSpec& spec, const LiftPlan& plan, const Real& t, const LambdaOptions& opt);

struct MonteCarloResult {
    double mean = 0, stderr_ = 0;
    std::vector<double> trials;
};

// Furstenberg-Kesten average over Markov trajectories started from the
// stationary law, in double precision.
MonteCarloResult monte_carlo_lambda(const std::vector<Mat2<double>>& A, const Matrix<double>& P,
                                    long steps, int trials, std::uint64_t seed);
MonteCarloResult monte_carlo_lambda(const SystemSpec& spec, long steps, int trials, std::uint64_t seed);

} // namespace lyap
