#pragma once

#include "lyap/certify.hpp"
#include "lyap/jet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lyap {

// Disk U = {|z - t0| <= c} and the constants of the Cauchy-formula bound.
struct OmegaData {
    Real t0, c, rho_bar;
    OmegaConstants k;
    std::string provenance = "user-certified";  // or "boundary-estimated"
};

// Maxima/minima over the boundary circle |z - t0| = c.  The inner variable
// (x in the closed unit disk, w in the closed rho_bar disk) is maximized in
// closed form: a Mobius map sends circles to circles.
struct OmegaReport {
    int samples = 0;
    Real max_f;          // max |f_r[z](x)|
    Real max_row_sum;    // max sum_r' |Q_rr'(z)|
    Real max_transpose;  // max |f_r^T[z](0)|
    Real max_dl;         // max |d/dw l_r(z, w)|, |w| <= rho_bar
    Real max_sum_pi;     // max sum_r |pi_r(z)|
    Real min_pi;         // min |pi_r(z)|
    Real min_re_den;     // min Re(gamma_r(z) x + delta_r(z)), |x| <= 1
    bool omega2 = false, omega3 = false, omega4 = false, omega5 = false;

    bool ok() const { return omega2 && omega3 && omega4 && omega5; }
    OmegaConstants constants() const;
};

OmegaReport check_omega(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0, const Real& c,
                        const Real& rho_bar, int initial_samples = 1024);

// Omega data from the file options (user-certified), or estimated on the
// boundary circle when `estimate` is set and constants are missing.
OmegaData omega_from_options(const SystemSpec& spec, const LiftPlan& plan, bool estimate,
                             std::optional<std::string> radius_override = std::nullopt);

// a_0..a_Q of Lambda_{n,m}(t) at t0 (jet arithmetic through the whole pipeline).
std::vector<Real> derivative_series(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0, int order,
                                    int n, int m, KernelStats* stats = nullptr);
// Same in interval arithmetic: midpoints and radii.
std::vector<Interval> derivative_series_interval(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0,
                                                 int order, int n, int m);

// Bound on |lambda^(q)(t0) - Lambda^(q)_{n,m}(t0)| (divide by q! for coefficients).
Real derivative_error_bound(const OmegaData& w, int d, int q, int n, int m, const Real& K);

struct TaylorResult {
    std::vector<Real> coefficients, bounds, allowances;
    std::vector<std::pair<int, int>> params;  // per order (n, m_q)
    int n = 0, m = 0;                         // the single run
    OmegaData omega;
    std::optional<OmegaReport> report;
    Real epsilon;
    std::string mode = "float";
    unsigned precision = 0;
    double seconds = 0;

    bool certified(int q) const { return bounds[q] + allowances[q] < epsilon; }
    std::string rigor() const
    {
        return omega.provenance == "user-certified" ? "rigorous" : "conditionally rigorous";
    }
};

TaylorResult taylor(const SystemSpec& spec, const LiftPlan& plan, int order, const Real& eps, const OmegaData& w,
                    const std::string& mode = "float");

// --- radius-free first-order certifier --------------------------------------

struct FirstOrderConstants {
    Real m_pi, M_pi1, M_sum_pi1, M_Q1, M_T1, M_f1, M_l2, M_l22, M_l12, M_g12, M_g22;
    Real rho, rho_bar, D;
    int d = 1;
    std::string provenance = "user-supplied";
};

struct FirstOrderTerms {
    Real Xi, L_g, delta, A_tail, B_tail;
    Real tail, truncation, coordinate, total;
};

FirstOrderTerms first_order_bound(const FirstOrderConstants& k, int n, int m);

// Derivatives at t0 from order-1 jets; suprema over the unit circle and over
// [-artanh rho, artanh rho] on grids (doubling until 1% agreement).
FirstOrderConstants estimate_first_order_constants(const SystemSpec& spec, const LiftPlan& plan, const Rational& t0,
                                                   const Real& rho_bar);

} // namespace lyap
