#pragma once

#include "lyap/derivatives.hpp"

#include <string>

namespace lyap {

// Structural summary printed by `lyapcert check`.
struct CheckSummary {
    LiftPlan plan;
    std::string rho;  // exact when decided in rationals
    Real rho_value, D;
};

CheckSummary summarize(const SystemSpec& spec);

// All reports are JSON; numbers are strings so that no digits are lost.
std::string check_json(const CheckSummary& s);
std::string check_human(const CheckSummary& s);

std::string certificate_json(const Certificate& c, int digits);
std::string certificate_human(const Certificate& c, int digits);

std::string taylor_json(const TaylorResult& t, int digits);
std::string taylor_human(const TaylorResult& t, int digits);

std::string omega_json(const OmegaReport& r, const OmegaData& w);

std::string simulate_json(const MonteCarloResult& r, long steps, std::uint64_t seed);

// Re-reads a certificate and recomputes error_bound(n, m) from the stored
// constants; returns the recomputed bound.
Real reverify_certificate(const std::string& json_text);

// Digits worth printing at the current precision.
int output_digits();

} // namespace lyap
