#pragma once

#include "lyap/family.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lyap {

// Arc endpoint in slope coordinate; a null expression is the point at infinity.
struct Endpoint {
    Expr slope;
    bool infinite() const { return !slope; }
};

struct ArcSpec {
    Endpoint p, q;  // increasing-slope orientation; p > q wraps through infinity
};

// Constants of the complex-disk derivative bound, supplied or estimated.
struct OmegaConstants {
    Real Qbar, Dbar, Ml, Msum_pi, mpi;
};

struct Options {
    unsigned precision_bits = 128;
    std::string epsilon = "1e-20";
    int order = 0;
    std::optional<std::string> disk_radius;
    std::optional<std::string> rho_bar;
    std::optional<std::map<std::string, std::string>> omega_constants;
    std::string mode = "float";  // or "interval"
    std::optional<int> class_choice;
};

// In-memory form of a system description file. All numbers are expressions,
// so rational entries stay exact and parametrized entries stay symbolic.
struct SystemSpec {
    std::vector<std::string> alphabet;
    std::vector<std::array<Expr, 4>> matrices;  // row-major 2x2 per letter
    std::vector<std::vector<Expr>> transition;
    std::vector<std::vector<ArcSpec>> multicone;  // per letter
    std::map<std::pair<int, int>, std::array<Expr, 4>> charts;  // (letter, component)
    std::optional<Rational> t0;
    int base_period = 1;
    Options options;

    int letter(const std::string& label) const;
    Rational base_point() const { return t0.value_or(Rational(0)); }
    bool parametrized() const;
};

SystemSpec read_system(const std::string& path);
SystemSpec parse_system(const std::string& json_text);
std::string write_system(const SystemSpec& s);

// d-step system for a periodic base chain (identity copy when d = 1).
SystemSpec reduce_base(const SystemSpec& s);

} // namespace lyap
