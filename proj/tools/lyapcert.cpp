// lyapcert: certified Lyapunov exponents of 2x2 Markov random matrix products.

#include "lyap/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace lyap;

namespace {

struct Common {
    std::string file;
    unsigned precision = 0;
    bool human = false;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("file", c.file, "system description (JSON)")->required();
    app->add_option("--precision", c.precision, "working precision in bits (overrides the file)");
    app->add_flag("--human", c.human, "human-readable output");
}

SystemSpec load(const Common& c)
{
    SystemSpec s = read_system(c.file);
    set_precision(c.precision ? c.precision : s.options.precision_bits);
    return s;
}

int run(int argc, char** argv)
{
    CLI::App app{"Certified Lyapunov exponents of 2x2 Markov random matrix products"};
    app.require_subcommand(1);

    Common common;
    std::string epsilon, mode, radius;
    int order = -1;
    int fixed_n = 0, fixed_m = 0;
    bool estimate = false;
    long steps = 100000;
    int trials = 32;
    std::uint64_t seed = 1;
    std::string out;

    auto* check = app.add_subcommand("check", "validate a system and print its lifted structure");
    add_common(check, common);

    auto* lyap = app.add_subcommand("lyapunov", "certified value of the top Lyapunov exponent");
    add_common(lyap, common);
    lyap->add_option("--epsilon", epsilon, "target error (default: file option)");
    lyap->add_option("--mode", mode, "float or interval")->check(CLI::IsMember({"float", "interval"}));
    lyap->add_option("--n", fixed_n, "fixed iteration count (skip parameter selection)");
    lyap->add_option("--m", fixed_m, "fixed truncation order");

    auto* tay = app.add_subcommand("taylor", "certified Taylor coefficients at the base point");
    add_common(tay, common);
    tay->add_option("--order", order, "highest coefficient (default: file option)");
    tay->add_option("--epsilon", epsilon, "target error per coefficient");
    tay->add_option("--radius", radius, "disk radius c");
    tay->add_option("--mode", mode, "float or interval")->check(CLI::IsMember({"float", "interval"}));
    tay->add_flag("--estimate", estimate, "estimate missing Omega constants on the boundary circle");

    auto* omega = app.add_subcommand("omega", "sample the Omega conditions on the boundary circle");
    add_common(omega, common);
    omega->add_option("--radius", radius, "disk radius c");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate (double precision)");
    add_common(sim, common);
    sim->add_option("--steps", steps, "steps per trial");
    sim->add_option("--trials", trials, "number of trials");
    sim->add_option("--seed", seed, "random seed");

    auto* red = app.add_subcommand("reduce-base", "d-step system for a periodic base chain");
    add_common(red, common);
    red->add_option("-o,--output", out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    SystemSpec spec = load(common);

    if (*check) {
        CheckSummary s = summarize(spec);
        std::cout << (common.human ? check_human(s) : check_json(s));
        return 0;
    }
    if (*lyap) {
        LambdaOptions opt;
        opt.epsilon = parse_real(epsilon.empty() ? spec.options.epsilon : epsilon);
        opt.mode = mode.empty() ? spec.options.mode : mode;
        if (fixed_n > 0 || fixed_m > 0) {
            if (fixed_n < 1 || fixed_m < 2)
                throw ValidationError("--n and --m go together (n >= 1, m >= 2)");
            opt.fixed = std::make_pair(fixed_n, fixed_m);
        }
        Certificate c = compute_lambda(spec, opt);
        int digits = output_digits();
        std::cout << (common.human ? certificate_human(c, digits) : certificate_json(c, digits));
        return c.certified() ? 0 : 2;
    }
    if (*tay) {
        LiftPlan plan = plan_lift(spec);
        OmegaData w = omega_from_options(spec, plan, estimate,
                                         radius.empty() ? std::nullopt : std::optional<std::string>(radius));
        int q = order >= 0 ? order : spec.options.order;
        Real eps = parse_real(epsilon.empty() ? spec.options.epsilon : epsilon);
        TaylorResult t = taylor(spec, plan, q, eps, w, mode.empty() ? spec.options.mode : mode);
        int digits = output_digits();
        std::cout << (common.human ? taylor_human(t, digits) : taylor_json(t, digits));
        for (int j = 0; j <= q; ++j)
            if (!t.certified(j))
                return 2;
        return 0;
    }
    if (*omega) {
        LiftPlan plan = plan_lift(spec);
        OmegaData w;
        Rational t0 = spec.base_point();
        w.t0 = to_real(t0);
        std::string c = radius.empty() ? spec.options.disk_radius.value_or("") : radius;
        if (c.empty())
            throw ValidationError("no disk radius: set options.disk_radius or pass --radius");
        w.c = eval(parse_expr(c), w.t0);
        auto ls = instantiate(spec, plan, w.t0);
        w.rho_bar = spec.options.rho_bar ? eval(parse_expr(*spec.options.rho_bar), w.t0)
                                         : Real((1 + contraction_factor(ls)) / 2);
        OmegaReport r = check_omega(spec, plan, t0, w.c, w.rho_bar);
        std::cout << omega_json(r, w);
        return r.ok() ? 0 : 1;
    }
    if (*sim) {
        MonteCarloResult r = monte_carlo_lambda(spec, steps, trials, seed);
        std::cout << simulate_json(r, steps, seed);
        return 0;
    }
    if (*red) {
        std::string text = write_system(reduce_base(spec));
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out);
            if (!f)
                throw IOError("cannot write " + out);
            f << text;
        }
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
