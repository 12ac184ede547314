#include "lyap/report.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace lyap {

using nlohmann::ordered_json;

int output_digits()
{
    return static_cast<int>(std::floor(precision() * 0.30103)) + 2;
}

CheckSummary summarize(const SystemSpec& spec)
{
    CheckSummary s;
    s.plan = plan_lift(spec);
    Rational t0 = spec.base_point();
    if (s.plan.exact) {
        auto ls = instantiate(spec, s.plan, t0);
        require_positive(ls);
        Rational rho = contraction_factor_exact(ls);
        s.rho = to_string(rho);
        s.rho_value = to_real(rho);
        s.D = transpose_bound(ls);
    } else {
        auto ls = instantiate(spec, s.plan, to_real(t0));
        require_positive(ls);
        s.rho_value = contraction_factor(ls);
        s.rho = to_string(s.rho_value, 20);
        s.D = transpose_bound(ls);
    }
    return s;
}

namespace {

ordered_json beta_table(const LiftPlan& p)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < p.branches.states.size(); ++r) {
        const auto& st = p.branches.states[r];
        rows.push_back({{"state", p.branches.label(static_cast<int>(r), p.alphabet)},
                        {"from", p.alphabet[st.i] + ":" + std::to_string(st.a + 1)},
                        {"letter", p.alphabet[st.j]},
                        {"beta", st.b + 1},
                        {"sign", p.branches.signs[r]}});
    }
    return rows;
}

} // namespace

std::string check_json(const CheckSummary& s)
{
    const LiftPlan& p = s.plan;
    ordered_json j;
    j["status"] = "ok";
    j["branch_states"] = p.branches.states.size();
    j["recurrent_classes"] = p.branches.classes.size();
    ordered_json classes = ordered_json::array();
    for (const auto& c : p.branches.classes) {
        ordered_json cl = ordered_json::array();
        for (int r : c)
            cl.push_back(p.branches.label(r, p.alphabet));
        classes.push_back(cl);
    }
    j["classes"] = classes;
    j["class_size"] = p.C.size();
    j["beta"] = beta_table(p);
    j["rho"] = s.rho;
    j["D"] = to_string(s.D, 20);
    j["base_period"] = p.base_period;
    j["class_period"] = p.lift_period;
    j["d"] = p.total_period();
    j["accelerated"] = p.lift_period > 1;
    j["lifted_states"] = p.labels;
    j["exact"] = p.exact;
    return j.dump(2) + "\n";
}

std::string check_human(const CheckSummary& s)
{
    const LiftPlan& p = s.plan;
    std::ostringstream o;
    o << p.branches.states.size() << " branch states, " << p.branches.classes.size() << " recurrent class"
      << (p.branches.classes.size() == 1 ? "" : "es") << ", rho = " << s.rho << "\n";
    o << "D = " << to_string(s.D, 20) << "\n";
    if (p.lift_period > 1)
        o << "accelerated, d = " << p.total_period() << "\n";
    else
        o << "aperiodic, d = " << p.total_period() << "\n";
    o << "beta table:\n";
    for (std::size_t r = 0; r < p.branches.states.size(); ++r) {
        const auto& st = p.branches.states[r];
        o << "  " << p.alphabet[st.i] << ":" << st.a + 1 << " --" << p.alphabet[st.j] << "--> " << p.alphabet[st.j]
          << ":" << st.b + 1 << "\n";
    }
    o << "class (" << p.C.size() << " states):";
    for (int r : p.C)
        o << " " << p.branches.label(r, p.alphabet);
    o << "\n";
    return o.str();
}

std::string certificate_json(const Certificate& c, int digits)
{
    ordered_json j;
    j["value"] = to_string(c.value, digits);
    j["epsilon"] = to_string(c.epsilon, 6);
    j["certified"] = c.certified();
    j["analytic_bound"] = to_string(c.bound, output_digits());
    j["rounding_allowance"] = to_string(c.allowance, output_digits());
    j["n"] = c.n;
    j["m"] = c.m;
    j["d"] = c.d;
    ordered_json k;
    k["EC"] = to_string(c.constants.EC, output_digits());
    k["D"] = to_string(c.constants.D, output_digits());
    k["rho"] = to_string(c.constants.rho, output_digits());
    if (!c.rho_exact.empty())
        k["rho_exact"] = c.rho_exact;
    k["K"] = to_string(c.constants.K, output_digits());
    k["K_ceiling"] = to_string(c.constants.K_ceiling, output_digits());
    k["rho_m"] = to_string(c.rho_m, 12);
    j["constants"] = k;
    j["mode"] = c.mode;
    j["precision_bits"] = c.precision;
    j["operations"] = c.operations;
    j["seconds"] = c.seconds;
    j["states"] = c.labels;
    return j.dump(2) + "\n";
}

std::string certificate_human(const Certificate& c, int digits)
{
    std::ostringstream o;
    o << "lambda = " << to_string(c.value, digits) << "\n"
      << "  |error| <= " << to_string(c.bound, 6) << " (analytic) + " << to_string(c.allowance, 6)
      << " (rounding) " << (c.certified() ? "< " : ">= ") << to_string(c.epsilon, 3) << "\n"
      << "  n = " << c.n << ", m = " << c.m << ", d = " << c.d << ", rho = "
      << (c.rho_exact.empty() ? to_string(c.constants.rho, 20) : c.rho_exact) << "\n"
      << "  " << c.mode << " mode, " << c.precision << " bits, " << c.operations << " multiply-adds, " << c.seconds
      << " s\n";
    return o.str();
}

std::string omega_json(const OmegaReport& r, const OmegaData& w)
{
    ordered_json j;
    j["t0"] = to_string(w.t0, 20);
    j["radius"] = to_string(w.c, 20);
    j["rho_bar"] = to_string(w.rho_bar, 20);
    j["samples"] = r.samples;
    j["max_f"] = to_string(r.max_f, 12);
    j["max_row_sum"] = to_string(r.max_row_sum, 12);
    j["max_transpose"] = to_string(r.max_transpose, 12);
    j["max_dl"] = to_string(r.max_dl, 12);
    j["max_sum_pi"] = to_string(r.max_sum_pi, 12);
    j["min_pi"] = to_string(r.min_pi, 12);
    j["min_re_denominator"] = to_string(r.min_re_den, 12);
    j["omega2"] = r.omega2;
    j["omega3"] = r.omega3;
    j["omega4"] = r.omega4;
    j["omega5"] = r.omega5;
    j["ok"] = r.ok();
    j["resolution"] = "sampled on the boundary circle; not a proof";
    return j.dump(2) + "\n";
}

std::string taylor_json(const TaylorResult& t, int digits)
{
    ordered_json j;
    ordered_json cs = ordered_json::array();
    for (std::size_t q = 0; q < t.coefficients.size(); ++q)
        cs.push_back({{"order", q},
                      {"value", to_string(t.coefficients[q], digits)},
                      {"analytic_bound", to_string(t.bounds[q], 6)},
                      {"rounding_allowance", to_string(t.allowances[q], 6)},
                      {"n", t.params[q].first},
                      {"m", t.params[q].second},
                      {"certified", t.certified(static_cast<int>(q))}});
    j["coefficients"] = cs;
    j["epsilon"] = to_string(t.epsilon, 6);
    j["n"] = t.n;
    j["m"] = t.m;
    ordered_json w;
    w["t0"] = to_string(t.omega.t0, 20);
    w["radius"] = to_string(t.omega.c, 20);
    w["rho_bar"] = to_string(t.omega.rho_bar, 20);
    w["Qbar"] = to_string(t.omega.k.Qbar, 20);
    w["Dbar"] = to_string(t.omega.k.Dbar, 20);
    w["Ml"] = to_string(t.omega.k.Ml, 20);
    w["Msum_pi"] = to_string(t.omega.k.Msum_pi, 20);
    w["mpi"] = to_string(t.omega.k.mpi, 20);
    w["provenance"] = t.omega.provenance;
    j["omega"] = w;
    if (t.report)
        j["omega_check"] = ordered_json::parse(omega_json(*t.report, t.omega));
    j["rigor"] = t.rigor();
    j["mode"] = t.mode;
    j["precision_bits"] = t.precision;
    j["seconds"] = t.seconds;
    return j.dump(2) + "\n";
}

std::string taylor_human(const TaylorResult& t, int digits)
{
    std::ostringstream o;
    for (std::size_t q = 0; q < t.coefficients.size(); ++q)
        o << "a" << q << " = " << to_string(t.coefficients[q], digits) << "  (+/- " << to_string(t.bounds[q], 3)
          << " + " << to_string(t.allowances[q], 3) << ")\n";
    o << "n = " << t.n << ", m = " << t.m << ", disk radius " << to_string(t.omega.c, 6) << ", " << t.rigor()
      << " (" << t.omega.provenance << " constants), " << t.seconds << " s\n";
    return o.str();
}

std::string simulate_json(const MonteCarloResult& r, long steps, std::uint64_t seed)
{
    ordered_json j;
    j["estimate"] = r.mean;
    j["stderr"] = r.stderr_;
    j["steps"] = steps;
    j["trials"] = r.trials.size();
    j["seed"] = seed;
    j["per_trial"] = r.trials;
    return j.dump(2) + "\n";
}

Real reverify_certificate(const std::string& text)
{
    auto j = ordered_json::parse(text);
    BoundConstants c;
    const auto& k = j.at("constants");
    c.EC = parse_real(k.at("EC").get<std::string>());
    c.D = parse_real(k.at("D").get<std::string>());
    c.rho = parse_real(k.at("rho").get<std::string>());
    c.K = parse_real(k.at("K").get<std::string>());
    c.K_ceiling = parse_real(k.at("K_ceiling").get<std::string>());
    c.d = j.at("d").get<int>();
    return error_bound(c, j.at("n").get<int>(), j.at("m").get<int>());
}

} // namespace lyap
