#include "lyap/lift.hpp"

namespace lyap {

namespace {

bool all_rational(const SystemSpec& spec, const Rational& t)
{
    auto ok = [&](const Expr& e) { return !e || try_rational(e, t).has_value(); };
    for (const auto& m : spec.matrices)
        for (const auto& e : m)
            if (!ok(e))
                return false;
    for (const auto& row : spec.transition)
        for (const auto& e : row)
            if (!ok(e))
                return false;
    for (const auto& arcs : spec.multicone)
        for (const auto& a : arcs)
            if (!ok(a.p.slope) || !ok(a.q.slope))
                return false;
    for (const auto& [k, m] : spec.charts)
        for (const auto& e : m)
            if (!ok(e))
                return false;
    return true;
}

template <class S>
void plan_with(const SystemSpec& spec, const S& t, LiftPlan& plan)
{
    auto P = evaluate_transition(spec, t);
    validate_stochastic(P, spec.alphabet);
    plan.support = support_of(P);
    require_irreducible(plan.support, spec.alphabet);
    plan.base_chain_period = period(plan.support);

    auto A = evaluate_matrices(spec, t);
    for (std::size_t i = 0; i < A.size(); ++i)
        if (Num<S>::sign(det2(A[i]), scale_of(A[i]) * scale_of(A[i])) == 0)
            throw ValidationError("matrix " + spec.alphabet[i] + " is singular");
    auto M = evaluate_multicone(spec, t, true);
    auto table = validate_multicone(A, plan.support, M, spec.alphabet);
    plan.branches = build_branch_system(table, plan.support);
}

} // namespace

LiftPlan plan_lift(const SystemSpec& spec)
{
    LiftPlan plan;
    plan.alphabet = spec.alphabet;
    plan.base_period = spec.base_period;
    Rational t0 = spec.base_point();
    plan.exact = all_rational(spec, t0);
    if (plan.exact)
        plan_with(spec, t0, plan);
    else
        plan_with(spec, to_real(t0), plan);

    plan.C = select_class(plan.branches, spec.options.class_choice);
    Digraph g = induced(plan.branches.graph, plan.C);
    plan.lift_period = period(g);
    if (plan.lift_period == 1) {
        for (int x = 0; x < static_cast<int>(plan.C.size()); ++x)
            plan.blocks.push_back({x});
        plan.graph = g;
    } else {
        plan.blocks = block_paths(g, plan.lift_period, 0);
        plan.graph = block_graph(g, plan.blocks);
    }
    for (const auto& blk : plan.blocks) {
        std::string s;
        for (int x : blk)
            s += (s.empty() ? "" : "|") + plan.branches.label(plan.C[x], spec.alphabet);
        plan.labels.push_back(s);
    }
    return plan;
}

Rational contraction_factor_exact(const LiftedSystem<Rational>& ls)
{
    Rational rho(0);
    for (int r = 0; r < ls.size(); ++r)
        for (int s : {-1, 1})
            rho = std::max(rho, Rational(abs(mobius_eval(ls.f[r], Rational(s)))));
    return rho;
}

} // namespace lyap
