#pragma once

#include "lyap/multicone.hpp"
#include "lyap/system.hpp"

#include <string>
#include <vector>

namespace lyap {

// --- evaluating a system description at a scalar parameter value ----------

template <class S>
Vec2<S> representative(const Endpoint& e, const S& t)
{
    Vec2<S> v;
    if (e.infinite())
        v << S(1), S(0);
    else
        v << eval(e.slope, t), S(1);
    return v;
}

// Frame with columns rep(p), rep(q); rep(q) is negated when the arc wraps
// through infinity (p > q) or starts there, so that u + v is interior.
template <class S>
Mat2<S> default_chart(const ArcSpec& arc, const S& t)
{
    Vec2<S> u = representative(arc.p, t), v = representative(arc.q, t);
    if (arc.p.infinite() && arc.q.infinite())
        throw ValidationError("degenerate arc: both endpoints at infinity");
    bool flip = arc.p.infinite();
    if (!arc.p.infinite() && !arc.q.infinite()) {
        Real ps = Num<S>::real(u(0)), qs = Num<S>::real(v(0));
        if (ps == qs)
            throw ValidationError("degenerate arc: equal endpoints");
        flip = ps > qs;
    }
    if (flip)
        v = -v;
    Mat2<S> L;
    L << u, v;
    return L;
}

template <class S>
std::vector<Mat2<S>> evaluate_matrices(const SystemSpec& spec, const S& t)
{
    std::vector<Mat2<S>> A;
    for (const auto& m : spec.matrices)
        A.push_back(mat2<S>(eval(m[0], t), eval(m[1], t), eval(m[2], t), eval(m[3], t)));
    return A;
}

template <class S>
Matrix<S> evaluate_transition(const SystemSpec& spec, const S& t)
{
    const int n = static_cast<int>(spec.alphabet.size());
    Matrix<S> P(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            P(i, j) = eval(spec.transition[i][j], t);
    return P;
}

// Explicit chart when given (checked against the arc if `check`), else the default.
template <class S>
Mat2<S> chart_for(const SystemSpec& spec, int i, int a, const S& t, bool check)
{
    const ArcSpec& arc = spec.multicone[i][a];
    Mat2<S> D = default_chart(arc, t);
    auto it = spec.charts.find({i, a});
    if (it == spec.charts.end())
        return D;
    const auto& e = it->second;
    Mat2<S> L = mat2<S>(eval(e[0], t), eval(e[1], t), eval(e[2], t), eval(e[3], t));
    if (check) {
        std::string name = spec.alphabet[i] + ":" + std::to_string(a + 1);
        auto parallel = [](const Vec2<S>& x, const Vec2<S>& y) {
            S c = x(0) * y(1) - x(1) * y(0);
            Real sc = std::max(abs(Num<S>::real(x(0))), abs(Num<S>::real(x(1)))) *
                      std::max(abs(Num<S>::real(y(0))), abs(Num<S>::real(y(1))));
            if (Num<S>::exact)
                return Num<S>::sign(c) == 0;
            return abs(Num<S>::real(c)) <= tolerance() * sc;
        };
        Vec2<S> u = L.col(0), v = L.col(1), p = D.col(0), q = D.col(1);
        bool ends = (parallel(u, p) && parallel(v, q)) || (parallel(u, q) && parallel(v, p));
        if (!ends)
            throw ValidationError("chart " + name + " does not frame the declared arc endpoints");
        ProjPoint<S> mid{Vec2<S>(u + v)};
        if (!arc_contains(Arc<S>{D}, mid, true))
            throw ValidationError("chart " + name + " frames the complementary arc");
    }
    return L;
}

template <class S>
Multicone<S> evaluate_multicone(const SystemSpec& spec, const S& t, bool check)
{
    Multicone<S> M(spec.alphabet.size());
    for (std::size_t i = 0; i < spec.multicone.size(); ++i)
        for (std::size_t a = 0; a < spec.multicone[i].size(); ++a)
            M[i].push_back(Arc<S>{chart_for(spec, static_cast<int>(i), static_cast<int>(a), t, check)});
    return M;
}

// --- the lift --------------------------------------------------------------

// Structural part of the lift, decided once at the base point.
struct LiftPlan {
    std::vector<std::string> alphabet;
    Digraph support;
    int base_chain_period = 1;
    BranchSystem branches;
    std::vector<int> C;
    int lift_period = 1;
    std::vector<std::vector<int>> blocks;  // positions in C; singletons when lift_period == 1
    Digraph graph;  // support of the (accelerated) lifted chain
    std::vector<std::string> labels;
    int base_period = 1;  // declared by the file (d-step base systems)
    bool exact = false;   // decided in rational arithmetic

    int total_period() const { return base_period * lift_period; }
    int size() const { return static_cast<int>(blocks.size()); }
};

LiftPlan plan_lift(const SystemSpec& spec);

template <class S>
struct LiftedSystem {
    std::vector<std::string> labels;
    Matrix<S> Q;
    Vector<S> pi;
    std::vector<Mat2<S>> B;
    std::vector<Mobius<S>> f;
    Digraph graph;
    int d = 1;

    int size() const { return static_cast<int>(B.size()); }
    S transpose_at_zero(int r) const { return f[r].gamma / f[r].delta; }  // f^T(0)
    S at_zero(int r) const { return f[r].beta / f[r].delta; }             // f(0)
    S derivative_at_zero(int r) const { return f[r].derivative_at(S(0)); }
    S log_delta(int r) const { return log(f[r].delta); }                  // l_r(0)
};

template <class S>
LiftedSystem<S> instantiate(const SystemSpec& spec, const LiftPlan& plan, const S& t)
{
    auto A = evaluate_matrices(spec, t);
    auto P = evaluate_transition(spec, t);
    auto M = evaluate_multicone(spec, t, false);

    const int nc = static_cast<int>(plan.C.size());
    std::vector<Mat2<S>> Bc(nc);
    for (int x = 0; x < nc; ++x) {
        const auto& r = plan.branches.states[plan.C[x]];
        S eps(plan.branches.signs[plan.C[x]]);
        Bc[x] = inverse2(M[r.j][r.b].frame) * A[r.j] * M[r.i][r.a].frame * eps;
    }
    Matrix<S> Qc = branch_transition(plan.branches, plan.C, P);

    LiftedSystem<S> ls;
    ls.labels = plan.labels;
    ls.graph = plan.graph;
    ls.d = plan.total_period();
    for (const auto& blk : plan.blocks) {
        Mat2<S> prod = Bc[blk[0]];
        for (std::size_t k = 1; k < blk.size(); ++k)
            prod = Bc[blk[k]] * prod;
        ls.B.push_back(prod);
        ls.f.push_back(Mobius<S>::from_mat(f_conjugate(prod)));
    }
    ls.Q = plan.lift_period == 1 ? Qc : block_transition(Qc, plan.blocks);
    ls.pi = stationary(ls.Q, 0);
    return ls;
}

// Entrywise strict positivity of every B_r (sign-decidable scalars only).
template <class S>
void require_positive(const LiftedSystem<S>& ls)
{
    for (int r = 0; r < ls.size(); ++r) {
        Real sc = scale_of(ls.B[r]);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (Num<S>::sign(ls.B[r](i, j), sc) <= 0)
                    throw std::logic_error("B_" + ls.labels[r] + " is not positive");
    }
}

// max_r max(|f_r(-1)|, |f_r(1)|), an upper bound at working precision.
template <class S>
Real contraction_factor(const LiftedSystem<S>& ls)
{
    Real rho(0);
    for (int r = 0; r < ls.size(); ++r)
        for (int s : {-1, 1}) {
            S v = ls.f[r](S(s));
            rho = std::max(rho, std::max(Num<S>::upper(v), Num<S>::upper(S(-v))));
        }
    if (rho >= 1)
        throw std::logic_error("contraction factor >= 1 for a validated multicone");
    return rho;
}

// Exact contraction factor in rational arithmetic.
Rational contraction_factor_exact(const LiftedSystem<Rational>& ls);

// D = max_r |f_r^T(0)|
template <class S>
Real transpose_bound(const LiftedSystem<S>& ls)
{
    Real D(0);
    for (int r = 0; r < ls.size(); ++r) {
        S a = ls.transpose_at_zero(r);
        D = std::max(D, std::max(Num<S>::upper(a), Num<S>::upper(S(-a))));
    }
    return D;
}

} // namespace lyap
