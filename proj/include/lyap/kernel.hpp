#pragma once

#include "lyap/lift.hpp"

#include <cstdint>
#include <type_traits>
#include <vector>

namespace lyap {

// Multiply-add counter for the operation-count scaling check.
struct KernelStats {
    std::uint64_t mul_adds = 0;
};

// m x m block b[k][n] of the transfer operator of one branch state.
template <class S>
struct KernelBlock {
    int m = 0;
    std::vector<S> b;  // row-major

    const S& operator()(int k, int n) const { return b[static_cast<std::size_t>(k) * m + n]; }
    S& operator()(int k, int n) { return b[static_cast<std::size_t>(k) * m + n]; }
};

// Entries from a = f^T(0), f0 = f(0), c = f'(0):
//   b[k][n] = sum_l C(n,l) C(k-1,l-1) a^(n-l) (-f0)^(k-l) c^l
// evaluated through the generating function
//   sum b[k][n] x^k y^n = c x y / ((1 - a y)((1 - a y)(1 + f0 x) - c x y)),
// i.e. with h = (1 - a y) * (that series) in O(m^2):
//   h[k][n] = a h[k][n-1] + e h[k-1][n] - (a e - c) h[k-1][n-1] + c [k = n = 1]
//   b[k][n] = h[k][n] + a b[k][n-1],  e = -f0.
template <class S>
KernelBlock<S> kernel_entries(const S& a, const S& f0, const S& c, int m, KernelStats* stats = nullptr)
{
    KernelBlock<S> K;
    K.m = m;
    K.b.assign(static_cast<std::size_t>(m) * m, S(0));
    S e = -f0;
    S cross = a * e - c;
    S p(1);
    for (int n = 1; n < m; ++n) {
        p = p * a;
        K(0, n) = p;
    }
    std::vector<S> hprev(m, S(0)), hcur(m, S(0));
    for (int k = 1; k < m; ++k) {
        hcur[0] = S(0);
        for (int n = 1; n < m; ++n) {
            S h = a * hcur[n - 1];
            add_product(h, e, hprev[n]);
            h -= cross * hprev[n - 1];
            if (k == 1 && n == 1)
                h += c;
            hcur[n] = h;
            S v = h;
            add_product(v, a, K(k, n - 1));
            K(k, n) = v;
        }
        std::swap(hprev, hcur);
    }
    if (stats)
        stats->mul_adds += 4ull * m * m;
    return K;
}

// Binomial-sum reference for kernel_entries (O(m^3); tests only).
template <class S>
KernelBlock<S> kernel_entries_direct(const S& a, const S& f0, const S& c, int m)
{
    KernelBlock<S> K;
    K.m = m;
    K.b.assign(static_cast<std::size_t>(m) * m, S(0));
    auto binom = [](int n, int k) {
        Integer r(1);
        for (int j = 1; j <= k; ++j)
            r = r * (n - k + j) / j;
        return Rational(r);
    };
    for (int n = 1; n < m; ++n)
        K(0, n) = ipow(a, n);
    for (int k = 1; k < m; ++k)
        for (int n = 1; n < m; ++n) {
            S s(0);
            for (int l = 1; l <= std::min(k, n); ++l)
                s += Num<S>::from(binom(n, l) * binom(k - 1, l - 1)) * ipow(a, n - l) * ipow(S(-f0), k - l) * ipow(c, l);
            K(k, n) = s;
        }
    return K;
}

template <class S> using StateVector = std::vector<std::vector<S>>;

// Truncation of v(x; c): coordinate 0 is c, coordinate n is -(-x)^n / n.
template <class S>
std::vector<S> generator(const S& x, const S& c, int m)
{
    std::vector<S> v(m);
    v[0] = c;
    S p(1);
    for (int n = 1; n < m; ++n) {
        p = p * (-x);
        v[n] = -p / S(n);
    }
    return v;
}

// y = T_r u (m x m block times vector)
template <class S>
std::vector<S> block_apply(const KernelBlock<S>& K, const std::vector<S>& u)
{
    std::vector<S> y(K.m, S(0));
    for (int k = 0; k < K.m; ++k) {
        S acc(0);
        const S* row = &K.b[static_cast<std::size_t>(k) * K.m];
        for (int n = 1; n < K.m; ++n)
            add_product(acc, row[n], u[n]);
        y[k] = acc;
    }
    return y;
}

// Truncated operator (T u)_{r'} = sum_r (pi_r Q_{r,r'} / pi_{r'}) T_r u_r.
template <class S>
class KernelOperator {
public:
    KernelOperator(const LiftedSystem<S>& ls, int m, KernelStats* stats = nullptr)
        : ls_(ls), m_(m), stats_(stats), in_(ls.size())
    {
        for (int r = 0; r < ls.size(); ++r) {
            blocks_.push_back(kernel_entries(ls.transpose_at_zero(r), ls.at_zero(r), ls.derivative_at_zero(r), m, stats));
            for (int s : ls.graph[r])
                in_[s].push_back({r, ls.pi(r) * ls.Q(r, s) / ls.pi(s)});
        }
    }

    int order() const { return m_; }
    const KernelBlock<S>& block(int r) const { return blocks_[r]; }
    const std::vector<std::pair<int, S>>& incoming(int s) const { return in_[s]; }

    StateVector<S> apply(const StateVector<S>& u) const
    {
        const int n = ls_.size();
        StateVector<S> y(n);
        for (int r = 0; r < n; ++r)
            y[r] = block_apply(blocks_[r], u[r]);
        StateVector<S> out(n, std::vector<S>(m_, S(0)));
        for (int s = 0; s < n; ++s)
            for (const auto& [r, w] : in_[s])
                for (int k = 0; k < m_; ++k)
                    add_product(out[s][k], w, y[r][k]);
        if (stats_) {
            stats_->mul_adds += static_cast<std::uint64_t>(n) * m_ * (m_ - 1);
            for (const auto& e : in_)
                stats_->mul_adds += e.size() * static_cast<std::uint64_t>(m_);
        }
        return out;
    }

    // v-hat: sum_r w(r,s) v(f_r(0); l_r(0)), divided by the total period d.
    StateVector<S> seed() const
    {
        const int n = ls_.size();
        S inv_d = S(1) / S(ls_.d);
        std::vector<std::vector<S>> gen(n);
        for (int r = 0; r < n; ++r)
            gen[r] = generator(ls_.at_zero(r), ls_.log_delta(r), m_);
        StateVector<S> v(n, std::vector<S>(m_, S(0)));
        for (int s = 0; s < n; ++s) {
            for (const auto& [r, w] : in_[s])
                for (int k = 0; k < m_; ++k)
                    add_product(v[s][k], w, gen[r][k]);
            for (auto& x : v[s])
                x = x * inv_d;
        }
        return v;
    }

    // [u]_0 = sum_r pi_r u_{r,0}
    S functional(const StateVector<S>& u) const
    {
        S s(0);
        for (int r = 0; r < ls_.size(); ++r)
            add_product(s, ls_.pi(r), u[r][0]);
        return s;
    }

private:
    const LiftedSystem<S>& ls_;
    int m_;
    KernelStats* stats_;
    std::vector<KernelBlock<S>> blocks_;
    std::vector<std::vector<std::pair<int, S>>> in_;
};

// Real fast path: the iteration runs on contiguous MPFR storage at exactly
// requested_precision() bits (boost's Real rounds 256 up to 257 bits, which
// costs a fifth limb in every product).  Returns the partial sums for each
// n in `ns` (ascending).
std::vector<Real> partial_sums_raw(const LiftedSystem<Real>& ls, const std::vector<int>& ns, int m,
                                   KernelStats* stats);

// sum_{l<n} [T_m^l v-hat]_0
template <class S>
S partial_sum(const LiftedSystem<S>& ls, int n, int m, KernelStats* stats = nullptr)
{
    if constexpr (std::is_same_v<S, Real>)
        return partial_sums_raw(ls, {n}, m, stats)[0];
    KernelOperator<S> T(ls, m, stats);
    StateVector<S> u = T.seed();
    S sum(0);
    for (int l = 0; l < n; ++l) {
        sum += T.functional(u);
        if (l + 1 < n)
            u = T.apply(u);
    }
    return sum;
}

// Partial sums for every n in `ns` (ascending) from one iteration.
template <class S>
std::vector<S> partial_sums(const LiftedSystem<S>& ls, const std::vector<int>& ns, int m)
{
    if constexpr (std::is_same_v<S, Real>)
        return partial_sums_raw(ls, ns, m, nullptr);
    KernelOperator<S> T(ls, m);
    StateVector<S> u = T.seed();
    S sum(0);
    std::vector<S> out;
    std::size_t next = 0;
    for (int l = 0; next < ns.size(); ++l) {
        sum += T.functional(u);
        while (next < ns.size() && ns[next] == l + 1) {
            out.push_back(sum);
            ++next;
        }
        if (next < ns.size())
            u = T.apply(u);
    }
    return out;
}

// Path-enumeration form of sum_{j<n} T^j v (undivided seed), truncated to m
// coordinates: for every path r_0..r_{n-1} the generator
// v(f^(n)(0); l_{r_{n-1}}(f^(n-1)(0))) weighted by p(path) Q_{r_{n-1}, r'} / pi_{r'}.
template <class S>
StateVector<S> path_sum(const LiftedSystem<S>& ls, int n, int m)
{
    const int N = ls.size();
    StateVector<S> out(N, std::vector<S>(m, S(0)));
    std::vector<int> path(n, 0);
    for (;;) {
        S p = ls.pi(path[0]);
        for (int j = 0; j + 1 < n; ++j)
            p = p * ls.Q(path[j], path[j + 1]);
        if (!(p == S(0))) {
            S x(0), before(0);
            for (int j = 0; j < n; ++j) {
                before = x;
                x = ls.f[path[j]](x);
            }
            const auto& g = ls.f[path[n - 1]];
            S c = log(g.gamma * before + g.delta);
            auto v = generator(x, c, m);
            for (int s = 0; s < N; ++s) {
                if (ls.Q(path[n - 1], s) == S(0))
                    continue;
                S w = p * ls.Q(path[n - 1], s) / ls.pi(s);
                for (int k = 0; k < m; ++k)
                    add_product(out[s][k], w, v[k]);
            }
        }
        int j = n - 1;
        while (j >= 0 && ++path[j] == N)
            path[j--] = 0;
        if (j < 0)
            break;
    }
    return out;
}

} // namespace lyap
