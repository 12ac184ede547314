#include "lyap/kernel.hpp"

namespace lyap {

namespace {

// Contiguous MPFR numbers sharing one precision.
class RawVector {
public:
    RawVector(std::size_t n, mpfr_prec_t p)
        : x_(n), mem_(n * (mpfr_custom_get_size(p) / sizeof(mp_limb_t)))
    {
        const std::size_t stride = mpfr_custom_get_size(p) / sizeof(mp_limb_t);
        for (std::size_t i = 0; i < n; ++i) {
            mpfr_custom_init(&mem_[i * stride], p);
            mpfr_custom_init_set(&x_[i], MPFR_ZERO_KIND, 0, p, &mem_[i * stride]);
        }
    }
    RawVector(RawVector&&) = default;
    RawVector& operator=(RawVector&&) = default;
    RawVector(const RawVector&) = delete;
    RawVector& operator=(const RawVector&) = delete;

    std::size_t size() const { return x_.size(); }
    mpfr_ptr operator[](std::size_t i) { return &x_[i]; }
    mpfr_srcptr operator[](std::size_t i) const { return &x_[i]; }
    void zero()
    {
        for (auto& v : x_)
            mpfr_set_zero(&v, 1);
    }

private:
    std::vector<__mpfr_struct> x_;
    std::vector<mp_limb_t> mem_;
};

} // namespace

std::vector<Real> partial_sums_raw(const LiftedSystem<Real>& ls, const std::vector<int>& ns, int m,
                                   KernelStats* stats)
{
    const mpfr_prec_t p = requested_precision();
    const int R = ls.size();
    const std::size_t mm = static_cast<std::size_t>(m) * m;

    RawVector blocks(R * mm, p);
    for (int r = 0; r < R; ++r) {
        KernelBlock<Real> K =
            kernel_entries(ls.transpose_at_zero(r), ls.at_zero(r), ls.derivative_at_zero(r), m, stats);
        for (std::size_t i = 0; i < mm; ++i)
            mpfr_set(blocks[r * mm + i], K.b[i].backend().data(), MPFR_RNDN);
    }
    // incoming weights w(r, s) = pi_r Q_rs / pi_s
    std::vector<std::vector<std::pair<int, Real>>> in(R);
    for (int r = 0; r < R; ++r)
        for (int s : ls.graph[r])
            in[s].push_back({r, ls.pi(r) * ls.Q(r, s) / ls.pi(s)});
    std::size_t edges = 0;
    for (const auto& e : in)
        edges += e.size();
    RawVector weights(edges, p);
    std::vector<std::vector<std::pair<int, std::size_t>>> win(R);
    {
        std::size_t k = 0;
        for (int s = 0; s < R; ++s)
            for (const auto& [r, w] : in[s]) {
                mpfr_set(weights[k], w.backend().data(), MPFR_RNDN);
                win[s].push_back({r, k++});
            }
    }

    // seed v-hat / d
    RawVector u(R * static_cast<std::size_t>(m), p), y(R * static_cast<std::size_t>(m), p);
    {
        Real inv_d = Real(1) / Real(ls.d);
        std::vector<std::vector<Real>> gen(R);
        for (int r = 0; r < R; ++r)
            gen[r] = generator(ls.at_zero(r), ls.log_delta(r), m);
        for (int s = 0; s < R; ++s)
            for (int k = 0; k < m; ++k) {
                Real acc(0);
                for (const auto& [r, w] : in[s])
                    add_product(acc, w, gen[r][k]);
                acc *= inv_d;
                mpfr_set(u[s * m + k], acc.backend().data(), MPFR_RNDN);
            }
    }

    mpfr_t tmp, acc;
    mpfr_init2(tmp, p);
    mpfr_init2(acc, p);
    Real sum(0);
    std::vector<Real> out;
    std::size_t next = 0;
    for (int l = 0; next < ns.size(); ++l) {
        for (int r = 0; r < R; ++r) {
            Real t(ls.pi(r));
            t *= Real(u[r * m]);
            sum += t;
        }
        while (next < ns.size() && ns[next] == l + 1) {
            out.push_back(sum);
            ++next;
        }
        if (next == ns.size())
            break;
        // y_r = T_r u_r
        for (int r = 0; r < R; ++r)
            for (int k = 0; k < m; ++k) {
                mpfr_set_zero(acc, 1);
                const std::size_t row = r * mm + static_cast<std::size_t>(k) * m;
                for (int n = 1; n < m; ++n) {
                    mpfr_mul(tmp, blocks[row + n], u[r * m + n], MPFR_RNDN);
                    mpfr_add(acc, acc, tmp, MPFR_RNDN);
                }
                mpfr_set(y[r * m + k], acc, MPFR_RNDN);
            }
        // u_s = sum_r w(r, s) y_r
        for (int s = 0; s < R; ++s)
            for (int k = 0; k < m; ++k) {
                mpfr_set_zero(acc, 1);
                for (const auto& [r, w] : win[s]) {
                    mpfr_mul(tmp, weights[w], y[r * m + k], MPFR_RNDN);
                    mpfr_add(acc, acc, tmp, MPFR_RNDN);
                }
                mpfr_set(u[s * m + k], acc, MPFR_RNDN);
            }
        if (stats)
            stats->mul_adds += static_cast<std::uint64_t>(R) * m * (m - 1) + edges * static_cast<std::uint64_t>(m);
    }
    mpfr_clear(tmp);
    mpfr_clear(acc);
    return out;
}

} // namespace lyap
