#pragma once

#include "lyap/numeric.hpp"

#include <algorithm>
#include <vector>

namespace lyap {

namespace detail {
inline int& jet_order_ref()
{
    static thread_local int q = 0;
    return q;
}
} // namespace detail

// Truncation order shared by all jets on this thread.
inline int jet_order() { return detail::jet_order_ref(); }

class JetOrderScope {
public:
    explicit JetOrderScope(int q) : saved_(jet_order()) { detail::jet_order_ref() = q; }
    ~JetOrderScope() { detail::jet_order_ref() = saved_; }
    JetOrderScope(const JetOrderScope&) = delete;
    JetOrderScope& operator=(const JetOrderScope&) = delete;
private:
    int saved_;
};

// Truncated Taylor series sum c_j (t - t0)^j, j <= jet_order().  Only the
// leading coefficients that can be nonzero are stored, so constants cost one
// scalar and broadcast without knowing the order.
template <class T>
class Jet {
public:
    Jet() : c_(1, T(0)) {}
    Jet(int v) : c_(1, T(v)) {}
    Jet(const T& v) : c_(1, v) {}
    explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs))
    {
        if (c_.empty())
            c_.push_back(T(0));
        trim();
    }
    // t0 + (t - t0): the identity jet at t0.
    static Jet variable(const T& t0)
    {
        if (jet_order() == 0)
            return Jet(t0);
        return Jet(std::vector<T>{t0, T(1)});
    }

    int size() const { return static_cast<int>(c_.size()); }
    // coefficient j (zero beyond storage)
    T operator[](int j) const { return j < size() ? c_[j] : T(0); }
    const T& value() const { return c_[0]; }
    const std::vector<T>& coeffs() const { return c_; }

    friend Jet operator-(const Jet& a)
    {
        Jet r = a;
        for (auto& x : r.c_)
            x = -x;
        return r;
    }
    friend Jet operator+(const Jet& a, const Jet& b)
    {
        const Jet& big = a.size() >= b.size() ? a : b;
        const Jet& small = a.size() >= b.size() ? b : a;
        Jet r = big;
        for (int j = 0; j < small.size(); ++j)
            r.c_[j] += small.c_[j];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
    friend Jet operator*(const Jet& a, const Jet& b)
    {
        int n = std::min(jet_order() + 1, a.size() + b.size() - 1);
        std::vector<T> c(n, T(0));
        for (int i = 0; i < a.size() && i < n; ++i)
            for (int j = 0; j < b.size() && i + j < n; ++j)
                add_product(c[i + j], a.c_[i], b.c_[j]);
        return Jet(std::move(c));
    }
    friend Jet operator/(const Jet& a, const Jet& b)
    {
        if (b.size() == 1) {
            Jet r = a;
            for (auto& x : r.c_)
                x /= b.c_[0];
            return r;
        }
        int n = jet_order() + 1;
        std::vector<T> q(n, T(0));
        for (int k = 0; k < n; ++k) {
            T s = a[k];
            for (int j = 1; j <= k && j < b.size(); ++j)
                s -= b.c_[j] * q[k - j];
            q[k] = s / b.c_[0];
        }
        return Jet(std::move(q));
    }
    friend bool operator==(const Jet& a, const Jet& b)
    {
        int n = std::max(a.size(), b.size());
        for (int j = 0; j < n; ++j)
            if (!(a[j] == b[j]))
                return false;
        return true;
    }
    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }
    Jet& operator/=(const Jet& b) { return *this = *this / b; }

    friend Jet sqrt(const Jet& a)
    {
        if (a.size() == 1)
            return Jet(sqrt(a.c_[0]));
        int n = jet_order() + 1;
        std::vector<T> s(n, T(0));
        s[0] = sqrt(a.c_[0]);
        if (s[0] == T(0))
            throw DomainError("jet sqrt with zero constant term");
        for (int k = 1; k < n; ++k) {
            T acc = a[k];
            for (int j = 1; j < k; ++j)
                acc -= s[j] * s[k - j];
            s[k] = acc / (T(2) * s[0]);
        }
        return Jet(std::move(s));
    }
    friend Jet log(const Jet& a)
    {
        if (a.size() == 1)
            return Jet(log(a.c_[0]));
        if (a.c_[0] == T(0))
            throw DomainError("jet log with zero constant term");
        int n = jet_order() + 1;
        std::vector<T> l(n, T(0));
        l[0] = log(a.c_[0]);
        for (int k = 1; k < n; ++k) {
            T acc = T(0);
            for (int j = 1; j < k; ++j)
                acc += T(j) * l[j] * a[k - j];
            l[k] = (a[k] - acc / T(k)) / a.c_[0];
        }
        return Jet(std::move(l));
    }

private:
    void trim()
    {
        int cap = jet_order() + 1;
        if (size() > cap)
            c_.resize(cap);
    }
    std::vector<T> c_;
};

template <class T> struct is_complex_scalar<Jet<T>> : is_complex_scalar<T> {};

template <class T> struct Num<Jet<T>> {
    static constexpr bool exact = Num<T>::exact;
    static Jet<T> from(const Rational& q) { return Jet<T>(Num<T>::from(q)); }
    static double mag(const Jet<T>& x) { return Num<T>::mag(x.value()); }
    static Real real(const Jet<T>& x) { return Num<T>::real(x.value()); }
    static Real upper(const Jet<T>& x) { return Num<T>::upper(x.value()); }
    static int sign(const Jet<T>& x, const Real& scale = Real(1)) { return Num<T>::sign(x.value(), scale); }
};

} // namespace lyap

namespace Eigen {
template <class T> struct NumTraits<lyap::Jet<T>> : GenericNumTraits<lyap::Jet<T>> {
    typedef lyap::Jet<T> Real;
    typedef lyap::Jet<T> NonInteger;
    typedef lyap::Jet<T> Nested;
    typedef lyap::Jet<T> Literal;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1,
           ReadCost = 8, AddCost = 16, MulCost = 64 };
    static inline int digits10() { return 0; }
    static inline lyap::Jet<T> epsilon() { return lyap::Jet<T>(T(0)); }
    static inline lyap::Jet<T> dummy_precision() { return epsilon(); }
};
} // namespace Eigen
