#pragma once

#include "lyap/numeric.hpp"

#include <algorithm>

namespace lyap {

// Closed interval [lo, hi] with outward rounding on every operation.
class Interval {
public:
    Interval() : lo_(0), hi_(0) {}
    Interval(int v) : lo_(v), hi_(v) {}
    Interval(const Real& v) : lo_(v), hi_(v) {}
    Interval(const Real& lo, const Real& hi) : lo_(lo), hi_(hi)
    {
        if (lo_ > hi_)
            throw DomainError("interval with lo > hi");
    }
    explicit Interval(const Rational& q)
    {
        mpfr_set_q(lo_.backend().data(), q.backend().data(), MPFR_RNDD);
        mpfr_set_q(hi_.backend().data(), q.backend().data(), MPFR_RNDU);
    }

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    Real mid() const { return (lo_ + hi_) / 2; }
    Real rad() const
    {
        Real r;
        mpfr_sub(r.backend().data(), hi_.backend().data(), lo_.backend().data(), MPFR_RNDU);
        mpfr_div_2ui(r.backend().data(), r.backend().data(), 1, MPFR_RNDU);
        return r;
    }
    Real mag() const { return std::max(abs(lo_), abs(hi_)); }
    bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }

    friend Interval operator+(const Interval& a, const Interval& b)
    {
        Interval r;
        mpfr_add(r.lo_.backend().data(), a.lo_.backend().data(), b.lo_.backend().data(), MPFR_RNDD);
        mpfr_add(r.hi_.backend().data(), a.hi_.backend().data(), b.hi_.backend().data(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b)
    {
        Interval r;
        mpfr_sub(r.lo_.backend().data(), a.lo_.backend().data(), b.hi_.backend().data(), MPFR_RNDD);
        mpfr_sub(r.hi_.backend().data(), a.hi_.backend().data(), b.lo_.backend().data(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b)
    {
        const Real* xs[2] = {&a.lo_, &a.hi_};
        const Real* ys[2] = {&b.lo_, &b.hi_};
        Interval r;
        Real t;
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_mul(t.backend().data(), x->backend().data(), y->backend().data(), MPFR_RNDD);
                if (first || t < r.lo_)
                    r.lo_ = t;
                mpfr_mul(t.backend().data(), x->backend().data(), y->backend().data(), MPFR_RNDU);
                if (first || t > r.hi_)
                    r.hi_ = t;
                first = false;
            }
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b)
    {
        if (b.contains_zero())
            throw IndeterminateError("interval division by an enclosure of zero");
        Interval inv;
        Real one(1);
        mpfr_div(inv.lo_.backend().data(), one.backend().data(), b.hi_.backend().data(), MPFR_RNDD);
        mpfr_div(inv.hi_.backend().data(), one.backend().data(), b.lo_.backend().data(), MPFR_RNDU);
        return a * inv;
    }
    friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }
    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }
    Interval& operator/=(const Interval& b) { return *this = *this / b; }

    friend Interval sqrt(const Interval& a)
    {
        if (a.lo_.sign() < 0)
            throw DomainError("interval sqrt of possibly negative value");
        Interval r;
        mpfr_sqrt(r.lo_.backend().data(), a.lo_.backend().data(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.backend().data(), a.hi_.backend().data(), MPFR_RNDU);
        return r;
    }
    friend Interval log(const Interval& a)
    {
        if (a.lo_.sign() <= 0)
            throw DomainError("interval log of possibly non-positive value");
        Interval r;
        mpfr_log(r.lo_.backend().data(), a.lo_.backend().data(), MPFR_RNDD);
        mpfr_log(r.hi_.backend().data(), a.hi_.backend().data(), MPFR_RNDU);
        return r;
    }
    friend Interval atanh(const Interval& a)
    {
        if (a.lo_ <= -1 || a.hi_ >= 1)
            throw DomainError("interval artanh outside (-1,1)");
        Interval r;
        mpfr_atanh(r.lo_.backend().data(), a.lo_.backend().data(), MPFR_RNDD);
        mpfr_atanh(r.hi_.backend().data(), a.hi_.backend().data(), MPFR_RNDU);
        return r;
    }
    friend Interval abs(const Interval& a)
    {
        if (a.lo_.sign() >= 0)
            return a;
        if (a.hi_.sign() <= 0)
            return -a;
        return {Real(0), a.mag()};
    }

private:
    Real lo_, hi_;
};

template <> struct Num<Interval> {
    static constexpr bool exact = false;
    static Interval from(const Rational& q) { return Interval(q); }
    static double mag(const Interval& x) { return x.mag().convert_to<double>(); }
    static Real real(const Interval& x) { return x.mid(); }
    static Real upper(const Interval& x) { return x.hi(); }
    // Decided only when the enclosure excludes zero.
    static int sign(const Interval& x, const Real& = Real(1))
    {
        if (x.contains_zero())
            throw IndeterminateError("interval encloses zero");
        return x.lo().sign() > 0 ? 1 : -1;
    }
};

} // namespace lyap

namespace Eigen {
template <> struct NumTraits<lyap::Interval> : GenericNumTraits<lyap::Interval> {
    typedef lyap::Interval Real;
    typedef lyap::Interval NonInteger;
    typedef lyap::Interval Nested;
    typedef lyap::Interval Literal;
    enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1,
           ReadCost = 4, AddCost = 8, MulCost = 16 };
    static inline int digits10() { return 0; }
    static inline lyap::Interval epsilon() { return lyap::Interval(lyap::tolerance()); }
    static inline lyap::Interval dummy_precision() { return epsilon(); }
};
} // namespace Eigen
