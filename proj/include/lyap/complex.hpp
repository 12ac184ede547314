#pragma once

#include "lyap/numeric.hpp"

namespace lyap {

// Complex numbers over an arbitrary real scalar (std::complex is only
// specified for the builtin floating types).
template <class T>
class Complex {
public:
    Complex() : re_(0), im_(0) {}
    Complex(int v) : re_(v), im_(0) {}
    Complex(const T& re) : re_(re), im_(0) {}
    Complex(const T& re, const T& im) : re_(re), im_(im) {}

    const T& re() const { return re_; }
    const T& im() const { return im_; }

    friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        T n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n == 0)
            throw PoleError("complex division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
    Complex& operator/=(const Complex& b) { return *this = *this / b; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    friend T norm(const Complex& a) { return a.re_ * a.re_ + a.im_ * a.im_; }
    friend T abs(const Complex& a) { return sqrt(norm(a)); }
    friend T arg(const Complex& a) { return atan2(a.im_, a.re_); }
    friend Complex conj(const Complex& a) { return {a.re_, -a.im_}; }
    // principal branches
    friend Complex log(const Complex& a)
    {
        if (norm(a) == 0)
            throw DomainError("complex log of zero");
        return {log(abs(a)), arg(a)};
    }
    friend Complex sqrt(const Complex& a)
    {
        T r = abs(a);
        T x = sqrt((r + a.re_) / 2);
        T y = sqrt((r - a.re_) / 2);
        if (a.im_ < 0)
            y = -y;
        return {x, y};
    }

private:
    T re_, im_;
};

template <class T> Complex<T> polar(const T& r, const T& theta) { return {r * cos(theta), r * sin(theta)}; }

template <class T> struct is_complex_scalar<Complex<T>> : std::true_type {};

template <class T> struct Num<Complex<T>> {
    static constexpr bool exact = false;
    static Complex<T> from(const Rational& q) { return Complex<T>(Num<T>::from(q)); }
    static double mag(const Complex<T>& x) { return abs(x).template convert_to<double>(); }
    static Real real(const Complex<T>& x) { return Num<T>::real(x.re()); }
    static Real upper(const Complex<T>& x) { return Num<T>::upper(x.re()); }
    static int sign(const Complex<T>&, const Real& = Real(1))
    {
        throw DomainError("sign of a complex number");
    }
};

} // namespace lyap

namespace Eigen {
template <class T> struct NumTraits<lyap::Complex<T>> : GenericNumTraits<lyap::Complex<T>> {
    typedef T Real;
    typedef lyap::Complex<T> NonInteger;
    typedef lyap::Complex<T> Nested;
    typedef lyap::Complex<T> Literal;
    enum { IsComplex = 1, IsInteger = 0, IsSigned = 1, RequireInitialization = 1,
           ReadCost = 2, AddCost = 4, MulCost = 16 };
    static inline int digits10() { return 0; }
    static inline T epsilon() { return T(lyap::tolerance()); }
    static inline T dummy_precision() { return epsilon(); }
};
} // namespace Eigen
