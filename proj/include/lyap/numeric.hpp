#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <string>

namespace lyap {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// Exit-code carrying exceptions. 1 = validation, 2 = numeric, 3 = parse/io.
struct Error : std::runtime_error {
    int code;
    Error(const std::string& what, int c) : std::runtime_error(what), code(c) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(w, 1) {}
};
struct IndeterminateError : Error {
    explicit IndeterminateError(const std::string& w) : Error("cannot certify: " + w, 2) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain error: " + w, 2) {}
};
struct SingularError : Error {
    explicit SingularError(const std::string& w) : Error("singular: " + w, 2) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole: " + w, 2) {}
};
struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& w, std::size_t off)
        : Error("parse error at offset " + std::to_string(off) + ": " + w, 3), offset(off) {}
};
struct IOError : Error {
    explicit IOError(const std::string& w) : Error(w, 3) {}
};

// --- precision -------------------------------------------------------------

// Sets the working precision of newly created Reals (binary digits).
void set_precision(unsigned bits);
// Actual binary precision of a freshly constructed Real (boost rounds the
// request up through decimal digits, e.g. 256 -> 257).
unsigned precision();
// The precision last requested; hot loops on raw MPFR storage use it exactly.
unsigned requested_precision();

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(requested_precision()) { set_precision(bits); }
    ~PrecisionScope() { set_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;
private:
    unsigned saved_;
};

// Sign-test tolerance 2^(16-p).
Real tolerance();
// 2^(e) at working precision.
Real pow2(long e);

// --- conversions -----------------------------------------------------------

// "n", "n/d", decimal "1.25", "-3e-2"; result is canonical.
Rational parse_rational(const std::string& s);
Real parse_real(const std::string& s);
Real to_real(const Rational& q);
std::string to_string(const Rational& q);
std::string to_string(const Real& x, int digits = 0);

// ½ log((1+x)/(1-x)); DomainError for |x| >= 1.
Real artanh_checked(const Real& x);

// --- scalar traits ---------------------------------------------------------
//
// Num<S> is the single place where the pipeline asks questions about a
// scalar: how to build it from a rational, how large it is (for pivoting),
// and whether its sign is decided.

template <class S> struct Num;

template <class S> struct is_complex_scalar : std::false_type {};

template <> struct Num<Rational> {
    static constexpr bool exact = true;
    static Rational from(const Rational& q) { return q; }
    static double mag(const Rational& x) { return std::fabs(x.convert_to<double>()); }
    static Real real(const Rational& x) { return to_real(x); }
    static Real upper(const Rational& x)
    {
        Real r;
        mpfr_set_q(r.backend().data(), x.backend().data(), MPFR_RNDU);
        return r;
    }
    // Exact sign; scale is ignored.
    static int sign(const Rational& x, const Real& = Real(1)) { return x.sign(); }
};

template <> struct Num<Real> {
    static constexpr bool exact = false;
    static Real from(const Rational& q) { return to_real(q); }
    static double mag(const Real& x) { return std::fabs(x.convert_to<double>()); }
    static Real real(const Real& x) { return x; }
    static Real upper(const Real& x) { return x; }
    // |x| <= tau*scale is undecided and throws.
    static int sign(const Real& x, const Real& scale = Real(1))
    {
        if (abs(x) <= tolerance() * scale)
            throw IndeterminateError("sign of " + to_string(x, 12) + " within tolerance");
        return x.sign();
    }
};

// x += a*b; generic fallback.
template <class S>
inline void add_product(S& x, const S& a, const S& b) { x += a * b; }

// In place with a scratch product: two roundings, but markedly faster than
// mpfr_fma, which forms the exact product first.
inline void add_product(Real& x, const Real& a, const Real& b)
{
    struct Scratch {
        mpfr_t v;
        Scratch() { mpfr_init2(v, 64); }
        ~Scratch() { mpfr_clear(v); }
    };
    static thread_local Scratch tmp;
    mpfr_prec_t p = mpfr_get_prec(x.backend().data());
    if (mpfr_get_prec(tmp.v) != p)
        mpfr_set_prec(tmp.v, p);
    mpfr_mul(tmp.v, a.backend().data(), b.backend().data(), MPFR_RNDN);
    mpfr_add(x.backend().data(), x.backend().data(), tmp.v, MPFR_RNDN);
}

// Integer power by squaring; negative exponents invert.
template <class S>
S ipow(S base, long e)
{
    if (e < 0)
        return S(1) / ipow(base, -e);
    S r(1);
    while (e) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

} // namespace lyap
