#include "lyap/numeric.hpp"

#include <cctype>

namespace lyap {

namespace {
unsigned requested_bits = 0;
}

unsigned requested_precision() { return requested_bits ? requested_bits : precision(); }

void set_precision(unsigned bits)
{
    if (bits < 24)
        throw ValidationError("precision below 24 bits");
    requested_bits = bits;
    // boost counts precision in decimal digits; pick the smallest count that
    // yields at least `bits` binary digits.
    unsigned d = static_cast<unsigned>(bits * 0.30102999566398120) ;
    if (d < 1)
        d = 1;
    for (;; ++d) {
        Real::default_precision(d);
        if (precision() >= bits)
            break;
    }
}

unsigned precision()
{
    Real probe;
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

Real pow2(long e)
{
    Real r;
    mpfr_set_ui_2exp(r.backend().data(), 1, e, MPFR_RNDN);
    return r;
}

Real tolerance() { return pow2(16 - static_cast<long>(precision())); }

namespace {

Rational parse_decimal(const std::string& s)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        neg = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            any = true;
            if (seen_dot)
                --scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any)
        throw ParseError("expected a number in \"" + s + "\"", i);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("bad exponent in \"" + s + "\"", i);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        scale += std::stol(s.substr(start, i - start));
    }
    if (i != s.size())
        throw ParseError("trailing characters in \"" + s + "\"", i);
    // no leading zeros: the integer parser would read them as octal
    auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Rational q{Integer(digits)};
    Rational ten(10);
    if (scale > 0)
        q *= ipow(ten, scale);
    else if (scale < 0)
        q /= ipow(ten, -scale);
    return neg ? Rational(-q) : q;
}

} // namespace

Rational parse_rational(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return parse_decimal(s);
    Rational num = parse_decimal(s.substr(0, slash));
    Rational den;
    try {
        den = parse_decimal(s.substr(slash + 1));
    } catch (const ParseError& e) {
        throw ParseError("bad denominator in \"" + raw + "\"", slash + 1 + e.offset);
    }
    if (den == 0)
        throw ParseError("zero denominator in \"" + raw + "\"", slash + 1);
    return num / den;
}

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real parse_real(const std::string& s)
{
    auto t = s;
    if (t.find('/') != std::string::npos || t.find_first_of("eE") != std::string::npos)
        return to_real(parse_rational(t));
    try {
        return Real(t);
    } catch (const std::exception&) {
        throw ParseError("not a real number: \"" + s + "\"", 0);
    }
}

std::string to_string(const Rational& q)
{
    return q.str();
}

std::string to_string(const Real& x, int digits)
{
    if (digits <= 0)
        digits = static_cast<int>(precision() * 0.30103) + 1;
    return x.str(digits, std::ios_base::scientific);
}

Real artanh_checked(const Real& x)
{
    if (abs(x) >= 1)
        throw DomainError("artanh of |x| >= 1");
    return atanh(x);
}

} // namespace lyap
