// Real scalar backends: hardware double, a compensated double-double, and an
// MPFR-backed big float. Generic code reaches all of them through RealTraits.
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace mathieu {

// ---------------------------------------------------------------------------
// DoubleDouble: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.

class DoubleDouble {
public:
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
    constexpr DoubleDouble(int h) : hi(h), lo(0.0) {}
    constexpr DoubleDouble(long h) : hi(static_cast<double>(h)), lo(0.0) {}
    constexpr DoubleDouble(long long h) : hi(static_cast<double>(h)), lo(0.0) {}
    constexpr DoubleDouble(unsigned h) : hi(h), lo(0.0) {}
    constexpr DoubleDouble(unsigned long h) : hi(static_cast<double>(h)), lo(0.0) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }

    static DoubleDouble from_string(const std::string& s);
    std::string to_string(int digits) const;

    DoubleDouble& operator+=(const DoubleDouble& b);
    DoubleDouble& operator-=(const DoubleDouble& b);
    DoubleDouble& operator*=(const DoubleDouble& b);
    DoubleDouble& operator/=(const DoubleDouble& b);
};

namespace dd_detail {

inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    using namespace dd_detail;
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    using namespace dd_detail;
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    double q1 = a.hi / b.hi;
    DoubleDouble r = a - q1 * b;
    double q2 = r.hi / b.hi;
    r = r - q2 * b;
    double q3 = r.hi / b.hi;
    DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
    return q + DoubleDouble(q3);
}

inline DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) { return *this = *this + b; }
inline DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& b) { return *this = *this - b; }
inline DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) { return *this = *this * b; }
inline DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) { return *this = *this / b; }

inline bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
inline bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
inline bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
inline bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

inline DoubleDouble abs(const DoubleDouble& a) { return a.hi < 0.0 ? -a : a; }
inline DoubleDouble fabs(const DoubleDouble& a) { return abs(a); }
inline bool isfinite(const DoubleDouble& a) { return std::isfinite(a.hi); }
inline bool isnan(const DoubleDouble& a) { return std::isnan(a.hi); }

inline DoubleDouble ldexp(const DoubleDouble& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline DoubleDouble floor(const DoubleDouble& a) {
    double h = std::floor(a.hi);
    if (h != a.hi) return h;
    return dd_detail::quick_two_sum(h, std::floor(a.lo));
}

inline DoubleDouble round(const DoubleDouble& a) { return floor(a + DoubleDouble(0.5)); }

inline DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi <= 0.0) return a.hi == 0.0 ? DoubleDouble(0.0) : DoubleDouble(std::nan(""));
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    DoubleDouble diff = a - dd_detail::two_prod(ax, ax);
    return dd_detail::two_sum(ax, diff.hi * (x * 0.5));
}

namespace dd_detail {

inline const DoubleDouble& dd_pi() {
    static const DoubleDouble v{3.141592653589793116e+00, 1.224646799147353207e-16};
    return v;
}
inline const DoubleDouble& dd_ln2() {
    static const DoubleDouble v{6.931471805599452862e-01, 2.319046813846299558e-17};
    return v;
}

// sin and cos of |r| <= pi/4 by Taylor series.
inline void sincos_reduced(const DoubleDouble& r, DoubleDouble& s, DoubleDouble& c) {
    const double eps = 1e-33;
    DoubleDouble r2 = r * r;
    DoubleDouble term = r;
    s = r;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / DoubleDouble(double((2 * k) * (2 * k + 1)));
        if (k % 2) s -= term; else s += term;
        if (std::fabs(term.hi) < eps) break;
    }
    term = 1.0;
    c = 1.0;
    for (int k = 1; k < 40; ++k) {
        term = term * r2 / DoubleDouble(double((2 * k - 1) * (2 * k)));
        if (k % 2) c -= term; else c += term;
        if (std::fabs(term.hi) < eps) break;
    }
}

inline void sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) {
    DoubleDouble half_pi = ldexp(dd_pi(), -1);
    DoubleDouble k = round(x / half_pi);
    DoubleDouble r = x - k * half_pi;
    DoubleDouble sr, cr;
    sincos_reduced(r, sr, cr);
    long long n = static_cast<long long>(std::fmod(k.hi, 4.0));
    n = ((n % 4) + 4) % 4;
    switch (n) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
}

}  // namespace dd_detail

inline DoubleDouble exp(const DoubleDouble& a) {
    if (a.hi > 709.0) return std::numeric_limits<double>::infinity();
    if (a.hi < -745.0) return 0.0;
    double k = std::floor(a.hi / dd_detail::dd_ln2().hi + 0.5);
    DoubleDouble r = ldexp(a - DoubleDouble(k) * dd_detail::dd_ln2(), -10);
    DoubleDouble term = r, sum = r;
    for (int n = 2; n < 30; ++n) {
        term = term * r / DoubleDouble(double(n));
        sum += term;
        if (std::fabs(term.hi) < 1e-35) break;
    }
    // (1+s)^2 - 1 = s(2+s), applied ten times keeps precision near zero.
    for (int i = 0; i < 10; ++i) sum = sum * (DoubleDouble(2.0) + sum);
    return ldexp(sum + DoubleDouble(1.0), static_cast<int>(k));
}

inline DoubleDouble log(const DoubleDouble& a) {
    if (a.hi <= 0.0) return std::nan("");
    DoubleDouble x = std::log(a.hi);
    for (int i = 0; i < 2; ++i) x = x + a * exp(-x) - DoubleDouble(1.0);
    return x;
}

inline DoubleDouble sin(const DoubleDouble& a) {
    DoubleDouble s, c;
    dd_detail::sincos(a, s, c);
    return s;
}

inline DoubleDouble cos(const DoubleDouble& a) {
    DoubleDouble s, c;
    dd_detail::sincos(a, s, c);
    return c;
}

inline DoubleDouble sinh(const DoubleDouble& a) {
    if (std::fabs(a.hi) < 0.05) {
        DoubleDouble a2 = a * a, term = a, sum = a;
        for (int k = 1; k < 20; ++k) {
            term = term * a2 / DoubleDouble(double((2 * k) * (2 * k + 1)));
            sum += term;
            if (std::fabs(term.hi) < 1e-35) break;
        }
        return sum;
    }
    DoubleDouble e = exp(a);
    return ldexp(e - DoubleDouble(1.0) / e, -1);
}

inline DoubleDouble cosh(const DoubleDouble& a) {
    DoubleDouble e = exp(a);
    return ldexp(e + DoubleDouble(1.0) / e, -1);
}

inline DoubleDouble atan2(const DoubleDouble& y, const DoubleDouble& x) {
    if (x.hi == 0.0 && y.hi == 0.0) return 0.0;
    DoubleDouble r = sqrt(x * x + y * y);
    DoubleDouble xr = x / r, yr = y / r;
    DoubleDouble t = std::atan2(y.hi, x.hi);
    for (int i = 0; i < 2; ++i) {
        DoubleDouble s, c;
        dd_detail::sincos(t, s, c);
        // rotate the residual angle: sin(theta - t) ~ yr c - xr s
        t = t + (yr * c - xr * s);
    }
    return t;
}

// ---------------------------------------------------------------------------
// MPFR big float with runtime precision (decimal digits set globally per thread).

using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

class ScopedDigits {
public:
    explicit ScopedDigits(int digits) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(static_cast<unsigned>(digits));
    }
    ~ScopedDigits() { BigFloat::default_precision(saved_); }
    ScopedDigits(const ScopedDigits&) = delete;
    ScopedDigits& operator=(const ScopedDigits&) = delete;

private:
    unsigned saved_;
};

// ---------------------------------------------------------------------------

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
    static constexpr const char* name = "double";
    static double pi() { return 3.141592653589793; }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static int digits10() { return 16; }
    static double from_string(const std::string& s) { return std::stod(s); }
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static std::string to_string(double x, int digits);
};

template <>
struct RealTraits<DoubleDouble> {
    static constexpr const char* name = "double-double";
    static DoubleDouble pi() { return dd_detail::dd_pi(); }
    static DoubleDouble epsilon() { return std::ldexp(1.0, -104); }
    static int digits10() { return 31; }
    static DoubleDouble from_string(const std::string& s) { return DoubleDouble::from_string(s); }
    static DoubleDouble from_double(double x) { return x; }
    static double to_double(const DoubleDouble& x) { return x.hi + x.lo; }
    static std::string to_string(const DoubleDouble& x, int digits) { return x.to_string(digits); }
};

template <>
struct RealTraits<BigFloat> {
    static constexpr const char* name = "mpfr";
    static BigFloat pi() {
        BigFloat p;
        mpfr_const_pi(p.backend().data(), MPFR_RNDN);
        return p;
    }
    static BigFloat epsilon() {
        BigFloat e = 1;
        long bits = static_cast<long>(mpfr_get_prec(e.backend().data()));
        return boost::multiprecision::ldexp(e, static_cast<int>(1 - bits));
    }
    static int digits10() { return static_cast<int>(BigFloat::default_precision()); }
    static BigFloat from_string(const std::string& s) { return BigFloat(s); }
    static BigFloat from_double(double x) { return BigFloat(x); }
    static double to_double(const BigFloat& x) { return x.convert_to<double>(); }
    static std::string to_string(const BigFloat& x, int digits) {
        return x.str(digits, std::ios_base::scientific);
    }
};

// Working-precision helpers.
template <class R>
R real_pi() { return RealTraits<R>::pi(); }

template <class R>
double to_double(const R& x) { return RealTraits<R>::to_double(x); }

template <class R>
R pow10(int e) {
    R r = 1, ten = 10;
    int n = e < 0 ? -e : e;
    R b = ten;
    while (n) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return e < 0 ? R(1) / r : r;
}

}  // namespace mathieu
