// Complex numbers over any of the real backends. std::complex is only specified
// for the built-in floating types, so the library carries its own.
#pragma once

#include "mathieu/real.hpp"

#include <complex>
#include <ostream>
#include <string>

namespace mathieu {

template <class R>
struct Complex {
    R re{};
    R im{};

    Complex() = default;
    Complex(const R& r) : re(r), im(0) {}
    Complex(const R& r, const R& i) : re(r), im(i) {}
    template <class T, class = std::enable_if_t<std::is_arithmetic_v<T> && !std::is_same_v<T, R>>>
    Complex(T r) : re(R(r)), im(0) {}
    template <class T, class = std::enable_if_t<std::is_arithmetic_v<T> && !std::is_same_v<T, R>>>
    Complex(T r, T i) : re(R(r)), im(R(i)) {}

    template <class R2>
    static Complex convert(const Complex<R2>& z);

    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
    Complex& operator/=(const Complex& b) { return *this = *this / b; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const R& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const R& s, const Complex& a) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex& a, const R& s) { return {a.re / s, a.im / s}; }
    // Smith's algorithm
    friend Complex operator/(const Complex& a, const Complex& b) {
        using std::abs;
        if (abs(b.re) >= abs(b.im)) {
            if (b.re == R(0) && b.im == R(0)) return {a.re / b.re, a.im / b.re};
            R r = b.im / b.re;
            R d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        R r = b.re / b.im;
        R d = b.re * r + b.im;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

template <class R>
template <class R2>
Complex<R> Complex<R>::convert(const Complex<R2>& z) {
    if constexpr (std::is_same_v<R, R2>) {
        return z;
    } else if constexpr (std::is_same_v<R2, double>) {
        return {R(z.re), R(z.im)};
    } else {
        // go through a decimal string so no digits are lost between backends
        int d = RealTraits<R2>::digits10() + 3;
        return {RealTraits<R>::from_string(RealTraits<R2>::to_string(z.re, d)),
                RealTraits<R>::from_string(RealTraits<R2>::to_string(z.im, d))};
    }
}

template <class R> R real(const Complex<R>& z) { return z.re; }
template <class R> R imag(const Complex<R>& z) { return z.im; }
template <class R> Complex<R> conj(const Complex<R>& z) { return {z.re, -z.im}; }
template <class R> R norm(const Complex<R>& z) { return z.re * z.re + z.im * z.im; }

template <class R>
R abs(const Complex<R>& z) {
    using std::abs;
    using std::sqrt;
    R x = abs(z.re), y = abs(z.im);
    if (x < y) std::swap(x, y);
    if (x == R(0)) return x;
    R t = y / x;
    return x * sqrt(R(1) + t * t);
}

template <class R>
R arg(const Complex<R>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class R>
Complex<R> polar(const R& r, const R& theta) {
    using std::cos;
    using std::sin;
    return {r * cos(theta), r * sin(theta)};
}

// Principal branch, cut along the negative real axis.
template <class R>
Complex<R> sqrt(const Complex<R>& z) {
    using std::abs;
    using std::sqrt;
    if (z.re == R(0) && z.im == R(0)) return {R(0), z.im};
    R r = abs(z);
    if (z.re >= R(0)) {
        R t = sqrt((r + z.re) / R(2));
        return {t, z.im / (R(2) * t)};
    }
    R t = sqrt((r - z.re) / R(2));
    R re = abs(z.im) / (R(2) * t);
    return {re, z.im < R(0) ? -t : t};
}

template <class R>
Complex<R> exp(const Complex<R>& z) {
    using std::exp;
    using std::cos;
    using std::sin;
    R e = exp(z.re);
    return {e * cos(z.im), e * sin(z.im)};
}

template <class R>
Complex<R> log(const Complex<R>& z) {
    using std::log;
    return {log(abs(z)), arg(z)};
}

template <class R>
Complex<R> cos(const Complex<R>& z) {
    using std::cos;
    using std::sin;
    using std::cosh;
    using std::sinh;
    return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}

template <class R>
Complex<R> sin(const Complex<R>& z) {
    using std::cos;
    using std::sin;
    using std::cosh;
    using std::sinh;
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

template <class R>
Complex<R> cosh(const Complex<R>& z) {
    return cos(Complex<R>{-z.im, z.re});
}

template <class R>
Complex<R> sinh(const Complex<R>& z) {
    // sinh z = -i sin(iz)
    Complex<R> s = sin(Complex<R>{-z.im, z.re});
    return {s.im, -s.re};
}

// Principal arccosh: log(z + sqrt(z-1) sqrt(z+1)).
template <class R>
Complex<R> acosh(const Complex<R>& z) {
    Complex<R> one(R(1));
    return log(z + sqrt(z - one) * sqrt(z + one));
}

template <class R>
Complex<R> ipow(Complex<R> z, int n) {
    Complex<R> r(R(1));
    bool inv = n < 0;
    unsigned k = static_cast<unsigned>(inv ? -n : n);
    while (k) {
        if (k & 1u) r = r * z;
        z = z * z;
        k >>= 1u;
    }
    return inv ? Complex<R>(R(1)) / r : r;
}

template <class R>
bool isfinite(const Complex<R>& z) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(z.re) && isfinite(z.im);
}

template <class R>
std::string to_string(const Complex<R>& z, int digits) {
    std::string im = RealTraits<R>::to_string(z.im, digits);
    if (im[0] != '-') im = "+" + im;
    return RealTraits<R>::to_string(z.re, digits) + im + "i";
}

template <class R>
std::ostream& operator<<(std::ostream& os, const Complex<R>& z) {
    return os << to_string(z, 17);
}

template <class R>
std::complex<double> to_std(const Complex<R>& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace mathieu
