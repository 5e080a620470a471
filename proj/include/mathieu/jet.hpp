// Truncated power series ("jets") in one formal variable. The coefficient type
// may itself be a jet, which gives mixed partial derivatives by nesting.
//
// A jet of order 0 built from a scalar is an exact constant; binary operations
// take the larger order of their operands.
#pragma once

#include "mathieu/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mathieu {

template <class S>
class Jet {
public:
    using coeff_type = S;

    Jet() : c_(1, S(0)) {}
    Jet(const S& s) : c_(1, s) {}
    template <class T, class = std::enable_if_t<std::is_arithmetic_v<T>>>
    Jet(T s) : c_(1, S(s)) {}
    Jet(std::vector<S> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(S(0));
    }

    // c0 + x (the independent variable) truncated at the given order
    static Jet variable(const S& c0, int order) {
        Jet j = zero(order);
        j.c_[0] = c0;
        if (order >= 1) j.c_[1] = S(1);
        return j;
    }
    static Jet zero(int order) { return Jet(std::vector<S>(static_cast<std::size_t>(order) + 1, S(0))); }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const S& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    S& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    S coeff(int k) const { return k <= order() ? c_[static_cast<std::size_t>(k)] : S(0); }
    const std::vector<S>& coeffs() const { return c_; }

    Jet truncated(int order) const {
        Jet r = zero(order);
        for (int k = 0; k <= order && k <= this->order(); ++k) r.c_[k] = c_[k];
        return r;
    }

    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }
    Jet& operator/=(const Jet& b) { return *this = *this / b; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        int n = std::max(a.order(), b.order());
        Jet r = zero(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        int n = std::max(a.order(), b.order());
        Jet r = zero(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
        return r;
    }
    friend Jet operator-(const Jet& a) {
        Jet r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        if (a.order() == 0) return b.scaled(a.c_[0]);
        if (b.order() == 0) return a.scaled(b.c_[0]);
        int n = std::max(a.order(), b.order());
        Jet r = zero(n);
        for (int i = 0; i <= a.order(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= n && j <= b.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.order() == 0) {
            Jet r = a;
            for (auto& x : r.c_) x = x / b.c_[0];
            return r;
        }
        int n = std::max(a.order(), b.order());
        Jet r = zero(n);
        for (int k = 0; k <= n; ++k) {
            S s = a.coeff(k);
            for (int j = 1; j <= k && j <= b.order(); ++j) s -= b.c_[j] * r.c_[k - j];
            r.c_[k] = s / b.c_[0];
        }
        return r;
    }

    Jet scaled(const S& s) const {
        Jet r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    // Shift down by one power of x, dropping the constant term: (j - j0)/x.
    Jet shifted_down() const {
        if (order() == 0) return Jet(S(0));
        return Jet(std::vector<S>(c_.begin() + 1, c_.end()));
    }

    friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

private:
    template <class T>
    static bool is_zero(const T& x) {
        if constexpr (requires { x.re; }) return x.re == 0 && x.im == 0;
        else return false;
    }

    std::vector<S> c_;
};

template <class T> struct is_jet : std::false_type {};
template <class S> struct is_jet<Jet<S>> : std::true_type {};

// Innermost complex scalar of a (possibly nested) jet: the value at x = 0.
template <class R>
const Complex<R>& base_value(const Complex<R>& z) { return z; }
template <class S>
auto base_value(const Jet<S>& j) -> decltype(base_value(j[0])) { return base_value(j[0]); }

// Principal square root by Newton iteration on the series.
template <class S>
Jet<S> sqrt(const Jet<S>& a) {
    using std::sqrt;
    Jet<S> y(sqrt(a[0]));
    if (a.order() == 0) return y;
    int n = 1;
    while (true) {
        n = std::min(2 * n, a.order());
        Jet<S> at = a.truncated(n);
        y = y.truncated(n);
        y = (y + at / y).scaled(S(0.5));
        if (n == a.order()) break;
    }
    // one extra sweep at full order guards the last doubling
    y = (y + a / y).scaled(S(0.5));
    return y;
}

template <class S>
Jet<S> cos(const Jet<S>& a);
template <class S>
Jet<S> sin(const Jet<S>& a);

// sin and cos together: C' = -S a', S' = C a'.
template <class S>
void sincos(const Jet<S>& a, Jet<S>& s, Jet<S>& c) {
    using std::sin;
    using std::cos;
    int n = a.order();
    s = Jet<S>::zero(n);
    c = Jet<S>::zero(n);
    s[0] = sin(a[0]);
    c[0] = cos(a[0]);
    for (int k = 1; k <= n; ++k) {
        S ss(0), cc(0);
        for (int j = 1; j <= k; ++j) {
            S da = a[j] * S(double(j));
            ss += da * c[k - j];
            cc -= da * s[k - j];
        }
        s[k] = ss / S(double(k));
        c[k] = cc / S(double(k));
    }
}

template <class S>
Jet<S> cos(const Jet<S>& a) {
    Jet<S> s, c;
    sincos(a, s, c);
    return c;
}

template <class S>
Jet<S> sin(const Jet<S>& a) {
    Jet<S> s, c;
    sincos(a, s, c);
    return s;
}

}  // namespace mathieu
