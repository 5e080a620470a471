#pragma once

#include "mathieu/real.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mathieu {

struct PrecisionContext {
    int digits = 16;
    double tol = 1e-12;
    double trim = 1e-8;

    // tol leaves four digits of headroom; trim keeps half the digits.
    static PrecisionContext for_digits(int digits) {
        PrecisionContext c;
        c.digits = digits;
        c.tol = std::pow(10.0, -(digits - 4));
        c.trim = std::pow(10.0, -digits / 2.0);
        return c;
    }

    static PrecisionContext make(int digits, double tol) {
        PrecisionContext c = for_digits(digits);
        c.tol = tol;
        c.validate();
        return c;
    }

    void validate() const {
        if (digits < 15) throw std::invalid_argument("digits must be >= 15");
        if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0,1)");
        if (!(trim > 0.0 && trim < 1.0)) throw std::invalid_argument("trim must lie in (0,1)");
    }

    template <class R>
    R tol_as() const { return R(tol); }
};

enum class Backend { Double, DoubleDouble, Mpfr };

inline Backend backend_for_digits(int digits) {
    if (digits <= 16) return Backend::Double;
    if (digits <= 31) return Backend::DoubleDouble;
    return Backend::Mpfr;
}

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Double: return "double";
        case Backend::DoubleDouble: return "double-double";
        default: return "mpfr";
    }
}

// Calls f.template operator()<R>() with R the scalar type able to carry
// ctx.digits. MPFR precision is set for the duration of the call.
template <class F>
decltype(auto) with_backend(int digits, F&& f) {
    switch (backend_for_digits(digits)) {
        case Backend::Double: return f.template operator()<double>();
        case Backend::DoubleDouble: return f.template operator()<DoubleDouble>();
        default: {
            ScopedDigits guard(digits + 8);
            return f.template operator()<BigFloat>();
        }
    }
}

}  // namespace mathieu
