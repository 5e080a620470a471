// Bessel functions J_0..J_n of integer order and complex argument.
#pragma once

#include "mathieu/complex.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/precision.hpp"

#include <vector>

namespace mathieu {

// Power series sum_m (-1)^m (z/2)^(2m+k) / (m! (m+k)!) for each k.
template <class R>
std::vector<Complex<R>> bessel_j_series(int n_max, const Complex<R>& z) {
    using C = Complex<R>;
    std::vector<C> out(static_cast<std::size_t>(n_max) + 1);
    C h = z / R(2);
    C h2 = -(h * h);
    R eps = RealTraits<R>::epsilon();
    C lead(R(1));  // (z/2)^k / k!
    for (int k = 0; k <= n_max; ++k) {
        if (k > 0) lead = lead * h / R(k);
        C term = lead, sum = lead;
        for (int m = 1; m < 500; ++m) {
            term = term * h2 / R(m * (m + k));
            sum += term;
            if (abs(term) <= eps * abs(sum)) break;
        }
        out[static_cast<std::size_t>(k)] = sum;
    }
    return out;
}

// Miller's backward recurrence with a generating-function normalization; the
// identity is picked so that its left side does not suffer cancellation.
template <class R>
std::vector<Complex<R>> bessel_j_sequence(int n_max, const Complex<R>& z) {
    using C = Complex<R>;
    if (n_max < 0) throw DomainError("bessel_j_sequence: n_max must be >= 0");
    if (!isfinite(z)) throw DomainError("bessel_j_sequence: argument not finite");
    R az = abs(z);
    if (az == R(0)) {
        std::vector<C> out(static_cast<std::size_t>(n_max) + 1, C(R(0)));
        out[0] = C(R(1));
        return out;
    }
    if (az <= R(1)) return bessel_j_series(n_max, z);

    int digits = RealTraits<R>::digits10();
    double azd = to_double(az);
    int start = std::max(n_max, static_cast<int>(azd)) + 20 + digits + static_cast<int>(std::sqrt(digits * azd));
    if (start % 2) ++start;
    std::vector<C> j(static_cast<std::size_t>(start) + 2, C(R(0)));
    j[static_cast<std::size_t>(start) + 1] = C(R(0));
    j[static_cast<std::size_t>(start)] = C(R(1e-30));
    C two_over_z = C(R(2)) / z;
    const R big = R(1e100), small = R(1e-100);
    for (int k = start; k >= 1; --k) {
        j[k - 1] = two_over_z * R(k) * j[k] - j[k + 1];
        if (abs(j[k - 1]) > big) {
            for (int i = k - 1; i <= start + 1; ++i) j[i] = j[i] * small;
        }
    }
    // Normalize with one of
    //   1       = J0 + 2 sum J_{2k}                    (real z)
    //   e^{-iz} = J0 + 2 sum (-i)^k J_k                (Im z > 0)
    //   e^{iz}  = J0 + 2 sum i^k J_k                   (Im z < 0)
    C sum = j[0];
    C lhs;
    R tiny = az * R(1e-12);
    using std::abs;
    if (abs(z.im) <= tiny) {
        for (int k = 2; k <= start; k += 2) sum += R(2) * j[k];
        lhs = C(R(1));
    } else {
        C unit = z.im > R(0) ? C(R(0), R(-1)) : C(R(0), R(1));
        C p(R(1));
        for (int k = 1; k <= start; ++k) {
            p = p * unit;
            sum += R(2) * p * j[k];
        }
        lhs = exp(z.im > R(0) ? C(z.im, -z.re) : C(-z.im, z.re));
    }
    if (!isfinite(sum) || abs(sum) == R(0)) throw OverflowError("bessel_j_sequence: normalization overflow");
    C scale = lhs / sum;
    std::vector<C> out(static_cast<std::size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) out[k] = j[k] * scale;
    return out;
}

}  // namespace mathieu
