#pragma once

#include "mathieu/complex.hpp"
#include "mathieu/errors.hpp"

#include <vector>

namespace mathieu {

// Trapezoid rule over one period, doubling the node count until two successive
// values agree to tol (relative to max(1, |value|)).
template <class R, class F>
Complex<R> quad_periodic(F&& f, const R& period, int n_nodes, double tol, int max_nodes = 1 << 16) {
    using C = Complex<R>;
    if (n_nodes < 8) n_nodes = 8;
    R h = period / R(n_nodes);
    C sum(R(0));
    for (int k = 0; k < n_nodes; ++k) sum += C(f(R(k) * h));
    C prev = sum * h;
    int n = n_nodes;
    while (n < max_nodes) {
        R hh = period / R(2 * n);
        for (int k = 0; k < n; ++k) sum += C(f(R(2 * k + 1) * hh));
        n *= 2;
        C cur = sum * hh;
        R scale = abs(cur) > R(1) ? abs(cur) : R(1);
        if (abs(cur - prev) <= R(tol) * scale) return cur;
        prev = cur;
    }
    throw ConvergenceError("quad_periodic: no convergence; integrand not smooth or not periodic");
}

// Gauss-Legendre nodes and weights on [-1, 1], by Newton on P_n.
template <class R>
void gauss_legendre(int n, std::vector<R>& x, std::vector<R>& w) {
    using std::abs;
    using std::cos;
    x.assign(static_cast<std::size_t>(n), R(0));
    w.assign(static_cast<std::size_t>(n), R(0));
    R pi = real_pi<R>();
    R eps = RealTraits<R>::epsilon();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        R z = cos(pi * (R(i) + R(0.75)) / (R(n) + R(0.5)));
        R dp = 0;
        for (int it = 0; it < 100; ++it) {
            R p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                R p2 = (R(2 * k - 1) * z * p1 - R(k - 1) * p0) / R(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = R(n) * (z * p1 - p0) / (z * z - R(1));
            R dz = p1 / dp;
            z -= dz;
            if (abs(dz) <= R(4) * eps) break;
        }
        // recompute the derivative at the converged node
        R p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
            R p2 = (R(2 * k - 1) * z * p1 - R(k - 1) * p0) / R(k);
            p0 = p1;
            p1 = p2;
        }
        dp = R(n) * (z * p1 - p0) / (z * z - R(1));
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = R(2) / ((R(1) - z * z) * dp * dp);
    }
}

}  // namespace mathieu
