// Double eigenvalues (a*, q*): two-dimensional Newton, split-pair averaging,
// the tabulated catalog of the smallest double points, and the WKB integral.
#pragma once

#include "mathieu/contfrac.hpp"
#include "mathieu/linalg.hpp"
#include "mathieu/quadrature.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace mathieu {

template <class R>
struct DoublePoint {
    Complex<R> q_star, a_star;
    EigenClass cls = EigenClass::CE_EVEN;
    std::pair<int, int> merge_orders{-1, -1};  // -1: not resolved
    int m_type = 0;
    // residuals and derivatives in the Blanch form, at the solution
    double res_T = 0, res_Ta = 0, abs_Taa = 0, abs_Tq = 0;
    int iterations = 0;
    int M = 0;
};

struct Newton2dOptions {
    int max_iter = 50;
    int M = 0;  // matching index; 0 picks one from the starting point
};

// Solves T = 0, T_a = 0 for (a, q) with the Jacobian [[T_a, T_q], [T_aa, T_aq]].
template <class R>
DoublePoint<R> newton2d(EigenClass cls, const Complex<R>& a0, const Complex<R>& q0, const PrecisionContext& ctx,
                        const Newton2dOptions& opt = {}) {
    using C = Complex<R>;
    if (q0.re == R(0) && q0.im == R(0)) throw DomainError("newton2d: q = 0 is excluded");
    C a = a0, q = q0;
    int M = opt.M > 0 ? opt.M : matching_index(cls, first_index(cls), a, q) + 4;
    R tol = R(ctx.tol);
    DoublePoint<R> dp;
    dp.cls = cls;
    dp.m_type = m_type_of(cls);
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        CharacteristicEval<R> e = t_eval(cls, a, q, ctx, M, TForm::Numerator);
        C det = e.T_a * e.T_aq - e.T_q * e.T_aa;
        R scale = abs(e.T_a * e.T_aq) + abs(e.T_q * e.T_aa);
        if (abs(det) <= R(64) * RealTraits<R>::epsilon() * scale || abs(det) == R(0))
            throw SingularJacobian("newton2d: singular Jacobian at a = " + to_string(a, 10) + ", q = " + to_string(q, 10));
        C da = -(e.T * e.T_aq - e.T_q * e.T_a) / det;
        C dq = -(e.T_a * e.T_a - e.T_aa * e.T) / det;
        a = a + da;
        q = q + dq;
        dp.iterations = it + 1;
        if (abs(da) <= tol * (R(1) + abs(a)) && abs(dq) <= tol * (R(1) + abs(q))) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("newton2d: no convergence in " + std::to_string(opt.max_iter) + " iterations");
    dp.a_star = a;
    dp.q_star = q;
    dp.M = M;
    CharacteristicEval<R> b = t_eval(cls, a, q, ctx, M, TForm::Blanch);
    dp.res_T = to_double(abs(b.T));
    dp.res_Ta = to_double(abs(b.T_a));
    dp.abs_Taa = to_double(abs(b.T_aa));
    dp.abs_Tq = to_double(abs(b.T_q));
    return dp;
}

// Symmetry images of a double point: conjugate, and q -> -q (which keeps
// the even classes and swaps CE_ODD with SE_ODD).
template <class R>
std::vector<DoublePoint<R>> symmetric_images(const DoublePoint<R>& dp) {
    std::vector<DoublePoint<R>> out;
    DoublePoint<R> c = dp;
    c.q_star = conj(dp.q_star);
    c.a_star = conj(dp.a_star);
    out.push_back(c);
    EigenClass flipped = dp.cls;
    if (dp.cls == EigenClass::CE_ODD) flipped = EigenClass::SE_ODD;
    if (dp.cls == EigenClass::SE_ODD) flipped = EigenClass::CE_ODD;
    for (const auto& base : {dp, c}) {
        DoublePoint<R> m = base;
        m.q_star = -base.q_star;
        m.cls = flipped;
        m.m_type = m_type_of(flipped);
        out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Averaging a numerically split pair

template <class R>
struct AveragedPair {
    Complex<R> a;
    std::vector<Complex<R>> v;
};

template <class R>
AveragedPair<R> average_split_pair(const Complex<R>& a1, const std::vector<Complex<R>>& v1, const Complex<R>& a2,
                                   const std::vector<Complex<R>>& v2, int digits) {
    using C = Complex<R>;
    R thresh = pow10<R>(-digits / 2 + 2) * (R(1) + abs(a1));
    if (abs(a1 - a2) >= thresh)
        throw NotASplitPair("average_split_pair: separation " + RealTraits<R>::to_string(abs(a1 - a2), 4) +
                            " exceeds the split threshold");
    if (v1.size() != v2.size()) throw DomainError("average_split_pair: vector sizes differ");
    AveragedPair<R> out;
    out.a = (a1 + a2) / R(2);
    C c = dot_hermitian(v1, v2);
    C phase(R(1));
    if (abs(c) > R(0)) phase = conj(c) / abs(c);
    out.v.resize(v1.size());
    for (std::size_t i = 0; i < v1.size(); ++i) out.v[i] = (v1[i] + v2[i] * phase) / R(2);
    return out;
}

// ---------------------------------------------------------------------------
// Catalog

struct CatalogSeed {
    int m_type = 0;
    std::complex<double> q, a;
    // the decimal text as transcribed, for significant-figure comparisons
    std::array<std::string, 4> text;
};

std::vector<CatalogSeed> load_catalog(const std::string& path);
std::string default_catalog_path();

// True if x rounds to the same value as the table entry `entry` printed with
// 4 significant figures (the entry's exponent fixes the last digit's weight).
bool agrees_to_printed_figures(double x, const std::string& entry);

template <class R>
struct CatalogRow {
    CatalogSeed seed;
    DoublePoint<R> dp;
    bool converged = false;
    bool agrees = false;
    std::string error;
};

template <class R>
std::vector<CatalogRow<R>> catalog_verify(const std::vector<CatalogSeed>& seeds, const PrecisionContext& ctx) {
    using C = Complex<R>;
    std::vector<CatalogRow<R>> out;
    for (const auto& s : seeds) {
        CatalogRow<R> row;
        row.seed = s;
        try {
            EigenClass cls = class_of_m_type(s.m_type);
            row.dp = newton2d(cls, C(R(s.a.real()), R(s.a.imag())), C(R(s.q.real()), R(s.q.imag())), ctx);
            row.dp.m_type = s.m_type;
            row.converged = true;
            row.agrees = agrees_to_printed_figures(to_double(row.dp.q_star.re), s.text[0]) &&
                         agrees_to_printed_figures(to_double(row.dp.q_star.im), s.text[1]) &&
                         agrees_to_printed_figures(to_double(row.dp.a_star.re), s.text[2]) &&
                         agrees_to_printed_figures(to_double(row.dp.a_star.im), s.text[3]);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.push_back(row);
    }
    return out;
}

// Orders merging at dp, found by continuing each order of the class from q = 0
// to a point just short of q* on the straight path. Unresolved: (-1, -1).
template <class R>
std::pair<int, int> infer_merge_orders(const DoublePoint<R>& dp, int max_order, const PrecisionContext& ctx) {
    using C = Complex<R>;
    C q_near = dp.q_star * R(1 - 1e-6);
    std::vector<int> hits;
    for (int m = first_index(dp.cls); m <= max_order; m += 2) {
        try {
            C a = eigenvalue_continuation(dp.cls, m, q_near, ctx).a;
            if (to_double(abs(a - dp.a_star)) < 1e-2 * (1 + to_double(abs(dp.a_star)))) hits.push_back(m);
        } catch (const std::exception&) {
        }
    }
    if (hits.size() == 2) return {hits[0], hits[1]};
    return {-1, -1};
}

// ---------------------------------------------------------------------------
// WKB integral  I = int_0^{pi/2} sqrt(a - 2q cos 2x) dx

template <class R>
struct WkbResult {
    Complex<R> value;
    bool branch_crossing = false;  // integrand crosses the principal cut
    bool ok = true;
};

template <class R>
WkbResult<R> wkb_integral(const Complex<R>& a, const Complex<R>& q, const PrecisionContext& ctx) {
    using C = Complex<R>;
    using std::cos;
    R pi = real_pi<R>();
    auto arg = [&](const R& x) { return a - q * (R(2) * cos(R(2) * x)); };
    // scan for sign changes of Im across the negative real axis, or near-zeros
    const int scan = 512;
    std::vector<R> cuts;
    R h = pi / R(2 * scan);
    C prev = arg(R(0));
    for (int k = 1; k <= scan; ++k) {
        R x = R(k) * h;
        C cur = arg(x);
        bool crosses = (prev.im > R(0)) != (cur.im > R(0)) && (prev.re < R(0) || cur.re < R(0));
        if (crosses) cuts.push_back(x - h / R(2));
        prev = cur;
    }
    WkbResult<R> res;
    auto f = [&](const R& x) { return sqrt(arg(x)); };
    if (cuts.empty()) {
        try {
            // even and pi-periodic: half of a full-period trapezoid
            res.value = quad_periodic<R>(f, pi, 16, ctx.tol) / R(2);
            return res;
        } catch (const ConvergenceError&) {
            res.branch_crossing = true;
        }
    }
    res.branch_crossing = true;
    // piecewise Gauss-Legendre, bisecting panels until two levels agree
    std::vector<R> xs, ws;
    gauss_legendre<R>(20, xs, ws);
    auto panel = [&](const R& lo, const R& hi) {
        C s(R(0));
        R c = (lo + hi) / R(2), r = (hi - lo) / R(2);
        for (std::size_t i = 0; i < xs.size(); ++i) s += f(c + r * xs[i]) * (ws[i] * r);
        return s;
    };
    std::vector<R> knots{R(0)};
    for (auto& c : cuts) knots.push_back(c);
    knots.push_back(pi / R(2));
    C total(R(0));
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        std::vector<std::pair<R, R>> stack{{knots[k], knots[k + 1]}};
        int budget = 4000;
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            R mid = (lo + hi) / R(2);
            C whole = panel(lo, hi), halves = panel(lo, mid) + panel(mid, hi);
            if (abs(whole - halves) <= R(ctx.tol) * (R(1) + abs(halves)) || --budget <= 0) {
                total += halves;
                if (budget <= 0) res.ok = false;
            } else {
                stack.push_back({lo, mid});
                stack.push_back({mid, hi});
            }
        }
    }
    res.value = total;
    return res;
}

}  // namespace mathieu
