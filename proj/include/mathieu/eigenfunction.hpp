// Eigenfunctions as Fourier coefficient vectors: construction (matrix
// eigenvector or three-term recurrence), evaluation of ce/se and Ce/Se, the
// Bessel-product series for the modified functions, the bilinear form,
// generalized eigenfunctions at double points and expansions in eigenfunctions.
#pragma once

#include "mathieu/bessel.hpp"
#include "mathieu/contfrac.hpp"
#include "mathieu/doublepoint.hpp"
#include "mathieu/linalg.hpp"
#include "mathieu/operator.hpp"
#include "mathieu/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace mathieu {

enum class Normalization { PointNorm, RawEigvec };
enum class CoeffStrategy { Eigvec, Recurrence };

// coeffs[k] multiplies cos(n_k z) (cosine classes) or sin(n_k z) (sine
// classes), n_k = harmonic(cls, k).
template <class R>
struct FourierVector {
    EigenClass cls = EigenClass::CE_EVEN;
    std::vector<Complex<R>> coeffs;
    Normalization norm = Normalization::PointNorm;
    Complex<R> a, q;
};

template <class R>
struct GeneralizedEigenfunction {
    FourierVector<R> base, gen;
    DoublePoint<R> double_point;
};

namespace eigenfunction_detail {

// Row k of the unsymmetrized recurrence: a A_k = sub_k A_{k-1} + diag_k A_k + q A_{k+1}.
template <class R>
Complex<R> row_diag(EigenClass cls, int k, const Complex<R>& q) {
    R n = R(harmonic(cls, k));
    Complex<R> d(n * n);
    if (k == 0 && cls == EigenClass::CE_ODD) d = d + q;
    if (k == 0 && cls == EigenClass::SE_ODD) d = d - q;
    return d;
}

template <class R>
Complex<R> row_sub(EigenClass cls, int k, const Complex<R>& q) {
    if (k == 1 && cls == EigenClass::CE_EVEN) return q * R(2);
    return q;
}

// The symmetric matrix uses v_0 = sqrt(2) A_0 for CE_EVEN.
template <class R>
R sym_scale(EigenClass cls, int k) {
    using std::sqrt;
    return (k == 0 && cls == EigenClass::CE_EVEN) ? sqrt(R(2)) : R(1);
}

template <class R>
Complex<R> point_value(const FourierVector<R>& fv) {
    Complex<R> s(R(0));
    for (std::size_t k = 0; k < fv.coeffs.size(); ++k) {
        if (is_cosine(fv.cls))
            s += fv.coeffs[k];
        else
            s += fv.coeffs[k] * R(harmonic(fv.cls, static_cast<int>(k)));
    }
    return s;
}

template <class R>
void point_normalize(FourierVector<R>& fv, const PrecisionContext& ctx) {
    Complex<R> s = point_value(fv);
    R mx = 0;
    for (auto& c : fv.coeffs) mx = std::max(mx, abs(c));
    if (abs(s) < R(ctx.trim) * mx)
        throw NormalizationImpossible("fourier_coefficients: " +
                                      std::string(is_cosine(fv.cls) ? "ce(0)" : "se'(0)") + " vanishes");
    for (auto& c : fv.coeffs) c = c / s;
    fv.norm = Normalization::PointNorm;
}

template <class R>
std::vector<Complex<R>> to_sym(const FourierVector<R>& fv) {
    std::vector<Complex<R>> v(fv.coeffs);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k] * sym_scale<R>(fv.cls, static_cast<int>(k));
    return v;
}

template <class R>
std::vector<Complex<R>> from_sym(EigenClass cls, std::vector<Complex<R>> v) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = v[k] / sym_scale<R>(cls, static_cast<int>(k));
    return v;
}

}  // namespace eigenfunction_detail

// Coefficients of the eigenfunction of order m at (a, q), point-normalized.
template <class R>
FourierVector<R> fourier_coefficients(EigenClass cls, int order, const Complex<R>& q, const Complex<R>& a, int N,
                                      CoeffStrategy strategy, const PrecisionContext& ctx) {
    using C = Complex<R>;
    namespace d = eigenfunction_detail;
    if (!order_matches(cls, order)) throw DomainError("fourier_coefficients: order does not match class");
    if (N < 2) throw DomainError("fourier_coefficients: N must be >= 2");
    FourierVector<R> fv;
    fv.cls = cls;
    fv.a = a;
    fv.q = q;
    int pos = order_position(cls, order);
    if (pos >= N) throw DomainError("fourier_coefficients: N too small for this order");
    if (q.re == R(0) && q.im == R(0)) {
        fv.coeffs.assign(N, C(R(0)));
        fv.coeffs[pos] = C(R(1));
        d::point_normalize(fv, ctx);
        return fv;
    }
    if (strategy == CoeffStrategy::Eigvec) {
        auto pairs = tridiag_eigen(build_matrix(cls, q, N), N, ctx);
        std::size_t best = 0;
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (abs(pairs[i].value - a) < abs(pairs[best].value - a)) best = i;
        fv.coeffs = d::from_sym(cls, pairs[best].vector);
        fv.norm = Normalization::RawEigvec;
        d::point_normalize(fv, ctx);
        return fv;
    }
    // forward up to the matching index, backward ratios above it
    int s = (matching_index(cls, order, a, q) - first_index(cls)) / 2;
    s = std::min(s, N - 1);
    int K = std::max(N, s + (tail_depth(a, q, harmonic(cls, s), ctx.digits) - harmonic(cls, s)) / 2 + 1);
    std::vector<C> A(N, C(R(0)));
    A[0] = C(R(1));
    for (int k = 0; k < s; ++k) {
        C nxt = (a - d::row_diag(cls, k, q)) * A[k];
        if (k > 0) nxt = nxt - d::row_sub(cls, k, q) * A[k - 1];
        A[k + 1] = nxt / q;
    }
    std::vector<C> r(K + 2, C(R(0)));
    for (int k = K; k > s; --k) r[k] = d::row_sub(cls, k, q) / (a - d::row_diag(cls, k, q) - q * r[k + 1]);
    for (int k = s + 1; k < N; ++k) A[k] = r[k] * A[k - 1];
    fv.coeffs = A;
    fv.norm = Normalization::RawEigvec;
    d::point_normalize(fv, ctx);
    return fv;
}

// y(z), y'(z) and y''(z) for complex z.
template <class R>
Complex<R> eval_periodic(const FourierVector<R>& fv, const Complex<R>& z, int derivative = 0) {
    using C = Complex<R>;
    C s(R(0));
    bool cosine = is_cosine(fv.cls);
    for (std::size_t k = 0; k < fv.coeffs.size(); ++k) {
        R n = R(harmonic(fv.cls, static_cast<int>(k)));
        C nz = z * n;
        C t;
        switch (derivative) {
            case 0: t = cosine ? cos(nz) : sin(nz); break;
            case 1: t = cosine ? -(sin(nz) * n) : cos(nz) * n; break;
            default: t = cosine ? -(cos(nz) * (n * n)) : -(sin(nz) * (n * n)); break;
        }
        s += fv.coeffs[k] * t;
    }
    if (!isfinite(s))
        throw OverflowError("eval_periodic: overflow at |Im z| = " + std::to_string(std::fabs(to_double(z.im))));
    return s;
}

// Ce(x) = ce(ix), Se(x) = -i se(ix).
template <class R>
Complex<R> eval_modified(const FourierVector<R>& fv, const Complex<R>& x) {
    using C = Complex<R>;
    C ix = C(-x.im, x.re);
    C v = eval_periodic(fv, ix);
    if (is_cosine(fv.cls)) return v;
    return C(v.im, -v.re);
}

// y'' + (a - 2q cos 2z) y at npts points on [0, 2pi), relative to
// (1 + |a| + 2|q|) max |y|.
template <class R>
double eigen_residual(const FourierVector<R>& fv, int npts = 32) {
    using C = Complex<R>;
    R pi = real_pi<R>();
    R worst = 0, ymax = 0;
    for (int j = 0; j < npts; ++j) {
        C z(R(2) * pi * R(j) / R(npts) + R(0.1));
        C y = eval_periodic(fv, z);
        C r = eval_periodic(fv, z, 2) + (fv.a - fv.q * (R(2) * cos(z * R(2)))) * y;
        worst = std::max(worst, abs(r));
        ymax = std::max(ymax, abs(y));
    }
    return to_double(worst / (ymax * (R(1) + abs(fv.a) + R(2) * abs(fv.q))));
}

// Bessel-product series for Ce/Se in u2 = sqrt(q) e^x, u1 = sqrt(q) e^{-x},
// with index shift s (s = 0 gives the classical four series; s < 0 picks the
// position of the largest coefficient, which avoids cancellation for higher
// orders). Rescaled to point normalization through the value (cosine
// classes) or the derivative (sine classes) at x = 0.
template <class R>
Complex<R> eval_modified_bessel_product(const FourierVector<R>& fv, const Complex<R>& x, const PrecisionContext& ctx,
                                        int shift = -1) {
    using C = Complex<R>;
    int K = static_cast<int>(fv.coeffs.size());
    int s = shift;
    if (s < 0) {
        s = 0;
        for (int k = 1; k < K; ++k)
            if (abs(fv.coeffs[k]) > abs(fv.coeffs[s])) s = k;
    }
    // harmonic n = 2l (even classes) or 2l + 1 (odd classes)
    int l0 = fv.cls == EigenClass::SE_EVEN ? 1 : 0;
    if (fv.cls == EigenClass::SE_EVEN) s += 1;
    int odd = is_even_class(fv.cls) ? 0 : 1;
    int sign = is_cosine(fv.cls) ? 1 : -1;
    C sq = sqrt(fv.q);
    auto raw = [&](const C& xx, C& val, C& der) {
        C u1 = sq * exp(-xx), u2 = sq * exp(xx);
        int nmax = K + s + 4;
        auto J1 = bessel_j_sequence(nmax + 1, u1);
        auto J2 = bessel_j_sequence(nmax + 1, u2);
        auto Jn = [](const std::vector<C>& J, int n) { return (n < 0 && (-n) % 2) ? -J[-n] : J[n < 0 ? -n : n]; };
        auto dJn = [&](const std::vector<C>& J, int n) { return (Jn(J, n - 1) - Jn(J, n + 1)) / R(2); };
        // J_i(u1) J_j(u2) and its x-derivative
        auto prod = [&](int i, int j, C& p, C& dp) {
            p = Jn(J1, i) * Jn(J2, j);
            dp = -(u1 * dJn(J1, i)) * Jn(J2, j) + Jn(J1, i) * (u2 * dJn(J2, j));
        };
        val = C(R(0));
        der = C(R(0));
        R scale = 0;
        int small = 0;
        for (int k = 0; k < K; ++k) {
            int l = k + l0;
            C c = fv.coeffs[k] * R(l % 2 ? -1 : 1);
            C p1, d1, p2, d2;
            prod(l - s, l + s + odd, p1, d1);
            prod(l + s + odd, l - s, p2, d2);
            C tv = c * (p1 + p2 * R(sign)), td = c * (d1 + d2 * R(sign));
            val += tv;
            der += td;
            scale = std::max(scale, std::max(abs(val), abs(der)));
            if (k > s && abs(tv) + abs(td) < R(ctx.trim) * R(ctx.trim) * scale) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
        }
    };
    C v0, d0, v, dv;
    raw(C(R(0)), v0, d0);
    raw(x, v, dv);
    C anchor = is_cosine(fv.cls) ? v0 : d0;
    if (abs(anchor) == R(0)) throw NormalizationImpossible("eval_modified_bessel_product: zero anchor");
    C out = v * eigenfunction_detail::point_value(fv) / anchor;
    if (!isfinite(out)) throw OverflowError("eval_modified_bessel_product: overflow");
    return out;
}

// Bilinear form int_0^period f g dz without conjugation, in closed form.
// period is pi or 2 pi; odd classes need 2 pi.
template <class R>
Complex<R> bilinear_form(const FourierVector<R>& f, const FourierVector<R>& g, const R& period) {
    using C = Complex<R>;
    R pi = real_pi<R>();
    bool full = abs(period - R(2) * pi) < R(1e-9);
    if (!full && abs(period - pi) >= R(1e-9)) throw DomainError("bilinear_form: period must be pi or 2 pi");
    if (!full && (!is_even_class(f.cls) || !is_even_class(g.cls)))
        throw DomainError("bilinear_form: odd classes have period 2 pi");
    if (is_cosine(f.cls) != is_cosine(g.cls) || is_even_class(f.cls) != is_even_class(g.cls)) return C(R(0));
    std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
    C s(R(0));
    for (std::size_t k = 0; k < n; ++k) {
        C t = f.coeffs[k] * g.coeffs[k];
        if (k == 0 && f.cls == EigenClass::CE_EVEN) t = t * R(2);
        s += t;
    }
    return s * (full ? pi : pi / R(2));
}

// int_0^period conj(f) g dz in closed form.
template <class R>
Complex<R> inner_product(const FourierVector<R>& f, const FourierVector<R>& g, const R& period) {
    FourierVector<R> fc = f;
    for (auto& c : fc.coeffs) c = conj(c);
    return bilinear_form(fc, g, period);
}

// Quadrature route for black-box functions.
template <class R>
Complex<R> bilinear_form_quad(const std::function<Complex<R>(const R&)>& f,
                              const std::function<Complex<R>(const R&)>& g, const R& period,
                              const PrecisionContext& ctx) {
    return quad_periodic<R>([&](const R& x) { return f(x) * g(x); }, period, 32, ctx.tol);
}

// Rescales to bilinear norm pi; impossible at a double point.
template <class R>
FourierVector<R> to_norm_pi(FourierVector<R> fv, const PrecisionContext& ctx) {
    R pi = real_pi<R>();
    Complex<R> b = bilinear_form(fv, fv, R(2) * pi);
    if (abs(b) < R(ctx.trim)) throw NormalizationImpossible("to_norm_pi: bilinear norm vanishes");
    Complex<R> s = sqrt(Complex<R>(pi) / b);
    for (auto& c : fv.coeffs) c = c * s;
    fv.norm = Normalization::RawEigvec;
    return fv;
}

// ---------------------------------------------------------------------------
// Generalized eigenfunction at a double point

template <class R>
GeneralizedEigenfunction<R> generalized_eigenfunction(const DoublePoint<R>& dp, int N, const PrecisionContext& ctx) {
    using C = Complex<R>;
    namespace d = eigenfunction_detail;
    auto M = build_matrix(dp.cls, dp.q_star, N);
    std::vector<std::vector<C>> A(N, std::vector<C>(N, C(R(0))));
    for (int i = 0; i < N; ++i) {
        A[i][i] = dp.a_star - M.diag[i];
        if (i + 1 < N) A[i][i + 1] = A[i + 1][i] = -M.offdiag[i];
    }
    std::vector<std::vector<C>> U, V;
    std::vector<R> s;
    svd_jacobi(A, U, s, V);
    std::size_t jmin = 0;
    for (std::size_t j = 1; j < s.size(); ++j)
        if (s[j] < s[jmin]) jmin = j;
    std::vector<C> null(N);
    for (int i = 0; i < N; ++i) null[i] = V[i][jmin];

    GeneralizedEigenfunction<R> ge;
    ge.double_point = dp;
    ge.base.cls = dp.cls;
    ge.base.a = dp.a_star;
    ge.base.q = dp.q_star;
    ge.base.coeffs = d::from_sym(dp.cls, null);
    d::point_normalize(ge.base, ctx);

    // (a* - M) u = -v*
    std::vector<C> rhs = d::to_sym(ge.base);
    for (auto& x : rhs) x = -x;
    std::vector<C> u = solve_singular_dense(A, rhs, ctx);
    ge.gen = ge.base;
    ge.gen.coeffs = d::from_sym(dp.cls, u);
    ge.gen.norm = Normalization::RawEigvec;
    // remove the v1 component: u(0) = 0 (cosine) or u'(0) = 0 (sine)
    C c = d::point_value(ge.gen);
    for (int i = 0; i < N; ++i) ge.gen.coeffs[i] = ge.gen.coeffs[i] - c * ge.base.coeffs[i];
    return ge;
}

// u'' + (a* - 2q* cos 2z) u + v1 at npts points, relative to max |v1|.
template <class R>
double pertsol_residual(const GeneralizedEigenfunction<R>& ge, int npts = 64) {
    using C = Complex<R>;
    R pi = real_pi<R>();
    R worst = 0, vmax = 0;
    const auto& u = ge.gen;
    for (int j = 0; j < npts; ++j) {
        C z(R(2) * pi * R(j) / R(npts) + R(0.05));
        C v = eval_periodic(ge.base, z);
        C r = eval_periodic(u, z, 2) + (u.a - u.q * (R(2) * cos(z * R(2)))) * eval_periodic(u, z) + v;
        worst = std::max(worst, abs(r));
        vmax = std::max(vmax, abs(v));
    }
    return to_double(worst / vmax);
}

// ---------------------------------------------------------------------------
// Expansion of a periodic function in eigenfunctions

template <class R>
struct ExpansionMode {
    FourierVector<R> fv;
    Complex<R> coeff;
    int order = -1;       // -1 for the generalized eigenfunction u
    bool generalized = false;
};

template <class R>
struct Expansion {
    std::vector<ExpansionMode<R>> modes;
    std::optional<Complex<R>> alpha, beta;  // set when a double point was used
    bool ill_conditioned = false;
    double max_coeff = 0;
};

// Fourier coefficients of f over 2 pi for one class, n harmonics.
template <class R>
std::vector<Complex<R>> project_fourier(const std::function<Complex<R>(const R&)>& f, EigenClass cls, int n,
                                        const PrecisionContext& ctx, int nodes = 256) {
    using C = Complex<R>;
    using std::cos;
    using std::sin;
    R pi = real_pi<R>();
    std::vector<C> samples(nodes);
    for (int j = 0; j < nodes; ++j) samples[j] = f(R(2) * pi * R(j) / R(nodes));
    std::vector<C> out(n, C(R(0)));
    for (int k = 0; k < n; ++k) {
        R h = R(harmonic(cls, k));
        C s(R(0));
        for (int j = 0; j < nodes; ++j) {
            R x = R(2) * pi * R(j) / R(nodes);
            s += samples[j] * (is_cosine(cls) ? cos(h * x) : sin(h * x));
        }
        s = s * (R(2) / R(nodes));
        if (h == R(0)) s = s / R(2);
        out[k] = s;
    }
    return out;
}

template <class R>
Expansion<R> expand_function(const std::function<Complex<R>(const R&)>& f, const Complex<R>& q,
                             const std::vector<EigenClass>& classes, int n_modes, const PrecisionContext& ctx,
                             const std::optional<DoublePoint<R>>& near_double = std::nullopt, int nodes = 256) {
    using C = Complex<R>;
    namespace d = eigenfunction_detail;
    R pi = real_pi<R>();
    R two_pi = R(2) * pi;
    Expansion<R> ex;
    int N = std::max(n_modes + 20, truncation_dimension(2 * n_modes + 4, q, ctx) + 10);
    bool at_double = near_double && abs(near_double->q_star - q) <= R(1e-9) * (R(1) + abs(q));
    for (EigenClass cls : classes) {
        FourierVector<R> fproj;
        fproj.cls = cls;
        fproj.coeffs = project_fourier(f, cls, N, ctx, nodes);
        auto pairs = tridiag_eigen(build_matrix(cls, q, N), n_modes, ctx);
        std::vector<FourierVector<R>> vs;
        std::vector<int> orders;
        for (int k = 0; k < n_modes; ++k) {
            FourierVector<R> v;
            v.cls = cls;
            v.a = pairs[k].value;
            v.q = q;
            v.coeffs = d::from_sym(cls, pairs[k].vector);
            d::point_normalize(v, ctx);
            vs.push_back(v);
            orders.push_back(order_at(cls, k));
        }
        std::vector<bool> used(n_modes, false);
        if (at_double && near_double->cls == cls) {
            auto ge = generalized_eigenfunction(*near_double, N, ctx);
            // drop the two modes closest to a*
            std::vector<int> idx(n_modes);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int i, int j) {
                return abs(vs[i].a - near_double->a_star) < abs(vs[j].a - near_double->a_star);
            });
            used[idx[0]] = used[idx[1]] = true;
            C Bfv = bilinear_form(fproj, ge.base, two_pi), Bfu = bilinear_form(fproj, ge.gen, two_pi);
            C Buv = bilinear_form(ge.gen, ge.base, two_pi), Buu = bilinear_form(ge.gen, ge.gen, two_pi);
            C beta = Bfv / Buv;
            C alpha = (Bfu - beta * Buu) / Buv;
            ex.alpha = alpha;
            ex.beta = beta;
            ex.modes.push_back({ge.base, alpha, std::min(orders[idx[0]], orders[idx[1]]), false});
            ex.modes.push_back({ge.gen, beta, -1, true});
        }
        for (int k = 0; k < n_modes; ++k) {
            if (used[k]) continue;
            C num = bilinear_form(fproj, vs[k], two_pi), den = bilinear_form(vs[k], vs[k], two_pi);
            if (abs(den) < R(ctx.trim) * R(1e3)) ex.ill_conditioned = true;
            ex.modes.push_back({vs[k], num / den, orders[k], false});
        }
        if (!at_double) {
            // nearly coalesced pairs give coefficients growing like |q - q*|^(-1/2)
            for (int k = 0; k + 1 < n_modes; ++k)
                for (int j = k + 1; j < n_modes; ++j)
                    if (abs(vs[k].a - vs[j].a) < R(1e-2) * (R(1) + abs(vs[k].a))) ex.ill_conditioned = true;
        }
    }
    for (auto& m : ex.modes) ex.max_coeff = std::max(ex.max_coeff, to_double(abs(m.coeff)));
    return ex;
}

template <class R>
Complex<R> eval_expansion(const Expansion<R>& ex, const Complex<R>& z) {
    Complex<R> s(R(0));
    for (auto& m : ex.modes) s += m.coeff * eval_periodic(m.fv, z);
    return s;
}

}  // namespace mathieu
