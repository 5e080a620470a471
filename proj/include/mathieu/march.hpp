// Hermite-Obreschkoff marching for y'' + (a - 2q cos 2t) y = 0 along complex
// polylines: Taylor stacks, two-point Hermite blends, collocation steps with PI
// step control, measured residuals, Floquet exponents and the Green's-function
// route to generalized eigenfunctions.
#pragma once

#include "mathieu/complex.hpp"
#include "mathieu/doublepoint.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/precision.hpp"
#include "mathieu/quadrature.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

namespace mathieu {

// Taylor coefficients w_k of Y(s) = y(t0 + s dir) for real s, from y(t0) = y0,
// y'(t0) = y0p. An optional forcing g(t) (given by its coefficients in s) turns
// the equation into y'' + (a - 2q cos 2t) y = g.
template <class R>
std::vector<Complex<R>> taylor_coefficients(const Complex<R>& a, const Complex<R>& q, const Complex<R>& t0,
                                            const Complex<R>& y0, const Complex<R>& y0p, int order,
                                            const Complex<R>& dir, const std::vector<Complex<R>>* forcing = nullptr) {
    using C = Complex<R>;
    if (order < 2) throw DomainError("taylor_coefficients: order must be >= 2");
    std::vector<C> Cc(order + 1), Sc(order + 1), w(order + 1, C(R(0)));
    Cc[0] = cos(t0 * R(2));
    Sc[0] = sin(t0 * R(2));
    for (int k = 0; k < order; ++k) {
        Cc[k + 1] = -(dir * Sc[k] * R(2)) / R(k + 1);
        Sc[k + 1] = dir * Cc[k] * R(2) / R(k + 1);
    }
    C d2 = dir * dir;
    w[0] = y0;
    w[1] = y0p * dir;
    for (int k = 0; k + 2 <= order; ++k) {
        C conv(R(0));
        for (int j = 0; j <= k; ++j) conv += Cc[j] * w[k - j];
        C rhs = q * conv * R(2) - a * w[k];
        if (forcing && k < static_cast<int>(forcing->size())) rhs += (*forcing)[k];
        w[k + 2] = d2 * rhs / R((k + 1) * (k + 2));
    }
    return w;
}

// Two-point Hermite interpolant on t0 + s dir, 0 <= s <= h, matching d + 1
// scaled Taylor coefficients (Y^(j)/j! h^j) at each end.
template <class R>
struct Blend {
    Complex<R> t0, dir;
    R h = 0;
    std::vector<Complex<R>> left, right;
    double residual = 0;  // at the midpoint, relative to max(1, |y|) (1 + |a - 2q cos 2t|)

    int degree() const { return static_cast<int>(left.size()) - 1; }
    Complex<R> t1() const { return t0 + dir * h; }

    // H = T(theta) + theta^(d+1) sum_i f_i (1 - theta)^i, where T is the left
    // Taylor polynomial and f carries only the mismatch at the right end.
    void prepare() {
        int m = degree();
        std::vector<Complex<R>> mis(m + 1);
        for (int j = 0; j <= m; ++j) {
            Complex<R> t(R(0));
            R bin = 1;  // binom(k, j)
            for (int k = j; k <= m; ++k) {
                t += left[k] * bin;
                bin = bin * R(k + 1) / R(k + 1 - j);
            }
            mis[j] = right[j] - t;
        }
        std::vector<R> b(m + 1);  // binom(m + r, r)
        b[0] = R(1);
        for (int r = 1; r <= m; ++r) b[r] = b[r - 1] * R(m + r) / R(r);
        f_.assign(m + 1, Complex<R>(R(0)));
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= i; ++j) f_[i] += mis[j] * (b[i - j] * R(j % 2 ? -1 : 1));
    }

    // y, dy/ds, d2y/ds2 at s.
    void eval(const R& s, Complex<R>& y, Complex<R>& dy, Complex<R>& d2y) const {
        using C = Complex<R>;
        int m = degree();
        R th = s / h, ph = R(1) - th;
        auto horner = [](const std::vector<C>& c, const R& x, C& p, C& p1, C& p2) {
            p = p1 = p2 = C(R(0));
            for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
                p2 = p2 * x + p1 * R(2);
                p1 = p1 * x + p;
                p = p * x + c[i];
            }
        };
        C T, T1, T2, Q, Q1, Q2;
        horner(left, th, T, T1, T2);
        horner(f_, ph, Q, Q1, Q2);
        R m1 = R(m + 1);
        R k = ipow_r(th, m + 1), k1 = m1 * ipow_r(th, m), k2 = m1 * R(m) * ipow_r(th, m - 1);
        C H = T + Q * k;
        C H1 = T1 + (-Q1) * k + Q * k1;
        C H2 = T2 + Q2 * k + (-Q1) * (k1 * R(2)) + Q * k2;
        y = H;
        dy = H1 / h;
        d2y = H2 / (h * h);
    }

    // y(t) and y'(t) (derivative in t, not s).
    std::pair<Complex<R>, Complex<R>> value(const R& s) const {
        Complex<R> y, dy, d2y;
        eval(s, y, dy, d2y);
        return {y, dy / dir};
    }

private:
    static R ipow_r(const R& x, int n) {
        if (n < 0) return R(0);
        R r = 1;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }
    std::vector<Complex<R>> f_;
};

template <class R>
Blend<R> make_blend(const Complex<R>& t0, const Complex<R>& dir, const R& h, const std::vector<Complex<R>>& wl,
                    const std::vector<Complex<R>>& wr) {
    Blend<R> b;
    b.t0 = t0;
    b.dir = dir;
    b.h = h;
    b.left.resize(wl.size());
    b.right.resize(wr.size());
    R p = 1;
    for (std::size_t j = 0; j < wl.size(); ++j) {
        b.left[j] = wl[j] * p;
        b.right[j] = wr[j] * p;
        p *= h;
    }
    b.prepare();
    return b;
}

// Residual y'' + (a - 2q cos 2t) y - g at s, in the s variable (|dir| = 1).
template <class R>
Complex<R> blend_residual(const Blend<R>& b, const Complex<R>& a, const Complex<R>& q, const R& s) {
    Complex<R> y, dy, d2y;
    b.eval(s, y, dy, d2y);
    Complex<R> t = b.t0 + b.dir * s;
    return d2y + b.dir * b.dir * (a - q * (R(2) * cos(t * R(2)))) * y;
}

template <class R>
struct MarchState {
    Complex<R> t, y, yp;
};

namespace march_detail {

template <class R>
R scaled_residual(const Blend<R>& b, const Complex<R>& a, const Complex<R>& q, const R& s) {
    Complex<R> t = b.t0 + b.dir * s;
    R sc = std::max(R(1), std::max(abs(b.left[0]), abs(b.right[0])));
    sc *= R(1) + abs(a - q * (R(2) * cos(t * R(2))));
    return abs(blend_residual(b, a, q, s)) / sc;
}

}  // namespace march_detail

// One collocation step of length h along dir for each state; all states share
// the right-end Taylor stacks.
template <class R>
std::vector<Blend<R>> ho_step_multi(const std::vector<MarchState<R>>& states, const Complex<R>& dir, const R& h,
                                    int order, const Complex<R>& a, const Complex<R>& q) {
    using C = Complex<R>;
    if (order < 4) throw DomainError("ho_step: order must be >= 4");
    C t0 = states.front().t, t1 = t0 + dir * h;
    auto wc = taylor_coefficients(a, q, t1, C(R(1)), C(R(0)), order, dir);
    auto ws = taylor_coefficients(a, q, t1, C(R(0)), C(R(1)) / dir, order, dir);  // Y'(t1) = 1 in s
    std::vector<C> zero(order + 1, C(R(0)));
    R tau1 = h / R(4), tau2 = h * R(3) / R(4);
    Blend<R> bc = make_blend(t0, dir, h, zero, wc);
    Blend<R> bs = make_blend(t0, dir, h, zero, ws);
    C rc1 = blend_residual(bc, a, q, tau1), rc2 = blend_residual(bc, a, q, tau2);
    C rs1 = blend_residual(bs, a, q, tau1), rs2 = blend_residual(bs, a, q, tau2);
    C det = rc1 * rs2 - rs1 * rc2;
    R scale = abs(rc1 * rs2) + abs(rs1 * rc2);
    if (abs(det) <= R(64) * RealTraits<R>::epsilon() * scale || abs(det) == R(0))
        throw SingularCollocation("ho_step: degenerate 2x2 collocation system; halve the step");
    std::vector<Blend<R>> out;
    for (const auto& st : states) {
        auto wl = taylor_coefficients(a, q, st.t, st.y, st.yp, order, dir);
        // Taylor predictor for the right end, then a collocation correction
        C yp(R(0)), dp(R(0));
        R hp = 1;
        for (int k = 0; k <= order; ++k) {
            yp += wl[k] * hp;
            if (k < order) dp += wl[k + 1] * (hp * R(k + 1));
            hp *= h;
        }
        auto wr = taylor_coefficients(a, q, t1, yp, dp / dir, order, dir);
        for (int it = 0; it < 2; ++it) {
            Blend<R> b0 = make_blend(t0, dir, h, wl, wr);
            C r01 = blend_residual(b0, a, q, tau1), r02 = blend_residual(b0, a, q, tau2);
            C al = (-r01 * rs2 + rs1 * r02) / det;
            C be = (-rc1 * r02 + r01 * rc2) / det;
            for (int k = 0; k <= order; ++k) wr[k] += wc[k] * al + ws[k] * be;
        }
        Blend<R> b = make_blend(t0, dir, h, wl, wr);
        b.residual = to_double(march_detail::scaled_residual(b, a, q, h / R(2)));
        out.push_back(std::move(b));
    }
    return out;
}

template <class R>
Blend<R> ho_step(const MarchState<R>& st, const Complex<R>& dt, int order, const Complex<R>& a, const Complex<R>& q) {
    R h = abs(dt);
    return ho_step_multi<R>({st}, dt / h, h, order, a, q).front();
}

// ---------------------------------------------------------------------------

template <class R>
struct BlendString {
    std::vector<Blend<R>> segments;
    Complex<R> a, q;
    double tol = 0;
    double max_residual = 0;
    int rejected = 0;

    std::vector<Complex<R>> knots() const {
        std::vector<Complex<R>> k;
        if (segments.empty()) return k;
        k.push_back(segments.front().t0);
        for (auto& s : segments) k.push_back(s.t1());
        return k;
    }
    std::pair<Complex<R>, Complex<R>> end_value() const {
        const auto& b = segments.back();
        return b.value(b.h);
    }
};

template <class R>
void states_snap(std::vector<MarchState<R>>& states, const Complex<R>& t) {
    for (auto& s : states) s.t = t;
}

struct MarchOptions {
    int order = 20;
    double tol = 0;            // 0: ctx.tol
    bool allow_large_imag = false;
    double imag_cap = 2 * M_PI;
    int max_steps = 200000;
};

// Integrates one or more initial conditions on a shared mesh along the polyline.
template <class R>
std::vector<BlendString<R>> integrate_paths(const Complex<R>& a, const Complex<R>& q,
                                            const std::vector<Complex<R>>& path,
                                            const std::vector<std::pair<Complex<R>, Complex<R>>>& ics,
                                            const PrecisionContext& ctx, const MarchOptions& opt = {}) {
    using C = Complex<R>;
    using std::pow;
    if (path.size() < 2) throw DomainError("integrate_path: need at least two waypoints");
    double tol = opt.tol > 0 ? opt.tol : ctx.tol;
    if (tol < std::pow(10.0, -ctx.digits + 2))
        throw DomainError("integrate_path: tol below 10^(2 - digits) for this working precision");
    if (!opt.allow_large_imag)
        for (auto& p : path)
            if (std::fabs(to_double(p.im)) > opt.imag_cap)
                throw DomainError("integrate_path: |Im z| exceeds the cap; set allow_large_imag to override");
    int d = opt.order;
    R total = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) total += abs(path[i + 1] - path[i]);
    R hmin = total * pow10<R>(-ctx.digits / 2);
    std::vector<BlendString<R>> out(ics.size());
    std::vector<MarchState<R>> states;
    for (auto& ic : ics) states.push_back({path[0], ic.first, ic.second});
    for (auto& s : out) {
        s.a = a;
        s.q = q;
        s.tol = tol;
    }
    R k = R(d + 1);
    R tolR = R(tol);
    R err_prev = tolR;
    int steps = 0;
    R h = 0;
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        C diff = path[seg + 1] - path[seg];
        R L = abs(diff);
        if (L == R(0)) continue;
        C dir = diff / L;
        if (h == R(0)) {
            // Taylor-only predictor for the first step
            R hp = L;
            for (auto& st : states) {
                auto w = taylor_coefficients(a, q, st.t, st.y, st.yp, d, dir);
                R sc = std::max(R(1), abs(st.y));
                for (int j : {d - 1, d}) {
                    R c = abs(w[j]);
                    if (c > R(0)) hp = std::min(hp, R(pow(to_double(tolR * sc / c), 1.0 / j)));
                }
            }
            h = hp;
        }
        R s = 0;
        while (s < L) {
            if (++steps > opt.max_steps) throw ConvergenceError("integrate_path: step budget exhausted");
            // no slivers: finish the segment, or split the remainder in two
            bool last = s + h >= L;
            R hs = last ? L - s : h;
            if (!last && s + h * R(1.25) >= L) hs = (L - s) / R(2);
            if (hs < hmin) throw StepUnderflow("integrate_path: step size below 10^(-digits/2) times the path length");
            std::vector<Blend<R>> bl;
            try {
                bl = ho_step_multi(states, dir, hs, d, a, q);
            } catch (const SingularCollocation&) {
                h = hs / R(2);
                for (auto& o : out) ++o.rejected;
                continue;
            }
            R err = 0;
            for (auto& b : bl) err = std::max(err, R(b.residual));
            if (!(err <= tolR)) {
                R fac = std::isfinite(to_double(err)) ? R(0.9) * R(pow(to_double(tolR / err), 1.0 / to_double(k)))
                                                       : R(0.2);
                h = hs * std::max(R(0.2), std::min(R(0.9), fac));
                for (auto& o : out) ++o.rejected;
                continue;
            }
            for (std::size_t i = 0; i < bl.size(); ++i) {
                auto [y, yp] = bl[i].value(hs);
                states[i] = {bl[i].t1(), y, yp};
                out[i].max_residual = std::max(out[i].max_residual, bl[i].residual);
                out[i].segments.push_back(std::move(bl[i]));
            }
            s += hs;
            if (last) {
                states_snap(states, path[seg + 1]);
                break;
            }
            R fac = R(4);
            if (err > R(0))
                fac = R(0.9) * R(pow(to_double(tolR / err), 0.7 / to_double(k))) *
                      R(pow(to_double(err_prev / tolR), 0.4 / to_double(k)));
            // at the rounding floor the measured residual says nothing about truncation
            if (err <= tolR / R(8)) fac = std::max(fac, R(1.2));
            fac = std::max(R(0.2), std::min(R(4), fac));
            err_prev = std::max(err, tolR * R(1e-3));
            h = h * fac;
        }
    }
    return out;
}

template <class R>
BlendString<R> integrate_path(const Complex<R>& a, const Complex<R>& q, const std::vector<Complex<R>>& path,
                              const std::pair<Complex<R>, Complex<R>>& ic, const PrecisionContext& ctx,
                              const MarchOptions& opt = {}) {
    return integrate_paths<R>(a, q, path, {ic}, ctx, opt).front();
}

// (y, y') at z on the path.
template <class R>
std::pair<Complex<R>, Complex<R>> eval_blend(const BlendString<R>& bs, const Complex<R>& z) {
    for (const auto& b : bs.segments) {
        Complex<R> sig = (z - b.t0) / b.dir;
        R slack = R(1e-10) * (R(1) + b.h);
        if (abs(sig.im) <= slack && sig.re >= -slack && sig.re <= b.h + slack) {
            R s = std::max(R(0), std::min(b.h, sig.re));
            return b.value(s);
        }
    }
    throw OutOfRange("eval_blend: point " + to_string(z, 6) + " is not on the path");
}

// Largest scaled residual over `per_segment` interior points of every segment.
template <class R>
double audit_residual(const BlendString<R>& bs, int per_segment = 8) {
    R worst = 0;
    for (const auto& b : bs.segments)
        for (int j = 1; j <= per_segment; ++j) {
            R s = b.h * R(j) / R(per_segment + 1);
            worst = std::max(worst, march_detail::scaled_residual(b, bs.a, bs.q, s));
        }
    return to_double(worst);
}

template <class R>
Complex<R> wronskian_check(const BlendString<R>& s1, const BlendString<R>& s2, const Complex<R>& z) {
    auto [y1, d1] = eval_blend(s1, z);
    auto [y2, d2] = eval_blend(s2, z);
    return y1 * d2 - y2 * d1;
}

// w_I (y = 1, y' = 0) and w_II (y = 0, y' = 1) on a shared mesh.
template <class R>
std::pair<BlendString<R>, BlendString<R>> fundamental_pair(const Complex<R>& a, const Complex<R>& q,
                                                           const std::vector<Complex<R>>& path,
                                                           const PrecisionContext& ctx, const MarchOptions& opt = {}) {
    using C = Complex<R>;
    auto v = integrate_paths<R>(a, q, path, {{C(R(1)), C(R(0))}, {C(R(0)), C(R(1))}}, ctx, opt);
    return {v[0], v[1]};
}

template <class R>
struct FloquetResult {
    Complex<R> mu;             // principal acosh(w_I(pi)) / pi, defined mod 2i
    Complex<R> cosh_pi_mu;     // w_I(pi)
    Complex<R> w2p_pi;         // w_II'(pi)
    double consistency = 0;    // |w_I(pi) - w_II'(pi)|
};

template <class R>
FloquetResult<R> floquet_exponent(const Complex<R>& a, const Complex<R>& q, const PrecisionContext& ctx,
                                  const MarchOptions& opt = {}) {
    using C = Complex<R>;
    R pi = real_pi<R>();
    auto [w1, w2] = fundamental_pair<R>(a, q, {C(R(0)), C(pi)}, ctx, opt);
    FloquetResult<R> r;
    r.cosh_pi_mu = w1.end_value().first;
    r.w2p_pi = w2.end_value().second;
    r.consistency = to_double(abs(r.cosh_pi_mu - r.w2p_pi));
    double tol = opt.tol > 0 ? opt.tol : ctx.tol;
    R sc = std::max(R(1), abs(r.cosh_pi_mu));
    if (r.consistency > 1e3 * tol * to_double(sc))
        throw ConsistencyFailure("floquet_exponent: w_I(pi) and w_II'(pi) differ by " +
                                 std::to_string(r.consistency));
    r.mu = acosh(r.cosh_pi_mu) / pi;
    return r;
}

// ---------------------------------------------------------------------------
// Generalized eigenfunction by variation of constants:
//   u = alpha w_I + beta w_II + w_I int_0^z w_II y* - w_II int_0^z w_I y*
// solves u'' + (a* - 2q* cos 2z) u = -y*. Cosine classes take y* = w_I and
// alpha = 0 (u(0) = 0); sine classes take y* = w_II and beta = 0 (u'(0) = 0).
// The remaining constant makes u periodic.

template <class R>
struct GreensResult {
    BlendString<R> u, y_star;
    Complex<R> alpha, beta;
    double periodicity = 0;  // |u(p) - u(0)| + |u'(p) - u'(0)|
};

template <class R>
GreensResult<R> greens_generalized(const DoublePoint<R>& dp, const PrecisionContext& ctx, const MarchOptions& opt = {}) {
    using C = Complex<R>;
    R pi = real_pi<R>();
    R period = is_even_class(dp.cls) ? pi : R(2) * pi;
    const C& a = dp.a_star;
    const C& q = dp.q_star;
    auto [w1, w2] = fundamental_pair<R>(a, q, {C(R(0)), C(period)}, ctx, opt);
    bool cosine = is_cosine(dp.cls);
    const BlendString<R>& ys = cosine ? w1 : w2;
    std::size_t n = w1.segments.size();
    int d = opt.order;
    std::vector<R> gx, gw;
    gauss_legendre<R>(d + 4, gx, gw);
    // I1 = int w_I y*, I2 = int w_II y* at the knots
    std::vector<C> I1(n + 1, C(R(0))), I2(n + 1, C(R(0)));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b1 = w1.segments[i];
        const auto& b2 = w2.segments[i];
        const auto& by = ys.segments[i];
        C s1(R(0)), s2(R(0));
        for (std::size_t g = 0; g < gx.size(); ++g) {
            R s = b1.h * (gx[g] + R(1)) / R(2);
            C y1 = b1.value(s).first, y2 = b2.value(s).first, yy = by.value(s).first;
            s1 += y1 * yy * gw[g];
            s2 += y2 * yy * gw[g];
        }
        C scale = b1.dir * (b1.h / R(2));
        I1[i + 1] = I1[i] + s1 * scale;
        I2[i + 1] = I2[i] + s2 * scale;
    }
    auto knot = [&](std::size_t i, const BlendString<R>& s) {
        return i < n ? s.segments[i].value(R(0)) : s.segments[n - 1].value(s.segments[n - 1].h);
    };
    auto [y1p, d1p] = knot(n, w1);
    auto [y2p, d2p] = knot(n, w2);
    C up = y1p * I2[n] - y2p * I1[n];
    C upd = d1p * I2[n] - d2p * I1[n];
    GreensResult<R> res;
    if (cosine) {
        res.alpha = C(R(0));
        res.beta = -up / y2p;
    } else {
        res.beta = C(R(0));
        res.alpha = -upd / d1p;
    }
    // knot values of u, then forced Taylor stacks and blends
    std::vector<C> uk(n + 1), udk(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        auto [y1, d1] = knot(i, w1);
        auto [y2, d2] = knot(i, w2);
        uk[i] = y1 * I2[i] - y2 * I1[i] + res.alpha * y1 + res.beta * y2;
        udk[i] = d1 * I2[i] - d2 * I1[i] + res.alpha * d1 + res.beta * d2;
    }
    res.u.a = a;
    res.u.q = q;
    res.u.tol = w1.tol;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& by = ys.segments[i];
        auto [yl, ydl] = by.value(R(0));
        auto [yr, ydr] = by.value(by.h);
        auto gl = taylor_coefficients(a, q, by.t0, yl, ydl, d, by.dir);
        auto gr = taylor_coefficients(a, q, by.t1(), yr, ydr, d, by.dir);
        for (auto& c : gl) c = -c;
        for (auto& c : gr) c = -c;
        auto wl = taylor_coefficients(a, q, by.t0, uk[i], udk[i], d, by.dir, &gl);
        auto wr = taylor_coefficients(a, q, by.t1(), uk[i + 1], udk[i + 1], d, by.dir, &gr);
        Blend<R> b = make_blend(by.t0, by.dir, by.h, wl, wr);
        // residual of the forced equation at the midpoint
        C yv, yd, yd2;
        by.eval(by.h / R(2), yv, yd, yd2);
        C r = blend_residual(b, a, q, by.h / R(2)) + by.dir * by.dir * yv;
        b.residual = to_double(abs(r) / std::max(R(1), std::max(abs(b.left[0]), abs(b.right[0]))));
        res.u.max_residual = std::max(res.u.max_residual, b.residual);
        res.u.segments.push_back(std::move(b));
    }
    res.y_star = ys;
    res.periodicity = to_double(abs(uk[n] - uk[0]) + abs(udk[n] - udk[0]));
    return res;
}

// ---------------------------------------------------------------------------
// JSON

namespace march_detail {

template <class R>
nlohmann::json num(const R& x) {
    if constexpr (std::is_same_v<R, double>)
        return x;
    else
        return RealTraits<R>::to_string(x, RealTraits<R>::digits10() + 3);
}

template <class R>
R parse_num(const nlohmann::json& j) {
    if (j.is_string()) return RealTraits<R>::from_string(j.get<std::string>());
    return R(j.get<double>());
}

template <class R>
nlohmann::json cnum(const Complex<R>& z) {
    return nlohmann::json::array({num(z.re), num(z.im)});
}

template <class R>
Complex<R> parse_cnum(const nlohmann::json& j) {
    return Complex<R>(parse_num<R>(j.at(0)), parse_num<R>(j.at(1)));
}

}  // namespace march_detail

template <class R>
nlohmann::json blend_string_to_json(const BlendString<R>& bs) {
    using namespace march_detail;
    nlohmann::json j;
    j["a"] = cnum(bs.a);
    j["q"] = cnum(bs.q);
    j["tol"] = bs.tol;
    j["max_residual"] = bs.max_residual;
    j["knots"] = nlohmann::json::array();
    for (auto& k : bs.knots()) j["knots"].push_back(cnum(k));
    j["segments"] = nlohmann::json::array();
    for (auto& b : bs.segments) {
        nlohmann::json s;
        s["t0"] = cnum(b.t0);
        s["dir"] = cnum(b.dir);
        s["h"] = num(b.h);
        s["residual"] = b.residual;
        s["left"] = nlohmann::json::array();
        s["right"] = nlohmann::json::array();
        for (auto& c : b.left) s["left"].push_back(cnum(c));
        for (auto& c : b.right) s["right"].push_back(cnum(c));
        j["segments"].push_back(s);
    }
    return j;
}

template <class R>
BlendString<R> blend_string_from_json(const nlohmann::json& j) {
    using namespace march_detail;
    BlendString<R> bs;
    bs.a = parse_cnum<R>(j.at("a"));
    bs.q = parse_cnum<R>(j.at("q"));
    bs.tol = j.at("tol").get<double>();
    bs.max_residual = j.at("max_residual").get<double>();
    for (auto& s : j.at("segments")) {
        Blend<R> b;
        b.t0 = parse_cnum<R>(s.at("t0"));
        b.dir = parse_cnum<R>(s.at("dir"));
        b.h = parse_num<R>(s.at("h"));
        b.residual = s.at("residual").get<double>();
        for (auto& c : s.at("left")) b.left.push_back(parse_cnum<R>(c));
        for (auto& c : s.at("right")) b.right.push_back(parse_cnum<R>(c));
        b.prepare();
        bs.segments.push_back(std::move(b));
    }
    return bs;
}

}  // namespace mathieu
