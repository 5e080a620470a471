// Blanch's continued-fraction characteristic function T(a, q) for the four
// classes, its derivatives through jets, and Newton refinement/continuation
// of simple eigenvalues.
#pragma once

#include "mathieu/complex.hpp"
#include "mathieu/eigenclass.hpp"
#include "mathieu/errors.hpp"
#include "mathieu/jet.hpp"
#include "mathieu/precision.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace mathieu {

// Which function of (a, q) is evaluated. Blanch is the head/tail mismatch
// G_head - G_tail. Numerator multiplies it by the (unnormalized) head
// coefficient A_{M-2}: same zeros, same Puiseux data, but no poles from the
// head recurrence, which sit very close to the eigenvalues when q is small.
enum class TForm { Blanch, Numerator };

template <class R>
struct CharacteristicEval {
    Complex<R> T, T_a, T_q, T_aa, T_aq;
    int M = 0;
    EigenClass cls = EigenClass::CE_EVEN;
};

class PathThroughDoublePoint : public Error {
public:
    PathThroughDoublePoint(const std::string& what, std::complex<double> q_star, std::complex<double> a_star)
        : Error(what), q_star(q_star), a_star(a_star) {}
    std::complex<double> q_star, a_star;
};

namespace cf_detail {

template <class R>
void scale_by(Complex<R>& z, const R& s) { z = z * s; }

template <class S, class R>
void scale_by(Jet<S>& j, const R& s) {
    for (int k = 0; k <= j.order(); ++k) scale_by(j[k], s);
}

}  // namespace cf_detail

template <class S>
S v_m(const S& a, const S& q, int m) {
    const auto& q0 = base_value(q);
    if (q0.re == 0 && q0.im == 0) throw DomainError("V_m is not defined at q = 0");
    return (a - S(double(m) * double(m))) / q;
}

// Matching index: M = 2 ceil(max(m/2 + 2, sqrt(|a| + 2|q|)/2)), shifted to the
// parity of the class.
template <class R>
int matching_index(EigenClass cls, int order, const Complex<R>& a, const Complex<R>& q) {
    double s = std::sqrt(to_double(abs(a)) + 2.0 * to_double(abs(q))) / 2.0;
    double k = std::max(order / 2.0 + 2.0, s);
    int M = 2 * static_cast<int>(std::ceil(k));
    if (first_index(cls) % 2) M += 1;
    if (M < first_index(cls) + 4) M = first_index(cls) + 4;
    return M;
}

// Depth L at which the downward fraction is started: continue until the
// product of the minimal-solution ratios squared drops below eps (the
// 1/|Q|^2 <= eps rule), plus a few spare terms.
template <class R>
int tail_depth(const Complex<R>& a, const Complex<R>& q, int M, int digits, int cap = 100000) {
    std::complex<double> ad = to_std(a), qd = to_std(q);
    double log_eps = -(digits + 4) * std::log(10.0);
    double logprod = 0;
    int k = M;
    for (; k < M + cap; k += 2) {
        std::complex<double> V = (ad - double(k) * double(k)) / qd;
        std::complex<double> d = std::sqrt(V * V - 4.0);
        std::complex<double> g1 = (V - d) / 2.0, g2 = (V + d) / 2.0;
        double g = std::min(std::abs(g1), std::abs(g2));
        logprod += 2.0 * std::log(std::max(g, 1e-300));
        if (logprod < log_eps && k >= M + 8) break;
    }
    if (k >= M + cap) throw ConvergenceError("tail_fraction: iteration cap exceeded");
    return k + 8;
}

// Downward fraction G_M = 1/(V_M - 1/(V_{M+2} - ...)) started at depth L.
template <class S>
S tail_fraction_at(const S& a, const S& q, int M, int L) {
    S G(0.0);
    for (int k = L; k >= M; k -= 2) G = S(1.0) / (v_m(a, q, k) - G);
    return G;
}

template <class R>
Complex<R> tail_fraction(const Complex<R>& a, const Complex<R>& q, int M, const PrecisionContext& ctx) {
    int L = tail_depth(a, q, M, ctx.digits);
    return tail_fraction_at(a, q, M, L);
}

// Forward recurrence from the class's edge row, unnormalized, with A_first = 1.
// Returns A_M and A_{M-2}; both may be rescaled by a common real factor.
template <class S, class R>
void head_coefficients(EigenClass cls, const S& a, const S& q, int M, S& AM, S& AMm2) {
    int f = first_index(cls);
    if (M < f + 2) throw DomainError("head_fraction: matching index too small");
    S prev(1.0);
    S cur = v_m(a, q, f);
    switch (cls) {
        case EigenClass::CE_ODD: cur = cur - S(1.0); break;
        case EigenClass::SE_ODD: cur = cur + S(1.0); break;
        default: break;
    }
    const R big = R(1e30), shrink = R(1e-30);
    for (int k = f + 2; k < M; k += 2) {
        double c = (cls == EigenClass::CE_EVEN && k == 2) ? 2.0 : 1.0;
        S next = v_m(a, q, k) * cur - prev * S(c);
        prev = cur;
        cur = next;
        if (abs(base_value(cur)) > big) {
            cf_detail::scale_by(cur, shrink);
            cf_detail::scale_by(prev, shrink);
        }
    }
    AM = cur;
    AMm2 = prev;
}

template <class R>
Complex<R> head_fraction(EigenClass cls, const Complex<R>& a, const Complex<R>& q, int M) {
    Complex<R> AM, AMm2;
    head_coefficients<Complex<R>, R>(cls, a, q, M, AM, AMm2);
    return AM / AMm2;
}

// T in any coefficient ring S (complex or nested jets) with R the real type.
template <class S, class R>
S t_generic(EigenClass cls, const S& a, const S& q, int M, int L, TForm form) {
    S AM, AMm2;
    head_coefficients<S, R>(cls, a, q, M, AM, AMm2);
    S G = tail_fraction_at(a, q, M, L);
    if (form == TForm::Numerator) return AM - G * AMm2;
    return AM / AMm2 - G;
}

template <class R>
Complex<R> t_value(EigenClass cls, const Complex<R>& a, const Complex<R>& q, int M, const PrecisionContext& ctx,
                   TForm form = TForm::Blanch) {
    int L = tail_depth(a, q, M, ctx.digits);
    return t_generic<Complex<R>, R>(cls, a, q, M, L, form);
}

// T and its partials T_a, T_q, T_aa, T_aq through a bivariate jet (outer
// variable in a to order 2, inner variable in q to order 1).
template <class R>
CharacteristicEval<R> t_eval(EigenClass cls, const Complex<R>& a, const Complex<R>& q, const PrecisionContext& ctx,
                             int M = 0, TForm form = TForm::Blanch) {
    using C = Complex<R>;
    using J1 = Jet<C>;
    using J2 = Jet<J1>;
    if (q.re == R(0) && q.im == R(0)) throw DomainError("t_eval: q = 0 is excluded");
    if (M <= 0) M = matching_index(cls, first_index(cls), a, q);
    int L = tail_depth(a, q, M, ctx.digits);
    J2 aj(std::vector<J1>{J1(std::vector<C>{a, C(R(0))}), J1(C(R(1))), J1(C(R(0)))});
    J2 qj(std::vector<J1>{J1(std::vector<C>{q, C(R(1))}), J1(C(R(0))), J1(C(R(0)))});
    J2 T = t_generic<J2, R>(cls, aj, qj, M, L, form);
    CharacteristicEval<R> out;
    out.T = T[0].coeff(0);
    out.T_q = T[0].coeff(1);
    out.T_a = T[1].coeff(0);
    out.T_aq = T[1].coeff(1);
    out.T_aa = T[2].coeff(0) * R(2);
    out.M = M;
    out.cls = cls;
    return out;
}

// T, T_a and T_aa at fixed q (a jet of order 2 in a).
template <class R>
void t_eval_a(EigenClass cls, const Complex<R>& a, const Complex<R>& q, int M, int L, TForm form, Complex<R>& T,
              Complex<R>& Ta, Complex<R>& Taa) {
    using C = Complex<R>;
    using J = Jet<C>;
    J aj(std::vector<C>{a, C(R(1)), C(R(0))});
    J T2 = t_generic<J, R>(cls, aj, J(q), M, L, form);
    T = T2[0];
    Ta = T2[1];
    Taa = T2[2] * R(2);
}

// ---------------------------------------------------------------------------
// Newton refinement

struct NewtonOptions {
    int max_iter = 50;
    // Separation |2 T_a / T_aa| (distance to the nearest other root) below
    // which an eigenvalue is considered to be near a double point.
    double near_double_radius = 0.25;
};

template <class R>
struct NewtonResult {
    Complex<R> a;
    int iterations = 0;
    int M = 0;
    bool near_double = false;
    bool at_double = false;       // converged to a coalesced root within precision
    bool unstable = false;        // root moved under M -> M+2
    double separation = 0;        // estimated distance to the nearest other root
    Complex<R> T, T_a;
};

template <class R>
NewtonResult<R> eigenvalue_newton(EigenClass cls, int order, const Complex<R>& q, const Complex<R>& a_guess,
                                  const PrecisionContext& ctx, const NewtonOptions& opt = {}) {
    using C = Complex<R>;
    if (q.re == R(0) && q.im == R(0)) throw DomainError("eigenvalue_newton: q = 0 is excluded; a = m^2 there");
    if (!order_matches(cls, order)) throw DomainError("eigenvalue_newton: order does not match class");
    NewtonResult<R> res;
    res.M = matching_index(cls, order, a_guess, q);
    int L = tail_depth(a_guess, q, res.M, ctx.digits);
    R tol = R(ctx.tol);
    C a = a_guess;
    C T, Ta, Taa;
    bool converged = false;
    R last_step = R(-1);
    int stalls = 0;
    for (int it = 0; it < opt.max_iter; ++it) {
        t_eval_a(cls, a, q, res.M, L, TForm::Numerator, T, Ta, Taa);
        res.iterations = it + 1;
        if (abs(Taa) > R(0)) res.separation = to_double(abs(R(2) * Ta / Taa)) ;
        else res.separation = 1e300;
        if (res.separation < opt.near_double_radius) res.near_double = true;
        if (abs(Ta) == R(0)) break;
        C step = T / Ta;
        a = a - step;
        R s = abs(step);
        if (s <= tol * (R(1) + abs(a))) {
            converged = true;
            break;
        }
        // a step that stops shrinking signals a double root at working precision
        if (last_step >= R(0) && s > R(0.3) * last_step) ++stalls;
        last_step = s;
        if (res.near_double && stalls >= 6) break;
    }
    if (!converged && res.near_double) {
        // Newton on T_a finds the critical point between the two close roots.
        C ac = a;
        for (int it = 0; it < opt.max_iter; ++it) {
            Jet<C> aj(std::vector<C>{ac, C(R(1)), C(R(0))});
            Jet<C> T3 = t_generic<Jet<C>, R>(cls, aj, Jet<C>(q), res.M, L, TForm::Numerator);
            C step = T3[1] / (T3[2] * R(2));
            ac = ac - step;
            if (abs(step) <= tol * (R(1) + abs(ac))) break;
        }
        t_eval_a(cls, ac, q, res.M, L, TForm::Numerator, T, Ta, Taa);
        C disc = -(R(2) * T / Taa);
        C w = sqrt(disc);
        R eps = pow10<R>(-ctx.digits);
        if (abs(w) <= R(10) * sqrt(eps) * (R(1) + abs(ac))) {
            a = ac;
            res.at_double = true;
            converged = true;
        } else {
            C r1 = ac + w, r2 = ac - w;
            a = abs(r1 - a_guess) <= abs(r2 - a_guess) ? r1 : r2;
            for (int it = 0; it < 8; ++it) {
                t_eval_a(cls, a, q, res.M, L, TForm::Numerator, T, Ta, Taa);
                C step = T / Ta;
                a = a - step;
                if (abs(step) <= tol * (R(1) + abs(a))) break;
            }
            converged = true;
        }
        res.near_double = true;
    }
    if (!converged) throw ConvergenceError("eigenvalue_newton: no convergence in " + std::to_string(opt.max_iter) + " iterations");
    res.a = a;
    res.T = T;
    res.T_a = Ta;
    // validate the matching index by one Newton step at M + 2
    if (!res.at_double) {
        int M2 = res.M + 2;
        int L2 = tail_depth(a, q, M2, ctx.digits);
        C T2, Ta2, Taa2;
        t_eval_a(cls, a, q, M2, L2, TForm::Numerator, T2, Ta2, Taa2);
        if (abs(Ta2) > R(0) && abs(T2 / Ta2) > R(10) * tol * (R(1) + abs(a))) res.unstable = true;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Small-q starting values and continuation from q = 0

// Leading terms of the small-q series used to seed continuation.
template <class R>
Complex<R> smallq_guess(EigenClass cls, int order, const Complex<R>& q) {
    using C = Complex<R>;
    C q2 = q * q;
    if (order == 0) return -(q2 / R(2)) + q2 * q2 * R(7) / R(128);
    if (order == 1) {
        C lin = cls == EigenClass::CE_ODD ? q : -q;
        return C(R(1)) + lin - q2 / R(8);
    }
    if (order == 2) {
        if (cls == EigenClass::CE_EVEN) return C(R(4)) + q2 * R(5) / R(12);
        return C(R(4)) - q2 / R(12);
    }
    R g2 = R(order) * R(order);
    return C(g2) + q2 / (R(2) * (g2 - R(1)));
}

template <class R>
struct ContinuationStep {
    Complex<R> q, a;
    int iterations = 0;
    bool near_double = false;
};

template <class R>
struct ContinuationResult {
    Complex<R> a;
    bool near_double = false;
    bool at_double = false;
    std::vector<ContinuationStep<R>> history;
};

struct ContinuationOptions {
    double initial_step = 0.05;    // as a fraction of the path length
    double min_step = 1e-10;       // as a fraction of the path length
    double accept_fraction = 0.25; // predictor error allowed relative to root separation
    NewtonOptions newton;
};

// Straight-path continuation from q = 0 to q_target (waypoints optional).
template <class R>
ContinuationResult<R> eigenvalue_continuation(EigenClass cls, int order, const Complex<R>& q_target,
                                              const PrecisionContext& ctx, const ContinuationOptions& opt = {},
                                              std::vector<Complex<R>> waypoints = {}) {
    using C = Complex<R>;
    ContinuationResult<R> out;
    if (!order_matches(cls, order)) throw DomainError("eigenvalue_continuation: order does not match class");
    if (q_target.re == R(0) && q_target.im == R(0)) {
        out.a = C(R(order) * R(order));
        out.history.push_back({q_target, out.a, 0, false});
        return out;
    }
    waypoints.push_back(q_target);
    C q_prev(R(0));
    R total = 0;
    {
        C p(R(0));
        for (auto& w : waypoints) {
            total += abs(w - p);
            p = w;
        }
    }
    // start a short distance along the first leg with the series value
    C dir0 = (waypoints[0]) / abs(waypoints[0]);
    R h0 = std::min(R(1e-3), total * R(1e-3));
    C q = dir0 * h0;
    NewtonResult<R> nr = eigenvalue_newton(cls, order, q, smallq_guess(cls, order, q), ctx, opt.newton);
    C a = nr.a;
    out.history.push_back({q, a, nr.iterations, nr.near_double});
    R h = total * R(opt.initial_step);
    R hmin = total * R(opt.min_step);
    double sep = nr.separation;
    std::size_t leg = 0;
    for (int guard = 0;; ++guard) {
        if (guard > 200000) throw ConvergenceError("eigenvalue_continuation: step budget exhausted");
        C target = waypoints[leg];
        R remaining = abs(target - q);
        if (remaining <= hmin * R(1e-3)) {
            if (leg + 1 < waypoints.size()) {
                ++leg;
                continue;
            }
            break;
        }
        C dir = (target - q) / remaining;
        R step = h < remaining ? h : remaining;
        bool last = !(h < remaining);
        C qn = last ? target : q + dir * step;
        // Euler predictor with da/dq = -T_q / T_a
        CharacteristicEval<R> ce = t_eval(cls, a, q, ctx, 0, TForm::Numerator);
        C slope = abs(ce.T_a) > R(0) ? -(ce.T_q / ce.T_a) : C(R(0));
        C pred = a + slope * (qn - q);
        bool ok = true;
        NewtonResult<R> r;
        try {
            r = eigenvalue_newton(cls, order, qn, pred, ctx, opt.newton);
        } catch (const ConvergenceError&) {
            ok = false;
        }
        if (ok) {
            // the corrected root must be the one the predictor aimed at
            double allowed = r.at_double ? 0.5 * sep : opt.accept_fraction * std::min(sep, r.separation);
            double floor = 1e3 * ctx.tol * (1.0 + to_double(abs(r.a)));
            if (to_double(abs(r.a - pred)) > std::max(allowed, floor)) ok = false;
        }
        if (!ok) {
            h = h / R(2);
            if (h < hmin) {
                throw ConvergenceError("eigenvalue_continuation: step size underflow near q = " +
                                       to_string(q, 8));
            }
            continue;
        }
        if (r.at_double && !(last && leg + 1 == waypoints.size())) {
            throw PathThroughDoublePoint("eigenvalue_continuation: path passes through a double point",
                                         to_std(qn), to_std(r.a));
        }
        q = qn;
        a = r.a;
        sep = r.separation;
        out.near_double = out.near_double || r.near_double;
        out.at_double = r.at_double;
        out.history.push_back({q, a, r.iterations, r.near_double});
        if (!r.near_double && r.iterations <= 4) h = h * R(1.5);
        if (last && leg + 1 == waypoints.size()) break;
    }
    out.a = a;
    return out;
}

// ---------------------------------------------------------------------------

// Four-term large-q series with h = sqrt(q), s = 2m + 1; a Newton seed only.
template <class R>
Complex<R> asymptotic_eigenvalue_large_q(int m, const Complex<R>& h) {
    using C = Complex<R>;
    R s = R(2 * m + 1);
    C h2 = h * h;
    return -(h2 * R(2)) + h * (R(2) * s) - C((s * s + R(1)) / R(8)) - C((s * s * s + R(3) * s) / R(128)) / h -
           C((R(5) * s * s * s * s + R(34) * s * s + R(9)) / R(4096)) / h2;
}

}  // namespace mathieu
