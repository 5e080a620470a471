// Local series of eigenvalues by Newton iteration in jet arithmetic: Taylor
// series about regular points and Puiseux series in sqrt(q - q*) about double
// points. Also the small-q rational series used as test oracles.
#pragma once

#include "mathieu/doublepoint.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mathieu {

template <class R>
struct TaylorSeries {
    Complex<R> q0, a0;
    std::vector<Complex<R>> coeffs;  // alpha_1 .. alpha_N in powers of (q - q0)
};

template <class R>
struct PuiseuxSeries {
    Complex<R> q_star, a_star;
    int branch_sign = 1;
    std::vector<Complex<R>> coeffs;  // alpha_1 .. alpha_N in powers of sqrt(q - q*)
    std::vector<int> schedule;       // correct coefficient count after each Newton step
};

enum class SeriesMode { Taylor, Puiseux };

template <class R>
std::pair<Complex<R>, Complex<R>> alpha1(EigenClass cls, const Complex<R>& a_star, const Complex<R>& q_star,
                                         const PrecisionContext& ctx, int M = 0) {
    CharacteristicEval<R> e = t_eval(cls, a_star, q_star, ctx, M, TForm::Numerator);
    Complex<R> s = sqrt(-(R(2) * e.T_q / e.T_aa));
    return {s, -s};
}

template <class R>
std::pair<Complex<R>, Complex<R>> alpha1(const DoublePoint<R>& dp, const PrecisionContext& ctx) {
    return alpha1(dp.cls, dp.a_star, dp.q_star, ctx, dp.M);
}

namespace puiseux_detail {

// T(a(x), q(x)) and T_a(a(x), q(x)) as jets in x.
template <class R>
void t_and_ta(EigenClass cls, const Jet<Complex<R>>& a, const Jet<Complex<R>>& q, int M, int L, Jet<Complex<R>>& T,
              Jet<Complex<R>>& Ta) {
    using J = Jet<Complex<R>>;
    using JJ = Jet<J>;
    JJ aj(std::vector<J>{a, J(Complex<R>(R(1)))});
    JJ qj(std::vector<J>{q});
    JJ t = t_generic<JJ, R>(cls, aj, qj, M, L, TForm::Numerator);
    T = t.coeff(0);
    Ta = t.coeff(1);
}

template <class R>
R max_abs(const Jet<Complex<R>>& j) {
    R m = 0;
    for (int k = 0; k <= j.order(); ++k) m = std::max(m, abs(j[k]));
    return m;
}

// Zeroes coefficients 0..upto of r, which should vanish; throws when one is
// far above the trim level.
template <class R>
void trim_low(Jet<Complex<R>>& r, int upto, const R& scale, const PrecisionContext& ctx) {
    for (int k = 0; k <= upto && k <= r.order(); ++k) {
        R mag = abs(r[k]);
        if (mag > R(1e3) * R(ctx.trim) * scale)
            throw TrimFailure("series_newton: residual coefficient " + std::to_string(k) + " is " +
                              RealTraits<R>::to_string(mag / scale, 3) +
                              " relative to scale; raise the working precision");
        r[k] = Complex<R>(R(0));
    }
}

}  // namespace puiseux_detail

// Taylor series of the eigenvalue through (a0, q0), a simple eigenvalue.
template <class R>
TaylorSeries<R> series_newton_taylor(EigenClass cls, const Complex<R>& a0, const Complex<R>& q0, int N,
                                     const PrecisionContext& ctx) {
    using C = Complex<R>;
    using J = Jet<C>;
    if (N < 1) throw DomainError("series_newton: N must be >= 1");
    int M = matching_index(cls, first_index(cls), a0, q0) + 4;
    int L = tail_depth(a0, q0, M, ctx.digits) + 8;
    CharacteristicEval<R> e = t_eval(cls, a0, q0, ctx, M, TForm::Numerator);
    int K = N + 1;
    std::vector<C> ac(K + 1, C(R(0)));
    ac[0] = a0;
    ac[1] = -(e.T_q / e.T_a);
    J a(ac);
    std::vector<C> qc(K + 1, C(R(0)));
    qc[0] = q0;
    qc[1] = C(R(1));
    J q(qc);
    int n = std::min(2, N + 1);
    while (n < N + 1) {
        int n_new = std::min(2 * n, N + 1);
        J T, Ta;
        puiseux_detail::t_and_ta<R>(cls, a, q, M, L, T, Ta);
        R scale = std::max(puiseux_detail::max_abs(T), puiseux_detail::max_abs(Ta));
        puiseux_detail::trim_low(T, n - 1, scale, ctx);
        J d = T / Ta;
        a = a - d;
        for (int k = n_new; k <= a.order(); ++k) a[k] = C(R(0));
        n = n_new;
    }
    TaylorSeries<R> ts;
    ts.q0 = q0;
    ts.a0 = a0;
    for (int k = 1; k <= N; ++k) ts.coeffs.push_back(a.coeff(k));
    return ts;
}

// Puiseux series about a double point on the branch alpha_1 = sign * principal sqrt.
// max_steps < 0 runs the full order schedule; otherwise the iteration stops
// early and coefficients beyond ps.schedule.back() are unconverged.
template <class R>
PuiseuxSeries<R> series_newton_puiseux(EigenClass cls, const Complex<R>& a_star, const Complex<R>& q_star, int N,
                                       int branch_sign, const PrecisionContext& ctx, int max_steps = -1) {
    using C = Complex<R>;
    using J = Jet<C>;
    if (N < 1) throw DomainError("series_newton: N must be >= 1");
    if (branch_sign != 1 && branch_sign != -1) throw DomainError("series_newton: branch_sign must be +1 or -1");
    int M = matching_index(cls, first_index(cls), a_star, q_star) + 4;
    int L = tail_depth(a_star, q_star, M, ctx.digits) + 8;
    auto al = alpha1(cls, a_star, q_star, ctx, M);
    int K = N + 2;
    std::vector<C> ac(K + 1, C(R(0)));
    ac[0] = a_star;
    ac[1] = branch_sign > 0 ? al.first : al.second;
    J a(ac);
    std::vector<C> qc(K + 1, C(R(0)));
    qc[0] = q_star;
    qc[2] = C(R(1));
    J q(qc);
    PuiseuxSeries<R> ps;
    ps.q_star = q_star;
    ps.a_star = a_star;
    ps.branch_sign = branch_sign;
    int n = std::min(2, N + 1);
    ps.schedule.push_back(n);
    for (int step = 0; n < N + 1 && step != max_steps; ++step) {
        int n_new = std::min(2 * n - 1, N + 1);
        J T, Ta;
        puiseux_detail::t_and_ta<R>(cls, a, q, M, L, T, Ta);
        R scale = std::max(puiseux_detail::max_abs(T), puiseux_detail::max_abs(Ta));
        puiseux_detail::trim_low(T, n, scale, ctx);
        puiseux_detail::trim_low(Ta, 0, scale, ctx);
        J d = T.shifted_down() / Ta.shifted_down();
        a = a - d;
        bool final_step = step + 1 == max_steps;
        if (!final_step)
            for (int k = n_new; k <= a.order(); ++k) a[k] = C(R(0));
        n = n_new;
        ps.schedule.push_back(n);
    }
    for (int k = 1; k <= N; ++k) ps.coeffs.push_back(a.coeff(k));
    return ps;
}

template <class R>
PuiseuxSeries<R> series_newton_puiseux(const DoublePoint<R>& dp, int N, int branch_sign, const PrecisionContext& ctx,
                                       int max_steps = -1) {
    return series_newton_puiseux(dp.cls, dp.a_star, dp.q_star, N, branch_sign, ctx, max_steps);
}

// Largest residual coefficient 0..upto of T(a(x), q* + x^2), relative to the
// size of T_a along the series.
template <class R>
double puiseux_residual(EigenClass cls, const PuiseuxSeries<R>& ps, int upto, const PrecisionContext& ctx) {
    using C = Complex<R>;
    using J = Jet<C>;
    int N = static_cast<int>(ps.coeffs.size());
    int K = std::max(upto, N) + 1;
    int M = matching_index(cls, first_index(cls), ps.a_star, ps.q_star) + 4;
    int L = tail_depth(ps.a_star, ps.q_star, M, ctx.digits) + 8;
    std::vector<C> ac(K + 1, C(R(0))), qc(K + 1, C(R(0)));
    ac[0] = ps.a_star;
    for (int k = 1; k <= N; ++k) ac[k] = ps.coeffs[k - 1];
    qc[0] = ps.q_star;
    qc[2] = C(R(1));
    J T, Ta;
    puiseux_detail::t_and_ta<R>(cls, J(ac), J(qc), M, L, T, Ta);
    R scale = puiseux_detail::max_abs(Ta);
    R worst = 0;
    for (int k = 0; k <= upto; ++k) worst = std::max(worst, abs(T.coeff(k)));
    return to_double(worst / scale);
}

template <class R>
Complex<R> eval_taylor(const TaylorSeries<R>& ts, const Complex<R>& q) {
    Complex<R> x = q - ts.q0, s(R(0));
    for (auto it = ts.coeffs.rbegin(); it != ts.coeffs.rend(); ++it) s = (s + *it) * x;
    return ts.a0 + s;
}

template <class R>
struct PuiseuxValue {
    Complex<R> value;
    bool trusted = true;  // false: |q - q*| beyond the trust radius
};

// Horner evaluation in w = principal sqrt(q - q*).
template <class R>
PuiseuxValue<R> eval_puiseux(const PuiseuxSeries<R>& ps, const Complex<R>& q, double trust_radius = 0) {
    Complex<R> w = sqrt(q - ps.q_star), s(R(0));
    for (auto it = ps.coeffs.rbegin(); it != ps.coeffs.rend(); ++it) s = (s + *it) * w;
    PuiseuxValue<R> v;
    v.value = ps.a_star + s;
    if (trust_radius > 0 && to_double(abs(q - ps.q_star)) > trust_radius) v.trusted = false;
    return v;
}

// Half the distance from q* to the nearest other double point of the catalog
// (including the conjugate and reflected images of each row).
double default_trust_radius(std::complex<double> q_star, const std::vector<CatalogSeed>& seeds);

// ---------------------------------------------------------------------------
// Small-q rational series

struct Rational {
    std::int64_t num = 0, den = 1;
    double value() const { return double(num) / double(den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

struct RationalSeries {
    std::vector<Rational> coeffs;  // coefficients of q^0, q^1, ...
    int valid_through = 0;         // highest power whose coefficient is exact
};

RationalSeries smallq_eigenvalue_series(EigenClass cls, int order);

template <class R>
Complex<R> eval_rational_series(const RationalSeries& s, const Complex<R>& q) {
    Complex<R> acc(R(0));
    for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) acc = acc * q + Complex<R>(R(it->num) / R(it->den));
    return acc;
}

// ---------------------------------------------------------------------------
// Table of leading Puiseux coefficients for catalog points

struct TableRecord {
    int m_type = 0;
    std::complex<double> q_star, a_star;
    std::vector<std::complex<double>> alpha;  // alpha_1 .. alpha_N, branch with Re(alpha_1) >= 0
    std::string error;
};

template <class R>
std::vector<TableRecord> emit_table_appendix_d(const std::vector<CatalogSeed>& seeds, int n_terms,
                                               const PrecisionContext& ctx) {
    std::vector<TableRecord> out;
    auto rows = catalog_verify<R>(seeds, ctx);
    for (auto& row : rows) {
        TableRecord rec;
        rec.m_type = row.seed.m_type;
        if (!row.converged) {
            rec.q_star = row.seed.q;
            rec.a_star = row.seed.a;
            rec.error = row.error;
            out.push_back(rec);
            continue;
        }
        rec.q_star = to_std(row.dp.q_star);
        rec.a_star = to_std(row.dp.a_star);
        try {
            auto ps = series_newton_puiseux(row.dp, n_terms, 1, ctx);
            for (auto& c : ps.coeffs) rec.alpha.push_back(to_std(c));
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        out.push_back(rec);
    }
    return out;
}

// Printed table of q*, a*, +alpha_1, alpha_2, +alpha_3 per double point, as
// decimal text in the order re q, im q, re a, im a, re alpha_1, ... im alpha_3.
struct PrintedTableRow {
    int m_type = 0;
    std::array<std::string, 10> text;
};

std::vector<PrintedTableRow> load_printed_table(const std::string& path);
std::string default_printed_table_path();

// "1.659e+00+1.659e+00i" with the given significant digits.
std::string format_table_complex(std::complex<double> z, int sig = 4);
std::string table_csv(const std::vector<TableRecord>& rows, int sig = 4);
std::string table_jsonl(const std::vector<TableRecord>& rows, int sig = 4);

}  // namespace mathieu
