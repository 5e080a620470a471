// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "mathieu/contfrac.hpp"
#include "mathieu/doublepoint.hpp"
#include "mathieu/eigenfunction.hpp"
#include "mathieu/march.hpp"
#include "mathieu/operator.hpp"
#include "mathieu/puiseux.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mathieu;
using Cd = Complex<double>;
using D = DoubleDouble;
using Cdd = Complex<DoubleDouble>;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [fail: " << what << "]";
        }
    }
};

const EigenClass ALL[] = {EigenClass::CE_EVEN, EigenClass::CE_ODD, EigenClass::SE_EVEN, EigenClass::SE_ODD};

PrecisionContext dbl(double tol = 1e-12) {
    PrecisionContext c = PrecisionContext::for_digits(16);
    c.tol = tol;
    return c;
}

template <class R>
FourierVector<R> mode(EigenClass cls, int m, const Complex<R>& q, const PrecisionContext& ctx, int N = 40) {
    Complex<R> a = eigenvalue_continuation(cls, m, q, ctx).a;
    return fourier_coefficients(cls, m, q, a, N, CoeffStrategy::Recurrence, ctx);
}

DoublePoint<double> mg(const PrecisionContext& ctx) {
    return newton2d(EigenClass::CE_EVEN, Cd(2.1), Cd(0.0, 1.5), ctx);
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double n = x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

void ac1(Outcome& o) {
    PrecisionContext ctx = PrecisionContext::for_digits(31);
    auto dp = newton2d(EigenClass::CE_EVEN, Cdd(D(2.1)), Cdd(D(0.0), D(1.5)), ctx);
    double eq = to_double(abs(dp.q_star - Cdd(D(0.0), D(1.468768613785142))));
    double ea = to_double(abs(dp.a_star - Cdd(D(2.088698902749695))));
    o.note << "|dq*| = " << eq << ", |da*| = " << ea;
    o.check(eq <= 1e-12, "q*");
    o.check(ea <= 1e-12, "a*");
}

void ac2(Outcome& o) {
    PrecisionContext ctx = PrecisionContext::for_digits(60);
    ScopedDigits guard(68);
    using B = BigFloat;
    using C = Complex<B>;
    auto dp = newton2d(EigenClass::CE_EVEN, C(B(2.1)), C(B(0), B(1.5)), ctx);
    auto ps = series_newton_puiseux(dp, 9, 1, ctx);
    auto rel = [](const C& x, std::complex<double> ref) { return std::abs(to_std(x) - ref) / std::abs(ref); };
    double r1 = rel(ps.coeffs[0], {1.659487804320256, 1.659487804320256});
    double r2 = rel(ps.coeffs[1], {0.0, -0.119150377434444});
    double r4 = rel(ps.coeffs[3], {-0.0383269616582290, 0.0});
    C ratio = ps.coeffs[8] / ps.coeffs[0];
    double r9 = rel(ratio, {0.000563051707888754, 0.0});
    o.note << "rel a1 " << r1 << ", a2 " << r2 << ", a4 " << r4 << ", a9/a1 " << r9 << " (computed "
           << to_double(ratio.re) << ")";
    o.check(r1 <= 1e-10, "alpha1");
    o.check(r2 <= 1e-10, "alpha2");
    o.check(r4 <= 1e-10, "alpha4");
    o.check(r9 <= 1e-10, "alpha9/alpha1");
}

void ac3(Outcome& o) {
    PrecisionContext ctx = PrecisionContext::for_digits(32);
    auto seeds = load_catalog(default_catalog_path());
    auto printed = load_printed_table(default_printed_table_path());
    o.check(seeds.size() == 72 && printed.size() == 72, "row count");
    auto recs = emit_table_appendix_d<D>(seeds, 3, ctx);
    int ok_point = 0, ok_a12 = 0, ok_all = 0;
    auto agree = [](std::complex<double> z, const std::string& re, const std::string& im) {
        return agrees_to_printed_figures(z.real(), re) && agrees_to_printed_figures(z.imag(), im);
    };
    for (std::size_t i = 0; i < recs.size() && i < printed.size(); ++i) {
        auto& r = recs[i];
        auto& t = printed[i].text;
        if (!r.error.empty() || r.alpha.size() < 3) continue;
        bool pt = agree(r.q_star, t[0], t[1]) && agree(r.a_star, t[2], t[3]);
        // either branch: alpha_1 and alpha_3 flip together, alpha_2 is shared
        bool a2 = agree(r.alpha[1], t[6], t[7]);
        bool plus = agree(r.alpha[0], t[4], t[5]), minus = agree(-r.alpha[0], t[4], t[5]);
        bool a3 = (plus && agree(r.alpha[2], t[8], t[9])) || (minus && agree(-r.alpha[2], t[8], t[9]));
        ok_point += pt;
        ok_a12 += pt && a2 && (plus || minus);
        ok_all += pt && a2 && a3;
    }
    o.note << "rows agreeing: (q*, a*) " << ok_point << "/72, with alpha1, alpha2 " << ok_a12 << "/72, with alpha3 "
           << ok_all << "/72";
    o.check(ok_point == 72, "q*, a*");
    o.check(ok_a12 == 72, "alpha1, alpha2");
    o.check(ok_all == 72, "alpha3");
}

void ac4(Outcome& o) {
    PrecisionContext ctx = PrecisionContext::for_digits(32);
    auto one = [&](Cdd q, int N) {
        auto ev = matrix_eigenvalues(EigenClass::CE_EVEN, q, N, ctx);
        Cdd cf = eigenvalue_continuation(EigenClass::CE_EVEN, 6, q, ctx).a;
        Cdd best = ev[0];
        for (auto& x : ev)
            if (abs(x - cf) < abs(best - cf)) best = x;
        return to_double(abs(best - cf)) / (1 + to_double(abs(cf)));
    };
    double e2 = one(Cdd(D(2.0)), 9), e15 = one(Cdd(D(15.0), D(4.0)), 13);
    o.note << "scaled error q=2 (N=9) " << e2 << ", q=15+4i (N=13) " << e15;
    o.check(e2 <= 1e-15, "a6(2)");
    o.check(e15 <= 1e-15, "a6(15+4i)");
}

void ac5(Outcome& o) {
    {
        auto ctx = dbl(1e-13);
        auto s = integrate_path<double>(Cd(1.45), Cd(0.6), {Cd(0.0), Cd(0.0, 4.0)}, {Cd(1.0), Cd(0.0)}, ctx);
        double e = abs(s.end_value().first - Cd(-0.132606872185356397584162854354));
        o.note << "double: " << e;
        o.check(e <= 1e-12, "hardware double");
    }
    ScopedDigits sd(46);
    using B = BigFloat;
    using CB = Complex<B>;
    auto ctx = PrecisionContext::for_digits(46);
    ctx.tol = 1e-35;
    MarchOptions opt;
    opt.order = 40;
    auto s = integrate_path<B>(CB(B(29) / 20), CB(B(3) / 5), {CB(B(0)), CB(B(0), B(4))}, {CB(B(1)), CB(B(0))}, ctx, opt);
    B ref = RealTraits<B>::from_string("-0.132606872185356397584162854354");
    double e = to_double(abs(s.end_value().first - CB(ref)));
    o.note << ", 46 digits: " << e;
    // the printed value carries 30 decimals
    o.check(e <= 0.5e-30, "46 digits");
}

void ac6(Outcome& o) {
    PrecisionContext ctx = PrecisionContext::for_digits(50);
    ScopedDigits guard(58);
    using B = BigFloat;
    using C = Complex<B>;
    struct Case {
        EigenClass cls;
        int order;
        const char* name;
    };
    const Case cases[] = {{EigenClass::CE_ODD, 1, "a1"},
                          {EigenClass::CE_EVEN, 2, "a2"},
                          {EigenClass::CE_ODD, 3, "a3"},
                          {EigenClass::SE_ODD, 1, "b1"}};
    for (auto& c : cases) {
        auto s = smallq_eigenvalue_series(c.cls, c.order);
        std::vector<double> lx, ly;
        double cmax = 0;
        for (double qd : {0.02, 0.04, 0.08, 0.16}) {
            C q{B(qd)};
            C series = eval_rational_series(s, q);
            C a = eigenvalue_newton(c.cls, c.order, q, series, ctx).a;
            double err = to_double(abs(a - series));
            lx.push_back(std::log(qd));
            ly.push_back(std::log(err));
            cmax = std::max(cmax, err / std::pow(qd, 7));
        }
        double sl = slope_fit(lx, ly);
        o.note << c.name << " slope " << sl << " C " << cmax << "; ";
        o.check(sl >= 6.5, std::string(c.name) + " slope");
    }
}

void ac7(Outcome& o) {
    PrecisionContext ctx;
    double two_pi = 2 * M_PI, worst = 0;
    for (Cd q : {Cd(2.0), Cd(0.0, 1.0), Cd(1.0, 1.0)}) {
        std::vector<FourierVector<double>> fs;
        for (auto cls : ALL)
            for (int p = 0; p < 3; ++p) fs.push_back(mode(cls, order_at(cls, p), q, ctx));
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
                worst = std::max(worst, to_double(abs(bilinear_form(fs[i], fs[j], two_pi))));
    }
    auto c2 = mode(EigenClass::CE_EVEN, 2, Cd(0.0, 1.0), ctx);
    auto c4 = mode(EigenClass::CE_EVEN, 4, Cd(0.0, 1.0), ctx);
    double ip = abs(inner_product(c4, c2, two_pi));
    o.note << "max |<f,g>| = " << worst << ", |(ce2, ce4)| at q=i = " << ip;
    o.check(worst < 1e-12, "orthogonality");
    o.check(std::fabs(ip - 0.5138) <= 0.002, "conjugated inner product");
}

void ac8(Outcome& o) {
    auto ctx = dbl();
    auto dp = mg(ctx);
    auto g = greens_generalized(dp, ctx);
    auto ge = generalized_eigenfunction(dp, 30, ctx);
    double worst = 0;
    for (int i = 0; i <= 80; ++i) {
        double t = M_PI * i / 80;
        worst = std::max(worst, to_double(abs(eval_blend(g.u, Cd(t)).first - eval_periodic(ge.gen, Cd(t)))));
    }
    double pr = pertsol_residual(ge);
    std::function<Cd(const double&)> f = [](const double& z) { return Cd(std::exp(std::cos(2 * z)) * std::cos(6 * z)); };
    auto ex = expand_function(f, dp.q_star, {EigenClass::CE_EVEN}, 20, ctx, std::optional<DoublePoint<double>>(dp));
    double err = 0;
    for (int j = 0; j < 400; ++j) {
        double z = 2 * M_PI * j / 400.0;
        err = std::max(err, abs(eval_expansion(ex, Cd(z)) - f(z)));
    }
    o.note << "routes differ by " << worst << ", pertsol residual " << pr << ", expansion error " << err;
    o.check(worst <= 1e-8, "Green's vs matrix");
    o.check(pr < 1e-10, "pertsol residual");
    o.check(err < 1e-10, "expansion");
}

void ac9(Outcome& o) {
    auto ctx = dbl();
    auto dp = mg(ctx);
    std::function<Cd(const double&)> f = [](const double& z) { return Cd(std::cos(2 * z)); };
    std::vector<double> le, ld;
    Cd K;
    for (int k = 3; k <= 6; ++k) {
        Cd dq(0.0, std::pow(10.0, -k));
        auto ex = expand_function(f, dp.q_star + dq, {EigenClass::CE_EVEN}, 12, ctx);
        Cd d = ex.modes[0].coeff - ex.modes[1].coeff;
        le.push_back(std::log(abs(dq)));
        ld.push_back(std::log(abs(d)));
        K = d * sqrt(dq);
    }
    double sl = slope_fit(le, ld);
    Cd ref(-1.023431886611575, 0.2551095295356106);
    o.note << "slope " << sl << ", limit " << K.re << (K.im < 0 ? "" : "+") << K.im << "i, |diff| " << abs(K - ref);
    o.check(std::fabs(sl + 0.5) <= 0.05, "slope");
    o.check(abs(K - ref) <= 1e-6, "limit");
}

void ac10(Outcome& o) {
    auto ctx = dbl();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(-25, 25), uq(-5, 5);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        Cd a(ua(rng), ua(rng) / 5), q(uq(rng), uq(rng));
        auto r = floquet_exponent<double>(a, q, ctx);
        worst = std::max(worst, r.consistency / std::max(1.0, to_double(abs(r.cosh_pi_mu))));
    }
    double eig = 0;
    for (Cd q : {Cd(1.5, 0.5), Cd(2.0), Cd(0.5, -1.0)}) {
        for (auto [cls, m] : {std::pair{EigenClass::CE_EVEN, 2}, std::pair{EigenClass::CE_ODD, 3},
                              std::pair{EigenClass::SE_ODD, 1}, std::pair{EigenClass::SE_EVEN, 2}}) {
            Cd a = eigenvalue_continuation(cls, m, q, ctx).a;
            Cd target(is_even_class(cls) ? 1.0 : -1.0);
            eig = std::max(eig, abs(floquet_exponent<double>(a, q, ctx).cosh_pi_mu - target));
        }
    }
    auto g = floquet_exponent<double>(Cd(4.0), Cd(10.0), ctx);
    o.note << "max consistency/scale " << worst << ", max |cosh(pi mu) -+ 1| " << eig << ", Re mu(4,10) " << g.mu.re;
    o.check(worst <= 1e3 * ctx.tol, "consistency");
    o.check(eig <= 1e-10, "eigenvalue cosh");
    o.check(g.mu.re > 0, "instability");
}

void ac11(Outcome& o) {
    auto ctx = dbl();
    const double x0 = std::log(2.0);
    auto ce3 = [&](double q) {
        Cd a = eigenvalue_continuation(EigenClass::CE_ODD, 3, Cd(q), ctx).a;
        return fourier_coefficients(EigenClass::CE_ODD, 3, Cd(q), a, 40, CoeffStrategy::Recurrence, ctx);
    };
    auto Ce = [&](double q) { return eval_modified(ce3(q), Cd(x0)).re; };
    // bracket the sign change closest to the expected root
    double best = NAN, lo = 0, hi = 0;
    double prev_q = 7.0, prev_v = Ce(prev_q);
    for (double q = 7.05; q <= 10.0 + 1e-9; q += 0.05) {
        double v = Ce(q);
        if ((v < 0) != (prev_v < 0)) {
            double mid = 0.5 * (q + prev_q);
            if (std::isnan(best) || std::fabs(mid - 8.5676) < std::fabs(best - 8.5676)) {
                best = mid;
                lo = prev_q;
                hi = q;
            }
        }
        prev_q = q;
        prev_v = v;
    }
    if (std::isnan(best)) {
        o.check(false, "no root of Ce3(ln 2; q) on [7, 10]");
        return;
    }
    double flo = Ce(lo);
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi), fm = Ce(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double qr = 0.5 * (lo + hi);
    double a3 = eigenvalue_continuation(EigenClass::CE_ODD, 3, Cd(qr), ctx).a.re;
    auto fv = ce3(qr);
    auto ce = [&](double t) { return eval_periodic(fv, Cd(t)).re; };
    std::vector<double> nodes;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
        double t0 = M_PI * i / n, t1 = M_PI * (i + 1) / n;
        double f0 = ce(t0), f1 = ce(t1);
        if ((f0 < 0) == (f1 < 0)) continue;
        for (int it = 0; it < 60; ++it) {
            double tm = 0.5 * (t0 + t1), fm = ce(tm);
            if ((fm < 0) == (f0 < 0)) {
                t0 = tm;
                f0 = fm;
            } else {
                t1 = tm;
            }
        }
        nodes.push_back(0.5 * (t0 + t1));
    }
    o.note << "q = " << qr << ", a3 = " << a3 << ", nodes ±{";
    for (std::size_t i = 0; i < nodes.size(); ++i) o.note << (i ? ", " : "") << nodes[i];
    o.note << "}";
    o.check(std::fabs(qr - 8.5676) <= 0.0005, "q");
    o.check(std::fabs(a3 - 14.6695) <= 0.001, "a3");
    const double want[] = {0.9857, M_PI / 2, 2.156};
    bool nodes_ok = nodes.size() == 3;
    for (std::size_t i = 0; nodes_ok && i < 3; ++i) nodes_ok = std::fabs(nodes[i] - want[i]) <= 0.001;
    o.check(nodes_ok, "nodal angles");
}

void ac12(Outcome& o) {
    const double tol = 1e-10;
    PrecisionContext ctx;
    // eigenvalue symmetries
    // independent matrix eigensolves at q, -q and conj(q), picked nearest the continued value
    auto ev = [&](EigenClass cls, int m, Cd q) {
        Cd c = eigenvalue_continuation(cls, m, q, ctx).a;
        auto all = matrix_eigenvalues(cls, q, 30, ctx);
        Cd best = all[0];
        for (auto& x : all)
            if (abs(x - c) < abs(best - c)) best = x;
        return best;
    };
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double sym = 0;
    for (int t = 0; t < 6; ++t) {
        Cd q(u(rng), u(rng));
        for (int n = 0; n < 3; ++n) {
            Cd a = ev(EigenClass::CE_EVEN, 2 * n, q);
            sym = std::max(sym, abs(a - ev(EigenClass::CE_EVEN, 2 * n, -q)) / (1 + abs(a)));
            Cd b = ev(EigenClass::SE_EVEN, 2 * n + 2, q);
            sym = std::max(sym, abs(b - ev(EigenClass::SE_EVEN, 2 * n + 2, -q)) / (1 + abs(b)));
            Cd ao = ev(EigenClass::CE_ODD, 2 * n + 1, -q);
            sym = std::max(sym, abs(ao - ev(EigenClass::SE_ODD, 2 * n + 1, q)) / (1 + abs(ao)));
            sym = std::max(sym, abs(ev(EigenClass::CE_EVEN, 2 * n, conj(q)) - conj(a)) / (1 + abs(a)));
        }
    }
    o.check(sym <= tol, "symmetry");
    // interlacing a0 < b1 < a1 < b2 < a2 < ...; the high-order gaps fall below
    // double resolution at small q, so this runs at 32 digits
    PrecisionContext c32 = PrecisionContext::for_digits(32);
    bool inter = true;
    for (double q : {0.5, 2.0, 10.0}) {
        Cdd qq{D(q)};
        auto a0 = matrix_eigenvalues(EigenClass::CE_EVEN, qq, 40, c32);
        auto a1 = matrix_eigenvalues(EigenClass::CE_ODD, qq, 40, c32);
        auto b1 = matrix_eigenvalues(EigenClass::SE_ODD, qq, 40, c32);
        auto b2 = matrix_eigenvalues(EigenClass::SE_EVEN, qq, 40, c32);
        std::vector<D> seq;
        for (int k = 0; k < 5; ++k)
            for (auto* v : {&a0, &b1, &a1, &b2}) seq.push_back((*v)[k].re);
        for (std::size_t i = 1; i < seq.size(); ++i) inter = inter && seq[i] > seq[i - 1];
    }
    o.check(inter, "interlacing");
    // Wronskian
    auto mctx = dbl();
    std::vector<Cd> path = {Cd(0.0), Cd(1.0, 1.0), Cd(2.5, 0.5), Cd(3.0)};
    auto [w1, w2] = fundamental_pair<double>(Cd(3.1, 0.4), Cd(1.2, -0.6), path, mctx);
    double wr = 0;
    for (const auto& b : w1.segments) {
        auto [y1, d1] = eval_blend(w1, b.t1());
        auto [y2, d2] = eval_blend(w2, b.t1());
        double sc = std::max(1.0, to_double(abs(y1 * d2) + abs(y2 * d1)));
        wr = std::max(wr, to_double(abs(wronskian_check(w1, w2, b.t1()) - Cd(1.0))) / sc);
    }
    o.check(wr < 10 * mctx.tol, "Wronskian");
    // Fourier vs Bessel-product
    double fb = 0;
    for (Cdd q : {Cdd(D(2.0)), Cdd(D(1.0), D(1.0))})
        for (auto cls : ALL)
            for (int p = 0; p < 4; ++p) {
                auto f = mode(cls, order_at(cls, p), q, c32, 50);
                for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                    Cdd fx = eval_modified(f, Cdd(D(x))), bx = eval_modified_bessel_product(f, Cdd(D(x)), c32);
                    fb = std::max(fb, to_double(abs(fx - bx)) / (1 + to_double(abs(fx))));
                }
            }
    o.check(fb < 1e-10, "Fourier vs Bessel");
    // branch sum: the half powers cancel, leaving 2 a* + 2 alpha_2 dq + O(dq^2)
    auto dp = newton2d(EigenClass::CE_EVEN, Cdd(D(2.1)), Cdd(D(0.0), D(1.5)), c32);
    auto p = series_newton_puiseux(dp, 9, 1, c32);
    auto m = series_newton_puiseux(dp, 9, -1, c32);
    double bs_prev = 0, ratio = 0;
    for (double h : {1e-3, 1e-4}) {
        Cdd dq(D(0.0), D(h));
        Cdd q = dp.q_star + dq;
        Cdd s = eval_puiseux(p, q).value + eval_puiseux(m, q).value;
        double bs = to_double(abs(s - dp.a_star * D(2) - p.coeffs[1] * dq * D(2)));
        if (bs_prev > 0) ratio = bs_prev / bs;
        bs_prev = bs;
    }
    // O(dq^2): a tenfold step reduction gives about a hundredfold drop
    o.check(ratio > 50 && ratio < 200, "branch sum");
    o.note << "symmetry " << sym << ", interlacing " << (inter ? "ok" : "broken") << ", |W-1|/scale " << wr
           << ", Fourier-Bessel " << fb << ", branch-sum step ratio " << ratio;
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        void (*run)(Outcome&);
    };
    const Criterion all[] = {
        {"AC1", "double point by newton2d", ac1},        {"AC2", "Puiseux coefficients", ac2},
        {"AC3", "double-point table regeneration", ac3}, {"AC4", "matrix truncation", ac4},
        {"AC5", "marching oracle", ac5},                 {"AC6", "small-q series", ac6},
        {"AC7", "orthogonality", ac7},                   {"AC8", "generalized eigenfunction", ac8},
        {"AC9", "near-double scaling", ac9},             {"AC10", "Floquet", ac10},
        {"AC11", "drum mode", ac11},                     {"AC12", "property suites", ac12},
    };
    int failed = 0;
    for (auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-4s %s (%.2f s) %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", sec, c.title, o.note.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of 12 criteria passed\n", 12 - failed);
    return failed ? 1 : 0;
}
