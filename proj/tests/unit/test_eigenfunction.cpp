#include "doctest.h"

#include "mathieu/eigenfunction.hpp"

#include <cmath>
#include <random>

using namespace mathieu;
using Cd = Complex<double>;
using D = DoubleDouble;
using Cdd = Complex<DoubleDouble>;

namespace {

const EigenClass ALL[] = {EigenClass::CE_EVEN, EigenClass::CE_ODD, EigenClass::SE_EVEN, EigenClass::SE_ODD};

template <class R>
FourierVector<R> mode(EigenClass cls, int m, const Complex<R>& q, const PrecisionContext& ctx, int N = 40,
                      CoeffStrategy st = CoeffStrategy::Recurrence) {
    Complex<R> a = eigenvalue_continuation(cls, m, q, ctx).a;
    return fourier_coefficients(cls, m, q, a, N, st, ctx);
}

DoublePoint<double> mg(const PrecisionContext& ctx) {
    return newton2d(EigenClass::CE_EVEN, Cd(2.1), Cd(0.0, 1.5), ctx);
}

}  // namespace

TEST_SUITE("eigenfunction") {

TEST_CASE("q = 0 gives a pure harmonic") {
    PrecisionContext ctx;
    auto f = fourier_coefficients(EigenClass::CE_EVEN, 2, Cd(0.0), Cd(4.0), 6, CoeffStrategy::Recurrence, ctx);
    CHECK(f.coeffs[0] == Cd(0.0));
    CHECK(f.coeffs[1] == Cd(1.0));
    CHECK(f.coeffs[2] == Cd(0.0));
    CHECK(abs(eval_periodic(f, Cd(M_PI / 4))) < 1e-15);
    auto s = fourier_coefficients(EigenClass::SE_ODD, 3, Cd(0.0), Cd(9.0), 6, CoeffStrategy::Eigvec, ctx);
    CHECK(abs(s.coeffs[1] - Cd(1.0 / 3)) < 1e-15);
}

TEST_CASE("point normalization") {
    PrecisionContext ctx;
    auto c = mode(EigenClass::CE_EVEN, 0, Cd(2.0), ctx);
    CHECK(abs(eval_periodic(c, Cd(0.0)) - Cd(1.0)) < 1e-15);
    auto s = mode(EigenClass::SE_EVEN, 4, Cd(1.0, 1.0), ctx);
    CHECK(abs(eval_periodic(s, Cd(0.0), 1) - Cd(1.0)) < 1e-14);
    CHECK(s.norm == Normalization::PointNorm);
}

TEST_CASE("small-q neighbour ratios") {
    PrecisionContext ctx;
    double q = 1e-3;
    for (int g : {6, 8, 10}) {
        auto f = mode(EigenClass::CE_EVEN, g, Cd(q), ctx);
        int k = g / 2;
        Cd lo = f.coeffs[k - 1] / f.coeffs[k], hi = f.coeffs[k + 1] / f.coeffs[k];
        CHECK(std::fabs(lo.re / (q / (4.0 * (g - 1))) - 1) < 1e-3);
        CHECK(std::fabs(hi.re / (-q / (4.0 * (g + 1))) - 1) < 1e-3);
    }
}

TEST_CASE("coefficients decay like (q/4)^m / (m!)^2") {
    PrecisionContext ctx;
    double q = 2.0;
    auto f = mode(EigenClass::CE_EVEN, 2, Cd(q), ctx, 30);
    for (int m : {10, 12}) {
        double r = abs(f.coeffs[m + 1] / f.coeffs[m]) * 4.0 * (m + 1) * (m + 1) / q;
        CHECK(std::fabs(r - 1) < 0.05);
    }
}

TEST_CASE("eigenvector and recurrence strategies agree") {
    PrecisionContext ctx;
    for (Cd q : {Cd(2.0), Cd(1.0, 1.0), Cd(0.0, 1.0), Cd(10.0)})
        for (auto cls : ALL)
            for (int p = 0; p < 4; ++p) {
                int m = order_at(cls, p);
                Cd a = eigenvalue_continuation(cls, m, q, ctx).a;
                auto e = fourier_coefficients(cls, m, q, a, 40, CoeffStrategy::Eigvec, ctx);
                auto r = fourier_coefficients(cls, m, q, a, 40, CoeffStrategy::Recurrence, ctx);
                double d = 0;
                for (int k = 0; k < 40; ++k) d = std::max(d, abs(e.coeffs[k] - r.coeffs[k]));
                INFO(class_name(cls) << " m=" << m << " q=" << to_string(q, 3));
                CHECK(d < 10 * ctx.tol);
                CHECK(eigen_residual(e) < 10 * ctx.tol);
                CHECK(eigen_residual(r) < 10 * ctx.tol);
            }
}

TEST_CASE("modified functions: Fourier and Bessel-product routes") {
    PrecisionContext ctx;
    auto c0 = mode(EigenClass::CE_EVEN, 0, Cd(2.0), ctx);
    for (double x : {0.0, 0.5, 1.0, 1.5})
        CHECK(abs(eval_modified(c0, Cd(x)) - eval_modified_bessel_product(c0, Cd(x), ctx)) < 1e-10);
    auto s2 = mode(EigenClass::SE_EVEN, 2, Cd(2.0), ctx);
    CHECK(abs(eval_modified_bessel_product(s2, Cd(0.0), ctx)) < 1e-15);
    CHECK(abs(eval_modified(s2, Cd(0.0))) < 1e-15);
    // the printed series (shift 0) and the shifted form agree
    auto c3 = mode(EigenClass::CE_ODD, 5, Cd(2.0), ctx);
    CHECK(abs(eval_modified_bessel_product(c3, Cd(1.0), ctx, 0) - eval_modified_bessel_product(c3, Cd(1.0), ctx, 2)) <
          1e-12 * abs(eval_modified_bessel_product(c3, Cd(1.0), ctx)));
}

TEST_CASE("cross-method agreement at 32 digits") {
    PrecisionContext ctx = PrecisionContext::for_digits(32);
    for (Cdd q : {Cdd(D(2.0)), Cdd(D(1.0), D(1.0))})
        for (auto cls : ALL)
            for (int p = 0; p < 4; ++p) {
                auto f = mode(cls, order_at(cls, p), q, ctx, 50);
                for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                    Cdd fx = eval_modified(f, Cdd(D(x))), bx = eval_modified_bessel_product(f, Cdd(D(x)), ctx);
                    CHECK(to_double(abs(fx - bx)) < 1e-10 * (1 + to_double(abs(fx))));
                }
            }
}

TEST_CASE("orthogonality of distinct eigenfunctions") {
    PrecisionContext ctx;
    double two_pi = 2 * M_PI;
    for (Cd q : {Cd(2.0), Cd(0.0, 1.0), Cd(1.0, 1.0)}) {
        std::vector<FourierVector<double>> fs;
        for (auto cls : ALL)
            for (int p = 0; p < 3; ++p) fs.push_back(mode(cls, order_at(cls, p), q, ctx));
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j) CHECK(abs(bilinear_form(fs[i], fs[j], two_pi)) < 1e-12);
        // quadrature route across classes
        auto fa = fs[0], fb = fs[4];
        Cd quad = bilinear_form_quad<double>([&](const double& x) { return eval_periodic(fa, Cd(x)); },
                                             [&](const double& x) { return eval_periodic(fb, Cd(x)); }, two_pi, ctx);
        CHECK(abs(quad) < 1e-12);
    }
}

TEST_CASE("closed form matches quadrature") {
    PrecisionContext ctx;
    auto f = mode(EigenClass::CE_EVEN, 2, Cd(1.0, 1.0), ctx);
    auto g = mode(EigenClass::CE_EVEN, 2, Cd(1.0, 1.0), ctx);
    for (double p : {M_PI, 2 * M_PI}) {
        Cd quad = bilinear_form_quad<double>([&](const double& x) { return eval_periodic(f, Cd(x)); },
                                             [&](const double& x) { return eval_periodic(g, Cd(x)); }, p, ctx);
        CHECK(abs(quad - bilinear_form(f, g, p)) < 1e-12);
    }
    auto o = mode(EigenClass::CE_ODD, 1, Cd(1.0), ctx);
    CHECK_THROWS_AS(bilinear_form(o, o, M_PI), DomainError);
}

TEST_CASE("conjugated inner product of ce_2 and ce_4 at q = i") {
    PrecisionContext ctx;
    auto c2 = mode(EigenClass::CE_EVEN, 2, Cd(0.0, 1.0), ctx);
    auto c4 = mode(EigenClass::CE_EVEN, 4, Cd(0.0, 1.0), ctx);
    CHECK(std::fabs(abs(inner_product(c4, c2, 2 * M_PI)) - 0.5138) < 0.002);
    CHECK(abs(bilinear_form(c4, c2, 2 * M_PI)) < 1e-12);
}

TEST_CASE("generalized eigenfunction at the Mulholland-Goldstein point") {
    PrecisionContext ctx;
    auto dp = mg(ctx);
    auto ge = generalized_eigenfunction(dp, 30, ctx);
    double two_pi = 2 * M_PI;
    CHECK(abs(bilinear_form(ge.base, ge.base, two_pi)) < 1e-12);
    CHECK(abs(bilinear_form(ge.base, ge.gen, two_pi)) > 1e-3);
    CHECK(pertsol_residual(ge) < 1e-12);
    CHECK(abs(eval_periodic(ge.gen, Cd(0.0))) < 1e-14);
    CHECK(abs(eval_periodic(ge.base, Cd(0.0)) - Cd(1.0)) < 1e-14);
    CHECK_THROWS_AS(to_norm_pi(ge.base, ctx), NormalizationImpossible);
}

TEST_CASE("generalized eigenfunction for the sine class") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::SE_EVEN, Cd(11.2), Cd(0.0, 6.93), ctx);
    auto ge = generalized_eigenfunction(dp, 40, ctx);
    CHECK(pertsol_residual(ge) < 1e-11);
    CHECK(abs(eval_periodic(ge.gen, Cd(0.0), 1)) < 1e-13);
    CHECK(abs(bilinear_form(ge.base, ge.base, 2 * M_PI)) < 1e-11);
}

TEST_CASE("expansion at the double point") {
    PrecisionContext ctx;
    auto dp = mg(ctx);
    std::function<Cd(const double&)> f = [](const double& z) { return Cd(std::exp(std::cos(2 * z)) * std::cos(6 * z)); };
    auto ex = expand_function(f, dp.q_star, {EigenClass::CE_EVEN}, 20, ctx, std::optional<DoublePoint<double>>(dp));
    double err = 0;
    for (int j = 0; j < 200; ++j) {
        double z = 2 * M_PI * j / 200.0;
        err = std::max(err, abs(eval_expansion(ex, Cd(z)) - f(z)));
    }
    CHECK(err < 1e-10);
    REQUIRE(ex.alpha.has_value());
    // frozen values, point normalization with u(0) = 0
    CHECK(abs(*ex.alpha - Cd(0.15356, -0.085605)) < 1e-5);
    CHECK(abs(*ex.beta - Cd(0.31518, 0.10860)) < 1e-5);
    CHECK_FALSE(ex.ill_conditioned);
}

TEST_CASE("expanding an eigenfunction returns it") {
    PrecisionContext ctx;
    Cd q(1.0, 0.5);
    auto v = mode(EigenClass::CE_ODD, 3, q, ctx);
    std::function<Cd(const double&)> f = [&](const double& z) { return eval_periodic(v, Cd(z)); };
    auto ex = expand_function(f, q, {EigenClass::CE_ODD, EigenClass::SE_ODD}, 8, ctx);
    for (auto& m : ex.modes) {
        bool self = m.fv.cls == EigenClass::CE_ODD && m.order == 3;
        CHECK(abs(m.coeff - Cd(self ? 1.0 : 0.0)) < 10 * ctx.tol);
    }
}

TEST_CASE("completeness on random points") {
    PrecisionContext ctx;
    Cd q(0.8, 0.6);
    std::function<Cd(const double&)> f = [](const double& z) { return Cd(std::exp(std::sin(z)), 0.5 * std::cos(3 * z)); };
    std::vector<EigenClass> all(std::begin(ALL), std::end(ALL));
    auto ex = expand_function(f, q, all, 16, ctx);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    for (int j = 0; j < 17; ++j) {
        double z = u(rng);
        CHECK(abs(eval_expansion(ex, Cd(z)) - f(z)) < 1e-8);
    }
}

TEST_CASE("coefficients of cos 2a blow up near the double point") {
    PrecisionContext ctx;
    auto dp = mg(ctx);
    std::function<Cd(const double&)> f = [](const double& z) { return Cd(std::cos(2 * z)); };
    std::vector<double> le, ld;
    Cd K;
    for (int k = 3; k <= 6; ++k) {
        Cd dq(0.0, std::pow(10.0, -k));
        auto ex = expand_function(f, dp.q_star + dq, {EigenClass::CE_EVEN}, 12, ctx);
        Cd c0 = ex.modes[0].coeff, c2 = ex.modes[1].coeff;
        CHECK(ex.modes[0].fv.a.im < 0);
        le.push_back(std::log(std::pow(10.0, -k)));
        ld.push_back(std::log(abs(c0 - c2)));
        K = (c0 - c2) * sqrt(dq);
        CHECK(abs(c0 + c2 - Cd(1.009185957186356, -0.1210349964877181)) < 1e-4);
        if (k >= 5) CHECK(ex.ill_conditioned);
    }
    double slope = (ld.back() - ld.front()) / (le.back() - le.front());
    CHECK(std::fabs(slope + 0.5) < 0.05);
    // limit from an independent 50-digit matrix computation
    CHECK(abs(K - Cd(-1.015791162, 0.253204936)) < 1e-5);
}

}  // TEST_SUITE
