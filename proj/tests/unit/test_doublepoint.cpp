#include "doctest.h"

#include "mathieu/doublepoint.hpp"
#include "mathieu/operator.hpp"

#include <cmath>

using namespace mathieu;
using Cd = Complex<double>;

namespace {
const double MG_QI = 1.468768613785142;
const double MG_A = 2.088698902749695;
}  // namespace

TEST_SUITE("doublepoint") {

TEST_CASE("newton2d finds the Mulholland-Goldstein point") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::CE_EVEN, Cd(2.1), Cd(0.0, 1.5), ctx);
    CHECK(std::fabs(dp.q_star.im - MG_QI) < 1e-13);
    CHECK(std::fabs(dp.q_star.re) < 1e-13);
    CHECK(std::fabs(dp.a_star.re - MG_A) < 1e-13);
    CHECK(std::fabs(dp.a_star.im) < 1e-13);
    CHECK(dp.res_T < 1e-10);
    CHECK(dp.res_Ta < 1e-8);
    CHECK(dp.abs_Taa > 1e-3);
    CHECK(dp.abs_Tq > 1e-6);
}

TEST_CASE("newton2d at the sine-class point on the imaginary axis") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::SE_EVEN, Cd(11.2), Cd(0.0, 6.93), ctx);
    CHECK(std::fabs(dp.q_star.im - 6.92895) < 1e-5);
    CHECK(std::fabs(dp.a_star.re - 11.1905) < 1e-4);
    CHECK(std::fabs(dp.a_star.im) < 1e-10);
}

TEST_CASE("newton2d from table row 2") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::CE_ODD, Cd(6.176, 1.232), Cd(1.931, 3.238), ctx);
    CHECK(std::fabs(dp.q_star.re - 1.931) < 5e-4);
    CHECK(std::fabs(dp.q_star.im - 3.238) < 5e-4);
    CHECK(dp.res_T < 1e-9);
}

TEST_CASE("newton2d reconverges from perturbed seeds") {
    PrecisionContext ctx;
    auto base = newton2d(EigenClass::CE_EVEN, Cd(2.1), Cd(0.0, 1.5), ctx);
    auto pert = newton2d(EigenClass::CE_EVEN, base.a_star + Cd(1e-3, -1e-3), base.q_star + Cd(1e-3, 1e-3), ctx);
    CHECK(abs(pert.a_star - base.a_star) < 10 * ctx.tol * (1 + abs(base.a_star)));
    CHECK(abs(pert.q_star - base.q_star) < 10 * ctx.tol * (1 + abs(base.q_star)));
}

TEST_CASE("newton2d rejects q = 0") {
    PrecisionContext ctx;
    CHECK_THROWS_AS(newton2d(EigenClass::CE_EVEN, Cd(0.0), Cd(0.0), ctx), DomainError);
}

TEST_CASE("conjugate and reflected seeds") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::CE_EVEN, Cd(12.80, 2.763), Cd(5.174, 5.104), ctx);
    auto c = newton2d(EigenClass::CE_EVEN, Cd(12.80, -2.763), Cd(5.174, -5.104), ctx);
    CHECK(abs(c.a_star - conj(dp.a_star)) < 1e-11);
    CHECK(abs(c.q_star - conj(dp.q_star)) < 1e-11);
    // a(-conj q) = a(conj q) = conj a(q)
    auto r = newton2d(EigenClass::CE_EVEN, Cd(12.80, -2.763), Cd(-5.174, 5.104), ctx);
    CHECK(abs(r.a_star - conj(dp.a_star)) < 1e-11);
    CHECK(abs(r.q_star + conj(dp.q_star)) < 1e-11);
    auto imgs = symmetric_images(dp);
    CHECK(imgs.size() == 3);
    for (auto& im : imgs) {
        auto e = t_eval(im.cls, im.a_star, im.q_star, ctx, im.M, TForm::Blanch);
        CHECK(abs(e.T) < 1e-9);
        CHECK(abs(e.T_a) < 1e-7);
    }
}

TEST_CASE("odd-class reflection swaps cosine and sine") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::CE_ODD, Cd(6.176, 1.232), Cd(1.931, 3.238), ctx);
    auto imgs = symmetric_images(dp);
    CHECK(imgs[1].cls == EigenClass::SE_ODD);
    auto e = t_eval(imgs[1].cls, imgs[1].a_star, imgs[1].q_star, ctx, 0, TForm::Blanch);
    CHECK(abs(e.T) < 1e-9);
}

TEST_CASE("average_split_pair") {
    Cd a1(2.08869890274969672, 8.31667446021810974e-8), a2(2.08869890274969627, -8.31667446021810974e-8);
    std::vector<Cd> v{Cd(1.0), Cd(0.5, 0.1)};
    auto r = average_split_pair(a1, v, a2, v, 16);
    CHECK(std::fabs(r.a.re - 2.08869890274970) < 1e-14);
    CHECK(std::fabs(r.a.im) < 1e-20);

    auto same = average_split_pair(a1, v, a1, v, 16);
    CHECK(same.a == a1);
    CHECK(same.v[1] == v[1]);

    std::vector<Cd> w{Cd(-1.0), Cd(-0.5, -0.1)};
    auto flip = average_split_pair(a1, v, a2, w, 16);
    CHECK(abs(flip.v[0] - v[0]) < 1e-15);
    CHECK(abs(flip.v[1] - v[1]) < 1e-15);

    CHECK_THROWS_AS(average_split_pair(Cd(2.0), v, Cd(2.1), v, 16), NotASplitPair);
}

TEST_CASE("split pair from the matrix near q*") {
    PrecisionContext ctx;
    auto M = build_matrix(EigenClass::CE_EVEN, Cd(0.0, MG_QI), 25);
    auto ev = tridiag_eigen(M, 25, ctx);
    // the two eigenvalues nearest a*
    std::size_t i1 = 0, i2 = 1;
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t k = 0; k < ev.size(); ++k) d.push_back({abs(ev[k].value - Cd(MG_A)), k});
    std::sort(d.begin(), d.end());
    i1 = d[0].second;
    i2 = d[1].second;
    auto r = average_split_pair(ev[i1].value, ev[i1].vector, ev[i2].value, ev[i2].vector, 16);
    CHECK(std::fabs(r.a.re - MG_A) < 1e-12);
}

TEST_CASE("agrees_to_printed_figures") {
    CHECK(agrees_to_printed_figures(1.46877, "+1.469e+00"));
    CHECK_FALSE(agrees_to_printed_figures(1.4684, "1.469e+00"));
    CHECK(agrees_to_printed_figures(3e-5, "0.000e-01"));
    CHECK_FALSE(agrees_to_printed_figures(6e-5, "-0.000e-01"));
}

TEST_CASE("catalog: all 72 rows refine and agree to the printed figures") {
    PrecisionContext ctx;
    auto seeds = load_catalog(default_catalog_path());
    REQUIRE(seeds.size() == 72);
    auto rows = catalog_verify<double>(seeds, ctx);
    int ok = 0;
    for (auto& r : rows) {
        INFO("row m=" << r.seed.m_type << " q=" << r.seed.text[0] << "," << r.seed.text[1] << " " << r.error);
        CHECK(r.converged);
        CHECK(r.agrees);
        if (r.converged && r.agrees) ++ok;
        if (r.converged) {
            CHECK(r.dp.abs_Taa > 1e-3);
            if (r.seed.q.real() == 0.0) {
                CHECK(std::fabs(r.dp.q_star.re) < 1e-10);
                CHECK(std::fabs(r.dp.a_star.im) < 1e-9 * (1 + abs(r.dp.a_star)));
            }
        }
    }
    CHECK(ok == 72);
}

TEST_CASE("merge orders of the Mulholland-Goldstein point") {
    PrecisionContext ctx;
    auto dp = newton2d(EigenClass::CE_EVEN, Cd(2.1), Cd(0.0, 1.5), ctx);
    auto mo = infer_merge_orders(dp, 6, ctx);
    CHECK(mo.first == 0);
    CHECK(mo.second == 2);
}

TEST_CASE("wkb_integral") {
    PrecisionContext ctx;
    auto r = wkb_integral(Cd(100.0), Cd(0.0), ctx);
    CHECK(std::fabs(r.value.re - 5 * M_PI) < 1e-12);
    CHECK_FALSE(r.branch_crossing);
    auto r4 = wkb_integral(Cd(4.0), Cd(0.0), ctx);
    CHECK(std::fabs(r4.value.re - M_PI) < 1e-12);
    Cd a6 = eigenvalue_newton(EigenClass::CE_EVEN, 6, Cd(2.0), Cd(36.0), ctx).a;
    auto r6 = wkb_integral(a6, Cd(2.0), ctx);
    CHECK(std::fabs(r6.value.re / (M_PI / 2) - 6) < 0.2);
    // a below 2q: the integrand passes through zero on the real axis
    auto rb = wkb_integral(Cd(1.0), Cd(2.0), ctx);
    CHECK(rb.ok);
    CHECK(std::isfinite(rb.value.re));
}

}  // TEST_SUITE
