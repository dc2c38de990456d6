#include "torelli/period.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace torelli::period;

namespace {

double rel(cd a, cd b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::vector<cd> circle(cd center, double r, int n)
{
    std::vector<cd> pts;
    for (int k = 0; k <= n; ++k)
        pts.push_back(center + std::polar(r, 2 * std::numbers::pi * k / n));
    return pts;
}

const ContourGeometry kWide{1.5 * 1.2, 0.6 * 1.2};

} // namespace

TEST_CASE("branch of Y on the base curve")
{
    auto c = base_curve_1();
    cd y0 = c.y(0);
    CHECK(std::abs(y0 * y0 - 720.0) < 1e-9);
    CHECK(y0.real() > 0);
    auto t = c.taylor(0, 2);
    CHECK(std::abs(t[0] - y0) < 1e-12);
    double h = 1e-5;
    CHECK(std::abs(t[1] - (c.y(h) - c.y(-h)) / (2 * h)) < 1e-5);
}

TEST_CASE("monodromy of Y along closed loops")
{
    auto c = base_curve_1();
    auto one = y_on_path(c, circle(1.0, 0.3, 400), 1);
    CHECK(std::abs(one.back() + one.front()) < 1e-9 * std::abs(one.front()));
    auto two = y_on_path(c, circle(1.5, 1.0, 800), 1);
    CHECK(std::abs(two.back() - two.front()) < 1e-9 * std::abs(two.front()));
    CHECK_THROWS_AS(y_on_path(c, {cd(0.5), cd(1.0), cd(1.5)}, 1), NumericError);
}

TEST_CASE("contour quadrature on elementary integrands")
{
    auto z = [](double t) { return std::polar(1.0, 2 * std::numbers::pi * t); };
    auto dz = [](double t) { return cd(0, 2 * std::numbers::pi) * std::polar(1.0, 2 * std::numbers::pi * t); };
    for (Rule r : {Rule::GaussLegendre, Rule::GaussKronrod}) {
        Quadrature q{r};
        auto v = contour_integrate([](cd w) { return 1.0 / w; }, z, dz, q);
        CHECK(std::abs(v.value - cd(0, 2 * std::numbers::pi)) < 1e-12);
        auto w = contour_integrate([](cd x) { return x; }, z, dz, q);
        CHECK(std::abs(w.value) < 1e-12);
    }
    auto sq = [](double t) { return cd(2 + std::cos(2 * std::numbers::pi * t), std::sin(4 * std::numbers::pi * t)); };
    auto dsq = [](double t) {
        return cd(-2 * std::numbers::pi * std::sin(2 * std::numbers::pi * t), 4 * std::numbers::pi * std::cos(4 * std::numbers::pi * t));
    };
    CHECK(std::abs(contour_integrate([](cd x) { return x; }, sq, dsq).value) < 1e-10);
}

TEST_CASE("A-period: two quadrature rules agree")
{
    auto c = base_curve_1();
    auto f = [](cd, cd y) { return 1.0 / y; };
    auto gl = integrate_cycle(c, a_cycle(c, 0), f, Quadrature{Rule::GaussLegendre});
    auto gk = integrate_cycle(c, a_cycle(c, 0), f, Quadrature{Rule::GaussKronrod});
    CHECK(rel(gl.value, gk.value) < 1e-8);
    CHECK(std::abs(gl.value) > 1e-3);
}

TEST_CASE("period matrices of the base curves")
{
    for (const auto &c : {base_curve_1(), base_curve_2()}) {
        auto pm = period_matrix(c);
        CHECK(std::abs(pm.tau[0][1] - pm.tau[1][0]) < 1e-8);
        CHECK(pm.im_eigenvalues[0] > 0);
        CHECK(pm.im_eigenvalues[1] > 0);
        CHECK(pm.basis.residual < 1e-8);
        CHECK(pm.basis.det_abs > 0);
        CHECK(pm.basis.condition >= 1);
        auto wide = period_matrix(c, {}, kWide);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(wide.tau[i][j] - pm.tau[i][j]) < 1e-6);
        auto nb = normalized_basis(c, {}, kWide);
        CHECK(std::abs(nb.a - pm.basis.a) < 1e-6);
        CHECK(std::abs(nb.b - pm.basis.b) < 1e-6);
        CHECK(std::abs(nb.c - pm.basis.c) < 1e-6);
        CHECK(std::abs(nb.d - pm.basis.d) < 1e-6);
    }
    auto pm = period_matrix(base_curve_1());
    CHECK(pm.tau[0][0].imag() == doctest::Approx(1.70917).epsilon(1e-5));
    CHECK(pm.tau[1][1].imag() == doctest::Approx(1.27671).epsilon(1e-5));
}

TEST_CASE("degenerate curve is rejected")
{
    CHECK_THROWS(period_matrix(HyperellipticCurve::from_roots({cd(1), cd(2), cd(2), cd(3), cd(4), cd(5)})));
}

TEST_CASE("Cauchy kernel coefficients")
{
    auto c = base_curve_1();
    auto k = cauchy_kernel_coeffs(c);
    CHECK(k.residual < 1e-8);
    auto kk = cauchy_kernel_coeffs(c, 2, Quadrature{Rule::GaussKronrod});
    CHECK(rel(k.h, kk.h) < 1e-6);
    CHECK(rel(k.k, kk.k) < 1e-6);
    auto kw = cauchy_kernel_coeffs(c, 2, {}, kWide);
    CHECK(rel(k.h, kw.h) < 1e-6);
    CHECK(rel(k.k, kw.k) < 1e-6);
}

TEST_CASE("G_i: residue and circle evaluations, epsilon independence")
{
    auto c = base_curve_1();
    for (int i = 0; i < 2; ++i) {
        cd r = compute_G(c, i, 0.05).value;
        cd a = compute_G(c, i, 0.05, InnerMode::Circle).value;
        cd b = compute_G(c, i, 0.1, InnerMode::Circle).value;
        CHECK(rel(r, a) < 1e-8);
        CHECK(rel(a, b) < 1e-6);
        CHECK(rel(r, compute_G(c, i, 0.05, InnerMode::Residue, {}, kWide).value) < 1e-6);
    }
    CHECK_THROWS(compute_G(c, 0, 1.5, InnerMode::Circle));
}

TEST_CASE("D_i: quadrature agreement and the sheet law")
{
    auto c2 = base_curve_2();
    auto d = compute_D(c2);
    auto dk = compute_D(c2, Quadrature{Rule::GaussKronrod});
    CHECK(rel(d.d1, dk.d1) < 1e-6);
    CHECK(rel(d.d2, dk.d2) < 1e-6);

    auto nb = normalized_basis(c2);
    auto y = c2.taylor(0, 1);
    CHECK(std::abs(d.d1 - (nb.a * y[1] - nb.b) / y[0]) < 1e-12);

    // Y -> -Y sends (a, b, Y, Y') to their negatives, so D_1 -> -(a Y' + b) / Y.
    HyperellipticCurve flipped = c2;
    flipped.sign = -c2.sign;
    auto df = compute_D(flipped);
    CHECK(rel(df.d1, -(nb.a * y[1] + nb.b) / y[0]) < 1e-8);
    CHECK(rel(df.d2, -(nb.c * y[1] + nb.d) / y[0]) < 1e-8);
}

TEST_CASE("rho4 certificate")
{
    auto cert = rho4();
    CHECK(cert.passes);
    CHECK(std::abs(cert.value) > 10 * cert.error);
    CHECK(rel(cert.value, cert.coarse_value) < 1e-6);
    CHECK(cert.report().size() == 11);
    CHECK(std::abs(cert.value.real()) == doctest::Approx(0.0208848026).epsilon(1e-6));

    Rho4Config wide;
    wide.eps = 0.1;
    wide.mode = InnerMode::Circle;
    CHECK(rel(rho4(wide).value, cert.value) < 1e-6);
    Rho4Config gk;
    gk.rule = Rule::GaussKronrod;
    CHECK(rel(rho4(gk).value, cert.value) < 1e-6);
    CHECK(rho4().digest == cert.digest);
}
