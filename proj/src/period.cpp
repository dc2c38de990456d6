#include "torelli/period.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace torelli::period {

namespace {

constexpr double PI = 3.14159265358979323846;
const cd I(0, 1);

cd raw_branch(const std::array<cd, 6> &r, cd z)
{
    cd acc(1, 0);
    for (int j = 0; j < 3; ++j) {
        cd m = 0.5 * (r[2 * j] + r[2 * j + 1]);
        cd h = 0.5 * (r[2 * j + 1] - r[2 * j]);
        cd w = z - m;
        // principal sqrt of 1 - h^2/w^2 jumps exactly on the segment [m - h, m + h]
        acc *= w * std::sqrt(1.0 - (h * h) / (w * w));
    }
    return acc;
}

std::string fmt_cd(cd v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g %c %.15g i", v.real(), v.imag() < 0 ? '-' : '+', std::fabs(v.imag()));
    return buf;
}

using Gauss = boost::math::quadrature::gauss<double, 20>;

struct PanelSum {
    cd value;
    double l1 = 0;
};

PanelSum gauss_panels(const std::function<cd(double)> &g, int panels)
{
    const auto &x = Gauss::abscissa();
    const auto &w = Gauss::weights();
    PanelSum s{cd(0), 0};
    double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * h, half = 0.5 * h;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) {
                cd v = g(mid);
                s.value += w[i] * half * v;
                s.l1 += w[i] * half * std::abs(v);
                continue;
            }
            cd v1 = g(mid - half * x[i]), v2 = g(mid + half * x[i]);
            s.value += w[i] * half * (v1 + v2);
            s.l1 += w[i] * half * (std::abs(v1) + std::abs(v2));
        }
    }
    return s;
}

Value integrate_param(const std::function<cd(double)> &g, const Quadrature &q)
{
    if (q.rule == Rule::GaussKronrod) {
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        double er = 0, ei = 0;
        double re = GK::integrate([&](double t) { return g(t).real(); }, 0.0, 1.0, 20, q.tol, &er);
        double im = GK::integrate([&](double t) { return g(t).imag(); }, 0.0, 1.0, 20, q.tol, &ei);
        return {cd(re, im), std::hypot(er, ei)};
    }
    int n = std::max(1, q.panels);
    PanelSum prev = gauss_panels(g, n);
    while (true) {
        n *= 2;
        PanelSum cur = gauss_panels(g, n);
        double err = std::abs(cur.value - prev.value);
        double scale = std::max(std::abs(cur.value), cur.l1 * 1e-3);
        if (err <= q.tol * scale || err == 0)
            return {cur.value, err};
        if (n >= q.max_panels)
            throw NumericError("quadrature did not converge within " + std::to_string(q.max_panels) + " panels");
        prev = cur;
    }
}

Eigen::Matrix2cd period_block(const NormalizedBasis &nb)
{
    Eigen::Matrix2cd m;
    m << nb.periods[0][0], nb.periods[0][1], nb.periods[1][0], nb.periods[1][1];
    return m;
}

} // namespace

HyperellipticCurve HyperellipticCurve::from_roots(const std::array<cd, 6> &roots)
{
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (std::abs(roots[i] - roots[j]) < 1e-12)
                throw std::invalid_argument("branch points must be pairwise distinct");
    HyperellipticCurve c{roots, 1.0};
    cd y0 = raw_branch(roots, 0);
    if (y0.real() < 0 || (y0.real() == 0 && y0.imag() < 0))
        c.sign = -1.0;
    return c;
}

cd HyperellipticCurve::y(cd z) const
{
    return sign * raw_branch(roots, z);
}

double HyperellipticCurve::distance_to_branch(cd z) const
{
    double d = INFINITY;
    for (const auto &e : roots)
        d = std::min(d, std::abs(z - e));
    return d;
}

std::vector<cd> HyperellipticCurve::taylor(cd z0, int n) const
{
    // Y(z0 + u) = Y(z0) exp(1/2 sum_k log(1 - u/(e_k - z0)))
    std::vector<cd> s(n + 1, cd(0));
    for (int m = 1; m <= n; ++m) {
        cd acc(0);
        for (const auto &e : roots)
            acc += std::pow(e - z0, -m);
        s[m] = -0.5 * acc / double(m);
    }
    std::vector<cd> ex(n + 1, cd(0));
    ex[0] = 1;
    for (int k = 1; k <= n; ++k) {
        cd acc(0);
        for (int m = 1; m <= k; ++m)
            acc += double(m) * s[m] * ex[k - m];
        ex[k] = acc / double(k);
    }
    cd y0 = y(z0);
    for (auto &v : ex)
        v *= y0;
    return ex;
}

std::string HyperellipticCurve::str() const
{
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < 6; ++i)
        os << (i ? "," : "") << roots[i].real() << (roots[i].imag() != 0 ? ":" + std::to_string(roots[i].imag()) : "");
    return os.str();
}

HyperellipticCurve base_curve_1()
{
    return HyperellipticCurve::from_roots({1, 2, 3, 4, 5, 6});
}

HyperellipticCurve base_curve_2()
{
    return HyperellipticCurve::from_roots({1, 2, 3, 4, 5, 7});
}

Cycle a_cycle(const HyperellipticCurve &c, int i, const ContourGeometry &g)
{
    if (i < 0 || i > 1)
        throw std::invalid_argument("A-cycle index must be 0 or 1");
    cd m = c.cut_mid(i);
    double r = g.a_radius * std::abs(c.cut_half(i));
    Segment s;
    s.z = [m, r](double t) { return m + r * std::exp(-2.0 * PI * I * t); };
    s.dz = [r](double t) { return -2.0 * PI * I * r * std::exp(-2.0 * PI * I * t); };
    s.sheet = 1;
    return {i == 0 ? "A1" : "A2", {s}};
}

Cycle b_cycle(const HyperellipticCurve &c, int i, const ContourGeometry &g)
{
    if (i < 0 || i > 1)
        throw std::invalid_argument("B-cycle index must be 0 or 1");
    cd mi = c.cut_mid(i), m3 = c.cut_mid(2);
    cd ctr = 0.5 * (mi + m3), u = 0.5 * (m3 - mi), w = I * u * g.b_aspect;
    Segment up, down;
    up.z = [=](double t) { return ctr - u * std::cos(PI * t) + w * std::sin(PI * t); };
    up.dz = [=](double t) { return PI * (u * std::sin(PI * t) + w * std::cos(PI * t)); };
    up.sheet = 1;
    down.z = [=](double t) {
        double th = PI * (1 - t);
        return ctr - u * std::cos(th) - w * std::sin(th);
    };
    down.dz = [=](double t) {
        double th = PI * (1 - t);
        return -PI * (u * std::sin(th) - w * std::cos(th));
    };
    down.sheet = -1;
    return {i == 0 ? "B1" : "B2", {up, down}};
}

Value contour_integrate(const std::function<cd(cd)> &f, const std::function<cd(double)> &z,
                        const std::function<cd(double)> &dz, const Quadrature &q)
{
    return integrate_param([&](double t) { return f(z(t)) * dz(t); }, q);
}

Value integrate_cycle(const HyperellipticCurve &c, const Cycle &cyc, const std::function<cd(cd, cd)> &f,
                      const Quadrature &q)
{
    Value total{cd(0), 0};
    for (const auto &s : cyc.pieces) {
        Value v = integrate_param(
            [&](double t) {
                cd z = s.z(t);
                return f(z, double(s.sheet) * c.y(z)) * s.dz(t);
            },
            q);
        total.value += v.value;
        total.error += v.error;
    }
    return total;
}

std::vector<cd> y_on_path(const HyperellipticCurve &c, const std::vector<cd> &points, int sheet0, double clearance)
{
    std::vector<cd> out;
    int sheet = sheet0 < 0 ? -1 : 1;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (c.distance_to_branch(points[k]) < clearance)
            throw NumericError("path point within clearance of a branch point");
        cd v = double(sheet) * c.y(points[k]);
        if (k > 0 && std::abs(v - out.back()) > std::abs(-v - out.back())) {
            sheet = -sheet;
            v = -v;
        }
        out.push_back(v);
    }
    return out;
}

NormalizedBasis normalized_basis(const HyperellipticCurve &c, const Quadrature &q, const ContourGeometry &g)
{
    NormalizedBasis nb;
    for (int i = 0; i < 2; ++i) {
        Cycle a = a_cycle(c, i, g);
        for (int k = 0; k < 2; ++k)
            nb.periods[i][k] = integrate_cycle(c, a, [k](cd z, cd y) { return std::pow(z, k) / y; }, q).value;
    }
    Eigen::Matrix2cd m = period_block(nb);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
    double smax = svd.singularValues()(0), smin = svd.singularValues()(1);
    if (smin <= 1e-14 * smax)
        throw NumericError("A-period matrix is singular");
    nb.condition = smax / smin;
    Eigen::Matrix2cd inv = m.inverse();
    nb.a = inv(0, 0);
    nb.b = inv(1, 0);
    nb.c = inv(0, 1);
    nb.d = inv(1, 1);
    nb.det_abs = std::abs(nb.a * nb.d - nb.b * nb.c);
    // recompute the A-periods of v_1, v_2 directly
    double res = 0;
    for (int i = 0; i < 2; ++i) {
        Cycle a = a_cycle(c, i, g);
        cd p1 = integrate_cycle(c, a, [&](cd z, cd y) { return (nb.a + nb.b * z) / y; }, q).value;
        cd p2 = integrate_cycle(c, a, [&](cd z, cd y) { return (nb.c + nb.d * z) / y; }, q).value;
        res = std::max({res, std::abs(p1 - (i == 0 ? 1.0 : 0.0)), std::abs(p2 - (i == 1 ? 1.0 : 0.0))});
    }
    nb.residual = res;
    return nb;
}

PeriodMatrix period_matrix(const HyperellipticCurve &c, const Quadrature &q, const ContourGeometry &g)
{
    PeriodMatrix pm;
    pm.basis = normalized_basis(c, q, g);
    const auto &nb = pm.basis;
    for (int i = 0; i < 2; ++i) {
        Cycle b = b_cycle(c, i, g);
        Value t1 = integrate_cycle(c, b, [&](cd z, cd y) { return (nb.a + nb.b * z) / y; }, q);
        Value t2 = integrate_cycle(c, b, [&](cd z, cd y) { return (nb.c + nb.d * z) / y; }, q);
        pm.tau[i][0] = t1.value;
        pm.tau[i][1] = t2.value;
        pm.error += t1.error + t2.error;
    }
    pm.symmetry_defect = std::abs(pm.tau[0][1] - pm.tau[1][0]);
    Eigen::Matrix2d im;
    im << pm.tau[0][0].imag(), 0.5 * (pm.tau[0][1].imag() + pm.tau[1][0].imag()),
        0.5 * (pm.tau[0][1].imag() + pm.tau[1][0].imag()), pm.tau[1][1].imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(im);
    pm.im_eigenvalues = {es.eigenvalues()(0), es.eigenvalues()(1)};
    return pm;
}

namespace {

// Coefficient of z_1^n in (y_1 + y)/(2 (z - z_1) y), without the 1/(2 z^(n+1)) part:
// P_n(z) / (2y) with P_n(z) = sum_{m<=n} Y_m z^(m-n-1).
cd pn_term(const std::vector<cd> &ym, int n, cd z, cd y)
{
    cd acc(0);
    for (int m = 0; m <= n; ++m)
        acc += ym[m] * std::pow(z, m - n - 1);
    return acc / (2.0 * y);
}

Eigen::Vector2cd solve_hk(const NormalizedBasis &nb, const Eigen::Vector2cd &a_periods)
{
    return period_block(nb).partialPivLu().solve(-a_periods);
}

} // namespace

KernelCoeffs cauchy_kernel_coeffs(const HyperellipticCurve &c, int order, const Quadrature &q, const ContourGeometry &g)
{
    if (c.distance_to_branch(0) < 1e-3)
        throw NumericError("z_1 = 0 is too close to a branch point");
    NormalizedBasis nb = normalized_basis(c, q, g);
    std::vector<cd> ym = c.taylor(0, std::max(order, 0));
    auto coeffs = [&](int n) {
        Eigen::Vector2cd rhs;
        for (int i = 0; i < 2; ++i)
            rhs(i) = integrate_cycle(c, a_cycle(c, i, g), [&](cd z, cd y) { return pn_term(ym, n, z, y); }, q).value;
        return solve_hk(nb, rhs);
    };
    Eigen::Vector2cd hk = coeffs(order);
    Eigen::Vector2cd hk0 = coeffs(0);
    double res = 0;
    for (int i = 0; i < 2; ++i) {
        cd v = integrate_cycle(
                   c, a_cycle(c, i, g),
                   [&](cd z, cd y) { return pn_term(ym, 0, z, y) + 0.5 / z + (hk0(0) + hk0(1) * z) / y; }, q)
                   .value;
        res = std::max(res, std::abs(v));
    }
    return {hk(0), hk(1), res};
}

Value compute_G(const HyperellipticCurve &c, int i, double eps, InnerMode mode, const Quadrature &q,
                const ContourGeometry &g)
{
    if (!(eps > 0) || eps >= 0.5 * c.distance_to_branch(0))
        throw std::invalid_argument("eps must be positive and well inside the branch-point distance");
    Cycle b = b_cycle(c, i, g);
    if (mode == InnerMode::Residue) {
        KernelCoeffs kc = cauchy_kernel_coeffs(c, 2, q, g);
        std::vector<cd> ym = c.taylor(0, 2);
        Value v = integrate_cycle(
            c, b,
            [&](cd z, cd y) { return 2.0 * PI * I * (pn_term(ym, 2, z, y) + 0.5 / (z * z * z) + (kc.h + kc.k * z) / y); },
            q);
        return v;
    }
    // Literal inner circle: for each z_1 solve the normalization and integrate over B_i.
    NormalizedBasis nb = normalized_basis(c, q, g);
    const int N = 48;
    Value total{cd(0), 0};
    for (int j = 0; j < N; ++j) {
        cd z1 = eps * std::exp(2.0 * PI * I * (double(j) / N));
        cd y1 = c.y(z1);
        auto kern = [&](cd z, cd y) { return (y1 + y) / (2.0 * (z - z1) * y); };
        Eigen::Vector2cd rhs;
        for (int a = 0; a < 2; ++a)
            rhs(a) = integrate_cycle(c, a_cycle(c, a, g), kern, q).value;
        Eigen::Vector2cd hk = solve_hk(nb, rhs);
        Value bv = integrate_cycle(c, b, [&](cd z, cd y) { return kern(z, y) + (hk(0) + hk(1) * z) / y; }, q);
        cd w = 2.0 * PI * I * z1 / double(N);
        total.value += bv.value / (z1 * z1 * z1) * w;
        total.error += bv.error * std::abs(w) / (eps * eps * eps);
    }
    return total;
}

DPair compute_D(const HyperellipticCurve &c2, const Quadrature &q, const ContourGeometry &g)
{
    NormalizedBasis nb = normalized_basis(c2, q, g);
    auto ym = c2.taylor(0, 1);
    if (std::abs(ym[0]) < 1e-12)
        throw NumericError("Y(0) below numerical floor");
    return {(nb.a * ym[1] - nb.b) / ym[0], (nb.c * ym[1] - nb.d) / ym[0]};
}

std::vector<std::string> Rho4Certificate::report() const
{
    std::vector<std::string> out;
    auto line = [&](const std::string &n, cd v, double err) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s = %s (+- %.3g)", n.c_str(), fmt_cd(v).c_str(), err);
        out.push_back(buf);
    };
    std::vector<cd> vals{a, b, c, d, h2, k2, G1, G2, D1, D2};
    for (std::size_t i = 0; i < vals.size() && i < field_error.size(); ++i)
        line(field_error[i].first, vals[i], field_error[i].second);
    line("rho4", value, error);
    return out;
}

Rho4Certificate rho4(const Rho4Config &cfg)
{
    if (!(cfg.tol > 0) || !(cfg.margin > 0))
        throw std::invalid_argument("tolerance and margin must be positive");
    auto c1 = base_curve_1(), c2 = base_curve_2();
    auto run = [&](const Quadrature &q, Rho4Certificate &cert) {
        NormalizedBasis nb = normalized_basis(c1, q, cfg.geometry);
        KernelCoeffs kc = cauchy_kernel_coeffs(c1, 2, q, cfg.geometry);
        cert.a = nb.a;
        cert.b = nb.b;
        cert.c = nb.c;
        cert.d = nb.d;
        cert.h2 = kc.h;
        cert.k2 = kc.k;
        cert.G1 = compute_G(c1, 0, cfg.eps, cfg.mode, q, cfg.geometry).value;
        cert.G2 = compute_G(c1, 1, cfg.eps, cfg.mode, q, cfg.geometry).value;
        DPair dp = compute_D(c2, q, cfg.geometry);
        cert.D1 = dp.d1;
        cert.D2 = dp.d2;
        cd a = nb.a, c = nb.c;
        return -c * c * cert.G1 * cert.D1 + a * c * cert.G1 * cert.D2 + a * c * cert.G2 * cert.D1 -
               a * a * cert.G2 * cert.D2;
    };
    Rho4Certificate coarse, fine;
    Quadrature qc{cfg.rule, 2, cfg.tol * 100}, qf{cfg.rule, 8, cfg.tol};
    cd vc = run(qc, coarse);
    cd vf = run(qf, fine);
    fine.value = vf;
    fine.coarse_value = vc;
    fine.error = std::abs(vf - vc) + 1e-15 * std::abs(vf);
    fine.passes = std::abs(vf) > cfg.margin * fine.error;
    const char *names[] = {"a", "b", "c", "d", "h2", "k2", "G1", "G2", "D1", "D2"};
    cd Rho4Certificate::*fields[] = {&Rho4Certificate::a,  &Rho4Certificate::b,  &Rho4Certificate::c,
                                     &Rho4Certificate::d,  &Rho4Certificate::h2, &Rho4Certificate::k2,
                                     &Rho4Certificate::G1, &Rho4Certificate::G2, &Rho4Certificate::D1,
                                     &Rho4Certificate::D2};
    for (int i = 0; i < 10; ++i)
        fine.field_error.push_back({names[i], std::abs(fine.*fields[i] - coarse.*fields[i])});
    std::ostringstream os;
    os << "C1=" << c1.str() << ";C2=" << c2.str() << ";eps=" << cfg.eps << ";tol=" << cfg.tol
       << ";a_radius=" << cfg.geometry.a_radius << ";b_aspect=" << cfg.geometry.b_aspect
       << ";mode=" << (cfg.mode == InnerMode::Residue ? "residue" : "circle");
    fine.digest = os.str();
    return fine;
}

} // namespace torelli::period
