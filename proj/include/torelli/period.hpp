#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torelli::period {

using cd = std::complex<double>;

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Y^2 = prod (z - e_k), cuts [e0,e1], [e2,e3], [e4,e5].
struct HyperellipticCurve {
    std::array<cd, 6> roots;
    double sign = 1.0; // branch multiplier; from_roots picks Re Y(0) > 0

    static HyperellipticCurve from_roots(const std::array<cd, 6> &roots);
    // Single-valued branch on the plane minus the cuts, ~ sign * z^3 at infinity.
    cd y(cd z) const;
    cd cut_mid(int j) const { return 0.5 * (roots[2 * j] + roots[2 * j + 1]); }
    cd cut_half(int j) const { return 0.5 * (roots[2 * j + 1] - roots[2 * j]); }
    double distance_to_branch(cd z) const;
    // Taylor coefficients Y_0..Y_n of the branch at z0 (z0 off the cuts).
    std::vector<cd> taylor(cd z0, int n) const;
    std::string str() const;
};

// The two curves of the rho_4 computation.
HyperellipticCurve base_curve_1(); // roots 1..6
HyperellipticCurve base_curve_2(); // roots 1,2,3,4,5,7

// Piece of a cycle, t in [0,1], on a fixed sheet (+1 or -1 times the branch).
struct Segment {
    std::function<cd(double)> z;
    std::function<cd(double)> dz;
    int sheet = 1;
};

struct Cycle {
    std::string label;
    std::vector<Segment> pieces;
};

struct ContourGeometry {
    double a_radius = 1.5; // A-circle radius in units of the cut half-length
    double b_aspect = 0.6; // B-ellipse height over half-width
};

// A_i: clockwise circle around cut i. B_i: from the middle of cut i to the middle of cut 3
// along an upper half-ellipse on the + sheet, back along the lower half on the - sheet.
Cycle a_cycle(const HyperellipticCurve &c, int i, const ContourGeometry &g = {});
Cycle b_cycle(const HyperellipticCurve &c, int i, const ContourGeometry &g = {});

enum class Rule { GaussLegendre, GaussKronrod };

struct Quadrature {
    Rule rule = Rule::GaussLegendre;
    int panels = 4;     // starting panel count (Gauss-Legendre, 20 nodes each)
    double tol = 1e-10; // relative
    int max_panels = 4096;
};

struct Value {
    cd value;
    double error = 0;
};

// Integral of f(z(t)) z'(t) over t in [0,1].
Value contour_integrate(const std::function<cd(cd)> &f, const std::function<cd(double)> &z,
                        const std::function<cd(double)> &dz, const Quadrature &q = {});
// Integral of f(z, y) dz over a cycle, y the sheet value of Y.
Value integrate_cycle(const HyperellipticCurve &c, const Cycle &cyc, const std::function<cd(cd, cd)> &f,
                      const Quadrature &q = {});

// Values of Y along sampled points, continued continuously from sheet0 (sheet changes
// exactly where the path crosses a cut). Throws when a point is within clearance of a
// branch point.
std::vector<cd> y_on_path(const HyperellipticCurve &c, const std::vector<cd> &points, int sheet0,
                          double clearance = 1e-3);

struct NormalizedBasis {
    cd a, b, c, d; // v1 = (a + b z) dz / Y, v2 = (c + d z) dz / Y
    cd periods[2][2]; // periods[i][k] = A_i-period of z^k dz / Y
    double residual = 0;
    double det_abs = 0;
    double condition = 0;
};

NormalizedBasis normalized_basis(const HyperellipticCurve &c, const Quadrature &q = {},
                                 const ContourGeometry &g = {});

struct PeriodMatrix {
    cd tau[2][2];
    double error = 0;
    double symmetry_defect = 0;
    std::array<double, 2> im_eigenvalues{};
    NormalizedBasis basis;
};

PeriodMatrix period_matrix(const HyperellipticCurve &c, const Quadrature &q = {}, const ContourGeometry &g = {});

struct KernelCoeffs {
    cd h, k;
    double residual = 0; // normalization residual of the order-0 kernel
};

// z_1^n Taylor coefficients of h and k at z_1 = 0.
KernelCoeffs cauchy_kernel_coeffs(const HyperellipticCurve &c, int order = 2, const Quadrature &q = {},
                                  const ContourGeometry &g = {});

enum class InnerMode { Residue, Circle };

// G_i; the inner integral by the z_1^2 coefficient, or literally on |z_1| = eps.
Value compute_G(const HyperellipticCurve &c, int i, double eps, InnerMode mode = InnerMode::Residue,
                const Quadrature &q = {}, const ContourGeometry &g = {});

struct DPair {
    cd d1, d2;
};

// D_1 = (a Y'(0) - b) / Y(0), D_2 = (c Y'(0) - d) / Y(0) with the basis of the given curve.
DPair compute_D(const HyperellipticCurve &c2, const Quadrature &q = {}, const ContourGeometry &g = {});

struct Rho4Config {
    double eps = 0.05;
    double tol = 1e-10;
    double margin = 10;
    InnerMode mode = InnerMode::Residue;
    ContourGeometry geometry{};
    Rule rule = Rule::GaussLegendre;
};

struct Rho4Certificate {
    cd value;
    double error = 0;
    bool passes = false;
    cd a, b, c, d, h2, k2, G1, G2, D1, D2;
    cd coarse_value; // value at the coarse resolution
    std::vector<std::pair<std::string, double>> field_error; // |fine - coarse| per intermediate
    std::string digest;
    // "name = re + im i (+- err)" lines
    std::vector<std::string> report() const;
};

Rho4Certificate rho4(const Rho4Config &cfg = {});

} // namespace torelli::period
