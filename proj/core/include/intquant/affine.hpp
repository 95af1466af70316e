#pragma once

#include <functional>
#include <vector>

#include "intquant/types.hpp"

namespace intquant {

// Uniform samples x_i = (i + 1) h, i = 0..n-1, on (0, x_max]; the origin is excluded.
struct HalfLineGrid {
    double h = 0.0;
    double x_max = 0.0;
    std::vector<double> x;

    static HalfLineGrid make(double h, double x_max);
    int size() const { return static_cast<int>(x.size()); }
};

// psi(x) = c exp(-(a/x + b x)) sampled on a grid, or user samples (analytic = false).
struct FiducialVector {
    double a = 0.0;
    double b = 0.0;
    bool analytic = true;
    double norm_constant = 0.0;
    HalfLineGrid grid;
    std::vector<double> values;

    // exact evaluation off the grid (analytic fiducials only)
    double operator()(double x) const;
};

// (q, p) with q > 0; (q, p)(q0, p0) = (q q0, p0/q + p)
struct AffinePoint {
    double q = 1.0;
    double p = 0.0;
};
AffinePoint compose(const AffinePoint& g1, const AffinePoint& g2);

FiducialVector build_fiducial(double a, double b, const HalfLineGrid& grid);
FiducialVector fiducial_from_samples(std::vector<double> values, const HalfLineGrid& grid);

// c_gamma = int_0^inf |psi(x)|^2 x^{-2-gamma} dx; audited against the 2h subgrid.
double c_gamma(const FiducialVector& psi, double gamma);

// K = (1/c_{-1}) int_0^inf u psi'(u)^2 du; psi' analytic when (a, b) are known.
double kinetic_constant(const FiducialVector& psi);

// Closed forms in terms of modified Bessel functions, kappa = a b:
// K = sqrt(kappa) K_1(4 sqrt kappa)/K_0(4 sqrt kappa); used for documentation and
// as the parameter path along which K shrinks (kappa -> 0).
double kinetic_constant_closed_form(double a, double b);

// ftilde(x) = (1/c_{-1}) int_0^inf f(x/u) |psi(u)|^2 du/u at each grid point.
std::vector<double> affine_quantize_position(const std::function<double(double)>& f, const FiducialVector& psi);

struct TridiagonalOperator {
    CVector diag;
    CVector upper;  // (i, i+1)
    CVector lower;  // (i+1, i)

    int size() const { return static_cast<int>(diag.size()); }
    CVector apply(const CVector& v) const;
    CMatrix to_dense() const;
    bool is_hermitian() const;  // exact comparison
    // eigenvalues in ascending order; requires a real symmetric operator
    Eigen::VectorXd eigenvalues() const;
};

TridiagonalOperator momentum_operator(const HalfLineGrid& grid);
TridiagonalOperator position_operator(const HalfLineGrid& grid);
// -d^2/dx^2 (Dirichlet) + K/x^2
TridiagonalOperator kinetic_operator(const HalfLineGrid& grid, double K);
TridiagonalOperator affine_kinetic(const FiducialVector& psi);

// <x|q,p> = e^{ipx} psi(x/q)/sqrt q on the fiducial's grid (cubic interpolation of log psi)
CVector affine_cs(const AffinePoint& g, const FiducialVector& psi);
// (U(q,p) phi)(x) for sampled phi (cubic interpolation of real and imaginary parts)
CVector apply_affine(const AffinePoint& g, const CVector& phi, const HalfLineGrid& grid);

struct ResolutionBounds {
    double q_min = 1.0 / 32.0;
    double q_max = 32.0;
    double p_max = 40.0;
    int q_nodes = 256;
    int p_nodes = 401;
};

// int int |<phi|q,p>|^2 dq dp / (2 pi c_{-1}) over the bounds: log-spaced q, uniform p.
double resolution_check(const CVector& phi, const FiducialVector& psi, const ResolutionBounds& bounds = {});

}  // namespace intquant
