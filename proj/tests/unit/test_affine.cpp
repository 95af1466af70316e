#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "intquant/affine.hpp"
#include "intquant/errors.hpp"

using namespace intquant;

namespace {
// a = b = 1 fiducial on a grid that resolves both the peak and the tail
const FiducialVector& psi11() {
    static const FiducialVector f = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.005, 60.0));
    return f;
}
}  // namespace

TEST(HalfLine, GridLayout) {
    const auto g = HalfLineGrid::make(0.5, 3.0);
    ASSERT_EQ(g.size(), 6);
    EXPECT_EQ(g.x.front(), 0.5);
    EXPECT_EQ(g.x.back(), 3.0);
    EXPECT_THROW(HalfLineGrid::make(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(HalfLineGrid::make(1.0, 0.5), std::invalid_argument);
}

TEST(Fiducial, MomentOracles) {
    // mpmath quadrature, tests/oracles/compute_oracles.py
    const std::pair<double, double> ref[] = {{-2.0, 1.0},
                                             {-1.0, 0.89395418597220874116},
                                             {-0.5, 0.91942368724154404465},
                                             {0.0, 1.0},
                                             {1.0, 1.3939541859722087412},
                                             {2.0, 2.3939541859722087412}};
    for (auto [g, v] : ref) EXPECT_NEAR(c_gamma(psi11(), g), v, 1e-9 * v) << g;
}

TEST(Fiducial, ResolutionChecks) {
    EXPECT_THROW(build_fiducial(1.0, 1.0, HalfLineGrid::make(0.1, 40.0)), GridUnderresolved);
    EXPECT_THROW(build_fiducial(1.0, 1.0, HalfLineGrid::make(0.01, 8.0)), GridUnderresolved);
    EXPECT_THROW(build_fiducial(-1.0, 1.0, HalfLineGrid::make(0.01, 40.0)), std::invalid_argument);
}

TEST(Fiducial, SampledMatchesAnalytic) {
    const auto& p = psi11();
    const FiducialVector s = fiducial_from_samples(p.values, p.grid);
    EXPECT_NEAR(c_gamma(s, -1.0), c_gamma(p, -1.0), 1e-14);
    // finite differences for the derivative: second-order agreement only
    EXPECT_NEAR(kinetic_constant(s), kinetic_constant(p), 1e-4);
}

TEST(Kinetic, OracleClosedFormAndDilation) {
    const double K = kinetic_constant(psi11());
    EXPECT_NEAR(K, 1.1186255578774011272, 1e-6 * K);
    EXPECT_NEAR(kinetic_constant_closed_form(1.0, 1.0), 1.1186255578774011272, 1e-13);
    const double K2 = kinetic_constant(build_fiducial(2.0, 0.5, HalfLineGrid::make(0.01, 120.0)));
    EXPECT_NEAR(K2 / K, 1.0, 1e-5);
    EXPECT_NEAR(c_gamma(build_fiducial(2.0, 0.5, HalfLineGrid::make(0.01, 120.0)), -1.0), 0.44697709298610437058, 1e-9);
}

TEST(Kinetic, ShrinksAlongProductPath) {
    // K depends on kappa = a b only; along kappa -> 0 it decreases monotonically, like 1/log
    double prev = INFINITY;
    for (double kappa : {4.0, 1.0, 0.25, 0.05, 0.01, 1e-3, 1e-8}) {
        const double K = kinetic_constant_closed_form(1.0, kappa);
        EXPECT_LT(K, prev) << kappa;
        prev = K;
    }
    EXPECT_LT(prev, 0.05);
    // numerical K at kappa = 0.25 agrees with the closed form
    const double Kn = kinetic_constant(build_fiducial(0.5, 0.5, HalfLineGrid::make(0.005, 80.0)));
    EXPECT_NEAR(Kn, kinetic_constant_closed_form(0.5, 0.5), 1e-6 * Kn);
}

TEST(AffineSymbol, PowerScaling) {
    const auto& p = psi11();
    const double cm1 = c_gamma(p, -1.0);
    for (double beta : {0.5, 1.0, 2.0, 3.0}) {
        const auto ft = affine_quantize_position([beta](double x) { return std::pow(x, beta); }, p);
        const double ref = c_gamma(p, beta - 1.0) / cm1;
        for (int i = 200; i < 4000; i += 250) EXPECT_NEAR(ft[i] / std::pow(p.grid.x[i], beta) / ref, 1.0, 1e-6);
    }
    const auto one = affine_quantize_position([](double) { return 1.0; }, p);
    EXPECT_NEAR(one[100], 1.0, 1e-12);
}

TEST(AffineOperators, CanonicalCommutatorOnSmoothVectors) {
    const auto& p = psi11();
    const auto& g = p.grid;
    const double ratio = c_gamma(p, 0.0) / c_gamma(p, -1.0);
    const TridiagonalOperator X = position_operator(g), P = momentum_operator(g);
    EXPECT_TRUE(P.is_hermitian());
    CVector phi(g.size());
    for (int i = 0; i < g.size(); ++i) phi(i) = std::exp(-0.5 * std::pow(g.x[i] - 8.0, 2));
    // [A_q, A_p] = (c_0/c_{-1}) [X, P] -> (c_0/c_{-1}) i
    const CVector c = ratio * (X.apply(P.apply(phi)) - P.apply(X.apply(phi)));
    double worst = 0.0;
    for (int i = 100; i < g.size() - 100; ++i) worst = std::max(worst, std::abs(c(i) - cplx(0.0, ratio) * phi(i)));
    EXPECT_LE(worst, 10.0 * g.h * g.h);
}

TEST(AffineOperators, KineticPositivityAndBesselOracle) {
    for (double K : {0.75, 1.0, 2.0}) {
        const auto g = HalfLineGrid::make(0.005, 10.0);
        const TridiagonalOperator T = kinetic_operator(g, K);
        EXPECT_TRUE(T.is_hermitian());
        const auto ev = T.eigenvalues();
        EXPECT_GT(ev(0), 0.0);
        // Dirichlet box (0, L]: lowest eigenvalue (j_{nu,1}/L)^2 with nu = sqrt(K + 1/4); L = x_max + h
        const double nu = std::sqrt(K + 0.25);
        const double L = g.x_max + g.h;
        const double ref = std::pow(boost::math::cyl_bessel_j_zero(nu, 1) / L, 2);
        EXPECT_NEAR(ev(0) / ref, 1.0, 5e-3) << K;
    }
    EXPECT_THROW(kinetic_operator(HalfLineGrid::make(0.1, 1.0), NAN), std::invalid_argument);
}

TEST(AffineStates, NormAndGroupLaw) {
    const auto p = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.01, 80.0));
    const CVector v = affine_cs({4.0, 1.5}, p);
    EXPECT_NEAR(p.grid.h * v.squaredNorm(), 1.0, 1e-6);
    CVector phi(p.grid.size());
    for (int i = 0; i < p.grid.size(); ++i) phi(i) = std::exp(-2.0 * std::pow(p.grid.x[i] - 6.0, 2));
    const AffinePoint g1{1.3, 0.4}, g2{0.8, -0.7};
    const CVector lhs = apply_affine(g1, apply_affine(g2, phi, p.grid), p.grid);
    const CVector rhs = apply_affine(compose(g1, g2), phi, p.grid);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-6);
    const AffinePoint c = compose(g1, g2);
    EXPECT_NEAR(c.q, 1.04, 1e-15);
    EXPECT_NEAR(c.p, -0.7 / 1.3 + 0.4, 1e-15);
}

TEST(AffineStates, OutOfRangeInterpolation) {
    const auto p = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.01, 40.0));
    CVector wide = CVector::Ones(p.grid.size());
    EXPECT_THROW(apply_affine({2.0, 0.0}, wide, p.grid), InterpolationOutOfRange);
    EXPECT_THROW(affine_cs({0.0, 0.0}, p), std::invalid_argument);
}

TEST(Resolution, ConvergesAndScales) {
    const auto p = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.02, 40.0));
    CVector phi(p.grid.size());
    double n2 = 0.0;
    for (int i = 0; i < p.grid.size(); ++i) {
        phi(i) = std::exp(-0.5 * std::pow(p.grid.x[i] - 5.0, 2));
        n2 += p.grid.h * std::norm(phi(i));
    }
    ResolutionBounds b;
    b.q_nodes = 128;
    b.p_nodes = 201;
    const double r = resolution_check(phi, p, b);
    EXPECT_NEAR(r / n2, 1.0, 1e-2);
    EXPECT_NEAR(resolution_check(2.0 * phi, p, b) / r, 4.0, 1e-12);
}
