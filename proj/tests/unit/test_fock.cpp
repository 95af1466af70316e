#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "intquant/fock.hpp"

using namespace intquant;

TEST(Ladder, SmallCases) {
    auto [a, ad] = ladder(2);
    EXPECT_EQ(a(0, 1), cplx(1.0, 0.0));
    CMatrix e01 = CMatrix::Zero(2, 2);
    e01(0, 1) = 1.0;
    EXPECT_EQ(max_abs(a - e01), 0.0);
    auto [a4, ad4] = ladder(4);
    const CMatrix N = ad4 * a4;
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(N(n, n).real(), n, 1e-15);
    EXPECT_EQ(max_abs(ad4 - a4.adjoint()), 0.0);
    EXPECT_THROW(ladder(1), std::invalid_argument);
}

TEST(Ladder, TruncatedCommutator) {
    auto [a, ad] = ladder(8);
    const CMatrix C = a * ad - ad * a;
    EXPECT_LE(block_max_diff(C, CMatrix::Identity(8, 8), 7), 1e-14);
    EXPECT_NEAR(C(7, 7).real(), -7.0, 1e-14);
}

TEST(Parity, Basics) {
    EXPECT_EQ(parity(1)(0, 0), cplx(1.0, 0.0));
    const CMatrix P = parity(10);
    EXPECT_EQ(max_abs(P * P - CMatrix::Identity(10, 10)), 0.0);
    auto [a, ad] = ladder(10);
    EXPECT_EQ(max_abs(P * a * P + a), 0.0);
}

TEST(Rotation, IdentityAndParity) {
    EXPECT_EQ(max_abs(rotation(0.0, 0.3, 6) - CMatrix::Identity(6, 6)), 0.0);
    EXPECT_LE(max_abs(rotation(std::numbers::pi, 0.0, 12) - parity(12)), 1e-14);
}

TEST(Rotation, CovarianceOfDisplacement) {
    const int dim = 24;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-0.7, 0.7), T(0.0, 6.28);
    for (int k = 0; k < 10; ++k) {
        const PhasePoint z(U(rng), U(rng));
        const double th = T(rng);
        const CMatrix R = rotation(th, 0.37, dim);
        EXPECT_LE(block_max_diff(R * displacement(z, dim) * R.adjoint(), displacement(std::polar(1.0, th) * z, dim), 16), 1e-10);
    }
}

TEST(Displacement, OriginAndVacuumEntry) {
    EXPECT_EQ(max_abs(displacement(PhasePoint{}, 9) - CMatrix::Identity(9, 9)), 0.0);
    const PhasePoint z(0.4, -1.1);
    EXPECT_NEAR(std::abs(displacement(z, 5)(0, 0) - std::exp(-std::norm(z) / 2.0)), 0.0, 1e-15);
}

TEST(Displacement, MatrixExponentialOracle) {
    // expm of a large truncation of z a^dag - zbar a, compared on the low block
    const PhasePoint z(0.7, 0.3);
    auto [a, ad] = ladder(96);
    const CMatrix G = z * ad - std::conj(z) * a;
    const CMatrix E = G.exp();
    EXPECT_LE(block_max_diff(displacement(z, 32), E, 21), 1e-8);
}

TEST(Displacement, InverseIsReflection) {
    const PhasePoint z(-0.8, 1.3);
    EXPECT_EQ(max_abs(displacement(-z, 20) - displacement(z, 20).adjoint()), 0.0);
}

TEST(Displacement, RadialFactor) {
    const double t = 2.3, th = 0.9;
    const Eigen::MatrixXd R = displacement_radial(t, 12);
    const CMatrix D = displacement(std::polar(std::sqrt(t), th), 12);
    for (int m = 0; m < 12; ++m)
        for (int n = 0; n < 12; ++n) EXPECT_NEAR(std::abs(D(m, n) - R(m, n) * std::polar(1.0, (m - n) * th)), 0.0, 1e-14);
}

TEST(Displacement, LargeArgumentStaysFinite) {
    const CMatrix D = displacement(PhasePoint(12.0, 5.0), 500);
    EXPECT_TRUE(D.allFinite());
    EXPECT_LE(block_max_diff(D.adjoint() * D, CMatrix::Identity(500, 500), 4), 1e-9);
}

TEST(Boltzmann, ClosedForms) {
    CMatrix e0 = CMatrix::Zero(6, 6);
    e0(0, 0) = 1.0;
    EXPECT_LE(max_abs(boltzmann_density(-1.0, 6) - e0), 1e-16);
    const CMatrix r = boltzmann_density(-3.0, 10);
    for (int n = 0; n < 10; ++n) EXPECT_NEAR(r(n, n).real(), 0.5 * std::pow(0.5, n), 1e-16);
    EXPECT_NEAR(boltzmann_density(-3.0, 32).trace().real(), 1.0, 1e-9);
    EXPECT_THROW(boltzmann_density(-0.5, 4), std::invalid_argument);
}

TEST(FockOperators, SquaresAreRestrictions) {
    const int dim = 10;
    const CMatrix Q = position_operator(dim), P = momentum_operator_fock(dim);
    EXPECT_LE(block_max_diff(Q * Q, position_squared(dim), dim - 1), 1e-14);
    EXPECT_LE(block_max_diff(P * P, momentum_squared(dim), dim - 1), 1e-14);
    // the last diagonal entry of the truncated product misses one term
    EXPECT_NEAR(position_squared(dim)(dim - 1, dim - 1).real(), dim - 0.5, 1e-14);
}

TEST(FundamentalIntegral, TwiceParity) {
    const auto chk = fundamental_integral_check(32, PhaseGrid::make(64, 128, 0.5), 24);
    EXPECT_LE(chk.max_defect, 1e-8);
}

TEST(FundamentalIntegral, GaussianDampedIsVacuum) {
    const CMatrix I = fundamental_integral(24, PhaseGrid::make(64, 128, 1.0), -1.0);
    CMatrix e0 = CMatrix::Zero(24, 24);
    e0(0, 0) = 1.0;
    EXPECT_LE(max_abs(I - e0), 1e-9);
}

TEST(FundamentalIntegral, CahillGlauberDiagonal) {
    const double s = -2.0;
    const CMatrix I = fundamental_integral(16, PhaseGrid::make(64, 64, (1.0 - s) / 2.0), s);
    for (int n = 0; n < 16; ++n) EXPECT_NEAR(I(n, n).real(), 2.0 / (1.0 - s) * std::pow((s + 1.0) / (s - 1.0), n), 1e-10);
}
