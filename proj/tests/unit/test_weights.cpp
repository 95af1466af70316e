#include <cmath>

#include <gtest/gtest.h>

#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/weights.hpp"

using namespace intquant;

TEST(Weights, ValuesAndNames) {
    EXPECT_EQ(constant_weight()(PhasePoint(3.0, 1.0)), cplx(1.0, 0.0));
    EXPECT_NEAR(cahill_glauber(-1.0)(PhasePoint(1.0, 1.0)).real(), std::exp(-1.0), 1e-15);
    EXPECT_EQ(isometric_elliptic(0.5)(PhasePoint(1.0, 0.0)).real(), 1.0);
    EXPECT_EQ(isometric_elliptic(0.5)(PhasePoint(2.0, 0.0)).real(), -1.0);
    EXPECT_EQ(weight_spec(parse_weight("cahill_glauber:-0.25")), "cahill_glauber:-0.25");
    EXPECT_EQ(weight_spec(parse_weight("constant")), "constant");
    EXPECT_THROW(parse_weight("cahill_glauber"), std::invalid_argument);
    EXPECT_THROW(parse_weight("bogus:1"), std::invalid_argument);
    EXPECT_THROW(parse_weight("elliptic_step:1x"), std::invalid_argument);
    EXPECT_THROW(isometric_elliptic(-1.0), std::invalid_argument);
}

TEST(Weights, CustomNeedsUnitValueAtOrigin) {
    EXPECT_THROW(custom_weight([](PhasePoint) { return cplx(2.0, 0.0); }, WeightKind::generic), std::invalid_argument);
}

TEST(Weights, Classification) {
    const auto S = default_sampler();
    const WeightClass c0 = classify(constant_weight(), S);
    EXPECT_TRUE(c0.regular && c0.isometric && c0.elliptic);
    const WeightClass cg = classify(cahill_glauber(-1.0), S);
    EXPECT_TRUE(cg.regular && cg.elliptic);
    EXPECT_FALSE(cg.isometric);
    const WeightClass el = classify(isometric_elliptic(0.5), S);
    EXPECT_TRUE(el.regular && el.isometric && el.elliptic);
    const WeightClass hy = classify(isometric_hyperbolic(0.3), S);
    EXPECT_TRUE(hy.regular && hy.isometric && hy.hyperbolic);
    EXPECT_FALSE(hy.elliptic);
    // odd part breaks parity, hence regularity
    const auto odd = custom_weight([](PhasePoint z) { return std::exp(-std::norm(z)) * (1.0 + 0.2 * z.real()); },
                                   WeightKind::generic);
    EXPECT_FALSE(classify(odd, S).regular);
}

TEST(Weights, SamplerIsDeterministic) {
    const auto a = default_sampler(7), b = default_sampler(7), c = default_sampler(8);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(Weights, FiniteDifferenceDerivatives) {
    const double s = -0.6;
    const auto d = finite_difference_derivatives(cahill_glauber(s));
    EXPECT_NEAR(d.value.real(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(d.dz), 0.0, 1e-8);
    EXPECT_NEAR(d.dzdzb.real(), s / 2.0, 1e-6);
    EXPECT_NEAR(std::abs(d.dz2), 0.0, 1e-6);
    EXPECT_EQ(*weight_derivative(cahill_glauber(s), 2, 2), cplx(2.0 * (s / 2.0) * (s / 2.0), 0.0));
    EXPECT_EQ(*weight_derivative(cahill_glauber(s), 2, 1), cplx(0.0, 0.0));
    EXPECT_TRUE(weyl_germ(isometric_elliptic(3.0)));
    EXPECT_FALSE(weyl_germ(cahill_glauber(-1.0)));
}

TEST(WeightOperator, CahillGlauberClosedForm) {
    for (double s : {-0.25, -1.0, -2.0, -4.0}) {
        const CMatrix M = weight_to_operator(cahill_glauber(s), 32, PhaseGrid::make(64, 128, (1.0 - s) / 2.0));
        for (int n = 0; n < 32; ++n)
            EXPECT_NEAR(std::abs(M(n, n) - 2.0 / (1.0 - s) * std::pow((s + 1.0) / (s - 1.0), n)), 0.0, 1e-8);
        CMatrix off = M;
        off.diagonal().setZero();
        EXPECT_LE(max_abs(off), 1e-8);
    }
}

TEST(WeightOperator, IsotropicDiagonalMatchesClosedForm) {
    for (double s : {-0.5, -1.0, -3.0}) {
        const auto d = isotropic_weight_diagonal(cahill_glauber(s), 20, 64);
        for (int n = 0; n < 20; ++n)
            EXPECT_NEAR(std::abs(d[n] - 2.0 / (1.0 - s) * std::pow((s + 1.0) / (s - 1.0), n)), 0.0, 1e-11) << s << " " << n;
    }
    const auto w0 = isotropic_weight_diagonal(constant_weight(), 6, 16);
    for (int n = 0; n < 6; ++n) EXPECT_EQ(w0[n], cplx(n % 2 == 0 ? 2.0 : -2.0, 0.0));
    EXPECT_THROW(isotropic_weight_diagonal(cahill_glauber(0.5), 6, 16), NonAbsolutelyConvergent);
}

TEST(WeightOperator, EllipticStepDiagonalClosedForm) {
    const WeightFunction w = isometric_elliptic(0.5);
    const auto d = isotropic_weight_diagonal(w, 10, 64);
    // n = 0: int_0^2 e^{-t/2} dt - int_2^inf e^{-t/2} dt = 2 - 4/e
    EXPECT_NEAR(d[0].real(), 2.0 - 4.0 * std::exp(-1.0), 1e-12);
    // n = 1, L_1 = 1 - t: int_0^2 (1 - t) e^{-t/2} dt - int_2^inf (1 - t) e^{-t/2} dt = 12/e - 2
    EXPECT_NEAR(d[1].real(), 12.0 * std::exp(-1.0) - 2.0, 1e-12);
    for (int n = 0; n < 10; ++n) EXPECT_NEAR(d[n].imag(), 0.0, 1e-15);
}
