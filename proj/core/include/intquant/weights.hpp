#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "intquant/phase_grid.hpp"
#include "intquant/types.hpp"

namespace intquant {

enum class WeightKind { isotropic, hyperbolic, generic };
enum class WeightFamily { constant, cahill_glauber, elliptic_step, hyperbolic_step, custom };

// Values at z = 0 of w, d_z w, d_zbar w, d_z d_zbar w, d_z^2 w, d_zbar^2 w.
struct WeightDerivatives {
    cplx value{1.0, 0.0};
    cplx dz{};
    cplx dzb{};
    cplx dzdzb{};
    cplx dz2{};
    cplx dzb2{};
};

struct WeightFunction {
    std::function<cplx(PhasePoint)> eval;
    WeightKind kind = WeightKind::generic;
    WeightFamily family = WeightFamily::custom;
    double param = 0.0;
    std::optional<WeightDerivatives> deriv0;
    // isotropic weights only: w as a function of t = |z|^2
    std::function<cplx(double)> radial;
    std::string name;

    cplx operator()(PhasePoint z) const { return eval(z); }
};

WeightFunction constant_weight();
WeightFunction cahill_glauber(double s);
WeightFunction isometric_elliptic(double alpha);
WeightFunction isometric_hyperbolic(double alpha);
WeightFunction custom_weight(std::function<cplx(PhasePoint)> eval, WeightKind kind,
                             std::optional<WeightDerivatives> deriv0 = std::nullopt,
                             std::string name = "custom");

// "constant", "cahill_glauber:-1", "elliptic_step:0.5", "hyperbolic_step:0.3"
WeightFunction parse_weight(const std::string& spec);
WeightFunction make_weight(const std::string& family, double param);
std::string weight_spec(const WeightFunction& w);

// Central differences of w at the origin.
WeightDerivatives finite_difference_derivatives(const WeightFunction& w, double h = 1e-4);
// Returns w with deriv0 filled by finite differences when absent.
WeightFunction with_derivatives(WeightFunction w);

// d_z^a d_zbar^b w at 0 for the closed-form families, nullopt otherwise
// (custom weights report up to order 2 from deriv0).
std::optional<cplx> weight_derivative(const WeightFunction& w, int a, int b);

// True when w equals the Weyl weight 1 on a neighbourhood of the origin.
bool weyl_germ(const WeightFunction& w);

struct WeightClass {
    bool regular = false;
    bool isometric = false;
    bool elliptic = false;
    bool hyperbolic = false;
};

WeightClass classify(const WeightFunction& w, const std::vector<PhasePoint>& sampler, double tol = 1e-10);
std::vector<PhasePoint> default_sampler(std::uint64_t seed = 7, int count = 48, double radius = 3.0);

// M = int w(z) D(z) d^2z/pi restricted to the dim block.
FockOperator weight_to_operator(const WeightFunction& w, int dim, const PhaseGrid& grid);

// Diagonal of M for isotropic weights, entries 0..count-1. radial_nodes sets the
// Gauss-Laguerre size.
std::vector<cplx> isotropic_weight_diagonal(const WeightFunction& w, int count, int radial_nodes);

}  // namespace intquant
