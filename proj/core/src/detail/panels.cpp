#include "detail/panels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "intquant/quadrature.hpp"

namespace intquant::detail {

namespace {
// Beyond this many e-folds a jump is invisible at double precision.
constexpr double kNegligibleDecay = 80.0;
}

std::vector<RadialNode> radial_panels(double t_break, double rate, int inner, int outer) {
    double t_split = 2.0 / rate;
    if (std::isfinite(t_break) && t_break > 0.0 && rate * t_break < kNegligibleDecay) t_split = t_break;
    std::vector<RadialNode> out;
    out.reserve(inner + outer);
    const QuadratureRule gl = gauss_legendre(inner, 0.0, std::sqrt(t_split));
    for (int k = 0; k < inner; ++k) {
        const double r = gl.nodes[k];
        out.push_back({r * r, 2.0 * r * gl.weights[k]});
    }
    const LaguerreRule lr = gauss_laguerre(outer, 0.0);
    for (int k = 0; k < outer; ++k)
        out.push_back({t_split + lr.nodes[k] / rate, std::exp(lr.log_weights[k] + lr.nodes[k]) / rate});
    return out;
}

std::vector<PolarNode> polar_panels(int angles, int inner, int outer,
                                    const std::function<double(double)>& t_break,
                                    const std::function<double(double)>& rate) {
    std::vector<PolarNode> out;
    out.reserve(static_cast<std::size_t>(angles) * (inner + outer));
    for (int j = 0; j < angles; ++j) {
        const double th = 2.0 * std::numbers::pi * j / angles;
        for (const RadialNode& n : radial_panels(t_break(th), rate(th), inner, outer))
            out.push_back({n.t, th, n.weight / angles});
    }
    return out;
}

}  // namespace intquant::detail
