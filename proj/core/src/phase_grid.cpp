#include "intquant/phase_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "intquant/quadrature.hpp"

namespace intquant {

PhaseGrid PhaseGrid::make(int R, int A, double rate) {
    if (R < 1) throw std::invalid_argument("PhaseGrid: radial count must be >= 1");
    if (R > 200) throw std::invalid_argument("PhaseGrid: radial count above 200 is not supported");
    if (A < 1) throw std::invalid_argument("PhaseGrid: angular count must be >= 1");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("PhaseGrid: rate must be > 0");
    const LaguerreRule lr = gauss_laguerre(R, 0.0);
    PhaseGrid g;
    g.radial_count = R;
    g.angular_count = A;
    g.rate = rate;
    g.degree = 2 * R - 1;
    g.t.resize(R);
    g.radial_weight.resize(R);
    for (int i = 0; i < R; ++i) {
        g.t[i] = lr.nodes[i] / rate;
        g.radial_weight[i] = std::exp(lr.log_weights[i] + lr.nodes[i]) / rate;
    }
    return g;
}

double PhaseGrid::theta(int j) const { return 2.0 * std::numbers::pi * j / angular_count; }

PhasePoint PhaseGrid::node(int i, int j) const { return std::polar(std::sqrt(t[i]), theta(j)); }

}  // namespace intquant
