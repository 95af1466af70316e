#pragma once

#include <vector>

#include "intquant/types.hpp"

namespace intquant {

// Polar product rule for the measure d^2z/pi = dt dtheta/(2 pi), t = |z|^2.
// Radial part: Gauss-Laguerre rule with nodes t_i = u_i / rate, so that
// int_0^inf e^{-rate t} p(t) dt is exact for deg p < 2R. Angular part: A uniform
// angles, exact for trigonometric polynomials of degree < A.
struct PhaseGrid {
    int radial_count = 0;
    int angular_count = 0;
    double rate = 1.0;
    int degree = 0;
    std::vector<double> t;              // radial nodes in t = |z|^2
    std::vector<double> radial_weight;  // sum_i radial_weight[i] g(t_i) ~ int_0^inf g(t) dt

    static PhaseGrid make(int R, int A, double rate = 1.0);

    double theta(int j) const;
    PhasePoint node(int i, int j) const;
    // weight of node (i, j) for the measure d^2z/pi
    double node_weight(int i) const { return radial_weight[i] / angular_count; }
    std::size_t size() const { return t.size() * static_cast<std::size_t>(angular_count); }
};

inline constexpr int kDefaultRadial = 64;
inline constexpr int kDefaultAngular = 128;

}  // namespace intquant
