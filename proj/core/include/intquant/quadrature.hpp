#pragma once

#include <vector>

namespace intquant {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for int_0^inf x^alpha e^{-x} g(x) dx. log_weights[i] = log(weights[i]),
// kept separately because the largest nodes have weights far below double range.
struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;
    double alpha = 0.0;
};

LaguerreRule gauss_laguerre(int n, double alpha = 0.0);

// Gauss-Legendre on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

// int_R e^{-x^2} g(x) dx.
QuadratureRule gauss_hermite(int n);

}  // namespace intquant
