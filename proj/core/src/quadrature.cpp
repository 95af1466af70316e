#include "intquant/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "intquant/specfun.hpp"

namespace intquant {

namespace {

// L_n^{(alpha)}(x) and L_{n-1}^{(alpha)}(x), both times exp(-log_scale)
struct LaguerrePair {
    double l, lm1, log_scale;
};

LaguerrePair laguerre_pair(int n, double alpha, double x) {
    double lm1 = 0.0, l = 1.0, log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = next;
        const double m = std::abs(l);
        if (m > 1e100) {
            lm1 /= m;
            l /= m;
            log_scale += std::log(m);
        }
    }
    return {l, lm1, log_scale};
}

}  // namespace

LaguerreRule gauss_laguerre(int n, double alpha) {
    if (n < 1 || n > 400) throw std::invalid_argument("gauss_laguerre: n must be in [1, 400]");
    if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha must be > -1");

    // Golub-Welsch for the initial nodes, then Newton on L_n.
    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0 + alpha;
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k * (k + alpha));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);

    LaguerreRule rule;
    rule.alpha = alpha;
    rule.nodes.resize(n);
    rule.log_weights.resize(n);
    const double lg = log_gamma(n + alpha + 1.0) - log_factorial(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            auto [l, lm1, sc] = laguerre_pair(n, alpha, x);
            const double dl = (n * l - (n + alpha) * lm1) / x;
            const double dx = l / dl;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::abs(x)) break;
        }
        // w = Gamma(n+alpha+1) x / (n! ((n+1) L_{n+1}(x))^2)
        const LaguerrePair lp = laguerre_pair(n + 1, alpha, x);
        rule.nodes[i] = x;
        rule.log_weights[i] = lg + std::log(x) - 2.0 * (std::log(std::abs((n + 1.0) * lp.l)) + lp.log_scale);
    }
    return rule;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    if (!(hi > lo)) throw std::invalid_argument("gauss_legendre: empty interval");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[n - 1 - i] = mid + half * x;
        r.weights[n - 1 - i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1 || n > 300) throw std::invalid_argument("gauss_hermite: n must be in [1, 300]");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        r.weights[i] = std::sqrt(std::numbers::pi) * v * v;
    }
    // symmetrize against eigen-solver noise
    for (int i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[n - 1 - i] + r.weights[i]);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace intquant
