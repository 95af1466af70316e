#include "intquant/angle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace intquant {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gamma((n+np)/2 + 1) / sqrt(n! np!)
double cs_moment(int n, int np) {
    return std::exp(log_gamma(0.5 * (n + np) + 1.0) - 0.5 * (log_factorial(n) + log_factorial(np)));
}

}  // namespace

ActionAnglePoint ActionAnglePoint::make(double J, double gamma) {
    if (!(J >= 0.0) || !std::isfinite(J)) throw std::invalid_argument("action-angle point: J must be >= 0");
    if (!std::isfinite(gamma)) throw std::invalid_argument("action-angle point: non-finite angle");
    double g = std::fmod(gamma, kTwoPi);
    if (g < 0.0) g += kTwoPi;
    if (g >= kTwoPi) g = 0.0;
    return {J, g};
}

PhasePoint ActionAnglePoint::z() const { return std::polar(std::sqrt(J), gamma); }

void SineSeriesControl::validate() const {
    if (q_max < 1) throw std::invalid_argument("SineSeriesControl: q_max must be >= 1");
    ctl.validate();
}

int default_q_max(double J) {
    if (!(J >= 0.0)) throw std::invalid_argument("default_q_max: J must be >= 0");
    return static_cast<int>(std::ceil(10.0 * std::sqrt(J))) + 50;
}

SineSeriesControl default_series_control(double J) {
    SineSeriesControl c;
    c.q_max = default_q_max(J);
    return c;
}

FockOperator angle_operator(int dim) {
    if (dim < 2) throw std::invalid_argument("angle_operator: dim must be >= 2");
    FockOperator A = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        A(n, n) = std::numbers::pi;
        for (int np = n + 1; np < dim; ++np) {
            const cplx v(0.0, cs_moment(n, np) / (np - n));
            A(n, np) = v;
            A(np, n) = std::conj(v);
        }
    }
    return A;
}

FockOperator action_operator(int dim) {
    if (dim < 1) throw std::invalid_argument("action_operator: dim must be >= 1");
    FockOperator A = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) A(n, n) = n + 1.0;
    return A;
}

FockOperator commutator_operator(int dim) {
    if (dim < 2) throw std::invalid_argument("commutator_operator: dim must be >= 2");
    FockOperator C = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int np = n + 1; np < dim; ++np) {
            const cplx v(0.0, cs_moment(n, np));
            C(n, np) = v;
            C(np, n) = -std::conj(v);
        }
    return C;
}

double dq(int q, double r, const SeriesControl& ctl) {
    if (q < 1) throw std::invalid_argument("dq: q must be >= 1");
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("dq: r must be finite and >= 0");
    if (r == 0.0) return 0.0;
    const double t = r * r;
    const SeriesResult h = log_hyp1f1(0.5 * q + 1.0, q + 1.0, t, ctl);
    return std::exp(-t + q * std::log(r) + log_gamma(0.5 * q + 1.0) - log_gamma(q + 1.0) + h.value);
}

double angle_lower_symbol(const ActionAnglePoint& pt, const SineSeriesControl& ctl) {
    ctl.validate();
    const double r = std::sqrt(pt.J);
    double s = 0.0;
    if (r > 0.0)
        for (int q = 1; q <= ctl.q_max; ++q) s += dq(q, r, ctl.ctl) * std::sin(q * pt.gamma) / q;
    return std::numbers::pi - 2.0 * s;
}

double commutator_symbol(const ActionAnglePoint& pt, const SineSeriesControl& ctl) {
    ctl.validate();
    const double r = std::sqrt(pt.J);
    double s = 0.0;
    if (r > 0.0)
        for (int q = 1; q <= ctl.q_max; ++q) s += dq(q, r, ctl.ctl) * std::cos(q * pt.gamma);
    return 2.0 * s;
}

FockOperator quantize_angular_series(double a0, const std::vector<double>& cos_coeff,
                                     const std::vector<double>& sin_coeff, int dim) {
    if (dim < 1) throw std::invalid_argument("quantize_angular_series: dim must be >= 1");
    // harmonic k = np - n of f contributes cs_moment(n, np) fhat_k to entry (n, np)
    auto fhat = [&](int k) -> cplx {
        if (k == 0) return a0;
        const int q = std::abs(k);
        cplx c{};
        if (q <= static_cast<int>(cos_coeff.size())) c += 0.5 * cos_coeff[q - 1];
        if (q <= static_cast<int>(sin_coeff.size())) c += (k > 0 ? 1.0 : -1.0) * sin_coeff[q - 1] / cplx(0.0, 2.0);
        return c;
    };
    FockOperator A(dim, dim);
    for (int np = 0; np < dim; ++np)
        for (int n = 0; n < dim; ++n) A(n, np) = cs_moment(n, np) * fhat(np - n);
    return A;
}

}  // namespace intquant
