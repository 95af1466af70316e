#pragma once

#include <vector>

#include "intquant/specfun.hpp"
#include "intquant/types.hpp"

namespace intquant {

// z = sqrt(J) e^{i gamma}
struct ActionAnglePoint {
    double J = 0.0;
    double gamma = 0.0;  // reduced to [0, 2 pi)

    static ActionAnglePoint make(double J, double gamma);
    PhasePoint z() const;
};

struct SineSeriesControl {
    int q_max = 50;
    SeriesControl ctl;
    void validate() const;
};

// ceil(10 sqrt J) + 50; empirical, d_q(sqrt J) is negligible once q >> J
int default_q_max(double J);
SineSeriesControl default_series_control(double J);

FockOperator angle_operator(int dim);
FockOperator action_operator(int dim);
FockOperator commutator_operator(int dim);

// d_q(r) = e^{-r^2} r^q Gamma(q/2+1)/Gamma(q+1) 1F1(q/2+1; q+1; r^2), in log space
double dq(int q, double r, const SeriesControl& ctl = {});

// pi - 2 sum_{q <= q_max} d_q(sqrt J) sin(q gamma)/q
double angle_lower_symbol(const ActionAnglePoint& pt, const SineSeriesControl& ctl);
// 2 sum_{q <= q_max} d_q(sqrt J) cos(q gamma)
double commutator_symbol(const ActionAnglePoint& pt, const SineSeriesControl& ctl);

// Coherent-state quantization of a0 + sum_q (cos_coeff[q-1] cos q gamma + sin_coeff[q-1] sin q gamma).
FockOperator quantize_angular_series(double a0, const std::vector<double>& cos_coeff,
                                     const std::vector<double>& sin_coeff, int dim);

}  // namespace intquant
