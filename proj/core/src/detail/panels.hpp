#pragma once

#include <functional>
#include <vector>

namespace intquant::detail {

struct RadialNode {
    double t;
    double weight;  // for dt
};

// Rule for int_0^inf g(t) dt with a possible jump of g at t_break (pass +inf for
// none). Inner panel: Gauss-Legendre in r = sqrt(t) on [0, sqrt(t_split)]; outer
// panel: Gauss-Laguerre in t - t_split at the given decay rate.
std::vector<RadialNode> radial_panels(double t_break, double rate, int inner, int outer);

struct PolarNode {
    double t;
    double theta;
    double weight;  // for d^2z/pi
};

std::vector<PolarNode> polar_panels(int angles, int inner, int outer,
                                    const std::function<double(double)>& t_break,
                                    const std::function<double(double)>& rate);

}  // namespace intquant::detail
