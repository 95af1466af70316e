#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "intquant/types.hpp"

namespace intquant {

// coeff * z^j * zbar^k
struct PolyTerm {
    cplx coeff;
    int j = 0;
    int k = 0;
};

// amp * exp(-(q-q0)^2/(2a^2) - (p-p0)^2/(2b^2)); a or b may be +inf (no dependence
// on that variable), not both.
struct GaussianTerm {
    cplx amp{1.0, 0.0};
    double q0 = 0.0;
    double p0 = 0.0;
    double a = 1.0;
    double b = 1.0;
};

enum class Growth { polynomial, bounded, gaussian_subcritical };

struct GrowthTag {
    Growth kind = Growth::bounded;
    int degree = 0;    // polynomial
    double eta = 0.0;  // gaussian_subcritical: |f| <~ e^{eta |z|^2}, eta < 1
};

struct PhaseFunction {
    std::function<cplx(PhasePoint)> eval;
    GrowthTag growth;
    std::optional<std::vector<PolyTerm>> poly;
    std::optional<std::vector<GaussianTerm>> gaussians;
    // guaranteed extra decay e^{-decay_rate |z|^2} (0 if none known)
    double decay_rate = 0.0;
    std::string name;

    cplx operator()(PhasePoint z) const { return eval(z); }
};

PhaseFunction polynomial(std::vector<PolyTerm> terms, std::string name = "polynomial");
PhaseFunction gaussian_sum(std::vector<GaussianTerm> terms, std::string name = "gaussian");
// exp(-|z|^2 / sigma^2)
PhaseFunction gaussian(double sigma);
PhaseFunction from_callable(std::function<cplx(PhasePoint)> eval, GrowthTag growth, std::string name = "callable");

// "one", "z", "zbar", "q", "p", "q2", "p2", "zzbar" (also "zz̄"), "gaussian(sigma)"
PhaseFunction named_function(const std::string& name);
// [[re, im, j, k], ...] meaning sum (re + i im) z^j zbar^k
PhaseFunction polynomial_from_json(const nlohmann::json& j);

// z -> f(z - z0)
PhaseFunction translated(const PhaseFunction& f, PhasePoint z0);
// z -> f(-z)
PhaseFunction reflected(const PhaseFunction& f);
// z -> conj(f(z))
PhaseFunction conjugated(const PhaseFunction& f);
// z -> f(e^{-i theta} z)
PhaseFunction rotated(const PhaseFunction& f, double theta);

int polynomial_degree(const std::vector<PolyTerm>& terms);

}  // namespace intquant
