#include "intquant/weights.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "detail/panels.hpp"
#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/quadrature.hpp"
#include "intquant/specfun.hpp"

namespace intquant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double step(double x) { return x >= 0.0 ? 1.0 : -1.0; }

double im_z2(PhasePoint z) { return 2.0 * z.real() * z.imag(); }

std::vector<cplx> weyl_diagonal(int count) {
    std::vector<cplx> d(count);
    for (int n = 0; n < count; ++n) d[n] = (n % 2 == 0) ? 2.0 : -2.0;
    return d;
}

}  // namespace

WeightFunction constant_weight() {
    WeightFunction w;
    w.eval = [](PhasePoint) { return cplx(1.0, 0.0); };
    w.radial = [](double) { return cplx(1.0, 0.0); };
    w.kind = WeightKind::isotropic;
    w.family = WeightFamily::constant;
    w.deriv0 = WeightDerivatives{};
    w.name = "constant";
    return w;
}

WeightFunction cahill_glauber(double s) {
    if (!std::isfinite(s) || !(s < 1.0)) throw std::invalid_argument("cahill_glauber: requires s < 1");
    WeightFunction w;
    w.eval = [s](PhasePoint z) { return cplx(std::exp(0.5 * s * std::norm(z)), 0.0); };
    w.radial = [s](double t) { return cplx(std::exp(0.5 * s * t), 0.0); };
    w.kind = WeightKind::isotropic;
    w.family = WeightFamily::cahill_glauber;
    w.param = s;
    WeightDerivatives d;
    d.dzdzb = s / 2.0;
    w.deriv0 = d;
    w.name = fmt::format("cahill_glauber:{}", s);
    return w;
}

WeightFunction isometric_elliptic(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("isometric_elliptic: requires alpha >= 0");
    WeightFunction w;
    w.eval = [alpha](PhasePoint z) { return cplx(step(1.0 - alpha * std::norm(z)), 0.0); };
    w.radial = [alpha](double t) { return cplx(step(1.0 - alpha * t), 0.0); };
    w.kind = WeightKind::isotropic;
    w.family = WeightFamily::elliptic_step;
    w.param = alpha;
    w.deriv0 = WeightDerivatives{};
    w.name = fmt::format("elliptic_step:{}", alpha);
    return w;
}

WeightFunction isometric_hyperbolic(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("isometric_hyperbolic: requires alpha >= 0");
    WeightFunction w;
    w.eval = [alpha](PhasePoint z) { return cplx(step(1.0 - alpha * im_z2(z)), 0.0); };
    w.kind = WeightKind::hyperbolic;
    w.family = WeightFamily::hyperbolic_step;
    w.param = alpha;
    w.deriv0 = WeightDerivatives{};
    w.name = fmt::format("hyperbolic_step:{}", alpha);
    return w;
}

WeightFunction custom_weight(std::function<cplx(PhasePoint)> eval, WeightKind kind,
                             std::optional<WeightDerivatives> deriv0, std::string name) {
    if (!eval) throw std::invalid_argument("custom_weight: empty evaluator");
    const cplx w0 = eval(PhasePoint{});
    if (std::abs(w0 - 1.0) > 1e-12) throw std::invalid_argument("custom_weight: requires w(0) = 1");
    WeightFunction w;
    w.kind = kind;
    w.family = WeightFamily::custom;
    w.deriv0 = deriv0;
    w.name = std::move(name);
    if (kind == WeightKind::isotropic) {
        auto f = eval;
        w.radial = [f](double t) { return f(PhasePoint(std::sqrt(t), 0.0)); };
    }
    w.eval = std::move(eval);
    return w;
}

WeightFunction make_weight(const std::string& family, double param) {
    if (family == "constant") return constant_weight();
    if (family == "cahill_glauber") return cahill_glauber(param);
    if (family == "elliptic_step") return isometric_elliptic(param);
    if (family == "hyperbolic_step") return isometric_hyperbolic(param);
    throw std::invalid_argument("unknown weight family '" + family + "'");
}

WeightFunction parse_weight(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        if (spec == "constant") return constant_weight();
        throw std::invalid_argument("weight spec '" + spec + "' needs the form family:param");
    }
    const std::string family = spec.substr(0, colon);
    const std::string value = spec.substr(colon + 1);
    std::size_t used = 0;
    double param = 0.0;
    try {
        param = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("weight spec '" + spec + "': bad parameter");
    }
    if (used != value.size()) throw std::invalid_argument("weight spec '" + spec + "': bad parameter");
    return make_weight(family, param);
}

std::string weight_spec(const WeightFunction& w) {
    switch (w.family) {
        case WeightFamily::constant: return "constant";
        case WeightFamily::cahill_glauber: return fmt::format("cahill_glauber:{:.17g}", w.param);
        case WeightFamily::elliptic_step: return fmt::format("elliptic_step:{:.17g}", w.param);
        case WeightFamily::hyperbolic_step: return fmt::format("hyperbolic_step:{:.17g}", w.param);
        case WeightFamily::custom: break;
    }
    return w.name;
}

WeightDerivatives finite_difference_derivatives(const WeightFunction& w, double h) {
    auto f = [&](double x, double y) { return w.eval(PhasePoint(x, y)); };
    const cplx f0 = f(0, 0);
    const cplx fx = (f(h, 0) - f(-h, 0)) / (2 * h);
    const cplx fy = (f(0, h) - f(0, -h)) / (2 * h);
    const cplx fxx = (f(h, 0) - 2.0 * f0 + f(-h, 0)) / (h * h);
    const cplx fyy = (f(0, h) - 2.0 * f0 + f(0, -h)) / (h * h);
    const cplx fxy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
    const cplx I(0.0, 1.0);
    WeightDerivatives d;
    d.value = f0;
    d.dz = (fx - I * fy) / 2.0;
    d.dzb = (fx + I * fy) / 2.0;
    d.dzdzb = (fxx + fyy) / 4.0;
    d.dz2 = (fxx - fyy - 2.0 * I * fxy) / 4.0;
    d.dzb2 = (fxx - fyy + 2.0 * I * fxy) / 4.0;
    return d;
}

WeightFunction with_derivatives(WeightFunction w) {
    if (!w.deriv0) w.deriv0 = finite_difference_derivatives(w);
    return w;
}

bool weyl_germ(const WeightFunction& w) {
    switch (w.family) {
        case WeightFamily::constant:
        case WeightFamily::elliptic_step:
        case WeightFamily::hyperbolic_step: return true;
        case WeightFamily::cahill_glauber: return w.param == 0.0;
        case WeightFamily::custom: return false;
    }
    return false;
}

std::optional<cplx> weight_derivative(const WeightFunction& w, int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("weight_derivative: negative order");
    if (weyl_germ(w)) return cplx((a == 0 && b == 0) ? 1.0 : 0.0);
    if (w.family == WeightFamily::cahill_glauber) {
        if (a != b) return cplx(0.0);
        return cplx(std::exp(log_factorial(a)) * std::pow(w.param / 2.0, a));
    }
    if (!w.deriv0) return std::nullopt;
    const WeightDerivatives& d = *w.deriv0;
    if (a == 0 && b == 0) return d.value;
    if (a == 1 && b == 0) return d.dz;
    if (a == 0 && b == 1) return d.dzb;
    if (a == 1 && b == 1) return d.dzdzb;
    if (a == 2 && b == 0) return d.dz2;
    if (a == 0 && b == 2) return d.dzb2;
    return std::nullopt;
}

WeightClass classify(const WeightFunction& w, const std::vector<PhasePoint>& sampler, double tol) {
    if (sampler.empty()) throw std::invalid_argument("classify: empty sampler");
    static constexpr double kAngles[] = {0.3, 1.1, std::numbers::pi / 2, 2.5, 4.0};
    static constexpr double kSqueeze[] = {0.5, 1.7, 3.0};
    WeightClass c{true, true, true, true};
    for (PhasePoint z : sampler) {
        const cplx v = w.eval(z);
        if (std::abs(w.eval(-z) - v) > tol || std::abs(std::conj(v) - v) > tol) c.regular = false;
        if (std::abs(std::abs(v) - 1.0) > tol) c.isometric = false;
        for (double th : kAngles)
            if (std::abs(w.eval(std::polar(1.0, th) * z) - v) > tol) c.elliptic = false;
        for (double l : kSqueeze)
            if (std::abs(w.eval(PhasePoint(l * z.real(), z.imag() / l)) - v) > tol) c.hyperbolic = false;
    }
    c.elliptic = c.elliptic && c.regular;
    c.hyperbolic = c.hyperbolic && c.regular;
    return c;
}

std::vector<PhasePoint> default_sampler(std::uint64_t seed, int count, double radius) {
    if (count < 1) throw std::invalid_argument("default_sampler: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::vector<PhasePoint> pts;
    pts.reserve(2 * count);
    for (int k = 0; k < count; ++k) {
        const PhasePoint z = std::polar(radius * std::sqrt(ur(rng)), 2.0 * std::numbers::pi * ur(rng));
        pts.push_back(z);
        pts.push_back(-z);
    }
    return pts;
}

std::vector<cplx> isotropic_weight_diagonal(const WeightFunction& w, int count, int radial_nodes) {
    if (count < 1) throw std::invalid_argument("isotropic_weight_diagonal: count must be >= 1");
    if (w.kind != WeightKind::isotropic || !w.radial)
        throw std::invalid_argument("isotropic_weight_diagonal: weight is not isotropic");
    if (w.family == WeightFamily::constant ||
        (w.family == WeightFamily::cahill_glauber && w.param == 0.0) ||
        (w.family == WeightFamily::elliptic_step && w.param == 0.0))
        return weyl_diagonal(count);
    if (w.family == WeightFamily::cahill_glauber && w.param > 0.0)
        throw NonAbsolutelyConvergent(fmt::format(
            "cahill_glauber:{}: M is unbounded for 0 < s < 1; the integral only converges weakly", w.param));

    std::vector<cplx> mu(count, cplx{});
    if (w.family == WeightFamily::cahill_glauber) {
        // int_0^inf e^{-(1-s)t/2} L_n(t) dt; the exponential is absorbed by the rule.
        const double rate = 0.5 * (1.0 - w.param);
        const LaguerreRule lr = gauss_laguerre(radial_nodes, 0.0);
        for (int i = 0; i < radial_nodes; ++i) {
            const std::vector<double> L = laguerre_all(count - 1, 0.0, lr.nodes[i] / rate);
            for (int n = 0; n < count; ++n) {
                if (L[n] == 0.0) continue;
                mu[n] += std::copysign(std::exp(lr.log_weights[i] + std::log(std::abs(L[n]))), L[n]) / rate;
            }
        }
        return mu;
    }
    const double t_break = (w.family == WeightFamily::elliptic_step) ? 1.0 / w.param : kInf;
    for (const detail::RadialNode& node : detail::radial_panels(t_break, 0.5, 64, radial_nodes)) {
        const std::vector<double> L = laguerre_all(count - 1, 0.0, node.t);
        const cplx f = node.weight * w.radial(node.t) * std::exp(-0.5 * node.t);
        for (int n = 0; n < count; ++n) mu[n] += f * L[n];
    }
    return mu;
}

FockOperator weight_to_operator(const WeightFunction& w, int dim, const PhaseGrid& grid) {
    if (dim < 1) throw std::invalid_argument("weight_to_operator: dim must be >= 1");
    if (w.kind == WeightKind::isotropic && w.radial) {
        const std::vector<cplx> mu = isotropic_weight_diagonal(w, dim, grid.radial_count);
        FockOperator M = FockOperator::Zero(dim, dim);
        for (int n = 0; n < dim; ++n) M(n, n) = mu[n];
        return M;
    }
    FockOperator M = FockOperator::Zero(dim, dim);
    auto accumulate = [&](double t, double theta, cplx weight) {
        const Eigen::MatrixXd R = displacement_radial(t, dim);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m) M(m, n) += weight * R(m, n) * std::polar(1.0, (m - n) * theta);
    };
    if (w.family == WeightFamily::hyperbolic_step) {
        if (w.param == 0.0) return FockOperator(2.0 * parity(dim));
        const double alpha = w.param;
        const auto nodes = detail::polar_panels(
            grid.angular_count, 64, grid.radial_count,
            [alpha](double th) {
                const double s2 = std::sin(2.0 * th);
                return s2 > 0.0 ? 1.0 / (alpha * s2) : kInf;
            },
            [](double) { return 0.5; });
        for (const auto& nd : nodes) accumulate(nd.t, nd.theta, nd.weight * w.eval(std::polar(std::sqrt(nd.t), nd.theta)));
        return M;
    }
    for (int i = 0; i < grid.radial_count; ++i)
        for (int j = 0; j < grid.angular_count; ++j)
            accumulate(grid.t[i], grid.theta(j), grid.node_weight(i) * w.eval(grid.node(i, j)));
    return M;
}

}  // namespace intquant
